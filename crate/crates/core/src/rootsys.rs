//! Cartan matrices, positive roots, and weights for the simply-laced types
//! `D_n` (n >= 4) and `E_6`, `E_7`, `E_8`.
//!
//! Node numbering follows the Bourbaki diagrams: for `D_n` the chain is
//! `1 - 2 - ... - (n-2)` with `n-1` and `n` both attached to `n-2`; for `E_r`
//! it is `1 - 3 - 4 - 5 - ... - r` with `2` attached to `4`.
//!
//! Roots are integer vectors in simple-root coordinates, weights are integer
//! vectors in fundamental-weight coordinates, and the Cartan matrix converts
//! between them. Simple-root indices in the public API are 1-based.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootSystemError {
    #[error("unsupported simple type {0}")]
    Unsupported(String),
    #[error("weight {0} is not dominant")]
    NonDominant(Weight),
    #[error("weight {weight} has {found} coordinates, expected {rank}")]
    WrongRank {
        weight: Weight,
        rank: usize,
        found: usize,
    },
    #[error("simple root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    D,
    E,
}

/// A supported simple type: `D_n` with `n >= 4`, or `E_6`/`E_7`/`E_8`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootSystemError> {
        let ok = match family {
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(RootSystemError::Unsupported(format!("{family:?}{rank}")))
        }
    }

    pub fn d(n: usize) -> Result<Self, RootSystemError> {
        Self::new(Family::D, n)
    }

    pub fn e(r: usize) -> Result<Self, RootSystemError> {
        Self::new(Family::E, r)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Dimension of the Lie algebra of this type.
    pub fn algebra_dim(&self) -> usize {
        match (self.family, self.rank) {
            (Family::D, n) => 2 * n * n - n,
            (Family::E, 6) => 78,
            (Family::E, 7) => 133,
            (Family::E, _) => 248,
        }
    }

    /// Cartan matrix with the node numbering described in the module docs.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut m = vec![vec![0i64; r]; r];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        for (a, b) in self.edges() {
            m[a - 1][b - 1] = -1;
            m[b - 1][a - 1] = -1;
        }
        m
    }

    /// Dynkin diagram edges as 1-based node pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let r = self.rank;
        match self.family {
            Family::D => {
                let mut e: Vec<(usize, usize)> = (1..r - 1).map(|i| (i, i + 1)).collect();
                // (n-2, n-1) is in the chain already; attach n to n-2.
                e.push((r - 2, r));
                e
            }
            Family::E => {
                let mut e = vec![(1, 3), (3, 4), (2, 4)];
                e.extend((4..r).map(|i| (i, i + 1)));
                e
            }
        }
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = RootSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || RootSystemError::Unsupported(t.to_string());
        let mut chars = t.chars();
        let family = match chars.next() {
            Some('D') | Some('d') => Family::D,
            Some('E') | Some('e') => Family::E,
            _ => return Err(err()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| err())?;
        Self::new(family, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SimpleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integral weight in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    /// The fundamental weight `lambda_i` (1-based).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i - 1] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Compact label: `0`, `λ3`, or `λ1+2λ4`.
    pub fn label(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(format!("λ{}", i + 1)),
                _ => parts.push(format!("{c}λ{}", i + 1)),
            }
        }
        parts.join("+")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", c.join(","))
    }
}

/// Root system of one simple type.
#[derive(Clone, Debug)]
pub struct RootSystem {
    simple_type: SimpleType,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

fn height(r: &[i64]) -> i64 {
    r.iter().sum()
}

impl RootSystem {
    pub fn build(t: SimpleType) -> Self {
        let cartan = t.cartan_matrix();
        let rank = t.rank();
        let mut known: HashMap<Vec<i64>, ()> = HashMap::new();
        let mut layer: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                let mut v = vec![0; rank];
                v[i] = 1;
                v
            })
            .collect();
        let mut all = Vec::new();
        for r in &layer {
            known.insert(r.clone(), ());
        }
        while !layer.is_empty() {
            all.extend(layer.iter().cloned());
            let mut next: Vec<Vec<i64>> = Vec::new();
            for beta in &layer {
                for i in 0..rank {
                    // alpha_i-string through beta: p - q = <beta, alpha_i^vee>.
                    let pairing: i64 = (0..rank).map(|j| cartan[i][j] * beta[j]).sum();
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if known.contains_key(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !known.contains_key(&up) {
                            known.insert(up.clone(), ());
                            next.push(up);
                        }
                    }
                }
            }
            layer = next;
        }
        // Height ascending, then descending lexicographic so alpha_1 precedes alpha_2.
        all.sort_by(|a, b| height(a).cmp(&height(b)).then_with(|| b.cmp(a)));
        let index = all
            .iter()
            .enumerate()
            .map(|(k, r)| (r.clone(), k))
            .collect();
        Self {
            simple_type: t,
            cartan,
            positive_roots: all,
            index,
        }
    }

    pub fn simple_type(&self) -> SimpleType {
        self.simple_type
    }

    pub fn rank(&self) -> usize {
        self.simple_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `M[i][j]` with 1-based indices.
    pub fn cartan_entry(&self, i: usize, j: usize) -> i64 {
        self.cartan[i - 1][j - 1]
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Index of a positive root given by simple-root coordinates.
    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// True if `coords` is a root (positive or negative).
    pub fn is_root(&self, coords: &[i64]) -> bool {
        if self.index.contains_key(coords) {
            return true;
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.index.contains_key(&neg)
    }

    pub fn highest_root(&self) -> &[i64] {
        self.positive_roots.last().expect("nonempty root system")
    }

    pub fn algebra_dim(&self) -> usize {
        2 * self.positive_roots.len() + self.rank()
    }

    /// Converts simple-root coordinates into fundamental-weight coordinates.
    pub fn root_to_weight(&self, root: &[i64]) -> Weight {
        let r = self.rank();
        Weight(
            (0..r)
                .map(|i| (0..r).map(|j| self.cartan[i][j] * root[j]).sum())
                .collect(),
        )
    }

    /// The simple root `alpha_i` (1-based) as a weight.
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        Weight((0..self.rank()).map(|k| self.cartan[k][i - 1]).collect())
    }

    fn check_weight(&self, w: &Weight) -> Result<(), RootSystemError> {
        if w.rank() != self.rank() {
            return Err(RootSystemError::WrongRank {
                weight: w.clone(),
                rank: self.rank(),
                found: w.rank(),
            });
        }
        Ok(())
    }

    /// Weyl dimension formula for the irreducible module of highest weight `hw`.
    pub fn weyl_dim(&self, hw: &Weight) -> Result<BigInt, RootSystemError> {
        self.check_weight(hw)?;
        if !hw.is_dominant() {
            return Err(RootSystemError::NonDominant(hw.clone()));
        }
        let mut q = Rational::one();
        for root in &self.positive_roots {
            // Simply laced: alpha^vee has the same coordinates as alpha.
            let num: i64 = root.iter().zip(&hw.0).map(|(c, m)| c * (m + 1)).sum();
            let den: i64 = root.iter().sum();
            q *= Rational::new(BigInt::from(num), BigInt::from(den));
        }
        debug_assert!(q.is_integer());
        Ok(q.to_integer())
    }

    /// `hw - sum_j alpha_{word[j]}` for a word of 1-based simple-root indices.
    pub fn weight_of_lowering_word(
        &self,
        hw: &Weight,
        word: &[usize],
    ) -> Result<Weight, RootSystemError> {
        self.check_weight(hw)?;
        let mut w = hw.clone();
        for &i in word {
            if i == 0 || i > self.rank() {
                return Err(RootSystemError::IndexOutOfRange {
                    index: i,
                    rank: self.rank(),
                });
            }
            w = w.sub(&self.simple_root_weight(i));
        }
        Ok(w)
    }

    /// Simple reflection `s_i` (1-based) on a weight.
    pub fn reflect(&self, w: &Weight, i: usize) -> Weight {
        let c = w.0[i - 1];
        let a = self.simple_root_weight(i);
        Weight(w.0.iter().zip(&a.0).map(|(x, y)| x - c * y).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap())
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(rs("E8").num_positive_roots(), 120);
        assert_eq!(rs("E7").num_positive_roots(), 63);
        assert_eq!(rs("E6").num_positive_roots(), 36);
        assert_eq!(rs("D5").num_positive_roots(), 20);
        assert_eq!(rs("D7").num_positive_roots(), 42);
    }

    #[test]
    fn simple_roots_come_first_in_index_order() {
        let r = rs("E7");
        for i in 0..7 {
            let mut e = vec![0; 7];
            e[i] = 1;
            assert_eq!(r.positive_roots()[i], e);
        }
    }

    #[test]
    fn highest_roots() {
        assert_eq!(rs("E8").highest_root(), &[2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(rs("E7").highest_root(), &[2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(rs("E6").highest_root(), &[1, 2, 2, 3, 2, 1]);
        assert_eq!(rs("D5").highest_root(), &[1, 2, 2, 1, 1]);
    }

    #[test]
    fn unsupported_types() {
        assert!("F4".parse::<SimpleType>().is_err());
        assert!("E9".parse::<SimpleType>().is_err());
        assert!("D3".parse::<SimpleType>().is_err());
    }

    #[test]
    fn weyl_dimensions() {
        let d7 = rs("D7");
        assert_eq!(d7.weyl_dim(&Weight::fundamental(7, 1)).unwrap(), BigInt::from(14));
        let d5 = rs("D5");
        assert_eq!(d5.weyl_dim(&Weight::fundamental(5, 4)).unwrap(), BigInt::from(16));
        let e6 = rs("E6");
        assert_eq!(e6.weyl_dim(&Weight::fundamental(6, 6)).unwrap(), BigInt::from(27));
        assert_eq!(e6.weyl_dim(&Weight::zero(6)).unwrap(), BigInt::from(1));
        assert!(e6.weyl_dim(&Weight(vec![-1, 0, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn lowering_words() {
        let e6 = rs("E6");
        let hw = Weight::fundamental(6, 6);
        assert_eq!(e6.weight_of_lowering_word(&hw, &[]).unwrap(), hw);
        let w = e6.weight_of_lowering_word(&hw, &[6, 5]).unwrap();
        let expect = hw.sub(&e6.simple_root_weight(6)).sub(&e6.simple_root_weight(5));
        assert_eq!(w, expect);
        assert!(e6.weight_of_lowering_word(&hw, &[7]).is_err());
        assert!(e6.weight_of_lowering_word(&hw, &[0]).is_err());
    }
}
