//! Polynomials with rational coefficients, used to treat free parameters
//! (the scalars in mixtures like `a X + b Y`) as indeterminates.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::exactla::{fmt_rational, int, Rational};

/// Scalars the bracket can be evaluated over: rationals, or polynomials in
/// free parameters.
pub trait Coefficient: Clone + PartialEq + fmt::Debug {
    fn zero_coeff() -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale_int(&self, k: i64) -> Self;
    fn scale_rational(&self, k: &Rational) -> Self;
}

impl Coefficient for Rational {
    fn zero_coeff() -> Self {
        Zero::zero()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_int(&self, k: i64) -> Self {
        self * int(k)
    }
    fn scale_rational(&self, k: &Rational) -> Self {
        self * k
    }
}

/// Multivariate polynomial; the exponent vector of each monomial has trailing
/// zeros trimmed so equal polynomials compare equal.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl Poly {
    pub fn constant(q: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(vec![], q);
        }
        Self { terms }
    }

    /// The indeterminate with index `k`.
    pub fn var(k: usize) -> Self {
        let mut e = vec![0; k + 1];
        e[k] = 1;
        Self {
            terms: BTreeMap::from([(e, Rational::one())]),
        }
    }

    pub fn monomial(exponents: &[u32], coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(trim(exponents.to_vec()), coeff);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms
            .get(&trim(exponents.to_vec()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign_ref(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale_rational(&-Rational::one()))
    }

    pub fn neg(&self) -> Self {
        self.scale_rational(&-Rational::one())
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mut m = c.clone();
            for (k, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    m *= &point[k];
                }
            }
            acc + m
        })
    }

    pub fn display(&self, names: &[&str]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(k, &p)| {
                    let n = names.get(k).copied().unwrap_or("t");
                    if p == 1 {
                        n.to_string()
                    } else {
                        format!("{n}^{p}")
                    }
                })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            let coeff = if mono.is_empty() || !mag.is_one() {
                fmt_rational(&mag)
            } else {
                String::new()
            };
            let body = match (coeff.is_empty(), mono.is_empty()) {
                (true, _) => mono.join("*"),
                (false, true) => coeff,
                (false, false) => format!("{coeff}*{}", mono.join("*")),
            };
            match (i, neg) {
                (0, true) => out.push_str(&format!("-{body}")),
                (0, false) => out.push_str(&body),
                (_, true) => out.push_str(&format!(" - {body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display(&["t0", "t1", "t2", "t3", "t4"]))
    }
}

impl Coefficient for Poly {
    fn zero_coeff() -> Self {
        Self::default()
    }
    fn is_zero_coeff(&self) -> bool {
        self.terms.is_empty()
    }
    fn add_assign_ref(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }
    fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Poly::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let n = e1.len().max(e2.len());
                let e: Vec<u32> = (0..n)
                    .map(|k| e1.get(k).copied().unwrap_or(0) + e2.get(k).copied().unwrap_or(0))
                    .collect();
                out.add_assign_ref(&Poly::monomial(&e, c1 * c2));
            }
        }
        out
    }
    fn scale_int(&self, k: i64) -> Self {
        self.scale_rational(&int(k))
    }
    fn scale_rational(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::default();
        }
        Self {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }
}

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    fn monic(&self) -> Self {
        match self.0.last() {
            Some(lead) => Self(self.0.iter().map(|c| c / lead).collect()),
            None => self.clone(),
        }
    }

    pub fn rem(&self, d: &Self) -> Self {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.0.clone();
        let dd = d.0.len() - 1;
        let lead = d.0[dd].clone();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1;
            let f = &r[k] / &lead;
            if !f.is_zero() {
                for (i, c) in d.0.iter().enumerate() {
                    r[k - dd + i] -= &f * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        Self::new(r)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Rational roots, for degree at most 2.
    pub fn rational_roots(&self) -> Option<Vec<Rational>> {
        match self.degree() {
            None => None,
            Some(0) => Some(vec![]),
            Some(1) => Some(vec![-&self.0[0] / &self.0[1]]),
            Some(2) => {
                let (c, b, a) = (&self.0[0], &self.0[1], &self.0[2]);
                let disc = b * b - int(4) * a * c;
                if disc.is_negative() {
                    return Some(vec![]);
                }
                let Some(s) = rational_sqrt(&disc) else {
                    return Some(vec![]);
                };
                let two_a = int(2) * a;
                let mut roots = vec![(-b - &s) / &two_a, (-b + &s) / &two_a];
                roots.sort();
                roots.dedup();
                Some(roots)
            }
            Some(_) => None,
        }
    }
}

fn integer_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    let n = integer_sqrt_exact(q.numer())?;
    let d = integer_sqrt_exact(q.denom())?;
    Some(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    #[test]
    fn polynomial_arithmetic() {
        let a = Poly::var(0);
        let b = Poly::var(1);
        let s = a.add(&b);
        let sq = s.mul_ref(&s);
        assert_eq!(sq.coefficient(&[1, 1]), int(2));
        assert_eq!(sq.total_degree(), 2);
        assert!(s.sub(&a).sub(&b).is_zero());
        assert_eq!(sq.eval(&[int(2), int(3)]), int(25));
        assert_eq!(a.mul_ref(&b).scale_int(-2).display(&["α", "β"]), "-2*α*β");
    }

    #[test]
    fn univariate_gcd_and_roots() {
        // (x-1)(x+2) and (x-1)(x-3)
        let p = UniPoly::new(vec![int(-2), int(1), int(1)]);
        let q = UniPoly::new(vec![int(3), int(-4), int(1)]);
        let g = p.gcd(&q);
        assert_eq!(g, UniPoly::new(vec![int(-1), int(1)]));
        assert_eq!(p.rational_roots().unwrap(), vec![int(-2), int(1)]);
        let irr = UniPoly::new(vec![int(-2), int(0), int(1)]);
        assert!(irr.rational_roots().unwrap().is_empty());
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
    }
}
