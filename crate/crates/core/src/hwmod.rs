//! Finite-dimensional irreducible modules built from a highest-weight vector by
//! repeatedly applying lowering generators.
//!
//! A vector of weight below the highest weight is zero in the irreducible
//! quotient exactly when every raising generator kills it. So a new candidate
//! `Y_j p` is represented by its images under `X_1..X_r`, which live one level
//! up and are already known, and dependence is decided there.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::chevalley::{check_chevalley_serre, AlgebraElement, BasisElement, LieAlgebra, MatrixRelations, SerreReport};
use crate::exactla::{int, zero_vec, EchelonBasis, Insertion, Rational, SparseMatrix};
use crate::rootsys::{RootSystemError, Weight};

pub const DEFAULT_DIM_CAP: u64 = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuleError {
    #[error(transparent)]
    RootSystem(#[from] RootSystemError),
    #[error("module of highest weight {weight} has dimension {required}, above the cap {cap}")]
    CapExceeded {
        weight: Weight,
        required: BigInt,
        cap: u64,
    },
    #[error("element has {found} coefficients, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("closure produced {found} vectors, expected {expected}")]
    WrongDimension { expected: usize, found: usize },
}

/// How a module was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Irreducible,
    Adjoint,
}

/// A module with a weight basis and the action of every Chevalley generator.
#[derive(Debug)]
pub struct WeightModule {
    algebra: Arc<LieAlgebra>,
    kind: ModuleKind,
    highest_weight: Weight,
    highest_vector: usize,
    basis_words: Option<Vec<Vec<usize>>>,
    weights: Vec<Weight>,
    x: Vec<SparseMatrix>,
    y: Vec<SparseMatrix>,
    h: Vec<SparseMatrix>,
    basis_actions: Vec<OnceLock<SparseMatrix>>,
}

enum YImage {
    Unset,
    New(usize),
    Combination(Vec<(usize, Rational)>),
}

struct Level {
    /// Global indices of this level's vectors.
    members: Vec<usize>,
}

/// Builds `V(hw)` with the default dimension cap.
pub fn construct_irrep(g: Arc<LieAlgebra>, hw: &Weight) -> Result<WeightModule, ModuleError> {
    construct_irrep_capped(g, hw, DEFAULT_DIM_CAP)
}

pub fn construct_irrep_capped(
    g: Arc<LieAlgebra>,
    hw: &Weight,
    cap: u64,
) -> Result<WeightModule, ModuleError> {
    let rs = g.root_system();
    let required = rs.weyl_dim(hw)?;
    if required > BigInt::from(cap) {
        return Err(ModuleError::CapExceeded {
            weight: hw.clone(),
            required,
            cap,
        });
    }
    let expected = required.to_usize().expect("dimension below cap");
    let r = g.rank();
    let alpha: Vec<Weight> = (1..=r).map(|j| rs.simple_root_weight(j)).collect();

    let mut weights = vec![hw.clone()];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut level_of = vec![0usize];
    let mut pos_in_level = vec![0usize];
    // x_images[v][i]: X_{i+1} v in coordinates of the previous level.
    let mut x_images: Vec<Vec<Vec<Rational>>> = vec![vec![vec![]; r]];
    // y_images[v][j]: Y_{j+1} v in coordinates of the next level.
    let mut y_images: Vec<Vec<Vec<Rational>>> = Vec::new();
    let mut levels = vec![Level { members: vec![0] }];

    loop {
        let current = levels.last().expect("at least one level");
        let cur_len = current.members.len();
        let members = current.members.clone();
        let depth = levels.len() - 1;

        // Candidate Y_j p, grouped by weight; signatures are concatenated X-images.
        let mut spaces: BTreeMap<Weight, (EchelonBasis, Vec<usize>)> = BTreeMap::new();
        let mut new_members = Vec::new();
        let mut pending: Vec<Vec<YImage>> = members
            .iter()
            .map(|_| (0..r).map(|_| YImage::Unset).collect())
            .collect();
        for (pi, &p) in members.iter().enumerate() {
            for j in 0..r {
                let w = weights[p].sub(&alpha[j]);
                let mut sig = Vec::with_capacity(r * cur_len);
                for i in 0..r {
                    // X_i Y_j p = Y_j X_i p + delta_ij <wt(p), alpha_i^vee> p
                    let mut part = zero_vec(cur_len);
                    if depth > 0 {
                        let xp = &x_images[p][i];
                        let prev_members = &levels[depth - 1].members;
                        for (k, c) in xp.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let yq = &y_images[prev_members[k]][j];
                            for (t, d) in yq.iter().enumerate() {
                                if !d.is_zero() {
                                    part[t] += c * d;
                                }
                            }
                        }
                    }
                    if i == j {
                        part[pi] += int(weights[p].coords()[i]);
                    }
                    sig.extend(part);
                }
                let (space, indices) = spaces
                    .entry(w.clone())
                    .or_insert_with(|| (EchelonBasis::new(r * cur_len), Vec::new()));
                match space.insert(&sig) {
                    Insertion::New(_) => {
                        let v = weights.len();
                        weights.push(w);
                        let mut word = vec![j + 1];
                        word.extend_from_slice(&words[p]);
                        words.push(word);
                        level_of.push(depth + 1);
                        pos_in_level.push(new_members.len());
                        x_images.push((0..r).map(|i| sig[i * cur_len..(i + 1) * cur_len].to_vec()).collect());
                        indices.push(v);
                        new_members.push(v);
                        pending[pi][j] = YImage::New(v);
                    }
                    Insertion::Dependent(coeffs) => {
                        pending[pi][j] = YImage::Combination(
                            indices.iter().copied().zip(coeffs).collect(),
                        );
                    }
                }
                if weights.len() > expected {
                    return Err(ModuleError::WrongDimension {
                        expected,
                        found: weights.len(),
                    });
                }
            }
        }
        let next_len = new_members.len();
        for (pi, &p) in members.iter().enumerate() {
            let mut row = Vec::with_capacity(r);
            for j in 0..r {
                let mut v = zero_vec(next_len);
                match &pending[pi][j] {
                    YImage::New(global) => v[pos_in_level[*global]] = int(1),
                    YImage::Combination(terms) => {
                        for (global, c) in terms {
                            v[pos_in_level[*global]] += c;
                        }
                    }
                    YImage::Unset => unreachable!("every candidate is classified"),
                }
                row.push(v);
            }
            debug_assert_eq!(y_images.len(), p);
            y_images.push(row);
        }
        if new_members.is_empty() {
            break;
        }
        levels.push(Level {
            members: new_members,
        });
    }

    let dim = weights.len();
    if dim != expected {
        return Err(ModuleError::WrongDimension {
            expected,
            found: dim,
        });
    }
    let mut x_trip: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); r];
    let mut y_trip: Vec<Vec<(usize, usize, Rational)>> = vec![Vec::new(); r];
    for v in 0..dim {
        let lvl = level_of[v];
        for i in 0..r {
            if lvl > 0 {
                let prev = &levels[lvl - 1].members;
                for (k, c) in x_images[v][i].iter().enumerate() {
                    if !c.is_zero() {
                        x_trip[i].push((prev[k], v, c.clone()));
                    }
                }
            }
            if lvl + 1 < levels.len() {
                let next = &levels[lvl + 1].members;
                for (k, c) in y_images[v][i].iter().enumerate() {
                    if !c.is_zero() {
                        y_trip[i].push((next[k], v, c.clone()));
                    }
                }
            }
        }
    }
    let x = x_trip
        .into_iter()
        .map(|t| SparseMatrix::from_triplets(dim, dim, t))
        .collect();
    let y = y_trip
        .into_iter()
        .map(|t| SparseMatrix::from_triplets(dim, dim, t))
        .collect();
    let h = (0..r)
        .map(|i| SparseMatrix::diagonal(weights.iter().map(|w| int(w.coords()[i])).collect()))
        .collect();
    Ok(WeightModule {
        basis_actions: (0..g.dim()).map(|_| OnceLock::new()).collect(),
        algebra: g,
        kind: ModuleKind::Irreducible,
        highest_weight: hw.clone(),
        highest_vector: 0,
        basis_words: Some(words),
        weights,
        x,
        y,
        h,
    })
}

/// The algebra acting on itself by `ad`.
pub fn adjoint_module(g: Arc<LieAlgebra>) -> WeightModule {
    let r = g.rank();
    let weights = (0..g.dim()).map(|k| g.basis_weight(k)).collect();
    let x = (1..=r).map(|i| g.ad(&g.x(i))).collect();
    let y = (1..=r).map(|i| g.ad(&g.y(i))).collect();
    let h = (1..=r).map(|i| g.ad(&g.h(i))).collect();
    let rs = g.root_system();
    let top = rs.highest_root().to_vec();
    let highest_vector = rs.root_index(&top).expect("highest root is a root");
    WeightModule {
        basis_actions: (0..g.dim()).map(|_| OnceLock::new()).collect(),
        highest_weight: rs.root_to_weight(&top),
        kind: ModuleKind::Adjoint,
        highest_vector,
        basis_words: None,
        weights,
        x,
        y,
        h,
        algebra: g,
    }
}

impl WeightModule {
    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn kind(&self) -> &ModuleKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn highest_weight(&self) -> &Weight {
        &self.highest_weight
    }

    /// Basis index of the highest-weight vector.
    pub fn highest_vector(&self) -> usize {
        self.highest_vector
    }

    /// Lowering words (1-based `Y` indices, leftmost applied last) for modules
    /// built by closure.
    pub fn basis_words(&self) -> Option<&[Vec<usize>]> {
        self.basis_words.as_deref()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// `"adjoint E8"` or `"V_E6(λ6)"`.
    pub fn descriptor(&self) -> String {
        match self.kind {
            ModuleKind::Adjoint => format!("adjoint {}", self.algebra.simple_type()),
            ModuleKind::Irreducible => {
                format!("V_{}({})", self.algebra.simple_type(), self.highest_weight.label())
            }
        }
    }

    /// Action of the simple generator `X_i` (1-based).
    pub fn x(&self, i: usize) -> &SparseMatrix {
        &self.x[i - 1]
    }

    pub fn y(&self, i: usize) -> &SparseMatrix {
        &self.y[i - 1]
    }

    pub fn h(&self, i: usize) -> &SparseMatrix {
        &self.h[i - 1]
    }

    /// Action of the Chevalley basis element with index `k`.
    pub fn basis_action(&self, k: usize) -> &SparseMatrix {
        self.basis_actions[k].get_or_init(|| self.compute_basis_action(k))
    }

    fn compute_basis_action(&self, k: usize) -> SparseMatrix {
        let g = &self.algebra;
        if self.kind == ModuleKind::Adjoint {
            return g.ad(&g.basis(k));
        }
        let n_pos = g.num_positive_roots();
        let r = g.rank();
        match g.basis_element(k) {
            BasisElement::H(i) => self.h[i - 1].clone(),
            BasisElement::X(j) if j < r => self.x[j].clone(),
            BasisElement::Y(j) if j < r => self.y[j].clone(),
            BasisElement::X(j) | BasisElement::Y(j) => {
                let positive = matches!(g.basis_element(k), BasisElement::X(_));
                let root = &g.root_system().positive_roots()[j];
                let i = (0..r)
                    .find(|&i| {
                        let mut rest = root.clone();
                        rest[i] -= 1;
                        root[i] > 0 && g.root_system().is_root(&rest)
                    })
                    .expect("non-simple root has a simple predecessor");
                let mut rest = root.clone();
                rest[i] -= 1;
                let jr = g.root_system().root_index(&rest).expect("checked");
                // [e_a, e_b] = n e_k for the pair below.
                let (a, b) = if positive {
                    (i, jr)
                } else {
                    (n_pos + jr, n_pos + i)
                };
                let n = g
                    .bracket_basis(a, b)
                    .iter()
                    .find(|(c, _)| *c as usize == k)
                    .map(|(_, n)| *n)
                    .expect("root pair brackets to the root vector");
                let m = self
                    .basis_action(a)
                    .commutator(self.basis_action(b))
                    .expect("square");
                m.scale(&Rational::new(BigInt::from(1), BigInt::from(n)))
            }
        }
    }

    /// Matrix of an arbitrary algebra element on this module.
    pub fn action_of(&self, a: &AlgebraElement) -> Result<SparseMatrix, ModuleError> {
        if a.dim() != self.algebra.dim() {
            return Err(ModuleError::DimensionMismatch {
                expected: self.algebra.dim(),
                found: a.dim(),
            });
        }
        let mut out = SparseMatrix::zeros(self.dim(), self.dim());
        for (k, c) in a.support() {
            out = out.add_scaled(self.basis_action(k), c).expect("same shape");
        }
        Ok(out)
    }

    /// All six generator-relation families as matrix identities.
    pub fn verify_relations(&self) -> SerreReport {
        check_chevalley_serre(
            &MatrixRelations,
            self.algebra.root_system().cartan(),
            &self.h,
            &self.x,
            &self.y,
        )
    }

    /// Weight multiplicities, keyed by weight coordinates.
    pub fn weight_multiplicities(&self) -> BTreeMap<Weight, usize> {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m
    }

    /// Weights whose multiplicity differs from that of a simple reflection.
    pub fn weyl_symmetry_violations(&self) -> Vec<(Weight, usize)> {
        let mult = self.weight_multiplicities();
        let rs = self.algebra.root_system();
        let mut out = Vec::new();
        for (w, &m) in &mult {
            for i in 1..=rs.rank() {
                if mult.get(&rs.reflect(w, i)).copied().unwrap_or(0) != m {
                    out.push((w.clone(), i));
                }
            }
        }
        out
    }

    /// Text table: one line per weight, coordinates then multiplicity.
    pub fn multiplicity_table_text(&self) -> String {
        let mut s = format!("# {} dim {}\n", self.descriptor(), self.dim());
        for (w, m) in self.weight_multiplicities().iter().rev() {
            s.push_str(&format!("{w} {m}\n"));
        }
        s
    }

    /// Indices of basis vectors grouped by weight.
    pub fn weight_spaces(&self) -> HashMap<Weight, Vec<usize>> {
        let mut m: HashMap<Weight, Vec<usize>> = HashMap::new();
        for (k, w) in self.weights.iter().enumerate() {
            m.entry(w.clone()).or_default().push(k);
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::rootsys::SimpleType;

    fn alg(s: &str) -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::build_type(s.parse::<SimpleType>().unwrap()))
    }

    #[test]
    fn small_irreps_have_weyl_dimension() {
        let d5 = alg("D5");
        let v = construct_irrep(d5.clone(), &Weight::fundamental(5, 1)).unwrap();
        assert_eq!(v.dim(), 10);
        let rep = v.verify_relations();
        assert!(rep.passed(), "{:?}", rep.failures);
        let s = construct_irrep(d5.clone(), &Weight::fundamental(5, 4)).unwrap();
        assert_eq!(s.dim(), 16);
        assert!(s.verify_relations().passed());
        let e6 = alg("E6");
        let m = construct_irrep(e6, &Weight::fundamental(6, 6)).unwrap();
        assert_eq!(m.dim(), 27);
        let rep = m.verify_relations();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert!(m.weyl_symmetry_violations().is_empty());
    }

    #[test]
    fn trivial_module() {
        let g = alg("D5");
        let t = construct_irrep(g.clone(), &Weight::zero(5)).unwrap();
        assert_eq!(t.dim(), 1);
        for i in 1..=5 {
            assert!(t.x(i).is_zero() && t.y(i).is_zero() && t.h(i).is_zero());
        }
        assert_eq!(t.basis_words().unwrap(), &[Vec::<usize>::new()]);
    }

    #[test]
    fn cap_and_dominance_errors() {
        let g = alg("E8");
        let err = construct_irrep(g.clone(), &Weight::fundamental(8, 1)).unwrap_err();
        assert!(matches!(err, ModuleError::CapExceeded { .. }));
        assert!(construct_irrep(g, &Weight(vec![-1, 0, 0, 0, 0, 0, 0, 0])).is_err());
    }

    #[test]
    fn action_respects_brackets() {
        let g = alg("E6");
        let m = construct_irrep(g.clone(), &Weight::fundamental(6, 1)).unwrap();
        let a = g.x(1).add(&g.y(3)).add(&g.h(2).scale(&rat(1, 2)));
        let b = g.nested_commutator(crate::chevalley::GeneratorKind::X, &[2, 4, 5]).unwrap().add(&g.y(6));
        let lhs = m.action_of(&g.br(&a, &b)).unwrap();
        let rhs = m.action_of(&a).unwrap().commutator(&m.action_of(&b).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(m.action_of(&a).unwrap().trace().is_zero());
        assert_eq!(m.action_of(&g.br(&g.x(1), &g.y(1))).unwrap(), *m.h(1));
    }

    #[test]
    fn adjoint_module_basics() {
        let g = alg("E6");
        let m = adjoint_module(g.clone());
        assert_eq!(m.dim(), 78);
        let rep = m.verify_relations();
        assert!(rep.passed(), "{:?}", rep.failures);
        let top = m.highest_vector();
        for i in 1..=6 {
            let col: Vec<Rational> = (0..78).map(|r| m.x(i).get(r, top)).collect();
            assert!(col.iter().all(Zero::is_zero));
        }
        assert!(m.weyl_symmetry_violations().is_empty());
    }
}
