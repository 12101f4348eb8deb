//! Lie algebras in a Chevalley basis with integer structure constants.
//!
//! The basis is ordered `X_alpha` (positive roots in root-system order), then
//! `Y_alpha` in the same order, then `H_1..H_r`. Non-simple root vectors are
//! defined through their extraspecial pair: if `i` is the smallest index with
//! `xi - alpha_i` a root, then `X_xi = [X_i, X_{xi - alpha_i}]` and
//! `Y_xi = [Y_{xi - alpha_i}, Y_i]`. This fixes every sign: `N` is `+1` on
//! extraspecial pairs, the Chevalley involution maps `X_alpha` to `-Y_alpha`,
//! and `[X_alpha, Y_alpha]` is the coroot `H_alpha`.
//!
//! The constants are computed from the Frenkel-Kac cocycle realization of a
//! simply-laced algebra and then transported to the basis above.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactla::{fmt_rational, int, Rational, SparseMatrix};
use crate::poly::Coefficient;
use crate::rootsys::{Family, RootSystem, SimpleType, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChevalleyError {
    #[error("element has {found} coefficients, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("simple root index {index} out of range 1..={rank}")]
    InvalidIndex { index: usize, rank: usize },
    #[error("nested commutator needs at least one index")]
    EmptyWord,
    #[error("named elements are only defined for E6, E7, E8 (got {0})")]
    NotExceptional(SimpleType),
    #[error("structure table: {0}")]
    Table(String),
    #[error("named element {0} vanishes in this structure table")]
    VanishingNamed(String),
}

/// A basis element of the Chevalley basis. Root indices are 0-based positions
/// in [`RootSystem::positive_roots`]; Cartan indices are 1-based.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisElement {
    X(usize),
    Y(usize),
    H(usize),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GeneratorKind {
    X,
    Y,
}

/// Element of a Lie algebra as a coefficient vector over the Chevalley basis.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct AlgebraElement {
    coeffs: Vec<Rational>,
}

impl AlgebraElement {
    pub fn zero(dim: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); dim],
        }
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coeffs[k] = Rational::one();
        e
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "adding elements of different algebras");
        Self {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// `sum_k c_k * e_k`.
    pub fn linear_combination(dim: usize, terms: &[(Rational, &AlgebraElement)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(dim), |acc, (c, e)| acc.add(&e.scale(c)))
    }
}

/// Outcome of checking the Chevalley-Serre relations.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct SerreReport {
    pub relations_checked: usize,
    pub failures: Vec<String>,
}

impl SerreReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Operations needed to test the defining relations in some realization
/// (algebra elements, module matrices, images under a map).
pub trait RelationSpace {
    type Elem: Clone;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a - k * b`.
    fn minus_multiple(&self, a: &Self::Elem, k: i64, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Checks all six relation families for generators `h`, `x`, `y` against a
/// Cartan matrix. The slices are indexed by 0-based generator number.
pub fn check_chevalley_serre<S: RelationSpace>(
    space: &S,
    cartan: &[Vec<i64>],
    h: &[S::Elem],
    x: &[S::Elem],
    y: &[S::Elem],
) -> SerreReport {
    let r = cartan.len();
    let mut report = SerreReport::default();
    let mut check = |ok: bool, what: String| {
        report.relations_checked += 1;
        if !ok {
            report.failures.push(what);
        }
    };
    for i in 0..r {
        for j in 0..r {
            let (a, b) = (i + 1, j + 1);
            let m = cartan[j][i];
            let hh = space.bracket(&h[i], &h[j]);
            check(space.is_zero(&hh), format!("[H{a},H{b}] != 0"));
            let hx = space.bracket(&h[i], &x[j]);
            check(
                space.is_zero(&space.minus_multiple(&hx, m, &x[j])),
                format!("[H{a},X{b}] != {m} X{b}"),
            );
            let hy = space.bracket(&h[i], &y[j]);
            check(
                space.is_zero(&space.minus_multiple(&hy, -m, &y[j])),
                format!("[H{a},Y{b}] != {} Y{b}", -m),
            );
            let xy = space.bracket(&x[i], &y[j]);
            let ok = if i == j {
                space.is_zero(&space.minus_multiple(&xy, 1, &h[i]))
            } else {
                space.is_zero(&xy)
            };
            check(ok, format!("[X{a},Y{b}] wrong"));
            if i != j {
                let power = 1 - m;
                let mut ex = x[j].clone();
                let mut ey = y[j].clone();
                for _ in 0..power {
                    ex = space.bracket(&x[i], &ex);
                    ey = space.bracket(&y[i], &ey);
                }
                check(space.is_zero(&ex), format!("(ad X{a})^{power} X{b} != 0"));
                check(space.is_zero(&ey), format!("(ad Y{a})^{power} Y{b} != 0"));
            }
        }
    }
    report
}

/// Relation space of square matrices under the commutator.
pub struct MatrixRelations;

impl RelationSpace for MatrixRelations {
    type Elem = SparseMatrix;
    fn bracket(&self, a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
        a.commutator(b).expect("square matrices of one size")
    }
    fn minus_multiple(&self, a: &SparseMatrix, k: i64, b: &SparseMatrix) -> SparseMatrix {
        a.add_scaled(b, &int(-k)).expect("same shape")
    }
    fn is_zero(&self, a: &SparseMatrix) -> bool {
        a.is_zero()
    }
}

/// Result of a Jacobi-identity sweep.
#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct JacobiReport {
    pub triples_checked: u64,
    pub failures: Vec<(usize, usize, usize)>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Parsed canonical structure-table file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    pub simple_type: SimpleType,
    pub dim: usize,
    /// `(a, b, c, n)`: `[e_a, e_b]` has coefficient `n` on `e_c`, with `a < b`.
    pub entries: Vec<(usize, usize, usize, i64)>,
}

/// A simple Lie algebra in its Chevalley basis.
#[derive(Clone, Debug)]
pub struct LieAlgebra {
    rs: RootSystem,
    n_pos: usize,
    dim: usize,
    table: Vec<Vec<(u32, i64)>>,
}

fn cocycle_sign(cartan: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let r = a.len();
    let mut e = 0i64;
    for i in 0..r {
        e += a[i] * b[i];
        for j in i + 1..r {
            if cartan[i][j] == -1 {
                e += a[i] * b[j];
            }
        }
    }
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

impl LieAlgebra {
    pub fn build(rs: RootSystem) -> Self {
        let n_pos = rs.num_positive_roots();
        let r = rs.rank();
        let dim = 2 * n_pos + r;
        let cartan = rs.cartan().to_vec();
        let roots = rs.positive_roots().to_vec();

        // Signed root coordinates of the Frenkel-Kac basis element `k`.
        let signed = |k: usize| -> Vec<i64> {
            if k < n_pos {
                roots[k].clone()
            } else {
                roots[k - n_pos].iter().map(|c| -c).collect()
            }
        };
        let lookup = |c: &[i64]| -> Option<usize> {
            if let Some(k) = rs.root_index(c) {
                return Some(k);
            }
            let neg: Vec<i64> = c.iter().map(|x| -x).collect();
            rs.root_index(&neg).map(|k| k + n_pos)
        };
        let pairing = |i: usize, c: &[i64]| -> i64 { (0..r).map(|j| cartan[i][j] * c[j]).sum() };

        // Frenkel-Kac bracket: [h,e_a] = (h,a) e_a, [e_a,e_-a] = -a,
        // [e_a,e_b] = eps(a,b) e_{a+b} when a+b is a root.
        let fk = |a: usize, b: usize| -> Vec<(usize, i64)> {
            let (ha, hb) = (a >= 2 * n_pos, b >= 2 * n_pos);
            match (ha, hb) {
                (true, true) => vec![],
                (true, false) => {
                    let p = pairing(a - 2 * n_pos, &signed(b));
                    if p == 0 {
                        vec![]
                    } else {
                        vec![(b, p)]
                    }
                }
                (false, true) => {
                    let p = pairing(b - 2 * n_pos, &signed(a));
                    if p == 0 {
                        vec![]
                    } else {
                        vec![(a, -p)]
                    }
                }
                (false, false) => {
                    let (ca, cb) = (signed(a), signed(b));
                    let sum: Vec<i64> = ca.iter().zip(&cb).map(|(x, y)| x + y).collect();
                    if sum.iter().all(|&x| x == 0) {
                        ca.iter()
                            .enumerate()
                            .filter(|(_, &c)| c != 0)
                            .map(|(i, &c)| (2 * n_pos + i, -c))
                            .collect()
                    } else if let Some(k) = lookup(&sum) {
                        vec![(k, cocycle_sign(&cartan, &ca, &cb))]
                    } else {
                        vec![]
                    }
                }
            }
        };

        // Signs relating our basis to the Frenkel-Kac one.
        let mut sigma = vec![1i64; dim];
        for k in 0..n_pos {
            let xi = &roots[k];
            if xi.iter().sum::<i64>() == 1 {
                sigma[k] = 1;
                sigma[n_pos + k] = -1;
                continue;
            }
            let (i, j) = extraspecial(&rs, xi);
            let rest = &roots[j];
            let mut alpha_i = vec![0; r];
            alpha_i[i] = 1;
            sigma[k] = sigma[j] * cocycle_sign(&cartan, &alpha_i, rest);
            let neg_rest: Vec<i64> = rest.iter().map(|c| -c).collect();
            let neg_ai: Vec<i64> = alpha_i.iter().map(|c| -c).collect();
            sigma[n_pos + k] = sigma[n_pos + j] * sigma[n_pos + i] * cocycle_sign(&cartan, &neg_rest, &neg_ai);
        }

        let mut table = vec![Vec::new(); dim * dim];
        for a in 0..dim {
            for b in 0..dim {
                let mut entries: Vec<(u32, i64)> = fk(a, b)
                    .into_iter()
                    .map(|(c, n)| (c as u32, n * sigma[a] * sigma[b] * sigma[c]))
                    .collect();
                entries.sort_unstable();
                table[a * dim + b] = entries;
            }
        }
        let g = Self {
            rs,
            n_pos,
            dim,
            table,
        };
        g.assert_normalization();
        g
    }

    pub fn build_type(t: SimpleType) -> Self {
        Self::build(RootSystem::build(t))
    }

    /// Build-time invariants: extraspecial constants are +1 and every
    /// `[X_alpha, Y_alpha]` is the coroot.
    fn assert_normalization(&self) {
        let r = self.rank();
        for k in 0..self.n_pos {
            let root = &self.rs.positive_roots()[k];
            let expect: Vec<(u32, i64)> = root
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(i, &c)| ((2 * self.n_pos + i) as u32, c))
                .collect();
            assert_eq!(
                self.bracket_basis(k, self.n_pos + k),
                expect.as_slice(),
                "[X,Y] is not the coroot for root {root:?}"
            );
            if root.iter().sum::<i64>() > 1 {
                let (i, j) = extraspecial(&self.rs, root);
                assert_eq!(
                    self.bracket_basis(i, j),
                    &[(k as u32, 1)],
                    "extraspecial constant not +1"
                );
            }
        }
        debug_assert!(self.table.iter().flatten().all(|(c, _)| (*c as usize) < self.dim));
        let _ = r;
    }

    /// Rebuilds an algebra from a parsed structure table (for example a cache
    /// file). Only basic shape checks happen here; run [`Self::verify_serre`]
    /// and the Jacobi sweeps to validate the contents.
    pub fn from_table(table: &StructureTable) -> Result<Self, ChevalleyError> {
        let rs = RootSystem::build(table.simple_type);
        let dim = rs.algebra_dim();
        if table.dim != dim {
            return Err(ChevalleyError::Table(format!(
                "dimension {} does not match {} (expected {dim})",
                table.dim, table.simple_type
            )));
        }
        let mut cells: Vec<Vec<(u32, i64)>> = vec![Vec::new(); dim * dim];
        for &(a, b, c, n) in &table.entries {
            if a >= dim || b >= dim || c >= dim {
                return Err(ChevalleyError::Table(format!("index out of range in ({a},{b},{c})")));
            }
            if a >= b {
                return Err(ChevalleyError::Table(format!("pair ({a},{b}) is not ordered")));
            }
            if n == 0 {
                return Err(ChevalleyError::Table(format!("explicit zero at ({a},{b},{c})")));
            }
            if cells[a * dim + b].iter().any(|(k, _)| *k as usize == c) {
                return Err(ChevalleyError::Table(format!("duplicate entry ({a},{b},{c})")));
            }
            cells[a * dim + b].push((c as u32, n));
            cells[b * dim + a].push((c as u32, -n));
        }
        for cell in &mut cells {
            cell.sort_unstable();
        }
        Ok(Self {
            n_pos: rs.num_positive_roots(),
            rs,
            dim,
            table: cells,
        })
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn simple_type(&self) -> SimpleType {
        self.rs.simple_type()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.n_pos
    }

    pub fn basis_element(&self, k: usize) -> BasisElement {
        if k < self.n_pos {
            BasisElement::X(k)
        } else if k < 2 * self.n_pos {
            BasisElement::Y(k - self.n_pos)
        } else {
            BasisElement::H(k - 2 * self.n_pos + 1)
        }
    }

    pub fn index_of(&self, e: BasisElement) -> usize {
        match e {
            BasisElement::X(k) => k,
            BasisElement::Y(k) => self.n_pos + k,
            BasisElement::H(i) => 2 * self.n_pos + i - 1,
        }
    }

    pub fn is_cartan_index(&self, k: usize) -> bool {
        k >= 2 * self.n_pos
    }

    /// Weight of a basis element under the Cartan subalgebra.
    pub fn basis_weight(&self, k: usize) -> Weight {
        match self.basis_element(k) {
            BasisElement::X(j) => self.rs.root_to_weight(&self.rs.positive_roots()[j]),
            BasisElement::Y(j) => Weight::zero(self.rank()).sub(&self.rs.root_to_weight(&self.rs.positive_roots()[j])),
            BasisElement::H(_) => Weight::zero(self.rank()),
        }
    }

    /// Signed simple-root coordinates of a basis element (zero for `H`).
    pub fn basis_root(&self, k: usize) -> Vec<i64> {
        match self.basis_element(k) {
            BasisElement::X(j) => self.rs.positive_roots()[j].clone(),
            BasisElement::Y(j) => self.rs.positive_roots()[j].iter().map(|c| -c).collect(),
            BasisElement::H(_) => vec![0; self.rank()],
        }
    }

    /// Label used in text output: `X_0112210`, `Y_...`, `H_3`.
    pub fn basis_label(&self, k: usize) -> String {
        let digits = |j: usize| -> String {
            self.rs.positive_roots()[j]
                .iter()
                .map(|c| c.to_string())
                .collect()
        };
        match self.basis_element(k) {
            BasisElement::X(j) => format!("X_{}", digits(j)),
            BasisElement::Y(j) => format!("Y_{}", digits(j)),
            BasisElement::H(i) => format!("H_{i}"),
        }
    }

    pub fn parse_basis_label(&self, label: &str) -> Option<usize> {
        let (kind, rest) = label.split_once('_')?;
        match kind {
            "H" => {
                let i: usize = rest.parse().ok()?;
                (1..=self.rank()).contains(&i).then(|| 2 * self.n_pos + i - 1)
            }
            "X" | "Y" => {
                if rest.len() != self.rank() {
                    return None;
                }
                let coords: Option<Vec<i64>> = rest
                    .chars()
                    .map(|ch| ch.to_digit(10).map(i64::from))
                    .collect();
                let j = self.rs.root_index(&coords?)?;
                Some(if kind == "X" { j } else { self.n_pos + j })
            }
            _ => None,
        }
    }

    /// `[e_a, e_b]` as `(basis index, integer coefficient)` pairs.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(u32, i64)] {
        &self.table[a * self.dim + b]
    }

    fn check_dim(&self, n: usize) -> Result<(), ChevalleyError> {
        if n != self.dim {
            return Err(ChevalleyError::DimensionMismatch {
                expected: self.dim,
                found: n,
            });
        }
        Ok(())
    }

    /// Bilinear bracket over any coefficient ring.
    pub fn bracket_coeffs<C: Coefficient>(&self, a: &[C], b: &[C]) -> Vec<C> {
        assert_eq!(a.len(), self.dim);
        assert_eq!(b.len(), self.dim);
        let mut out = vec![C::zero_coeff(); self.dim];
        let nz_b: Vec<usize> = (0..self.dim).filter(|&j| !b[j].is_zero_coeff()).collect();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero_coeff() {
                continue;
            }
            for &j in &nz_b {
                let cell = &self.table[i * self.dim + j];
                if cell.is_empty() {
                    continue;
                }
                let prod = ai.mul_ref(&b[j]);
                for &(c, n) in cell {
                    out[c as usize].add_assign_ref(&prod.scale_int(n));
                }
            }
        }
        out
    }

    pub fn bracket(
        &self,
        a: &AlgebraElement,
        b: &AlgebraElement,
    ) -> Result<AlgebraElement, ChevalleyError> {
        self.check_dim(a.dim())?;
        self.check_dim(b.dim())?;
        Ok(AlgebraElement::from_coeffs(
            self.bracket_coeffs(a.coeffs(), b.coeffs()),
        ))
    }

    /// Bracket for elements already known to belong to this algebra.
    pub fn br(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.bracket(a, b).expect("element of a different algebra")
    }

    /// Matrix of `ad(a)` on the coefficient space.
    pub fn ad(&self, a: &AlgebraElement) -> SparseMatrix {
        let mut triplets = Vec::new();
        for (i, ai) in a.support() {
            for b in 0..self.dim {
                for &(c, n) in self.bracket_basis(i, b) {
                    triplets.push((c as usize, b, ai * int(n)));
                }
            }
        }
        SparseMatrix::from_triplets(self.dim, self.dim, triplets)
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.dim)
    }

    pub fn basis(&self, k: usize) -> AlgebraElement {
        AlgebraElement::basis(self.dim, k)
    }

    fn check_index(&self, i: usize) -> Result<(), ChevalleyError> {
        if i == 0 || i > self.rank() {
            return Err(ChevalleyError::InvalidIndex {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    /// Simple generator `X_i` (1-based).
    pub fn x(&self, i: usize) -> AlgebraElement {
        self.basis(i - 1)
    }

    pub fn y(&self, i: usize) -> AlgebraElement {
        self.basis(self.n_pos + i - 1)
    }

    pub fn h(&self, i: usize) -> AlgebraElement {
        self.basis(2 * self.n_pos + i - 1)
    }

    /// `sum_i c_i H_i`.
    pub fn cartan_element(&self, coeffs: &[Rational]) -> AlgebraElement {
        let mut e = self.zero();
        for (i, c) in coeffs.iter().enumerate() {
            e.coeffs[2 * self.n_pos + i] = c.clone();
        }
        e
    }

    pub fn generator(&self, kind: GeneratorKind, i: usize) -> AlgebraElement {
        match kind {
            GeneratorKind::X => self.x(i),
            GeneratorKind::Y => self.y(i),
        }
    }

    pub fn generators(&self) -> (Vec<AlgebraElement>, Vec<AlgebraElement>, Vec<AlgebraElement>) {
        let r = self.rank();
        (
            (1..=r).map(|i| self.h(i)).collect(),
            (1..=r).map(|i| self.x(i)).collect(),
            (1..=r).map(|i| self.y(i)).collect(),
        )
    }

    /// `[[...[[G_{a1}, G_{a2}], G_{a3}], ...], G_{ak}]` for 1-based indices.
    pub fn nested_commutator(
        &self,
        kind: GeneratorKind,
        indices: &[usize],
    ) -> Result<AlgebraElement, ChevalleyError> {
        let (&first, rest) = indices.split_first().ok_or(ChevalleyError::EmptyWord)?;
        for &i in indices {
            self.check_index(i)?;
        }
        Ok(rest.iter().fold(self.generator(kind, first), |acc, &i| {
            self.br(&acc, &self.generator(kind, i))
        }))
    }

    /// If `e` is a multiple of a single basis element, returns it with the scalar.
    pub fn as_basis_multiple(&self, e: &AlgebraElement) -> Option<(usize, Rational)> {
        let mut it = e.support();
        let (k, c) = it.next()?;
        it.next().is_none().then(|| (k, c.clone()))
    }

    /// Weight of `e` if it is a nonzero weight vector for the Cartan subalgebra.
    pub fn weight_of(&self, e: &AlgebraElement) -> Option<Weight> {
        let mut weights = e.support().map(|(k, _)| self.basis_weight(k));
        let w = weights.next()?;
        weights.all(|v| v == w).then_some(w)
    }

    /// Human-readable linear combination, e.g. `2*X_0110 - H_1`.
    pub fn format_element(&self, e: &AlgebraElement) -> String {
        let mut parts = Vec::new();
        for (k, c) in e.support() {
            let label = self.basis_label(k);
            let term = if c.is_one() {
                label
            } else if *c == -Rational::one() {
                format!("-{label}")
            } else {
                format!("{}*{label}", fmt_rational(c))
            };
            parts.push(term);
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ").replace("+ -", "- ")
        }
    }

    pub fn verify_serre(&self) -> SerreReport {
        let (h, x, y) = self.generators();
        check_chevalley_serre(self, self.rs.cartan(), &h, &x, &y)
    }

    /// Checks `[a,b] = -[b,a]` on every basis pair.
    pub fn antisymmetry_failures(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.dim {
            for b in a..self.dim {
                let ab = self.bracket_basis(a, b);
                let ba = self.bracket_basis(b, a);
                let ok = ab.len() == ba.len()
                    && ab.iter().zip(ba).all(|((c1, n1), (c2, n2))| c1 == c2 && *n1 == -n2);
                if !ok {
                    out.push((a, b));
                }
            }
        }
        out
    }

    fn jacobi_holds(&self, a: usize, b: usize, c: usize, acc: &mut [i64], touched: &mut Vec<usize>) -> bool {
        let add = |x: usize, y: usize, z: usize, acc: &mut [i64], touched: &mut Vec<usize>| {
            for &(m, n1) in self.bracket_basis(y, z) {
                for &(k, n2) in self.bracket_basis(x, m as usize) {
                    let k = k as usize;
                    if acc[k] == 0 {
                        touched.push(k);
                    }
                    acc[k] += n1 * n2;
                }
            }
        };
        add(a, b, c, acc, touched);
        add(b, c, a, acc, touched);
        add(c, a, b, acc, touched);
        let mut ok = true;
        for k in touched.drain(..) {
            if acc[k] != 0 {
                ok = false;
            }
            acc[k] = 0;
        }
        ok
    }

    /// Jacobi identity on every unordered triple of distinct basis elements.
    pub fn jacobi_exhaustive(&self) -> JacobiReport {
        let mut report = JacobiReport::default();
        let mut acc = vec![0i64; self.dim];
        let mut touched = Vec::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                for c in b + 1..self.dim {
                    report.triples_checked += 1;
                    if !self.jacobi_holds(a, b, c, &mut acc, &mut touched) && report.failures.len() < 16 {
                        report.failures.push((a, b, c));
                    }
                }
            }
        }
        report
    }

    /// Jacobi identity on `count` uniformly random basis triples.
    pub fn jacobi_sampled(&self, count: u64, seed: u64) -> JacobiReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = JacobiReport::default();
        let mut acc = vec![0i64; self.dim];
        let mut touched = Vec::new();
        for _ in 0..count {
            let (a, b, c) = (
                rng.gen_range(0..self.dim),
                rng.gen_range(0..self.dim),
                rng.gen_range(0..self.dim),
            );
            report.triples_checked += 1;
            if !self.jacobi_holds(a, b, c, &mut acc, &mut touched) && report.failures.len() < 16 {
                report.failures.push((a, b, c));
            }
        }
        report
    }

    /// Jacobi identity on every triple containing a simple generator.
    pub fn jacobi_with_generators(&self) -> JacobiReport {
        let mut report = JacobiReport::default();
        let mut acc = vec![0i64; self.dim];
        let mut touched = Vec::new();
        let gens: Vec<usize> = (0..self.rank())
            .flat_map(|i| [i, self.n_pos + i])
            .collect();
        for &g in &gens {
            for b in 0..self.dim {
                for c in b + 1..self.dim {
                    report.triples_checked += 1;
                    if !self.jacobi_holds(g, b, c, &mut acc, &mut touched) && report.failures.len() < 16 {
                        report.failures.push((g, b, c));
                    }
                }
            }
        }
        report
    }

    /// Canonical sorted text form of the structure constants, one line per
    /// nonzero `[e_a, e_b]` coefficient with `a < b`.
    pub fn structure_table_text(&self) -> String {
        let mut out = String::new();
        out.push_str("# Chevalley basis structure constants: <a> <b> <c> <n> means [a,b] has coefficient n on c\n");
        out.push_str(&format!("type {}\n", self.simple_type()));
        out.push_str(&format!("dim {}\n", self.dim));
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                for &(c, n) in self.bracket_basis(a, b) {
                    out.push_str(&format!(
                        "{} {} {} {}\n",
                        self.basis_label(a),
                        self.basis_label(b),
                        self.basis_label(c as usize),
                        n
                    ));
                }
            }
        }
        out
    }

    pub fn structure_table(&self) -> StructureTable {
        let mut entries = Vec::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                for &(c, n) in self.bracket_basis(a, b) {
                    entries.push((a, b, c as usize, n));
                }
            }
        }
        StructureTable {
            simple_type: self.simple_type(),
            dim: self.dim,
            entries,
        }
    }

    /// Number of nonzero structure constants over ordered pairs.
    pub fn nonzero_constants(&self) -> usize {
        self.table.iter().map(Vec::len).sum()
    }
}

impl RelationSpace for LieAlgebra {
    type Elem = AlgebraElement;
    fn bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.br(a, b)
    }
    fn minus_multiple(&self, a: &AlgebraElement, k: i64, b: &AlgebraElement) -> AlgebraElement {
        a.sub(&b.scale(&int(k)))
    }
    fn is_zero(&self, a: &AlgebraElement) -> bool {
        a.is_zero()
    }
}

/// Extraspecial decomposition of a non-simple positive root: the smallest
/// 0-based simple index `i` with `xi - alpha_i` a root, and that root's index.
fn extraspecial(rs: &RootSystem, xi: &[i64]) -> (usize, usize) {
    for i in 0..rs.rank() {
        if xi[i] == 0 {
            continue;
        }
        let mut rest = xi.to_vec();
        rest[i] -= 1;
        if let Some(j) = rs.root_index(&rest) {
            return (i, j);
        }
    }
    unreachable!("non-simple positive root without a simple predecessor")
}

/// Parses the canonical structure-table text format.
/// Largest rank accepted in a table file. Label parsing builds the root
/// system, so an unbounded `D_n` header would allocate without limit.
const MAX_TABLE_RANK: usize = 8;

pub fn parse_structure_table(text: &str) -> Result<StructureTable, ChevalleyError> {
    let err = |line: usize, msg: &str| ChevalleyError::Table(format!("line {line}: {msg}"));
    let mut simple_type: Option<SimpleType> = None;
    let mut dim: Option<usize> = None;
    let mut algebra: Option<LieAlgebra> = None;
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["type", t] => {
                if simple_type.is_some() {
                    return Err(err(line_no, "duplicate type line"));
                }
                let t: SimpleType = t.parse().map_err(|_| err(line_no, "unsupported type"))?;
                if t.rank() > MAX_TABLE_RANK {
                    return Err(err(line_no, "rank too large for a structure table"));
                }
                simple_type = Some(t);
            }
            ["dim", d] => {
                if dim.is_some() {
                    return Err(err(line_no, "duplicate dim line"));
                }
                dim = Some(d.parse().map_err(|_| err(line_no, "bad dimension"))?);
            }
            [a, b, c, v] => {
                let t = simple_type.ok_or_else(|| err(line_no, "entry before type line"))?;
                if algebra.as_ref().map(|g| g.simple_type()) != Some(t) {
                    algebra = Some(skeleton(t));
                }
                let g = algebra.as_ref().expect("just set");
                let ia = g.parse_basis_label(a).ok_or_else(|| err(line_no, "bad label"))?;
                let ib = g.parse_basis_label(b).ok_or_else(|| err(line_no, "bad label"))?;
                let ic = g.parse_basis_label(c).ok_or_else(|| err(line_no, "bad label"))?;
                let value: i64 = v.parse().map_err(|_| err(line_no, "bad integer"))?;
                entries.push((ia, ib, ic, value));
            }
            _ => return Err(err(line_no, "unrecognized line")),
        }
    }
    let simple_type = simple_type.ok_or_else(|| err(0, "missing type line"))?;
    let dim = dim.ok_or_else(|| err(0, "missing dim line"))?;
    Ok(StructureTable {
        simple_type,
        dim,
        entries,
    })
}

/// Algebra with an empty table, used only for label parsing.
fn skeleton(t: SimpleType) -> LieAlgebra {
    let rs = RootSystem::build(t);
    let dim = rs.algebra_dim();
    LieAlgebra {
        n_pos: rs.num_positive_roots(),
        rs,
        dim,
        table: Vec::new(),
    }
}

/// Distinguished elements of `E_6`, `E_7`, `E_8` used to describe the
/// decompositions under the embedded `D_n`: the highest-weight vectors of the
/// constituents, built from nested commutators with the signs printed in the
/// literature, and the Cartan element commuting with the `D_n` image.
#[derive(Clone, Debug)]
pub struct NamedElements {
    pub ambient: SimpleType,
    pub xp: AlgebraElement,
    pub xpp: AlgebraElement,
    pub xppp: Option<AlgebraElement>,
    pub yp: Option<AlgebraElement>,
    pub ypp: Option<AlgebraElement>,
    pub h: AlgebraElement,
}

/// One named element as a signed nested commutator, or an explicit Cartan element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NamedDefinition {
    Commutator {
        sign: i64,
        kind: GeneratorKind,
        indices: Vec<usize>,
    },
    Cartan(Vec<String>),
}

impl fmt::Display for NamedDefinition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedDefinition::Commutator {
                sign,
                kind,
                indices,
            } => {
                let idx: Vec<String> = indices.iter().map(usize::to_string).collect();
                let s = if *sign < 0 { "-" } else { "" };
                write!(f, "{s}{kind:?}_{{{}}}", idx.join(","))
            }
            NamedDefinition::Cartan(c) => {
                let terms: Vec<String> = c
                    .iter()
                    .enumerate()
                    .map(|(i, q)| format!("{q}*H{}", i + 1))
                    .collect();
                write!(f, "{}", terms.join(" + "))
            }
        }
    }
}

fn commutator(sign: i64, kind: GeneratorKind, indices: &[usize]) -> NamedDefinition {
    NamedDefinition::Commutator {
        sign,
        kind,
        indices: indices.to_vec(),
    }
}

/// Definitions of the named elements of an exceptional algebra, in the order
/// `X'`, `X''`, `X'''`, `Y'`, `Y''`, `H`.
pub fn named_definitions(t: SimpleType) -> Result<Vec<(&'static str, NamedDefinition)>, ChevalleyError> {
    use GeneratorKind::{X, Y};
    let cartan = |c: &[&str]| NamedDefinition::Cartan(c.iter().map(|s| s.to_string()).collect());
    match (t.family(), t.rank()) {
        (Family::E, 8) => Ok(vec![
            ("X'", commutator(1, X, &[4, 5, 6, 7, 8, 2, 3, 4, 5, 6, 7])),
            (
                "X''",
                commutator(-1, X, &[3, 4, 2, 1, 5, 4, 3, 6, 5, 4, 7, 2, 6, 5, 8, 7, 6, 4, 5, 3, 4, 2]),
            ),
            (
                "X'''",
                commutator(
                    1,
                    X,
                    &[8, 7, 6, 5, 4, 3, 2, 1, 4, 5, 6, 7, 3, 4, 5, 6, 2, 4, 5, 3, 4, 2, 1, 3, 4, 5, 6, 7, 8],
                ),
            ),
            ("Y'", commutator(-1, Y, &[5, 4, 2, 3, 6, 4, 1, 3, 5, 4, 7, 2, 6, 5, 4, 3, 1])),
            ("H", cartan(&["4", "5", "7", "10", "8", "6", "4", "2"])),
        ]),
        (Family::E, 7) => Ok(vec![
            ("X'", commutator(1, X, &[6, 7, 5, 4, 3, 2, 4, 5, 6])),
            ("X''", commutator(1, X, &[7, 6, 5, 4, 3, 2, 4, 5, 6, 1, 3, 4, 5, 2, 4, 3])),
            ("X'''", commutator(-1, X, &[7, 6, 5, 4, 3, 2, 4, 5, 6, 1, 3, 4, 5, 2, 4, 3, 1])),
            ("Y'", commutator(-1, Y, &[7, 6, 5, 4, 3, 2, 4, 5, 6, 1, 3, 4, 5, 2, 4, 3, 1])),
            ("Y''", commutator(1, Y, &[7, 6, 5, 4, 3, 2, 4, 5, 6, 1, 3, 4, 5, 2, 4, 3])),
            ("H", cartan(&["2", "2", "3", "4", "3", "2", "1"])),
        ]),
        (Family::E, 6) => Ok(vec![
            ("X'", commutator(1, X, &[6, 5, 4, 3, 2, 4, 5])),
            ("X''", commutator(1, X, &[6, 5, 4, 2, 3, 1, 4, 3, 5, 4, 2])),
            ("H", cartan(&["2", "3/2", "5/2", "3", "2", "1"])),
        ]),
        _ => Err(ChevalleyError::NotExceptional(t)),
    }
}

impl LieAlgebra {
    pub fn realize(&self, def: &NamedDefinition) -> Result<AlgebraElement, ChevalleyError> {
        match def {
            NamedDefinition::Commutator {
                sign,
                kind,
                indices,
            } => Ok(self.nested_commutator(*kind, indices)?.scale(&int(*sign))),
            NamedDefinition::Cartan(c) => {
                if c.len() != self.rank() {
                    return Err(ChevalleyError::DimensionMismatch {
                        expected: self.rank(),
                        found: c.len(),
                    });
                }
                let coeffs: Vec<Rational> = c
                    .iter()
                    .map(|s| crate::exactla::parse_rational(s).expect("static rational"))
                    .collect();
                Ok(self.cartan_element(&coeffs))
            }
        }
    }

    pub fn named_elements(&self) -> Result<NamedElements, ChevalleyError> {
        let defs = named_definitions(self.simple_type())?;
        let mut map: HashMap<&str, AlgebraElement> = HashMap::new();
        for (name, def) in &defs {
            let e = self.realize(def)?;
            if e.is_zero() {
                return Err(ChevalleyError::VanishingNamed(name.to_string()));
            }
            map.insert(name, e);
        }
        Ok(NamedElements {
            ambient: self.simple_type(),
            xp: map.remove("X'").expect("X' defined"),
            xpp: map.remove("X''").expect("X'' defined"),
            xppp: map.remove("X'''"),
            yp: map.remove("Y'"),
            ypp: map.remove("Y''"),
            h: map.remove("H").expect("H defined"),
        })
    }
}

impl NamedElements {
    pub fn get(&self, name: &str) -> Option<&AlgebraElement> {
        match name {
            "X'" => Some(&self.xp),
            "X''" => Some(&self.xpp),
            "X'''" => self.xppp.as_ref(),
            "Y'" => self.yp.as_ref(),
            "Y''" => self.ypp.as_ref(),
            "H" => Some(&self.h),
            _ => None,
        }
    }

    /// `(name, element)` for every element defined in this ambient algebra.
    pub fn entries(&self) -> Vec<(&'static str, &AlgebraElement)> {
        let mut out = vec![("X'", &self.xp), ("X''", &self.xpp)];
        if let Some(e) = &self.xppp {
            out.push(("X'''", e));
        }
        if let Some(e) = &self.yp {
            out.push(("Y'", e));
        }
        if let Some(e) = &self.ypp {
            out.push(("Y''", e));
        }
        out.push(("H", &self.h));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    fn alg(s: &str) -> LieAlgebra {
        LieAlgebra::build_type(s.parse().unwrap())
    }

    #[test]
    fn dimensions() {
        assert_eq!(alg("E8").dim(), 248);
        assert_eq!(alg("E7").dim(), 133);
        assert_eq!(alg("E6").dim(), 78);
        assert_eq!(alg("D6").dim(), 66);
        assert_eq!(alg("D5").dim(), 45);
    }

    #[test]
    fn serre_holds() {
        for t in ["D5", "D6", "D7", "E6", "E7", "E8"] {
            let r = alg(t).verify_serre();
            assert!(r.passed(), "{t}: {:?}", r.failures);
        }
    }

    #[test]
    fn jacobi_exhaustive_small() {
        let g = alg("D5");
        assert!(g.antisymmetry_failures().is_empty());
        let r = g.jacobi_exhaustive();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.triples_checked, 45 * 44 * 43 / 6);
    }

    #[test]
    fn bracket_basics() {
        let g = alg("E6");
        assert_eq!(g.br(&g.x(1), &g.y(1)), g.h(1));
        assert_eq!(g.br(&g.x(2), &g.y(3)), g.zero());
        let a = g.x(1).add(&g.y(4)).add(&g.h(2).scale(&rat(3, 2)));
        assert!(g.br(&a, &a).is_zero());
        assert!(g.bracket(&a, &AlgebraElement::zero(3)).is_err());
    }

    #[test]
    fn nested_commutators() {
        let g = alg("E8");
        let x45 = g.nested_commutator(GeneratorKind::X, &[4, 5]).unwrap();
        assert!(!x45.is_zero());
        let root = g.basis_root(g.as_basis_multiple(&x45).unwrap().0);
        assert_eq!(root, vec![0, 0, 0, 1, 1, 0, 0, 0]);
        assert!(g.nested_commutator(GeneratorKind::X, &[4, 6]).unwrap().is_zero());
        assert!(g.nested_commutator(GeneratorKind::X, &[9]).is_err());
        assert!(g.nested_commutator(GeneratorKind::Y, &[]).is_err());
    }

    #[test]
    fn special_cartan_eigenvalues_in_e8() {
        let g = alg("E8");
        let n = g.named_elements().unwrap();
        let xppp = n.xppp.as_ref().unwrap();
        let yp = n.yp.as_ref().unwrap();
        assert_eq!(g.br(&n.h, xppp), xppp.scale(&int(2)));
        assert_eq!(g.br(&n.h, &n.xpp), n.xpp.clone());
        assert_eq!(g.br(&n.h, yp), yp.scale(&int(-2)));
    }

    #[test]
    fn e7_named_elements_form_sl2_triples() {
        let g = alg("E7");
        let n = g.named_elements().unwrap();
        let (xpp, xppp) = (&n.xpp, n.xppp.as_ref().unwrap());
        let (yp, ypp) = (n.yp.as_ref().unwrap(), n.ypp.as_ref().unwrap());
        assert_eq!(g.br(&g.x(1), xpp), *xppp);
        assert_eq!(g.br(&g.y(1), ypp), *yp);
        assert_eq!(g.br(&g.y(1), xppp), *xpp);
        assert_eq!(g.br(xppp, yp), n.h);
        assert_eq!(g.br(xpp, ypp), g.h(1).sub(&n.h));
    }

    #[test]
    fn e6_cartan_element_centralizes_d5_nodes() {
        let g = alg("E6");
        let n = g.named_elements().unwrap();
        for i in 2..=6 {
            assert!(g.br(&n.h, &g.x(i)).is_zero());
            assert!(g.br(&n.h, &g.y(i)).is_zero());
        }
        assert!(g.br(&n.h, &n.xp).is_zero());
        assert!(!g.br(&n.h, &g.x(1)).is_zero());
    }

    #[test]
    fn named_elements_need_exceptional_type() {
        assert!(alg("D5").named_elements().is_err());
        let e7 = alg("E7").named_elements().unwrap();
        assert!(e7.ypp.is_some());
        assert!(alg("E6").named_elements().unwrap().xppp.is_none());
    }

    #[test]
    fn jacobi_e8_sampled_and_generator_triples() {
        let g = alg("E8");
        assert!(g.antisymmetry_failures().is_empty());
        let r = g.jacobi_sampled(100_000, 7);
        assert!(r.passed(), "{:?}", r.failures);
        let r = g.jacobi_with_generators();
        assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn table_round_trip_and_mutation_detected() {
        let g = alg("E6");
        let text = g.structure_table_text();
        let parsed = parse_structure_table(&text).unwrap();
        assert_eq!(parsed, g.structure_table());
        let h = LieAlgebra::from_table(&parsed).unwrap();
        assert!(h.verify_serre().passed());

        // Flip the sign of one constant between two non-simple root vectors.
        let mut bad = parsed.clone();
        let pos = bad
            .entries
            .iter()
            .position(|&(a, b, _, _)| a >= g.rank() && a < g.num_positive_roots() && b >= g.rank() && b < g.num_positive_roots())
            .unwrap();
        bad.entries[pos].3 *= -1;
        let m = LieAlgebra::from_table(&bad).unwrap();
        assert!(!m.jacobi_with_generators().passed() || !m.jacobi_exhaustive().passed());

        // A broken generator bracket is caught by the relation checker.
        let mut bad = parsed;
        let pos = bad.entries.iter().position(|&(a, b, _, _)| a == 0 && b == g.num_positive_roots()).unwrap();
        bad.entries[pos].3 = 2;
        assert!(!LieAlgebra::from_table(&bad).unwrap().verify_serre().passed());
    }

    #[test]
    fn table_parser_rejects_garbage() {
        assert!(parse_structure_table("").is_err());
        assert!(parse_structure_table("type E6\ndim 78\nX_100000 Y_100000 H_1\n").is_err());
        assert!(parse_structure_table("type E6\ndim 78\nX_9 Y_100000 H_1 1\n").is_err());
        assert!(parse_structure_table("type A3\ndim 15\n").is_err());
        assert!(parse_structure_table("type D7777775\ndim 45\n").is_err());
        let t = parse_structure_table("type E6\ndim 77\n").unwrap();
        assert!(LieAlgebra::from_table(&t).is_err());
    }

    #[test]
    fn labels_round_trip() {
        let g = alg("E7");
        for k in 0..g.dim() {
            assert_eq!(g.parse_basis_label(&g.basis_label(k)), Some(k));
        }
        assert_eq!(g.parse_basis_label("H_8"), None);
        assert_eq!(g.parse_basis_label("X_99"), None);
    }
}
