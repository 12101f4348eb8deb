//! Invariant abelian subspaces of `E_{n+1}` under an embedded `D_n`, and the
//! classification of the lifts they give.
//!
//! The scan walks the constituents of the adjoint restriction. A constituent
//! of multiplicity one is tested directly. A multiplicity-two constituent is
//! tested as a pencil `t0 v1 + t1 v2`, with the brackets expanded as
//! quadratic forms in `(t0, t1)`, so the abelian members are the common
//! projective zeros. Weight zero with higher multiplicity gives lines that are
//! trivially abelian; sums of them are ruled out by checking that the bracket
//! is injective on the exterior square.

mod automorphism;
mod classify;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::chevalley::{AlgebraElement, LieAlgebra, NamedElements};
use crate::decomp::{decompose_under, DecompError};
use crate::embed::{first_noncommuting_pair, generated_submodule, generated_submodule_traced, EmbeddingMap, Variant};
use crate::exactla::{fmt_rational, proportionality, EchelonBasis, Rational};
use crate::hwmod::adjoint_module;
use crate::poly::{Coefficient, Poly, UniPoly};
use crate::rootsys::{Family, SimpleType, Weight};

pub use automorphism::{
    e7_invariant, e7_substitution, sl2_automorphism_e7, torus_automorphism, torus_character, AlgebraMap,
};
pub use classify::{
    classification_text, classify_lifts, classify_lifts_in, eigenvalue_obstruction, scaling_obstruction, Classification, LiftClass,
    Representatives, ScalingCertificate,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelError {
    #[error("expected {expected} generator images, found {found}")]
    GeneratorCount { expected: usize, found: usize },
    #[error("element has {found} coefficients, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("torus scaling at node {0} is zero")]
    ZeroScaling(usize),
    #[error("ac - bd must equal 1, got {}", fmt_rational(.0))]
    Determinant(Rational),
    #[error("operation needs a different ambient algebra, got {0}")]
    WrongAmbient(String),
    #[error("named elements unavailable: {0}")]
    Named(String),
    #[error("generator images fail the defining relations: {0}")]
    NotAutomorphism(String),
    #[error("constituent {weight} has multiplicity {multiplicity}, which the scan does not handle")]
    Unsupported { weight: Weight, multiplicity: usize },
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error("{0}")]
    Embed(String),
}

/// Largest dimension of an abelian subalgebra of the exceptional algebras.
pub fn abelian_dimension_bound(t: SimpleType) -> Option<usize> {
    match (t.family(), t.rank()) {
        (Family::E, 6) => Some(16),
        (Family::E, 7) => Some(27),
        (Family::E, 8) => Some(36),
        _ => None,
    }
}

/// Result of a pairwise bracket test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianCheck {
    pub abelian: bool,
    /// Basis positions of a noncommuting pair and their bracket.
    pub witness: Option<(usize, usize, AlgebraElement)>,
}

/// Whether every pair of basis vectors commutes.
pub fn is_abelian_subspace(g: &LieAlgebra, basis: &[AlgebraElement]) -> AbelianCheck {
    match first_noncommuting_pair(g, basis) {
        None => AbelianCheck {
            abelian: true,
            witness: None,
        },
        Some((i, j)) => AbelianCheck {
            abelian: false,
            witness: Some((i, j, g.br(&basis[i], &basis[j]))),
        },
    }
}

/// Display order for named vectors and parameterized combinations.
const NAME_ORDER: [&str; 6] = ["Y'", "X'''", "H", "X''", "Y''", "X'"];
const PARAMS: [&str; 3] = ["α", "β", "γ"];

/// Named elements and simple generators that `e` is a nonzero multiple of:
/// returns `(name, s)` with `e = s * name`.
pub fn match_named(g: &LieAlgebra, named: Option<&NamedElements>, e: &AlgebraElement) -> Option<(String, Rational)> {
    if e.is_zero() {
        return None;
    }
    if let Some(n) = named {
        for (name, v) in n.entries() {
            if let Some(s) = proportionality(e.coeffs(), v.coeffs()) {
                return Some((name.to_string(), s));
            }
        }
    }
    for i in 1..=g.rank() {
        for (kind, v) in [("X", g.x(i)), ("Y", g.y(i)), ("H", g.h(i))] {
            if let Some(s) = proportionality(e.coeffs(), v.coeffs()) {
                return Some((format!("{kind}{i}"), s));
            }
        }
    }
    None
}

/// Short description of an element: a scaled name when possible.
pub fn describe(g: &LieAlgebra, named: Option<&NamedElements>, e: &AlgebraElement) -> String {
    match match_named(g, named, e) {
        Some((name, s)) if s.is_one() => name,
        Some((name, s)) if s == -Rational::one() => format!("-{name}"),
        Some((name, s)) => format!("{}*{name}", fmt_rational(&s)),
        None => g.format_element(e),
    }
}

/// A pair of vectors that do not commute.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Witness {
    pub left: String,
    pub right: String,
    pub bracket: String,
}

/// Why an entry has its verdict.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Every bracket of basis vectors vanishes.
    BracketsVanish { pairs: usize },
    Witness(Witness),
    /// Larger than any abelian subalgebra of the ambient algebra.
    DimensionBound {
        dim: usize,
        bound: usize,
        witness: Option<Witness>,
    },
    /// A polynomial identity in the pencil parameters; the bracket vanishes
    /// exactly on the listed lines.
    Identity {
        element: String,
        operator: String,
        coefficient: String,
        result: String,
        abelian_lines: Vec<String>,
    },
    /// The bracket is injective on the exterior square of the span, so no two
    /// independent members commute.
    WedgeInjective { lines: Vec<String>, brackets: Vec<String> },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CatalogEntry {
    /// `[X''']`, `[X'''] ⊕ [Y']`, `[αY' + βX''']`, ...
    pub subspace: String,
    pub weights: Vec<String>,
    pub dim: usize,
    pub abelian: bool,
    pub evidence: Evidence,
}

/// A candidate radical: a single constituent copy.
#[derive(Clone, Debug)]
pub struct Atom {
    pub weight: Weight,
    pub label: String,
    pub vector: AlgebraElement,
    pub basis: Vec<AlgebraElement>,
    pub abelian: bool,
    /// One line of a weight-zero family whose sums are handled collectively.
    pub in_family: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelianCatalog {
    pub ambient: SimpleType,
    pub variant: Variant,
    pub embedding: String,
    pub decomposition: String,
    pub bound: usize,
    /// Highest-weight vector of the constituent that is the image itself.
    pub image: String,
    pub entries: Vec<CatalogEntry>,
    #[serde(skip)]
    pub atoms: Vec<Atom>,
}

impl AbelianCatalog {
    pub fn entry(&self, subspace: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.subspace == subspace)
    }

    pub fn abelian_subspaces(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|e| e.abelian)
            .map(|e| e.subspace.as_str())
            .collect()
    }

    pub fn atom(&self, label: &str) -> Option<&Atom> {
        self.atoms.iter().find(|a| a.label == label)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} in {} ({})", self.embedding, self.ambient, self.variant);
        let _ = writeln!(out, "restriction: {}", self.decomposition);
        let _ = writeln!(out, "image: [{}]; abelian dimension bound {}", self.image, self.bound);
        for e in &self.entries {
            let verdict = if e.abelian { "abelian" } else { "not abelian" };
            let why = match &e.evidence {
                Evidence::BracketsVanish { pairs } => format!("{pairs} brackets vanish"),
                Evidence::Witness(w) => format!("[{}, {}] = {}", w.left, w.right, w.bracket),
                Evidence::DimensionBound { dim, bound, .. } => format!("dim {dim} > {bound}"),
                Evidence::Identity {
                    element,
                    operator,
                    coefficient,
                    result,
                    ..
                } => format!("p = {element}: [p, [{operator}, p]] = ({coefficient}) {result}"),
                Evidence::WedgeInjective { brackets, .. } => format!("brackets independent: {}", brackets.join(", ")),
            };
            let _ = writeln!(
                out,
                "  {:<28} {:<14} dim {:>3}  {:<12} {}",
                e.subspace,
                e.weights.join(","),
                e.dim,
                verdict,
                why
            );
        }
        out
    }
}

struct Scan<'a> {
    g: &'a LieAlgebra,
    named: Option<&'a NamedElements>,
    emb: &'a EmbeddingMap,
    bound: usize,
}

impl Scan<'_> {
    fn describe(&self, e: &AlgebraElement) -> String {
        describe(self.g, self.named, e)
    }

    fn witness(&self, basis: &[AlgebraElement]) -> Option<Witness> {
        is_abelian_subspace(self.g, basis).witness.map(|(i, j, b)| Witness {
            left: self.describe(&basis[i]),
            right: self.describe(&basis[j]),
            bracket: self.describe(&b),
        })
    }

    /// Verdict for a concrete subspace with the given basis.
    fn verdict(&self, basis: &[AlgebraElement]) -> (bool, Evidence) {
        let dim = basis.len();
        if dim > self.bound {
            let witness = self.witness(basis);
            return (
                false,
                Evidence::DimensionBound {
                    dim,
                    bound: self.bound,
                    witness,
                },
            );
        }
        match self.witness(basis) {
            None => (
                true,
                Evidence::BracketsVanish {
                    pairs: dim * dim.saturating_sub(1) / 2,
                },
            ),
            Some(w) => (false, Evidence::Witness(w)),
        }
    }

    /// Rescales a highest-weight vector to a named element when it is a
    /// multiple of one.
    fn normalize(&self, v: AlgebraElement) -> (String, AlgebraElement) {
        match match_named(self.g, self.named, &v) {
            Some((name, s)) => (name, v.scale(&(Rational::one() / s))),
            None => (self.g.format_element(&v), v),
        }
    }
}

fn rank_of(elements: &[AlgebraElement], dim: usize) -> usize {
    let mut span = EchelonBasis::new(dim);
    for e in elements {
        span.insert(e.coeffs());
    }
    span.len()
}

fn name_rank(label: &str) -> usize {
    NAME_ORDER.iter().position(|n| *n == label).unwrap_or(NAME_ORDER.len())
}

/// `αA + βB + ...` over the given labels.
fn combination_label(labels: &[String]) -> String {
    labels
        .iter()
        .zip(PARAMS)
        .map(|(l, p)| format!("{p}{l}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `t0 v1 + t1 v2` with `t0 = 1` replaced by the given line.
fn line_label(labels: &[String], t0: &Rational, t1: &Rational) -> String {
    let term = |c: &Rational, l: &str| -> Option<String> {
        if c.is_zero() {
            None
        } else if c.is_one() {
            Some(l.to_string())
        } else {
            Some(format!("{}*{l}", fmt_rational(c)))
        }
    };
    [term(t0, &labels[0]), term(t1, &labels[1])]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join(" + ")
}

/// If every nonzero entry is a rational multiple of one polynomial `q`,
/// returns `q` and the multipliers.
fn factor_common(v: &[Poly]) -> Option<(Poly, Vec<Rational>)> {
    let q = v.iter().find(|p| !p.is_zero())?.clone();
    let (lead, c0) = q.terms().next().map(|(e, c)| (e.clone(), c.clone()))?;
    let mut ratios = Vec::with_capacity(v.len());
    for p in v {
        if p.is_zero() {
            ratios.push(Rational::zero());
            continue;
        }
        let r = p.coefficient(&lead) / &c0;
        if *p != q.scale_rational(&r) {
            return None;
        }
        ratios.push(r);
    }
    Some((q, ratios))
}

/// Scans the adjoint restriction for invariant abelian subspaces.
pub fn scan_invariant_abelian(emb: &EmbeddingMap) -> Result<AbelianCatalog, AbelError> {
    let g: &Arc<LieAlgebra> = emb.target();
    let ambient = g.simple_type();
    let bound = abelian_dimension_bound(ambient).ok_or_else(|| AbelError::WrongAmbient(ambient.to_string()))?;
    let named = g.named_elements().ok();
    let scan = Scan {
        g,
        named: named.as_ref(),
        emb,
        bound,
    };
    let module = adjoint_module(g.clone());
    let decomposition = decompose_under(&module, emb)?;
    let image_rows: Vec<Vec<Rational>> = emb.image_basis().iter().map(|e| e.coeffs().to_vec()).collect();
    let mut image_span = EchelonBasis::new(g.dim());
    for r in &image_rows {
        image_span.insert(r);
    }

    let mut entries = Vec::new();
    let mut atoms: Vec<Atom> = Vec::new();
    let mut image = String::new();

    for c in &decomposition.constituents {
        let wlabel = c.weight.label();
        let mut vectors: Vec<(String, AlgebraElement)> = c
            .hw_vectors
            .iter()
            .map(|v| scan.normalize(AlgebraElement::from_coeffs(v.clone())))
            .collect();
        vectors.sort_by_key(|(l, _)| name_rank(l));

        if c.multiplicity == 1 && image_span.contains(vectors[0].1.coeffs()) {
            image = vectors[0].0.clone();
            continue;
        }
        if c.multiplicity == 1 {
            let (label, v) = vectors.pop().expect("one vector");
            let basis = generated_submodule(g, &v, emb);
            let (abelian, evidence) = scan.verdict(&basis);
            entries.push(CatalogEntry {
                subspace: format!("[{label}]"),
                weights: vec![wlabel.clone()],
                dim: basis.len(),
                abelian,
                evidence,
            });
            atoms.push(Atom {
                weight: c.weight.clone(),
                label,
                vector: v,
                basis,
                abelian,
                in_family: false,
            });
            continue;
        }

        let labels: Vec<String> = vectors.iter().map(|(l, _)| l.clone()).collect();
        if c.dim > bound {
            for (label, v) in &vectors {
                let basis = generated_submodule(g, v, emb);
                let (abelian, evidence) = scan.verdict(&basis);
                entries.push(CatalogEntry {
                    subspace: format!("[{label}]"),
                    weights: vec![wlabel.clone()],
                    dim: basis.len(),
                    abelian,
                    evidence,
                });
            }
            entries.push(CatalogEntry {
                subspace: format!("[{}]", combination_label(&labels)),
                weights: vec![wlabel.clone()],
                dim: c.dim,
                abelian: false,
                evidence: Evidence::DimensionBound {
                    dim: c.dim,
                    bound,
                    witness: None,
                },
            });
        } else if c.weight.is_zero() {
            scan_weight_zero(&scan, c.weight.clone(), &vectors, &mut entries, &mut atoms);
        } else if c.multiplicity == 2 {
            scan_pencil(&scan, c.weight.clone(), &vectors, &mut entries, &mut atoms)?;
        } else {
            return Err(AbelError::Unsupported {
                weight: c.weight.clone(),
                multiplicity: c.multiplicity,
            });
        }
    }

    // Direct sums of abelian constituent copies.
    let candidates: Vec<&Atom> = atoms.iter().filter(|a| a.abelian && !a.in_family).collect();
    let mut subsets: Vec<Vec<usize>> = (1u32..(1 << candidates.len()))
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (0..candidates.len()).filter(|k| m & (1 << k) != 0).collect())
        .collect();
    subsets.sort_by_key(|s| (s.len(), s.clone()));
    for subset in subsets {
        let parts: Vec<&Atom> = subset.iter().map(|&k| candidates[k]).collect();
        let basis: Vec<AlgebraElement> = parts.iter().flat_map(|a| a.basis.iter().cloned()).collect();
        let (abelian, evidence) = scan.verdict(&basis);
        entries.push(CatalogEntry {
            subspace: parts
                .iter()
                .map(|a| format!("[{}]", a.label))
                .collect::<Vec<_>>()
                .join(" ⊕ "),
            weights: parts.iter().map(|a| a.weight.label()).collect(),
            dim: basis.len(),
            abelian,
            evidence,
        });
    }

    Ok(AbelianCatalog {
        ambient,
        variant: emb.variant(),
        embedding: emb.descriptor(),
        decomposition: decomposition.notation(),
        bound,
        image,
        entries,
        atoms,
    })
}

/// Weight zero with multiplicity at least two: each line spans a trivial
/// one-dimensional module, and pairs are tested through their brackets.
fn scan_weight_zero(
    scan: &Scan<'_>,
    weight: Weight,
    vectors: &[(String, AlgebraElement)],
    entries: &mut Vec<CatalogEntry>,
    atoms: &mut Vec<Atom>,
) {
    let wlabel = weight.label();
    let labels: Vec<String> = vectors.iter().map(|(l, _)| l.clone()).collect();
    for (label, v) in vectors {
        atoms.push(Atom {
            weight: weight.clone(),
            label: label.clone(),
            vector: v.clone(),
            basis: vec![v.clone()],
            abelian: true,
            in_family: true,
        });
    }
    entries.push(CatalogEntry {
        subspace: format!("[{}]", combination_label(&labels)),
        weights: vec![wlabel.clone()],
        dim: 1,
        abelian: true,
        evidence: Evidence::BracketsVanish { pairs: 0 },
    });
    let mut brackets = Vec::new();
    let mut bracket_text = Vec::new();
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let b = scan.g.br(&vectors[i].1, &vectors[j].1);
            let w = Witness {
                left: vectors[i].0.clone(),
                right: vectors[j].0.clone(),
                bracket: scan.describe(&b),
            };
            bracket_text.push(format!("[{}, {}] = {}", w.left, w.right, w.bracket));
            entries.push(CatalogEntry {
                subspace: format!("[{}] ⊕ [{}]", w.left, w.right),
                weights: vec![wlabel.clone(), wlabel.clone()],
                dim: 2,
                abelian: b.is_zero(),
                evidence: if b.is_zero() {
                    Evidence::BracketsVanish { pairs: 1 }
                } else {
                    Evidence::Witness(w)
                },
            });
            brackets.push(b);
        }
    }
    let injective = rank_of(&brackets, scan.g.dim()) == brackets.len();
    entries.push(CatalogEntry {
        subspace: format!("any sum of lines in [{}]", combination_label(&labels)),
        weights: vec![wlabel],
        dim: 2,
        abelian: !injective,
        evidence: Evidence::WedgeInjective {
            lines: labels,
            brackets: bracket_text,
        },
    });
}

/// Multiplicity two at a nonzero weight: test the pencil `t0 v1 + t1 v2`.
fn scan_pencil(
    scan: &Scan<'_>,
    weight: Weight,
    vectors: &[(String, AlgebraElement)],
    entries: &mut Vec<CatalogEntry>,
    atoms: &mut Vec<Atom>,
) -> Result<(), AbelError> {
    let g = scan.g;
    let wlabel = weight.label();
    let labels: Vec<String> = vectors.iter().map(|(l, _)| l.clone()).collect();
    let (b1, trace) = generated_submodule_traced(g, &vectors[0].1, scan.emb);
    let gens = scan.emb.generator_images();
    // Replaying the same steps from the second vector gives the image of the
    // first basis under the module isomorphism v1 -> v2.
    let mut b2 = vec![vectors[1].1.clone()];
    for step in &trace {
        let v = g.br(gens[step.generator], &b2[step.parent]);
        b2.push(v);
    }
    if rank_of(&b2, g.dim()) != b1.len() {
        return Err(AbelError::Embed("pencil replay lost rank".into()));
    }

    // [t0 a + t1 b, t0 c + t1 d] = t0^2 A + t0 t1 B + t1^2 C, one quadratic per coordinate.
    let mut gcd = UniPoly::new(vec![]);
    let mut at_infinity = true;
    for i in 0..b1.len() {
        for j in i + 1..b1.len() {
            let a = g.br(&b1[i], &b1[j]);
            let b = g.br(&b1[i], &b2[j]).add(&g.br(&b2[i], &b1[j]));
            let c = g.br(&b2[i], &b2[j]);
            for k in 0..g.dim() {
                let q = UniPoly::new(vec![a.coeffs()[k].clone(), b.coeffs()[k].clone(), c.coeffs()[k].clone()]);
                if !c.coeffs()[k].is_zero() {
                    at_infinity = false;
                }
                if !q.is_zero() {
                    gcd = if gcd.is_zero() { q } else { gcd.gcd(&q) };
                }
            }
        }
    }
    let mut lines: Vec<(Rational, Rational)> = Vec::new();
    if gcd.is_zero() {
        return Err(AbelError::Embed("every member of the pencil is abelian".into()));
    }
    for s in gcd.rational_roots().unwrap_or_default() {
        lines.push((Rational::one(), s));
    }
    if at_infinity {
        lines.push((Rational::zero(), Rational::one()));
    }

    let mut abelian_lines = Vec::new();
    for (t0, t1) in &lines {
        let v = vectors[0].1.scale(t0).add(&vectors[1].1.scale(t1));
        let basis: Vec<AlgebraElement> = b1.iter().zip(&b2).map(|(x, y)| x.scale(t0).add(&y.scale(t1))).collect();
        let label = line_label(&labels, t0, t1);
        let (abelian, evidence) = scan.verdict(&basis);
        entries.push(CatalogEntry {
            subspace: format!("[{label}]"),
            weights: vec![wlabel.clone()],
            dim: basis.len(),
            abelian,
            evidence,
        });
        abelian_lines.push(label.clone());
        atoms.push(Atom {
            weight: weight.clone(),
            label,
            vector: v,
            basis,
            abelian,
            in_family: false,
        });
    }

    // A symbolic witness for the mixed members.
    let p: Vec<Poly> = vectors[0]
        .1
        .coeffs()
        .iter()
        .zip(vectors[1].1.coeffs())
        .map(|(x, y)| {
            let mut t = Poly::var(0).scale_rational(x);
            t.add_assign_ref(&Poly::var(1).scale_rational(y));
            t
        })
        .collect();
    let element = combination_label(&labels);
    let mut identity = None;
    for y in scan.emb.y_images() {
        let yp: Vec<Poly> = y.coeffs().iter().map(|c| Poly::constant(c.clone())).collect();
        let inner = g.bracket_coeffs(&yp, &p);
        let outer = g.bracket_coeffs(&p, &inner);
        if outer.iter().all(Poly::is_zero) {
            continue;
        }
        let (coefficient, result) = match factor_common(&outer) {
            Some((q, ratios)) => {
                let w = AlgebraElement::from_coeffs(ratios);
                match match_named(g, scan.named, &w) {
                    Some((name, s)) => (q.scale_rational(&s).display(&PARAMS), name),
                    None => (q.display(&PARAMS), g.format_element(&w)),
                }
            }
            None => ("nonconstant".to_string(), "mixed".to_string()),
        };
        identity = Some(Evidence::Identity {
            element: element.clone(),
            operator: scan.describe(y),
            coefficient,
            result,
            abelian_lines: abelian_lines.clone(),
        });
        break;
    }
    let evidence = identity.ok_or_else(|| AbelError::Embed("no lowering image separates the pencil".into()))?;
    entries.push(CatalogEntry {
        subspace: format!("[{element}], αβ ≠ 0"),
        weights: vec![wlabel],
        dim: b1.len(),
        abelian: false,
        evidence,
    });
    Ok(())
}

/// Highest weights of the abelian single-constituent entries, keyed by label.
pub fn abelian_atoms(catalog: &AbelianCatalog) -> BTreeMap<String, Weight> {
    catalog
        .atoms
        .iter()
        .filter(|a| a.abelian)
        .map(|a| (a.label.clone(), a.weight.clone()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::natural_embedding;

    #[test]
    fn single_vector_is_abelian() {
        let g = LieAlgebra::build_type(SimpleType::e(6).unwrap());
        let check = is_abelian_subspace(&g, &[g.x(3)]);
        assert!(check.abelian && check.witness.is_none());
        let check = is_abelian_subspace(&g, &[g.x(1), g.y(1)]);
        assert_eq!(check.witness, Some((0, 1, g.h(1))));
    }

    #[test]
    fn bounds_match_the_exceptional_types() {
        assert_eq!(abelian_dimension_bound(SimpleType::e(8).unwrap()), Some(36));
        assert_eq!(abelian_dimension_bound(SimpleType::d(5).unwrap()), None);
    }

    #[test]
    fn e6_catalog_has_three_abelian_constituents_and_no_sums() {
        let phi = natural_embedding(5).unwrap();
        let cat = scan_invariant_abelian(&phi).unwrap();
        assert_eq!(cat.image, "X'");
        let mut found = cat.abelian_subspaces();
        found.sort();
        assert_eq!(found, vec!["[H]", "[X'']", "[Y1]"]);
        assert!(cat.entries.iter().all(|e| !e.abelian || e.dim <= 16));
        assert_eq!(cat.entry("[Y1] ⊕ [X'']").map(|e| e.dim), Some(32));
    }
}
