//! Embeddings of `D_n` into `E_{n+1}` and their lifts to `D_n ⋉ V`.
//!
//! The natural embedding sends `D_n` node `j` to `E_{n+1}` node `n + 2 - j`,
//! so the `D_n` diagram lands on nodes `2..=n+1` with the fork at node 4. The
//! twisted embedding first applies the diagram automorphism swapping `D_n`
//! nodes `n - 1` and `n`.

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chevalley::{check_chevalley_serre, AlgebraElement, LieAlgebra, SerreReport};
use crate::exactla::{intersect_spans, EchelonBasis, Insertion, Rational};
use crate::rootsys::{Family, RootSystem, SimpleType, Weight};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("no D_n embedding is defined into {0}; the target must be E6, E7 or E8")]
    UnsupportedTarget(SimpleType),
    #[error("embedding images fail the defining relations: {0}")]
    NotHomomorphism(String),
    #[error("radical vector is not a highest-weight vector of weight {0} for the image")]
    NotHighestWeight(Weight),
    #[error("radical weight {weight} has rank {found}, source has rank {expected}")]
    WrongRank {
        weight: Weight,
        expected: usize,
        found: usize,
    },
    #[error("generated submodule is not abelian: basis vectors {0} and {1} do not commute")]
    NotAbelian(usize, usize),
    #[error("generated submodule meets the image subalgebra")]
    MeetsImage,
    #[error("element has {found} coefficients, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Natural,
    Twisted,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Natural => "natural",
            Variant::Twisted => "twisted",
        })
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "natural" => Ok(Variant::Natural),
            "twisted" => Ok(Variant::Twisted),
            _ => Err(format!("unknown variant {s:?}, expected natural or twisted")),
        }
    }
}

/// Image of the abelian ideal of a lift.
#[derive(Clone, Debug)]
pub struct Radical {
    /// Highest weight of the ideal as a `D_n`-module.
    pub weight: Weight,
    /// Image of the ideal's highest-weight vector.
    pub vector: AlgebraElement,
    /// Basis of the submodule generated by `vector`.
    pub basis: Vec<AlgebraElement>,
    /// Human-readable description of `vector`, such as `X'''`.
    pub description: String,
}

/// Homomorphism `D_n -> E_{n+1}` given on Chevalley generators, possibly
/// extended to `D_n ⋉ V`.
#[derive(Clone, Debug)]
pub struct EmbeddingMap {
    source: SimpleType,
    source_rs: Arc<RootSystem>,
    target: Arc<LieAlgebra>,
    variant: Variant,
    h: Vec<AlgebraElement>,
    x: Vec<AlgebraElement>,
    y: Vec<AlgebraElement>,
    radical: Option<Radical>,
    image: OnceLock<Vec<AlgebraElement>>,
}

/// Target node of `D_n` node `j` under the natural embedding.
pub fn natural_node(n: usize, j: usize) -> usize {
    n + 2 - j
}

impl EmbeddingMap {
    /// The natural embedding of `D_{r-1}` into the rank `r` exceptional algebra.
    pub fn natural(target: Arc<LieAlgebra>) -> Result<Self, EmbedError> {
        Self::with_variant(target, Variant::Natural)
    }

    pub fn twisted(target: Arc<LieAlgebra>) -> Result<Self, EmbedError> {
        Self::with_variant(target, Variant::Twisted)
    }

    pub fn with_variant(target: Arc<LieAlgebra>, variant: Variant) -> Result<Self, EmbedError> {
        let t = target.simple_type();
        if t.family() != Family::E {
            return Err(EmbedError::UnsupportedTarget(t));
        }
        let n = t.rank() - 1;
        let source = SimpleType::d(n).expect("n is 5, 6 or 7");
        let node = |j: usize| -> usize {
            let j = match (variant, j) {
                (Variant::Twisted, j) if j == n - 1 => n,
                (Variant::Twisted, j) if j == n => n - 1,
                (_, j) => j,
            };
            natural_node(n, j)
        };
        let map = Self {
            source,
            source_rs: Arc::new(RootSystem::build(source)),
            h: (1..=n).map(|j| target.h(node(j))).collect(),
            x: (1..=n).map(|j| target.x(node(j))).collect(),
            y: (1..=n).map(|j| target.y(node(j))).collect(),
            target,
            variant,
            radical: None,
            image: OnceLock::new(),
        };
        let report = map.verify_homomorphism();
        if !report.passed() {
            return Err(EmbedError::NotHomomorphism(report.failures.join("; ")));
        }
        Ok(map)
    }

    pub fn source(&self) -> SimpleType {
        self.source
    }

    pub fn source_root_system(&self) -> &RootSystem {
        &self.source_rs
    }

    pub fn target(&self) -> &Arc<LieAlgebra> {
        &self.target
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn radical(&self) -> Option<&Radical> {
        self.radical.as_ref()
    }

    /// Image of source `H_i` (1-based).
    pub fn h(&self, i: usize) -> &AlgebraElement {
        &self.h[i - 1]
    }

    pub fn x(&self, i: usize) -> &AlgebraElement {
        &self.x[i - 1]
    }

    pub fn y(&self, i: usize) -> &AlgebraElement {
        &self.y[i - 1]
    }

    pub fn x_images(&self) -> &[AlgebraElement] {
        &self.x
    }

    pub fn y_images(&self) -> &[AlgebraElement] {
        &self.y
    }

    pub fn h_images(&self) -> &[AlgebraElement] {
        &self.h
    }

    /// Raising and lowering images together.
    pub fn generator_images(&self) -> Vec<&AlgebraElement> {
        self.x.iter().chain(&self.y).collect()
    }

    /// `φ_n`, `ϱ_n`, or a lift such as `φ̃_7 (u ↦ X''')`.
    pub fn descriptor(&self) -> String {
        let n = self.source.rank();
        let base = match self.variant {
            Variant::Natural => "φ",
            Variant::Twisted => "ϱ",
        };
        match &self.radical {
            None => format!("{base}_{n}"),
            Some(r) => format!("{base}̃{n}^{{{}}} (u ↦ {})", r.weight.label(), r.description),
        }
    }

    /// Relations of the source checked on the generator images, plus the
    /// ideal conditions when a radical is present.
    pub fn verify_homomorphism(&self) -> SerreReport {
        let mut report = check_chevalley_serre(
            self.target.as_ref(),
            self.source_rs.cartan(),
            &self.h,
            &self.x,
            &self.y,
        );
        if let Some(rad) = &self.radical {
            for (i, a) in rad.basis.iter().enumerate() {
                for (j, b) in rad.basis.iter().enumerate().skip(i + 1) {
                    report.relations_checked += 1;
                    if !self.target.br(a, b).is_zero() {
                        report.failures.push(format!("[v{i}, v{j}] != 0"));
                    }
                }
            }
            let mut span = EchelonBasis::new(self.target.dim());
            for v in &rad.basis {
                span.insert(v.coeffs());
            }
            for g in self.generator_images() {
                for (i, v) in rad.basis.iter().enumerate() {
                    report.relations_checked += 1;
                    if !span.contains(self.target.br(g, v).coeffs()) {
                        report.failures.push(format!("radical not invariant at v{i}"));
                    }
                }
            }
            report.relations_checked += 1;
            if self.source_weight_of(&rad.vector).as_ref() != Some(&rad.weight) {
                report.failures.push("radical vector has the wrong weight".into());
            }
        }
        report
    }

    /// Weight of `e` for the image Cartan subalgebra, if `e` is a weight vector
    /// with integral eigenvalues.
    pub fn source_weight_of(&self, e: &AlgebraElement) -> Option<Weight> {
        if e.is_zero() {
            return None;
        }
        let (k, c) = e.support().next()?;
        let (k, c) = (k, c.clone());
        let mut coords = Vec::with_capacity(self.h.len());
        for h in &self.h {
            let he = self.target.br(h, e);
            let lambda = &he.coeffs()[k] / &c;
            if he != e.scale(&lambda) || !lambda.is_integer() {
                return None;
            }
            coords.push(lambda.to_integer().try_into().ok()?);
        }
        Some(Weight(coords))
    }

    /// Weight of `e` if it is killed by every raising image.
    pub fn highest_weight_of(&self, e: &AlgebraElement) -> Option<Weight> {
        if self.x.iter().any(|x| !self.target.br(x, e).is_zero()) {
            return None;
        }
        self.source_weight_of(e)
    }

    /// Basis of the image subalgebra.
    pub fn image_basis(&self) -> &[AlgebraElement] {
        self.image.get_or_init(|| {
            let seeds: Vec<AlgebraElement> = self.x.iter().chain(&self.y).cloned().collect();
            generated_subalgebra(&self.target, &seeds)
        })
    }

    /// Extends the embedding to `D_n ⋉ V(weight)` by sending the highest-weight
    /// vector of `V` to `vector`.
    pub fn lift(
        &self,
        weight: &Weight,
        vector: AlgebraElement,
        description: impl Into<String>,
    ) -> Result<EmbeddingMap, EmbedError> {
        if vector.dim() != self.target.dim() {
            return Err(EmbedError::DimensionMismatch {
                expected: self.target.dim(),
                found: vector.dim(),
            });
        }
        if weight.rank() != self.source.rank() {
            return Err(EmbedError::WrongRank {
                weight: weight.clone(),
                expected: self.source.rank(),
                found: weight.rank(),
            });
        }
        if self.highest_weight_of(&vector).as_ref() != Some(weight) {
            return Err(EmbedError::NotHighestWeight(weight.clone()));
        }
        let basis = generated_submodule(&self.target, &vector, self);
        if let Some((i, j)) = first_noncommuting_pair(&self.target, &basis) {
            return Err(EmbedError::NotAbelian(i, j));
        }
        let rows = |v: &[AlgebraElement]| -> Vec<Vec<Rational>> { v.iter().map(|e| e.coeffs().to_vec()).collect() };
        let meet = intersect_spans(&rows(&basis), &rows(self.image_basis())).expect("same ambient dimension");
        if !meet.is_empty() {
            return Err(EmbedError::MeetsImage);
        }
        let mut lifted = self.clone();
        lifted.radical = Some(Radical {
            weight: weight.clone(),
            vector,
            basis,
            description: description.into(),
        });
        let report = lifted.verify_homomorphism();
        if !report.passed() {
            return Err(EmbedError::NotHomomorphism(report.failures.join("; ")));
        }
        Ok(lifted)
    }
}

/// Builds `E_{n+1}` and its natural `D_n` embedding for `n` in 5..=7.
pub fn natural_embedding(n: usize) -> Result<EmbeddingMap, EmbedError> {
    let t = SimpleType::e(n + 1).map_err(|_| EmbedError::UnsupportedTarget(SimpleType::d(n.max(4)).expect("rank at least 4")))?;
    EmbeddingMap::natural(Arc::new(LieAlgebra::build_type(t)))
}

pub fn twisted_embedding(n: usize) -> Result<EmbeddingMap, EmbedError> {
    EmbeddingMap::with_variant(natural_embedding(n)?.target().clone(), Variant::Twisted)
}

/// First pair `(i, j)` of basis vectors with nonzero bracket, if any.
pub fn first_noncommuting_pair(g: &LieAlgebra, basis: &[AlgebraElement]) -> Option<(usize, usize)> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !g.br(&basis[i], &basis[j]).is_zero() {
                return Some((i, j));
            }
        }
    }
    None
}

/// Smallest subspace containing `seed` and stable under `ad` of every
/// generator image. The basis is in discovery order.
pub fn generated_submodule(g: &LieAlgebra, seed: &AlgebraElement, emb: &EmbeddingMap) -> Vec<AlgebraElement> {
    generated_submodule_traced(g, seed, emb).0
}

/// One closure step: basis vector `k` equals `ad(generator_images()[generator])`
/// applied to basis vector `parent`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    pub generator: usize,
    pub parent: usize,
}

/// Like [`generated_submodule`], also returning how each basis vector after
/// the seed was produced. Replaying the steps from another highest-weight
/// vector of the same weight yields the matching basis of its submodule.
pub fn generated_submodule_traced(
    g: &LieAlgebra,
    seed: &AlgebraElement,
    emb: &EmbeddingMap,
) -> (Vec<AlgebraElement>, Vec<TraceStep>) {
    let gens = emb.generator_images();
    let mut span = EchelonBasis::new(g.dim());
    let mut basis: Vec<AlgebraElement> = Vec::new();
    let mut trace = Vec::new();
    if seed.is_zero() {
        return (basis, trace);
    }
    span.insert(seed.coeffs());
    basis.push(seed.clone());
    let mut next = 0;
    while next < basis.len() {
        for (gi, a) in gens.iter().enumerate() {
            let v = g.br(a, &basis[next]);
            if v.is_zero() {
                continue;
            }
            if let Insertion::New(_) = span.insert(v.coeffs()) {
                basis.push(v);
                trace.push(TraceStep {
                    generator: gi,
                    parent: next,
                });
            }
        }
        next += 1;
    }
    (basis, trace)
}

/// Smallest bracket-closed subspace containing the seeds.
pub fn generated_subalgebra(g: &LieAlgebra, seeds: &[AlgebraElement]) -> Vec<AlgebraElement> {
    let mut span = EchelonBasis::new(g.dim());
    let mut basis: Vec<AlgebraElement> = Vec::new();
    let push = |v: AlgebraElement, span: &mut EchelonBasis, basis: &mut Vec<AlgebraElement>| {
        if v.coeffs().iter().all(Zero::is_zero) {
            return;
        }
        if let Insertion::New(_) = span.insert(v.coeffs()) {
            basis.push(v);
        }
    };
    for s in seeds {
        push(s.clone(), &mut span, &mut basis);
    }
    let mut next = 0;
    while next < basis.len() {
        for k in 0..=next {
            let v = g.br(&basis[k], &basis[next]);
            push(v, &mut span, &mut basis);
        }
        next += 1;
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::GeneratorKind;
    use crate::exactla::int;

    #[test]
    fn generator_images_follow_node_map() {
        let phi = natural_embedding(5).unwrap();
        let g = phi.target().clone();
        assert_eq!(*phi.h(5), g.h(2));
        assert_eq!(*phi.h(1), g.h(6));
        let phi7 = natural_embedding(7).unwrap();
        assert_eq!(*phi7.x(1), phi7.target().x(8));
        let rho = EmbeddingMap::twisted(g.clone()).unwrap();
        assert_eq!(rho.x(4), phi.x(5));
        assert_eq!(rho.x(5), phi.x(4));
        for j in 1..=3 {
            assert_eq!(rho.x(j), phi.x(j));
        }
    }

    #[test]
    fn homomorphism_checks_pass() {
        for n in 5..=7 {
            assert!(natural_embedding(n).unwrap().verify_homomorphism().passed());
            assert!(twisted_embedding(n).unwrap().verify_homomorphism().passed());
        }
        assert!(natural_embedding(4).is_err());
        assert!(natural_embedding(8).is_err());
    }

    #[test]
    fn generated_spaces_in_e8() {
        let phi = natural_embedding(7).unwrap();
        let g = phi.target().clone();
        let n = g.named_elements().unwrap();
        let xppp = n.xppp.clone().unwrap();
        assert_eq!(generated_submodule(&g, &xppp, &phi).len(), 14);
        assert_eq!(generated_submodule(&g, &g.y(1), &phi).len(), 64);
        assert_eq!(generated_submodule(&g, phi.x(3), &phi).len(), 91);
        assert_eq!(phi.image_basis().len(), 91);
        assert_eq!(generated_subalgebra(&g, std::slice::from_ref(&xppp)).len(), 1);
        assert_eq!(generated_subalgebra(&g, &[g.x(1), g.y(1), g.h(1)]).len(), 3);
        // The image is the submodule generated by X'.
        let image: Vec<Vec<Rational>> = phi.image_basis().iter().map(|e| e.coeffs().to_vec()).collect();
        let xp: Vec<Vec<Rational>> = generated_submodule(&g, &n.xp, &phi).iter().map(|e| e.coeffs().to_vec()).collect();
        assert_eq!(intersect_spans(&image, &xp).unwrap().len(), 91);
    }

    #[test]
    fn lifts_in_e8() {
        let phi = natural_embedding(7).unwrap();
        let g = phi.target().clone();
        let n = g.named_elements().unwrap();
        let l1 = Weight::fundamental(7, 1);
        let lift = phi.lift(&l1, n.xppp.clone().unwrap(), "X'''").unwrap();
        assert!(lift.verify_homomorphism().passed());
        assert_eq!(lift.radical().unwrap().basis.len(), 14);
        let zero = Weight::zero(7);
        assert!(phi.lift(&zero, n.h.scale(&int(3)), "3H").is_ok());
        let y1_weight = phi.highest_weight_of(&g.y(1)).unwrap();
        assert_eq!(y1_weight, Weight::fundamental(7, 6));
        assert!(matches!(phi.lift(&y1_weight, g.y(1), "Y1"), Err(EmbedError::NotAbelian(..))));
        assert!(matches!(
            phi.lift(&l1, g.nested_commutator(GeneratorKind::X, &[2, 4]).unwrap(), "bad"),
            Err(EmbedError::NotHighestWeight(_))
        ));
    }
}
