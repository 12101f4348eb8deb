//! Decomposition of a module restricted to an embedded `D_n`.
//!
//! Highest-weight vectors for the image are the joint kernel of the raising
//! images. Because the image Cartan elements act diagonally on a weight basis,
//! the kernel is computed one weight block at a time.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::embed::EmbeddingMap;
use crate::exactla::{nullspace, to_i64, zero_vec, Rational, RationalMatrix, SparseMatrix};
use crate::hwmod::{ModuleError, WeightModule};
use crate::rootsys::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error("embedding targets {target}, module is over {module}")]
    AlgebraMismatch { target: String, module: String },
    #[error("image Cartan element does not act diagonally on the module basis")]
    NotDiagonal,
    #[error("constituent dimensions add up to {found}, module has dimension {expected}")]
    DimensionSum { expected: usize, found: usize },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// One isotypic component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub weight: Weight,
    pub multiplicity: usize,
    /// Dimension of one copy.
    pub dim: usize,
    /// Basis of the highest-weight vectors of this weight, in module coordinates.
    pub hw_vectors: Vec<Vec<Rational>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicDecomposition {
    /// Sorted by descending weight coordinates, so `λ1` precedes `λ2` and `0` is last.
    pub constituents: Vec<Constituent>,
    pub total_dim: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ConstituentSummary {
    pub weight: Weight,
    pub label: String,
    pub multiplicity: usize,
    pub dim: usize,
}

impl IsotypicDecomposition {
    /// `(highest weight, multiplicity)` pairs in canonical order.
    pub fn multiset(&self) -> Vec<(Weight, usize)> {
        self.constituents
            .iter()
            .map(|c| (c.weight.clone(), c.multiplicity))
            .collect()
    }

    pub fn multiplicity(&self, w: &Weight) -> usize {
        self.constituents
            .iter()
            .find(|c| &c.weight == w)
            .map_or(0, |c| c.multiplicity)
    }

    pub fn summary(&self) -> Vec<ConstituentSummary> {
        self.constituents
            .iter()
            .map(|c| ConstituentSummary {
                weight: c.weight.clone(),
                label: c.weight.label(),
                multiplicity: c.multiplicity,
                dim: c.dim,
            })
            .collect()
    }

    /// `V(λ1) ⊕ 2V(λ5) ⊕ V(0)` style notation.
    pub fn notation(&self) -> String {
        self.constituents
            .iter()
            .map(|c| {
                let m = if c.multiplicity == 1 {
                    String::new()
                } else {
                    c.multiplicity.to_string()
                };
                format!("{m}V({})", c.weight.label())
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    }

    /// `dim1 + dim2 + ...` with multiplicities expanded.
    pub fn dimension_terms(&self) -> Vec<usize> {
        self.constituents
            .iter()
            .flat_map(|c| std::iter::repeat_n(c.dim, c.multiplicity))
            .collect()
    }
}

/// Restricts `m` to the image of `emb` and splits it into isotypic components.
pub fn decompose_under(m: &WeightModule, emb: &EmbeddingMap) -> Result<IsotypicDecomposition, DecompError> {
    let module_type = m.algebra().simple_type();
    let target_type = emb.target().simple_type();
    if module_type != target_type {
        return Err(DecompError::AlgebraMismatch {
            target: target_type.to_string(),
            module: module_type.to_string(),
        });
    }
    let dim = m.dim();
    let h_actions: Vec<SparseMatrix> = emb
        .h_images()
        .iter()
        .map(|h| m.action_of(h))
        .collect::<Result<_, _>>()?;
    let x_actions: Vec<SparseMatrix> = emb
        .x_images()
        .iter()
        .map(|x| m.action_of(x))
        .collect::<Result<_, _>>()?;
    if h_actions.iter().any(|h| !h.is_diagonal()) {
        return Err(DecompError::NotDiagonal);
    }
    // When every raising image is an ambient root vector, the kernel also
    // splits along ambient weights.
    let g = emb.target();
    let homogeneous = emb.x_images().iter().all(|x| g.weight_of(x).is_some());
    let mut blocks: BTreeMap<(Weight, Option<Weight>), Vec<usize>> = BTreeMap::new();
    for k in 0..dim {
        let coords: Option<Vec<i64>> = h_actions.iter().map(|h| to_i64(&h.get(k, k))).collect();
        let w = Weight(coords.ok_or(DecompError::NotDiagonal)?);
        let ambient = homogeneous.then(|| m.weights()[k].clone());
        blocks.entry((w, ambient)).or_default().push(k);
    }

    let rs = emb.source_root_system();
    let mut by_weight: BTreeMap<Weight, Vec<Vec<Rational>>> = BTreeMap::new();
    for ((w, _), cols) in &blocks {
        if !w.is_dominant() {
            continue;
        }
        let pieces: Vec<RationalMatrix> = x_actions.iter().map(|x| x.column_block(cols)).collect();
        let rows: Vec<Vec<Rational>> = pieces.iter().flat_map(|p| p.row_vecs()).collect();
        let stacked = RationalMatrix::from_rows(cols.len(), rows).expect("uniform width");
        for v in nullspace(&stacked) {
            let mut full = zero_vec(dim);
            for (c, &k) in v.into_iter().zip(cols) {
                full[k] = c;
            }
            by_weight.entry(w.clone()).or_default().push(full);
        }
    }

    let mut constituents = Vec::new();
    let mut found = 0usize;
    for (w, hw_vectors) in by_weight.into_iter().rev() {
        let d: BigInt = rs.weyl_dim(&w).expect("dominant weight of the source rank");
        let d = d.to_usize().expect("small dimension");
        found += d * hw_vectors.len();
        constituents.push(Constituent {
            weight: w,
            multiplicity: hw_vectors.len(),
            dim: d,
            hw_vectors,
        });
    }
    if found != dim {
        return Err(DecompError::DimensionSum {
            expected: dim,
            found,
        });
    }
    Ok(IsotypicDecomposition {
        constituents,
        total_dim: dim,
    })
}

/// Whether the two restrictions of `m` have the same constituent multiset.
pub fn linear_equivalence_witness(
    m: &WeightModule,
    a: &EmbeddingMap,
    b: &EmbeddingMap,
) -> Result<bool, DecompError> {
    Ok(decompose_under(m, a)?.multiset() == decompose_under(m, b)?.multiset())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::{natural_embedding, EmbeddingMap};
    use crate::hwmod::{adjoint_module, construct_irrep};

    fn w(rank: usize, pairs: &[(usize, usize)]) -> Vec<(Weight, usize)> {
        let mut v: Vec<(Weight, usize)> = pairs
            .iter()
            .map(|&(i, m)| {
                if i == 0 {
                    (Weight::zero(rank), m)
                } else {
                    (Weight::fundamental(rank, i), m)
                }
            })
            .collect();
        v.sort_by(|a, b| b.0.cmp(&a.0));
        v
    }

    #[test]
    fn adjoint_e6_under_natural_d5() {
        let phi = natural_embedding(5).unwrap();
        let m = adjoint_module(phi.target().clone());
        let d = decompose_under(&m, &phi).unwrap();
        assert_eq!(d.multiset(), w(5, &[(2, 1), (4, 1), (5, 1), (0, 1)]));
        let mut terms = d.dimension_terms();
        terms.sort();
        assert_eq!(terms, vec![1, 16, 16, 45]);
    }

    #[test]
    fn minuscule_e6_distinguishes_the_embeddings() {
        let phi = natural_embedding(5).unwrap();
        let rho = EmbeddingMap::twisted(phi.target().clone()).unwrap();
        let m = construct_irrep(phi.target().clone(), &Weight::fundamental(6, 6)).unwrap();
        assert_eq!(decompose_under(&m, &phi).unwrap().multiset(), w(5, &[(0, 1), (1, 1), (5, 1)]));
        assert_eq!(decompose_under(&m, &rho).unwrap().multiset(), w(5, &[(0, 1), (1, 1), (4, 1)]));
        assert!(!linear_equivalence_witness(&m, &phi, &rho).unwrap());
        assert!(linear_equivalence_witness(&m, &phi, &phi).unwrap());
    }

    #[test]
    fn rejects_foreign_module() {
        let phi = natural_embedding(5).unwrap();
        let other = natural_embedding(6).unwrap();
        let m = adjoint_module(other.target().clone());
        assert!(matches!(decompose_under(&m, &phi), Err(DecompError::AlgebraMismatch { .. })));
    }
}
