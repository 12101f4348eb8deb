//! Restriction of an ambient module to a lift `D_n ⋉ V`, and the blocks the
//! radical `V` glues together.
//!
//! The `D_n` part splits the module into copies of irreducibles, one per
//! highest-weight vector found by [`decompose_under`]. In the basis made of
//! those copies, a radical element links copy `i` to copy `j` when its action
//! has a nonzero block from `i` into `j`. Connected components of the linkage
//! graph are the blocks.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::chevalley::AlgebraElement;
use crate::decomp::{decompose_under, ConstituentSummary, DecompError};
use crate::embed::EmbeddingMap;
use crate::exactla::{EchelonBasis, Insertion, LinAlgError, Rational, RationalMatrix, SparseMatrix};
use crate::hwmod::{adjoint_module, ModuleError, WeightModule};
use crate::rootsys::Weight;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BranchError {
    #[error("embedding has no radical; lift it first")]
    NoRadical,
    #[error("copies of the constituents do not span the module")]
    CopiesDependent,
    #[error(transparent)]
    Decomp(#[from] DecompError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CopySummary {
    pub index: usize,
    pub weight: Weight,
    pub label: String,
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchingReport {
    pub module: String,
    pub lift: String,
    pub decomposition: String,
    pub constituents: Vec<ConstituentSummary>,
    pub copies: Vec<CopySummary>,
    /// Undirected, `i < j`, copy indices.
    pub linkage_edges: Vec<(usize, usize)>,
    pub blocks: Vec<Vec<usize>>,
    /// `(V(λ2) + 2V(λ1) + V(0)) ⊕ (V(λ6) + V(λ7))` style.
    pub block_notation: String,
    pub radical_actions_commute: bool,
    /// Every edge joins copies whose `D_n`-weights differ by a radical weight.
    pub linkage_weight_compatible: bool,
    pub all_positive_roots_contained: bool,
    pub all_negative_roots_contained: bool,
    /// The lift is one member of a linear family whose actions on a repeated
    /// constituent are not all proportional, so the splitting of that
    /// isotypic component depends on the parameters.
    pub parameter_dependent: bool,
}

impl BranchingReport {
    /// Weight multiset of each block, in copy order.
    pub fn block_weights(&self) -> Vec<Vec<Weight>> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&i| self.copies[i].weight.clone()).collect())
            .collect()
    }
}

fn span_basis(g_dim: usize, elements: &[AlgebraElement]) -> EchelonBasis {
    let mut span = EchelonBasis::new(g_dim);
    for e in elements {
        span.insert(e.coeffs());
    }
    span
}

/// Whether the image of the lift contains every positive root vector, and
/// every negative one.
pub fn root_vector_containment(lift: &EmbeddingMap) -> (bool, bool) {
    let g = lift.target();
    let mut elements: Vec<AlgebraElement> = lift.image_basis().to_vec();
    if let Some(r) = lift.radical() {
        elements.extend(r.basis.iter().cloned());
    }
    let span = span_basis(g.dim(), &elements);
    let p = g.num_positive_roots();
    let positive = (0..p).all(|k| span.contains(g.basis(k).coeffs()));
    let negative = (p..2 * p).all(|k| span.contains(g.basis(k).coeffs()));
    (positive, negative)
}

/// Sufficient condition for every irreducible ambient module to stay
/// indecomposable: the image contains all positive or all negative root
/// vectors.
pub fn indecomposability_criterion(lift: &EmbeddingMap) -> bool {
    let (p, n) = root_vector_containment(lift);
    p || n
}

/// Submodule of `m` generated from a highest-weight vector by the lowering images.
fn module_copy(seed: &[Rational], lowering: &[SparseMatrix]) -> Vec<Vec<Rational>> {
    let mut span = EchelonBasis::new(seed.len());
    let mut basis = vec![seed.to_vec()];
    span.insert(seed);
    let mut next = 0;
    while next < basis.len() {
        for y in lowering {
            let v = y.mul_vec(&basis[next]).expect("square action");
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            if let Insertion::New(_) = span.insert(&v) {
                basis.push(v);
            }
        }
        next += 1;
    }
    basis
}

/// `D_n`-weight of a weight vector of `m`, read off the image Cartan actions.
fn module_weight(v: &[Rational], h_actions: &[SparseMatrix]) -> Option<Weight> {
    let k = v.iter().position(|x| !x.is_zero())?;
    let coords = h_actions
        .iter()
        .map(|h| {
            let hv = h.mul_vec(v).ok()?;
            crate::exactla::to_i64(&(&hv[k] / &v[k]))
        })
        .collect::<Option<Vec<i64>>>()?;
    Some(Weight(coords))
}

/// `Binv * A * B` restricted to the block from copy `from` into copy `to`,
/// flattened.
fn block_entries(
    image: &[Vec<Rational>],
    ranges: &[(usize, usize)],
    from: usize,
    to: usize,
) -> Vec<Rational> {
    let (fs, fe) = ranges[from];
    let (ts, te) = ranges[to];
    let mut out = Vec::with_capacity((fe - fs) * (te - ts));
    for col in &image[fs..fe] {
        out.extend(col[ts..te].iter().cloned());
    }
    out
}

fn components(n: usize, edges: &BTreeSet<(usize, usize)>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for &(a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_of_block: Vec<usize> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match root_of_block.iter().position(|&x| x == r) {
            Some(k) => blocks[k].push(i),
            None => {
                root_of_block.push(r);
                blocks.push(vec![i]);
            }
        }
    }
    blocks
}

fn block_label(weights: &[Weight]) -> String {
    let mut groups: Vec<(Weight, usize)> = Vec::new();
    for w in weights {
        match groups.iter_mut().find(|(x, _)| x == w) {
            Some((_, k)) => *k += 1,
            None => groups.push((w.clone(), 1)),
        }
    }
    let body = groups
        .iter()
        .map(|(w, k)| {
            if *k == 1 {
                format!("V({})", w.label())
            } else {
                format!("{k}V({})", w.label())
            }
        })
        .collect::<Vec<_>>()
        .join(" + ");
    if weights.len() > 1 {
        format!("({body})")
    } else {
        body
    }
}

/// Restricts `m` to the lift and computes linkage between constituent copies.
pub fn branch_with_linkage(m: &WeightModule, lift: &EmbeddingMap) -> Result<BranchingReport, BranchError> {
    let radical = lift.radical().ok_or(BranchError::NoRadical)?;
    let decomposition = decompose_under(m, lift)?;
    let dim = m.dim();
    let lowering: Vec<SparseMatrix> = lift
        .y_images()
        .iter()
        .map(|y| m.action_of(y))
        .collect::<Result<_, _>>()?;

    let mut copies = Vec::new();
    let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(dim);
    let mut ranges = Vec::new();
    for c in &decomposition.constituents {
        for hw in &c.hw_vectors {
            let basis = module_copy(hw, &lowering);
            let start = columns.len();
            columns.extend(basis);
            ranges.push((start, columns.len()));
            copies.push(CopySummary {
                index: copies.len(),
                weight: c.weight.clone(),
                label: format!("V({})", c.weight.label()),
                dim: columns.len() - start,
            });
        }
    }
    if columns.len() != dim {
        return Err(BranchError::CopiesDependent);
    }
    // B has the copy bases as columns.
    let b = RationalMatrix::from_rows(dim, columns.clone())?.transpose();
    let b_inv = SparseMatrix::from_dense(&b.inverse().map_err(|_| BranchError::CopiesDependent)?);
    let in_copy_coords = |a: &SparseMatrix| -> Vec<Vec<Rational>> {
        columns
            .iter()
            .map(|col| {
                let v = a.mul_vec(col).expect("square action");
                b_inv.mul_vec(&v).expect("square inverse")
            })
            .collect()
    };

    let radical_actions: Vec<SparseMatrix> = radical
        .basis
        .iter()
        .map(|r| m.action_of(r))
        .collect::<Result<_, _>>()?;
    let mut edges = BTreeSet::new();
    for a in &radical_actions {
        let image = in_copy_coords(a);
        for (i, &(s, e)) in ranges.iter().enumerate() {
            for col in &image[s..e] {
                for (j, &(ts, te)) in ranges.iter().enumerate() {
                    if i != j && col[ts..te].iter().any(|x| !x.is_zero()) {
                        edges.insert((i.min(j), i.max(j)));
                    }
                }
            }
        }
    }
    let mut commute = true;
    for i in 0..radical_actions.len() {
        for j in i + 1..radical_actions.len() {
            commute &= radical_actions[i].commutator(&radical_actions[j])?.is_zero();
        }
    }

    let h_actions: Vec<SparseMatrix> = lift
        .h_images()
        .iter()
        .map(|h| m.action_of(h))
        .collect::<Result<_, _>>()?;
    let copy_weights: Vec<BTreeSet<Weight>> = ranges
        .iter()
        .map(|&(s, e)| columns[s..e].iter().filter_map(|v| module_weight(v, &h_actions)).collect())
        .collect();
    let radical_weights: BTreeSet<Weight> = radical.basis.iter().filter_map(|r| lift.source_weight_of(r)).collect();
    let shifts_into = |from: usize, to: usize| {
        copy_weights[from]
            .iter()
            .any(|mu| radical_weights.iter().any(|nu| copy_weights[to].contains(&mu.add(nu))))
    };
    let weight_compatible = edges.iter().all(|&(i, j)| shifts_into(i, j) || shifts_into(j, i));

    let parameter_dependent = parameter_dependence(m, lift, &radical.weight, &copies, &ranges, &in_copy_coords)?;
    let blocks = components(copies.len(), &edges);
    let block_notation = blocks
        .iter()
        .map(|blk| block_label(&blk.iter().map(|&i| copies[i].weight.clone()).collect::<Vec<_>>()))
        .collect::<Vec<_>>()
        .join(" ⊕ ");
    let (positive, negative) = root_vector_containment(lift);
    Ok(BranchingReport {
        module: m.descriptor(),
        lift: lift.descriptor(),
        decomposition: decomposition.notation(),
        constituents: decomposition.summary(),
        copies,
        linkage_edges: edges.into_iter().collect(),
        blocks,
        block_notation,
        radical_actions_commute: commute,
        linkage_weight_compatible: weight_compatible,
        all_positive_roots_contained: positive,
        all_negative_roots_contained: negative,
        parameter_dependent,
    })
}

/// A weight-zero radical vector spans a trivial ideal whatever its direction
/// in the weight-zero highest-weight space, so every such direction is a lift.
/// The splitting depends on the parameters when those directions act on some
/// repeated constituent by linearly independent blocks.
fn parameter_dependence(
    m: &WeightModule,
    lift: &EmbeddingMap,
    radical_weight: &Weight,
    copies: &[CopySummary],
    ranges: &[(usize, usize)],
    in_copy_coords: &dyn Fn(&SparseMatrix) -> Vec<Vec<Rational>>,
) -> Result<bool, BranchError> {
    if !radical_weight.is_zero() {
        return Ok(false);
    }
    let adjoint = adjoint_module(lift.target().clone());
    let family: Vec<AlgebraElement> = decompose_under(&adjoint, lift)?
        .constituents
        .into_iter()
        .find(|c| c.weight.is_zero())
        .map(|c| c.hw_vectors.into_iter().map(AlgebraElement::from_coeffs).collect())
        .unwrap_or_default();
    if family.len() < 2 {
        return Ok(false);
    }
    let images: Vec<Vec<Vec<Rational>>> = family
        .iter()
        .map(|f| m.action_of(f).map(|a| in_copy_coords(&a)))
        .collect::<Result<_, _>>()?;
    let mut weights: Vec<&Weight> = copies.iter().map(|c| &c.weight).collect();
    weights.sort();
    weights.dedup();
    for w in weights {
        let idx: Vec<usize> = copies.iter().filter(|c| &c.weight == w).map(|c| c.index).collect();
        if idx.len() < 2 {
            continue;
        }
        let rows: Vec<Vec<Rational>> = images
            .iter()
            .map(|img| {
                let mut row = Vec::new();
                for &i in &idx {
                    for &j in &idx {
                        row.extend(block_entries(img, ranges, i, j));
                    }
                }
                row
            })
            .collect();
        let width = rows[0].len();
        if RationalMatrix::from_rows(width, rows)?.rank() >= 2 {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::natural_embedding;

    #[test]
    fn components_follow_edges() {
        let edges: BTreeSet<(usize, usize)> = [(0, 2), (3, 4)].into_iter().collect();
        assert_eq!(components(5, &edges), vec![vec![0, 2], vec![1], vec![3, 4]]);
    }

    #[test]
    fn block_label_groups_repeated_weights() {
        let w = |i: usize| Weight::fundamental(3, i);
        assert_eq!(block_label(&[w(2), w(1), w(1)]), "(V(λ2) + 2V(λ1))");
        assert_eq!(block_label(&[Weight::zero(3)]), "V(0)");
    }

    #[test]
    fn cartan_radical_splits_the_e6_adjoint() {
        let phi = natural_embedding(5).unwrap();
        let g = phi.target().clone();
        let h = g.named_elements().unwrap().h;
        let lift = phi.lift(&Weight::zero(5), h, "H").unwrap();
        assert!(!indecomposability_criterion(&lift));
        let report = branch_with_linkage(&adjoint_module(g), &lift).unwrap();
        assert!(report.linkage_edges.is_empty());
        assert_eq!(report.blocks.len(), 4);
        assert!(report.radical_actions_commute);
        assert!(!report.parameter_dependent);
    }

    #[test]
    fn requires_a_radical() {
        let phi = natural_embedding(5).unwrap();
        let m = adjoint_module(phi.target().clone());
        assert!(matches!(branch_with_linkage(&m, &phi), Err(BranchError::NoRadical)));
    }
}
