//! Automorphisms given on Chevalley generators, and the parameter
//! substitution they induce on the weight-zero lifts into `E_7`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::chevalley::{check_chevalley_serre, AlgebraElement, BasisElement, LieAlgebra, SerreReport};
use crate::exactla::{int, EchelonBasis, Rational};
use crate::poly::Coefficient;
use crate::rootsys::Family;

use super::AbelError;

/// Linear map of an algebra determined by images of the Chevalley generators,
/// extended to every root vector through the bracket.
#[derive(Clone, Debug)]
pub struct AlgebraMap {
    g: Arc<LieAlgebra>,
    x: Vec<AlgebraElement>,
    y: Vec<AlgebraElement>,
    h: Vec<AlgebraElement>,
    images: Vec<AlgebraElement>,
}

impl AlgebraMap {
    /// Generator slices are indexed by 0-based node. The extension only makes
    /// sense when the images satisfy the defining relations; call
    /// [`AlgebraMap::verify`] to confirm that.
    pub fn from_generators(
        g: Arc<LieAlgebra>,
        x: Vec<AlgebraElement>,
        y: Vec<AlgebraElement>,
        h: Vec<AlgebraElement>,
    ) -> Result<Self, AbelError> {
        let r = g.rank();
        if x.len() != r || y.len() != r || h.len() != r {
            return Err(AbelError::GeneratorCount {
                expected: r,
                found: x.len().min(y.len()).min(h.len()),
            });
        }
        if let Some(bad) = x.iter().chain(&y).chain(&h).find(|e| e.dim() != g.dim()) {
            return Err(AbelError::DimensionMismatch {
                expected: g.dim(),
                found: bad.dim(),
            });
        }
        let n_pos = g.num_positive_roots();
        let roots = g.root_system().positive_roots().to_vec();
        let mut images = vec![g.zero(); g.dim()];
        for i in 0..r {
            images[g.index_of(BasisElement::H(i + 1))] = h[i].clone();
        }
        for (k, root) in roots.iter().enumerate() {
            if root.iter().sum::<i64>() == 1 {
                let i = root.iter().position(|&c| c == 1).expect("simple root");
                images[k] = x[i].clone();
                images[n_pos + k] = y[i].clone();
                continue;
            }
            // Roots come in height order, so both factors already have images.
            let (i, j) = (0..r)
                .find_map(|i| {
                    let mut rest = root.clone();
                    rest[i] -= 1;
                    g.root_system().root_index(&rest).map(|j| (i, j))
                })
                .expect("every non-simple positive root has a simple predecessor");
            let si = g.index_of(BasisElement::X(roots.iter().position(|c| is_simple(c, i)).expect("simple")));
            let constant = |a: usize, b: usize, c: usize| -> Rational {
                let n = g
                    .bracket_basis(a, b)
                    .iter()
                    .find(|(t, _)| *t as usize == c)
                    .map(|&(_, n)| n)
                    .expect("root string step is nonzero");
                int(n)
            };
            let nx = constant(si, j, k);
            images[k] = g.br(&images[si], &images[j]).scale(&(Rational::one() / nx));
            let (ysi, yj) = (n_pos + si, n_pos + j);
            let ny = constant(ysi, yj, n_pos + k);
            images[n_pos + k] = g.br(&images[ysi], &images[yj]).scale(&(Rational::one() / ny));
        }
        Ok(Self { g, x, y, h, images })
    }

    pub fn identity(g: Arc<LieAlgebra>) -> Self {
        let (h, x, y) = g.generators();
        Self::from_generators(g, x, y, h).expect("generator count matches")
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.g
    }

    /// Defining relations on the generator images, plus invertibility.
    pub fn verify(&self) -> SerreReport {
        let mut report = check_chevalley_serre(self.g.as_ref(), self.g.root_system().cartan(), &self.h, &self.x, &self.y);
        let mut span = EchelonBasis::new(self.g.dim());
        for e in &self.images {
            span.insert(e.coeffs());
        }
        report.relations_checked += 1;
        if span.len() != self.g.dim() {
            report.failures.push(format!("image has rank {} < {}", span.len(), self.g.dim()));
        }
        report
    }

    pub fn image_of_basis(&self, k: usize) -> &AlgebraElement {
        &self.images[k]
    }

    pub fn apply(&self, e: &AlgebraElement) -> AlgebraElement {
        let mut out = self.g.zero();
        for (k, c) in e.support() {
            out = out.add(&self.images[k].scale(c));
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AlgebraMap) -> AlgebraMap {
        let map = |v: &[AlgebraElement]| v.iter().map(|e| self.apply(e)).collect::<Vec<_>>();
        Self {
            g: self.g.clone(),
            x: map(&other.x),
            y: map(&other.y),
            h: map(&other.h),
            images: map(&other.images),
        }
    }

    /// Whether `self` fixes each of the given elements.
    pub fn fixes(&self, elements: &[&AlgebraElement]) -> bool {
        elements.iter().all(|e| self.apply(e) == **e)
    }
}

fn is_simple(root: &[i64], i: usize) -> bool {
    root.iter().enumerate().all(|(j, &c)| c == i64::from(j == i))
}

/// Diagonal automorphism scaling `X_i` by `s[i]` and `Y_i` by its inverse.
/// A root vector for `Σ c_i α_i` is scaled by `Π s_i^{c_i}`.
pub fn torus_automorphism(g: Arc<LieAlgebra>, scalings: &[Rational]) -> Result<AlgebraMap, AbelError> {
    if scalings.len() != g.rank() {
        return Err(AbelError::GeneratorCount {
            expected: g.rank(),
            found: scalings.len(),
        });
    }
    if let Some(i) = scalings.iter().position(Zero::is_zero) {
        return Err(AbelError::ZeroScaling(i + 1));
    }
    let (h, x, y) = g.generators();
    let x = x.iter().zip(scalings).map(|(e, s)| e.scale(s)).collect();
    let y = y.iter().zip(scalings).map(|(e, s)| e.scale(&(Rational::one() / s))).collect();
    AlgebraMap::from_generators(g, x, y, h)
}

/// Scalar by which the torus automorphism multiplies a root vector of the given
/// signed root.
pub fn torus_character(scalings: &[Rational], root: &[i64]) -> Rational {
    let mut out = Rational::one();
    for (s, &c) in scalings.iter().zip(root) {
        let p = if c >= 0 {
            num_traits::pow(s.clone(), c as usize)
        } else {
            num_traits::pow(Rational::one() / s, (-c) as usize)
        };
        out *= p;
    }
    out
}

/// The `E_7` automorphism fixing nodes 2..7 and acting on node 1 by
/// `X_1 ↦ aX_1 + bY''`, `Y_1 ↦ cY_1 + dX''`,
/// `H_1 ↦ H_1 + bdH + adX''' - bcY'`, which requires `ac - bd = 1`.
pub fn sl2_automorphism_e7(
    g: Arc<LieAlgebra>,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
) -> Result<AlgebraMap, AbelError> {
    let t = g.simple_type();
    if t.family() != Family::E || t.rank() != 7 {
        return Err(AbelError::WrongAmbient(t.to_string()));
    }
    let det = a * c - b * d;
    if !det.is_one() {
        return Err(AbelError::Determinant(det));
    }
    let named = g.named_elements().map_err(|e| AbelError::Named(e.to_string()))?;
    let (ypp, xpp) = (named.ypp.clone().expect("E7 has Y''"), named.xpp.clone());
    let (xppp, yp) = (named.xppp.clone().expect("E7 has X'''"), named.yp.clone().expect("E7 has Y'"));
    let (mut h, mut x, mut y) = g.generators();
    x[0] = x[0].scale(a).add(&ypp.scale(b));
    y[0] = y[0].scale(c).add(&xpp.scale(d));
    h[0] = h[0]
        .add(&named.h.scale(&(b * d)))
        .add(&xppp.scale(&(a * d)))
        .sub(&yp.scale(&(b * c)));
    let map = AlgebraMap::from_generators(g, x, y, h)?;
    let report = map.verify();
    if !report.passed() {
        return Err(AbelError::NotAutomorphism(report.failures.join("; ")));
    }
    Ok(map)
}

/// Image of the weight-zero lift parameters `(α, β, γ)` of `αY' + βX''' + γH`
/// under the automorphism with matrix entries `(a, b, c, d)`.
pub fn e7_substitution<C: Coefficient>(p: &[C; 3], m: &[C; 4]) -> [C; 3] {
    let [alpha, beta, gamma] = p;
    let [a, b, c, d] = m;
    let sum = |terms: &[C]| -> C {
        let mut acc = C::zero_coeff();
        for t in terms {
            acc.add_assign_ref(t);
        }
        acc
    };
    let prod = |xs: &[&C]| -> C {
        let mut acc = xs[0].clone();
        for x in &xs[1..] {
            acc = acc.mul_ref(x);
        }
        acc
    };
    let alpha2 = sum(&[
        prod(&[alpha, c, c]),
        prod(&[beta, b, b]).scale_int(-1),
        prod(&[gamma, b, c]).scale_int(-2),
    ]);
    let beta2 = sum(&[
        prod(&[alpha, d, d]).scale_int(-1),
        prod(&[beta, a, a]),
        prod(&[gamma, a, d]).scale_int(2),
    ]);
    let gamma2 = sum(&[
        prod(&[alpha, c, d]).scale_int(-1),
        prod(&[beta, a, b]),
        prod(&[gamma, a, c]),
        prod(&[gamma, b, d]),
    ]);
    [alpha2, beta2, gamma2]
}

/// `γ² + αβ`, constant along orbits of [`e7_substitution`].
pub fn e7_invariant<C: Coefficient>(p: &[C; 3]) -> C {
    let mut out = p[2].mul_ref(&p[2]);
    out.add_assign_ref(&p[0].mul_ref(&p[1]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;
    use crate::poly::Poly;
    use crate::rootsys::SimpleType;

    fn e7() -> Arc<LieAlgebra> {
        Arc::new(LieAlgebra::build_type(SimpleType::e(7).unwrap()))
    }

    #[test]
    fn identity_map_fixes_every_basis_element() {
        let g = Arc::new(LieAlgebra::build_type(SimpleType::d(5).unwrap()));
        let id = AlgebraMap::identity(g.clone());
        assert!(id.verify().passed());
        for k in 0..g.dim() {
            assert_eq!(id.image_of_basis(k), &g.basis(k));
        }
    }

    #[test]
    fn torus_scales_root_vectors_by_character() {
        let g = Arc::new(LieAlgebra::build_type(SimpleType::e(6).unwrap()));
        let s: Vec<Rational> = (1..=6).map(|i| rat(i + 1, 2)).collect();
        let t = torus_automorphism(g.clone(), &s).unwrap();
        assert!(t.verify().passed());
        for k in 0..g.dim() {
            let expect = g.basis(k).scale(&torus_character(&s, &g.basis_root(k)));
            assert_eq!(t.image_of_basis(k), &expect);
        }
        let mut zero = s.clone();
        zero[2] = Rational::zero();
        assert!(matches!(torus_automorphism(g, &zero), Err(AbelError::ZeroScaling(3))));
    }

    #[test]
    fn sl2_map_rejects_bad_determinant_and_wrong_ambient() {
        let g = e7();
        let err = sl2_automorphism_e7(g, &int(1), &int(1), &int(1), &int(1)).unwrap_err();
        assert!(matches!(err, AbelError::Determinant(_)));
        let e6 = Arc::new(LieAlgebra::build_type(SimpleType::e(6).unwrap()));
        assert!(matches!(
            sl2_automorphism_e7(e6, &int(1), &int(0), &int(1), &int(0)),
            Err(AbelError::WrongAmbient(_))
        ));
    }

    #[test]
    fn sl2_map_induces_the_substitution() {
        let g = e7();
        let n = g.named_elements().unwrap();
        let (yp, xppp) = (n.yp.clone().unwrap(), n.xppp.clone().unwrap());
        let (a, b, c, d) = (int(2), int(1), int(1), int(1));
        let rho = sl2_automorphism_e7(g.clone(), &a, &b, &c, &d).unwrap();
        let expect_yp = yp
            .scale(&(&c * &c))
            .sub(&n.h.scale(&(&c * &d)))
            .sub(&xppp.scale(&(&d * &d)));
        assert_eq!(rho.apply(&yp), expect_yp);
        let m = [a, b, c, d];
        let p = [int(3), int(-1), rat(1, 2)];
        let q = e7_substitution(&p, &m);
        let v = yp.scale(&p[0]).add(&xppp.scale(&p[1])).add(&n.h.scale(&p[2]));
        let w = yp.scale(&q[0]).add(&xppp.scale(&q[1])).add(&n.h.scale(&q[2]));
        assert_eq!(rho.apply(&v), w);
    }

    #[test]
    fn invariant_is_preserved_symbolically() {
        let p = [Poly::var(0), Poly::var(1), Poly::var(2)];
        let m = [Poly::var(3), Poly::var(4), Poly::var(5), Poly::var(6)];
        let q = e7_substitution(&p, &m);
        let det = Poly::var(3).mul_ref(&Poly::var(5)).sub(&Poly::var(4).mul_ref(&Poly::var(6)));
        let rhs = det.mul_ref(&det).mul_ref(&e7_invariant(&p));
        assert_eq!(e7_invariant(&q), rhs);
    }
}
