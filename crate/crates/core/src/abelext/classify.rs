//! Lifts of the `D_n` embeddings to abelian extensions, up to automorphisms
//! of the ambient algebra, with a computational certificate for every
//! equivalence and inequivalence claim.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::chevalley::{AlgebraElement, LieAlgebra, NamedElements};
use crate::checks::Check;
use crate::decomp::{decompose_under, linear_equivalence_witness};
use crate::embed::{EmbeddingMap, Variant};
use crate::exactla::{fmt_rational, int, proportionality, rat, Rational};
use crate::hwmod::{adjoint_module, construct_irrep};
use crate::poly::{Coefficient, Poly, UniPoly};
use crate::rootsys::{Family, SimpleType, Weight};

use super::automorphism::{e7_invariant, e7_substitution, sl2_automorphism_e7, torus_automorphism, torus_character};
use super::{scan_invariant_abelian, AbelError, AbelianCatalog};

/// Equivalence classes of lifts for one abelian extension.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Representatives {
    /// Pairwise inequivalent representatives.
    Finite { lifts: Vec<String> },
    /// One inequivalent lift per nonzero scalar, for each listed family.
    Continuum { families: Vec<String>, parameter: String },
    /// Parameter triples identified by a group action.
    Orbits {
        families: Vec<String>,
        rule: String,
        invariant: String,
    },
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LiftClass {
    /// `D7 ⋉ V(λ1)`.
    pub extension: String,
    pub radical_weight: Weight,
    pub radical_dim: usize,
    pub representatives: Representatives,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub ambient: SimpleType,
    pub classes: Vec<LiftClass>,
    pub checks: Vec<Check>,
}

impl Classification {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Certificate that a lift `u ↦ aH` is equivalent to `u ↦ bH` only when
/// `b/a = 1`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ScalingCertificate {
    /// Coefficient of `Y1` in `[ρ(H1), Y1]` as a polynomial in `r = b/a`.
    pub coefficient: String,
    /// Solutions of `coefficient = -2`.
    pub solutions: Vec<String>,
    /// `Y1` is a highest-weight vector whose weight occurs once.
    pub premise: bool,
}

impl ScalingCertificate {
    pub fn forces_one(&self) -> bool {
        self.premise && self.solutions == ["1"]
    }
}

fn eigenvalue(g: &LieAlgebra, h: &AlgebraElement, e: &AlgebraElement) -> Option<Rational> {
    let he = g.br(h, e);
    if he.is_zero() {
        return Some(Rational::zero());
    }
    proportionality(he.coeffs(), e.coeffs())
}

fn named_of(g: &LieAlgebra) -> Result<NamedElements, AbelError> {
    g.named_elements().map_err(|e| AbelError::Named(e.to_string()))
}

/// An automorphism fixing the image and sending `aH` to `bH` must send
/// `H1` to `(rH - Σ_{i≥2} h_i H_i) / h_1` with `r = b/a`; compatibility with
/// `[H1, Y1] = -2 Y1` pins down `r`.
pub fn scaling_obstruction(emb: &EmbeddingMap) -> Result<ScalingCertificate, AbelError> {
    let g = emb.target();
    let named = named_of(g)?;
    let h_coeffs: Vec<Rational> = (1..=g.rank())
        .map(|i| named.h.coeffs()[g.index_of(crate::chevalley::BasisElement::H(i))].clone())
        .collect();
    if h_coeffs[0].is_zero() {
        return Err(AbelError::Embed("distinguished Cartan element has no H1 component".into()));
    }
    let r = Poly::var(0);
    let mut rho_h1 = vec![Poly::zero_coeff(); g.dim()];
    for (i, hi) in h_coeffs.iter().enumerate() {
        let k = g.index_of(crate::chevalley::BasisElement::H(i + 1));
        let mut term = r.scale_rational(&(hi / &h_coeffs[0]));
        if i > 0 {
            term.add_assign_ref(&Poly::constant(-(hi / &h_coeffs[0])));
        }
        rho_h1[k] = term;
    }
    let y1: Vec<Poly> = g.y(1).coeffs().iter().map(|c| Poly::constant(c.clone())).collect();
    let bracket = g.bracket_coeffs(&rho_h1, &y1);
    let k = g.index_of(crate::chevalley::BasisElement::Y(0));
    let coefficient = bracket[k].clone();
    let uni = UniPoly::new(vec![coefficient.coefficient(&[]) + int(2), coefficient.coefficient(&[1])]);
    let solutions = uni
        .rational_roots()
        .unwrap_or_default()
        .iter()
        .map(fmt_rational)
        .collect();

    let module = adjoint_module(g.clone());
    let decomposition = decompose_under(&module, emb)?;
    let premise = match emb.highest_weight_of(&g.y(1)) {
        Some(w) => decomposition.multiplicity(&w) == 1,
        None => false,
    };
    Ok(ScalingCertificate {
        coefficient: coefficient.display(&["r"]),
        solutions,
        premise,
    })
}

/// Inequivalence of `u ↦ from` and `u ↦ to`: the automorphism would fix the
/// image, hence rescale `H` (weight zero occurs once) and `anchor` (its weight
/// occurs once); a nonzero `H`-eigenvalue on `anchor` forces `ρ(H) = H`, which
/// is incompatible with different `H`-eigenvalues on `from` and `to`.
pub fn eigenvalue_obstruction(emb: &EmbeddingMap, from: &str, to: &str, anchor: &str) -> Result<Check, AbelError> {
    let g = emb.target();
    let named = named_of(g)?;
    let get = |n: &str| named.get(n).cloned().ok_or_else(|| AbelError::Named(format!("{n} is not defined in {}", g.simple_type())));
    let (f, t, a) = (get(from)?, get(to)?, get(anchor)?);
    let module = adjoint_module(g.clone());
    let decomposition = decompose_under(&module, emb)?;
    let zero = Weight::zero(emb.source().rank());
    let anchor_weight = emb.highest_weight_of(&a);
    let premises = decomposition.multiplicity(&zero) == 1
        && anchor_weight.as_ref().is_some_and(|w| decomposition.multiplicity(w) == 1);
    let ev = |e: &AlgebraElement| eigenvalue(g, &named.h, e);
    let (ea, ef, et) = (ev(&a), ev(&f), ev(&t));
    let forced = ea.as_ref().is_some_and(|x| !x.is_zero());
    let differ = matches!((&ef, &et), (Some(x), Some(y)) if x != y);
    let show = |x: &Option<Rational>| x.as_ref().map_or("none".to_string(), fmt_rational);
    Ok(Check::new(
        format!("classify.{}.eigenvalue.{from}.{to}", g.simple_type().to_string().to_lowercase()),
        format!("u ↦ {from} and u ↦ {to} are inequivalent"),
        premises && forced && differ,
        format!(
            "weight 0 and {} occur once; [H,{anchor}] = {} {anchor}; [H,{from}] = {} {from}; [H,{to}] = {} {to}",
            anchor_weight.map_or("?".into(), |w| w.label()),
            show(&ea),
            show(&ef),
            show(&et)
        ),
    ))
}

fn lift_name(variant: Variant, n: usize, weight: &str, param: &str) -> String {
    let base = match variant {
        Variant::Natural => "φ",
        Variant::Twisted => "ϱ",
    };
    format!("{base}̃{n}^{{{weight},{param}}}")
}

fn lift(emb: &EmbeddingMap, w: &Weight, v: &AlgebraElement, label: &str) -> Result<EmbeddingMap, AbelError> {
    emb.lift(w, v.clone(), label).map_err(|e| AbelError::Embed(e.to_string()))
}

fn ambient_id(t: SimpleType) -> String {
    t.to_string().to_lowercase()
}

/// Torus automorphism scaling node 1 realizes `u ↦ v` ~ `u ↦ s^c v`, where
/// `c` is the node-1 coefficient of the root of `v`.
fn torus_checks(
    emb: &EmbeddingMap,
    label: &str,
    weight_label: &str,
    v: &AlgebraElement,
    checks: &mut Vec<Check>,
) -> Result<(), AbelError> {
    let g = emb.target().clone();
    let (k, _) = g
        .as_basis_multiple(v)
        .ok_or_else(|| AbelError::Embed(format!("{label} is not a root vector")))?;
    let root = g.basis_root(k);
    let c = root[0];
    let mut ok = c != 0;
    let mut seen = Vec::new();
    for s in [int(2), int(-3), rat(1, 2)] {
        let mut scalings = vec![Rational::one(); g.rank()];
        scalings[0] = s.clone();
        let rho = torus_automorphism(g.clone(), &scalings)?;
        let images: Vec<&AlgebraElement> = emb.generator_images();
        let factor = torus_character(&scalings, &root);
        ok &= rho.verify().passed() && rho.fixes(&images) && rho.apply(v) == v.scale(&factor);
        seen.push(format!("s={} gives {}", fmt_rational(&s), fmt_rational(&factor)));
    }
    let name = |p: &str| lift_name(emb.variant(), emb.source().rank(), weight_label, p);
    checks.push(Check::new(
        format!(
            "classify.{}.{}.torus.{label}",
            ambient_id(g.simple_type()),
            emb.variant()
        ),
        format!("{} ~ {} with α = s^{c}, via a torus automorphism fixing the image", name("1"), name("α")),
        ok,
        format!("node-1 exponent {c}; {}", seen.join("; ")),
    ));
    Ok(())
}

fn scaling_check(emb: &EmbeddingMap, checks: &mut Vec<Check>) -> Result<(), AbelError> {
    let cert = scaling_obstruction(emb)?;
    let n = emb.source().rank();
    checks.push(Check::new(
        format!("classify.{}.{}.scaling", ambient_id(emb.target().simple_type()), emb.variant()),
        format!("{} ~ {} only for α = β", lift_name(emb.variant(), n, "0", "α"), lift_name(emb.variant(), n, "0", "β")),
        cert.forces_one(),
        format!(
            "Y1 coefficient of [ρ(H1), Y1] is {}; equal to -2 only at r = {}; premise {}",
            cert.coefficient,
            cert.solutions.join(", "),
            cert.premise
        ),
    ));
    Ok(())
}

/// Restrictions of a module that tell the natural and twisted embeddings apart,
/// or show they agree.
fn restriction_check(
    phi: &EmbeddingMap,
    rho: &EmbeddingMap,
    module_weight: usize,
    expect_equal: bool,
    checks: &mut Vec<Check>,
) -> Result<(), AbelError> {
    let g = phi.target().clone();
    let r = g.rank();
    let m = construct_irrep(g.clone(), &Weight::fundamental(r, module_weight))
        .map_err(|e| AbelError::Embed(e.to_string()))?;
    let same = linear_equivalence_witness(&m, phi, rho)?;
    let claim = if expect_equal {
        "natural and twisted embeddings restrict the module identically"
    } else {
        "natural and twisted lifts are inequivalent because their restrictions differ"
    };
    checks.push(Check::new(
        format!("classify.{}.restriction.λ{module_weight}", ambient_id(g.simple_type())),
        claim,
        same == expect_equal,
        format!(
            "{}: {} vs {}",
            m.descriptor(),
            decompose_under(&m, phi)?.notation(),
            decompose_under(&m, rho)?.notation()
        ),
    ));
    Ok(())
}

/// Abelian single-constituent atoms grouped by nonzero weight, in a stable order.
fn finite_atoms(cat: &AbelianCatalog) -> BTreeMap<Weight, Vec<(String, AlgebraElement, usize)>> {
    let mut out: BTreeMap<Weight, Vec<(String, AlgebraElement, usize)>> = BTreeMap::new();
    for a in cat.atoms.iter().filter(|a| a.abelian && !a.in_family && !a.weight.is_zero()) {
        out.entry(a.weight.clone())
            .or_default()
            .push((a.label.clone(), a.vector.clone(), a.basis.len()));
    }
    for v in out.values_mut() {
        v.sort_by(|x, y| x.0.cmp(&y.0));
    }
    out
}

/// Rational quadruples with `ac - bd = 1`, deterministic.
pub fn sl2_samples(count: usize) -> Vec<[Rational; 4]> {
    let vals = [int(1), int(-1), int(2), rat(1, 2), int(-3), rat(2, 3), int(0)];
    let mut out = Vec::new();
    for a in &vals {
        for b in &vals {
            for d in &vals {
                if out.len() >= count {
                    return out;
                }
                if a.is_zero() {
                    continue;
                }
                let c = (Rational::one() + b * d) / a;
                out.push([a.clone(), b.clone(), c, d.clone()]);
            }
        }
    }
    out
}

fn e7_checks(phi: &EmbeddingMap, checks: &mut Vec<Check>) -> Result<(), AbelError> {
    let g = phi.target().clone();
    let named = named_of(&g)?;
    let yp = named.yp.clone().expect("E7 has Y'");
    let xppp = named.xppp.clone().expect("E7 has X'''");
    let h = named.h.clone();
    let combo = |p: &[Rational; 3]| yp.scale(&p[0]).add(&xppp.scale(&p[1])).add(&h.scale(&p[2]));

    let samples = sl2_samples(24);
    let triples = [
        [int(1), int(0), int(0)],
        [int(2), int(-1), rat(1, 3)],
        [int(0), int(0), int(1)],
        [rat(-1, 2), int(3), int(2)],
    ];
    let mut formula_ok = true;
    let mut substitution_ok = true;
    let mut invariant_ok = true;
    let mut hom_ok = true;
    let mut fixes_ok = true;
    for (k, m) in samples.iter().enumerate() {
        let [a, b, c, d] = m;
        let rho = sl2_automorphism_e7(g.clone(), a, b, c, d)?;
        hom_ok &= rho.verify().passed();
        fixes_ok &= rho.fixes(&phi.generator_images());
        let expect_yp = yp.scale(&(c * c)).sub(&h.scale(&(c * d))).sub(&xppp.scale(&(d * d)));
        let expect_xppp = xppp.scale(&(a * a)).add(&h.scale(&(a * b))).sub(&yp.scale(&(b * b)));
        let expect_h = h
            .scale(&(a * c + b * d))
            .add(&xppp.scale(&(int(2) * a * d)))
            .sub(&yp.scale(&(int(2) * b * c)));
        formula_ok &= rho.apply(&yp) == expect_yp && rho.apply(&xppp) == expect_xppp && rho.apply(&h) == expect_h;
        let p = &triples[k % triples.len()];
        let q = e7_substitution(p, m);
        substitution_ok &= rho.apply(&combo(p)) == combo(&q);
        invariant_ok &= e7_invariant(p) == e7_invariant(&q);
    }
    let n = samples.len();
    checks.push(Check::new(
        "classify.e7.sl2.homomorphism",
        "X1 ↦ aX1 + bY'', Y1 ↦ cY1 + dX'', H1 ↦ H1 + bdH + adX''' - bcY' defines an automorphism fixing the D6 image",
        hom_ok && fixes_ok,
        format!("{n} rational quadruples with ac - bd = 1"),
    ));
    checks.push(Check::new(
        "classify.e7.sl2.images",
        "ρ(Y') = c²Y' - cdH - d²X''', ρ(X''') = a²X''' + abH - b²Y', ρ(H) = (ac+bd)H + 2adX''' - 2bcY'",
        formula_ok,
        format!("{n} rational quadruples"),
    ));
    checks.push(Check::new(
        "classify.e7.sl2.substitution",
        "ρ(αY' + βX''' + γH) = α'Y' + β'X''' + γ'H with (α', β', γ') given by the substitution rule",
        substitution_ok,
        format!("{n} rational quadruples"),
    ));
    checks.push(Check::new(
        "classify.e7.sl2.invariant",
        "γ² + αβ is preserved by every substitution",
        invariant_ok,
        format!("{n} rational quadruples"),
    ));

    // Symbolic identity γ'^2 + α'β' = (ac - bd)^2 (γ^2 + αβ).
    let p = [Poly::var(0), Poly::var(1), Poly::var(2)];
    let m = [Poly::var(3), Poly::var(4), Poly::var(5), Poly::var(6)];
    let q = e7_substitution(&p, &m);
    let det = Poly::var(3).mul_ref(&Poly::var(5)).sub(&Poly::var(4).mul_ref(&Poly::var(6)));
    let symbolic = e7_invariant(&q) == det.mul_ref(&det).mul_ref(&e7_invariant(&p));
    checks.push(Check::new(
        "classify.e7.sl2.invariant_symbolic",
        "γ'² + α'β' = (ac - bd)²(γ² + αβ) as polynomials",
        symbolic,
        "expanded in seven indeterminates",
    ));

    let identity = [int(1), int(0), int(1), int(0)];
    let id_ok = triples.iter().all(|p| e7_substitution(p, &identity) == *p)
        && sl2_automorphism_e7(g.clone(), &identity[0], &identity[1], &identity[2], &identity[3])?.fixes(&[&yp, &xppp, &h]);
    checks.push(Check::new(
        "classify.e7.sl2.identity",
        "(a, b, c, d) = (1, 0, 1, 0) acts trivially",
        id_ok,
        "substitution and automorphism",
    ));

    // With matrices [[a, b], [d, c]], applying m1 then m2 is the substitution
    // of m1 * m2, so the substitution is a right action.
    let mut compose_ok = true;
    for w in samples.windows(2) {
        let (m1, m2) = (&w[0], &w[1]);
        let prod = sl2_product(m1, m2);
        for p in &triples {
            compose_ok &= e7_substitution(&e7_substitution(p, m1), m2) == e7_substitution(p, &prod);
        }
    }
    checks.push(Check::new(
        "classify.e7.sl2.composition",
        "substituting m1 then m2 equals substituting the matrix product m1·m2",
        compose_ok,
        format!("{} consecutive sample pairs", samples.len() - 1),
    ));

    // An explicit orbit relation: (1, 0, 0) and (0, -1, 0).
    let m = [int(0), int(-1), int(0), int(1)];
    let rho = sl2_automorphism_e7(g.clone(), &m[0], &m[1], &m[2], &m[3])?;
    let from = [int(1), int(0), int(0)];
    let to = e7_substitution(&from, &m);
    let orbit_ok = to == [int(0), int(-1), int(0)] && rho.apply(&combo(&from)) == combo(&to);
    checks.push(Check::new(
        "classify.e7.orbit.example",
        "u ↦ Y' and u ↦ -X''' are equivalent lifts",
        orbit_ok,
        "(a, b, c, d) = (0, -1, 0, 1)",
    ));
    Ok(())
}

/// `[[a, b], [d, c]]` product, returned in the same `(a, b, c, d)` layout.
pub fn sl2_product<C: Coefficient>(x: &[C; 4], y: &[C; 4]) -> [C; 4] {
    let dot = |p: &C, q: &C, r: &C, s: &C| {
        let mut t = p.mul_ref(q);
        t.add_assign_ref(&r.mul_ref(s));
        t
    };
    let [a1, b1, c1, d1] = x;
    let [a2, b2, c2, d2] = y;
    [
        dot(a1, a2, b1, d2),
        dot(a1, b2, b1, c2),
        dot(d1, b2, c1, c2),
        dot(d1, a2, c1, d2),
    ]
}

/// Classifies lifts of the natural and twisted embeddings into the given
/// exceptional algebra.
pub fn classify_lifts(ambient: SimpleType) -> Result<Classification, AbelError> {
    if ambient.family() != Family::E {
        return Err(AbelError::WrongAmbient(ambient.to_string()));
    }
    classify_lifts_in(Arc::new(LieAlgebra::build_type(ambient)))
}

/// [`classify_lifts`] over an algebra already built (or loaded from a table).
pub fn classify_lifts_in(g: Arc<LieAlgebra>) -> Result<Classification, AbelError> {
    let ambient = g.simple_type();
    if ambient.family() != Family::E {
        return Err(AbelError::WrongAmbient(ambient.to_string()));
    }
    let r = ambient.rank();
    let n = r - 1;
    let embed = |v: Variant| EmbeddingMap::with_variant(g.clone(), v).map_err(|e| AbelError::Embed(e.to_string()));
    let phi = embed(Variant::Natural)?;
    let rho = embed(Variant::Twisted)?;
    let named = named_of(&g)?;
    let mut checks = Vec::new();

    // The twisted embedding is equivalent to the natural one exactly when a
    // minuscule or small fundamental module restricts the same way.
    let (module_weight, same) = match r {
        6 => (6, false),
        7 => (7, false),
        _ => (8, true),
    };
    restriction_check(&phi, &rho, module_weight, same, &mut checks)?;
    let variants: Vec<&EmbeddingMap> = if same { vec![&phi] } else { vec![&phi, &rho] };

    let mut finite: BTreeMap<Weight, (usize, Vec<String>)> = BTreeMap::new();
    let mut zero_families = Vec::new();
    let mut orbit_families = Vec::new();
    for emb in &variants {
        let cat = scan_invariant_abelian(emb)?;
        for (w, atoms) in finite_atoms(&cat) {
            for (i, (label, v, dim)) in atoms.iter().enumerate() {
                let prime = if i == 0 { String::new() } else { "'".repeat(i) };
                let wl = format!("{}{prime}", w.label());
                let lifted = lift(emb, &w, v, label);
                checks.push(Check::new(
                    format!("classify.{}.{}.lift.{label}", ambient_id(ambient), emb.variant()),
                    format!("u ↦ {label} defines {}", lift_name(emb.variant(), n, &wl, "1")),
                    lifted.is_ok(),
                    lifted.map_or_else(|e| e.to_string(), |l| l.descriptor()),
                ));
                torus_checks(emb, label, &wl, v, &mut checks)?;
                let entry = finite.entry(w.clone()).or_insert((*dim, Vec::new()));
                entry.1.push(lift_name(emb.variant(), n, &wl, "1"));
            }
        }
        let zero_atoms: Vec<_> = cat.atoms.iter().filter(|a| a.weight.is_zero()).collect();
        let zero = Weight::zero(n);
        if zero_atoms.iter().any(|a| a.in_family) {
            let p = [int(1), int(2), int(-1)];
            let v = named
                .yp
                .as_ref()
                .expect("E7 has Y'")
                .scale(&p[0])
                .add(&named.xppp.as_ref().expect("E7 has X'''").scale(&p[1]))
                .add(&named.h.scale(&p[2]));
            let lifted = lift(emb, &zero, &v, "Y' + 2X''' - H");
            checks.push(Check::new(
                format!("classify.{}.{}.lift.family", ambient_id(ambient), emb.variant()),
                format!("u ↦ αY' + βX''' + γH defines {}", lift_name(emb.variant(), n, "0", "(α,β,γ)")),
                lifted.is_ok(),
                "sample (α, β, γ) = (1, 2, -1)",
            ));
            orbit_families.push(lift_name(emb.variant(), n, "0", "(α,β,γ)"));
        } else if let Some(a) = zero_atoms.first() {
            let lifted = lift(emb, &zero, &a.vector.scale(&int(3)), "3H");
            checks.push(Check::new(
                format!("classify.{}.{}.lift.cartan", ambient_id(ambient), emb.variant()),
                format!("u ↦ αH defines {}", lift_name(emb.variant(), n, "0", "α")),
                lifted.is_ok(),
                "sample α = 3",
            ));
            scaling_check(emb, &mut checks)?;
            zero_families.push(lift_name(emb.variant(), n, "0", "α"));
        }
    }

    if r == 8 {
        checks.push(eigenvalue_obstruction(&phi, "X'''", "Y'", "X''")?);
    }
    if r == 7 {
        e7_checks(&phi, &mut checks)?;
    }

    let extension = |w: &Weight| format!("D{n} ⋉ V({})", w.label());
    let mut classes: Vec<LiftClass> = finite
        .into_iter()
        .rev()
        .map(|(w, (dim, lifts))| LiftClass {
            extension: extension(&w),
            radical_weight: w,
            radical_dim: dim,
            representatives: Representatives::Finite { lifts },
        })
        .collect();
    let zero = Weight::zero(n);
    if !zero_families.is_empty() {
        classes.push(LiftClass {
            extension: extension(&zero),
            radical_weight: zero.clone(),
            radical_dim: 1,
            representatives: Representatives::Continuum {
                families: zero_families,
                parameter: "α ∈ C*".into(),
            },
        });
    }
    if !orbit_families.is_empty() {
        classes.push(LiftClass {
            extension: extension(&zero),
            radical_weight: zero,
            radical_dim: 1,
            representatives: Representatives::Orbits {
                families: orbit_families,
                rule: "(α,β,γ) ~ (αc² - βb² - 2γbc, -αd² + βa² + 2γad, -αcd + βab + γ(ac+bd)) for ac - bd = 1".into(),
                invariant: "γ² + αβ".into(),
            },
        });
    }
    Ok(Classification {
        ambient,
        classes,
        checks,
    })
}

/// Text table of the classification, one row per abelian extension.
pub fn classification_text(c: &Classification) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "Abelian extensions embedded in {}, up to equivalence", c.ambient);
    let _ = writeln!(out, "{:<20} {:>4}  embeddings", "extension", "dim");
    for class in &c.classes {
        let reps = match &class.representatives {
            Representatives::Finite { lifts } => lifts.join(", "),
            Representatives::Continuum { families, parameter } => format!("{}, {parameter}", families.join(", ")),
            Representatives::Orbits {
                families,
                rule,
                invariant,
            } => format!("{}, (α,β,γ) ≠ 0; {rule}; invariant {invariant}", families.join(", ")),
        };
        let _ = writeln!(out, "{:<20} {:>4}  {reps}", class.extension, class.radical_dim);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_satisfy_the_determinant_condition() {
        let s = sl2_samples(24);
        assert_eq!(s.len(), 24);
        for [a, b, c, d] in &s {
            assert_eq!(a * c - b * d, int(1));
        }
    }

    #[test]
    fn product_of_identity_is_identity() {
        let id = [int(1), int(0), int(1), int(0)];
        let m = [int(2), int(1), int(1), int(1)];
        assert_eq!(sl2_product(&id, &m), m);
        assert_eq!(sl2_product(&m, &id), m);
    }
}
