use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use proptest::prelude::*;

use lieabel_core::branch::branch_with_linkage;
use lieabel_core::chevalley::{parse_structure_table, LieAlgebra};
use lieabel_core::config::{parse_element_expr, parse_lift_spec, parse_weight, resolve_with};
use lieabel_core::exactla::{fmt_rational, is_zero_vec, nullspace, parse_rational, rat, Rational, RationalMatrix};
use lieabel_core::hwmod::construct_irrep_capped;
use lieabel_core::rootsys::{SimpleType, Weight};

fn algebra(t: SimpleType) -> Arc<LieAlgebra> {
    static CACHE: OnceLock<std::sync::Mutex<BTreeMap<SimpleType, Arc<LieAlgebra>>>> = OnceLock::new();
    let mut map = CACHE.get_or_init(Default::default).lock().unwrap();
    map.entry(t)
        .or_insert_with(|| Arc::new(LieAlgebra::build_type(t)))
        .clone()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = (i64, i64)> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=9)
}

fn matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r).prop_map(move |rows| {
            RationalMatrix::from_rows(c, rows.into_iter().map(|row| row.into_iter().map(|x| rat(x, 1)).collect()).collect())
                .unwrap()
        })
    })
}

fn lift_spec(ambient: &str, module: &str, weight: &str, element: &str, params: &[(&str, (i64, i64))]) -> String {
    let params: serde_json::Map<String, serde_json::Value> = params
        .iter()
        .map(|(k, (n, d))| (k.to_string(), serde_json::Value::String(format!("{n}/{d}"))))
        .collect();
    serde_json::json!({
        "ambient": ambient,
        "module": module,
        "lift": {"weight": weight, "element": element, "params": params},
    })
    .to_string()
}

fn blocks_of(spec: &str) -> (Vec<Vec<Weight>>, bool, bool) {
    let spec = parse_lift_spec(spec).unwrap();
    let r = resolve_with(&spec, |t| Ok(algebra(t))).unwrap();
    let m = r.build_module().unwrap();
    let rep = branch_with_linkage(&m, &r.embedding).unwrap();
    let mut blocks = rep.block_weights();
    for b in &mut blocks {
        b.sort();
    }
    blocks.sort();
    (blocks, rep.radical_actions_commute, rep.linkage_weight_compatible)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_add_then_subtract(a in rational(), b in rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a);
    }

    #[test]
    fn rational_text_round_trips(a in rational()) {
        prop_assert_eq!(parse_rational(&fmt_rational(&a)).unwrap(), a);
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let kernel = nullspace(&m);
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(is_zero_vec(&m.mul_vec(v).unwrap()));
        }
    }

    #[test]
    fn rref_is_idempotent(m in matrix()) {
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(pivots.len(), m.rank());
        prop_assert_eq!(pivots, pivots2);
    }

    #[test]
    fn inverse_when_full_rank(m in matrix()) {
        if m.rows() == m.cols() && m.rank() == m.rows() {
            let inv = m.inverse().unwrap();
            prop_assert_eq!(m.mul(&inv).unwrap(), RationalMatrix::identity(m.rows()));
        } else {
            prop_assert!(m.inverse().is_err());
        }
    }

    #[test]
    fn weight_labels_round_trip(coords in proptest::collection::vec(0i64..=4, 7)) {
        let w = Weight(coords);
        prop_assert_eq!(parse_weight(&w.label(), 7).unwrap(), w);
    }

    #[test]
    fn weight_parser_never_panics(s in "\\PC{0,24}", rank in 1usize..=8) {
        let _ = parse_weight(&s, rank);
    }

    #[test]
    fn expression_parser_never_panics(s in "[XYH'0-9λαβγ()+*/ ,_\\[\\]-]{0,24}") {
        let g = algebra(SimpleType::e(6).unwrap());
        let _ = parse_element_expr(&g, &s, &BTreeMap::new());
    }

    #[test]
    fn table_and_spec_parsers_never_panic(s in "\\PC{0,64}") {
        let _ = parse_structure_table(&s);
        let _ = parse_lift_spec(&s);
    }

    #[test]
    fn expressions_are_linear((n, d) in nonzero_rational(), (p, q) in nonzero_rational()) {
        let g = algebra(SimpleType::e(7).unwrap());
        let params: BTreeMap<String, Rational> =
            [("a".to_string(), rat(n, d)), ("b".to_string(), rat(p, q))].into_iter().collect();
        let combined = parse_element_expr(&g, "a*Y' + b*X'''", &params).unwrap();
        let y = parse_element_expr(&g, "Y'", &params).unwrap();
        let x = parse_element_expr(&g, "X'''", &params).unwrap();
        prop_assert_eq!(combined, y.scale(&rat(n, d)).add(&x.scale(&rat(p, q))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn modules_have_weyl_symmetric_weights(coords in proptest::collection::vec(0i64..=1, 5)) {
        let g = algebra(SimpleType::d(5).unwrap());
        let w = Weight(coords);
        let dim = u64::try_from(&g.root_system().weyl_dim(&w).unwrap()).unwrap();
        prop_assume!(dim <= 1200);
        let m = construct_irrep_capped(g, &w, 1200).unwrap();
        prop_assert_eq!(m.dim() as u64, dim);
        prop_assert!(m.weyl_symmetry_violations().is_empty());
        prop_assert!(m.verify_relations().passed());
    }

    /// Rescaling the radical's highest vector changes neither the blocks nor
    /// the commuting of the radical actions.
    #[test]
    fn blocks_invariant_under_rescaling(c in nonzero_rational(), twisted in any::<bool>()) {
        let weight = if twisted { "λ4" } else { "λ5" };
        let mut spec: serde_json::Value =
            serde_json::from_str(&lift_spec("E6", "λ6", weight, "c*X''", &[("c", c)])).unwrap();
        spec["variant"] = if twisted { "twisted".into() } else { "natural".into() };
        let (scaled, commute, compatible) = blocks_of(&spec.to_string());
        spec["lift"]["params"]["c"] = "1".into();
        let (unit, _, _) = blocks_of(&spec.to_string());
        prop_assert_eq!(scaled, unit);
        prop_assert!(commute && compatible);
    }

    #[test]
    fn weight_zero_radicals_commute(a in nonzero_rational(), b in nonzero_rational(), c in nonzero_rational()) {
        let spec = lift_spec("E7", "λ7", "0", "a*Y' + b*X''' + c*H", &[("a", a), ("b", b), ("c", c)]);
        let (_, commute, compatible) = blocks_of(&spec);
        prop_assert!(commute && compatible);
    }
}
