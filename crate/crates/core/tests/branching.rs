use lieabel_core::branch::*;
use lieabel_core::embed::*;
use lieabel_core::exactla::Rational;
use lieabel_core::hwmod::adjoint_module;
use lieabel_core::rootsys::Weight;

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn sorted_blocks(report: &BranchingReport) -> Vec<Vec<String>> {
    let mut blocks: Vec<Vec<String>> = report
        .block_weights()
        .into_iter()
        .map(|b| {
            let mut v: Vec<String> = b.iter().map(|w| w.label()).collect();
            v.sort();
            v
        })
        .collect();
    blocks.sort();
    blocks
}

fn labels(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

#[test]
fn e8_adjoint_splits_into_two_blocks_under_both_fourteen_dimensional_lifts() {
    let phi = natural_embedding(7).unwrap();
    let g = phi.target().clone();
    let named = g.named_elements().unwrap();
    for (u, desc) in [(named.xppp.clone().unwrap(), "X'''"), (named.yp.clone().unwrap(), "Y'")] {
        let lift = phi.lift(&Weight::fundamental(7, 1), u, desc).unwrap();
        let report = branch_with_linkage(&adjoint_module(g.clone()), &lift).unwrap();
        assert_eq!(
            sorted_blocks(&report),
            vec![labels(&["0", "λ1", "λ1", "λ2"]), labels(&["λ6", "λ7"])],
            "{desc}"
        );
        assert_eq!(report.block_notation, "(2V(λ1) + V(λ2) + V(0)) ⊕ (V(λ6) + V(λ7))");
        assert!(report.radical_actions_commute);
        assert!(report.linkage_weight_compatible);
        assert!(!report.parameter_dependent);
        assert!(!indecomposability_criterion(&lift));
    }
}

#[test]
fn e8_adjoint_under_the_cartan_lift_matches_plain_restriction() {
    let phi = natural_embedding(7).unwrap();
    let g = phi.target().clone();
    let h = g.named_elements().unwrap().h;
    let lift = phi.lift(&Weight::zero(7), h, "H").unwrap();
    let report = branch_with_linkage(&adjoint_module(g), &lift).unwrap();
    assert!(report.linkage_edges.is_empty());
    assert_eq!(report.copies.len(), 6);
    assert_eq!(report.blocks.len(), 6);
}

#[test]
fn e7_adjoint_under_a_generic_cartan_type_lift_is_parameter_dependent() {
    for twisted in [false, true] {
        let emb = if twisted { twisted_embedding(6) } else { natural_embedding(6) }.unwrap();
        let g = emb.target().clone();
        let nm = g.named_elements().unwrap();
        let u = nm
            .yp
            .clone()
            .unwrap()
            .scale(&r(2))
            .add(&nm.xppp.clone().unwrap().scale(&r(3)))
            .add(&nm.h.scale(&r(5)));
        let lift = emb.lift(&Weight::zero(6), u, "2Y' + 3X''' + 5H").unwrap();
        let report = branch_with_linkage(&adjoint_module(g), &lift).unwrap();
        let five = if twisted { "λ6" } else { "λ5" };
        assert_eq!(
            sorted_blocks(&report),
            vec![labels(&["0", "0", "0"]), labels(&["λ2"]), labels(&[five, five])]
        );
        assert!(report.parameter_dependent);
        assert!(!indecomposability_criterion(&lift));
    }
}

#[test]
fn sixteen_dimensional_lifts_of_e6_satisfy_the_criterion() {
    for twisted in [false, true] {
        let emb = if twisted { twisted_embedding(5) } else { natural_embedding(5) }.unwrap();
        let g = emb.target().clone();
        let nm = g.named_elements().unwrap();
        for (vector, desc) in [(nm.xpp.clone(), "X''"), (g.y(1), "Y1")] {
            let w = emb.highest_weight_of(&vector).unwrap();
            let lift = emb.lift(&w, vector, desc).unwrap();
            assert!(indecomposability_criterion(&lift), "{}", lift.descriptor());
        }
    }
}

#[test]
fn criterion_agrees_with_linkage_on_the_e6_minuscule_module() {
    use lieabel_core::hwmod::construct_irrep;
    for twisted in [false, true] {
        let emb = if twisted { twisted_embedding(5) } else { natural_embedding(5) }.unwrap();
        let g = emb.target().clone();
        let m = construct_irrep(g.clone(), &Weight::fundamental(6, 6)).unwrap();
        let nm = g.named_elements().unwrap();
        for (vector, desc) in [(nm.xpp.clone(), "X''"), (g.y(1), "Y1")] {
            let w = emb.highest_weight_of(&vector).unwrap();
            let lift = emb.lift(&w, vector, desc).unwrap();
            let report = branch_with_linkage(&m, &lift).unwrap();
            assert!(indecomposability_criterion(&lift));
            assert_eq!(report.blocks.len(), 1, "{}", report.block_notation);
            assert_eq!(report.copies.len(), 3);
            assert!(report.radical_actions_commute);
        assert!(report.linkage_weight_compatible);
        }
    }
}
