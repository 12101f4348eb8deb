#![no_main]

use std::collections::BTreeMap;
use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use lieabel_core::chevalley::LieAlgebra;
use lieabel_core::config::parse_element_expr;
use lieabel_core::exactla::rat;
use lieabel_core::rootsys::SimpleType;

fuzz_target!(|data: &str| {
    static E7: OnceLock<LieAlgebra> = OnceLock::new();
    let g = E7.get_or_init(|| LieAlgebra::build_type(SimpleType::e(7).unwrap()));
    let params: BTreeMap<_, _> = [("alpha".to_string(), rat(2, 3)), ("beta".to_string(), rat(-1, 1))]
        .into_iter()
        .collect();
    let _ = parse_element_expr(g, data, &params);
});
