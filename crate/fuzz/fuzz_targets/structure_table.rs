#![no_main]

use libfuzzer_sys::fuzz_target;
use lieabel_core::chevalley::{parse_structure_table, LieAlgebra};

// Tables that parse are also fed to the loader, which must reject bad
// dimensions and indices without panicking.
fuzz_target!(|data: &str| {
    if let Ok(t) = parse_structure_table(data) {
        let _ = LieAlgebra::from_table(&t);
    }
});
