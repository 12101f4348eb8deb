#![no_main]

use libfuzzer_sys::fuzz_target;
use lieabel_core::config::parse_lift_spec;

fuzz_target!(|data: &str| {
    let _ = parse_lift_spec(data);
});
