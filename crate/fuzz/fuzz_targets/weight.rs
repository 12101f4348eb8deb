#![no_main]

use libfuzzer_sys::fuzz_target;
use lieabel_core::config::parse_weight;

fuzz_target!(|data: &[u8]| {
    let Some((&rank, rest)) = data.split_first() else {
        return;
    };
    if let Ok(s) = std::str::from_utf8(rest) {
        let _ = parse_weight(s, usize::from(rank % 9));
    }
});
