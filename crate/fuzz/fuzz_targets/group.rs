#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &str| {
    if let Ok(g) = twogroup::format::parse_group(data) {
        assert!(g.order() > 0);
    }
});
