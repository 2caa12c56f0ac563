#![no_main]

use libfuzzer_sys::fuzz_target;
use twogroup::format::parse_simplicial;
use twogroup::simplicial::validate_simplicial;

fuzz_target!(|data: &str| {
    if let Ok(x) = parse_simplicial(data) {
        let _ = validate_simplicial(&x);
    }
});
