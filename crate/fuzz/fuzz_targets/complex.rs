#![no_main]

use libfuzzer_sys::fuzz_target;
use twogroup::covering::{validate_complex, CoveringSpace};
use twogroup::format::parse_complex;

fuzz_target!(|data: &str| {
    if let Ok(c) = parse_complex(data) {
        let valid = validate_complex(&c).is_valid();
        if let Ok(s) = CoveringSpace::new(c) {
            assert!(valid);
            let _ = s.pi1_presentation();
        }
    }
});
