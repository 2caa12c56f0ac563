#![no_main]

use libfuzzer_sys::fuzz_target;
use twogroup::crossed_module::{to_strict_two_group, validate_crossed_module};
use twogroup::format::parse_crossed_module;

fuzz_target!(|data: &str| {
    if let Ok(x) = parse_crossed_module(data) {
        let valid = validate_crossed_module(&x).is_valid();
        assert_eq!(valid, to_strict_two_group(&x).is_ok());
    }
});
