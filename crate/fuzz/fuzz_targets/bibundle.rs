#![no_main]

use libfuzzer_sys::fuzz_target;
use twogroup::bibundle::validate_principal;
use twogroup::format::parse_bibundle;

fuzz_target!(|data: &str| {
    if let Ok(b) = parse_bibundle(data) {
        let _ = validate_principal(&b);
    }
});
