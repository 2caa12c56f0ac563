#![no_main]

use libfuzzer_sys::fuzz_target;
use twogroup::format::parse_two_group;
use twogroup::monoidal::validate_coherent;

fuzz_target!(|data: &str| {
    if let Ok(p) = parse_two_group(data) {
        if p.two_group.base().arrow_count() <= 64 {
            let _ = validate_coherent(&p.two_group);
        }
    }
});
