#![no_main]

use libfuzzer_sys::fuzz_target;
use twogroup::format::{groupoid_to_json, parse_groupoid};
use twogroup::groupoid::validate_groupoid;

fuzz_target!(|data: &str| {
    if let Ok(g) = parse_groupoid(data) {
        let r = validate_groupoid(&g);
        if r.is_valid() {
            let again = parse_groupoid(&groupoid_to_json(&g)).expect("serialized groupoid reparses");
            assert_eq!(again.arrow_count(), g.arrow_count());
        }
    }
});
