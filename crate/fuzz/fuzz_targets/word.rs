#![no_main]

use libfuzzer_sys::fuzz_target;
use twogroup::presentation::{format_word, free_reduce, parse_word};

fuzz_target!(|data: &str| {
    let gens: Vec<String> = ["a", "b", "ab", "x1"].iter().map(|s| s.to_string()).collect();
    if let Ok(w) = parse_word(data, &gens) {
        let reduced = free_reduce(&w);
        assert_eq!(free_reduce(&reduced), reduced);
        let back = parse_word(&format_word(&w, &gens), &gens).expect("formatted words reparse");
        assert_eq!(back, w);
    }
});
