//! Replays the fuzz corpus, plus truncated and corrupted variants, through every parser.

use std::path::PathBuf;

use twogroup::bibundle::validate_principal;
use twogroup::covering::validate_complex;
use twogroup::crossed_module::validate_crossed_module;
use twogroup::format;
use twogroup::groupoid::validate_groupoid;
use twogroup::monoidal::validate_coherent;
use twogroup::presentation::{format_word, parse_word};
use twogroup::simplicial::validate_simplicial;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "empty corpus for {target}");
    out
}

fn variants(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let step = (s.len() / 40).max(1);
    let cuts: Vec<usize> = s.char_indices().map(|(i, _)| i).step_by(step).collect();
    for &c in &cuts {
        out.push(s[..c].to_string());
    }
    let bytes = s.as_bytes();
    for i in (0..bytes.len()).step_by(step + 7) {
        for b in *b"\"0]9" {
            let mut v = bytes.to_vec();
            v[i] = b;
            if let Ok(v) = String::from_utf8(v) {
                out.push(v);
            }
        }
    }
    out
}

fn replay<T, E>(target: &str, parse: impl Fn(&str) -> Result<T, E>, seeds_valid: bool) {
    for (name, text) in seeds(target) {
        if seeds_valid {
            assert!(parse(&text).is_ok(), "{target}/{name} does not parse");
        }
        for v in variants(&text) {
            let _ = parse(&v);
        }
    }
}

#[test]
fn groups() {
    replay("group", format::parse_group, true);
}

#[test]
fn groupoids() {
    replay(
        "groupoid",
        |s| format::parse_groupoid(s).map(|g| validate_groupoid(&g)),
        true,
    );
}

#[test]
fn two_groups() {
    replay(
        "two_group",
        |s| format::parse_two_group(s).map(|p| validate_coherent(&p.two_group)),
        true,
    );
}

#[test]
fn crossed_modules() {
    replay(
        "crossed_module",
        |s| format::parse_crossed_module(s).map(|x| validate_crossed_module(&x)),
        true,
    );
}

#[test]
fn simplicial_sets() {
    replay(
        "simplicial",
        |s| format::parse_simplicial(s).map(|x| validate_simplicial(&x)),
        true,
    );
}

#[test]
fn complexes() {
    replay(
        "complex",
        |s| format::parse_complex(s).map(|c| validate_complex(&c)),
        true,
    );
}

#[test]
fn bibundles() {
    replay(
        "bibundle",
        |s| format::parse_bibundle(s).map(|b| validate_principal(&b)),
        true,
    );
}

#[test]
fn words() {
    let gens: Vec<String> = ["a", "b", "ab", "x1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for (name, text) in seeds("word") {
        let w = parse_word(&text, &gens).unwrap_or_else(|e| panic!("{name}: {e:?}"));
        assert_eq!(
            parse_word(&format_word(&w, &gens), &gens).unwrap(),
            w,
            "{name}"
        );
    }
    for s in [
        "(((",
        "a^",
        "a^-",
        "a^99999999999999999999",
        ")",
        "(a)^(b)",
        "a^-0",
        "\u{1F600}",
        "x1^2x1",
    ] {
        let _ = parse_word(s, &gens);
    }
}
