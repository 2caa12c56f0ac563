use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use twogroup::bibundle::{
    compose, find_bibundle_isomorphism, from_functor, identity_bibundle, validate_principal,
};
use twogroup::catalog;
use twogroup::covering::{
    invariance_checks, verify_boundary_iso, BoundaryOptions, CoveringSpace, Verdict,
};
use twogroup::crossed_module::{
    find_crossed_module_isomorphism, kernel_center_check, to_strict_two_group,
    validate_crossed_module,
};
use twogroup::group::GroupTable;
use twogroup::groupoid::{find_isomorphism, FiniteGroupoid};
use twogroup::monoidal::{transpose, unit_isotropy, validate_coherent};
use twogroup::simplicial::{
    bar_nerve, kan_check, nerve_of_groupoid, nerve_of_partial_group, two_kan_to_groupoid,
    PartialGroup,
};
use twogroup::strictifier::{arrow_group, extract_crossed_module};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coherence() -> Outcome {
    let mut n = 0;
    for (name, x) in catalog::crossed_modules() {
        let r = validate_coherent(&catalog::strict(&x).to_coherent());
        ensure(r.is_valid(), || {
            format!(
                "{name}: {:?}",
                r.failed().map(|c| &c.name).collect::<Vec<_>>()
            )
        })?;
        n += 1;
    }
    ensure(validate_coherent(&catalog::t_omega()).is_valid(), || {
        "T_ω rejected".into()
    })?;
    let r = validate_coherent(&catalog::t_omega_tampered());
    let pentagon = r.check("pentagon").ok_or("no pentagon check")?;
    ensure(
        !pentagon.passed() && pentagon.has_witness(&["1", "1", "1", "1"]),
        || "tampered T_ω lacks the (1,1,1,1) witness".into(),
    )?;
    ensure(r.failed().all(|c| c.name == "pentagon"), || {
        "tampered T_ω fails more than the pentagon".into()
    })?;
    Ok(format!(
        "{n} strict 2-groups and T_ω coherent; tampered T_ω fails pentagon at (1,1,1,1)"
    ))
}

fn eckmann_hilton() -> Outcome {
    let mut commutators = 0;
    let all = catalog::coherent_two_groups();
    for (name, t) in &all {
        let u = unit_isotropy(t).map_err(|e| format!("{name}: {e}"))?;
        ensure(u.group.is_abelian(), || {
            format!("{name}: Aut(𝕀) not abelian")
        })?;
        commutators += u.commutators_checked;
    }
    Ok(format!(
        "Aut(𝕀) abelian on {} 2-groups, {commutators} commutators",
        all.len()
    ))
}

fn transposes() -> Outcome {
    let mut arrows = 0;
    let mut pairs = 0;
    for (name, x) in catalog::crossed_modules() {
        let t = catalog::strict(&x).to_coherent();
        let b = t.base();
        for g in b.arrows() {
            let tg = transpose(&t, g).map_err(|e| format!("{name}: {e}"))?;
            let sols = t.characterization_solutions(g);
            ensure(sols == vec![tg], || {
                format!(
                    "{name} {}: formula vs brute force {sols:?}",
                    b.arrow_name(g)
                )
            })?;
            arrows += 1;
        }
        for (g, h) in b.composable_pairs() {
            let lhs = transpose(&t, b.comp(h, g).unwrap()).unwrap();
            let rhs = b.comp(transpose(&t, g).unwrap(), transpose(&t, h).unwrap());
            ensure(rhs == Some(lhs), || {
                format!(
                    "{name}: anti-homomorphy fails at ({}, {})",
                    b.arrow_name(g),
                    b.arrow_name(h)
                )
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{arrows} arrows match brute force, {pairs} composable pairs anti-homomorphic"
    ))
}

fn round_trip() -> Outcome {
    let mut slowest = Duration::ZERO;
    let all = catalog::crossed_modules();
    for (name, x) in &all {
        ensure(x.gamma.order() <= 24 && x.g0.order() <= 24, || {
            format!("{name} too large")
        })?;
        let start = Instant::now();
        let s = to_strict_two_group(x).map_err(|e| format!("{name}: {e}"))?;
        let back = extract_crossed_module(&s).module;
        let iso = find_crossed_module_isomorphism(x, &back)
            .ok_or_else(|| format!("{name}: no isomorphism"))?;
        ensure(iso.check(x, &back), || {
            format!("{name}: isomorphism does not check")
        })?;
        let took = start.elapsed();
        ensure(took < Duration::from_secs(5), || {
            format!("{name}: {took:?}")
        })?;
        slowest = slowest.max(took);
    }
    Ok(format!(
        "{} crossed modules recovered up to explicit isomorphism, slowest {slowest:.2?}",
        all.len()
    ))
}

fn wreath() -> Outcome {
    let ag = arrow_group(&catalog::strict(&catalog::xm2()));
    ensure(ag.wreath.order() == 36, || {
        format!("|Γ⋊G₀| = {}", ag.wreath.order())
    })?;
    for name in ["phi-homomorphism", "psi-after-phi", "phi-after-psi"] {
        let c = ag
            .checks
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| format!("missing {name}"))?;
        ensure(c.passed(), || {
            format!("{name}: {} violations", c.violations)
        })?;
    }
    Ok("Φ: (G₁,⊗) → Γ⋊G₀ bijective and multiplicative on XM2, 36² products".into())
}

fn crossed_module_axioms() -> Outcome {
    for (name, x) in [
        ("xm1", catalog::xm1()),
        ("xm2", catalog::xm2()),
        ("xm3", catalog::xm3()),
    ] {
        ensure(validate_crossed_module(&x).is_valid(), || {
            format!("{name} rejected")
        })?;
    }
    let mut accepted = 0;
    for (name, x) in catalog::crossed_modules() {
        let k = kernel_center_check(&x);
        ensure(k.central.passed(), || format!("{name}: kernel not central"))?;
        accepted += 1;
    }
    let r = validate_crossed_module(&catalog::broken_boundary());
    let c = r
        .check("partial-homomorphism")
        .ok_or("no partial-homomorphism check")?;
    ensure(!c.passed() && c.has_witness(&["1", "1"]), || {
        "broken_boundary lacks witness (1,1)".into()
    })?;
    let r = validate_crossed_module(&catalog::broken_pfeiffer());
    let c = r.check("pfeiffer").ok_or("no pfeiffer check")?;
    ensure(!c.passed() && c.has_witness(&["(12)", "(13)"]), || {
        "broken_pfeiffer lacks witness ((12),(13))".into()
    })?;
    Ok(format!("XM1–XM3 accepted, both broken fixtures rejected with witnesses, kernel central on {accepted}"))
}

fn kan() -> Outcome {
    let z2 = FiniteGroupoid::delooping(&GroupTable::cyclic(2));
    let n = nerve_of_groupoid(&z2, 3);
    ensure(n.layer_sizes() == vec![1, 2, 4, 8], || {
        format!("delooping layers {:?}", n.layer_sizes())
    })?;
    let r = kan_check(&n, 1, 3).map_err(|e| e.to_string())?;
    ensure(r.passed, || "ℤ/2 nerve not 1-Kan".into())?;
    ensure(
        r.entries
            .iter()
            .filter(|e| e.m >= 2)
            .all(|e| e.missing == 0 && e.ambiguous == 0),
        || "non-unique filler for m ≥ 2".into(),
    )?;
    let p = PartialGroup::integer_interval(1);
    let x = nerve_of_partial_group(&p, 2);
    ensure(x.layer_sizes() == vec![1, 3, 7], || {
        format!("interval layers {:?}", x.layer_sizes())
    })?;
    let r = kan_check(&x, 1, 2).map_err(|e| e.to_string())?;
    let e = r.entry(2, 1).ok_or("no Λ[2,1] entry")?;
    ensure(!r.passed && e.has_missing(&["1", "1"]), || {
        "interval nerve lacks the (1,1) failure at Λ[2,1]".into()
    })?;
    let x3 = nerve_of_partial_group(&p, 3);
    let v = [-1i64, 0, 1];
    let mut triples = 0;
    for a in v {
        for b in v {
            for c in v {
                triples += usize::from(
                    [a, b, c, a + b, b + c, a + b + c]
                        .iter()
                        .all(|s| s.abs() <= 1),
                );
            }
        }
    }
    ensure(x3.layer_sizes() == vec![1, 3, 7, triples], || {
        format!("interval depth 3 layers {:?}", x3.layer_sizes())
    })?;
    Ok(
        "ℤ/2 nerve 1-Kan to m=3 with unique fillers; interval fails Λ[2,1] at (1,1); layers exact"
            .into(),
    )
}

fn two_kan() -> Outcome {
    let x = catalog::xm1();
    let g = two_kan_to_groupoid(&bar_nerve(&x, 3)).map_err(|e| e.to_string())?;
    let translation = x.translation_groupoid().map_err(|e| e.to_string())?;
    ensure(find_isomorphism(&g, &translation).is_some(), || {
        "extracted groupoid not isomorphic to Γ⋉G₀".into()
    })?;
    Ok(format!(
        "XM1 bar nerve gives {} objects, {} arrows ≅ Γ⋉G₀",
        g.object_count(),
        g.arrow_count()
    ))
}

fn bibundles() -> Outcome {
    let mut functors = 0;
    for (name, x) in catalog::crossed_modules() {
        let g = x.translation_groupoid().map_err(|e| e.to_string())?;
        let id = identity_bibundle(&g);
        let p = validate_principal(&id);
        ensure(p.right_principal && p.morita, || {
            format!("{name}: identity bibundle not Morita")
        })?;
        let order_obj: Vec<_> = g.objects().rev().collect();
        let order_arr: Vec<_> = g.arrows().rev().collect();
        let h = g.permuted(&order_obj, &order_arr, "p");
        let f = find_isomorphism(&g, &h)
            .ok_or_else(|| format!("{name}: no permutation isomorphism"))?;
        ensure(validate_principal(&from_functor(&f, &g, &h)).morita, || {
            format!("{name}: isomorphism not Morita")
        })?;
        for comp in g.components() {
            let (sub, inc) = g.full_subgroupoid(&comp);
            let b = from_functor(&inc, &sub, &g);
            ensure(validate_principal(&b).right_principal, || {
                format!("{name}: inclusion not right principal")
            })?;
            let right = compose(&b, &id).map_err(|e| e.to_string())?;
            let left = compose(&identity_bibundle(&sub), &b).map_err(|e| e.to_string())?;
            ensure(find_bibundle_isomorphism(&right, &b).is_some(), || {
                format!("{name}: right unit law")
            })?;
            ensure(find_bibundle_isomorphism(&left, &b).is_some(), || {
                format!("{name}: left unit law")
            })?;
            functors += 1;
        }
    }
    Ok(format!("{functors} inclusion bibundles right principal with unit laws; identities and isomorphisms Morita"))
}

fn pi1() -> Outcome {
    let mut orders = Vec::new();
    for (name, c) in catalog::complexes() {
        let s = CoveringSpace::new(c).map_err(|e| format!("{name}: {e}"))?;
        let r = verify_boundary_iso(&s, BoundaryOptions::default());
        ensure(r.homomorphism.passed() && r.surjectivity.passed(), || {
            format!("{name}: homomorphism or surjectivity")
        })?;
        ensure(r.verdict == Verdict::IsoCertified, || {
            format!("{name}: {}", r.summary())
        })?;
        ensure(r.injectivity.timed_out.is_empty(), || {
            format!("{name}: kernel loops over budget")
        })?;
        orders.push(format!("{name}:{}", r.gamma_order));
    }
    for c in [catalog::cayley_z2(), catalog::cayley_z3()] {
        let s = CoveringSpace::new(c).map_err(|e| e.to_string())?;
        for chk in invariance_checks(&s, 5) {
            ensure(chk.passed(), || format!("{} fails", chk.name))?;
        }
    }
    Ok(format!(
        "∂₁ certified iso for {}; invariance exhaustive on ℤ/2, ℤ/3",
        orders.join(", ")
    ))
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn kind(doc: &serde_json::Value) -> &'static str {
    let has = |k: &str| doc.get(k).is_some();
    if has("cells2") {
        "complex"
    } else if has("left_moment") {
        "bibundle"
    } else if has("partial") {
        "xmod"
    } else if has("layers") {
        "simplicial"
    } else if has("tensor_obj") {
        "twogroup"
    } else {
        "groupoid"
    }
}

fn commands_for(kind: &str) -> &'static [&'static [&'static str]] {
    match kind {
        "xmod" => &[
            &["validate"],
            &["xmod-to-2group"],
            &["roundtrip"],
            &["nerve", "--depth", "2"],
            &["kan-check", "--depth", "2"],
        ],
        "twogroup" => &[&["validate"], &["strictify"], &["extract-xmod"]],
        "groupoid" => &[&["validate"], &["nerve"], &["kan-check", "--kan-n", "1"]],
        "simplicial" => &[&["validate"], &["kan-check", "--kan-n", "1"]],
        "bibundle" => &[&["validate"], &["bibundle-check"]],
        "complex" => &[
            &["validate"],
            &["pi1"],
            &["pi1", "--verify-boundary"],
            &["pi1", "--loop", "a"],
        ],
        _ => &[],
    }
}

fn determinism() -> Outcome {
    let dir = workspace_root().join("catalog");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    let mut runs = 0;
    let mut per_command: BTreeMap<String, usize> = BTreeMap::new();
    for f in &files {
        let doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(f).unwrap())
            .map_err(|e| e.to_string())?;
        let k = kind(&doc);
        for args in commands_for(k) {
            for format in ["json", "text"] {
                let run = || {
                    Command::new(env!("CARGO_BIN_EXE_twogroup"))
                        .args(args.iter())
                        .arg(format!("--{k}"))
                        .arg(f)
                        .args(["--format", format])
                        .output()
                        .expect("binary runs")
                };
                let (a, b) = (run(), run());
                let label = format!(
                    "{} {} --{k} {}",
                    args.join(" "),
                    format,
                    f.file_name().unwrap().to_string_lossy()
                );
                ensure(a.stdout == b.stdout && a.status == b.status, || {
                    format!("{label}: reports differ")
                })?;
                ensure(!a.stdout.is_empty(), || format!("{label}: empty report"))?;
                ensure(a.status.code() != Some(2), || {
                    format!("{label}: {}", String::from_utf8_lossy(&a.stderr))
                })?;
                runs += 1;
                *per_command.entry(args[0].to_string()).or_default() += 1;
            }
        }
    }
    ensure(per_command.len() == 9, || {
        format!(
            "only {:?} exercised",
            per_command.keys().collect::<Vec<_>>()
        )
    })?;
    Ok(format!(
        "{runs} invocations over {} files, 9 subcommands, byte-identical",
        files.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("coherence suite", coherence),
        ("Eckmann–Hilton", eckmann_hilton),
        ("transpose suite", transposes),
        ("strictification round trip", round_trip),
        ("wreath product Ψ/Φ", wreath),
        ("crossed-module axioms", crossed_module_axioms),
        ("Kan suite", kan),
        ("2-Kan correspondence", two_kan),
        ("bibundle suite", bibundles),
        ("π₁ suite", pi1),
        ("CLI determinism", determinism),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
