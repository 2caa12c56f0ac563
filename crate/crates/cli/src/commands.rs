use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use twogroup::bibundle::validate_principal;
use twogroup::covering::{
    invariance_checks, validate_complex, verify_boundary_iso, BoundaryOptions, CoveringError,
    CoveringSpace, Verdict,
};
use twogroup::crossed_module::{
    find_crossed_module_isomorphism, kernel_center_check, pfeiffer_vs_interchange,
    to_strict_two_group, validate_crossed_module, CrossedModule,
};
use twogroup::format::{self, CrossedModuleDoc, SimplicialDoc, TwoGroupDoc};
use twogroup::groupoid::{validate_groupoid, FiniteGroupoid};
use twogroup::monoidal::{unit_isotropy, validate_coherent, validate_strict, CoherentTwoGroup};
use twogroup::report::ValidationReport;
use twogroup::simplicial::{
    bar_nerve, kan_check, nerve_of_groupoid, validate_simplicial, TruncatedSimplicialSet,
};
use twogroup::strictifier::{
    arrow_group, associator_cocycle, extract_crossed_module, is_semistrict, strictify,
    StrictifyError,
};

use crate::output::{Report, Status, SCHEMA_VERSION};
use crate::Opts;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    TwoGroup,
    Xmod,
    Groupoid,
    Complex,
    Simplicial,
    Bibundle,
}

impl Kind {
    fn flag(self) -> &'static str {
        match self {
            Kind::TwoGroup => "--twogroup",
            Kind::Xmod => "--xmod",
            Kind::Groupoid => "--groupoid",
            Kind::Complex => "--complex",
            Kind::Simplicial => "--simplicial",
            Kind::Bibundle => "--bibundle",
        }
    }

    fn path(self, o: &Opts) -> Option<&PathBuf> {
        match self {
            Kind::TwoGroup => o.twogroup.as_ref(),
            Kind::Xmod => o.xmod.as_ref(),
            Kind::Groupoid => o.groupoid.as_ref(),
            Kind::Complex => o.complex.as_ref(),
            Kind::Simplicial => o.simplicial.as_ref(),
            Kind::Bibundle => o.bibundle.as_ref(),
        }
    }
}

const ALL: [Kind; 6] = [
    Kind::TwoGroup,
    Kind::Xmod,
    Kind::Groupoid,
    Kind::Complex,
    Kind::Simplicial,
    Kind::Bibundle,
];

struct Outcome {
    status: Status,
    summary: String,
    result: Value,
}

impl Outcome {
    fn new(status: Status, summary: impl Into<String>, result: Value) -> Self {
        Outcome {
            status,
            summary: summary.into(),
            result,
        }
    }
}

struct Input {
    kind: Kind,
    label: String,
    checksum: String,
    text: String,
}

fn pick(o: &Opts, allowed: &[Kind]) -> Result<(Kind, PathBuf), String> {
    let given: Vec<Kind> = ALL
        .iter()
        .copied()
        .filter(|k| k.path(o).is_some())
        .collect();
    let flags = || {
        allowed
            .iter()
            .map(|k| k.flag())
            .collect::<Vec<_>>()
            .join(", ")
    };
    match given.as_slice() {
        [k] if allowed.contains(k) => Ok((*k, k.path(o).unwrap().clone())),
        [k] => Err(format!(
            "{} is not accepted here; use one of {}",
            k.flag(),
            flags()
        )),
        [] => Err(format!("an input is required: one of {}", flags())),
        _ => Err("give exactly one input file".into()),
    }
}

fn read(kind: Kind, path: &Path) -> Result<Input, String> {
    let bytes = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let checksum = format!("sha256:{}", hex::encode(Sha256::digest(&bytes)));
    let text = String::from_utf8(bytes).map_err(|_| format!("{} is not UTF-8", path.display()))?;
    let label = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string());
    Ok(Input {
        kind,
        label,
        checksum,
        text,
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("results serialize")
}

/// Pass, fail, or error when the report has structural problems.
fn report_status(r: &ValidationReport) -> Status {
    if !r.is_structurally_sound() {
        Status::Error
    } else {
        Status::from_pass(r.is_valid())
    }
}

fn report_summary(r: &ValidationReport, ok: &str) -> String {
    if !r.is_structurally_sound() {
        format!("structural errors: {}", r.structural.join("; "))
    } else if r.is_valid() {
        format!("{ok}; {} checks pass", r.checks.len())
    } else {
        let failed: Vec<&str> = r.failed().map(|c| c.name.as_str()).collect();
        format!(
            "{} of {} checks fail: {}",
            failed.len(),
            r.checks.len(),
            failed.join(", ")
        )
    }
}

pub fn run(name: &str, o: &Opts) -> Report {
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        command: name.to_string(),
        input: None,
        input_checksum: None,
        status: Status::Error,
        summary: String::new(),
        error: None,
        result: Value::Null,
    };
    let allowed: &[Kind] = match name {
        "validate" => &ALL,
        "strictify" | "extract-xmod" => &[Kind::TwoGroup],
        "xmod-to-2group" | "roundtrip" => &[Kind::Xmod],
        "bibundle-check" => &[Kind::Bibundle],
        "nerve" => &[Kind::Xmod, Kind::Groupoid],
        "kan-check" => &[Kind::Xmod, Kind::Groupoid, Kind::Simplicial],
        "pi1" => &[Kind::Complex],
        _ => &[],
    };
    let input = match pick(o, allowed).and_then(|(k, p)| read(k, &p)) {
        Ok(i) => i,
        Err(e) => {
            report.summary = "input error".into();
            report.error = Some(e);
            return report;
        }
    };
    report.input = Some(input.label.clone());
    report.input_checksum = Some(input.checksum.clone());
    match dispatch(name, o, &input) {
        Ok(out) => {
            report.status = out.status;
            report.summary = out.summary;
            report.result = out.result;
        }
        Err(e) => {
            report.summary = "parse error".into();
            report.error = Some(e);
        }
    }
    report
}

fn dispatch(name: &str, o: &Opts, input: &Input) -> Result<Outcome, String> {
    let err = |e: format::FormatError| e.to_string();
    let text = input.text.as_str();
    Ok(match (name, input.kind) {
        ("validate", Kind::TwoGroup) => {
            let parsed = format::parse_two_group(text).map_err(err)?;
            validate_two_group(&parsed.two_group, parsed.adjunction_searched)
        }
        ("validate", Kind::Xmod) => {
            validate_xmod(&format::parse_crossed_module(text).map_err(err)?)
        }
        ("validate", Kind::Groupoid) => {
            let r = validate_groupoid(&format::parse_groupoid(text).map_err(err)?);
            Outcome::new(
                report_status(&r),
                report_summary(&r, "groupoid"),
                json!({ "report": r }),
            )
        }
        ("validate", Kind::Simplicial) => {
            let r = validate_simplicial(&format::parse_simplicial(text).map_err(err)?);
            Outcome::new(
                report_status(&r),
                report_summary(&r, "simplicial identities hold"),
                json!({ "report": r }),
            )
        }
        ("validate", Kind::Complex) => {
            let r = validate_complex(&format::parse_complex(text).map_err(err)?);
            Outcome::new(
                report_status(&r),
                report_summary(&r, "free equivariant complex"),
                json!({ "report": r }),
            )
        }
        ("validate", Kind::Bibundle) | ("bibundle-check", _) => {
            bibundle_check(o, &format::parse_bibundle(text).map_err(err)?)
        }
        ("strictify", _) => strictify_cmd(
            &format::parse_two_group(text).map_err(err)?.two_group,
            false,
        ),
        ("extract-xmod", _) => {
            strictify_cmd(&format::parse_two_group(text).map_err(err)?.two_group, true)
        }
        ("xmod-to-2group", _) => {
            xmod_to_two_group(&format::parse_crossed_module(text).map_err(err)?)
        }
        ("roundtrip", _) => roundtrip(&format::parse_crossed_module(text).map_err(err)?),
        ("nerve", _) | ("kan-check", _) => {
            let x = match input.kind {
                Kind::Simplicial => format::parse_simplicial(text).map_err(err)?,
                Kind::Xmod => {
                    let xm = format::parse_crossed_module(text).map_err(err)?;
                    let r = validate_crossed_module(&xm);
                    if !r.is_valid() {
                        return Ok(Outcome::new(
                            report_status(&r),
                            report_summary(&r, ""),
                            json!({ "report": r }),
                        ));
                    }
                    bar_nerve(&xm, o.depth)
                }
                _ => {
                    let g = format::parse_groupoid(text).map_err(err)?;
                    let r = validate_groupoid(&g);
                    if !r.is_valid() {
                        return Ok(Outcome::new(
                            report_status(&r),
                            report_summary(&r, ""),
                            json!({ "report": r }),
                        ));
                    }
                    nerve_of_groupoid(&g, o.depth)
                }
            };
            if name == "nerve" {
                nerve_cmd(&x)
            } else {
                kan_cmd(o, &x)
            }
        }
        ("pi1", _) => pi1(o, format::parse_complex(text).map_err(err)?),
        _ => return Err(format!("unsupported input for {name}")),
    })
}

fn validate_two_group(t: &CoherentTwoGroup, searched: bool) -> Outcome {
    let r = validate_coherent(t);
    let isotropy = match unit_isotropy(t) {
        Ok(iso) => json!({
            "order": iso.group.order(),
            "abelian": true,
            "commutators_checked": iso.commutators_checked,
        }),
        Err(e) => json!({ "abelian": false, "error": e.to_string() }),
    };
    Outcome::new(
        report_status(&r),
        report_summary(&r, "coherent"),
        json!({ "report": r, "adjunction_searched": searched, "unit_isotropy": isotropy }),
    )
}

fn validate_xmod(x: &CrossedModule) -> Outcome {
    let r = validate_crossed_module(x);
    let mut result = json!({ "report": r });
    let mut ok = r.is_valid();
    if ok {
        let kc = kernel_center_check(x);
        ok &= kc.central.passed();
        result["kernel_center"] = to_value(&kc);
        if let Some(p) = pfeiffer_vs_interchange(x) {
            result["pfeiffer_vs_interchange"] =
                json!({ "agree": p.agree(), "pfeiffer": p.pfeiffer, "interchange": p.interchange });
        }
    }
    let status = if r.is_structurally_sound() {
        Status::from_pass(ok)
    } else {
        Status::Error
    };
    Outcome::new(status, report_summary(&r, "crossed module"), result)
}

fn bibundle_check(o: &Opts, b: &twogroup::bibundle::Bibundle) -> Outcome {
    let p = validate_principal(b);
    if !p.report.is_structurally_sound() {
        return Outcome::new(Status::Error, report_summary(&p.report, ""), to_value(&p));
    }
    let actions_ok = p
        .report
        .checks
        .iter()
        .filter(|c| c.name != "left-principal")
        .all(|c| c.passed());
    let ok = actions_ok && (!o.require_morita || p.morita);
    let summary = match (p.right_principal, p.morita) {
        (true, true) => "Morita bibundle".to_string(),
        (true, false) => "right principal, not Morita".to_string(),
        _ => report_summary(&p.report, ""),
    };
    Outcome::new(Status::from_pass(ok), summary, to_value(&p))
}

fn arrow_names(g: &FiniteGroupoid, arrows: &[twogroup::groupoid::ArrId]) -> Vec<String> {
    arrows
        .iter()
        .map(|&a| g.arrow_name(a).to_string())
        .collect()
}

fn strictify_cmd(t: &CoherentTwoGroup, extract: bool) -> Outcome {
    let coherence = validate_coherent(t);
    if !coherence.is_valid() {
        return Outcome::new(
            report_status(&coherence),
            format!("input is not coherent: {}", report_summary(&coherence, "")),
            json!({ "coherence": coherence }),
        );
    }
    let verdict = is_semistrict(t);
    let mut result = json!({ "semistrict": verdict });
    if let Ok(c) = associator_cocycle(t) {
        result["associator"] = to_value(&c);
    }
    let s = match strictify(t) {
        Ok(s) => s,
        Err(e) => {
            result["error"] = match &e {
                StrictifyError::ObjectsNotAGroup(m) => {
                    json!({ "kind": "ObjectsNotAGroup", "message": m })
                }
                StrictifyError::NotSemistrict { witness } => {
                    json!({ "kind": "NotSemistrict", "witness": witness })
                }
                StrictifyError::ConnectednessAnalogViolated {
                    conclusion,
                    witness,
                } => {
                    json!({ "kind": "ConnectednessAnalogViolated", "conclusion": conclusion, "witness": witness })
                }
            };
            let kind = result["error"]["kind"]
                .as_str()
                .unwrap_or_default()
                .to_string();
            return Outcome::new(Status::Fail, format!("{kind}: {e}"), result);
        }
    };
    let b = s.strict.base();
    let strict_checks = validate_strict(&s.strict);
    let eq_ok = s.equivalence.checks.iter().all(|c| c.passed());
    result["conclusions"] = to_value(&s.conclusions);
    result["equivalence"] = json!({
        "tensor_constraint": arrow_names(b, &s.equivalence.tensor_constraint),
        "unit_constraint": b.arrow_name(s.equivalence.unit_constraint),
        "checks": s.equivalence.checks,
    });
    result["strict_checks"] = to_value(&strict_checks);
    let mut ok = eq_ok && strict_checks.is_valid();
    if extract {
        let ex = extract_crossed_module(&s.strict);
        let r = validate_crossed_module(&ex.module);
        ok &= r.is_valid();
        result["crossed_module"] = to_value(&CrossedModuleDoc::from_crossed_module(&ex.module));
        result["crossed_module_checks"] = to_value(&r);
        let summary = format!(
            "crossed module with |Γ|={}, |G₀|={}",
            ex.module.gamma.order(),
            ex.module.g0.order()
        );
        return Outcome::new(Status::from_pass(ok), summary, result);
    }
    result["strict"] = to_value(&TwoGroupDoc::from_two_group(&s.strict.to_coherent()));
    Outcome::new(Status::from_pass(ok), "strictified", result)
}

fn xmod_to_two_group(x: &CrossedModule) -> Outcome {
    let r = validate_crossed_module(x);
    if !r.is_valid() {
        return Outcome::new(
            report_status(&r),
            report_summary(&r, ""),
            json!({ "report": r }),
        );
    }
    match to_strict_two_group(x) {
        Ok(s) => {
            let strict_checks = validate_strict(&s);
            let coherent = s.to_coherent();
            let coherence = validate_coherent(&coherent);
            let ok = strict_checks.is_valid() && coherence.is_valid();
            let summary = format!(
                "strict 2-group with {} objects, {} arrows",
                s.base().object_count(),
                s.base().arrow_count()
            );
            Outcome::new(
                Status::from_pass(ok),
                summary,
                json!({
                    "two_group": TwoGroupDoc::from_two_group(&coherent),
                    "strict_checks": strict_checks,
                    "coherence": coherence,
                }),
            )
        }
        Err(e) => Outcome::new(Status::Fail, e.to_string(), Value::Null),
    }
}

fn roundtrip(x: &CrossedModule) -> Outcome {
    let r = validate_crossed_module(x);
    if !r.is_valid() {
        return Outcome::new(
            report_status(&r),
            report_summary(&r, ""),
            json!({ "report": r }),
        );
    }
    let s = match to_strict_two_group(x) {
        Ok(s) => s,
        Err(e) => return Outcome::new(Status::Fail, e.to_string(), Value::Null),
    };
    let strict_checks = validate_strict(&s);
    let back = extract_crossed_module(&s).module;
    let iso = find_crossed_module_isomorphism(x, &back);
    let wreath = arrow_group(&s);
    let kc = kernel_center_check(&back);
    let wreath_ok = wreath.checks.iter().all(|c| c.passed());
    let ok = strict_checks.is_valid() && iso.is_some() && wreath_ok && kc.central.passed();
    let iso_json = iso.as_ref().map(|i| {
        let pairs = |from: &twogroup::group::GroupTable, to: &twogroup::group::GroupTable, m: &[usize]| -> Vec<[String; 2]> {
            from.elements().map(|a| [from.name(a).to_string(), to.name(m[a]).to_string()]).collect()
        };
        json!({ "gamma": pairs(&x.gamma, &back.gamma, &i.gamma), "g0": pairs(&x.g0, &back.g0, &i.g0) })
    });
    let summary = match &iso {
        Some(_) => format!(
            "round trip isomorphic; |Γ|={}, |G₀|={}",
            x.gamma.order(),
            x.g0.order()
        ),
        None => "round trip is not isomorphic to the input".to_string(),
    };
    Outcome::new(
        Status::from_pass(ok),
        summary,
        json!({
            "isomorphism": iso_json,
            "strict_checks": strict_checks,
            "extracted": CrossedModuleDoc::from_crossed_module(&back),
            "wreath_order": wreath.wreath.order(),
            "wreath_checks": wreath.checks,
            "kernel_center": kc,
        }),
    )
}

fn nerve_cmd(x: &TruncatedSimplicialSet) -> Outcome {
    let r = validate_simplicial(x);
    let sizes = x.layer_sizes();
    Outcome::new(
        report_status(&r),
        format!("layers {sizes:?}"),
        json!({ "layer_sizes": sizes, "checks": r, "simplicial": SimplicialDoc::from_simplicial(x) }),
    )
}

fn kan_cmd(o: &Opts, x: &TruncatedSimplicialSet) -> Outcome {
    let r = validate_simplicial(x);
    if !r.is_valid() {
        return Outcome::new(
            report_status(&r),
            report_summary(&r, ""),
            json!({ "checks": r }),
        );
    }
    match kan_check(x, o.kan_n, x.depth) {
        Ok(k) => {
            let summary = match &k.first_failure {
                None => format!("{}-Kan through dimension {}", k.n, k.max_m),
                Some((m, j, faces)) => format!("horn Λ[{m},{j}] fails at ({})", faces.join(", ")),
            };
            Outcome::new(
                Status::from_pass(k.passed),
                summary,
                json!({ "layer_sizes": x.layer_sizes(), "kan": k }),
            )
        }
        Err(e) => Outcome::new(Status::Error, e.to_string(), Value::Null),
    }
}

fn pi1(o: &Opts, c: twogroup::covering::EquivariantComplex) -> Outcome {
    let counts =
        json!({ "vertices": c.vertices.len(), "edges": c.edges.len(), "cells": c.cells.len() });
    let s = match CoveringSpace::new(c.clone()) {
        Ok(s) => s,
        Err(CoveringError::Invalid(names)) => {
            let r = validate_complex(&c);
            return Outcome::new(
                Status::Fail,
                format!("invalid complex: {}", names.join(", ")),
                json!({ "report": r }),
            );
        }
        Err(e) => return Outcome::new(Status::Error, e.to_string(), Value::Null),
    };
    let (pres, gen_loops) = s.pi1_presentation();
    let q = s.quotient();
    let mut result = json!({
        "total": counts,
        "quotient": { "vertices": q.vertices.len(), "edges": q.edges.len(), "cells": q.cells.len() },
        "presentation": pres.to_string(),
        "generator_loops": gen_loops.iter().map(|l| s.format_loop(l)).collect::<Vec<_>>(),
    });
    let mut status = Status::Pass;
    let mut summary = format!("π₁ = {pres}");
    if let Some(w) = &o.loop_word {
        match s.parse_loop(0, w) {
            Ok(l) => {
                let path = s.lift_path(&l, s.basepoint(0)).expect("checked loops lift");
                let d = s.boundary_map(&l).expect("checked loops are closed");
                let fiber_values: Vec<String> = s
                    .fiber(0)
                    .into_iter()
                    .map(|v| {
                        s.gamma()
                            .name(s.boundary_from(&l, v).expect("closed"))
                            .to_string()
                    })
                    .collect();
                result["loop"] = json!({
                    "word": s.format_loop(&l),
                    "lift": path.vertices.iter().map(|&v| s.complex().vertices[v].clone()).collect::<Vec<_>>(),
                    "boundary": s.gamma().name(d),
                    "boundary_from_each_start": fiber_values,
                });
                summary = format!("∂₁({}) = {}", s.format_loop(&l), s.gamma().name(d));
            }
            Err(e) => return Outcome::new(Status::Error, format!("loop: {e}"), result),
        }
    }
    if o.verify_boundary {
        let opts = BoundaryOptions {
            move_budget: o.move_budget,
            ..BoundaryOptions::default()
        };
        let r = verify_boundary_iso(&s, opts);
        status = match r.verdict {
            Verdict::IsoCertified | Verdict::IsoCertifiedRelativeToAssertion => Status::Pass,
            Verdict::Inconclusive => Status::Inconclusive,
            Verdict::Failed => Status::Fail,
        };
        summary = r.summary();
        result["boundary_iso"] = to_value(&r);
    } else if o.loop_word.is_none() {
        let inv = invariance_checks(&s, 2);
        status = Status::from_pass(inv.iter().all(|c| c.passed()));
        result["invariance"] = to_value(&inv);
    }
    Outcome::new(status, summary, result)
}
