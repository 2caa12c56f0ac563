use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: &str = "twogroup-report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Pass,
    Fail,
    Error,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::Inconclusive => 3,
        }
    }

    pub fn from_pass(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub input: Option<String>,
    pub input_checksum: Option<String>,
    pub status: Status,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
}

pub fn json(r: &Report) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}

pub fn text(r: &Report) -> String {
    let mut out = format!("{} {}\n", r.command, r.input.as_deref().unwrap_or("-"));
    if let Some(c) = &r.input_checksum {
        out.push_str(&format!("checksum {c}\n"));
    }
    out.push_str(&format!(
        "schema {}\nstatus {}\n{}\n",
        r.schema_version,
        serde_json::to_value(r.status).unwrap().as_str().unwrap(),
        r.summary
    ));
    if let Some(e) = &r.error {
        out.push_str(&format!("error: {e}\n"));
    }
    let mut lines = Vec::new();
    collect_checks(&r.result, "", &mut lines);
    for l in lines {
        out.push_str(&l);
        out.push('\n');
    }
    out
}

/// Every `{name, violations, witnesses}` object, depth first.
fn collect_checks(v: &Value, prefix: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(map) => {
            if let (Some(Value::String(name)), Some(Value::Number(n))) =
                (map.get("name"), map.get("violations"))
            {
                let n = n.as_u64().unwrap_or(0);
                let status = if n == 0 { "PASS" } else { "FAIL" };
                let mut line = format!("  {status} {prefix}{name}");
                if n > 0 {
                    line.push_str(&format!(" ({n} violations"));
                    if let Some(Value::Array(w)) = map.get("witnesses") {
                        if let Some(first) = w.first() {
                            line.push_str(&format!(", first {first}"));
                        }
                    }
                    line.push(')');
                }
                out.push(line);
                return;
            }
            for (k, v) in map {
                collect_checks(v, &format!("{prefix}{k}/"), out);
            }
        }
        Value::Array(items) => {
            for item in items {
                collect_checks(item, prefix, out);
            }
        }
        _ => {}
    }
}
