use serde::Serialize;
use serde_json::Value;

use crate::config::{OutputFormat, RunConfig};

/// The serialized result of one command.
#[derive(Serialize)]
pub struct ReportEnvelope<'a> {
    pub command: &'a str,
    pub config: &'a RunConfig,
    /// Seconds since the Unix epoch; not part of the comparison surface.
    pub timestamp: u64,
    pub payload: &'a Value,
    pub discrepancy_notices: &'a [String],
}

pub fn render(env: &ReportEnvelope, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(env).expect("envelope serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => text(env),
        OutputFormat::Csv => csv_table(env.payload),
    }
}

/// Leaf values keyed by dotted paths, in document order.
pub fn flatten(v: &Value) -> Vec<(String, String)> {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
        let join = |k: &str| if prefix.is_empty() { k.to_owned() } else { format!("{prefix}.{k}") };
        match v {
            Value::Object(m) => m.iter().for_each(|(k, x)| walk(&join(k), x, out)),
            Value::Array(a) => a.iter().enumerate().for_each(|(i, x)| walk(&join(&i.to_string()), x, out)),
            Value::String(s) => out.push((prefix.to_owned(), s.clone())),
            Value::Null => out.push((prefix.to_owned(), String::new())),
            other => out.push((prefix.to_owned(), other.to_string())),
        }
    }
    let mut out = Vec::new();
    walk("", v, &mut out);
    out
}

fn text(env: &ReportEnvelope) -> String {
    let mut s = format!("command: {}\n", env.command);
    for (k, v) in flatten(env.payload) {
        s.push_str(&format!("{k} = {v}\n"));
    }
    for n in env.discrepancy_notices {
        s.push_str(&format!("notice: {n}\n"));
    }
    s
}

/// Density reports become one row per residue class, projected share and
/// sampled field; other payloads become `path,value` pairs.
fn csv_table(payload: &Value) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let str_of = |v: &Value| match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    };
    if payload["kind"] == "density" {
        w.write_record(["record", "key", "count", "fraction", "relevant_solution"]).unwrap();
        for c in payload["classes"].as_array().into_iter().flatten() {
            w.write_record(["class", &str_of(&c["residue"]), &str_of(&c["count"]), &str_of(&c["fraction"]), ""]).unwrap();
        }
        w.write_record(["total", "", &str_of(&payload["squarefree_total"]), "", ""]).unwrap();
        for key in ["projected_d", "projected_d_prime"] {
            w.write_record([key, "", "", &str_of(&payload[key]), ""]).unwrap();
        }
        for r in payload["sampled_membership"].as_array().into_iter().flatten() {
            w.write_record([
                "membership",
                &str_of(&r["d"]),
                &str_of(&r["solutions"]),
                "",
                &str_of(&r["has_relevant_solution_at_bound"]),
            ])
            .unwrap();
        }
    } else {
        w.write_record(["path", "value"]).unwrap();
        for (k, v) in flatten(payload) {
            w.write_record([k, v]).unwrap();
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 input")
}
