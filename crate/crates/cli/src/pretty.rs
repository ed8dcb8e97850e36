//! Plain-text rendering of a report.

use serde_json::Value;

use crate::document::ReportDocument;

const MAX_INLINE: usize = 8;

pub fn render(r: &ReportDocument) -> String {
    let mut rows: Vec<(String, String)> = vec![
        ("command".into(), r.command.clone()),
        ("status".into(), format!("{:?} (exit {})", r.status, r.exit_code).to_lowercase()),
        ("input digest".into(), r.input_digest.clone()),
    ];
    if let Some(s) = r.seed {
        rows.push(("seed".into(), s.to_string()));
    }
    rows.push(("wall time".into(), format!("{} ms", r.wall_time_ms)));
    if let Some(e) = &r.error {
        rows.push(("error".into(), e.clone()));
    }
    flatten("", &r.results, &mut rows);
    for (i, c) in r.certificates.iter().enumerate() {
        let state = match c.verify() {
            Ok(()) => "ok".to_string(),
            Err(why) => format!("FAILED: {why}"),
        };
        rows.push((format!("certificate {i}"), format!("{} {state}", c.kind())));
    }
    for u in &r.upper_bound_only {
        rows.push(("upper bound only".into(), u.clone()));
    }
    for l in &r.log {
        rows.push(("log".into(), l.clone()));
    }
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Null => {}
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&key(k), x, rows);
            }
        }
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) && items.len() <= MAX_INLINE => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            rows.push((prefix.to_string(), format!("[{}]", parts.join(", "))));
        }
        Value::Array(items) => rows.push((prefix.to_string(), format!("[{} items]", items.len()))),
        x => rows.push((prefix.to_string(), scalar(x))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}
