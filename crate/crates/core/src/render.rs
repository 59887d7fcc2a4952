//! Markdown and CSV renderings of a report. Both are pure functions of the
//! report JSON, which stays the source of truth.

use serde_json::{Map, Value};

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn cell(v: &Value) -> String {
    scalar(v).unwrap_or_else(|| v.to_string()).replace('|', "\\|")
}

/// An array renders as a table when every element is an object.
fn as_rows(v: &Value) -> Option<&Vec<Value>> {
    match v {
        Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => Some(items),
        _ => None,
    }
}

fn columns(rows: &[Value]) -> Vec<String> {
    let mut cols: Vec<String> = Vec::new();
    for row in rows {
        for key in row.as_object().expect("rows are objects").keys() {
            if !cols.contains(key) {
                cols.push(key.clone());
            }
        }
    }
    cols
}

fn table(rows: &[Value], out: &mut String) {
    let cols = columns(rows);
    out.push_str(&format!("| {} |\n", cols.join(" | ")));
    out.push_str(&format!("|{}\n", " --- |".repeat(cols.len())));
    for row in rows {
        let obj = row.as_object().expect("rows are objects");
        let cells: Vec<String> = cols.iter().map(|c| obj.get(c).map_or(String::new(), cell)).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out.push('\n');
}

fn object(map: &Map<String, Value>, level: usize, out: &mut String) {
    let mut nested = Vec::new();
    for (key, v) in map {
        match v {
            Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => {
                let parts: Vec<String> = items.iter().map(cell).collect();
                out.push_str(&format!("- **{key}**: [{}]\n", parts.join(", ")));
            }
            v if scalar(v).is_some() => out.push_str(&format!("- **{key}**: {}\n", cell(v))),
            _ => nested.push((key, v)),
        }
    }
    if nested.len() < map.len() {
        out.push('\n');
    }
    for (key, v) in nested {
        out.push_str(&format!("{} {key}\n\n", "#".repeat(level.min(6))));
        value(v, level + 1, out);
    }
}

fn value(v: &Value, level: usize, out: &mut String) {
    if let Some(rows) = as_rows(v) {
        table(rows, out);
        return;
    }
    match v {
        Value::Object(map) => object(map, level, out),
        Value::Array(items) if items.is_empty() => out.push_str("_(none)_\n\n"),
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                out.push_str(&format!("{} [{i}]\n\n", "#".repeat(level.min(6))));
                value(item, level + 1, out);
            }
        }
        other => out.push_str(&format!("{}\n\n", cell(other))),
    }
}

pub fn markdown(report: &Value) -> String {
    let mut out = String::new();
    let command = report.get("command").and_then(Value::as_str).unwrap_or("report");
    out.push_str(&format!("# cone-hodge {command}\n\n"));
    for section in ["inputs", "results", "violations"] {
        out.push_str(&format!("## {section}\n\n"));
        match report.get(section) {
            Some(v) => value(v, 3, &mut out),
            None => out.push_str("_(none)_\n\n"),
        }
    }
    out
}

/// The first table-shaped array in the results, searched depth first.
fn first_rows(v: &Value) -> Option<&Vec<Value>> {
    if let Some(rows) = as_rows(v) {
        return Some(rows);
    }
    match v {
        Value::Object(map) => map.values().find_map(first_rows),
        Value::Array(items) => items.iter().find_map(first_rows),
        _ => None,
    }
}

/// CSV of the primary table in the results; `None` when there is none.
pub fn csv(report: &Value) -> Option<String> {
    let rows = first_rows(report.get("results")?)?;
    let cols = columns(rows);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&cols).ok()?;
    for row in rows {
        let obj = row.as_object()?;
        let rec: Vec<String> = cols
            .iter()
            .map(|c| obj.get(c).map_or(String::new(), |v| scalar(v).unwrap_or_else(|| v.to_string())))
            .collect();
        w.write_record(&rec).ok()?;
    }
    String::from_utf8(w.into_inner().ok()?).ok()
}
