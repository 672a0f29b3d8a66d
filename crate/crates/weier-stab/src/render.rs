//! Key/value rendering of command output for `--format table`.
//!
//! The input is the same ordered JSON document the `json` format prints;
//! this just lays it out as indented lines for reading in a terminal.

use serde_json::Value;

pub fn table(value: &Value) -> String {
    let mut out = String::new();
    match value {
        Value::Object(map) => {
            for (key, child) in map {
                entry(key, child, 0, &mut out);
            }
        }
        other => leaf_line(&scalar(other), 0, &mut out),
    }
    out.trim_end().to_string()
}

fn entry(label: &str, value: &Value, indent: usize, out: &mut String) {
    match value {
        Value::Object(map) => {
            leaf_line(&format!("{label}:"), indent, out);
            for (key, child) in map {
                entry(key, child, indent + 1, out);
            }
        }
        Value::Array(items) if items.is_empty() => {
            leaf_line(&format!("{label}: []"), indent, out);
        }
        Value::Array(items) => {
            leaf_line(&format!("{label}:"), indent, out);
            for item in items {
                match item {
                    Value::Object(map) => {
                        leaf_line("-", indent + 1, out);
                        for (key, child) in map {
                            entry(key, child, indent + 2, out);
                        }
                    }
                    other => leaf_line(&format!("- {}", scalar(other)), indent + 1, out),
                }
            }
        }
        other => leaf_line(&format!("{label}: {}", scalar(other)), indent, out),
    }
}

fn scalar(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn leaf_line(text: &str, indent: usize, out: &mut String) {
    for _ in 0..indent {
        out.push_str("  ");
    }
    out.push_str(text);
    out.push('\n');
}
