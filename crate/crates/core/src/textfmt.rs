//! Pretty JSON output that keeps short scalar arrays (voxel triples, cell
//! lists) on one line so documents stay diffable.

use serde::Serialize;
use serde_json::Value;
use std::fmt::Write;

pub fn to_string<T: Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("serializable document");
    let mut out = String::new();
    write_value(&mut out, &value, 0);
    out.push('\n');
    out
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|i| !i.is_object() && !i.is_array()),
        _ => false,
    }
}

fn is_triple_list(v: &Value) -> bool {
    match v {
        Value::Array(items) => !items.is_empty() && items.iter().all(is_flat),
        _ => false,
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(_) if is_flat(v) => out.push_str(&serde_json::to_string(v).unwrap()),
        Value::Array(items) if is_triple_list(v) => {
            // Voxel lists: several triples per line.
            out.push_str("[\n");
            for (i, chunk) in items.chunks(8).enumerate() {
                if i > 0 {
                    out.push_str(",\n");
                }
                out.push_str(&pad);
                let parts: Vec<String> = chunk
                    .iter()
                    .map(|c| serde_json::to_string(c).unwrap())
                    .collect();
                out.push_str(&parts.join(", "));
            }
            let _ = write!(out, "\n{}]", "  ".repeat(indent));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(",\n");
                }
                out.push_str(&pad);
                write_value(out, item, indent + 1);
            }
            let _ = write!(out, "\n{}]", "  ".repeat(indent));
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                if i > 0 {
                    out.push_str(",\n");
                }
                let _ = write!(out, "{pad}{}: ", serde_json::to_string(k).unwrap());
                write_value(out, item, indent + 1);
            }
            let _ = write!(out, "\n{}}}", "  ".repeat(indent));
        }
        scalar => out.push_str(&serde_json::to_string(scalar).unwrap()),
    }
}
