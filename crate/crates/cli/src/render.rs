//! Text rendering of JSON reports. Every line is derived from the JSON value,
//! so the two output modes carry the same information.

use serde_json::Value;

pub fn json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports are plain data");
    s.push('\n');
    s
}

pub fn text(value: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = value {
        // consecutive top-level verdicts share one line: `a: yes; b: no`
        let mut verdicts: Vec<String> = Vec::new();
        for (key, v) in map {
            if v.is_boolean() {
                verdicts.push(format!("{key}: {}", scalar(v)));
                continue;
            }
            flush_verdicts(&mut out, &mut verdicts);
            write_entry(&mut out, key, v);
        }
        flush_verdicts(&mut out, &mut verdicts);
    } else {
        out.push_str(&scalar(value));
        out.push('\n');
    }
    out
}

fn flush_verdicts(out: &mut String, verdicts: &mut Vec<String>) {
    if !verdicts.is_empty() {
        out.push_str(&verdicts.join("; "));
        out.push('\n');
        verdicts.clear();
    }
}

fn write_entry(out: &mut String, key: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                write_entry(out, &format!("{key}.{k}"), inner);
            }
        }
        Value::Array(items) if items.iter().all(Value::is_array) && !items.is_empty() => {
            out.push_str(key);
            out.push_str(":\n");
            for row in items {
                out.push_str("  ");
                out.push_str(&scalar(row));
                out.push('\n');
            }
        }
        _ => {
            out.push_str(key);
            out.push_str(": ");
            out.push_str(&scalar(v));
            out.push('\n');
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Bool(true) => "yes".into(),
        Value::Bool(false) => "no".into(),
        Value::Null => "n/a".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(scalar).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
