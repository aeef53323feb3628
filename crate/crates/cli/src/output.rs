use serde_json::Value;

/// Prints a record as pretty JSON, or as indented `key: value` lines.
pub fn print(record: &Value, json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(record).expect("values serialize"));
    } else {
        let mut out = String::new();
        text(record, 0, &mut out);
        print!("{out}");
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(o) => {
            // complex numbers on one line
            let (re, im) = (o.get("re")?, o.get("im")?);
            (o.len() == 2).then(|| format!("{re} {} {}i", if im.to_string().starts_with('-') { "-" } else { "+" }, im.to_string().trim_start_matches('-')))
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(_) => None,
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}[{i}]\n"));
                        text(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn complex_values_render_inline() {
        let mut out = String::new();
        text(&json!({"value": {"re": 1.5, "im": -2.0}, "pass": true}), 0, &mut out);
        assert_eq!(out, "pass: true\nvalue: 1.5 - 2.0i\n");
    }

    #[test]
    fn nested_records_indent() {
        let mut out = String::new();
        text(&json!({"cases": [{"a": 1}, {"a": 2}]}), 0, &mut out);
        assert_eq!(out, "cases:\n  [0]\n    a: 1\n  [1]\n    a: 2\n");
    }
}
