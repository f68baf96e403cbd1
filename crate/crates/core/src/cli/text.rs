use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", "))
        }
        Value::Object(m) if m.len() == 2 && m.contains_key("delta") && m.contains_key("eps") => {
            format!("({}; {})", join(&m["delta"]), join(&m["eps"]))
        }
        Value::Object(m) => m.iter().map(|(k, x)| format!("{k}={}", scalar(x))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn join(v: &Value) -> String {
    v.as_array()
        .map(|a| a.iter().map(scalar).collect::<Vec<_>>().join(", "))
        .unwrap_or_default()
}

fn table(rows: &[Value]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for row in rows {
        if let Some(m) = row.as_object() {
            for k in m.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|row| columns.iter().map(|c| row.get(c).map(scalar).unwrap_or_default()).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([c.chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: &[String]| -> String {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s}{}", " ".repeat(w - s.chars().count())))
            .collect();
        format!("  {}", padded.join("  ").trim_end())
    };
    let mut out = vec![line(&columns)];
    out.extend(cells.iter().map(|r| line(r)));
    out.join("\n")
}

/// Aligned rendering of a JSON report: scalars as `key: value`, arrays of
/// objects as tables.
pub fn render(v: &Value) -> String {
    let Some(m) = v.as_object() else {
        return scalar(v);
    };
    let mut out = Vec::new();
    let width = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
    for (k, x) in m {
        match x {
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push(format!("{k}:"));
                out.push(table(items));
            }
            Value::Object(inner) if inner.values().any(|y| y.is_object() || y.is_array()) && !inner.contains_key("delta") => {
                out.push(format!("{k}:"));
                for line in render(x).lines() {
                    out.push(format!("  {line}"));
                }
            }
            _ => out.push(format!("{k}:{} {}", " ".repeat(width - k.chars().count()), scalar(x))),
        }
    }
    out.join("\n")
}
