//! Human-readable rendering of a report. Same data as the JSON form.

use serde_json::Value;

use crate::Report;

/// Short forms for types, elements and integer sets; `None` for anything
/// else.
fn compact(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes".into() } else { "no".into() }),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(o) if o.contains_key("mod") && o.contains_key("window") => {
            let list = |v: &Value| compact(v).map(|s| s.replace('[', "{").replace(']', "}"));
            let w = &o["window"];
            Some(format!(
                "mod {}; up {}; down {}; window [{}, {}] {}",
                o["mod"],
                list(&o["up"])?,
                list(&o["down"])?,
                w["lo"],
                w["hi"],
                list(&w["members"])?
            ))
        }
        Value::Object(o) => match o.get("kind").and_then(Value::as_str) {
            Some("realized") => Some(format!("tp({})", compact(&o["value"])?)),
            Some("limit") => Some(format!(
                "({}, {} mod {})",
                o["sign"].as_str()?,
                o["res"],
                o["mod"]
            )),
            Some("pair") => Some(format!("<{}, {}>", compact(&o["left"])?, compact(&o["right"])?)),
            _ => None,
        },
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(compact).collect();
            let parts = parts?;
            let line = format!("[{}]", parts.join(", "));
            (line.len() <= 72).then_some(line)
        }
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, val) in o {
                match compact(val) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(val, indent + 2, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match compact(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        render(item, indent + 2, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", compact(other).unwrap_or_default())),
    }
}

pub fn render_report(report: &Report) -> String {
    let mut out = format!(
        "{} {} (schema {}), group {}\n",
        report.tool,
        report.version,
        report.schema,
        compact(&report.group).unwrap_or_else(|| report.group.to_string())
    );
    for t in &report.results {
        let status = serde_json::to_value(&t.status).expect("status");
        out.push_str(&format!("\n[{}] {}: {}\n", t.index, t.op, status.as_str().unwrap_or("?")));
        if let Some(e) = &t.error {
            out.push_str(&format!("  error: {e}\n"));
        }
        if let Some(r) = &t.result {
            render(r, 2, &mut out);
        }
        if let Some(o) = &t.oracle {
            out.push_str("  oracle:\n");
            render(o, 4, &mut out);
        }
    }
    out.push_str(&format!(
        "\n{} task(s), {}, {:.1} ms\n",
        report.results.len(),
        if report.partial { "partial" } else { "complete" },
        report.timings.total_ms
    ));
    out
}
