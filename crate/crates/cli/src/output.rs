//! Rendering of `{meta, rows}` tables as JSON, CSV or Markdown, plus the
//! presentation-only decimal view of field elements.

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use tl_core::exactnum::{CycField, CycNum};

use crate::config::Format;
use crate::error::CliError;

/// A field element printed symbolically (in powers of `z = exp(pi i / l)`) and as a
/// decimal approximation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Scalar {
    pub symbolic: String,
    pub approx: String,
}

impl Scalar {
    pub fn of(x: &CycNum) -> Self {
        Self { symbolic: x.to_string(), approx: approx_string(x) }
    }
}

pub fn approx_string(x: &CycNum) -> String {
    let (re, im) = x.approx();
    let clean = |v: f64| if v.abs() < 1e-12 { 0.0 } else { v };
    let (re, im) = (clean(re), clean(im));
    if im == 0.0 {
        format!("{re:.6}")
    } else {
        format!("{re:.6}{}{:.6}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub level: u32,
    #[serde(rename = "q-description")]
    pub q_description: String,
    pub delta: Scalar,
}

impl Meta {
    pub fn for_field(field: &Arc<CycField>) -> Self {
        let l = field.level();
        Self {
            level: l,
            q_description: format!("q = -exp(pi i/{l}), q^2 a primitive root of unity of order {l}; scalars in Q(z), z = exp(pi i/{l})"),
            delta: Scalar::of(&field.delta()),
        }
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn headers(rows: &[Value]) -> Vec<String> {
    rows.first().and_then(Value::as_object).map(|o| o.keys().cloned().collect()).unwrap_or_default()
}

pub fn render(meta: &Value, rows: &[Value], format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&json!({ "meta": meta, "rows": rows }))? + "\n"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let cols = headers(rows);
            if !cols.is_empty() {
                w.write_record(&cols)?;
            }
            for r in rows {
                w.write_record(cols.iter().map(|c| cell_text(r.get(c).unwrap_or(&Value::Null))))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Serialize(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Serialize(e.to_string()))
        }
        Format::Markdown => {
            let mut out = String::new();
            if let Some(m) = meta.as_object() {
                for (k, v) in m {
                    let shown = match v {
                        Value::Object(o) => o.iter().map(|(a, b)| format!("{a}: {}", cell_text(b))).collect::<Vec<_>>().join(", "),
                        other => cell_text(other),
                    };
                    out.push_str(&format!("- **{k}**: {shown}\n"));
                }
                out.push('\n');
            }
            let cols = headers(rows);
            if !cols.is_empty() {
                out.push_str(&format!("| {} |\n", cols.join(" | ")));
                out.push_str(&format!("|{}\n", cols.iter().map(|_| "---|").collect::<String>()));
                for r in rows {
                    let cells: Vec<String> = cols.iter().map(|c| cell_text(r.get(c).unwrap_or(&Value::Null))).collect();
                    out.push_str(&format!("| {} |\n", cells.join(" | ")));
                }
            }
            Ok(out)
        }
    }
}

pub fn to_rows<T: Serialize>(rows: &[T]) -> Result<Vec<Value>, CliError> {
    rows.iter().map(|r| serde_json::to_value(r).map_err(CliError::from)).collect()
}

pub fn object(pairs: impl IntoIterator<Item = (&'static str, Value)>) -> Value {
    Value::Object(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect::<Map<_, _>>())
}
