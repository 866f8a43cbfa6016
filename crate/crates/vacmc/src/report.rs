//! Machine-readable command reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Inputs {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub model: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub formula: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sub: Option<String>,
    /// Second structure for relational commands.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub other: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub status: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub route: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub bounds: Option<Value>,
    /// Rendered structure, formula or table.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub output: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub seed: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub inputs: Inputs,
    pub result: Outcome,
    pub meta: Meta,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let r = &self.result;
        let mut out = String::new();
        if let Some(s) = &r.status {
            out += &format!("status: {}\n", s);
        }
        if let Some(v) = r.value.as_ref().filter(|v| !v.is_array()) {
            let v = match v {
                Value::String(s) => s.clone(),
                v => v.to_string(),
            };
            out += &format!("value: {}\n", v);
        }
        if let Some(route) = &r.route {
            out += &format!("route: {}\n", route);
        }
        if let Some(b) = &r.bounds {
            out += &format!("bounds: {}\n", b);
        }
        if let Some(w) = &r.witness {
            out += "witness:\n";
            out += &text_witness(w, "  ");
        }
        if let Some(o) = &r.output {
            out += o;
            if !o.ends_with('\n') {
                out.push('\n');
            }
        }
        out
    }
}

fn text_witness(v: &Value, indent: &str) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) if s.contains('\n') => {
                    let body: String = s.lines().map(|l| format!("{}    {}\n", indent, l)).collect();
                    format!("{}{}:\n{}", indent, k, body)
                }
                Value::String(s) => format!("{}{}: {}\n", indent, k, s),
                other => format!("{}{}: {}\n", indent, k, other),
            })
            .collect(),
        other => format!("{}{}\n", indent, other),
    }
}
