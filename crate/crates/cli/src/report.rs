use dala_core::pbw::Truncation;
use serde_json::{json, Map, Value};

use crate::config::RunConfig;

pub const SCHEMA_ID: &str = "dala-report/1";
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

/// What a command produced, before the header is attached.
#[derive(Debug, Default)]
pub struct Outcome {
    pub result: Map<String, Value>,
    pub failures: Vec<String>,
    pub truncation: Option<Truncation>,
    pub variant: Option<&'static str>,
    pub lambda: Option<Value>,
}

impl Outcome {
    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.into(), value.into());
    }

    /// Records a failed check; returns `ok` so it can gate further work.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        if !ok {
            self.failures.push(what());
        }
        ok
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn truncation_json(t: &Truncation) -> Value {
    json!({ "maxlen": t.max_len, "t1": [t.t1.0, t.t1.1], "t2window": t.t2, "heightcut": t.height_cut })
}

pub fn assemble(command: &str, cfg: &RunConfig, out: &Outcome) -> Value {
    let mut config = Map::new();
    config.insert("algebra".into(), cfg.label.clone().into());
    config.insert("seed".into(), cfg.seed.into());
    if let Some(v) = out.variant {
        config.insert("variant".into(), v.into());
    }
    if let Some(p) = &cfg.parabolic {
        config.insert("parabolic".into(), p.indices().collect::<Vec<_>>().into());
    }
    if let Some(l) = &out.lambda {
        config.insert("lambda".into(), l.clone());
    }
    if let Some(t) = &out.truncation {
        config.insert("truncation".into(), truncation_json(t));
    }
    if let Some(f) = cfg.fault_name() {
        config.insert("fault".into(), f.into());
    }
    json!({
        "schema": SCHEMA_ID,
        "command": command,
        "config": config,
        "passed": out.passed(),
        "result": out.result,
        "failures": out.failures,
    })
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, rows);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        Value::Array(items) => rows.push((prefix.into(), items.iter().map(scalar).collect::<Vec<_>>().join(", "))),
        other => rows.push((prefix.into(), scalar(other))),
    }
}

/// Two-column text rendering of the same report value.
pub fn table(report: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", report, &mut rows);
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let pad = width - k.chars().count();
        out.push_str(&format!("{k}{}  {v}\n", " ".repeat(pad)));
    }
    out
}
