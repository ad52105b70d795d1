use std::collections::BTreeMap;
use std::io::{self, IsTerminal, Write};

use serde::Serialize;
use serde_json::Value;

/// Echo of the request inside each output record.
#[derive(Debug, Clone, Serialize)]
pub struct QueryEcho {
    pub command: &'static str,
    pub generators: Vec<u64>,
    pub p: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<i64>,
}

/// One JSON-lines record. Numbers that can exceed 64 bits are decimal
/// strings.
#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    pub query: QueryEcho,
    pub value: Value,
    pub provenance: &'static str,
    pub agree: Option<bool>,
    pub ms: f64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub results: BTreeMap<&'static str, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<(u64, u64)>>,
}

#[derive(Debug, Clone, Copy)]
pub struct Sink {
    pub json: bool,
}

impl Sink {
    pub fn new(force_json: bool) -> Self {
        Self {
            json: force_json || !io::stdout().is_terminal(),
        }
    }

    pub fn line(&self, text: &str) {
        let mut out = io::stdout().lock();
        // a closed pipe is not an error worth reporting
        let _ = writeln!(out, "{text}");
    }

    pub fn json<T: Serialize>(&self, value: &T) {
        self.line(&serde_json::to_string(value).expect("records serialize"));
    }

    pub fn record(&self, record: &OutputRecord) {
        if self.json {
            self.json(record);
        } else {
            self.line(&pretty(record));
        }
    }
}

fn show(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(show).collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn pretty(r: &OutputRecord) -> String {
    let q = &r.query;
    let gens: Vec<String> = q.generators.iter().map(u64::to_string).collect();
    let mut params = format!("p={}", q.p);
    if let Some(lambda) = q.lambda {
        params.push_str(&format!(", lambda={lambda}"));
    }
    if let Some(mu) = q.mu {
        params.push_str(&format!(", mu={mu}"));
    }
    let mut text = format!(
        "{}({}; {}) = {}  [{}, {:.3} ms]",
        q.command,
        gens.join(","),
        params,
        show(&r.value),
        r.provenance,
        r.ms
    );
    if let Some(agree) = r.agree {
        let paths: Vec<&str> = r.results.keys().copied().collect();
        text.push_str(&format!("\n  paths {}: {}", paths.join(", "), if agree { "agree" } else { "DISAGREE" }));
        if !agree {
            for (path, v) in &r.results {
                text.push_str(&format!("\n  {path}: {}", show(v)));
            }
        }
    }
    text
}
