//! Report envelope and canonical serialization.

use serde_json::{json, Map, Value};

pub const TOOL_NAME: &str = "quadrics";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Flags left out of the recorded command line: they do not change the
/// report, and recording them would make thread counts observable.
const UNRECORDED: [&str; 2] = ["--threads", "--out"];

/// `argv` with the program name normalized and unrecorded flags removed.
pub fn recorded_command_line(argv: &[String]) -> Vec<String> {
    let mut out = vec![TOOL_NAME.to_string()];
    let mut skip = false;
    for a in argv.iter().skip(1) {
        if skip {
            skip = false;
            continue;
        }
        if UNRECORDED.contains(&a.as_str()) {
            skip = true;
            continue;
        }
        if UNRECORDED.iter().any(|f| a.starts_with(&format!("{f}="))) {
            continue;
        }
        out.push(a.clone());
    }
    out
}

pub struct Envelope<'a> {
    pub command: &'a str,
    pub command_line: &'a [String],
    pub digest: String,
    pub field: Value,
    pub q: Option<u64>,
    pub result: Value,
}

impl Envelope<'_> {
    pub fn into_value(self) -> Value {
        json!({
            "tool": {"name": TOOL_NAME, "version": TOOL_VERSION},
            "command": self.command,
            "command_line": self.command_line,
            "input": {"digest": self.digest, "field": self.field},
            "q": self.q,
            "result": self.result,
        })
    }
}

fn sorted(v: &Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut keys: Vec<&String> = m.keys().collect();
            keys.sort();
            let mut out = Map::new();
            for k in keys {
                out.insert(k.clone(), sorted(&m[k]));
            }
            Value::Object(out)
        }
        Value::Array(a) => Value::Array(a.iter().map(sorted).collect()),
        other => other.clone(),
    }
}

/// Pretty JSON with object keys in sorted order and a trailing newline.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&sorted(v)).expect("JSON value serializes");
    s.push('\n');
    s
}
