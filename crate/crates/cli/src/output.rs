//! Result documents: JSON or flattened `key: value` text.

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

/// `command`, `input_digest`, `result` and `certificate`, in that order.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultDocument {
    pub command: String,
    pub input_digest: String,
    pub result: Value,
    pub certificate: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

impl ResultDocument {
    pub fn new(command: &str, inputs: &[&[u8]], result: Value, certificate: Value) -> Self {
        ResultDocument { command: command.to_string(), input_digest: digest(inputs), result, certificate }
    }

    pub fn to_value(&self) -> Value {
        let mut map = Map::new();
        map.insert("command".into(), Value::String(self.command.clone()));
        map.insert("input_digest".into(), Value::String(self.input_digest.clone()));
        map.insert("result".into(), self.result.clone());
        map.insert("certificate".into(), self.certificate.clone());
        Value::Object(map)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("json values serialize");
                s.push('\n');
                s
            }
            OutputFormat::Text => {
                let mut out = String::new();
                flatten(&mut out, "", &self.to_value());
                out
            }
        }
    }
}

/// SHA-256 over the inputs in order, each prefixed by its byte length.
pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_be_bytes());
        h.update(bytes);
    }
    let hex: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Object(_) => false,
        Value::Array(items) => items.iter().all(is_inline),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn flatten(out: &mut String, prefix: &str, v: &Value) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(out, &key(k), child);
            }
        }
        Value::Array(items) if !is_inline(v) => {
            for (i, child) in items.iter().enumerate() {
                flatten(out, &format!("{prefix}[{i}]"), child);
            }
        }
        _ => {
            out.push_str(prefix);
            out.push_str(": ");
            out.push_str(&inline(v));
            out.push('\n');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn text_rendering_flattens_keys() {
        let doc = ResultDocument::new(
            "split",
            &[b"abc"],
            json!({"indices": [1, -1], "points": [{"at": "0", "trace": "1/2"}]}),
            json!({"B": [["1", "x"], ["0", "1"]]}),
        );
        let text = doc.render(OutputFormat::Text);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "command: split");
        assert!(lines[1].starts_with("input_digest: sha256:"));
        assert_eq!(&lines[2..], ["result.indices: [1, -1]", "result.points[0].at: 0", "result.points[0].trace: 1/2", "certificate.B: [[1, x], [0, 1]]"]);
    }

    #[test]
    fn json_keeps_field_order() {
        let doc = ResultDocument::new("h0", &[b""], json!({"z": 1, "a": 2}), json!({}));
        let text = doc.render(OutputFormat::Json);
        let (c, d, r) = (text.find("command").unwrap(), text.find("input_digest").unwrap(), text.find("result").unwrap());
        assert!(c < d && d < r);
        assert!(text.find("\"z\"").unwrap() < text.find("\"a\"").unwrap());
    }

    #[test]
    fn digest_separates_inputs() {
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
        assert_eq!(digest(&[b"x"]), digest(&[b"x"]));
        // Empty input: SHA-256 of eight zero length bytes.
        assert_eq!(digest(&[b""]).len(), "sha256:".len() + 64);
    }
}
