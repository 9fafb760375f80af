use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Result of one command before formatting.
#[derive(Debug, Default)]
pub struct Outcome {
    pub payload: Value,
    pub text: String,
    pub csv: Option<String>,
    pub notes: Vec<String>,
    pub exit: i32,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Wraps a payload; the hash covers the compact serialisation of the payload only.
pub fn envelope(command: &str, base: Value, outcome: &Outcome, timing_ms: Option<f64>) -> Value {
    let compact = serde_json::to_string(&outcome.payload).expect("serialisable");
    let mut env = json!({
        "tool": "betanum",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "base": base,
        "notes": outcome.notes,
        "payload": outcome.payload,
        "payload_sha256": sha256_hex(compact.as_bytes()),
    });
    if let Some(ms) = timing_ms {
        env["timing_ms"] = json!(ms);
    }
    env
}

pub fn csv_string(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
