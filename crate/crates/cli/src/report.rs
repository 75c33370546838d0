use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: Status,
    pub citation: String,
}

/// Machine-readable result of one command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub input_digest: String,
    pub command: String,
    pub payload: Value,
    pub checks: Vec<CheckEntry>,
}

impl Report {
    pub fn new(command: &str, digest: String, payload: Value) -> Report {
        Report {
            version: env!("CARGO_PKG_VERSION").to_string(),
            input_digest: digest,
            command: command.to_string(),
            payload,
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool, citation: impl Into<String>) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(CheckEntry { name: name.into(), status, citation: citation.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Hex SHA-256 over the given inputs, each length-prefixed.
pub fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let mut r = Report::new("rank", digest(&[b"a", b"b"]), serde_json::json!({"rank": 4}));
        r.check("rank is an integer", true, "rank formula");
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(back.all_pass());
    }

    #[test]
    fn digest_separates_parts() {
        assert_ne!(digest(&[b"ab", b"c"]), digest(&[b"a", b"bc"]));
        assert_eq!(digest(&[b"x"]).len(), 64);
    }
}
