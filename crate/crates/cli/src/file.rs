//! The on-disk certificate: canonical JSON (sorted keys, `"p/q"` rationals) plus a SHA-256 digest.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use gw_core::brauer::MaximalSubfieldCertificate;
use gw_core::solver::InstanceJson;
use gw_core::{Obstruction, SolutionCertificate};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Payload {
    Solution(Box<SolutionCertificate>),
    Obstruction(Obstruction),
    MaximalSubfield(Box<MaximalSubfieldCertificate>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub version: String,
    pub instance: InstanceJson,
    pub payload: Payload,
    /// `sha256:` followed by the hex digest of the canonical `{instance, payload, version}`.
    pub checksum: String,
}

fn sorted(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sorted(v))).collect::<Map<_, _>>())
        }
        Value::Array(xs) => Value::Array(xs.into_iter().map(sorted).collect()),
        other => other,
    }
}

/// Compact JSON with object keys sorted at every level.
pub fn canonical<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("certificate types serialize");
    serde_json::to_string(&sorted(v)).expect("values serialize")
}

/// Pretty-printed canonical JSON, as written to files and standard output.
pub fn canonical_pretty<T: Serialize>(x: &T) -> String {
    let v = serde_json::to_value(x).expect("certificate types serialize");
    serde_json::to_string_pretty(&sorted(v)).expect("values serialize")
}

fn digest(version: &str, instance: &InstanceJson, payload: &Payload) -> String {
    let body = serde_json::json!({ "instance": instance, "payload": payload, "version": version });
    format!("sha256:{}", hex::encode(Sha256::digest(canonical(&body).as_bytes())))
}

impl CertificateFile {
    pub fn new(instance: InstanceJson, payload: Payload) -> Self {
        let checksum = digest(FORMAT_VERSION, &instance, &payload);
        CertificateFile { version: FORMAT_VERSION.into(), instance, payload, checksum }
    }

    pub fn checksum_matches(&self) -> bool {
        digest(&self.version, &self.instance, &self.payload) == self.checksum
    }

    pub fn to_text(&self) -> String {
        canonical_pretty(self) + "\n"
    }

    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}
