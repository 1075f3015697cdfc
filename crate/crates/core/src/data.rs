//! Shipped data files and their integrity checks.
//!
//! Each file is a JSON object carrying a `sha256` field: the hex digest of
//! the canonical serialization (sorted keys, no whitespace) of the object with
//! that field removed. Files are embedded at build time; setting
//! `NIELSEN_DATA_DIR` makes the loaders read `<dir>/<name>` instead.

use std::path::PathBuf;

use serde_json::Value;
use sha2::{Digest, Sha256};
use thiserror::Error;

pub const DATA_DIR_ENV: &str = "NIELSEN_DATA_DIR";

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{file}: malformed JSON: {source}")]
    Json { file: String, source: serde_json::Error },
    #[error("{file}: missing sha256 field")]
    MissingChecksum { file: String },
    #[error("{file}: checksum mismatch (stored {stored}, computed {computed})")]
    ChecksumMismatch { file: String, stored: String, computed: String },
    #[error("{file}: {message}")]
    Invalid { file: String, message: String },
}

/// Canonical JSON text: object keys sorted, compact separators.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_canonical(v, &mut out);
    out
}

fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).expect("string serializes"));
                out.push(':');
                write_canonical(&map[k.as_str()], out);
            }
            out.push('}');
        }
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(x, out);
            }
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

/// Digest of `v` with any top-level `sha256` field ignored.
pub fn content_digest(v: &Value) -> String {
    let mut stripped = v.clone();
    if let Value::Object(map) = &mut stripped {
        map.remove("sha256");
    }
    hex::encode(Sha256::digest(canonical_json(&stripped).as_bytes()))
}

/// Parses `text` and checks its stored digest.
pub fn parse_verified(file: &str, text: &str) -> Result<Value, DataError> {
    let v: Value = serde_json::from_str(text).map_err(|source| DataError::Json { file: file.to_string(), source })?;
    let stored = v
        .get("sha256")
        .and_then(Value::as_str)
        .ok_or_else(|| DataError::MissingChecksum { file: file.to_string() })?
        .to_string();
    let computed = content_digest(&v);
    if stored != computed {
        return Err(DataError::ChecksumMismatch { file: file.to_string(), stored, computed });
    }
    Ok(v)
}

/// Text of a data file: from `NIELSEN_DATA_DIR` when set, else the embedded copy.
pub fn read_data_file(name: &str, embedded: &'static str) -> Result<String, DataError> {
    match std::env::var_os(DATA_DIR_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join(name);
            std::fs::read_to_string(&path).map_err(|source| DataError::Io { path, source })
        }
        None => Ok(embedded.to_string()),
    }
}
