//! Flag/file configuration merging.
//!
//! Every subcommand accepts `--config <path>` pointing at a flat JSON object;
//! command-line flags override file values. The fully resolved configuration
//! is hashed (SHA-256 of its canonical JSON form) into every output file so
//! results can be traced back to their exact inputs.

use std::path::Path;

use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

pub struct Cfg {
    file: Map<String, Value>,
    /// Resolved key → value, accumulated as lookups happen.
    resolved: Map<String, Value>,
}

impl Cfg {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let file = match path {
            None => Map::new(),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::Usage(format!("cannot read config {}: {e}", p.display()))
                })?;
                let value: Value = serde_json::from_str(&text).map_err(|e| {
                    CliError::Usage(format!("config {} is not valid JSON: {e}", p.display()))
                })?;
                match value {
                    Value::Object(map) => map,
                    _ => {
                        return Err(CliError::Usage(format!(
                            "config {} must be a JSON object",
                            p.display()
                        )))
                    }
                }
            }
        };
        Ok(Cfg { file, resolved: Map::new() })
    }

    fn lookup(&self, key: &str) -> Option<&Value> {
        self.file.get(key)
    }

    pub fn f64(&mut self, key: &str, flag: Option<f64>, default: Option<f64>) -> Result<f64, CliError> {
        let v = match flag {
            Some(v) => v,
            None => match self.lookup(key) {
                Some(raw) => raw.as_f64().ok_or_else(|| {
                    CliError::Usage(format!("config key `{key}` must be a number"))
                })?,
                None => default
                    .ok_or_else(|| CliError::Usage(format!("missing required parameter `{key}`")))?,
            },
        };
        if !v.is_finite() {
            return Err(CliError::Usage(format!("parameter `{key}` must be finite")));
        }
        self.resolved.insert(key.into(), json_f64(v));
        Ok(v)
    }

    pub fn u64(&mut self, key: &str, flag: Option<u64>, default: Option<u64>) -> Result<u64, CliError> {
        let v = match flag {
            Some(v) => v,
            None => match self.lookup(key) {
                Some(raw) => raw.as_u64().ok_or_else(|| {
                    CliError::Usage(format!("config key `{key}` must be a nonnegative integer"))
                })?,
                None => default
                    .ok_or_else(|| CliError::Usage(format!("missing required parameter `{key}`")))?,
            },
        };
        self.resolved.insert(key.into(), Value::from(v));
        Ok(v)
    }

    pub fn string(
        &mut self,
        key: &str,
        flag: Option<&str>,
        default: Option<&str>,
    ) -> Result<String, CliError> {
        let v = match flag {
            Some(v) => v.to_string(),
            None => match self.lookup(key) {
                Some(raw) => raw
                    .as_str()
                    .ok_or_else(|| CliError::Usage(format!("config key `{key}` must be a string")))?
                    .to_string(),
                None => default
                    .ok_or_else(|| CliError::Usage(format!("missing required parameter `{key}`")))?
                    .to_string(),
            },
        };
        self.resolved.insert(key.into(), Value::String(v.clone()));
        Ok(v)
    }

    /// Record a derived value so it participates in the config hash.
    pub fn note(&mut self, key: &str, value: Value) {
        self.resolved.insert(key.into(), value);
    }

    /// SHA-256 of the canonical (sorted-key) JSON of every resolved value.
    pub fn hash(&self) -> String {
        let canonical =
            serde_json::to_string(&Value::Object(self.resolved.clone())).expect("map serializes");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        let digest = hasher.finalize();
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn json_f64(v: f64) -> Value {
    serde_json::Number::from_f64(v).map(Value::Number).unwrap_or(Value::Null)
}
