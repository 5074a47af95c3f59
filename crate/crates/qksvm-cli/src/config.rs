//! Optional JSON config file mirroring the command-line flags. Keys use the
//! long flag names (e.g. `"label-col"`); explicit flags always win.

use std::path::{Path, PathBuf};

use qksvm::{Error, Result};
use serde_json::{Map, Value};

#[derive(Default)]
pub struct FileConfig {
    values: Map<String, Value>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("cannot read config {}: {e}", path.display())))?;
        let value: Value = serde_json::from_str(&text)?;
        match value {
            Value::Object(values) => Ok(FileConfig { values }),
            _ => Err(Error::Config("config file must hold a JSON object".into())),
        }
    }

    fn get(&self, key: &str) -> Option<&Value> {
        self.values.get(key)
    }

    pub fn string(&self, key: &str) -> Result<Option<String>> {
        match self.get(key) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s.clone())),
            Some(other) => Err(Error::Config(format!(
                "config key '{key}' must be a string, got {other}"
            ))),
        }
    }

    pub fn path(&self, key: &str) -> Result<Option<PathBuf>> {
        Ok(self.string(key)?.map(PathBuf::from))
    }

    pub fn u64(&self, key: &str) -> Result<Option<u64>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.as_u64().map(Some).ok_or_else(|| {
                Error::Config(format!(
                    "config key '{key}' must be a non-negative integer, got {v}"
                ))
            }),
        }
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>> {
        Ok(self.u64(key)?.map(|v| v as usize))
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.as_f64().map(Some).ok_or_else(|| {
                Error::Config(format!("config key '{key}' must be a number, got {v}"))
            }),
        }
    }
}
