use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Result;

/// One block of a run summary: a named check, its verdict and its key
/// numbers. Non-finite numbers serialize as `null`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub ok: bool,
    pub numbers: BTreeMap<String, f64>,
}

impl CheckSummary {
    pub fn new(name: impl Into<String>, ok: bool) -> Self {
        Self {
            name: name.into(),
            ok,
            numbers: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.numbers.insert(key.to_string(), value);
        self
    }

    /// `name ok|FAILED key=value ...` in key order.
    pub fn line(&self) -> String {
        let mut s = format!("{} {}", self.name, if self.ok { "ok" } else { "FAILED" });
        for (k, v) in &self.numbers {
            s.push_str(&format!(" {k}={v:.6e}"));
        }
        s
    }
}

pub fn write_summary(path: &Path, checks: &[CheckSummary]) -> Result<()> {
    let text = serde_json::to_string_pretty(checks)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}
