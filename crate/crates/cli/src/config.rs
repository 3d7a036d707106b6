//! Plain-text run configuration: one `key=value` per line, `#` comments.

use crate::error::CliError;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Option<String>,
    pub params: BTreeMap<String, String>,
}

fn split_pair(s: &str) -> Result<(String, String), CliError> {
    let (k, v) = s
        .split_once('=')
        .ok_or_else(|| CliError::Config(format!("expected key=value, got '{s}'")))?;
    let k = k.trim();
    if k.is_empty() {
        return Err(CliError::Config(format!("empty key in '{s}'")));
    }
    Ok((k.to_string(), v.trim().to_string()))
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = split_pair(line)?;
            if k == "command" {
                cfg.command = Some(v);
                continue;
            }
            if cfg.params.insert(k.clone(), v).is_some() {
                return Err(CliError::Config(format!("duplicate key '{k}'")));
            }
        }
        Ok(cfg)
    }

    /// Adds `key=value` arguments, overriding earlier values.
    pub fn apply_args(&mut self, args: &[String]) -> Result<(), CliError> {
        for a in args {
            let (k, v) = split_pair(a)?;
            self.params.insert(k, v);
        }
        Ok(())
    }

    /// `key=value` pairs on one line, for the provenance comment.
    pub fn echo(&self) -> String {
        let mut parts = Vec::new();
        if let Some(c) = &self.command {
            parts.push(format!("command={c}"));
        }
        parts.extend(self.params.iter().map(|(k, v)| format!("{k}={v}")));
        parts.join(" ")
    }
}

impl fmt::Display for RunConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = &self.command {
            writeln!(f, "command={c}")?;
        }
        for (k, v) in &self.params {
            writeln!(f, "{k}={v}")?;
        }
        Ok(())
    }
}
