use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown key '{key}'; accepted keys: {accepted}")]
    UnknownKey { key: String, accepted: String },
    #[error("missing required key '{0}'")]
    MissingKey(String),
    #[error("bad value for '{key}': {reason}")]
    BadValue { key: String, reason: String },
    #[error("{0}")]
    Config(String),
    #[error("oracle check failed: {0}")]
    Check(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Lib(#[from] lowlying::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::UnknownKey { .. } => "unknown_key",
            CliError::MissingKey(_) => "missing_key",
            CliError::BadValue { .. } => "bad_value",
            CliError::Config(_) => "config",
            CliError::Check(_) => "check_failed",
            CliError::Io(_) | CliError::Csv(_) => "io",
            CliError::Lib(e) => e.kind(),
        }
    }

    /// Single-line `error kind=... message="..."` for scripts.
    pub fn machine_line(&self) -> String {
        let msg = self.to_string().replace('\\', "\\\\").replace('"', "\\\"");
        format!("error kind={} message=\"{}\"", self.kind(), msg.replace('\n', " "))
    }
}
