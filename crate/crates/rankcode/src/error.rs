use std::path::PathBuf;

use rankcode_core::Error;
use serde_json::{json, Value};

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid code file: {0}")]
    Format(String),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn format(msg: impl Into<String>) -> Self {
        CliError::Format(msg.into())
    }

    /// 2 for usage errors, 3 when an enumeration guard trips, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(Error::GuardExceeded { .. }) => 3,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(Error::GuardExceeded { .. }) => "guard-exceeded",
            CliError::Core(_) => "error",
            CliError::Io { .. } => "io",
            CliError::Format(_) => "format",
            CliError::Usage(_) => "usage",
            CliError::Verification(_) => "verification",
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.kind(), "message": self.to_string() });
        if let CliError::Core(Error::GuardExceeded { needed, limit }) = self {
            v["needed"] = json!(needed.to_string());
            v["limit"] = json!(limit);
        }
        v
    }
}
