use std::fmt;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or malformed input; exit status 2.
    Input(String),
    /// The library refused the input; exit status 1.
    Build(eaqcc::Error),
    /// A check ran and failed; exit status 1.
    Failed(String),
}

impl CliError {
    pub fn status(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Build(eaqcc::Error::Parse(_)) => 2,
            CliError::Build(_) | CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "PARSE_ERROR: {m}"),
            CliError::Build(e) => write!(f, "{}: {e}", e.name()),
            CliError::Failed(m) => write!(f, "VERIFY_FAILED: {m}"),
        }
    }
}

impl From<eaqcc::Error> for CliError {
    fn from(e: eaqcc::Error) -> Self {
        CliError::Build(e)
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parse failures from the library count as input errors.
pub fn parsed<T>(path: &Path, r: eaqcc::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    version: u32,
    kind: &'a str,
    data: &'a T,
}

/// Renders an artifact as its text form or as the versioned JSON envelope.
pub fn emit<T: Serialize>(format: Format, kind: &str, data: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Text => text(),
        Format::Json => {
            let env = Envelope { version: SCHEMA_VERSION, kind, data };
            serde_json::to_string_pretty(&env).expect("artifact serializes") + "\n"
        }
    }
}

/// Accepts either a bare value or one wrapped in the JSON envelope.
pub fn from_json<T: serde::de::DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    let v: serde_json::Value =
        serde_json::from_str(text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let inner = match v.get("data") {
        Some(d) if v.get("version").is_some() => d.clone(),
        _ => v,
    };
    serde_json::from_value(inner).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
