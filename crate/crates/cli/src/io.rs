use std::fmt::Display;
use std::io::Read;

use mcx_core::actions::{GroupAction, RawGroupAction};
use mcx_core::mcx::{Multicomplex, RawMulticomplex};
use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

/// Failures, by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Parse(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Parse(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Domain(_) => "domain",
            CliError::Parse(_) => "parse",
            CliError::Internal(_) => "internal",
        }
    }
}

pub trait OrFail<T> {
    fn domain(self) -> Result<T, CliError>;
    fn parse(self) -> Result<T, CliError>;
    fn internal(self) -> Result<T, CliError>;
}

impl<T, E: Display> OrFail<T> for Result<T, E> {
    fn domain(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Domain(e.to_string()))
    }

    fn parse(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Parse(e.to_string()))
    }

    fn internal(self) -> Result<T, CliError> {
        self.map_err(|e| CliError::Internal(e.to_string()))
    }
}

/// Reads a file, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Parse(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{path}: {e}")))
    }
}

pub fn load_json<T: DeserializeOwned>(path: &str) -> Result<T, CliError> {
    serde_json::from_str(&read_source(path)?).map_err(|e| CliError::Parse(format!("{path}: {e}")))
}

/// Resolves names only; the axioms are checked by the commands that need them.
pub fn load_multicomplex(path: &str) -> Result<Multicomplex, CliError> {
    load_json::<RawMulticomplex>(path)?.to_multicomplex().parse()
}

pub fn load_action(path: &str, mc: &Multicomplex) -> Result<GroupAction, CliError> {
    GroupAction::from_raw(&load_json::<RawGroupAction>(path)?, mc).parse()
}

/// Structured output of one command.
#[derive(Debug)]
pub struct Outcome {
    pub value: Value,
    pub summary: String,
    /// A domain-level negative answer (exit 1) or a failed self-check (exit 3), reported
    /// together with the full output.
    pub failure: Option<CliError>,
}

impl Outcome {
    pub fn ok(value: Value, summary: impl Into<String>) -> Self {
        Self { value, summary: summary.into(), failure: None }
    }

    pub fn with_failure(mut self, failure: Option<CliError>) -> Self {
        self.failure = failure;
        self
    }
}

/// Puts `schema_version` and `command` in front of the fields of `value`.
pub fn stamp(command: &str, value: Value) -> Value {
    let mut out = Map::new();
    out.insert("schema_version".into(), Value::from(mcx_core::formats::SCHEMA_VERSION));
    out.insert("command".into(), Value::from(command));
    match value {
        Value::Object(fields) => out.extend(fields),
        other => {
            out.insert("result".into(), other);
        }
    }
    Value::Object(out)
}

pub fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("plain data serializes")
}
