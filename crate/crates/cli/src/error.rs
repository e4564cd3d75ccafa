use std::fmt::Debug;

use mixquiver::arseq::ArSeqError;
use mixquiver::{ArithError, GroupError, InvariantError, McKayError};
use serde_json::json;
use thiserror::Error;

use crate::spec::SpecError;

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Input(String),
    /// An error from the library. `kind` is the innermost variant name and
    /// `detail` its debug form, which carries the witness fields.
    #[error("{message}")]
    Core { kind: String, message: String, detail: String, internal: bool },
}

/// Innermost variant name of a nested error's debug form, e.g.
/// `Group(CharacteristicDividesOrder { .. })` → `CharacteristicDividesOrder`.
fn variant_name(debug: &str) -> String {
    let mut s = debug;
    for wrapper in ["Group(", "Arith(", "Invariant("] {
        while let Some(rest) = s.strip_prefix(wrapper) {
            s = rest;
        }
    }
    s.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect()
}

fn core<E: Debug + std::fmt::Display>(e: &E, internal: bool) -> CliError {
    let detail = format!("{e:?}");
    CliError::Core { kind: variant_name(&detail), message: e.to_string(), detail, internal }
}

impl From<ArithError> for CliError {
    fn from(e: ArithError) -> Self {
        core(&e, false)
    }
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        core(&e, e.is_internal())
    }
}

impl From<McKayError> for CliError {
    fn from(e: McKayError) -> Self {
        core(&e, e.is_internal())
    }
}

impl From<InvariantError> for CliError {
    fn from(e: InvariantError) -> Self {
        core(&e, e.is_internal())
    }
}

impl From<ArSeqError> for CliError {
    fn from(e: ArSeqError) -> Self {
        core(&e, e.is_internal())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Core { internal: true, .. } => EXIT_INTERNAL,
            _ => EXIT_INPUT,
        }
    }

    pub fn kind(&self) -> String {
        match self {
            Self::Spec(SpecError::Parse { .. }) => "ParseError".into(),
            Self::Spec(SpecError::Validation { .. }) => "ValidationError".into(),
            Self::Io { .. } => "IoError".into(),
            Self::Input(_) => "InputError".into(),
            Self::Core { kind, .. } => kind.clone(),
        }
    }

    /// Machine-readable form written to stderr.
    pub fn to_json(&self) -> String {
        let detail = match self {
            Self::Core { detail, .. } => json!(detail),
            Self::Spec(SpecError::Parse { line, column, .. }) => json!({"line": line, "column": column}),
            Self::Spec(SpecError::Validation { field, .. }) => json!({"field": field}),
            _ => serde_json::Value::Null,
        };
        json!({
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "detail": detail,
                "exit_code": self.exit_code(),
            }
        })
        .to_string()
    }
}
