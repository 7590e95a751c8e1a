use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{message}")]
    Schema { field: Option<String>, message: String },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
    #[error("cannot read {path}: {message}")]
    ConfigFile { path: String, message: String },
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
    #[error(transparent)]
    Runtime(#[from] hardy_core::Error),
}

/// One-line JSON diagnostic written to stderr.
#[derive(Serialize)]
struct Diagnostic<'a> {
    error: &'static str,
    field: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    column: Option<usize>,
    message: String,
}

impl CliError {
    pub fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Invalid {
            field: field.into(),
            message: message.into(),
        }
    }

    /// 1 for anything wrong with the request, 2 for failures while running it.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Runtime(_) | CliError::Output { .. } => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse { .. } => "parse",
            CliError::Schema { .. } => "schema",
            CliError::Invalid { .. } => "validation",
            CliError::ConfigFile { .. } => "config-file",
            CliError::Output { .. } => "output",
            CliError::Runtime(_) => "runtime",
        }
    }

    pub fn field(&self) -> Option<&str> {
        match self {
            CliError::Schema { field, .. } => field.as_deref(),
            CliError::Invalid { field, .. } => Some(field),
            CliError::Runtime(hardy_core::Error::Parameter { name, .. }) => Some(name),
            _ => None,
        }
    }

    pub fn diagnostic(&self) -> String {
        let (line, column) = match self {
            CliError::Parse { line, column, .. } => (Some(*line), Some(*column)),
            _ => (None, None),
        };
        let message = match self {
            CliError::Invalid { message, .. } => message.clone(),
            CliError::Usage(m) => m.lines().next().unwrap_or_default().trim_start_matches("error: ").to_owned(),
            other => other.to_string(),
        };
        serde_json::to_string(&Diagnostic {
            error: self.kind(),
            field: self.field(),
            line,
            column,
            message,
        })
        .expect("diagnostic serializes")
    }
}
