use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_PARSE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}{}: {message}", .column.map(|c| format!(", column {c}")).unwrap_or_default())]
    Parse { line: usize, column: Option<usize>, message: String },

    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },

    #[error(transparent)]
    Invalid(#[from] eve_core::Error),

    #[error("{0}")]
    Config(String),
}

impl CliError {
    pub fn parse(line: usize, column: Option<usize>, message: impl Into<String>) -> Self {
        CliError::Parse { line, column, message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => EXIT_PARSE,
            CliError::Invalid(_) | CliError::Config(_) => EXIT_VALIDATION,
        }
    }
}
