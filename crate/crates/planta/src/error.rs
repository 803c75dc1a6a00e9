use std::path::Path;

use thiserror::Error;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{source_name}: row {row}, column `{column}`: {message}")]
    Parse {
        source_name: String,
        row: usize,
        column: String,
        message: String,
    },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Model(#[from] planta_core::Error),
    #[error("{0}")]
    Data(String),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn parse(source_name: &str, row: usize, column: &str, message: impl Into<String>) -> Self {
        CliError::Parse {
            source_name: source_name.to_string(),
            row,
            column: column.to_string(),
            message: message.into(),
        }
    }

    /// 2 usage, 3 data, 4 infeasible.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Model(planta_core::Error::Infeasible(_)) => 4,
            _ => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Parse { .. } => "parse",
            CliError::InvariantViolation(_) => "invariant_violation",
            CliError::Io { .. } => "io",
            CliError::Model(planta_core::Error::Infeasible(_)) => "infeasible",
            CliError::Model(_) => "model",
            CliError::Data(_) => "data",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut err = serde_json::Map::new();
        err.insert("kind".into(), self.kind().into());
        err.insert("message".into(), self.to_string().into());
        err.insert("exit_code".into(), self.exit_code().into());
        if let CliError::Parse { row, column, .. } = self {
            err.insert("row".into(), (*row).into());
            err.insert("column".into(), column.as_str().into());
        }
        let mut top = serde_json::Map::new();
        top.insert("error".into(), err.into());
        top.into()
    }
}
