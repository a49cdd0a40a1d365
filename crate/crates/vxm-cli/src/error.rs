use std::path::Path;

use thiserror::Error;

use vxm::io::ParseError;
use vxm::metrics::MetricError;
use vxm::model::ModelError;
use vxm::stats::StatsError;

/// Exit code 2: the input could not be read or parsed.
/// Exit code 3: the input parsed but is semantically invalid.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        CliError::Parse(format!("{}: {err}", path.display()))
    }

    pub fn in_file(path: &Path, err: ParseError) -> Self {
        let msg = format!("{}: {err}", path.display());
        if err.is_validation() {
            CliError::Validation(msg)
        } else {
            CliError::Parse(msg)
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        CliError::Validation(err.to_string())
    }
}

impl From<MetricError> for CliError {
    fn from(err: MetricError) -> Self {
        CliError::Validation(err.to_string())
    }
}

impl From<StatsError> for CliError {
    fn from(err: StatsError) -> Self {
        CliError::Validation(err.to_string())
    }
}
