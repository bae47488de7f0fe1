use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Singular(String),

    #[error("{0}")]
    CompositionSingular(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Singular(_) => 2,
            CliError::CompositionSingular(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl From<deltaprime::Error> for CliError {
    fn from(e: deltaprime::Error) -> Self {
        use deltaprime::Error as E;
        match e {
            E::SingularCoupling { .. } => CliError::Singular(e.to_string()),
            E::CompositionSingular { .. } | E::DecoupledResult => CliError::CompositionSingular(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
