use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the command line, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: schema error at `{field}`: {message}", path.display())]
    Schema {
        path: PathBuf,
        field: String,
        message: String,
    },
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Math(#[from] tricycle::Error),
}

impl CliError {
    /// 1 for I/O, schema and usage problems, 2 when the mathematics says no.
    pub fn exit_code(&self) -> i32 {
        use tricycle::Error as E;
        match self {
            CliError::Io { .. } | CliError::Schema { .. } | CliError::Usage(_) => 1,
            CliError::Math(e) => match e {
                E::NotAssociative(..)
                | E::UnitLaw(_)
                | E::InfiniteDimensional { .. }
                | E::InvalidModule(_)
                | E::NotProjective
                | E::ExceededCutoff { .. }
                | E::UndecidedIsomorphism(_)
                | E::HypothesisViolation(_) => 2,
                E::InvalidField(_)
                | E::Parse(_)
                | E::FieldMismatch(_)
                | E::AlgebraMismatch(_)
                | E::MalformedQuiver(_)
                | E::DimensionMismatch(_)
                | E::UnsupportedAlgebra(_)
                | E::InvalidInput(_) => 1,
            },
        }
    }
}
