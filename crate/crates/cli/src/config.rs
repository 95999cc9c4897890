use std::path::PathBuf;

use serde::Serialize;
use tricycle::cycles::VerifyOptions;
use tricycle::FieldSpec;

use crate::error::CliError;

/// Everything that influences a run. Only the mathematical part ends up in
/// certificates; `out` and `verbosity` do not change results.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub cutoff: usize,
    pub seed: u64,
    pub trials: usize,
    pub fast: bool,
    pub out: PathBuf,
    pub verbosity: u8,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: FieldSpec::Rationals,
            cutoff: 32,
            seed: 0,
            trials: 8,
            fast: false,
            out: PathBuf::from("."),
            verbosity: 0,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RecordedConfig {
    pub field: String,
    pub cutoff: usize,
    pub seed: u64,
    pub trials: usize,
    pub fast: bool,
}

impl RunConfig {
    pub fn validate(self) -> Result<Self, CliError> {
        if self.cutoff < 1 {
            return Err(CliError::Usage("--cutoff must be at least 1".into()));
        }
        if self.trials < 1 {
            return Err(CliError::Usage("--trials must be at least 1".into()));
        }
        self.field.validate()?;
        Ok(self)
    }

    pub fn verify_options(&self) -> VerifyOptions {
        VerifyOptions {
            cutoff: self.cutoff,
            seed: self.seed,
            trials: self.trials,
            fast: self.fast,
        }
    }

    pub fn recorded(&self) -> RecordedConfig {
        RecordedConfig {
            field: self.field.to_string(),
            cutoff: self.cutoff,
            seed: self.seed,
            trials: self.trials,
            fast: self.fast,
        }
    }
}
