use thiserror::Error;

/// Failures of a command, each mapped to a process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    /// A hard invariant failed on a computed object.
    #[error("{0}")]
    Violation(String),
    #[error("{0}")]
    File(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Violation(_) => 2,
            CliError::File(_) => 3,
        }
    }
}

impl From<parahoric_core::Error> for CliError {
    fn from(e: parahoric_core::Error) -> Self {
        use parahoric_core::Error as E;
        match e {
            E::TheoremViolation(_) | E::Inconsistency(_) | E::NotCentral => CliError::Violation(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}
