use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or unparseable input.
    #[error("{0}")]
    Input(String),
    /// Input parsed but violates a precondition.
    #[error(transparent)]
    Invalid(pcortho::Error),
    /// A computation that should succeed on valid input did not.
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Input(_) => ExitCode::from(1),
            CliError::Invalid(_) => ExitCode::from(2),
            CliError::Numeric(_) => ExitCode::from(3),
        }
    }
}

impl From<pcortho::Error> for CliError {
    fn from(e: pcortho::Error) -> Self {
        use pcortho::Error as E;
        match e {
            E::Parse(msg) => CliError::Input(msg),
            E::DegenerateElement { .. } | E::SingularGram | E::NotConsistent { .. } => {
                CliError::Numeric(e.to_string())
            }
            other => CliError::Invalid(other),
        }
    }
}
