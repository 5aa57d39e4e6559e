use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] vqc_core::Error),
    #[error("cannot write to {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot read {path}: {source}")]
    Input {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed input: {0}")]
    Parse(String),
}

impl CliError {
    /// 2 for anything the user can fix in the invocation, 3 for an
    /// unwritable output location, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use vqc_core::Error as E;
        match self {
            CliError::Config(_) | CliError::Parse(_) | CliError::Input { .. } => 2,
            CliError::Output { .. } => 3,
            CliError::Core(e) => match e {
                E::UnknownGate(_)
                | E::UnknownTarget(_)
                | E::InvalidConfig(_)
                | E::ParameterArity { .. }
                | E::QubitIndex { .. }
                | E::NotUnitary { .. }
                | E::Dimension { .. }
                | E::SizeLimit { .. }
                | E::Json(_)
                | E::Io(_) => 2,
                _ => 1,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
