use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid base: {0}")]
    InvalidBase(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] betanum::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        use betanum::Error as E;
        match self {
            CliError::InvalidBase(_) | CliError::Usage(_) => 2,
            CliError::Core(E::NotMonic | E::NoRootAboveOne | E::AmbiguousHint(_) | E::Parse(_)) => 2,
            CliError::Core(E::Unclassified(_)) => 3,
            CliError::Core(E::BoundaryCase) => 4,
            CliError::Core(E::WindowMismatch(_)) => 5,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}
