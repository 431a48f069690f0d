use thiserror::Error;
use weylwalk::hopf::HopfError;
use weylwalk::lorentz::LorentzError;
use weylwalk::walk::WalkError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("{0}")]
    Engine(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 4,
            CliError::Numerical(_) => 3,
            CliError::Engine(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        match e {
            WalkError::OddGrid(_) => CliError::Config(e.to_string()),
            WalkError::Io(io) => CliError::Io(io),
            other => CliError::Engine(other.to_string()),
        }
    }
}

impl From<LorentzError> for CliError {
    fn from(e: LorentzError) -> Self {
        match e {
            LorentzError::NoConvergence { .. } => CliError::Numerical(e.to_string()),
            LorentzError::Config(_) | LorentzError::InvalidG(_) | LorentzError::SingularSafeRegion(_) => {
                CliError::Config(e.to_string())
            }
            other => CliError::Engine(other.to_string()),
        }
    }
}

impl From<HopfError> for CliError {
    fn from(e: HopfError) -> Self {
        CliError::Engine(e.to_string())
    }
}
