use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_DISAGREEMENT: u8 = 2;
pub const EXIT_RESOURCE_CAP: u8 = 3;
pub const EXIT_USAGE: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serialize(String),
    #[error(transparent)]
    Core(tl_core::Error),
}

impl From<tl_core::Error> for CliError {
    fn from(e: tl_core::Error) -> Self {
        match e {
            tl_core::Error::ResourceLimit(msg) => CliError::ResourceCap(msg),
            tl_core::Error::InvalidLevel(_) | tl_core::Error::InvalidLabel(_) | tl_core::Error::GUndefined { .. } => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Core(other),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Serialize(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::ResourceCap(_) => EXIT_RESOURCE_CAP,
            _ => EXIT_FAILURE,
        }
    }
}
