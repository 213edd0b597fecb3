use gbcode::additive::AdditiveError;
use gbcode::alist::AlistError;
use gbcode::distance::{DistanceError, PatternError};
use gbcode::families::FamilyError;
use gbcode::{CodeError, PolyError};
use gbdecode::DecodeError;
use gbsim::SimError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Limit(String),
    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Limit(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Invalid(_) => "invalid-input",
            CliError::Limit(_) => "limit-exceeded",
            CliError::Invariant(_) => "invariant-violated",
        }
    }
}

pub fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

macro_rules! invalid_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Invalid(e.to_string())
            }
        })*
    };
}

invalid_from!(
    PolyError,
    CodeError,
    AdditiveError,
    AlistError,
    PatternError,
    DecodeError,
    std::io::Error,
    serde_json::Error
);

impl From<DistanceError> for CliError {
    fn from(e: DistanceError) -> Self {
        match e {
            DistanceError::NotFoundBelow(_) | DistanceError::TooLarge(_) => CliError::Limit(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> Self {
        match e {
            FamilyError::NotStabilizerPreserving => CliError::Invariant(e.to_string()),
            FamilyError::BadParameter { .. } => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        CliError::Invalid(e.to_string())
    }
}
