use thiserror::Error;

/// Errors raised by the engine. Datum-invalid variants name the violated invariant.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown point id `{0}`")]
    UnknownPoint(String),
    #[error("point set is not open: point `{0}` has a minimal open not contained in it")]
    NotOpen(String),
    #[error("cutoff {cutoff} is below the minimal occupied degree {min_degree}")]
    CutoffTooSmall { cutoff: i32, min_degree: i32 },
    #[error("invalid finite space: {0}")]
    InvalidSpace(String),
    #[error("invalid sheaf: {0}")]
    InvalidSheaf(String),
    #[error("character {0:#b} is not defined on a group of rank {1}")]
    CharacterOutOfRange(u64, usize),
    #[error("blocks are not composable: {0}")]
    NotComposable(String),
    #[error("set {0} is not in the orbit family S")]
    NotInS(String),
    #[error("datum invalid [{invariant}]: {detail}")]
    DatumInvalid { invariant: &'static str, detail: String },
    #[error("unknown label index {0}")]
    UnknownLabel(usize),
    #[error("product exceeds cutoff: degree {degree} > {cutoff}")]
    CutoffExceeded { degree: i32, cutoff: i32 },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn datum(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::DatumInvalid { invariant, detail: detail.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
