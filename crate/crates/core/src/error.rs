use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("coordinate flavor mismatch: {0}")]
    FlavorMismatch(String),
    #[error("mixed parity: {0}")]
    MixedParity(String),
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("not a contact vector field")]
    NotContact,
    #[error("degree bound {bound} too small for order {order}; need at least {needed}")]
    DegreeBound {
        bound: usize,
        order: usize,
        needed: usize,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("calibration failed: {0}")]
    Calibration(String),
}
