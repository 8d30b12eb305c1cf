use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("h0 is not known for this surface and class; pass it explicitly")]
    H0Unavailable,
    #[error("zero vector cannot generate a ray")]
    ZeroRay,
    #[error("class lies outside the bounding cone")]
    OutsideCone,
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("fixture error: {0}")]
    Fixture(String),
    #[error("cannot render: {0}")]
    Render(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, got })
    }
}
