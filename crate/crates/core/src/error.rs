use thiserror::Error;

/// Library-level failures. Ceremony-level aborts live in [`crate::protocol::Abort`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("inversion of zero (or non-invertible element)")]
    ZeroInverse,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("non-canonical encoding")]
    NonCanonical,
    #[error("length mismatch: expected {expected} bytes, got {got}")]
    Length { expected: usize, got: usize },
    #[error("duplicate share index {0}")]
    DuplicateIndex(u64),
    #[error("unsupported backend: {0}")]
    UnsupportedBackend(&'static str),
    #[error("decryption failed")]
    DecryptFailed,
    #[error("malformed {0}")]
    Malformed(&'static str),
    #[error("missing material: {0}")]
    MissingMaterial(&'static str),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("hash-to-curve exceeded the attempt bound")]
    HashToCurveExhausted,
}
