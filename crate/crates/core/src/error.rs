//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-invertible element: minimal polynomial has factor {factor}")]
    NotInvertible { factor: String },
    #[error("minimal polynomial rejected: {0}")]
    BadMinPoly(String),
    #[error("ring mismatch between operands")]
    RingMismatch,
    #[error("expected a homogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("degree cap {cap} exceeded during {what}")]
    DegreeCap { cap: i64, what: String },
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("rejected: check `{check}` failed: {detail}")]
    CheckFailed { check: String, detail: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
