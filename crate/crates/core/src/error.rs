use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("model mismatch: expected {expected} generators, found {found}")]
    ModelMismatch { expected: usize, found: usize },

    #[error("q-order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("invalid manifold model: {0}")]
    InvalidModel(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("class has nonzero constant term {0}; exponential is not nilpotent")]
    NotNilpotent(String),

    #[error("series is not invertible: leading coefficient has zero constant term")]
    NotInvertible,

    #[error("Spin^c mismatch: c1c reduces to {found} mod 2 but w2(M) = {expected}")]
    SpinCMismatch { expected: String, found: String },

    #[error("W is not spin: w2(W) = {0}")]
    TwistNotSpin(String),

    #[error("manifold {0} is not spin: w2 = {1}")]
    NotSpin(String, String),

    #[error("X not spin: w2(V) = {found} but w2(M) = {expected}")]
    XNotSpin { expected: String, found: String },

    #[error("search space of {size} candidates exceeds the limit of {limit}")]
    SearchTooLarge { size: u128, limit: u128 },
}
