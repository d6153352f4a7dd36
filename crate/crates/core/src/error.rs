use thiserror::Error;

use crate::qmath::Label;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("qubit label {0} appears on both sides of a tensor product")]
    LabelCollision(Label),

    #[error("label mismatch: {0}")]
    LabelMismatch(String),

    #[error("state is not normalized: norm² = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("non-finite amplitude at index {0}")]
    NonFinite(usize),

    #[error("amplitude vector of length {len} does not match {qubits} qubits")]
    DimensionMismatch { len: usize, qubits: usize },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("vector must have squared norm 1/2, got {0}")]
    NotHalfNormed(f64),

    #[error("invalid channel parameters: {0}")]
    InvalidParams(String),

    #[error("malformed measurement basis: {0}")]
    MalformedBasis(String),

    #[error("channel is not certified perfect: {0}")]
    NotPerfect(String),

    #[error("sampled outcome {0} has a zero transformation operator")]
    SampledZeroOutcome(usize),

    #[error("batch must contain at least one session")]
    EmptyBatch,
}
