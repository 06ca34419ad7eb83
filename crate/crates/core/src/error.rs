use thiserror::Error;

/// Errors produced by state construction, basis operations and detectors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("amplitude vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("state vector has zero norm")]
    ZeroVector,

    #[error("amplitudes contain a non-finite value")]
    NonFiniteAmplitude,

    #[error("qubit count {n} outside supported range {min}..={max}")]
    QubitCountOutOfRange { n: usize, min: usize, max: usize },

    #[error("qubit index {n} out of range 1..={n_qubits}")]
    QubitIndexOutOfRange { n: usize, n_qubits: usize },

    #[error("basis index {index} out of range for {n_qubits} qubits")]
    BasisIndexOutOfRange { index: usize, n_qubits: usize },

    #[error("single-qubit factor has |a|^2+|b|^2 = {norm_sq}, expected 1")]
    UnnormalizedFactor { norm_sq: f64 },

    #[error("empty factor sequence")]
    EmptyFactors,

    #[error("slice norms give |u|^2+|v|^2 = {total}, expected 1")]
    NormViolation { total: f64 },

    #[error("{0:?} is not a permutation of the qubits")]
    InvalidPermutation(Vec<usize>),

    #[error("occupation number k = {k} outside 0..={n} for {n} qubits")]
    InvalidDickeIndex { k: usize, n: usize },

    #[error("state is not in the symmetric subspace: orthogonal residual {residual:e}")]
    NotSymmetric { residual: f64 },

    #[error("state is entangled: parallelism residual {residual:e} exceeds tolerance")]
    EntangledInput { residual: f64 },

    #[error("angle {name} = {value} outside {range}")]
    AngleOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("axis vector has norm {norm}, expected a unit vector")]
    NonUnitAxis { norm: f64 },

    #[error("{field}: {message}")]
    Schema { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
