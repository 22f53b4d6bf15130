use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {left} qubits vs {right} qubits")]
    DimensionMismatch { left: usize, right: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("invalid cut: {0}")]
    InvalidCut(String),

    #[error("invalid Pauli string {0:?}")]
    InvalidPauliString(String),

    #[error("dense backend supports at most {cap} qubits, got {n}")]
    CapExceeded { n: usize, cap: usize },

    #[error("expectation value has imaginary part {imag:e}; phase convention is inconsistent")]
    NonRealExpectation { imag: f64 },

    #[error("subspace is not isotropic")]
    NotIsotropic,

    #[error("circuit contains non-Clifford gate {0}")]
    NonClifford(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("insufficient samples: got {got}, need at least {need}")]
    InsufficientSamples { got: usize, need: usize },

    #[error("entropy gap {gap} does not exceed 2 t' = {bound}")]
    GapCondition { gap: f64, bound: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
