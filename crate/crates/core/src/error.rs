use thiserror::Error;

/// Errors raised by the decomposition, synthesis and I/O layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("operator is not a tensor product of single-qubit gates (residual {residual:.3e})")]
    NotAProduct { residual: f64 },

    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    #[error("two-CNOT construction needs hz = 0, got hz = {hz:e}")]
    HzNotZero { hz: f64 },

    #[error("gate is not in the {expected} class")]
    WrongClass { expected: &'static str },

    #[error("synthesized circuit failed self-check: distance {distance:.3e} > tolerance {tolerance:.3e}")]
    VerificationFailed { distance: f64, tolerance: f64 },

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("gate `{name}` takes {expected} argument(s), got {got}")]
    BadArity {
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
