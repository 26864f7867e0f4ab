use thiserror::Error;

/// Errors produced by the simulator and analysis routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("empty factor list")]
    EmptyFactors,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("qubit count {0} exceeds the supported maximum of {max}", max = crate::qcore::MAX_QUBITS)]
    TooManyQubits(usize),

    #[error("qubit index {index} out of range for {qubits} qubits")]
    QubitOutOfRange { index: usize, qubits: usize },

    #[error("empty set of kept qubits")]
    EmptyKeepSet,

    #[error("duplicate qubit index {0}")]
    DuplicateQubit(usize),

    #[error("operator is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("operator trace {0} differs from 1")]
    BadTrace(f64),

    #[error("operator has negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),

    #[error("eigen decomposition did not converge on a {0}x{0} block")]
    EigenFailure(usize),

    #[error("{name} = {value} outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: String,
    },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("dead branch: no live qubits remain")]
    DeadBranch,

    #[error("unknown chain state {0}")]
    UnknownState(String),

    #[error("curve grids differ")]
    GridMismatch,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("no threshold: curves do not cross in (0, 1)")]
    NoThreshold,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_range(name: &'static str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_nan() || value < lo || value > hi {
        return Err(Error::OutOfRange {
            name,
            value,
            range: format!("[{lo}, {hi}]"),
        });
    }
    Ok(())
}

pub(crate) fn check_count(name: &'static str, value: usize, lo: usize, hi: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::OutOfRange {
            name,
            value: value as f64,
            range: format!("[{lo}, {hi}]"),
        });
    }
    Ok(())
}
