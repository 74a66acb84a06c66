use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("dimension {dim} exceeds the configured maximum {max}")]
    DimensionOverflow { dim: usize, max: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is not unitary (max deviation {deviation:e}, tolerance {tol:e})")]
    NotUnitary { deviation: f64, tol: f64 },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("case index {idx} out of range 0..{count}")]
    CaseOutOfRange { idx: usize, count: usize },

    #[error("the wire has no gate matrix")]
    WireHasNoMatrix,

    #[error("placement {0} does not fit on {1} qubits")]
    InvalidPlacement(String, usize),

    #[error("chromosome has {got} bits, expected {expected}")]
    ChromosomeLength { got: usize, expected: usize },

    #[error("unknown goal `{name}` (available: {available})")]
    UnknownGoal { name: String, available: String },

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("search needs {required} circuit evaluations, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
