use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("qubit index {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },

    #[error("operator is not Hermitian (phase exponent {phase_exp})")]
    NonHermitian { phase_exp: u8 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown catalog graph `{0}`")]
    UnknownGraph(String),

    #[error("{what} too large: {value} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("no assignment value for qubit {qubit}, letter {letter}")]
    MissingAssignment { qubit: usize, letter: char },

    #[error("generators do not pairwise commute")]
    NonCommutingGenerators,

    #[error("Bell operator may not contain the identity element")]
    IdentityTerm,

    #[error("Bell operator needs at least one term")]
    EmptyOperator,

    #[error("classical bound {bound} admits no violation ratio")]
    NoViolationRatio { bound: i64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("quantum value {value} disagrees with term count {q}")]
    QuantumValueMismatch { value: f64, q: usize },

    #[error("search budget exhausted after {nodes} nodes (partial results available)")]
    BudgetExceeded {
        nodes: u64,
        partial: Box<crate::search::SearchOutcome>,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
