use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("gate {gate} expects {expected} angle(s), got {got}")]
    ParameterArity {
        gate: String,
        expected: usize,
        got: usize,
    },

    #[error("unknown gate `{0}`")]
    UnknownGate(String),

    #[error("invalid qubit tuple {qubits:?} for a {n}-qubit register")]
    QubitIndex { qubits: Vec<usize>, n: usize },

    #[error("matrix is not unitary (max |U^dagger U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("unknown target `{0}`")]
    UnknownTarget(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("HST simulation needs {qubits} qubits, cap is {cap}")]
    SizeLimit { qubits: usize, cap: usize },

    #[error("invalid agent state: {0}")]
    InvalidState(String),

    #[error("internal consistency: {0}")]
    Consistency(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
