use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("dimension mismatch: expected {expected} qubits, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a register needs at least one qubit")]
    NoQubits,

    #[error("{what} index {index} out of range for {len} entries")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("{what} exceeds capacity: {requested} > {limit}")]
    Capacity {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("gate `{gate}` is outside the Gottesman-Knill set (H, S, X, Y, Z, CNOT)")]
    UnsupportedGate { gate: String },

    #[error("instruction `{instruction}` is not allowed here: {reason}")]
    UnsupportedInstruction { instruction: String, reason: &'static str },

    #[error("observable {label} is not Hermitian")]
    NonHermitian { label: String },

    #[error("direction ({x}, {y}, {z}) is not a signed Pauli axis; the stabilizer backend only measures X, Y, Z")]
    UnsupportedObservable { x: f64, y: f64, z: f64 },

    #[error("vector has norm {norm}, expected a unit vector")]
    Normalization { norm: f64 },

    #[error("{what} = {value} outside its domain {domain}")]
    Domain {
        what: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("forced outcome {outcome} on qubit {qubit} has zero probability")]
    ImpossibleOutcome { qubit: usize, outcome: u8 },

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
