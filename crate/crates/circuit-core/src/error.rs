use thiserror::Error;

use crate::Qubit;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CircuitError {
    #[error("declared-shape mismatch: {0}")]
    Shape(String),
    #[error("abstract rotation present under the concrete cost model")]
    Mode,
    #[error("qubit q{0} is not declared")]
    QubitRange(Qubit),
    #[error("gate repeats qubit q{0}")]
    RepeatedQubit(Qubit),
    #[error("ancilla ledger: {0}")]
    Ledger(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
