//! Sparse Boolean memory and the sparse-access oracle pair built on it.

mod saim;
mod sbm;

use circuit_core::CircuitError;
use select_oracle::SelectError;
use thiserror::Error;

pub use saim::{completed_f, emit_of, of_ancilla_range, synth_oh, synth_of, SparseMatrixCoo};
pub use sbm::{emit_sbm, sbm_ancilla_range, sbm_plan, synth_sbm, Regime};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SaimError {
    #[error("duplicate index {0}")]
    Duplicate(u64),
    #[error("zero value at index {0}")]
    ZeroValue(u64),
    #[error("shape: {0}")]
    Shape(String),
    #[error("needs {needed} ancillas, {available} available")]
    Infeasible { needed: usize, available: usize },
    #[error(transparent)]
    Select(#[from] SelectError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// B: {0,1}^n → {0,1}^word, nonzero on the listed indices only.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseBooleanFn {
    n: usize,
    word: usize,
    entries: Vec<(u64, u64)>,
}

impl SparseBooleanFn {
    pub fn new(n: usize, word: usize, mut entries: Vec<(u64, u64)>) -> Result<SparseBooleanFn, SaimError> {
        if n > 63 || word > 63 {
            return Err(SaimError::Shape("index and word widths must be below 64".into()));
        }
        entries.sort_unstable();
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(SaimError::Duplicate(w[0].0));
            }
        }
        for &(q, v) in &entries {
            if v == 0 {
                return Err(SaimError::ZeroValue(q));
            }
            if q >> n != 0 || v >> word != 0 {
                return Err(SaimError::Shape(format!("entry ({q}, {v}) exceeds {n}x{word} bits")));
            }
        }
        Ok(SparseBooleanFn { n, word, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> usize {
        self.word
    }

    /// Sorted by index.
    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    pub fn s(&self) -> usize {
        self.entries.len()
    }

    pub fn eval(&self, q: u64) -> u64 {
        self.entries
            .binary_search_by_key(&q, |e| e.0)
            .map_or(0, |i| self.entries[i].1)
    }
}
