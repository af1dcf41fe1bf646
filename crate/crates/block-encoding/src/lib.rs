//! Block-encodings: a linear combination of unitaries, G†·Select·G, and
//! the sparse-matrix form U_R†·SWAP·U_L.

mod lcu;
mod sparse;

use circuit_core::{Circuit, CircuitError, ResourceReport};
use num_complex::Complex64 as C64;
use select_oracle::{Letter, PauliString, SelectError};
use serde::Serialize;
use sim_oracle::{data_unitary, extract_block, spectral_distance, DenseMatrix, SimError};
use state_prep::StateError;
use thiserror::Error;

pub use lcu::{lcu_ancilla_range, synth_lcu_be, synth_pauli_lcu_be, LcuSpec};
pub use sparse::{sparse_be_ancilla_range, synth_sparse_be, ComplexSparseMatrix};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BeError {
    #[error("shape: {0}")]
    Shape(String),
    #[error("normalization is zero")]
    Degenerate,
    #[error("coefficient {0} has a phase that is not a multiple of π/2")]
    Phase(C64),
    #[error("coefficient {0} is negative or not finite")]
    Coefficient(f64),
    #[error("eps {0} outside (0, 1)")]
    Eps(f64),
    #[error("needs {needed} ancillas, {available} available")]
    Infeasible { needed: usize, available: usize },
    #[error(transparent)]
    State(#[from] StateError),
    #[error(transparent)]
    Select(#[from] SelectError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlockEncodingReport {
    pub alpha: f64,
    /// Encoding register plus the peak of the helper pool.
    pub n_anc: usize,
    /// Qubits of the encoding register, the ones projected onto |0…0⟩.
    pub n_block: usize,
    pub eps_requested: f64,
    /// Filled in by [`BlockEncodingReport::measure`].
    pub eps_measured: Option<f64>,
    pub resource: ResourceReport,
}

impl BlockEncodingReport {
    /// Spectral distance between α·block of `c` and `h`. `c` should be the
    /// circuit that will actually run (after rotation lowering).
    pub fn measure(&mut self, c: &Circuit, h: &DenseMatrix) -> Result<f64, BeError> {
        let d = block_distance(c, self.n_block, self.alpha, h)?;
        self.eps_measured = Some(d);
        Ok(d)
    }
}

/// ‖α·⟨0|U|0⟩ − h‖ with the top `n_block` data qubits and every helper
/// ancilla projected onto zero.
pub fn block_distance(c: &Circuit, n_block: usize, alpha: f64, h: &DenseMatrix) -> Result<f64, BeError> {
    let (u, _) = data_unitary(c)?;
    let blk = extract_block(&u, n_block)? * C64::new(alpha, 0.0);
    Ok(spectral_distance(&blk, h)?)
}

/// Dense matrix of a Pauli string; letter l acts on qubit l.
pub fn pauli_matrix(p: &PauliString) -> DenseMatrix {
    let dim = 1usize << p.len();
    let phase = C64::i().powu(p.phase as u32);
    let mut m = DenseMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut row = col;
        let mut amp = phase;
        for (l, &letter) in p.letters.iter().enumerate() {
            let bit = col >> l & 1;
            match letter {
                Letter::I => {}
                Letter::X => row ^= 1 << l,
                Letter::Z => {
                    if bit == 1 {
                        amp = -amp;
                    }
                }
                Letter::Y => {
                    row ^= 1 << l;
                    amp *= if bit == 0 { C64::i() } else { -C64::i() };
                }
            }
        }
        m[(row, col)] = amp;
    }
    m
}

pub(crate) fn check_eps(eps: f64) -> Result<(), BeError> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(BeError::Eps(eps))
    }
}
