//! Brute-force simulation oracle: dense statevectors and unitaries at desk
//! scale, and a sparse-amplitude engine for wide permutation-like circuits.

mod dense;
mod fuse;
mod linalg;
mod sparse;

use thiserror::Error;

pub use dense::{apply, apply_with_cap, unitary_of, unitary_of_with_cap, DenseState};
pub use fuse::{gate_matrix, M2};
pub use linalg::{extract_block, spectral_distance, state_distance, DenseMatrix};
pub use sparse::{data_unitary, run_basis, run_data, Probe, SparseState, SPARSE_QUBIT_CAP};

pub type C64 = num_complex::Complex64;

pub const STATE_CAP: usize = 20;
pub const UNITARY_CAP: usize = 12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("{needed} qubits exceed the simulator cap of {cap}")]
    Cap { needed: usize, cap: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("register layout: {0}")]
    Layout(String),
    #[error("sparse engine exceeded {0} amplitudes")]
    Terms(usize),
}
