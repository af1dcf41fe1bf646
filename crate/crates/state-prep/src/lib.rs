//! State preparation: uniformly controlled rotations (few ancillas), the
//! binary amplitude tree (many ancillas), the hybrid between them, and
//! sparse states.

mod sparse;
mod tradeoff;
mod tree;
mod ucr;

use circuit_core::CircuitError;
use num_complex::Complex64 as C64;
use select_oracle::SelectError;
use sparse_access::SaimError;
use thiserror::Error;

pub use sparse::{emit_rows, rows_ancillas, synth_sparse_state};
pub use tradeoff::{synth_state_tradeoff, tradeoff_ancillas, tradeoff_split};
pub use tree::{emit_tree, tree_ancillas, tree_budget, synth_state_tree, K};
pub use ucr::{emit_ucr, ucr_ancillas, ucr_angles, ucr_budget, synth_state_ucr, UcrAngleTable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("norm {0} is not 1")]
    Norm(f64),
    #[error("shape: {0}")]
    Shape(String),
    #[error("duplicate basis index {0}")]
    Duplicate(u64),
    #[error("eps {0} outside (0, 1)")]
    Eps(f64),
    #[error("needs {needed} ancillas, {available} available")]
    Infeasible { needed: usize, available: usize },
    #[error(transparent)]
    Select(#[from] SelectError),
    #[error(transparent)]
    Saim(#[from] SaimError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

const NORM_TOL: f64 = 1e-9;

fn check_norm(sq: f64) -> Result<(), StateError> {
    if (sq.sqrt() - 1.0).abs() > NORM_TOL {
        return Err(StateError::Norm(sq.sqrt()));
    }
    Ok(())
}

pub(crate) fn check_eps(eps: f64) -> Result<(), StateError> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(StateError::Eps(eps));
    }
    Ok(())
}

/// 2^n amplitudes; basis index bit i is qubit i.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseAmplitudes {
    n: usize,
    amps: Vec<C64>,
}

impl DenseAmplitudes {
    pub fn new(amps: Vec<C64>) -> Result<DenseAmplitudes, StateError> {
        if !amps.len().is_power_of_two() {
            return Err(StateError::Shape(format!("{} amplitudes", amps.len())));
        }
        check_norm(amps.iter().map(|a| a.norm_sqr()).sum())?;
        Ok(DenseAmplitudes {
            n: amps.len().trailing_zeros() as usize,
            amps,
        })
    }

    /// Scales a nonzero vector to unit norm.
    pub fn normalize(mut amps: Vec<C64>) -> Result<DenseAmplitudes, StateError> {
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(StateError::Norm(norm));
        }
        amps.iter_mut().for_each(|a| *a /= norm);
        DenseAmplitudes::new(amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }
}

/// s pairs (basis index, amplitude) over n qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseAmplitudes {
    n: usize,
    entries: Vec<(u64, C64)>,
}

impl SparseAmplitudes {
    pub fn new(n: usize, mut entries: Vec<(u64, C64)>) -> Result<SparseAmplitudes, StateError> {
        if n > 63 {
            return Err(StateError::Shape(format!("{n} qubits")));
        }
        entries.sort_by_key(|e| e.0);
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(StateError::Duplicate(w[0].0));
            }
        }
        if let Some(e) = entries.iter().find(|e| e.0 >> n != 0) {
            return Err(StateError::Shape(format!("index {} needs more than {n} qubits", e.0)));
        }
        check_norm(entries.iter().map(|e| e.1.norm_sqr()).sum())?;
        Ok(SparseAmplitudes { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sorted by index.
    pub fn entries(&self) -> &[(u64, C64)] {
        &self.entries
    }

    pub fn to_dense(&self) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); 1 << self.n];
        for &(q, a) in &self.entries {
            v[q as usize] = a;
        }
        v
    }
}

/// Subtree norms and averaged phases, level 0 (root) to level n (the
/// amplitudes). Node k of level L covers the basis states whose top L bits
/// read k; its children are 2k and 2k+1.
#[derive(Clone, Debug)]
pub struct TreeTable {
    pub mags: Vec<Vec<f64>>,
    pub phases: Vec<Vec<f64>>,
}

impl TreeTable {
    pub fn new(amps: &[C64]) -> TreeTable {
        let n = amps.len().trailing_zeros() as usize;
        let mut mags = vec![Vec::new(); n + 1];
        let mut phases = vec![Vec::new(); n + 1];
        mags[n] = amps.iter().map(|a| a.norm()).collect();
        phases[n] = amps.iter().map(|a| if a.norm() == 0.0 { 0.0 } else { a.arg() }).collect();
        for l in (0..n).rev() {
            mags[l] = mags[l + 1].chunks(2).map(|c| c[0].hypot(c[1])).collect();
            phases[l] = phases[l + 1].chunks(2).map(|c| (c[0] + c[1]) / 2.0).collect();
        }
        TreeTable { mags, phases }
    }

    pub fn n(&self) -> usize {
        self.mags.len() - 1
    }

    pub fn root_phase(&self) -> f64 {
        self.phases[0][0]
    }
}
