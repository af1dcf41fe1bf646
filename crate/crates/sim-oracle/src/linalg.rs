use nalgebra::DMatrix;

use crate::{SimError, C64};

pub type DenseMatrix = DMatrix<C64>;

/// Largest singular value of a − b.
pub fn spectral_distance(a: &DenseMatrix, b: &DenseMatrix) -> Result<f64, SimError> {
    if a.shape() != b.shape() {
        return Err(SimError::Dimension(format!(
            "{:?} vs {:?}",
            a.shape(),
            b.shape()
        )));
    }
    let d = a - b;
    if d.is_empty() {
        return Ok(0.0);
    }
    Ok(d.singular_values().max())
}

/// Block with the top `n_anc` qubits projected onto |0…0⟩ on both sides.
pub fn extract_block(u: &DenseMatrix, n_anc: usize) -> Result<DenseMatrix, SimError> {
    let dim = u.nrows();
    if dim != u.ncols() || !dim.is_power_of_two() {
        return Err(SimError::Layout("matrix is not a square qubit operator".into()));
    }
    let q = dim.trailing_zeros() as usize;
    if n_anc > q {
        return Err(SimError::Layout(format!(
            "{n_anc} ancillas on a {q}-qubit operator"
        )));
    }
    let n = 1usize << (q - n_anc);
    Ok(u.view((0, 0), (n, n)).into_owned())
}

pub fn state_distance(a: &[C64], b: &[C64]) -> Result<f64, SimError> {
    if a.len() != b.len() {
        return Err(SimError::Dimension(format!("{} vs {}", a.len(), b.len())));
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt())
}
