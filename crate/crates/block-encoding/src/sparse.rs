use circuit_core::{inverse, metrics, CircuitBuilder, CostModel, Circuit};
use num_complex::Complex64 as C64;
use sim_oracle::DenseMatrix;
use state_prep::{emit_rows, emit_ucr, rows_ancillas, ucr_ancillas, StateError};

use crate::{check_eps, BeError, BlockEncodingReport};

/// 2^n × 2^n matrix from (row, col, value) triples. Zero values are
/// dropped; positions must be distinct.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexSparseMatrix {
    n: usize,
    entries: Vec<(u64, u64, C64)>,
}

impl ComplexSparseMatrix {
    pub fn new(n: usize, mut entries: Vec<(u64, u64, C64)>) -> Result<ComplexSparseMatrix, BeError> {
        if n == 0 || n > 30 {
            return Err(BeError::Shape(format!("{n} qubits")));
        }
        let dim = 1u64 << n;
        if let Some(&(r, c, _)) = entries.iter().find(|e| e.0 >= dim || e.1 >= dim) {
            return Err(BeError::Shape(format!("entry ({r}, {c}) outside {dim}×{dim}")));
        }
        if entries.iter().any(|e| !e.2.re.is_finite() || !e.2.im.is_finite()) {
            return Err(BeError::Shape("value is not finite".into()));
        }
        entries.retain(|e| e.2 != C64::new(0.0, 0.0));
        entries.sort_by_key(|e| (e.0, e.1));
        if let Some(w) = entries.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(BeError::Shape(format!("duplicate entry ({}, {})", w[0].0, w[0].1)));
        }
        if entries.is_empty() {
            return Err(BeError::Degenerate);
        }
        Ok(ComplexSparseMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[(u64, u64, C64)] {
        &self.entries
    }

    /// Most nonzeros in any row.
    pub fn row_sparsity(&self) -> usize {
        self.rows().iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|e| e.2.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn dense(&self) -> DenseMatrix {
        let dim = 1 << self.n;
        let mut m = DenseMatrix::zeros(dim, dim);
        for &(r, c, v) in &self.entries {
            m[(r as usize, c as usize)] = v;
        }
        m
    }

    fn rows(&self) -> Vec<Vec<(u64, C64)>> {
        let mut rows = vec![Vec::new(); 1 << self.n];
        for &(r, c, v) in &self.entries {
            rows[r as usize].push((c, v));
        }
        rows
    }

    fn row_norms(&self) -> Vec<f64> {
        self.rows()
            .iter()
            .map(|r| r.iter().map(|e| e.1.norm_sqr()).sum::<f64>().sqrt())
            .collect()
    }

    /// Row j as the unit vector Σ_k conj(A_jk)/‖A_j‖ |k⟩.
    fn unit_rows(&self) -> Vec<Vec<(u64, C64)>> {
        self.rows()
            .into_iter()
            .zip(self.row_norms())
            .map(|(r, norm)| r.into_iter().map(|(k, v)| (k, v.conj() / norm)).collect())
            .collect()
    }
}

fn state_err(e: StateError, needed: usize, available: usize) -> BeError {
    match e {
        StateError::Infeasible { .. } => BeError::Infeasible { needed, available },
        e => e.into(),
    }
}

/// Smallest and largest useful total budgets for [`synth_sparse_be`].
pub fn sparse_be_ancilla_range(a: &ComplexSparseMatrix) -> Result<(usize, usize), BeError> {
    let n = a.n;
    let (lo, hi) = rows_ancillas(n, &a.unit_rows())?;
    let ul = ucr_ancillas(n, false);
    Ok((n + ul.max(lo), n + ul.max(hi)))
}

/// α = ‖A‖_F. Data qubits: `sys` then the encoding register `enc`, both n
/// wide. At most `n_anc` ancillas in all, `enc` included.
///
/// With |A⟩ = Σ_j ‖A_j‖/α |j⟩ on `enc` and U_R|0⟩|j⟩ = |A_j⟩|j⟩ where
/// ⟨k|A_j⟩ = conj(A_jk)/‖A_j‖, the product ⟨0,i|U_R†·SWAP·U_L|0,k⟩ is
/// A_ik/α.
pub fn synth_sparse_be(a: &ComplexSparseMatrix, eps: f64, n_anc: usize) -> Result<(Circuit, BlockEncodingReport), BeError> {
    check_eps(eps)?;
    let n = a.n;
    let (lo, _) = sparse_be_ancilla_range(a)?;
    if n_anc < lo {
        return Err(BeError::Infeasible {
            needed: lo,
            available: n_anc,
        });
    }
    let pool = n_anc - n;
    let alpha = a.frobenius();
    let half = eps / (2.0 * alpha.max(1.0));

    let mut r = CircuitBuilder::new();
    let rsys = r.register("sys", n);
    let renc = r.register("enc", n);
    emit_rows(&mut r, &rsys, &renc, &a.unit_rows(), half, pool).map_err(|e| state_err(e, lo, n_anc))?;
    let ur = r.finish()?;

    let mut b = CircuitBuilder::new();
    let sys = b.register("sys", n);
    let enc = b.register("enc", n);
    let norms: Vec<C64> = a.row_norms().iter().map(|x| C64::new(x / alpha, 0.0)).collect();
    emit_ucr(&mut b, None, &enc, &norms, half);
    for (&s, &e) in sys.iter().zip(&enc) {
        b.cnot(s, e);
        b.cnot(e, s);
        b.cnot(s, e);
    }
    let map: Vec<_> = sys.iter().chain(&enc).copied().collect();
    b.append(&inverse(&ur), &map);
    let c = b.finish()?;
    let report = BlockEncodingReport {
        alpha,
        n_anc: n + c.ancilla_peak(),
        n_block: n,
        eps_requested: eps,
        eps_measured: None,
        resource: metrics(&c, CostModel::default())?,
    };
    Ok((c, report))
}
