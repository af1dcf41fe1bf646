use circuit_core::Circuit;
use nalgebra::DMatrix;

use crate::fuse::{fused_ops, Op, M2};
use crate::{DenseMatrix, SimError, C64, STATE_CAP, UNITARY_CAP};

/// Qubit q is bit q of the basis index.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    pub q: usize,
    pub amps: Vec<C64>,
}

impl DenseState {
    pub fn zero(q: usize) -> DenseState {
        DenseState::basis(q, 0)
    }

    pub fn basis(q: usize, k: usize) -> DenseState {
        let mut amps = vec![C64::new(0.0, 0.0); 1 << q];
        amps[k] = C64::new(1.0, 0.0);
        DenseState { q, amps }
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }
}

fn apply_one(amps: &mut [C64], q: usize, m: &M2) {
    let bit = 1usize << q;
    let half = amps.len() >> 1;
    let low = bit - 1;
    for idx in 0..half {
        let i0 = ((idx & !low) << 1) | (idx & low);
        let i1 = i0 | bit;
        let (a, b) = (amps[i0], amps[i1]);
        amps[i0] = m[0][0] * a + m[0][1] * b;
        amps[i1] = m[1][0] * a + m[1][1] * b;
    }
}

fn apply_cnot(amps: &mut [C64], c: usize, t: usize) {
    let (cb, tb) = (1usize << c, 1usize << t);
    for i in 0..amps.len() {
        if i & cb != 0 && i & tb == 0 {
            amps.swap(i, i | tb);
        }
    }
}

fn run(c: &Circuit, amps: &mut [C64]) {
    for op in fused_ops(c.gates(), c.n_qubits()) {
        match op {
            Op::One(q, m) => apply_one(amps, q, &m),
            Op::Cnot(ctl, t) => apply_cnot(amps, ctl, t),
        }
    }
    let ph = C64::from_polar(1.0, c.global_phase());
    if c.global_phase() != 0.0 {
        amps.iter_mut().for_each(|a| *a *= ph);
    }
}

pub fn apply(c: &Circuit, s: &DenseState) -> Result<DenseState, SimError> {
    apply_with_cap(c, s, STATE_CAP)
}

pub fn apply_with_cap(c: &Circuit, s: &DenseState, cap: usize) -> Result<DenseState, SimError> {
    if c.n_qubits() > cap {
        return Err(SimError::Cap {
            needed: c.n_qubits(),
            cap,
        });
    }
    if s.q != c.n_qubits() {
        return Err(SimError::Dimension(format!(
            "state has {} qubits, circuit {}",
            s.q,
            c.n_qubits()
        )));
    }
    let mut out = s.clone();
    run(c, &mut out.amps);
    Ok(out)
}

pub fn unitary_of(c: &Circuit) -> Result<DenseMatrix, SimError> {
    unitary_of_with_cap(c, UNITARY_CAP)
}

pub fn unitary_of_with_cap(c: &Circuit, cap: usize) -> Result<DenseMatrix, SimError> {
    let q = c.n_qubits();
    if q > cap {
        return Err(SimError::Cap { needed: q, cap });
    }
    let dim = 1usize << q;
    let mut u = DMatrix::zeros(dim, dim);
    let mut col = vec![C64::new(0.0, 0.0); dim];
    for k in 0..dim {
        col.fill(C64::new(0.0, 0.0));
        col[k] = C64::new(1.0, 0.0);
        run(c, &mut col);
        u.set_column(k, &nalgebra::DVector::from_column_slice(&col));
    }
    Ok(u)
}
