use circuit_core::Circuit;
use nalgebra::DMatrix;
use rustc_hash::FxHashMap;

use crate::fuse::{fused_ops, Op, M2};
use crate::{DenseMatrix, SimError, C64, STATE_CAP, UNITARY_CAP};

pub const SPARSE_QUBIT_CAP: usize = 256;
const TERM_CAP: usize = 1 << 22;
const PRUNE: f64 = 1e-15;

type Key = [u64; 4];

#[inline]
fn bit(k: &Key, q: usize) -> bool {
    (k[q >> 6] >> (q & 63)) & 1 == 1
}

#[inline]
fn flip(k: &mut Key, q: usize) {
    k[q >> 6] ^= 1 << (q & 63);
}

/// Basis-state → amplitude list over up to 256 qubits.
#[derive(Clone, Debug)]
pub struct SparseState {
    pub q: usize,
    pub terms: Vec<(Key, C64)>,
}

impl SparseState {
    fn step(&mut self, op: &Op) -> Result<(), SimError> {
        match *op {
            Op::Cnot(c, t) => {
                for (k, _) in self.terms.iter_mut() {
                    if bit(k, c) {
                        flip(k, t);
                    }
                }
            }
            Op::One(q, ref m) => self.one(q, m)?,
        }
        Ok(())
    }

    fn one(&mut self, q: usize, m: &M2) -> Result<(), SimError> {
        let off = m[0][1].norm() < PRUNE && m[1][0].norm() < PRUNE;
        let anti = m[0][0].norm() < PRUNE && m[1][1].norm() < PRUNE;
        if off {
            for (k, a) in self.terms.iter_mut() {
                *a *= if bit(k, q) { m[1][1] } else { m[0][0] };
            }
        } else if anti {
            for (k, a) in self.terms.iter_mut() {
                let b = bit(k, q);
                *a *= if b { m[0][1] } else { m[1][0] };
                flip(k, q);
            }
        } else {
            let mut index: FxHashMap<Key, usize> = FxHashMap::default();
            index.reserve(self.terms.len() * 2);
            let mut out: Vec<(Key, C64)> = Vec::with_capacity(self.terms.len() * 2);
            for &(k, a) in &self.terms {
                let b = bit(&k, q) as usize;
                let mut k0 = k;
                if b == 1 {
                    flip(&mut k0, q);
                }
                let mut k1 = k0;
                flip(&mut k1, q);
                for (key, coef) in [(k0, m[0][b]), (k1, m[1][b])] {
                    let v = coef * a;
                    match index.get(&key) {
                        Some(&i) => out[i].1 += v,
                        None => {
                            index.insert(key, out.len());
                            out.push((key, v));
                        }
                    }
                }
            }
            out.retain(|(_, a)| a.norm() >= PRUNE);
            if out.len() > TERM_CAP {
                return Err(SimError::Terms(TERM_CAP));
            }
            self.terms = out;
        }
        Ok(())
    }

    pub fn run(&mut self, c: &Circuit) -> Result<(), SimError> {
        if c.n_qubits() > SPARSE_QUBIT_CAP {
            return Err(SimError::Cap {
                needed: c.n_qubits(),
                cap: SPARSE_QUBIT_CAP,
            });
        }
        for op in fused_ops(c.gates(), c.n_qubits()) {
            self.step(&op)?;
        }
        if c.global_phase() != 0.0 {
            let ph = C64::from_polar(1.0, c.global_phase());
            self.terms.iter_mut().for_each(|(_, a)| *a *= ph);
        }
        Ok(())
    }
}

/// Output restricted to ancillas in |0…0⟩, with the norm that leaked out.
#[derive(Clone, Debug)]
pub struct Probe {
    pub amps: Vec<C64>,
    pub leakage: f64,
}

/// Run on a data-register input (ancillas start in |0…0⟩).
pub fn run_data(c: &Circuit, input: &[C64]) -> Result<Probe, SimError> {
    let nd = c.n_data();
    if nd > STATE_CAP {
        return Err(SimError::Cap {
            needed: nd,
            cap: STATE_CAP,
        });
    }
    if input.len() != 1 << nd {
        return Err(SimError::Dimension(format!(
            "input length {} for {} data qubits",
            input.len(),
            nd
        )));
    }
    let terms = input
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 0.0)
        .map(|(k, &a)| ([k as u64, 0, 0, 0], a))
        .collect();
    let mut st = SparseState {
        q: c.n_qubits(),
        terms,
    };
    st.run(c)?;
    let mask = (1u64 << nd) - 1;
    let mut amps = vec![C64::new(0.0, 0.0); 1 << nd];
    let mut leak = 0.0;
    for (k, a) in &st.terms {
        if k[0] & !mask == 0 && k[1] == 0 && k[2] == 0 && k[3] == 0 {
            amps[k[0] as usize] += a;
        } else {
            leak += a.norm_sqr();
        }
    }
    Ok(Probe {
        amps,
        leakage: leak.sqrt(),
    })
}

pub fn run_basis(c: &Circuit, k: usize) -> Result<Probe, SimError> {
    let mut input = vec![C64::new(0.0, 0.0); 1 << c.n_data()];
    input[k] = C64::new(1.0, 0.0);
    run_data(c, &input)
}

/// Data-register operator with ancillas projected onto |0…0⟩ at both ends,
/// plus the worst per-column leakage.
pub fn data_unitary(c: &Circuit) -> Result<(DenseMatrix, f64), SimError> {
    let nd = c.n_data();
    if nd > UNITARY_CAP {
        return Err(SimError::Cap {
            needed: nd,
            cap: UNITARY_CAP,
        });
    }
    let dim = 1usize << nd;
    let mut u = DMatrix::zeros(dim, dim);
    let mut worst: f64 = 0.0;
    for k in 0..dim {
        let p = run_basis(c, k)?;
        worst = worst.max(p.leakage);
        for (r, a) in p.amps.iter().enumerate() {
            u[(r, k)] = *a;
        }
    }
    Ok((u, worst))
}
