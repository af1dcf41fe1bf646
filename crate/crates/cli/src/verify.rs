//! Compare a circuit against what its input says it should do.

use block_encoding::{block_distance, pauli_matrix};
use circuit_core::Circuit;
use num_complex::Complex64 as C64;
use serde::Serialize;
use sim_oracle::{data_unitary, run_basis, spectral_distance, state_distance, DenseMatrix};
use sparse_access::completed_f;

use crate::input::Target;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub metric: &'static str,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn permutation(q: usize, f: impl Fn(usize) -> usize) -> DenseMatrix {
    let dim = 1 << q;
    let mut m = DenseMatrix::zeros(dim, dim);
    for k in 0..dim {
        m[(f(k), k)] = C64::new(1.0, 0.0);
    }
    m
}

fn expect_width(c: &Circuit, n: usize) -> Result<(), CliError> {
    if c.n_data() != n {
        return Err(CliError::Schema(format!("circuit has {} data qubits, target {n}", c.n_data())));
    }
    Ok(())
}

fn unitary_error(c: &Circuit, want: &DenseMatrix) -> Result<f64, CliError> {
    let (u, _) = data_unitary(c)?;
    Ok(spectral_distance(&u, want)?)
}

/// Distance between the circuit and the target, in the target's natural
/// metric.
pub fn measure(c: &Circuit, target: &Target) -> Result<(&'static str, f64), CliError> {
    match target {
        Target::State(s) => {
            let want = s.amplitudes()?;
            expect_width(c, s.n)?;
            let p = run_basis(c, 0)?;
            let d = state_distance(&p.amps, &want)?;
            Ok(("state_distance", (d * d + p.leakage * p.leakage).sqrt()))
        }
        Target::Pauli(p) => {
            let strings = p.parse()?;
            expect_width(c, p.m + p.l)?;
            let mats: Vec<DenseMatrix> = strings.iter().map(pauli_matrix).collect();
            let (m, dim) = (p.m, 1usize << (p.m + p.l));
            let mut want = DenseMatrix::zeros(dim, dim);
            for col in 0..dim {
                let (x, t) = (col & ((1 << m) - 1), col >> m);
                for row_t in 0..1 << p.l {
                    want[(x + (row_t << m), col)] = mats[x][(row_t, t)];
                }
            }
            Ok(("spectral_distance", unitary_error(c, &want)?))
        }
        Target::Sbm(s) => {
            let f = s.parse()?;
            expect_width(c, s.n + s.word)?;
            let lo = (1 << s.n) - 1;
            let want = permutation(s.n + s.word, |k| k ^ ((f.eval((k & lo) as u64) as usize) << s.n));
            Ok(("spectral_distance", unitary_error(c, &want)?))
        }
        Target::Matrix(mi) => {
            let a = mi.parse()?;
            let n = mi.n;
            let want = match mi.oracle.as_deref().unwrap_or("oh") {
                "oh" => {
                    expect_width(c, 2 * n + mi.d)?;
                    let f = a.value_fn();
                    let lo = (1 << (2 * n)) - 1;
                    permutation(2 * n + mi.d, |k| k ^ ((f.eval((k & lo) as u64) as usize) << (2 * n)))
                }
                "of" => {
                    expect_width(c, 2 * n)?;
                    let f = completed_f(&a);
                    let lo = (1 << n) - 1;
                    permutation(2 * n, |i| (i & lo) + (f[i & lo][i >> n] << n))
                }
                o => return Err(CliError::Schema(format!("unknown oracle `{o}`"))),
            };
            Ok(("spectral_distance", unitary_error(c, &want)?))
        }
        Target::Lcu(l) => {
            let spec = l.parse()?;
            if c.n_data() < l.n {
                return Err(CliError::Schema("circuit is narrower than the system".into()));
            }
            let d = block_distance(c, c.n_data() - l.n, spec.alpha(), &spec.dense())?;
            Ok(("block_distance", d))
        }
        Target::Complex(m) => {
            let a = m.parse()?;
            expect_width(c, 2 * m.n)?;
            Ok(("block_distance", block_distance(c, m.n, a.frobenius(), &a.dense())?))
        }
    }
}

pub fn verify(c: &Circuit, target: &Target, tolerance: f64) -> Result<VerifyReport, CliError> {
    let (metric, measured) = measure(c, target)?;
    Ok(VerifyReport {
        metric,
        measured,
        tolerance,
        pass: measured <= tolerance,
    })
}
