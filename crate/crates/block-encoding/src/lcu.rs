use std::f64::consts::FRAC_PI_2;

use circuit_core::{inverse, metrics, Circuit, CircuitBuilder, CostModel, Qubit};
use num_complex::Complex64 as C64;
use select_oracle::{emit_recursive, emit_select_pauli, split_ancillas, ControlledImpl, PauliString, SelectError};
use sim_oracle::DenseMatrix;
use state_prep::{emit_ucr, ucr_ancillas};

use crate::{check_eps, pauli_matrix, BeError, BlockEncodingReport};

/// H = Σ_p c_p·P_p over `n` qubits. Each c_p may carry a phase that is a
/// multiple of π/2; it moves into the string.
#[derive(Clone, Debug, PartialEq)]
pub struct LcuSpec {
    n: usize,
    terms: Vec<(C64, PauliString)>,
}

impl LcuSpec {
    pub fn new(n: usize, terms: Vec<(C64, PauliString)>) -> Result<LcuSpec, BeError> {
        if terms.is_empty() {
            return Err(BeError::Shape("no terms".into()));
        }
        if let Some((_, p)) = terms.iter().find(|(_, p)| p.len() != n) {
            return Err(BeError::Shape(format!("term {p} on {n} qubits")));
        }
        for &(c, _) in &terms {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(BeError::Coefficient(c.norm()));
            }
            quarter_turns(c)?;
        }
        let s = LcuSpec { n, terms };
        if s.alpha() == 0.0 {
            return Err(BeError::Degenerate);
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(C64, PauliString)] {
        &self.terms
    }

    pub fn alpha(&self) -> f64 {
        self.terms.iter().map(|(c, _)| c.norm()).sum()
    }

    /// Magnitudes and phase-carrying strings, padded with zero-weight
    /// identities to a power of two. Zero terms become identities too.
    pub fn padded(&self) -> (Vec<f64>, Vec<PauliString>) {
        let size = self.terms.len().next_power_of_two();
        let mut a = Vec::with_capacity(size);
        let mut p = Vec::with_capacity(size);
        for (c, s) in &self.terms {
            let k = quarter_turns(*c).expect("checked in new");
            a.push(c.norm());
            p.push(if c.norm() == 0.0 {
                PauliString::identity(self.n)
            } else {
                s.clone().with_phase(s.phase + k)
            });
        }
        a.resize(size, 0.0);
        p.resize(size, PauliString::identity(self.n));
        (a, p)
    }

    pub fn dense(&self) -> DenseMatrix {
        let dim = 1 << self.n;
        self.terms
            .iter()
            .fold(DenseMatrix::zeros(dim, dim), |acc, (c, p)| acc + pauli_matrix(p) * *c)
    }
}

fn quarter_turns(c: C64) -> Result<u8, BeError> {
    if c.norm() == 0.0 {
        return Ok(0);
    }
    let k = c.arg() / FRAC_PI_2;
    let r = k.round();
    if (k - r).abs() * c.norm() > 1e-12 {
        return Err(BeError::Phase(c));
    }
    Ok(r.rem_euclid(4.0) as u8)
}

fn log2_exact(p: usize) -> Result<usize, BeError> {
    if p == 0 || !p.is_power_of_two() {
        return Err(BeError::Shape(format!("{p} terms is not a power of two")));
    }
    Ok(p.trailing_zeros() as usize)
}

/// |α⟩ = Σ √(α_p/α)|p⟩ on its own `enc` register.
fn prep_circuit(alphas: &[f64], eps: f64) -> Result<Circuit, BeError> {
    let m = log2_exact(alphas.len())?;
    let total: f64 = alphas.iter().sum();
    let amps: Vec<C64> = alphas.iter().map(|a| C64::new((a / total).sqrt(), 0.0)).collect();
    let mut b = CircuitBuilder::new();
    let enc = b.register("enc", m);
    emit_ucr(&mut b, None, &enc, &amps, eps);
    Ok(b.finish()?)
}

/// Prep accuracy that keeps α·(2δ + δ²) within 2eps/3.
fn prep_eps(eps: f64, alpha: f64) -> f64 {
    eps / (3.0 * alpha.max(1.0))
}

fn assemble(
    alphas: &[f64],
    n: usize,
    eps: f64,
    select: impl FnOnce(&mut CircuitBuilder, &[Qubit], &[Qubit]) -> Result<(), BeError>,
) -> Result<(Circuit, BlockEncodingReport), BeError> {
    check_eps(eps)?;
    let alpha: f64 = alphas.iter().sum();
    if alpha == 0.0 {
        return Err(BeError::Degenerate);
    }
    let g = prep_circuit(alphas, prep_eps(eps, alpha))?;
    let mut b = CircuitBuilder::new();
    let sys = b.register("sys", n);
    let enc = b.register("enc", g.n_data());
    b.append(&g, &enc);
    select(&mut b, &enc, &sys)?;
    b.append(&inverse(&g), &enc);
    let c = b.finish()?;
    let report = BlockEncodingReport {
        alpha,
        n_anc: enc.len() + c.ancilla_peak(),
        n_block: enc.len(),
        eps_requested: eps,
        eps_measured: None,
        resource: metrics(&c, CostModel::default())?,
    };
    Ok((c, report))
}

/// Σ_p α_p·u_p with caller-supplied payloads. Data qubits: `sys` then the
/// encoding register `enc`. At most `n_anc` ancillas in all, `enc`
/// included.
pub fn synth_lcu_be(
    coeffs: &[f64],
    terms: &[&dyn ControlledImpl],
    eps: f64,
    n_anc: usize,
) -> Result<(Circuit, BlockEncodingReport), BeError> {
    if coeffs.len() != terms.len() {
        return Err(BeError::Shape(format!("{} coefficients for {} terms", coeffs.len(), terms.len())));
    }
    if let Some(&a) = coeffs.iter().find(|a| !(a.is_finite() && **a >= 0.0)) {
        return Err(BeError::Coefficient(a));
    }
    let n = terms.first().map_or(0, |t| t.width());
    if terms.iter().any(|t| t.width() != n) {
        return Err(BeError::Shape("payload widths differ".into()));
    }
    let size = coeffs.len().next_power_of_two();
    let mut alphas = coeffs.to_vec();
    alphas.resize(size, 0.0);
    let (c, report) = assemble(&alphas, n, eps, |b, enc, sys| {
        let msb: Vec<Qubit> = enc.iter().rev().copied().collect();
        emit_recursive(
            b,
            None,
            &msb,
            &|p| p < terms.len() && alphas[p] > 0.0 && !terms[p].is_identity(),
            &mut |b, p, ctl| terms[p].emit(b, ctl, sys),
        );
        Ok(())
    })?;
    if report.n_anc > n_anc {
        return Err(BeError::Infeasible {
            needed: report.n_anc,
            available: n_anc,
        });
    }
    Ok((c, report))
}

/// Smallest and largest useful total budgets for [`synth_pauli_lcu_be`].
pub fn lcu_ancilla_range(spec: &LcuSpec) -> (usize, usize) {
    let (a, p) = spec.padded();
    let m = log2_exact(a.len()).expect("padded");
    let prep = ucr_ancillas(m, false);
    (
        m + prep.max(split_ancillas(&p, m, 0, false)),
        m + prep.max(split_ancillas(&p, m, m, false)),
    )
}

/// Pauli LCU with the select's ladder/router split sized to what is left of
/// `n_anc` once the encoding register is taken.
pub fn synth_pauli_lcu_be(spec: &LcuSpec, eps: f64, n_anc: usize) -> Result<(Circuit, BlockEncodingReport), BeError> {
    let (lo, _) = lcu_ancilla_range(spec);
    let infeasible = BeError::Infeasible {
        needed: lo,
        available: n_anc,
    };
    if n_anc < lo {
        return Err(infeasible);
    }
    let (alphas, strings) = spec.padded();
    assemble(&alphas, spec.n, eps, |b, enc, sys| {
        let pool = n_anc - enc.len();
        emit_select_pauli(b, None, enc, &strings, sys, pool).map_err(|e| match e {
            SelectError::Infeasible { .. } => infeasible.clone(),
            e => e.into(),
        })?;
        Ok(())
    })
}
