use circuit_core::{Circuit, CircuitBuilder, Lit, Qubit};
use num_complex::Complex64 as C64;

use crate::ucr::{phase_kick, ANGLE_TOL};
use crate::{check_eps, DenseAmplitudes, StateError, TreeTable};

/// 6/π², so that Σ_L K/(n-L+1)² stays below 1 for every n.
pub const K: f64 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);

/// ε_L = K·eps/(n-L+1)² for L = 1..n.
pub fn tree_budget(n: usize, eps: f64) -> Vec<f64> {
    (1..=n).map(|l| K * eps / ((n - l + 1) as f64).powi(2)).collect()
}

/// Ancilla high-water mark of [`emit_tree`].
pub fn tree_ancillas(n: usize, controlled: bool) -> usize {
    if n == 0 {
        return controlled as usize;
    }
    let nodes = (1usize << (n + 1)) - 2;
    let late = ((1usize << (n - 1)) - 1).max(controlled as usize);
    nodes + late + !controlled as usize
}

pub(crate) fn core_ancillas(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    (1usize << (n + 1)) - 2 + (1usize << (n - 1)) - 1
}

/// Builds the amplitude tree under `root` (which must hold |1⟩ for the
/// branch that prepares), copies it out to `data`, and uncomputes it.
/// Everything but the root phase is prepared; that phase is returned.
/// The tree is clean only when `data` starts in |0…0⟩.
pub(crate) fn emit_tree_core(b: &mut CircuitBuilder, root: Qubit, data: &[Qubit], amps: &[C64], eps: f64) -> f64 {
    let n = data.len();
    let t = TreeTable::new(amps);
    if n == 0 {
        return t.root_phase();
    }
    let budget = tree_budget(n, eps);
    let mut nodes = vec![vec![root]];
    for l in 1..=n {
        nodes.push(b.alloc_n(1 << l));
    }

    for l in 1..=n {
        let el = budget[l - 1];
        for j in 0..1usize << (l - 1) {
            let (a, bq, c) = (nodes[l - 1][j], nodes[l][2 * j + 1], nodes[l][2 * j]);
            let (m0, m1) = (t.mags[l][2 * j], t.mags[l][2 * j + 1]);
            if m0 == 0.0 && m1 == 0.0 {
                continue;
            }
            let theta = m1.atan2(m0);
            let phi = (t.phases[l][2 * j] - t.phases[l][2 * j + 1]) / 2.0;
            if theta.abs() >= ANGLE_TOL {
                b.cnot(a, bq);
                b.ry(bq, -theta, el / 4.0);
                b.cnot(a, bq);
                b.ry(bq, theta, el / 4.0);
            }
            if phi.abs() >= ANGLE_TOL {
                b.rz(bq, -phi, el / 4.0);
                b.cnot(a, bq);
                b.rz(bq, phi, el / 4.0);
                b.cnot(a, bq);
            }
            if theta.abs() < ANGLE_TOL {
                b.cnot(a, c);
            } else if m0 != 0.0 {
                b.toffoli_lit(Lit::pos(a), Lit::neg(bq), c);
            }
        }
    }

    for l in 1..=n {
        let odd: Vec<Qubit> = nodes[l].iter().skip(1).step_by(2).copied().collect();
        let red = b.xor_reduce(&odd);
        b.cnot(odd[0], data[n - l]);
        b.undo(&red);
    }

    for l in (1..=n).rev() {
        let d = data[n - l];
        let copies = b.alloc_n((1 << (l - 1)) - 1);
        b.fanout(d, &copies);
        for j in 0..1usize << (l - 1) {
            let (p, even, odd) = (nodes[l - 1][j], nodes[l][2 * j], nodes[l][2 * j + 1]);
            let dj = if j == 0 { d } else { copies[j - 1] };
            b.cnot(p, even);
            b.cnot(odd, even);
            b.toffoli(p, dj, odd);
        }
        b.unfanout(d, &copies);
        b.release_all(&copies);
    }
    for l in (1..=n).rev() {
        b.release_all(&nodes[l]);
    }
    t.root_phase()
}

/// Prepare `amps` on `data` from |0…0⟩, within eps. With a control, the
/// control qubit takes the root's place and |0⟩ on it leaves everything
/// untouched.
pub fn emit_tree(b: &mut CircuitBuilder, control: Option<Qubit>, data: &[Qubit], amps: &[C64], eps: f64) {
    let n = data.len();
    assert_eq!(amps.len(), 1 << n, "amplitude count");
    if n == 0 {
        match control {
            None => b.add_phase(amps[0].arg()),
            Some(c) => {
                b.budget("tree.phase", eps);
                phase_kick(b, c, amps[0].arg(), eps);
            }
        }
        return;
    }
    for (l, el) in tree_budget(n, eps).into_iter().enumerate() {
        b.budget(format!("tree.layer{}", l + 1), el);
    }
    match control {
        None => {
            let root = b.alloc();
            b.x(root);
            let w = emit_tree_core(b, root, data, amps, eps);
            b.x(root);
            b.release(root);
            b.add_phase(w);
        }
        Some(c) => {
            let w = emit_tree_core(b, c, data, amps, eps);
            // what the layer budgets leave over is at least K·eps/(n+1)
            let slack = K * eps / (n + 1) as f64;
            b.budget("tree.phase", slack);
            phase_kick(b, c, w, slack);
        }
    }
}

/// Data register `q` (n qubits), plus `ctl` first when `controlled`.
pub fn synth_state_tree(a: &DenseAmplitudes, eps: f64, controlled: bool) -> Result<Circuit, StateError> {
    check_eps(eps)?;
    let mut b = CircuitBuilder::new();
    let ctl = controlled.then(|| b.register("ctl", 1)[0]);
    let q = b.register("q", a.n());
    emit_tree(&mut b, ctl, &q, a.amps(), eps);
    Ok(b.finish()?)
}
