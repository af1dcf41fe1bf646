use circuit_core::{Circuit, CircuitBuilder, Qubit};
use num_complex::Complex64 as C64;
use rotation_synth::{push_controlled_rotation, Axis};
use select_oracle::emit_recursive;

use crate::{check_eps, DenseAmplitudes, StateError, TreeTable};

/// Angles below this are dropped.
pub(crate) const ANGLE_TOL: f64 = 1e-14;

/// Layer j (1-based) sits at index j-1 and holds 2^{j-1} angles, one per
/// value of the j-1 control qubits above its target.
#[derive(Clone, Debug, PartialEq)]
pub struct UcrAngleTable {
    pub y: Vec<Vec<f64>>,
    pub z: Vec<Vec<f64>>,
    /// Global phase left over once all layers are applied.
    pub phase: f64,
}

pub(crate) fn table_of(amps: &[C64]) -> UcrAngleTable {
    let t = TreeTable::new(amps);
    let n = t.n();
    let (mut y, mut z) = (Vec::with_capacity(n), Vec::with_capacity(n));
    for j in 1..=n {
        y.push(t.mags[j].chunks(2).map(|c| 2.0 * c[1].atan2(c[0])).collect());
        z.push(t.phases[j].chunks(2).map(|c| c[1] - c[0]).collect());
    }
    UcrAngleTable {
        y,
        z,
        phase: t.root_phase(),
    }
}

pub fn ucr_angles(a: &DenseAmplitudes) -> UcrAngleTable {
    table_of(a.amps())
}

/// Per-layer allocation ε_j = eps/2^{n-j+2}, j = 1..n; both rotation
/// layers of level j stay within ε_j.
pub fn ucr_budget(n: usize, eps: f64) -> Vec<f64> {
    (1..=n).map(|j| eps / 2f64.powi((n - j + 2) as i32)).collect()
}

pub fn ucr_ancillas(n: usize, controlled: bool) -> usize {
    n.saturating_sub(1).max(controlled as usize)
}

/// e^{iω} on `control` = |1⟩, exactly the identity otherwise, borrowing
/// one clean qubit. Costs two rotations at eps/2.
pub(crate) fn phase_kick(b: &mut CircuitBuilder, control: Qubit, omega: f64, eps: f64) {
    if omega.abs() < ANGLE_TOL {
        return;
    }
    let t = b.alloc();
    b.rz(t, -omega, eps / 2.0);
    b.cnot(control, t);
    b.rz(t, omega, eps / 2.0);
    b.cnot(control, t);
    b.release(t);
}

/// Prepare `amps` on `data` (least significant first) from |0…0⟩, within
/// eps, conditioned on `control` when given.
pub fn emit_ucr(b: &mut CircuitBuilder, control: Option<Qubit>, data: &[Qubit], amps: &[C64], eps: f64) {
    let n = data.len();
    assert_eq!(amps.len(), 1 << n, "amplitude count");
    let t = table_of(amps);
    let budget = ucr_budget(n, eps);
    for (axis, layers) in [(Axis::Y, &t.y), (Axis::Z, &t.z)] {
        for j in 1..=n {
            let ang = &layers[j - 1];
            let ej = budget[j - 1];
            let target = data[n - j];
            let msb: Vec<Qubit> = (n - j + 1..n).rev().map(|i| data[i]).collect();
            emit_recursive(
                b,
                control,
                &msb,
                &|k| ang[k].abs() >= ANGLE_TOL,
                &mut |b, k, c| match c {
                    Some(c) => push_controlled_rotation(b, axis, ang[k], ej, c, target),
                    None if axis == Axis::Y => b.ry(target, ang[k], ej),
                    None => b.rz(target, ang[k], ej),
                },
            );
        }
    }
    for (j, &ej) in budget.iter().enumerate() {
        b.budget(format!("ucr.layer{}", j + 1), ej);
    }
    match control {
        None => b.add_phase(t.phase),
        Some(c) => {
            b.budget("ucr.phase", eps / 4.0);
            phase_kick(b, c, t.phase, eps / 4.0);
        }
    }
}

/// Data register `q` (n qubits).
pub fn synth_state_ucr(a: &DenseAmplitudes, eps: f64) -> Result<Circuit, StateError> {
    check_eps(eps)?;
    let mut b = CircuitBuilder::new();
    let q = b.register("q", a.n());
    emit_ucr(&mut b, None, &q, a.amps(), eps);
    Ok(b.finish()?)
}
