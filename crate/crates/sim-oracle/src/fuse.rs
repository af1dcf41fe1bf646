use std::f64::consts::FRAC_1_SQRT_2;

use circuit_core::Gate;

use crate::C64;

/// Row-major 2×2 complex matrix.
pub type M2 = [[C64; 2]; 2];


pub(crate) fn mul(a: &M2, b: &M2) -> M2 {
    let mut r = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

fn diag(a: C64, b: C64) -> M2 {
    [[a, C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), b]]
}

/// Matrix of a single-qubit gate; `None` for CNOT.
pub fn gate_matrix(g: &Gate) -> Option<M2> {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    Some(match *g {
        Gate::H(_) => [[h, h], [h, -h]],
        Gate::S(_) => diag(one, C64::i()),
        Gate::Sdg(_) => diag(one, -C64::i()),
        Gate::T(_) => diag(one, C64::from_polar(1.0, std::f64::consts::FRAC_PI_4)),
        Gate::Tdg(_) => diag(one, C64::from_polar(1.0, -std::f64::consts::FRAC_PI_4)),
        Gate::X(_) => [[zero, one], [one, zero]],
        Gate::Z(_) => diag(one, -one),
        Gate::Rz { angle, .. } => diag(
            C64::from_polar(1.0, -angle / 2.0),
            C64::from_polar(1.0, angle / 2.0),
        ),
        Gate::Ry { angle, .. } => {
            let (s, c) = (angle / 2.0).sin_cos();
            [[C64::new(c, 0.0), C64::new(-s, 0.0)], [C64::new(s, 0.0), C64::new(c, 0.0)]]
        }
        Gate::Cnot(..) => return None,
    })
}

/// A gate stream where runs of single-qubit gates on one qubit are merged.
pub(crate) enum Op {
    One(usize, M2),
    Cnot(usize, usize),
}

/// Maps basis states to basis states (diagonal or anti-diagonal).
fn monomial(m: &M2) -> bool {
    let z = |c: C64| c.norm() < 1e-15;
    (z(m[0][1]) && z(m[1][0])) || (z(m[0][0]) && z(m[1][1]))
}

/// Merged single-qubit runs are held back until their qubit meets a CNOT,
/// except superposing ones, which are flushed as soon as the stream moves
/// to another qubit so the sparse state stays small.
pub(crate) fn fused_ops(gates: &[Gate], nq: usize) -> Vec<Op> {
    let mut pending: Vec<Option<M2>> = vec![None; nq];
    let mut hot: Option<usize> = None;
    let mut ops = Vec::new();
    let flush = |q: usize, pending: &mut Vec<Option<M2>>, ops: &mut Vec<Op>| {
        if let Some(m) = pending[q].take() {
            ops.push(Op::One(q, m));
        }
    };
    for g in gates {
        let (a, b) = g.qubits();
        if let Some(h) = hot {
            if h != a && Some(h) != b {
                flush(h, &mut pending, &mut ops);
            }
        }
        match *g {
            Gate::Cnot(c, t) => {
                flush(c, &mut pending, &mut ops);
                flush(t, &mut pending, &mut ops);
                hot = None;
                ops.push(Op::Cnot(c, t));
            }
            _ => {
                let m = gate_matrix(g).unwrap();
                let p = match &pending[a] {
                    Some(p) => mul(&m, p),
                    None => m,
                };
                hot = if monomial(&p) { None } else { Some(a) };
                pending[a] = Some(p);
            }
        }
    }
    for (q, p) in pending.into_iter().enumerate() {
        if let Some(m) = p {
            ops.push(Op::One(q, m));
        }
    }
    ops
}
