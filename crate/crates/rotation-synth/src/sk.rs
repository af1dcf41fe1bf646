//! Solovay–Kitaev refinement over the sequence table (group commutator
//! construction of Dawson and Nielsen).

use crate::db::Db;
use crate::su2::{self, M};
use crate::{invert, G1};

fn axis_angle(m: &M) -> ([f64; 3], f64) {
    let mut q = su2::quat(m);
    if q[0] < 0.0 {
        q = q.map(|x| -x);
    }
    let s = (q[1] * q[1] + q[2] * q[2] + q[3] * q[3]).sqrt();
    if s < 1e-15 {
        return ([0.0, 0.0, 1.0], 0.0);
    }
    ([-q[3] / s, q[2] / s, -q[1] / s], 2.0 * s.atan2(q[0]))
}

fn rotation(n: &[f64; 3], theta: f64) -> M {
    let (s, c) = (theta / 2.0).sin_cos();
    su2::from_quat(&[c, -s * n[2], s * n[1], -s * n[0]])
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// V, W with V·W·V†·W† = u.
fn group_commutator(u: &M) -> (M, M) {
    let (nu, theta) = axis_angle(u);
    let st = (theta / 2.0).sin();
    let x = ((1.0 - (1.0 - st * st).max(0.0).sqrt()) / 2.0).sqrt();
    let phi = 2.0 * x.sqrt().asin();
    let v = rotation(&[1.0, 0.0, 0.0], phi);
    let w = rotation(&[0.0, 1.0, 0.0], phi);
    let comm = su2::mul(&su2::mul(&v, &w), &su2::mul(&su2::adj(&v), &su2::adj(&w)));
    let (nc, _) = axis_angle(&comm);
    let ax = cross(&nc, &nu);
    let sn = ax.iter().map(|a| a * a).sum::<f64>().sqrt();
    let cs: f64 = nc.iter().zip(&nu).map(|(a, b)| a * b).sum();
    let s = if sn < 1e-12 {
        if cs > 0.0 {
            su2::ID
        } else {
            let perp = if nc[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
            let p = cross(&nc, &perp);
            let pn = p.iter().map(|a| a * a).sum::<f64>().sqrt();
            rotation(&p.map(|a| a / pn), std::f64::consts::PI)
        }
    } else {
        rotation(&ax.map(|a| a / sn), sn.atan2(cs))
    };
    let conj = |a: &M| su2::mul(&su2::mul(&s, a), &su2::adj(&s));
    (conj(&v), conj(&w))
}

/// Time-ordered word approximating `u` up to phase.
pub fn approximate(db: &Db, u: &M, depth: u32) -> (Vec<G1>, M) {
    if depth == 0 {
        let (e, _) = db.nearest(&su2::quat(u));
        let g = e.gates();
        let m = su2::from_quat(&su2::quat(&su2::word(&g)));
        return (g, m);
    }
    let (prev, pm) = approximate(db, u, depth - 1);
    let delta = su2::mul(u, &su2::adj(&pm));
    let (v, w) = group_commutator(&delta);
    let (vw, vm) = approximate(db, &v, depth - 1);
    let (ww, wm) = approximate(db, &w, depth - 1);
    let mut word = prev;
    word.extend(invert(&ww));
    word.extend(invert(&vw));
    word.extend(ww);
    word.extend(vw);
    let m = su2::mul(
        &su2::mul(&su2::mul(&vm, &wm), &su2::mul(&su2::adj(&vm), &su2::adj(&wm))),
        &pm,
    );
    (word, m)
}
