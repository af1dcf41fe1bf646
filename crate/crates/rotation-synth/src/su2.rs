use num_complex::Complex64 as C64;

use crate::G1;

pub type M = [[C64; 2]; 2];

const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub const ID: M = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];

pub fn mul(a: &M, b: &M) -> M {
    let mut r = [[C64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}

pub fn adj(a: &M) -> M {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

pub fn scale(a: &M, k: C64) -> M {
    [[a[0][0] * k, a[0][1] * k], [a[1][0] * k, a[1][1] * k]]
}

pub fn g1(g: G1) -> M {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    match g {
        G1::H => [[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]],
        G1::S => [[o, z], [z, c(0.0, 1.0)]],
        G1::Sdg => [[o, z], [z, c(0.0, -1.0)]],
        G1::T => [[o, z], [z, c(r, r)]],
        G1::Tdg => [[o, z], [z, c(r, -r)]],
        G1::X => [[z, o], [o, z]],
        G1::Z => [[o, z], [z, c(-1.0, 0.0)]],
    }
}

/// Operator of a time-ordered gate list.
pub fn word(gates: &[G1]) -> M {
    gates.iter().fold(ID, |acc, &g| mul(&g1(g), &acc))
}

pub fn rz(theta: f64) -> M {
    let z = c(0.0, 0.0);
    [[C64::from_polar(1.0, -theta / 2.0), z], [z, C64::from_polar(1.0, theta / 2.0)]]
}

pub fn ry(theta: f64) -> M {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

/// Coordinates of the SU(2) representative, defined up to sign.
pub fn quat(m: &M) -> [f64; 4] {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let k = C64::from_polar(1.0, -det.arg() / 2.0);
    let a = m[0][0] * k;
    let b = m[1][0] * k;
    [a.re, a.im, b.re, b.im]
}

pub fn from_quat(q: &[f64; 4]) -> M {
    let a = c(q[0], q[1]);
    let b = c(q[2], q[3]);
    [[a, -b.conj()], [b, a.conj()]]
}

pub fn dot(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Spectral distance between SU(2) elements, minimized over the sign.
pub fn qdist(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    (2.0 - 2.0 * dot(a, b).abs()).max(0.0).sqrt()
}

/// Largest singular value.
pub fn norm2(m: &M) -> f64 {
    let p = m[0][0].norm_sqr() + m[1][0].norm_sqr();
    let q = m[0][1].norm_sqr() + m[1][1].norm_sqr();
    let r = m[0][0].conj() * m[0][1] + m[1][0].conj() * m[1][1];
    let h = (p - q) / 2.0;
    ((p + q) / 2.0 + (h * h + r.norm_sqr()).sqrt()).max(0.0).sqrt()
}

/// Best global phase φ for e^{iφ}·v ≈ target, and the remaining error.
pub fn phase_fit(v: &M, target: &M) -> (f64, f64) {
    let p = mul(&adj(v), target);
    let tr = p[0][0] + p[1][1];
    let phi = if tr.norm() < 1e-300 { 0.0 } else { tr.arg() };
    let d = scale(v, C64::from_polar(1.0, phi));
    let diff = [
        [d[0][0] - target[0][0], d[0][1] - target[0][1]],
        [d[1][0] - target[1][0], d[1][1] - target[1][1]],
    ];
    (phi, norm2(&diff))
}
