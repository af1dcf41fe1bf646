//! Candidate enumeration for u ∈ Z[ω] with u/√2^k close to e^{−iθ/2}
//! and |u•| ≤ √2^k, by nested one-dimensional grid problems.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::ring::{ZOmega, ZRoot2};

type R = ZRoot2<i128>;
type W = ZOmega<i128>;

const SQRT2: f64 = std::f64::consts::SQRT_2;
/// √2 − SQRT2
const SQRT2_LO: f64 = -9.667293313452913e-17;
const LAMBDA: f64 = 1.0 + SQRT2;
const GRID1D_CAP: usize = 1 << 16;

/// Every α ∈ Z[√2] with α ∈ [x0, x1] and α• ∈ [y0, y1], with the values
/// of α and α•.
pub fn grid1d(x0: f64, x1: f64, y0: f64, y1: f64, out: &mut Vec<(R, f64, f64)>) {
    if !(x1 >= x0 && y1 >= y0) {
        return;
    }
    let d = (x1 - x0).max(1e-300);
    let dd = (y1 - y0).max(1e-300);
    let m = ((dd / d).ln() / (2.0 * LAMBDA.ln())).round().clamp(-20.0, 20.0) as i32;
    let fm = LAMBDA.powi(m);
    let (xa, xb) = (x0 * fm, x1 * fm);
    let g = if m % 2 == 0 { 1.0 / fm } else { -1.0 / fm };
    let (ya, yb) = if g > 0.0 { (y0 * g, y1 * g) } else { (y1 * g, y0 * g) };
    let back = if m >= 0 {
        R::lambda_inv().pow(m as u32)
    } else {
        R::lambda().pow((-m) as u32)
    };
    let tol = 1e-9;
    let b_lo = ((xa - yb) / (2.0 * SQRT2) - tol).ceil() as i128;
    let b_hi = ((xb - ya) / (2.0 * SQRT2) + tol).floor() as i128;
    for b in b_lo..=b_hi {
        let bs = b as f64 * SQRT2;
        let a_lo = ((xa - bs).max(ya + bs) - tol).ceil() as i128;
        let a_hi = ((xb - bs).min(yb + bs) + tol).floor() as i128;
        for a in a_lo..=a_hi {
            // values come from the rescaled coordinates, where a and b√2
            // do not cancel
            let v = (a as f64 + bs) / fm;
            let vb = (a as f64 - bs) * if m % 2 == 0 { fm } else { -fm };
            out.push((R::new(a, b).mul(&back), v, vb));
            if out.len() >= GRID1D_CAP {
                return;
            }
        }
    }
}

/// i·α as an element of Z[ω].
fn times_i(a: &R) -> W {
    W::new(0, a.b, a.a, a.b)
}

pub struct Candidate {
    pub u: W,
    pub xi: R,
}

fn value(x: &R) -> f64 {
    // well conditioned even when a and b√2 nearly cancel
    let xb = x.bullet().to_f64();
    if xb.abs() > x.to_f64().abs() && xb != 0.0 {
        let n = BigInt::from(x.a) * BigInt::from(x.a) - BigInt::from(2) * BigInt::from(x.b) * BigInt::from(x.b);
        n.to_f64().unwrap() / xb
    } else {
        x.to_f64()
    }
}

/// Error-free a·b = p + e.
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Candidates at denominator exponent k, in enumeration order, capped.
///
/// Points are written u = u0 + v around a Gaussian integer u0 ≈ s·z so the
/// thin cap is resolved in small coordinates.
pub fn candidates(theta: f64, eps: f64, k: u32, cap: usize) -> Vec<Candidate> {
    // s = √2^k as a double-double
    let (s, s_lo) = if k.is_multiple_of(2) {
        (2f64.powi(k as i32 / 2), 0.0)
    } else {
        let p = 2f64.powi(k as i32 / 2);
        (SQRT2 * p, SQRT2_LO * p)
    };
    let s2: i128 = 1 << k;
    let (zi, zr) = (-theta / 2.0).sin_cos();
    let x0 = (s * zr).round();
    let y0 = (s * zi).round();
    let (x0i, y0i) = (x0 as i128, y0 as i128);
    // ξ0 = s² − |u0|², exact
    let xi0 = (s2 - x0i * x0i - y0i * y0i) as f64;
    // distance ≤ ε ⟺ Re(u z̄) ≥ s·(1 + |z|² − ε²)/2; |z| is off 1 by
    // rounding, which matters once ε² is below an ulp
    let (qr, fr) = two_prod(zr, zr);
    let (qi, fi) = two_prod(zi, zi);
    let delta = ((qr - 1.0) + qi) + fr + fi;
    let (p1, e1) = two_prod(x0, zr);
    let (p2, e2) = two_prod(y0, zi);
    let tau = ((s - p1 - p2) + s_lo - e1 - e2) + s * (delta - eps * eps) / 2.0
        - 4.0 * s * f64::EPSILON * eps;
    // real extent of the cap relative to x0
    let phi0 = 2.0 * (eps / 2.0).min(1.0).asin();
    let arg = zi.atan2(zr);
    let (c_ph, s_ph) = (phi0.cos(), phi0.sin());
    let mut re = vec![
        s * (c_ph * zr - s_ph * zi),
        s * (c_ph * zr + s_ph * zi),
        s * (arg - phi0).cos(),
        s * (arg + phi0).cos(),
    ];
    let wraps = |target: f64| {
        let d = (arg - target + std::f64::consts::PI).rem_euclid(2.0 * std::f64::consts::PI)
            - std::f64::consts::PI;
        d.abs() <= phi0
    };
    if wraps(0.0) {
        re.push(s);
    }
    if wraps(std::f64::consts::PI) {
        re.push(-s);
    }
    let slack = 4.0 * s * f64::EPSILON;
    let re_lo = re.iter().cloned().fold(f64::INFINITY, f64::min) - x0 - slack;
    let re_hi = re.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - x0 + slack;
    // offset of u0/s from z, for the distance check
    let (dzr, dzi) = (x0 / s - zr, y0 / s - zi);
    let mut out = Vec::new();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for c in 0..2i128 {
        let off = c as f64 / SQRT2;
        xs.clear();
        grid1d(re_lo - off, re_hi - off, -s + off - x0, s + off - x0, &mut xs);
        for (xv, xv_f, xvb_f) in &xs {
            let xx = xv_f + off;
            // disk |u0 + v| ≤ s: yy² + 2·y0·yy + cc ≤ 0
            let cc = xx * xx + 2.0 * x0 * xx - xi0;
            let disc = y0 * y0 - cc;
            if disc < 0.0 {
                continue;
            }
            let (mut lo, mut hi) = if y0 == 0.0 {
                (-(-cc).max(0.0).sqrt(), (-cc).max(0.0).sqrt())
            } else {
                let q = -(y0 + y0.signum() * disc.sqrt());
                let (r1, r2) = (q, cc / q);
                (r1.min(r2), r1.max(r2))
            };
            lo -= slack * 1e-3;
            hi += slack * 1e-3;
            // half-plane Re(v z̄) ≥ τ
            if zi.abs() > 1e-300 {
                let bound = (tau - xx * zr) / zi;
                if zi > 0.0 {
                    lo = lo.max(bound);
                } else {
                    hi = hi.min(bound);
                }
            }
            let xb = x0 + xvb_f - off;
            let hb = (s * s - xb * xb).max(0.0).sqrt();
            ys.clear();
            grid1d(lo - off, hi - off, -hb + off - y0, hb + off - y0, &mut ys);
            for (yv, _, _) in &ys {
                let v = W::from_root2(xv).add(&times_i(yv)).add(&W::new(0, c, 0, 0));
                let u = v.add(&W::new(x0i, 0, y0i, 0));
                let xi = R::new(s2, 0).sub(&u.abs2());
                if xi.signum() < 0 || xi.bullet().signum() < 0 {
                    continue;
                }
                let (vr, vi) = v.to_c64();
                let d2 = (vr / s + dzr).powi(2) + (vi / s + dzi).powi(2) + value(&xi) / (s * s);
                if d2.max(0.0).sqrt() <= eps {
                    out.push(Candidate { u, xi });
                    if out.len() >= cap {
                        return out;
                    }
                }
            }
        }
    }
    out
}



