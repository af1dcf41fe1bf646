//! Exact decomposition of a Clifford+T unitary given over Z[ω] with a
//! √2^k denominator, then peephole cleanup.

use crate::db::Db;
use crate::ring::{ZOmega, ZRoot2};
use crate::su2::{self, M};
use crate::G1;

type W = ZOmega<i128>;

fn reduce(m: &mut [W; 4], k: &mut u32) {
    while *k > 0 {
        let d: Option<Vec<W>> = m.iter().map(|x| x.div_sqrt2()).collect();
        match d {
            Some(d) => {
                m.clone_from_slice(&d);
                *k -= 1;
            }
            None => break,
        }
    }
}

/// H·T^{−j}·m, reduced.
fn step(m: &[W; 4], k: u32, j: i64) -> ([W; 4], u32) {
    let w = W::omega_pow(-j);
    let r1 = [m[2].mul(&w), m[3].mul(&w)];
    let mut out = [m[0].add(&r1[0]), m[1].add(&r1[1]), m[0].sub(&r1[0]), m[1].sub(&r1[1])];
    let mut k = k + 1;
    reduce(&mut out, &mut k);
    (out, k)
}

fn to_float(m: &[W; 4], k: u32) -> M {
    let s = 2f64.sqrt().powi(k as i32);
    let f = |x: &W| {
        let (re, im) = x.to_c64();
        num_complex::Complex64::new(re / s, im / s)
    };
    [[f(&m[0]), f(&m[1])], [f(&m[2]), f(&m[3])]]
}

/// Smallest e with |m00|² = x / √2^e for x ∈ Z[√2].
fn sde_abs2(m: &[W; 4], k: u32) -> u32 {
    let mut x = m[0].abs2();
    let mut e = 2 * k;
    let r2 = ZRoot2::new(0, 1);
    while e > 0 && !x.is_zero() && r2.divides(&x) {
        x = x.div_exact(&r2);
        e -= 1;
    }
    e
}

/// Time-ordered word for the unitary [[u, −t†], [t, u†]] / √2^k.
pub fn synthesize(u: &W, t: &W, k: u32, db: &Db) -> Option<Vec<G1>> {
    let mut m = [u.clone(), t.adj().neg(), t.clone(), u.adj()];
    let mut k = k;
    reduce(&mut m, &mut k);
    let mut js = Vec::new();
    let mut sde = sde_abs2(&m, k);
    while sde > 3 {
        let ((m2, k2), j, s2) = (0..4)
            .map(|j| {
                let (m2, k2) = step(&m, k, j);
                let s2 = sde_abs2(&m2, k2);
                ((m2, k2), j, s2)
            })
            .min_by_key(|(_, j, s2)| (*s2, *j))
            .unwrap();
        if s2 >= sde {
            return None;
        }
        m = m2;
        k = k2;
        sde = s2;
        js.push(j);
    }
    let residual = db.exact(&su2::quat(&to_float(&m, k)))?.gates();
    let mut out = residual;
    for &j in js.iter().rev() {
        out.push(G1::H);
        out.extend(std::iter::repeat_n(G1::T, j as usize));
    }
    Some(peephole(&out))
}

enum Tok {
    H,
    X,
    Diag(u8),
}

fn diag_power(g: G1) -> Option<u8> {
    match g {
        G1::T => Some(1),
        G1::S => Some(2),
        G1::Z => Some(4),
        G1::Sdg => Some(6),
        G1::Tdg => Some(7),
        _ => None,
    }
}

/// Cancel H·H and merge diagonal runs modulo 8 (exact, no phase change).
pub fn peephole(gates: &[G1]) -> Vec<G1> {
    let mut st: Vec<Tok> = Vec::new();
    for &g in gates {
        if let Some(p) = diag_power(g) {
            if let Some(Tok::Diag(e)) = st.last_mut() {
                *e = (*e + p) % 8;
                if *e == 0 {
                    st.pop();
                }
            } else {
                st.push(Tok::Diag(p));
            }
            continue;
        }
        match g {
            G1::H => {
                if matches!(st.last(), Some(Tok::H)) {
                    st.pop();
                } else {
                    st.push(Tok::H);
                }
            }
            _ => {
                if matches!(st.last(), Some(Tok::X)) {
                    st.pop();
                } else {
                    st.push(Tok::X);
                }
            }
        }
    }
    let mut out = Vec::new();
    for t in st {
        match t {
            Tok::H => out.push(G1::H),
            Tok::X => out.push(G1::X),
            Tok::Diag(e) => out.extend_from_slice(match e {
                1 => &[G1::T][..],
                2 => &[G1::S],
                3 => &[G1::S, G1::T],
                4 => &[G1::Z],
                5 => &[G1::Sdg, G1::Tdg],
                6 => &[G1::Sdg],
                7 => &[G1::Tdg],
                _ => &[],
            }),
        }
    }
    out
}

