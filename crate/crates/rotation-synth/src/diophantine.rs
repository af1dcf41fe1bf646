//! Solving t†t = ξ for t ∈ Z[ω], given ξ ∈ Z[√2]. Factoring is best
//! effort: a hard composite norm makes the candidate unsolvable.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ring::{ZOmega, ZRoot2};

type R2 = ZRoot2<BigInt>;
type ZW = ZOmega<BigInt>;

const RHO_BUDGET: usize = 1 << 13;
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn small_primes() -> &'static [u32] {
    use std::sync::OnceLock;
    static P: OnceLock<Vec<u32>> = OnceLock::new();
    P.get_or_init(|| {
        let n = 2000usize;
        let mut sieve = vec![true; n];
        let mut out = Vec::new();
        for k in 2..n {
            if sieve[k] {
                out.push(k as u32);
                (k * k..n).step_by(k).for_each(|j| sieve[j] = false);
            }
        }
        out
    })
}

pub fn is_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in small_primes().iter().take(40) {
        let p = BigUint::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let nm1 = n - 1u32;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'outer: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

fn rho(n: &BigUint) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    for c in 1u32..4 {
        let f = |x: &BigUint| (x * x + c) % n;
        let (mut x, mut y, mut q) = (BigUint::from(2u32), BigUint::from(2u32), BigUint::one());
        let mut steps = 0;
        let mut saved = (x.clone(), y.clone());
        while steps < RHO_BUDGET {
            saved = (x.clone(), y.clone());
            for _ in 0..32 {
                x = f(&x);
                y = f(&f(&y));
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            steps += 32;
            let g = q.gcd(n);
            if g.is_one() {
                continue;
            }
            if &g != n {
                return Some(g);
            }
            // overshot: replay one step at a time
            let (mut x2, mut y2) = saved.clone();
            for _ in 0..32 {
                x2 = f(&x2);
                y2 = f(&f(&y2));
                let diff = if x2 > y2 { &x2 - &y2 } else { &y2 - &x2 };
                let g = diff.gcd(n);
                if !g.is_one() && &g != n {
                    return Some(g);
                }
            }
            break;
        }
        let _ = saved;
    }
    None
}

/// Prime factorization, or `None` when a composite resists the rho budget.
pub fn factor(n: &BigUint) -> Option<Vec<(BigUint, u32)>> {
    let mut n = n.clone();
    let mut out: Vec<BigUint> = Vec::new();
    for &p in small_primes() {
        let bp = BigUint::from(p);
        while (&n % &bp).is_zero() {
            n /= &bp;
            out.push(bp.clone());
        }
        if n.is_one() {
            break;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            out.push(m);
            continue;
        }
        let d = rho(&m)?;
        stack.push(&m / &d);
        stack.push(d);
    }
    out.sort();
    let mut agg: Vec<(BigUint, u32)> = Vec::new();
    for p in out {
        match agg.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => agg.push((p, 1)),
        }
    }
    Some(agg)
}

/// Square root of a modulo an odd prime p (Tonelli–Shanks).
pub fn sqrt_mod(a: &BigUint, p: &BigUint) -> Option<BigUint> {
    let a = a % p;
    if a.is_zero() {
        return Some(a);
    }
    let pm1 = p - 1u32;
    let half = &pm1 >> 1;
    if !a.modpow(&half, p).is_one() {
        return None;
    }
    let s = pm1.trailing_zeros().unwrap_or(0);
    let q = &pm1 >> s;
    let mut z = BigUint::from(2u32);
    while z.modpow(&half, p) != pm1 {
        z += 1u32;
    }
    let mut m = s;
    let mut c = z.modpow(&q, p);
    let mut t = a.modpow(&q, p);
    let mut r = a.modpow(&((&q + 1u32) >> 1), p);
    while !t.is_one() {
        let mut i = 0;
        let mut t2 = t.clone();
        while !t2.is_one() {
            t2 = (&t2 * &t2) % p;
            i += 1;
            if i == m {
                return None;
            }
        }
        let b = c.modpow(&(BigUint::one() << (m - i - 1)), p);
        m = i;
        c = (&b * &b) % p;
        t = (t * &c) % p;
        r = (r * b) % p;
    }
    Some(r)
}

fn big(x: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x.clone())
}

fn root2_int(x: &BigUint) -> R2 {
    ZRoot2::new(big(x), BigInt::zero())
}

/// τ with τ†τ ~ p for an inert prime p ≡ 3, 5 (mod 8).
fn inert_tau(p: &BigUint) -> Option<ZW> {
    let pm8 = (p % 8u32).to_u32().unwrap();
    let pi = big(p);
    let h_plus_i = if pm8 == 5 {
        let h = sqrt_mod(&(p - 1u32), p)?;
        ZOmega::new(big(&h), BigInt::zero(), BigInt::one(), BigInt::zero())
    } else {
        // h = r·√2/2 with r² ≡ −2
        let r = sqrt_mod(&(p - 2u32), p)?;
        let b = (r * ((p + 1u32) >> 1)) % p;
        let b = big(&b);
        ZOmega::new(BigInt::zero(), b.clone(), BigInt::one(), -b)
    };
    let tau = ZOmega::from_root2(&ZRoot2::new(pi.clone(), BigInt::zero())).gcd(&h_plus_i);
    (tau.norm() == &pi * &pi).then_some(tau)
}

/// t ∈ Z[ω] with t†t = ξ, when one exists and the factoring succeeds.
pub fn solve_norm_equation(xi: &R2) -> Option<ZW> {
    if xi.is_zero() {
        return Some(ZOmega::zero());
    }
    if xi.signum() < 0 || xi.bullet().signum() < 0 {
        return None;
    }
    let n = xi.norm();
    let facs = factor(&n.to_biguint()?)?;
    let mut rem = xi.clone();
    let mut t: ZW = ZOmega::one();
    for (p, e) in facs {
        let pm8 = (&p % 8u32).to_u32().unwrap();
        if pm8 == 2 {
            let s2 = ZRoot2::new(BigInt::zero(), BigInt::one());
            let delta = ZOmega::from_ints([1, 1, 0, 0]);
            while s2.divides(&rem) {
                rem = rem.div_exact(&s2);
                t = t.mul(&delta);
            }
        } else if pm8 == 3 || pm8 == 5 {
            let f = e / 2;
            let pr = root2_int(&p);
            for _ in 0..f {
                if !pr.divides(&rem) {
                    return None;
                }
                rem = rem.div_exact(&pr);
            }
            let pi = big(&p);
            for _ in 0..f / 2 {
                t = t.scale(&pi);
            }
            if f % 2 == 1 {
                t = t.mul(&inert_tau(&p)?);
            }
        } else {
            let r = sqrt_mod(&BigUint::from(2u32), &p)?;
            let eta = root2_int(&p).gcd(&ZRoot2::new(big(&r), BigInt::one()));
            if eta.norm().abs() != big(&p) {
                return None;
            }
            let etab = eta.bullet();
            let (mut e1, mut e2) = (0u32, 0u32);
            while eta.divides(&rem) {
                rem = rem.div_exact(&eta);
                e1 += 1;
            }
            while etab.divides(&rem) {
                rem = rem.div_exact(&etab);
                e2 += 1;
            }
            if pm8 == 7 {
                if e1 % 2 == 1 || e2 % 2 == 1 {
                    return None;
                }
                let f = ZOmega::from_root2(&eta.pow(e1 / 2).mul(&etab.pow(e2 / 2)));
                t = t.mul(&f);
            } else {
                let h = sqrt_mod(&(&p - 1u32), &p)?;
                let h_plus_i = ZOmega::new(big(&h), BigInt::zero(), BigInt::one(), BigInt::zero());
                let tau = ZOmega::from_root2(&eta).gcd(&h_plus_i);
                if tau.norm() != big(&p) {
                    return None;
                }
                let taub = tau.bullet();
                for _ in 0..e1 {
                    t = t.mul(&tau);
                }
                for _ in 0..e2 {
                    t = t.mul(&taub);
                }
            }
        }
    }
    let w = t.abs2();
    if !xi.divides(&w) {
        return None;
    }
    let mut unit = w.div_exact(xi);
    if unit.signum() <= 0 || unit.bullet().signum() <= 0 {
        return None;
    }
    let l2 = ZRoot2::<BigInt>::lambda().pow(2);
    let l2i = ZRoot2::<BigInt>::lambda_inv().pow(2);
    let mut j: i64 = 0;
    let one = ZRoot2::<BigInt>::one();
    for _ in 0..10_000 {
        if unit == one {
            break;
        }
        if unit.to_f64() > 1.0 {
            unit = unit.mul(&l2i);
            j += 1;
        } else {
            unit = unit.mul(&l2);
            j -= 1;
        }
    }
    if unit != one {
        return None;
    }
    let fix = if j >= 0 {
        ZRoot2::<BigInt>::lambda_inv().pow(j as u32)
    } else {
        ZRoot2::<BigInt>::lambda().pow((-j) as u32)
    };
    let t = t.mul(&ZOmega::from_root2(&fix));
    (t.abs2() == *xi).then_some(t)
}
