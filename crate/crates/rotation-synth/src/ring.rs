//! Exact arithmetic in Z[√2] and Z[ω], ω = e^{iπ/4}, generic over the
//! integer type (i128 for enumeration, BigInt for number theory).

use std::fmt::Debug;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

pub trait Int: Clone + Debug + Ord + Integer + Signed + From<i64> + ToPrimitive {}
impl<T: Clone + Debug + Ord + Integer + Signed + From<i64> + ToPrimitive> Int for T {}

fn i<T: Int>(v: i64) -> T {
    T::from(v)
}

/// round(p / n), ties away from zero.
pub fn div_round<T: Int>(p: &T, n: &T) -> T {
    let (p, n) = if n.is_negative() { (-p.clone(), -n.clone()) } else { (p.clone(), n.clone()) };
    let two = i::<T>(2);
    (two.clone() * p + n.clone()).div_floor(&(two * n))
}

/// a + b√2
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZRoot2<T> {
    pub a: T,
    pub b: T,
}

impl<T: Int> ZRoot2<T> {
    pub fn new(a: T, b: T) -> Self {
        ZRoot2 { a, b }
    }
    pub fn int(a: i64) -> Self {
        ZRoot2::new(i(a), i(0))
    }
    pub fn zero() -> Self {
        ZRoot2::int(0)
    }
    pub fn one() -> Self {
        ZRoot2::int(1)
    }
    /// λ = 1 + √2
    pub fn lambda() -> Self {
        ZRoot2::new(i(1), i(1))
    }
    pub fn lambda_inv() -> Self {
        ZRoot2::new(i(-1), i(1))
    }
    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    pub fn add(&self, o: &Self) -> Self {
        ZRoot2::new(self.a.clone() + o.a.clone(), self.b.clone() + o.b.clone())
    }
    pub fn sub(&self, o: &Self) -> Self {
        ZRoot2::new(self.a.clone() - o.a.clone(), self.b.clone() - o.b.clone())
    }
    pub fn mul(&self, o: &Self) -> Self {
        let two = i::<T>(2);
        ZRoot2::new(
            self.a.clone() * o.a.clone() + two * self.b.clone() * o.b.clone(),
            self.a.clone() * o.b.clone() + self.b.clone() * o.a.clone(),
        )
    }
    pub fn scale(&self, k: &T) -> Self {
        ZRoot2::new(self.a.clone() * k.clone(), self.b.clone() * k.clone())
    }
    /// √2-conjugate a − b√2.
    pub fn bullet(&self) -> Self {
        ZRoot2::new(self.a.clone(), -self.b.clone())
    }
    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - i::<T>(2) * self.b.clone() * self.b.clone()
    }
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap() + self.b.to_f64().unwrap() * std::f64::consts::SQRT_2
    }
    /// Exact sign of a + b√2.
    pub fn signum(&self) -> i32 {
        let sa = sign(&self.a);
        let sb = sign(&self.b);
        if sa == sb || sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        // opposite signs: compare a² with 2b²
        let a2 = self.a.clone() * self.a.clone();
        let b2 = i::<T>(2) * self.b.clone() * self.b.clone();
        if a2 > b2 {
            sa
        } else if a2 < b2 {
            sb
        } else {
            0
        }
    }
    pub fn divides(&self, x: &Self) -> bool {
        let n = self.norm();
        if n.is_zero() {
            return x.is_zero();
        }
        let p = x.mul(&self.bullet());
        (p.a % n.clone()).is_zero() && (p.b % n).is_zero()
    }
    pub fn div_exact(&self, y: &Self) -> Self {
        let n = y.norm();
        let p = self.mul(&y.bullet());
        ZRoot2::new(p.a / n.clone(), p.b / n)
    }
    fn div_round(&self, y: &Self) -> Self {
        let n = y.norm();
        let p = self.mul(&y.bullet());
        ZRoot2::new(div_round(&p.a, &n), div_round(&p.b, &n))
    }
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut x, mut y) = (self.clone(), o.clone());
        while !y.is_zero() {
            let q = x.div_round(&y);
            let r = x.sub(&q.mul(&y));
            x = y;
            y = r;
        }
        x
    }
    pub fn pow(&self, e: u32) -> Self {
        let mut r = ZRoot2::one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }
    pub fn convert<U: Int>(&self) -> ZRoot2<U> {
        ZRoot2::new(conv(&self.a), conv(&self.b))
    }
}

fn sign<T: Int>(x: &T) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

pub fn conv<T: Int, U: Int>(x: &T) -> U {
    // both sides are at most 128 bits wide in practice
    let v = x.to_i128().expect("integer overflow in ring conversion");
    let hi = (v >> 62) as i64;
    let lo = (v & ((1i128 << 62) - 1)) as i64;
    U::from(hi) * U::from(1i64 << 62) + U::from(lo)
}

/// c0 + c1·ω + c2·ω² + c3·ω³
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZOmega<T> {
    pub c: [T; 4],
}

impl<T: Int> ZOmega<T> {
    pub fn new(c0: T, c1: T, c2: T, c3: T) -> Self {
        ZOmega { c: [c0, c1, c2, c3] }
    }
    pub fn zero() -> Self {
        ZOmega::from_ints([0, 0, 0, 0])
    }
    pub fn one() -> Self {
        ZOmega::from_ints([1, 0, 0, 0])
    }
    pub fn from_ints(c: [i64; 4]) -> Self {
        ZOmega { c: c.map(i) }
    }
    /// ω^k
    pub fn omega_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [0i64; 4];
        c[k % 4] = if k < 4 { 1 } else { -1 };
        ZOmega::from_ints(c)
    }
    pub fn from_root2(x: &ZRoot2<T>) -> Self {
        ZOmega::new(x.a.clone(), x.b.clone(), i(0), -x.b.clone())
    }
    /// Real part as an element of Z[√2]; only meaningful when self is real.
    pub fn to_root2(&self) -> ZRoot2<T> {
        ZRoot2::new(self.c[0].clone(), self.c[1].clone())
    }
    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    pub fn add(&self, o: &Self) -> Self {
        ZOmega {
            c: std::array::from_fn(|k| self.c[k].clone() + o.c[k].clone()),
        }
    }
    pub fn sub(&self, o: &Self) -> Self {
        ZOmega {
            c: std::array::from_fn(|k| self.c[k].clone() - o.c[k].clone()),
        }
    }
    pub fn neg(&self) -> Self {
        ZOmega {
            c: std::array::from_fn(|k| -self.c[k].clone()),
        }
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut r: [T; 4] = std::array::from_fn(|_| i(0));
        for a in 0..4 {
            if self.c[a].is_zero() {
                continue;
            }
            for b in 0..4 {
                let p = self.c[a].clone() * o.c[b].clone();
                if a + b < 4 {
                    r[a + b] = r[a + b].clone() + p;
                } else {
                    r[a + b - 4] = r[a + b - 4].clone() - p;
                }
            }
        }
        ZOmega { c: r }
    }
    pub fn scale(&self, k: &T) -> Self {
        ZOmega {
            c: std::array::from_fn(|j| self.c[j].clone() * k.clone()),
        }
    }
    /// Complex conjugate.
    pub fn adj(&self) -> Self {
        let [c0, c1, c2, c3] = self.c.clone();
        ZOmega::new(c0, -c3, -c2, -c1)
    }
    /// √2-conjugate (ω ↦ −ω).
    pub fn bullet(&self) -> Self {
        let [c0, c1, c2, c3] = self.c.clone();
        ZOmega::new(c0, -c1, c2, -c3)
    }
    /// |self|² as an element of Z[√2].
    pub fn abs2(&self) -> ZRoot2<T> {
        self.mul(&self.adj()).to_root2()
    }
    /// Integer norm N(x) = |x|²·(|x|²)•.
    pub fn norm(&self) -> T {
        self.abs2().norm()
    }
    pub fn to_c64(&self) -> (f64, f64) {
        let f = |x: &T| x.to_f64().unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let (c0, c1, c2, c3) = (f(&self.c[0]), f(&self.c[1]), f(&self.c[2]), f(&self.c[3]));
        (c0 + (c1 - c3) * r, c2 + (c1 + c3) * r)
    }
    pub fn div_sqrt2(&self) -> Option<Self> {
        // x/√2 = x·(ω − ω³)/2
        let p = self.mul(&ZOmega::from_ints([0, 1, 0, -1]));
        let two = i::<T>(2);
        if p.c.iter().all(|x| (x.clone() % two.clone()).is_zero()) {
            Some(ZOmega {
                c: std::array::from_fn(|k| p.c[k].clone() / two.clone()),
            })
        } else {
            None
        }
    }
    fn div_round(&self, y: &Self) -> Self {
        let yy = ZOmega::from_root2(&y.abs2());
        let n = y.norm();
        let p = self.mul(&y.adj()).mul(&yy.bullet());
        ZOmega {
            c: std::array::from_fn(|k| div_round(&p.c[k], &n)),
        }
    }
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut x, mut y) = (self.clone(), o.clone());
        while !y.is_zero() {
            let q = x.div_round(&y);
            let r = x.sub(&q.mul(&y));
            x = y;
            y = r;
        }
        x
    }
    pub fn convert<U: Int>(&self) -> ZOmega<U> {
        ZOmega {
            c: std::array::from_fn(|k| conv(&self.c[k])),
        }
    }
}
