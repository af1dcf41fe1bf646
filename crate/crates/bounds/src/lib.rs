//! Counting bounds: how many distinct circuits a gate or depth budget can
//! reach, and the smallest budgets whose count covers a task class.

use serde::Serialize;
use thiserror::Error;

/// Largest n for which the task targets are evaluated.
pub const MAX_N: usize = 20;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("gate set size must be at least 1")]
    GateSet,
    #[error("eps {0} outside (0, 1)")]
    Eps(f64),
    #[error("n = {0} outside 1..={MAX_N}")]
    Range(usize),
    #[error("budget: {0}")]
    Budget(String),
}

/// Σ with compensation, so a million log terms keep full precision.
#[derive(Default)]
struct Sum {
    s: f64,
    c: f64,
}

impl Sum {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.s + y;
        self.c = (t - self.s) - y;
        self.s = t;
    }
}

/// Choices for gate j (1-based): |D|(|D|-1) + 2|D| + 2 with |D| = n + 2(j-1).
fn gate_choices(n: usize, j: u64) -> f64 {
    let d = n as f64 + 2.0 * (j - 1) as f64;
    d * (d - 1.0) + 2.0 * d + 2.0
}

/// log2 of the number of C-gate circuits on n data qubits over a g-gate set,
/// ancillas unlimited.
pub fn capacity_log_gates(n: usize, g: u64, c: u64) -> f64 {
    let mut s = Sum::default();
    for j in 1..=c {
        s.add(gate_choices(n, j).log2());
    }
    s.s + c as f64 * (g as f64).log2()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DepthCapacity {
    pub bits: f64,
    /// n + n_anc, rounded up to even.
    pub width: usize,
    pub padded: bool,
}

/// log2 of (n+n_anc)^{2D}·g^{(n+n_anc)D/2}; an odd width is padded by one.
pub fn capacity_log_depth(n: usize, n_anc: usize, d: u64, g: u64) -> DepthCapacity {
    let w = n + n_anc;
    let width = w + w % 2;
    DepthCapacity {
        bits: depth_bits(width, d, g),
        width,
        padded: width != w,
    }
}

fn depth_bits(width: usize, d: u64, g: u64) -> f64 {
    let w = width as f64;
    d as f64 * (2.0 * w.log2() + w / 2.0 * (g as f64).log2())
}

/// Either a gate budget or an (ancilla, depth) budget.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapacityQuery {
    pub n: usize,
    pub g: u64,
    pub c: Option<u64>,
    pub n_anc: Option<usize>,
    pub d: Option<u64>,
}

impl CapacityQuery {
    pub fn bits(&self) -> Result<f64, BoundsError> {
        if self.g == 0 {
            return Err(BoundsError::GateSet);
        }
        match (self.c, self.n_anc, self.d) {
            (Some(0), None, None) | (None, Some(_), Some(0)) => Err(BoundsError::Budget("zero budget".into())),
            (Some(c), None, None) => Ok(capacity_log_gates(self.n, self.g, c)),
            (None, Some(a), Some(d)) => Ok(capacity_log_depth(self.n, a, d, self.g).bits),
            _ => Err(BoundsError::Budget("give either C or both n_anc and D".into())),
        }
    }
}

/// log2(k!) by direct summation.
pub fn log2_factorial(k: u64) -> f64 {
    let mut s = Sum::default();
    for i in 2..=k {
        s.add((i as f64).log2());
    }
    s.s
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LowerBound {
    pub target_bits: f64,
    /// Smallest C whose gate capacity reaches the target.
    pub min_count: u64,
    /// Smallest (n+n_anc)·D whose depth capacity reaches the target.
    pub min_space_time: u64,
    /// Width and depth achieving `min_space_time`.
    pub width: usize,
    pub depth: u64,
}

/// Minima against an arbitrary target.
pub fn lower_bound(n: usize, g: u64, target_bits: f64) -> Result<LowerBound, BoundsError> {
    if g == 0 {
        return Err(BoundsError::GateSet);
    }
    let mut s = Sum::default();
    let lg = (g as f64).log2();
    let mut c = 0u64;
    while c == 0 || s.s < target_bits {
        c += 1;
        s.add(gate_choices(n, c).log2() + lg);
    }

    // capacity is linear in D at fixed width, so each even width has a
    // smallest D in closed form; widths past the best product cannot win
    let w0 = (n + n % 2).max(2);
    let mut best = (u64::MAX, 0, 0);
    let mut w = w0;
    while (w as u64) < best.0 {
        let per = depth_bits(w, 1, g);
        let d = if target_bits <= 0.0 { 1 } else { (target_bits / per).ceil().max(1.0) as u64 };
        // guard against the ceiling landing a hair short
        let d = if depth_bits(w, d, g) < target_bits { d + 1 } else { d };
        let p = w as u64 * d;
        if p < best.0 {
            best = (p, w, d);
        }
        w += 2;
    }
    Ok(LowerBound {
        target_bits,
        min_count: c,
        min_space_time: best.0,
        width: best.1,
        depth: best.2,
    })
}

fn check_n(n: usize) -> Result<(), BoundsError> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(BoundsError::Range(n))
    }
}

/// Target log2(N!): one SAIM per permutation of the N basis states.
pub fn saim_lower_bound(n: usize, g: u64) -> Result<LowerBound, BoundsError> {
    check_n(n)?;
    lower_bound(n, g, log2_factorial(1 << n))
}

/// Target N bits: the 2^N diagonal sign matrices.
pub fn sparse_be_lower_bound(n: usize, g: u64) -> Result<LowerBound, BoundsError> {
    check_n(n)?;
    lower_bound(n, g, (1u64 << n) as f64)
}

/// Target 2^{n+1}·log2(1/eps).
pub fn stateprep_lower_bound(n: usize, eps: f64, g: u64) -> Result<LowerBound, BoundsError> {
    check_n(n)?;
    if !(eps > 0.0 && eps < 1.0) {
        return Err(BoundsError::Eps(eps));
    }
    lower_bound(n, g, (1u64 << (n + 1)) as f64 * (1.0 / eps).log2())
}
