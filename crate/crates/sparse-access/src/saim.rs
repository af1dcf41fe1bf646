use circuit_core::{Circuit, CircuitBuilder, Qubit};
use select_oracle::{emit_select_pauli, split_ancillas, PauliString, SelectError};

use crate::sbm::{emit_sbm, sbm_ancilla_range};
use crate::{SaimError, SparseBooleanFn};

/// 2^n × 2^n matrix of d-bit unsigned values, at most `s` nonzeros per row
/// and per column.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrixCoo {
    n: usize,
    d: usize,
    s: usize,
    entries: Vec<(usize, usize, u64)>,
}

impl SparseMatrixCoo {
    pub fn new(n: usize, d: usize, s: usize, mut entries: Vec<(usize, usize, u64)>) -> Result<SparseMatrixCoo, SaimError> {
        if n > 20 || d > 63 {
            return Err(SaimError::Shape(format!("n = {n}, d = {d} out of range")));
        }
        let dim = 1usize << n;
        entries.sort_unstable();
        let mut rows = vec![0usize; dim];
        let mut cols = vec![0usize; dim];
        for (i, &(x, y, v)) in entries.iter().enumerate() {
            let q = (x + (y << n)) as u64;
            if x >= dim || y >= dim || v >> d != 0 {
                return Err(SaimError::Shape(format!("entry ({x}, {y}, {v}) out of range")));
            }
            if v == 0 {
                return Err(SaimError::ZeroValue(q));
            }
            if i > 0 && (entries[i - 1].0, entries[i - 1].1) == (x, y) {
                return Err(SaimError::Duplicate(q));
            }
            rows[x] += 1;
            cols[y] += 1;
        }
        if rows.iter().chain(&cols).any(|&c| c > s) {
            return Err(SaimError::Shape(format!("more than {s} nonzeros in a row or column")));
        }
        Ok(SparseMatrixCoo { n, d, s, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Sorted by (row, col).
    pub fn entries(&self) -> &[(usize, usize, u64)] {
        &self.entries
    }

    /// The 2n-bit index function q = x + 2^n·y ↦ H_{x,y}.
    pub fn value_fn(&self) -> SparseBooleanFn {
        let e = self
            .entries
            .iter()
            .map(|&(x, y, v)| ((x + (y << self.n)) as u64, v))
            .collect();
        SparseBooleanFn::new(2 * self.n, self.d, e).expect("validated entries")
    }
}

/// F(x, ·) per row: the nonzero columns in order, then the remaining
/// columns in order, so every row is a permutation.
pub fn completed_f(a: &SparseMatrixCoo) -> Vec<Vec<usize>> {
    let dim = 1usize << a.n;
    let mut f: Vec<Vec<usize>> = vec![Vec::new(); dim];
    for &(x, y, _) in &a.entries {
        f[x].push(y);
    }
    for row in f.iter_mut() {
        let mut seen = vec![false; dim];
        row.iter().for_each(|&y| seen[y] = true);
        row.extend((0..dim).filter(|&y| !seen[y]));
    }
    f
}

/// |x,y⟩|z⟩ → |x,y⟩|z ⊕ H_{x,y}⟩ on registers `x`, `y`, `wrd`.
pub fn synth_oh(a: &SparseMatrixCoo, n_anc: usize) -> Result<Circuit, SaimError> {
    let mut b = CircuitBuilder::new();
    let x = b.register("x", a.n);
    let y = b.register("y", a.n);
    let w = b.register("wrd", a.d);
    let idx: Vec<Qubit> = x.into_iter().chain(y).collect();
    emit_sbm(&mut b, &idx, &w, &a.value_fn(), n_anc)?;
    Ok(b.finish()?)
}

fn f_strings(f: &[Vec<usize>], n: usize) -> Vec<PauliString> {
    let dim = 1usize << n;
    (0..dim * dim)
        .map(|i| PauliString::x_string(f[i % dim][i / dim] as u64, n))
        .collect()
}

/// Index (x, F(x,k)) ↦ k, the map that clears the ancilla afterwards.
fn inverse_fn(f: &[Vec<usize>], n: usize) -> SparseBooleanFn {
    let e = f
        .iter()
        .enumerate()
        .flat_map(|(x, row)| {
            row.iter()
                .enumerate()
                .skip(1)
                .map(move |(k, &y)| ((x + (y << n)) as u64, k as u64))
        })
        .collect();
    SparseBooleanFn::new(2 * n, n, e).expect("completed F is a permutation")
}

/// Smallest and largest useful budgets for [`synth_of`].
pub fn of_ancilla_range(a: &SparseMatrixCoo) -> (usize, usize) {
    let f = completed_f(a);
    let strings = f_strings(&f, a.n);
    let (slo, shi) = sbm_ancilla_range(&inverse_fn(&f, a.n));
    let m = 2 * a.n;
    (
        a.n + slo.max(split_ancillas(&strings, m, 0, false)),
        a.n + shi.max(split_ancillas(&strings, m, m, false)),
    )
}

/// |x,k⟩ → |x,F(x,k)⟩ in place on `x`, `k`.
pub fn emit_of(b: &mut CircuitBuilder, x: &[Qubit], k: &[Qubit], a: &SparseMatrixCoo, n_anc: usize) -> Result<(), SaimError> {
    let n = a.n;
    if n_anc < n {
        return Err(SaimError::Infeasible { needed: of_ancilla_range(a).0, available: n_anc });
    }
    let lift = |e: SaimError| match e {
        SaimError::Infeasible { .. } | SaimError::Select(SelectError::Infeasible { .. }) => SaimError::Infeasible {
            needed: of_ancilla_range(a).0,
            available: n_anc,
        },
        e => e,
    };
    let f = completed_f(a);
    let anc = b.alloc_n(n);
    let idx: Vec<Qubit> = x.iter().chain(k).copied().collect();
    emit_select_pauli(b, None, &idx, &f_strings(&f, n), &anc, n_anc - n).map_err(|e| lift(e.into()))?;
    for (&p, &q) in anc.iter().zip(k) {
        b.cnot(p, q);
        b.cnot(q, p);
        b.cnot(p, q);
    }
    emit_sbm(b, &idx, &anc, &inverse_fn(&f, n), n_anc - n).map_err(lift)?;
    b.release_all(&anc);
    Ok(())
}

/// Data qubits: `x` (n) then `k` (n).
pub fn synth_of(a: &SparseMatrixCoo, n_anc: usize) -> Result<Circuit, SaimError> {
    let mut b = CircuitBuilder::new();
    let x = b.register("x", a.n);
    let k = b.register("k", a.n);
    emit_of(&mut b, &x, &k, a, n_anc)?;
    Ok(b.finish()?)
}
