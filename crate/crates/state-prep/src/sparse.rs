use circuit_core::{Circuit, CircuitBuilder, Qubit};
use num_complex::Complex64 as C64;
use select_oracle::{emit_recursive, emit_select_pauli, split_ancillas, PauliString, SelectError};
use sparse_access::{emit_sbm, sbm_ancilla_range, SaimError, SparseBooleanFn};

use crate::ucr::{emit_ucr, ucr_ancillas};
use crate::{check_eps, SparseAmplitudes, StateError};

fn log2_ceil(s: usize) -> usize {
    s.next_power_of_two().trailing_zeros() as usize
}

struct Plan {
    m_s: usize,
    strings: Vec<PauliString>,
    back: Option<SparseBooleanFn>,
}

fn plan(n_out: usize, rows: &[Vec<(u64, C64)>]) -> Result<Plan, StateError> {
    let m_r = rows.len().trailing_zeros() as usize;
    let m_s = log2_ceil(rows.iter().map(Vec::len).max().unwrap_or(0).max(1));
    // index k + 2^{m_s}·r, so k sits in the low bits
    let mut strings = Vec::with_capacity(rows.len() << m_s);
    for row in rows {
        for k in 0..1usize << m_s {
            strings.push(match row.get(k) {
                Some(&(q, _)) => PauliString::x_string(q, n_out),
                None => PauliString::identity(n_out),
            });
        }
    }
    let back = if m_s == 0 {
        None
    } else {
        let e = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| {
                row.iter()
                    .enumerate()
                    .skip(1)
                    .map(move |(k, &(q, _))| (q + ((r as u64) << n_out), k as u64))
            })
            .collect();
        Some(SparseBooleanFn::new(n_out + m_r, m_s, e).map_err(|e| match e {
            SaimError::Duplicate(q) => StateError::Duplicate(q),
            e => e.into(),
        })?)
    };
    Ok(Plan { m_s, strings, back })
}

/// Smallest and largest useful budgets for [`emit_rows`].
pub fn rows_ancillas(n_out: usize, rows: &[Vec<(u64, C64)>]) -> Result<(usize, usize), StateError> {
    let m_r = rows.len().trailing_zeros() as usize;
    let p = plan(n_out, rows)?;
    let prep = m_r + ucr_ancillas(p.m_s, m_r > 0);
    let (blo, bhi) = p.back.as_ref().map_or((0, 0), sbm_ancilla_range);
    let m = p.m_s + m_r;
    Ok((
        p.m_s + prep.max(split_ancillas(&p.strings, m, 0, false)).max(blo),
        p.m_s + prep.max(split_ancillas(&p.strings, m, m, false)).max(bhi),
    ))
}

/// For each value r of `rows_idx`, prepare Σ_k c_{r,k}|q_{r,k}⟩ on `out`
/// from |0…0⟩, within eps. Each row lists (q, c) with distinct q and unit
/// norm; an empty row leaves `out` alone. A register of ⌈log2 s⌉ ancillas
/// holds k in between and is cleared by a sparse Boolean memory.
pub fn emit_rows(
    b: &mut CircuitBuilder,
    rows_idx: &[Qubit],
    out: &[Qubit],
    rows: &[Vec<(u64, C64)>],
    eps: f64,
    n_anc: usize,
) -> Result<(), StateError> {
    if rows.len() != 1 << rows_idx.len() {
        return Err(StateError::Shape(format!("{} rows for {} index qubits", rows.len(), rows_idx.len())));
    }
    let n_out = out.len();
    let p = plan(n_out, rows)?;
    let (lo, _) = rows_ancillas(n_out, rows)?;
    let infeasible = StateError::Infeasible { needed: lo, available: n_anc };
    if n_anc < lo {
        return Err(infeasible);
    }
    let work = n_anc - p.m_s;
    let a = b.alloc_n(p.m_s);

    let coeffs: Vec<Vec<C64>> = rows
        .iter()
        .map(|row| {
            let mut v = vec![C64::new(0.0, 0.0); 1 << p.m_s];
            row.iter().enumerate().for_each(|(k, e)| v[k] = e.1);
            v
        })
        .collect();
    let msb: Vec<Qubit> = rows_idx.iter().rev().copied().collect();
    let mark = b.budget_mark();
    emit_recursive(b, None, &msb, &|r| !rows[r].is_empty(), &mut |b, r, c| {
        emit_ucr(b, c, &a, &coeffs[r], eps)
    });
    b.collapse_budget(mark, "rows.prep", eps);

    let idx: Vec<Qubit> = a.iter().chain(rows_idx).copied().collect();
    emit_select_pauli(b, None, &idx, &p.strings, out, work).map_err(|e| match e {
        SelectError::Infeasible { .. } => infeasible.clone(),
        e => e.into(),
    })?;

    if let Some(f) = &p.back {
        let idx: Vec<Qubit> = out.iter().chain(rows_idx).copied().collect();
        emit_sbm(b, &idx, &a, f, work).map_err(|e| match e {
            SaimError::Infeasible { .. } => infeasible.clone(),
            e => e.into(),
        })?;
    }
    b.release_all(&a);
    Ok(())
}

/// Data register `q` (n qubits).
pub fn synth_sparse_state(a: &SparseAmplitudes, eps: f64, n_anc: usize) -> Result<Circuit, StateError> {
    check_eps(eps)?;
    let mut b = CircuitBuilder::new();
    let q = b.register("q", a.n());
    if let [(idx, amp)] = a.entries() {
        for (i, &qi) in q.iter().enumerate() {
            if idx >> i & 1 == 1 {
                b.x(qi);
            }
        }
        b.add_phase(amp.arg());
    } else {
        emit_rows(&mut b, &[], &q, &[a.entries().to_vec()], eps, n_anc)?;
    }
    Ok(b.finish()?)
}
