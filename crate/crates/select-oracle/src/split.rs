//! Pauli select with a tunable ancilla budget: the high index bits run
//! through the ladder, the low `m_a` bits through the router.

use circuit_core::{CircuitBuilder, Qubit};

use crate::recursive::{emit_recursive, recursive_ancillas};
use crate::router::{emit_router, router_ancillas};
use crate::{ControlledImpl, PauliString, SelectError};

fn as_impls(strings: &[PauliString]) -> Vec<&dyn ControlledImpl> {
    strings.iter().map(|s| s as &dyn ControlledImpl).collect()
}

/// Ancilla high-water mark with `m_a` router bits.
pub fn split_ancillas(strings: &[PauliString], m: usize, m_a: usize, controlled: bool) -> usize {
    let impls = as_impls(strings);
    let m_b = m - m_a;
    let inner = impls
        .chunks(1 << m_a)
        .map(|blk| router_ancillas(m_a, blk, controlled || m_b > 0))
        .max()
        .unwrap_or(0);
    let outer = if impls.chunks(1 << m_a).any(|blk| blk.iter().any(|p| !p.is_identity())) {
        recursive_ancillas(m_b)
    } else {
        0
    };
    outer + inner
}

/// Largest router width that fits `n_anc`, with its ancilla need.
pub fn choose_split(
    strings: &[PauliString],
    m: usize,
    n_anc: usize,
    controlled: bool,
) -> Result<(usize, usize), SelectError> {
    let mut best = None;
    for m_a in 0..=m {
        let need = split_ancillas(strings, m, m_a, controlled);
        if need <= n_anc {
            best = Some((m_a, need));
        }
    }
    best.ok_or(SelectError::Infeasible {
        needed: split_ancillas(strings, m, 0, controlled),
        available: n_anc,
    })
}

/// Emit Σ_x |x⟩⟨x| ⊗ strings[x] over `index` (least significant first).
pub fn emit_select_pauli(
    b: &mut CircuitBuilder,
    control: Option<Qubit>,
    index: &[Qubit],
    strings: &[PauliString],
    targets: &[Qubit],
    n_anc: usize,
) -> Result<usize, SelectError> {
    let m = index.len();
    if strings.len() != 1 << m {
        return Err(SelectError::Shape(format!(
            "{} strings for {m} index qubits",
            strings.len()
        )));
    }
    let (m_a, _) = choose_split(strings, m, n_anc, control.is_some())?;
    let msb: Vec<Qubit> = index.iter().rev().copied().collect();
    let (outer, inner) = msb.split_at(m - m_a);
    let impls = as_impls(strings);
    let blocks: Vec<&[&dyn ControlledImpl]> = impls.chunks(1 << m_a).collect();
    emit_recursive(
        b,
        control,
        outer,
        &|xb| blocks[xb].iter().any(|p| !p.is_identity()),
        &mut |b, xb, ctl| emit_router(b, ctl, inner, blocks[xb], targets),
    );
    Ok(m_a)
}
