//! Select oracles Σ_x |x⟩⟨x| ⊗ U_x: a few-ancilla ladder, a many-ancilla
//! router, and a Pauli-string version that splits the index between them.

mod pauli;
mod recursive;
mod router;
mod split;

use circuit_core::{Circuit, CircuitBuilder, CircuitError, Qubit};
use thiserror::Error;

pub use pauli::{Letter, PauliString};
pub use recursive::{emit_recursive, recursive_ancillas, Leaf};
pub use router::{emit_router, router_ancillas};
pub use split::{choose_split, emit_select_pauli, split_ancillas};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SelectError {
    #[error("shape: {0}")]
    Shape(String),
    #[error("needs {needed} ancillas, {available} available")]
    Infeasible { needed: usize, available: usize },
    #[error("parse: {0}")]
    Parse(String),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// A payload that can be applied under a single control qubit.
pub trait ControlledImpl {
    fn width(&self) -> usize;

    /// Apply on `targets`, conditioned on `control` when given.
    fn emit(&self, b: &mut CircuitBuilder, control: Option<Qubit>, targets: &[Qubit]);

    /// Ancillas held by one controlled application.
    fn ancillas(&self) -> usize {
        0
    }

    fn is_identity(&self) -> bool {
        false
    }

    fn as_pauli(&self) -> Option<&PauliString> {
        None
    }
}

impl ControlledImpl for PauliString {
    fn width(&self) -> usize {
        self.len()
    }

    fn emit(&self, b: &mut CircuitBuilder, control: Option<Qubit>, targets: &[Qubit]) {
        PauliString::emit(self, b, control, targets)
    }

    fn ancillas(&self) -> usize {
        self.weight().saturating_sub(1)
    }

    fn is_identity(&self) -> bool {
        PauliString::is_identity(self)
    }

    fn as_pauli(&self) -> Option<&PauliString> {
        Some(self)
    }
}

/// Payload given by a closure `(builder, control, targets)`.
pub struct FnImpl<F> {
    pub width: usize,
    pub ancillas: usize,
    pub f: F,
}

impl<F: Fn(&mut CircuitBuilder, Option<Qubit>, &[Qubit])> ControlledImpl for FnImpl<F> {
    fn width(&self) -> usize {
        self.width
    }

    fn emit(&self, b: &mut CircuitBuilder, control: Option<Qubit>, targets: &[Qubit]) {
        (self.f)(b, control, targets)
    }

    fn ancillas(&self) -> usize {
        self.ancillas
    }
}

fn layout(impls: &[&dyn ControlledImpl], m: usize) -> Result<(CircuitBuilder, Vec<Qubit>, Vec<Qubit>), SelectError> {
    if impls.len() != 1 << m {
        return Err(SelectError::Shape(format!(
            "{} payloads for {m} index qubits",
            impls.len()
        )));
    }
    let w = impls.first().map_or(0, |p| p.width());
    if impls.iter().any(|p| p.width() != w) {
        return Err(SelectError::Shape("payload widths differ".into()));
    }
    let mut b = CircuitBuilder::new();
    let idx = b.register("idx", m);
    let tgt = b.register("tgt", w);
    Ok((b, idx, tgt))
}

/// Data qubits: `idx` (m, least significant first) then `tgt`.
pub fn synth_select_recursive(impls: &[&dyn ControlledImpl], m: usize) -> Result<Circuit, SelectError> {
    let (mut b, idx, tgt) = layout(impls, m)?;
    let msb: Vec<Qubit> = idx.iter().rev().copied().collect();
    emit_recursive(
        &mut b,
        None,
        &msb,
        &|x| !impls[x].is_identity(),
        &mut |b, x, c| impls[x].emit(b, c, &tgt),
    );
    Ok(b.finish()?)
}

/// Router variant; `n_anc` caps the ancillas when given.
pub fn synth_select_router(
    impls: &[&dyn ControlledImpl],
    m: usize,
    n_anc: Option<usize>,
) -> Result<Circuit, SelectError> {
    let (mut b, idx, tgt) = layout(impls, m)?;
    let needed = router_ancillas(m, impls, false);
    if let Some(avail) = n_anc {
        if needed > avail {
            return Err(SelectError::Infeasible { needed, available: avail });
        }
    }
    let msb: Vec<Qubit> = idx.iter().rev().copied().collect();
    emit_router(&mut b, None, &msb, impls, &tgt);
    Ok(b.finish()?)
}

/// Pauli select within `n_anc` ancillas; the router takes as many low
/// index bits as the budget allows.
pub fn synth_select_pauli(strings: &[PauliString], m: usize, n_anc: usize) -> Result<Circuit, SelectError> {
    let impls: Vec<&dyn ControlledImpl> = strings.iter().map(|s| s as &dyn ControlledImpl).collect();
    let (mut b, idx, tgt) = layout(&impls, m)?;
    emit_select_pauli(&mut b, None, &idx, strings, &tgt, n_anc)?;
    Ok(b.finish()?)
}

/// Smallest and largest useful budgets for [`synth_select_pauli`].
pub fn pauli_ancilla_range(strings: &[PauliString], m: usize) -> (usize, usize) {
    (
        split_ancillas(strings, m, 0, false),
        split_ancillas(strings, m, m, false),
    )
}
