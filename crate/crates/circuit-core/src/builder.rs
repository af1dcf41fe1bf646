use std::collections::BTreeSet;

use crate::circuit::{AncillaEvent, BudgetEntry, Circuit, EventKind, Register};
use crate::{CircuitError, Gate, Qubit};

/// A control literal: qubit plus polarity (`false` = negative control).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lit {
    pub q: Qubit,
    pub pos: bool,
}

impl Lit {
    pub fn pos(q: Qubit) -> Lit {
        Lit { q, pos: true }
    }
    pub fn neg(q: Qubit) -> Lit {
        Lit { q, pos: false }
    }
}

/// Single-owner builder. Declare every data register before the first
/// ancilla allocation; ancillas come from a pool placed above the data.
#[derive(Clone, Debug, Default)]
pub struct CircuitBuilder {
    n_data: usize,
    registers: Vec<Register>,
    gates: Vec<Gate>,
    ledger: Vec<AncillaEvent>,
    free: BTreeSet<usize>,
    live: BTreeSet<usize>,
    pool: usize,
    phase: f64,
    budget: Vec<BudgetEntry>,
}

impl CircuitBuilder {
    pub fn new() -> CircuitBuilder {
        CircuitBuilder::default()
    }

    pub fn register(&mut self, name: &str, len: usize) -> Vec<Qubit> {
        assert!(self.pool == 0, "registers must precede ancilla allocation");
        let start = self.n_data;
        self.n_data += len;
        self.registers.push(Register {
            name: name.to_string(),
            start,
            len,
        });
        (start..start + len).collect()
    }

    pub fn n_data(&self) -> usize {
        self.n_data
    }

    pub fn live_ancillas(&self) -> usize {
        self.live.len()
    }

    pub fn alloc(&mut self) -> Qubit {
        let slot = match self.free.pop_first() {
            Some(s) => s,
            None => {
                self.pool += 1;
                self.pool - 1
            }
        };
        self.live.insert(slot);
        let q = self.n_data + slot;
        self.ledger.push(AncillaEvent {
            kind: EventKind::Alloc,
            qubit: q,
            at: self.gates.len(),
        });
        q
    }

    pub fn alloc_n(&mut self, k: usize) -> Vec<Qubit> {
        (0..k).map(|_| self.alloc()).collect()
    }

    /// Return an ancilla to the pool. The caller guarantees it is back in |0>.
    pub fn release(&mut self, q: Qubit) {
        let slot = q.checked_sub(self.n_data).expect("release of a data qubit");
        assert!(self.live.remove(&slot), "release of a free ancilla q{q}");
        self.free.insert(slot);
        self.ledger.push(AncillaEvent {
            kind: EventKind::Release,
            qubit: q,
            at: self.gates.len(),
        });
    }

    pub fn release_all(&mut self, qs: &[Qubit]) {
        for &q in qs.iter().rev() {
            self.release(q);
        }
    }

    pub fn push(&mut self, g: Gate) {
        self.gates.push(g);
    }

    pub fn h(&mut self, q: Qubit) {
        self.push(Gate::H(q));
    }
    pub fn s(&mut self, q: Qubit) {
        self.push(Gate::S(q));
    }
    pub fn sdg(&mut self, q: Qubit) {
        self.push(Gate::Sdg(q));
    }
    pub fn t(&mut self, q: Qubit) {
        self.push(Gate::T(q));
    }
    pub fn tdg(&mut self, q: Qubit) {
        self.push(Gate::Tdg(q));
    }
    pub fn x(&mut self, q: Qubit) {
        self.push(Gate::X(q));
    }
    pub fn z(&mut self, q: Qubit) {
        self.push(Gate::Z(q));
    }
    pub fn cnot(&mut self, c: Qubit, t: Qubit) {
        self.push(Gate::Cnot(c, t));
    }
    pub fn rz(&mut self, q: Qubit, angle: f64, eps: f64) {
        self.push(Gate::Rz { q, angle, eps });
    }
    pub fn ry(&mut self, q: Qubit, angle: f64, eps: f64) {
        self.push(Gate::Ry { q, angle, eps });
    }

    pub fn cz(&mut self, a: Qubit, b: Qubit) {
        self.h(b);
        self.cnot(a, b);
        self.h(b);
    }

    /// Controlled-Y via S† CNOT S on the target.
    pub fn cy(&mut self, c: Qubit, t: Qubit) {
        self.sdg(t);
        self.cnot(c, t);
        self.s(t);
    }

    /// Exact Toffoli in 15 Clifford+T gates (7 T).
    pub fn toffoli(&mut self, a: Qubit, b: Qubit, c: Qubit) {
        self.h(c);
        self.cnot(b, c);
        self.tdg(c);
        self.cnot(a, c);
        self.t(c);
        self.cnot(b, c);
        self.tdg(c);
        self.cnot(a, c);
        self.t(b);
        self.t(c);
        self.h(c);
        self.cnot(a, b);
        self.t(a);
        self.tdg(b);
        self.cnot(a, b);
    }

    /// Toffoli with polarity-tagged controls; negative controls are X-wrapped.
    pub fn toffoli_lit(&mut self, a: Lit, b: Lit, c: Qubit) {
        for l in [a, b] {
            if !l.pos {
                self.x(l.q);
            }
        }
        self.toffoli(a.q, b.q, c);
        for l in [b, a] {
            if !l.pos {
                self.x(l.q);
            }
        }
    }

    /// Copy `src` onto `targets` (assumed |0>) with a doubling CNOT tree.
    pub fn fanout(&mut self, src: Qubit, targets: &[Qubit]) {
        let mut have = vec![src];
        let mut next = 0;
        while next < targets.len() {
            let k = have.len().min(targets.len() - next);
            for i in 0..k {
                self.cnot(have[i], targets[next + i]);
            }
            have.extend_from_slice(&targets[next..next + k]);
            next += k;
        }
    }

    pub fn unfanout(&mut self, src: Qubit, targets: &[Qubit]) {
        let m = self.mark();
        self.fanout(src, targets);
        let tail: Vec<Gate> = self.gates.drain(m..).collect();
        for g in tail.iter().rev() {
            self.push(g.inverse());
        }
    }

    /// In-place XOR reduction of `qs` into `qs[0]` by a balanced CNOT tree.
    /// Returns the emitted gates so the caller can undo them.
    pub fn xor_reduce(&mut self, qs: &[Qubit]) -> Vec<Gate> {
        let m = self.mark();
        let mut stride = 1;
        while stride < qs.len() {
            let mut i = 0;
            while i + stride < qs.len() {
                self.cnot(qs[i + stride], qs[i]);
                i += 2 * stride;
            }
            stride *= 2;
        }
        self.gates[m..].to_vec()
    }

    pub fn undo(&mut self, gates: &[Gate]) {
        for g in gates.iter().rev() {
            self.push(g.inverse());
        }
    }

    pub fn mark(&self) -> usize {
        self.gates.len()
    }

    /// Gates emitted since `from`, for later inversion with `undo`.
    pub fn since(&self, from: usize) -> Vec<Gate> {
        self.gates[from..].to_vec()
    }

    /// Append the inverse of gates[from..]. The range must not contain
    /// ancilla events.
    pub fn push_inverse_since(&mut self, from: usize) {
        debug_assert!(self.ledger.iter().all(|e| e.at <= from));
        let tail = self.since(from);
        self.undo(&tail);
    }

    /// Replay `sub` with its data qubit i mapped to `map[i]`; its ancillas
    /// are drawn from this builder's pool as its ledger dictates.
    pub fn append(&mut self, sub: &Circuit, map: &[Qubit]) {
        assert_eq!(map.len(), sub.n_data(), "qubit map length");
        let nd = sub.n_data();
        let mut anc: Vec<Option<Qubit>> = vec![None; sub.n_anc()];
        let mut implicit = Vec::new();
        if sub.ledger().is_empty() {
            for slot in anc.iter_mut() {
                let q = self.alloc();
                *slot = Some(q);
                implicit.push(q);
            }
        }
        let events = sub.ledger();
        let mut ei = 0;
        for (i, g) in sub.gates().iter().enumerate() {
            while ei < events.len() && events[ei].at == i {
                self.replay(&events[ei], nd, &mut anc);
                ei += 1;
            }
            let q = g.remap(|q| if q < nd { map[q] } else { anc[q - nd].expect("ancilla used outside its lifetime") });
            self.push(q);
        }
        while ei < events.len() {
            self.replay(&events[ei], nd, &mut anc);
            ei += 1;
        }
        self.release_all(&implicit);
        self.phase += sub.global_phase();
        self.budget.extend_from_slice(sub.budget());
    }

    fn replay(&mut self, e: &AncillaEvent, nd: usize, anc: &mut [Option<Qubit>]) {
        let slot = e.qubit - nd;
        match e.kind {
            EventKind::Alloc => anc[slot] = Some(self.alloc()),
            EventKind::Release => {
                let q = anc[slot].take().expect("release of unallocated ancilla");
                self.release(q);
            }
        }
    }

    pub fn add_phase(&mut self, phi: f64) {
        self.phase += phi;
    }

    pub fn budget(&mut self, label: impl Into<String>, eps: f64) {
        self.budget.push(BudgetEntry {
            label: label.into(),
            eps,
        });
    }

    pub fn budget_mark(&self) -> usize {
        self.budget.len()
    }

    /// Replace the budget entries recorded since `from` with one entry, for
    /// branches of which only one ever acts.
    pub fn collapse_budget(&mut self, from: usize, label: impl Into<String>, eps: f64) {
        self.budget.truncate(from);
        self.budget(label, eps);
    }

    pub fn finish(self) -> Result<Circuit, CircuitError> {
        if let Some(s) = self.live.first() {
            return Err(CircuitError::Ledger(format!(
                "q{} still live at finish",
                self.n_data + s
            )));
        }
        Circuit::from_parts(
            self.n_data,
            self.pool,
            self.registers,
            self.gates,
            self.ledger,
            self.phase,
            self.budget,
        )
    }
}
