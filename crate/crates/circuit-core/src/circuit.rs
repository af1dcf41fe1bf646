use serde::{Deserialize, Serialize};

use crate::{CircuitError, Gate, Qubit};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub start: Qubit,
    pub len: usize,
}

impl Register {
    pub fn qubits(&self) -> Vec<Qubit> {
        (self.start..self.start + self.len).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EventKind {
    Alloc,
    Release,
}

/// Ancilla lifecycle event, taking effect just before gate `at`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AncillaEvent {
    pub kind: EventKind,
    pub qubit: Qubit,
    pub at: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BudgetEntry {
    pub label: String,
    pub eps: f64,
}

/// A finalized circuit. Data qubits are `0..n_data`; ancillas sit above them.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    n_data: usize,
    n_anc: usize,
    registers: Vec<Register>,
    gates: Vec<Gate>,
    ledger: Vec<AncillaEvent>,
    global_phase: f64,
    budget: Vec<BudgetEntry>,
}

impl Circuit {
    pub fn empty(n_data: usize) -> Circuit {
        Circuit {
            n_data,
            n_anc: 0,
            registers: Vec::new(),
            gates: Vec::new(),
            ledger: Vec::new(),
            global_phase: 0.0,
            budget: Vec::new(),
        }
    }

    /// Assemble and validate a circuit from raw parts.
    pub fn from_parts(
        n_data: usize,
        n_anc: usize,
        registers: Vec<Register>,
        gates: Vec<Gate>,
        ledger: Vec<AncillaEvent>,
        global_phase: f64,
        budget: Vec<BudgetEntry>,
    ) -> Result<Circuit, CircuitError> {
        let c = Circuit {
            n_data,
            n_anc,
            registers,
            gates,
            ledger,
            global_phase,
            budget,
        };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), CircuitError> {
        let nq = self.n_qubits();
        for r in &self.registers {
            if r.start + r.len > self.n_data {
                return Err(CircuitError::Shape(format!(
                    "register {} exceeds the {} data qubits",
                    r.name, self.n_data
                )));
            }
        }
        for g in &self.gates {
            let (t, c) = g.qubits();
            if g.max_qubit() >= nq {
                return Err(CircuitError::QubitRange(g.max_qubit()));
            }
            if c == Some(t) {
                return Err(CircuitError::RepeatedQubit(t));
            }
        }
        let mut live = vec![false; self.n_anc];
        let mut last = 0;
        for e in &self.ledger {
            if e.at < last || e.at > self.gates.len() {
                return Err(CircuitError::Ledger("events out of order".into()));
            }
            last = e.at;
            if e.qubit < self.n_data || e.qubit >= nq {
                return Err(CircuitError::Ledger(format!("q{} is not an ancilla", e.qubit)));
            }
            let slot = &mut live[e.qubit - self.n_data];
            match e.kind {
                EventKind::Alloc if *slot => {
                    return Err(CircuitError::Ledger(format!("q{} allocated twice", e.qubit)))
                }
                EventKind::Release if !*slot => {
                    return Err(CircuitError::Ledger(format!("q{} released while free", e.qubit)))
                }
                EventKind::Alloc => *slot = true,
                EventKind::Release => *slot = false,
            }
        }
        if let Some(i) = live.iter().position(|&l| l) {
            return Err(CircuitError::Ledger(format!(
                "q{} never released",
                self.n_data + i
            )));
        }
        Ok(())
    }

    pub fn n_data(&self) -> usize {
        self.n_data
    }

    /// Size of the ancilla pool; equals the ancilla high-water mark for
    /// builder-produced circuits.
    pub fn n_anc(&self) -> usize {
        self.n_anc
    }

    pub fn n_qubits(&self) -> usize {
        self.n_data + self.n_anc
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn ledger(&self) -> &[AncillaEvent] {
        &self.ledger
    }

    pub fn global_phase(&self) -> f64 {
        self.global_phase
    }

    pub fn budget(&self) -> &[BudgetEntry] {
        &self.budget
    }

    pub fn budget_total(&self) -> f64 {
        self.budget.iter().map(|b| b.eps).sum()
    }

    pub fn has_abstract(&self) -> bool {
        self.gates.iter().any(Gate::is_abstract)
    }

    /// Max number of simultaneously live ancillas according to the ledger.
    pub fn ancilla_peak(&self) -> usize {
        if self.ledger.is_empty() {
            // hand-written circuits without events hold the whole pool
            return self.n_anc;
        }
        let mut live = 0usize;
        let mut peak = 0usize;
        for e in &self.ledger {
            match e.kind {
                EventKind::Alloc => {
                    live += 1;
                    peak = peak.max(live);
                }
                EventKind::Release => live -= 1,
            }
        }
        peak
    }

    pub fn with_phase(mut self, phase: f64) -> Circuit {
        self.global_phase = phase;
        self
    }

    pub fn with_budget(mut self, budget: Vec<BudgetEntry>) -> Circuit {
        self.budget = budget;
        self
    }

    /// Replace each gate by a sequence on the same qubits. The callback
    /// returns a global phase to add. Ledger positions are carried over.
    pub fn rewrite<E>(
        &self,
        mut f: impl FnMut(&Gate, &mut Vec<Gate>) -> Result<f64, E>,
    ) -> Result<Circuit, E> {
        let mut gates = Vec::with_capacity(self.gates.len());
        let mut pos = Vec::with_capacity(self.gates.len() + 1);
        let mut phase = self.global_phase;
        for g in &self.gates {
            pos.push(gates.len());
            phase += f(g, &mut gates)?;
        }
        pos.push(gates.len());
        let ledger = self
            .ledger
            .iter()
            .map(|e| AncillaEvent { at: pos[e.at], ..*e })
            .collect();
        Ok(Circuit {
            gates,
            ledger,
            global_phase: phase,
            ..self.clone_shape()
        })
    }

    fn clone_shape(&self) -> Circuit {
        Circuit {
            n_data: self.n_data,
            n_anc: self.n_anc,
            registers: self.registers.clone(),
            gates: Vec::new(),
            ledger: Vec::new(),
            global_phase: self.global_phase,
            budget: self.budget.clone(),
        }
    }
}

/// Gates of `a` followed by those of `b`; ledgers and budgets concatenated.
pub fn compose(a: &Circuit, b: &Circuit) -> Result<Circuit, CircuitError> {
    if a.n_data != b.n_data {
        return Err(CircuitError::Shape(format!(
            "{} vs {} data qubits",
            a.n_data, b.n_data
        )));
    }
    let registers = match (a.registers.is_empty(), b.registers.is_empty()) {
        (true, _) => b.registers.clone(),
        (_, true) => a.registers.clone(),
        _ if a.registers == b.registers => a.registers.clone(),
        _ => return Err(CircuitError::Shape("register declarations differ".into())),
    };
    let offset = a.gates.len();
    let mut gates = a.gates.clone();
    gates.extend_from_slice(&b.gates);
    let mut ledger = a.ledger.clone();
    ledger.extend(b.ledger.iter().map(|e| AncillaEvent { at: e.at + offset, ..*e }));
    let mut budget = a.budget.clone();
    budget.extend_from_slice(&b.budget);
    Ok(Circuit {
        n_data: a.n_data,
        n_anc: a.n_anc.max(b.n_anc),
        registers,
        gates,
        ledger,
        global_phase: a.global_phase + b.global_phase,
        budget,
    })
}

/// Reversed gate order with every gate inverted; the ledger is mirrored.
pub fn inverse(c: &Circuit) -> Circuit {
    let len = c.gates.len();
    let gates = c.gates.iter().rev().map(Gate::inverse).collect();
    let ledger = c
        .ledger
        .iter()
        .rev()
        .map(|e| AncillaEvent {
            kind: match e.kind {
                EventKind::Alloc => EventKind::Release,
                EventKind::Release => EventKind::Alloc,
            },
            qubit: e.qubit,
            at: len - e.at,
        })
        .collect();
    Circuit {
        gates,
        ledger,
        global_phase: -c.global_phase,
        ..c.clone_shape()
    }
}
