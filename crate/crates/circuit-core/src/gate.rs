use std::fmt;

pub type Qubit = usize;

/// Elementary gates. `Rz`/`Ry` are abstract rotations carrying their accuracy
/// budget; they only survive in cost-model circuits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    H(Qubit),
    S(Qubit),
    Sdg(Qubit),
    T(Qubit),
    Tdg(Qubit),
    X(Qubit),
    Z(Qubit),
    Cnot(Qubit, Qubit),
    Rz { q: Qubit, angle: f64, eps: f64 },
    Ry { q: Qubit, angle: f64, eps: f64 },
}

impl Gate {
    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            Gate::T(q) => Gate::Tdg(q),
            Gate::Tdg(q) => Gate::T(q),
            Gate::Rz { q, angle, eps } => Gate::Rz { q, angle: -angle, eps },
            Gate::Ry { q, angle, eps } => Gate::Ry { q, angle: -angle, eps },
            g => g,
        }
    }

    /// Target qubit, plus the control for CNOT.
    pub fn qubits(&self) -> (Qubit, Option<Qubit>) {
        match *self {
            Gate::H(q)
            | Gate::S(q)
            | Gate::Sdg(q)
            | Gate::T(q)
            | Gate::Tdg(q)
            | Gate::X(q)
            | Gate::Z(q)
            | Gate::Rz { q, .. }
            | Gate::Ry { q, .. } => (q, None),
            Gate::Cnot(c, t) => (t, Some(c)),
        }
    }

    pub fn max_qubit(&self) -> Qubit {
        let (t, c) = self.qubits();
        c.map_or(t, |c| c.max(t))
    }

    pub fn is_abstract(&self) -> bool {
        matches!(self, Gate::Rz { .. } | Gate::Ry { .. })
    }

    pub fn remap(&self, f: impl Fn(Qubit) -> Qubit) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(f(q)),
            Gate::S(q) => Gate::S(f(q)),
            Gate::Sdg(q) => Gate::Sdg(f(q)),
            Gate::T(q) => Gate::T(f(q)),
            Gate::Tdg(q) => Gate::Tdg(f(q)),
            Gate::X(q) => Gate::X(f(q)),
            Gate::Z(q) => Gate::Z(f(q)),
            Gate::Cnot(c, t) => Gate::Cnot(f(c), f(t)),
            Gate::Rz { q, angle, eps } => Gate::Rz { q: f(q), angle, eps },
            Gate::Ry { q, angle, eps } => Gate::Ry { q: f(q), angle, eps },
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) => write!(f, "H q{q}"),
            Gate::S(q) => write!(f, "S q{q}"),
            Gate::Sdg(q) => write!(f, "S+ q{q}"),
            Gate::T(q) => write!(f, "T q{q}"),
            Gate::Tdg(q) => write!(f, "T+ q{q}"),
            Gate::X(q) => write!(f, "X q{q}"),
            Gate::Z(q) => write!(f, "Z q{q}"),
            Gate::Cnot(c, t) => write!(f, "CNOT q{c} q{t}"),
            Gate::Rz { q, angle, eps } => write!(f, "RZ {angle:?} {eps:?} q{q}"),
            Gate::Ry { q, angle, eps } => write!(f, "RY {angle:?} {eps:?} q{q}"),
        }
    }
}
