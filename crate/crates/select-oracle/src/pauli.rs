use std::fmt;
use std::str::FromStr;

use circuit_core::{CircuitBuilder, Qubit};

use crate::SelectError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    fn code(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    /// Has an X component (X or Y).
    pub fn flips(self) -> bool {
        matches!(self, Letter::X | Letter::Y)
    }

    /// Has a Z component (Z or Y).
    pub fn phases(self) -> bool {
        matches!(self, Letter::Z | Letter::Y)
    }
}

/// Signed tensor product of single-qubit Paulis. Letter `l` acts on target
/// qubit `l`; `phase` is a power of i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub letters: Vec<Letter>,
    pub phase: u8,
}

impl PauliString {
    pub fn identity(len: usize) -> PauliString {
        PauliString {
            letters: vec![Letter::I; len],
            phase: 0,
        }
    }

    /// X on every set bit of `bits`.
    pub fn x_string(bits: u64, len: usize) -> PauliString {
        PauliString {
            letters: (0..len)
                .map(|l| if bits >> l & 1 == 1 { Letter::X } else { Letter::I })
                .collect(),
            phase: 0,
        }
    }

    pub fn new(letters: Vec<Letter>, phase: u8) -> PauliString {
        PauliString {
            letters,
            phase: phase % 4,
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.phase == 0 && self.letters.iter().all(|&l| l == Letter::I)
    }

    pub fn weight(&self) -> usize {
        self.letters.iter().filter(|&&l| l != Letter::I).count()
    }

    /// Phase as a power of i once every Y is rewritten as i·X·Z.
    pub fn xz_phase(&self) -> u8 {
        let ys = self.letters.iter().filter(|&&l| l == Letter::Y).count();
        ((self.phase as usize + ys) % 4) as u8
    }

    pub fn with_phase(mut self, phase: u8) -> PauliString {
        self.phase = phase % 4;
        self
    }

    /// Controlled (or plain, when `control` is None) application on
    /// `targets`. The control is fanned out so the letters act in parallel.
    pub fn emit(&self, b: &mut CircuitBuilder, control: Option<Qubit>, targets: &[Qubit]) {
        assert_eq!(targets.len(), self.len(), "pauli width");
        let Some(c) = control else {
            for (&t, &l) in targets.iter().zip(&self.letters) {
                match l {
                    Letter::I => {}
                    Letter::X => b.x(t),
                    Letter::Z => b.z(t),
                    Letter::Y => {
                        b.z(t);
                        b.x(t);
                        b.add_phase(std::f64::consts::FRAC_PI_2);
                    }
                }
            }
            b.add_phase(self.phase as f64 * std::f64::consts::FRAC_PI_2);
            return;
        };
        let act: Vec<(Qubit, Letter)> = targets
            .iter()
            .zip(&self.letters)
            .filter(|(_, &l)| l != Letter::I)
            .map(|(&t, &l)| (t, l))
            .collect();
        let copies = b.alloc_n(act.len().saturating_sub(1));
        b.fanout(c, &copies);
        for (i, &(t, l)) in act.iter().enumerate() {
            let ci = if i == 0 { c } else { copies[i - 1] };
            match l {
                Letter::X => b.cnot(ci, t),
                Letter::Y => b.cy(ci, t),
                Letter::Z => b.cz(ci, t),
                Letter::I => unreachable!(),
            }
        }
        b.unfanout(c, &copies);
        b.release_all(&copies);
        phase_on(b, c, self.phase);
    }
}

/// diag(1, i^k) on `q`.
pub(crate) fn phase_on(b: &mut CircuitBuilder, q: Qubit, k: u8) {
    match k % 4 {
        1 => b.s(q),
        2 => b.z(q),
        3 => b.sdg(q),
        _ => {}
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(["+", "+i", "-", "-i"][self.phase as usize])?;
        for l in &self.letters {
            write!(f, "{}", l.code())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = SelectError;

    /// `+XZY`, `-IZX`, `+iXX`, `-iY`; a bare letter string means `+`.
    fn from_str(s: &str) -> Result<PauliString, SelectError> {
        let (phase, rest) = if let Some(r) = s.strip_prefix("+i") {
            (1, r)
        } else if let Some(r) = s.strip_prefix("-i") {
            (3, r)
        } else if let Some(r) = s.strip_prefix('+') {
            (0, r)
        } else if let Some(r) = s.strip_prefix('-') {
            (2, r)
        } else if let Some(r) = s.strip_prefix('i') {
            (1, r)
        } else {
            (0, s)
        };
        let letters = rest
            .chars()
            .map(|c| match c {
                'I' => Ok(Letter::I),
                'X' => Ok(Letter::X),
                'Y' => Ok(Letter::Y),
                'Z' => Ok(Letter::Z),
                _ => Err(SelectError::Parse(format!("bad pauli letter {c:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PauliString { letters, phase })
    }
}
