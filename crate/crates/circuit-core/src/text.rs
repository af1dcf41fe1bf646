use std::fmt::Write;

use crate::circuit::{AncillaEvent, BudgetEntry, EventKind, Register};
use crate::{Circuit, CircuitError, Gate, Qubit};

/// Line-oriented text form. Header and ledger lines start with `#`.
pub fn write_circuit(c: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "# data {}", c.n_data()).unwrap();
    writeln!(out, "# anc {}", c.n_anc()).unwrap();
    if c.global_phase() != 0.0 {
        writeln!(out, "# phase {:?}", c.global_phase()).unwrap();
    }
    for r in c.registers() {
        writeln!(out, "# reg {} {} {}", r.name, r.start, r.len).unwrap();
    }
    for b in c.budget() {
        writeln!(out, "# budget {} {:?}", b.label, b.eps).unwrap();
    }
    let events = c.ledger();
    let mut ei = 0;
    let flush = |out: &mut String, upto: usize, ei: &mut usize| {
        while *ei < events.len() && events[*ei].at <= upto {
            let e = &events[*ei];
            let kw = match e.kind {
                EventKind::Alloc => "alloc",
                EventKind::Release => "free",
            };
            writeln!(out, "# {kw} q{}", e.qubit).unwrap();
            *ei += 1;
        }
    };
    for (i, g) in c.gates().iter().enumerate() {
        flush(&mut out, i, &mut ei);
        writeln!(out, "{g}").unwrap();
    }
    flush(&mut out, usize::MAX, &mut ei);
    out
}

fn qubit(tok: &str, line: usize) -> Result<Qubit, CircuitError> {
    tok.strip_prefix('q')
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| CircuitError::Parse {
            line,
            msg: format!("bad qubit `{tok}`"),
        })
}

fn num<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, CircuitError> {
    tok.and_then(|s| s.parse().ok()).ok_or_else(|| CircuitError::Parse {
        line,
        msg: format!("missing or bad {what}"),
    })
}

pub fn parse_circuit(text: &str) -> Result<Circuit, CircuitError> {
    let mut n_data = None;
    let mut n_anc = 0;
    let mut phase = 0.0;
    let mut registers = Vec::new();
    let mut budget = Vec::new();
    let mut gates = Vec::new();
    let mut ledger = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() {
            continue;
        }
        let mut toks = s.split_whitespace();
        if let Some(rest) = s.strip_prefix('#') {
            let mut t = rest.split_whitespace();
            match t.next() {
                Some("data") => n_data = Some(num(t.next(), line, "data count")?),
                Some("anc") => n_anc = num(t.next(), line, "ancilla count")?,
                Some("phase") => phase = num(t.next(), line, "phase")?,
                Some("reg") => {
                    let name = t.next().unwrap_or_default().to_string();
                    let start = num(t.next(), line, "register start")?;
                    let len = num(t.next(), line, "register length")?;
                    registers.push(Register { name, start, len });
                }
                Some("budget") => {
                    let label = t.next().unwrap_or_default().to_string();
                    let eps = num(t.next(), line, "budget eps")?;
                    budget.push(BudgetEntry { label, eps });
                }
                Some(kw @ ("alloc" | "free")) => {
                    let q = qubit(t.next().unwrap_or(""), line)?;
                    let kind = if kw == "alloc" {
                        EventKind::Alloc
                    } else {
                        EventKind::Release
                    };
                    ledger.push(AncillaEvent {
                        kind,
                        qubit: q,
                        at: gates.len(),
                    });
                }
                _ => {}
            }
            continue;
        }
        let op = toks.next().unwrap();
        let g = match op {
            "H" | "S" | "S+" | "T" | "T+" | "X" | "Z" => {
                let q = qubit(toks.next().unwrap_or(""), line)?;
                match op {
                    "H" => Gate::H(q),
                    "S" => Gate::S(q),
                    "S+" => Gate::Sdg(q),
                    "T" => Gate::T(q),
                    "T+" => Gate::Tdg(q),
                    "X" => Gate::X(q),
                    _ => Gate::Z(q),
                }
            }
            "CNOT" => {
                let c = qubit(toks.next().unwrap_or(""), line)?;
                let t = qubit(toks.next().unwrap_or(""), line)?;
                Gate::Cnot(c, t)
            }
            "RZ" | "RY" => {
                let angle: f64 = num(toks.next(), line, "angle")?;
                let eps: f64 = num(toks.next(), line, "eps")?;
                if eps.is_nan() || eps <= 0.0 || !angle.is_finite() {
                    return Err(CircuitError::Parse {
                        line,
                        msg: "rotation needs finite angle and eps > 0".into(),
                    });
                }
                let q = qubit(toks.next().unwrap_or(""), line)?;
                if op == "RZ" {
                    Gate::Rz { q, angle, eps }
                } else {
                    Gate::Ry { q, angle, eps }
                }
            }
            _ => {
                return Err(CircuitError::Parse {
                    line,
                    msg: format!("unknown gate `{op}`"),
                })
            }
        };
        if toks.next().is_some() {
            return Err(CircuitError::Parse {
                line,
                msg: "trailing tokens".into(),
            });
        }
        gates.push(g);
    }
    let n_data = n_data.ok_or(CircuitError::Parse {
        line: 0,
        msg: "missing `# data` header".into(),
    })?;
    Circuit::from_parts(n_data, n_anc, registers, gates, ledger, phase, budget)
}
