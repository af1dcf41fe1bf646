//! Seeded parameter sweeps emitting one CSV row per point.

use std::io::Write;

use clap::ValueEnum;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::commands::{self, BeInput, SaimWhich, StateMode, Synthesized};
use crate::input::{
    ComplexEntry, ComplexMatrixInput, LcuInput, LcuTerm, MatrixEntry, MatrixInput, PauliInput, SbmEntry, SbmInput,
    StateInput, Target,
};
use crate::verify::measure;
use crate::{CliError, Context};

/// Largest total width simulated for `measured_error`.
const STATE_SIM_MAX: usize = 20;
const UNITARY_SIM_MAX: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Task {
    StateUcr,
    StateTree,
    StateTradeoff,
    SelectPauli,
    Sbm,
    SaimOh,
    SaimOf,
    BeLcu,
    BeSparse,
}

impl Task {
    pub fn name(self) -> &'static str {
        match self {
            Task::StateUcr => "state-ucr",
            Task::StateTree => "state-tree",
            Task::StateTradeoff => "state-tradeoff",
            Task::SelectPauli => "select-pauli",
            Task::Sbm => "sbm",
            Task::SaimOh => "saim-oh",
            Task::SaimOf => "saim-of",
            Task::BeLcu => "be-lcu",
            Task::BeSparse => "be-sparse",
        }
    }

    fn approximate(self) -> bool {
        matches!(
            self,
            Task::StateUcr | Task::StateTree | Task::StateTradeoff | Task::BeLcu | Task::BeSparse
        )
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub task: Task,
    pub n: Vec<usize>,
    pub eps: Vec<f64>,
    /// None runs each point at its smallest budget.
    pub anc: Option<Vec<usize>>,
    /// Target width L for select, word width for sbm, d for saim.
    pub width: usize,
    /// Nonzeros per row (saim, be-sparse) or in total (sbm).
    pub sparsity: Option<usize>,
    /// Term count for be-lcu.
    pub terms: usize,
    pub measure: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub task: &'static str,
    pub n: usize,
    pub eps: Option<f64>,
    pub n_anc: usize,
    pub count: Option<u64>,
    pub t_count: Option<u64>,
    pub depth: Option<u64>,
    pub ancilla_peak: Option<usize>,
    pub measured_error: Option<f64>,
    pub status: &'static str,
}

/// Parse `6:12`, `1,2,5` or a mix like `1,4:6`; ranges are inclusive.
pub fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, CliError> {
    let bad = || CliError::Schema(format!("bad list `{s}`"));
    let mut out = Vec::new();
    for part in s.split(',') {
        match part.split_once(':') {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                for k in a..=b {
                    out.push(k.to_string().parse().map_err(|_| bad())?);
                }
            }
            None => out.push(part.trim().parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

fn c2(rng: &mut ChaCha8Rng) -> [f64; 2] {
    [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]
}

fn pauli_word(rng: &mut ChaCha8Rng, len: usize) -> String {
    let sign = ["+", "-", "+i", "-i"][rng.random_range(0..4)];
    let body: String = (0..len).map(|_| ['I', 'X', 'Y', 'Z'][rng.random_range(0..4)]).collect();
    format!("{sign}{body}")
}

fn distinct(rng: &mut ChaCha8Rng, range: u64, k: usize) -> Vec<u64> {
    let mut v: Vec<u64> = (0..range).collect();
    v.shuffle(rng);
    v.truncate(k);
    v
}

enum Instance {
    State(StateInput),
    Pauli(PauliInput),
    Sbm(SbmInput),
    Matrix(MatrixInput),
    Lcu(LcuInput),
    Complex(ComplexMatrixInput),
}

fn instance(spec: &SweepSpec, n: usize, rng: &mut ChaCha8Rng) -> Instance {
    let dim = 1u64 << n;
    match spec.task {
        Task::StateUcr | Task::StateTree | Task::StateTradeoff => {
            let v: Vec<[f64; 2]> = (0..dim).map(|_| c2(rng)).collect();
            let norm = v.iter().map(|a| a[0] * a[0] + a[1] * a[1]).sum::<f64>().sqrt();
            Instance::State(StateInput {
                n,
                dense: Some(v.iter().map(|a| [a[0] / norm, a[1] / norm]).collect()),
                sparse: None,
            })
        }
        Task::SelectPauli => Instance::Pauli(PauliInput {
            m: n,
            l: spec.width,
            strings: (0..dim).map(|_| pauli_word(rng, spec.width)).collect(),
        }),
        Task::Sbm => {
            let s = spec.sparsity.unwrap_or((dim as usize / 4).max(1)).min(dim as usize);
            let top = 1u64 << spec.width;
            Instance::Sbm(SbmInput {
                n,
                word: spec.width,
                entries: distinct(rng, dim, s)
                    .into_iter()
                    .map(|index| SbmEntry { index, value: rng.random_range(1..top) })
                    .collect(),
            })
        }
        Task::SaimOh | Task::SaimOf => {
            let s = spec.sparsity.unwrap_or(1).min(dim as usize);
            let top = 1u64 << spec.width;
            // s random permutations keep every row and column within s
            let mut cells = Vec::new();
            for _ in 0..s {
                let p = distinct(rng, dim, dim as usize);
                cells.extend(p.into_iter().enumerate().map(|(r, c)| (r, c as usize)));
            }
            cells.sort_unstable();
            cells.dedup();
            let entries = cells
                .into_iter()
                .map(|(row, col)| MatrixEntry { row, col, val: rng.random_range(1..top) })
                .collect();
            Instance::Matrix(MatrixInput {
                n,
                d: spec.width,
                s,
                entries,
                oracle: Some(if spec.task == Task::SaimOh { "oh" } else { "of" }.into()),
            })
        }
        Task::BeLcu => Instance::Lcu(LcuInput {
            n,
            terms: (0..spec.terms)
                .map(|_| LcuTerm {
                    coeff: [rng.random_range(0.05..1.0), 0.0],
                    pauli: pauli_word(rng, n).trim_start_matches(['+', '-', 'i']).to_string(),
                })
                .collect(),
        }),
        Task::BeSparse => {
            let s = spec.sparsity.unwrap_or(2).min(dim as usize);
            let mut entries = Vec::new();
            for row in 0..dim {
                for col in distinct(rng, dim, s) {
                    let [re, im] = c2(rng);
                    entries.push(ComplexEntry { row, col, re, im });
                }
            }
            Instance::Complex(ComplexMatrixInput { n, entries })
        }
    }
}

fn min_ancillas(spec: &SweepSpec, inst: &Instance) -> Result<usize, CliError> {
    use block_encoding::{lcu_ancilla_range, sparse_be_ancilla_range};
    use select_oracle::split_ancillas;
    use sparse_access::{of_ancilla_range, sbm_ancilla_range};
    Ok(match inst {
        Instance::State(s) => commands::state_min_ancillas(
            s,
            match spec.task {
                Task::StateTree => StateMode::Tree,
                _ => StateMode::Ucr,
            },
        )?,
        Instance::Pauli(p) => split_ancillas(&p.parse()?, p.m, 0, false),
        Instance::Sbm(s) => sbm_ancilla_range(&s.parse()?).0,
        Instance::Matrix(m) => {
            let a = m.parse()?;
            if spec.task == Task::SaimOh {
                sbm_ancilla_range(&a.value_fn()).0
            } else {
                of_ancilla_range(&a).0
            }
        }
        Instance::Lcu(l) => lcu_ancilla_range(&l.parse()?).0,
        Instance::Complex(m) => sparse_be_ancilla_range(&m.parse()?)?.0,
    })
}

fn run_point(ctx: &Context, spec: &SweepSpec, inst: &Instance, eps: f64, anc: usize) -> Result<(Synthesized, Target), CliError> {
    Ok(match inst {
        Instance::State(s) => {
            let mode = match spec.task {
                Task::StateUcr => StateMode::Ucr,
                Task::StateTree => StateMode::Tree,
                _ => StateMode::Tradeoff,
            };
            (commands::synth_state(ctx, s, mode, eps, Some(anc))?, Target::State(s.clone()))
        }
        Instance::Pauli(p) => (commands::synth_select(ctx, p, Some(anc))?, Target::Pauli(p.clone())),
        Instance::Sbm(s) => (commands::synth_sbm_cmd(ctx, s, Some(anc))?, Target::Sbm(s.clone())),
        Instance::Matrix(m) => {
            let which = if spec.task == Task::SaimOh { SaimWhich::Oh } else { SaimWhich::Of };
            (commands::synth_saim(ctx, m, which, Some(anc))?, Target::Matrix(m.clone()))
        }
        Instance::Lcu(l) => (
            commands::synth_be_with(ctx, &BeInput::Lcu(l.clone()), eps, Some(anc), false)?,
            Target::Lcu(l.clone()),
        ),
        Instance::Complex(m) => (
            commands::synth_be_with(ctx, &BeInput::Sparse(m.clone()), eps, Some(anc), false)?,
            Target::Complex(m.clone()),
        ),
    })
}

fn simulable(task: Task, c: &circuit_core::Circuit) -> bool {
    match task {
        Task::StateUcr | Task::StateTree | Task::StateTradeoff => c.n_data() + c.ancilla_peak() <= STATE_SIM_MAX,
        _ => c.n_data() <= UNITARY_SIM_MAX,
    }
}

/// Rows in spec order: n, then eps, then n_anc. The instance depends only
/// on (seed, task, n).
pub fn sweep(ctx: &Context, spec: &SweepSpec) -> Result<Vec<Row>, CliError> {
    if spec.n.is_empty() || (spec.task.approximate() && spec.eps.is_empty()) {
        return Err(CliError::Schema("empty range".into()));
    }
    let eps_list: Vec<Option<f64>> = if spec.task.approximate() {
        spec.eps.iter().map(|&e| Some(e)).collect()
    } else {
        vec![None]
    };
    let mut rows = Vec::new();
    for &n in &spec.n {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        rng.set_stream(((spec.task as u64) << 32) | n as u64);
        let inst = instance(spec, n, &mut rng);
        let lo = min_ancillas(spec, &inst)?;
        let ancs = match (&spec.anc, spec.task) {
            (_, Task::StateUcr | Task::StateTree) | (None, _) => vec![lo],
            (Some(a), _) => a.clone(),
        };
        for &eps in &eps_list {
            for &anc in &ancs {
                let mut row = Row {
                    task: spec.task.name(),
                    n,
                    eps,
                    n_anc: anc,
                    count: None,
                    t_count: None,
                    depth: None,
                    ancilla_peak: None,
                    measured_error: None,
                    status: "ok",
                };
                match run_point(ctx, spec, &inst, eps.unwrap_or(0.5), anc) {
                    Ok((s, target)) => {
                        let r = ctx.report(&s.circuit)?;
                        row.count = Some(r.count);
                        row.t_count = Some(r.t_count);
                        row.depth = Some(r.depth);
                        row.ancilla_peak = Some(r.ancilla_peak);
                        if spec.measure && simulable(spec.task, &s.circuit) {
                            row.measured_error = Some(measure(&s.circuit, &target)?.1);
                        }
                    }
                    Err(CliError::Infeasible(_)) => row.status = "infeasible",
                    Err(e) => return Err(e),
                }
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

pub fn write_csv(rows: &[Row], out: impl Write) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Schema(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}
