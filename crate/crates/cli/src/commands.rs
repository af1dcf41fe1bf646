//! One function per synthesis subcommand. Each returns the circuit as it
//! would run plus the JSON report.

use std::path::Path;

use block_encoding::{lcu_ancilla_range, sparse_be_ancilla_range, synth_pauli_lcu_be, synth_sparse_be};
use circuit_core::{write_circuit, Circuit};
use clap::ValueEnum;
use select_oracle::{split_ancillas, synth_select_pauli};
use serde_json::Value;
use sparse_access::{of_ancilla_range, sbm_ancilla_range, synth_of, synth_oh, synth_sbm};
use state_prep::{
    rows_ancillas, synth_sparse_state, synth_state_tradeoff, synth_state_tree, synth_state_ucr, tradeoff_ancillas,
    DenseAmplitudes, SparseAmplitudes,
};

use crate::input::{ComplexMatrixInput, LcuInput, MatrixInput, PauliInput, SbmInput, State, StateInput};
use crate::verify::measure;
use crate::{CliError, Context};

/// Largest data width for which a block-encoding is simulated for its report.
pub const MEASURE_MAX_DATA: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum StateMode {
    Ucr,
    Tree,
    Tradeoff,
    Sparse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SaimWhich {
    Oh,
    Of,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BeMode {
    Lcu,
    Sparse,
}

pub struct Synthesized {
    pub circuit: Circuit,
    pub report: Value,
}

fn plain(ctx: &Context, c: Circuit) -> Result<Synthesized, CliError> {
    let circuit = ctx.finalize(c)?;
    let report = serde_json::to_value(ctx.report(&circuit)?)?;
    Ok(Synthesized { circuit, report })
}

fn dense_of(s: State) -> Result<DenseAmplitudes, CliError> {
    match s {
        State::Dense(d) => Ok(d),
        State::Sparse(s) => Ok(DenseAmplitudes::new(s.to_dense())?),
    }
}

fn sparse_of(s: State) -> Result<SparseAmplitudes, CliError> {
    match s {
        State::Sparse(s) => Ok(s),
        State::Dense(d) => {
            let e = d
                .amps()
                .iter()
                .enumerate()
                .filter(|(_, a)| a.norm() > 0.0)
                .map(|(i, a)| (i as u64, *a))
                .collect();
            Ok(SparseAmplitudes::new(d.n(), e)?)
        }
    }
}

/// The smallest budget each state mode accepts.
pub fn state_min_ancillas(input: &StateInput, mode: StateMode) -> Result<usize, CliError> {
    Ok(match mode {
        StateMode::Ucr | StateMode::Tradeoff => tradeoff_ancillas(input.n, 0),
        StateMode::Tree => tradeoff_ancillas(input.n, input.n),
        StateMode::Sparse => {
            let s = sparse_of(input.parse()?)?;
            if s.entries().len() == 1 {
                0
            } else {
                rows_ancillas(s.n(), &[s.entries().to_vec()])?.0
            }
        }
    })
}

/// `anc` only matters for the tradeoff and sparse modes; None means the
/// smallest budget that works.
pub fn synth_state(
    ctx: &Context,
    input: &StateInput,
    mode: StateMode,
    eps: f64,
    anc: Option<usize>,
) -> Result<Synthesized, CliError> {
    let s = input.parse()?;
    let anc = match anc {
        Some(k) => k,
        None => state_min_ancillas(input, mode)?,
    };
    let c = match mode {
        StateMode::Ucr => synth_state_ucr(&dense_of(s)?, eps)?,
        StateMode::Tree => synth_state_tree(&dense_of(s)?, eps, false)?,
        StateMode::Tradeoff => synth_state_tradeoff(&dense_of(s)?, eps, anc)?,
        StateMode::Sparse => synth_sparse_state(&sparse_of(s)?, eps, anc)?,
    };
    plain(ctx, c)
}

pub fn synth_select(ctx: &Context, input: &PauliInput, anc: Option<usize>) -> Result<Synthesized, CliError> {
    let p = input.parse()?;
    let anc = anc.unwrap_or_else(|| split_ancillas(&p, input.m, 0, false));
    plain(ctx, synth_select_pauli(&p, input.m, anc)?)
}

pub fn synth_sbm_cmd(ctx: &Context, input: &SbmInput, anc: Option<usize>) -> Result<Synthesized, CliError> {
    let f = input.parse()?;
    let anc = anc.unwrap_or_else(|| sbm_ancilla_range(&f).0);
    plain(ctx, synth_sbm(&f, anc)?)
}

pub fn synth_saim(ctx: &Context, input: &MatrixInput, which: SaimWhich, anc: Option<usize>) -> Result<Synthesized, CliError> {
    let a = input.parse()?;
    let c = match which {
        SaimWhich::Oh => synth_oh(&a, anc.unwrap_or_else(|| sbm_ancilla_range(&a.value_fn()).0))?,
        SaimWhich::Of => synth_of(&a, anc.unwrap_or_else(|| of_ancilla_range(&a).0))?,
    };
    plain(ctx, c)
}

pub enum BeInput {
    Lcu(LcuInput),
    Sparse(ComplexMatrixInput),
}

pub fn synth_be(ctx: &Context, input: &BeInput, eps: f64, anc: Option<usize>) -> Result<Synthesized, CliError> {
    synth_be_with(ctx, input, eps, anc, true)
}

/// With `measure`, small encodings are simulated to fill `eps_measured`.
pub fn synth_be_with(
    ctx: &Context,
    input: &BeInput,
    eps: f64,
    anc: Option<usize>,
    measure_block: bool,
) -> Result<Synthesized, CliError> {
    let (c, mut r, target) = match input {
        BeInput::Lcu(l) => {
            let spec = l.parse()?;
            let anc = anc.unwrap_or_else(|| lcu_ancilla_range(&spec).0);
            let (c, r) = synth_pauli_lcu_be(&spec, eps, anc)?;
            (c, r, crate::input::Target::Lcu(l.clone()))
        }
        BeInput::Sparse(m) => {
            let a = m.parse()?;
            let anc = match anc {
                Some(k) => k,
                None => sparse_be_ancilla_range(&a)?.0,
            };
            let (c, r) = synth_sparse_be(&a, eps, anc)?;
            (c, r, crate::input::Target::Complex(m.clone()))
        }
    };
    let circuit = ctx.finalize(c)?;
    r.resource = ctx.report(&circuit)?;
    if measure_block && circuit.n_data() <= MEASURE_MAX_DATA {
        r.eps_measured = Some(measure(&circuit, &target)?.1);
    }
    let report = serde_json::to_value(r)?;
    Ok(Synthesized { circuit, report })
}

/// `circuit.txt` and `report.json` under `dir`.
pub fn write_outputs(dir: &Path, s: &Synthesized) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("circuit.txt"), write_circuit(&s.circuit))?;
    std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(&s.report)? + "\n")?;
    Ok(())
}
