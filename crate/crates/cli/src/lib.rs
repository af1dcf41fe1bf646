//! Batch front end: synthesis, verification, bounds and sweeps, with the
//! exit-code conventions of the `qam` binary.

pub mod commands;
pub mod input;
pub mod sweep;
pub mod verify;

use std::sync::OnceLock;

use block_encoding::BeError;
use circuit_core::{metrics, Circuit, CircuitError, CostModel, ResourceReport};
use rotation_synth::{SynthConfig, SynthError, Synthesizer};
use select_oracle::SelectError;
use sim_oracle::SimError;
use sparse_access::SaimError;
use state_prep::StateError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("schema: {0}")]
    Schema(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("simulator cap: {0}")]
    Cap(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) | CliError::Io(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Cap(_) => 4,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        CliError::Schema(e.to_string())
    }
}

impl From<SelectError> for CliError {
    fn from(e: SelectError) -> Self {
        match e {
            SelectError::Infeasible { .. } => CliError::Infeasible(e.to_string()),
            e => CliError::Schema(e.to_string()),
        }
    }
}

impl From<SaimError> for CliError {
    fn from(e: SaimError) -> Self {
        match e {
            SaimError::Infeasible { .. } => CliError::Infeasible(e.to_string()),
            SaimError::Select(e) => e.into(),
            e => CliError::Schema(e.to_string()),
        }
    }
}

impl From<StateError> for CliError {
    fn from(e: StateError) -> Self {
        match e {
            StateError::Infeasible { .. } => CliError::Infeasible(e.to_string()),
            StateError::Select(e) => e.into(),
            StateError::Saim(e) => e.into(),
            e => CliError::Schema(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Cap { .. } | SimError::Terms(_) => CliError::Cap(e.to_string()),
            e => CliError::Schema(e.to_string()),
        }
    }
}

impl From<BeError> for CliError {
    fn from(e: BeError) -> Self {
        match e {
            BeError::Infeasible { .. } => CliError::Infeasible(e.to_string()),
            BeError::State(e) => e.into(),
            BeError::Select(e) => e.into(),
            BeError::Sim(e) => e.into(),
            e => CliError::Schema(e.to_string()),
        }
    }
}

impl From<SynthError> for CliError {
    fn from(e: SynthError) -> Self {
        CliError::Infeasible(e.to_string())
    }
}

impl From<bounds::BoundsError> for CliError {
    fn from(e: bounds::BoundsError) -> Self {
        CliError::Schema(e.to_string())
    }
}

/// Settings shared by every subcommand.
pub struct Context {
    pub concrete: bool,
    pub c_rot: f64,
    pub seed: u64,
    pub rot_db: Option<std::path::PathBuf>,
    pub tcap: u32,
    synth: OnceLock<Synthesizer>,
}

impl Context {
    pub fn new(concrete: bool, c_rot: f64, seed: u64, rot_db: Option<std::path::PathBuf>, tcap: u32) -> Context {
        Context {
            concrete,
            c_rot,
            seed,
            rot_db,
            tcap,
            synth: OnceLock::new(),
        }
    }

    pub fn cost_model(&self) -> CostModel {
        if self.concrete {
            CostModel::Concrete
        } else {
            CostModel::Abstract { c_rot: self.c_rot }
        }
    }

    fn synthesizer(&self) -> Result<&Synthesizer, CliError> {
        if let Some(s) = self.synth.get() {
            return Ok(s);
        }
        let cfg = SynthConfig {
            tcap: self.tcap,
            ..SynthConfig::default()
        };
        let s = match &self.rot_db {
            Some(p) => Synthesizer::load_or_build(cfg, p)?,
            None => Synthesizer::new(cfg),
        };
        Ok(self.synth.get_or_init(|| s))
    }

    /// The circuit as it would run: rotations lowered in concrete mode,
    /// untouched otherwise.
    pub fn finalize(&self, c: Circuit) -> Result<Circuit, CliError> {
        if self.concrete && c.has_abstract() {
            Ok(self.synthesizer()?.lower(&c)?)
        } else {
            Ok(c)
        }
    }

    pub fn report(&self, c: &Circuit) -> Result<ResourceReport, CliError> {
        Ok(metrics(c, self.cost_model())?)
    }
}

impl Default for Context {
    fn default() -> Self {
        Context::new(false, 3.0, 0, None, SynthConfig::default().tcap)
    }
}
