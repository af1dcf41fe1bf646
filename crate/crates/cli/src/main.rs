use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cli::commands::{self, BeInput, BeMode, SaimWhich, StateMode, Synthesized};
use cli::input::{read_json, Target};
use cli::sweep::{self, parse_list, SweepSpec, Task};
use cli::{CliError, Context};
use circuit_core::parse_circuit;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Model {
    Concrete,
    Abstract,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BoundsTask {
    Saim,
    SparseBe,
    Stateprep,
}

#[derive(Parser)]
#[command(name = "qam", version, about = "Synthesis and resource estimates for state preparation, select oracles, sparse access and block-encodings")]
struct Cli {
    #[arg(long, value_enum, default_value = "abstract", global = true)]
    cost_model: Model,
    /// T-cost factor of an abstract rotation.
    #[arg(long, default_value_t = 3.0, global = true)]
    c_rot: f64,
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    /// Output directory; sweeps print to stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Rotation database file, built and saved when missing.
    #[arg(long, global = true)]
    rot_db: Option<PathBuf>,
    /// T-count cap of the rotation database.
    #[arg(long, default_value_t = 12, global = true)]
    tcap: u32,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    SynthState {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: StateMode,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        anc: Option<usize>,
    },
    SynthSelect {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        anc: Option<usize>,
    },
    SynthSbm {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        anc: Option<usize>,
    },
    SynthSaim {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        which: SaimWhich,
        #[arg(long)]
        anc: Option<usize>,
    },
    SynthBe {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        mode: BeMode,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        anc: Option<usize>,
    },
    /// Exit 0 when the circuit is within tolerance of the target, 1 when not.
    Verify {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    Bounds {
        #[arg(long, value_enum)]
        task: BoundsTask,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 8)]
        g: u64,
    },
    /// CSV of metrics over n (and eps, ancilla budgets). Lists look like `6:12` or `1,3,5`.
    Sweep {
        #[arg(long, value_enum)]
        task: Task,
        #[arg(long)]
        n: String,
        #[arg(long, default_value = "1e-3")]
        eps: String,
        #[arg(long)]
        anc: Option<String>,
        #[arg(long, default_value_t = 2)]
        width: usize,
        #[arg(long)]
        sparsity: Option<usize>,
        #[arg(long, default_value_t = 4)]
        terms: usize,
        /// Simulate small points and fill measured_error.
        #[arg(long)]
        measure: bool,
    },
}

fn emit(cli: &Cli, s: Synthesized) -> Result<ExitCode, CliError> {
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    commands::write_outputs(&dir, &s)?;
    println!("{}", serde_json::to_string_pretty(&s.report)?);
    Ok(ExitCode::SUCCESS)
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let ctx = Context::new(
        matches!(cli.cost_model, Model::Concrete),
        cli.c_rot,
        cli.seed,
        cli.rot_db.clone(),
        cli.tcap,
    );
    match &cli.cmd {
        Cmd::SynthState { input, mode, eps, anc } => {
            emit(cli, commands::synth_state(&ctx, &read_json(input)?, *mode, *eps, *anc)?)
        }
        Cmd::SynthSelect { input, anc } => emit(cli, commands::synth_select(&ctx, &read_json(input)?, *anc)?),
        Cmd::SynthSbm { input, anc } => emit(cli, commands::synth_sbm_cmd(&ctx, &read_json(input)?, *anc)?),
        Cmd::SynthSaim { input, which, anc } => {
            emit(cli, commands::synth_saim(&ctx, &read_json(input)?, *which, *anc)?)
        }
        Cmd::SynthBe { input, mode, eps, anc } => {
            let be = match mode {
                BeMode::Lcu => BeInput::Lcu(read_json(input)?),
                BeMode::Sparse => BeInput::Sparse(read_json(input)?),
            };
            emit(cli, commands::synth_be(&ctx, &be, *eps, *anc)?)
        }
        Cmd::Verify { circuit, target, tol } => {
            let c = parse_circuit(&std::fs::read_to_string(circuit)?)?;
            let t = Target::from_json(&std::fs::read_to_string(target)?)?;
            let r = cli::verify::verify(&c, &t, *tol)?;
            println!("{}", serde_json::to_string_pretty(&r)?);
            Ok(if r.pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Cmd::Bounds { task, n, eps, g } => {
            let b = match task {
                BoundsTask::Saim => bounds::saim_lower_bound(*n, *g)?,
                BoundsTask::SparseBe => bounds::sparse_be_lower_bound(*n, *g)?,
                BoundsTask::Stateprep => {
                    let eps = eps.ok_or_else(|| CliError::Schema("stateprep needs --eps".into()))?;
                    bounds::stateprep_lower_bound(*n, eps, *g)?
                }
            };
            println!("{}", serde_json::to_string_pretty(&b)?);
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sweep { task, n, eps, anc, width, sparsity, terms, measure } => {
            let spec = SweepSpec {
                task: *task,
                n: parse_list(n)?,
                eps: parse_list(eps)?,
                anc: anc.as_deref().map(parse_list).transpose()?,
                width: *width,
                sparsity: *sparsity,
                terms: *terms,
                measure: *measure,
            };
            let rows = sweep::sweep(&ctx, &spec)?;
            match &cli.out {
                Some(dir) => {
                    std::fs::create_dir_all(dir)?;
                    sweep::write_csv(&rows, std::fs::File::create(dir.join("sweep.csv"))?)?
                }
                None => sweep::write_csv(&rows, std::io::stdout().lock())?,
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qam: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
