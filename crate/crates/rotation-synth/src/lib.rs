//! Clifford+T approximation of single-qubit Rz/Ry rotations and their
//! singly controlled versions.
//!
//! Coarse targets come from an exhaustive table of normal forms; finer
//! ones from a grid search over Z[ω] followed by exact synthesis, or
//! optionally a Solovay–Kitaev recursion over the table.

mod db;
pub mod diophantine;
mod exact;
mod grid;
pub mod ring;
mod sk;
mod su2;

use std::collections::HashMap;
use std::f64::consts::PI;
use std::path::Path;
use std::sync::{Arc, Mutex};

use circuit_core::{Circuit, CircuitBuilder, Gate, Qubit};
use num_bigint::BigInt;

pub use db::{cliffords, Db, Entry};
pub use exact::peephole;

#[derive(Debug, thiserror::Error)]
pub enum SynthError {
    #[error("bad rotation request: {0}")]
    Request(String),
    #[error("eps {requested:e} is out of reach; best achievable here is {achievable:e}")]
    Infeasible { requested: f64, achievable: f64 },
    #[error("sequence table: {0}")]
    Db(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axis {
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationRequest {
    pub axis: Axis,
    pub angle: f64,
    pub eps: f64,
    pub phase_exact: bool,
}

impl RotationRequest {
    pub fn rz(angle: f64, eps: f64) -> Self {
        RotationRequest {
            axis: Axis::Z,
            angle,
            eps,
            phase_exact: false,
        }
    }
    pub fn ry(angle: f64, eps: f64) -> Self {
        RotationRequest {
            axis: Axis::Y,
            ..Self::rz(angle, eps)
        }
    }
    pub fn exact_phase(self) -> Self {
        RotationRequest {
            phase_exact: true,
            ..self
        }
    }
}

/// How targets finer than the table are handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FineStrategy {
    Grid,
    SolovayKitaev { depth: u32 },
    None,
}

#[derive(Clone, Copy, Debug)]
pub struct SynthConfig {
    pub tcap: u32,
    /// Largest denominator exponent tried by the grid search.
    pub max_k: u32,
    pub fine: FineStrategy,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig {
            tcap: 12,
            max_k: 64,
            fine: FineStrategy::Grid,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum G1 {
    H,
    S,
    Sdg,
    T,
    Tdg,
    X,
    Z,
}

impl G1 {
    pub fn code(self) -> char {
        match self {
            G1::H => 'H',
            G1::S => 'S',
            G1::Sdg => 's',
            G1::T => 'T',
            G1::Tdg => 't',
            G1::X => 'X',
            G1::Z => 'Z',
        }
    }
    pub fn from_code(c: char) -> Option<G1> {
        Some(match c {
            'H' => G1::H,
            'S' => G1::S,
            's' => G1::Sdg,
            'T' => G1::T,
            't' => G1::Tdg,
            'X' => G1::X,
            'Z' => G1::Z,
            _ => return None,
        })
    }
    pub fn inverse(self) -> G1 {
        match self {
            G1::S => G1::Sdg,
            G1::Sdg => G1::S,
            G1::T => G1::Tdg,
            G1::Tdg => G1::T,
            g => g,
        }
    }
    pub fn on(self, q: Qubit) -> Gate {
        match self {
            G1::H => Gate::H(q),
            G1::S => Gate::S(q),
            G1::Sdg => Gate::Sdg(q),
            G1::T => Gate::T(q),
            G1::Tdg => Gate::Tdg(q),
            G1::X => Gate::X(q),
            G1::Z => Gate::Z(q),
        }
    }
}

pub(crate) fn invert(w: &[G1]) -> Vec<G1> {
    w.iter().rev().map(|g| g.inverse()).collect()
}

/// Time-ordered gates with e^{i·phase}·U(gates) within `error` of the target.
#[derive(Clone, Debug, PartialEq)]
pub struct Seq {
    pub gates: Vec<G1>,
    pub phase: f64,
    pub error: f64,
}

impl Seq {
    fn empty() -> Seq {
        Seq {
            gates: Vec::new(),
            phase: 0.0,
            error: 0.0,
        }
    }
    pub fn inverse(&self) -> Seq {
        Seq {
            gates: invert(&self.gates),
            phase: -self.phase,
            error: self.error,
        }
    }
    pub fn t_count(&self) -> usize {
        self.gates.iter().filter(|g| matches!(g, G1::T | G1::Tdg)).count()
    }
    pub fn circuit(&self) -> Circuit {
        let mut b = CircuitBuilder::new();
        b.register("q", 1);
        for g in &self.gates {
            b.push(g.on(0));
        }
        b.add_phase(self.phase);
        b.finish().expect("single-qubit sequence")
    }
}

// canonical angles are reduced into [−2π, 2π)
fn canonical(angle: f64) -> f64 {
    (angle + 2.0 * PI).rem_euclid(4.0 * PI) - 2.0 * PI
}

const GRID_FLOOR: f64 = 1e-12;
const GRID_CANDIDATES: usize = 1024;
const GRID_KEEP: usize = 32;

type CacheKey = (Axis, u64, u64);

pub struct Synthesizer {
    cfg: SynthConfig,
    db: Arc<Db>,
    cache: Mutex<HashMap<CacheKey, Seq>>,
}

impl Synthesizer {
    pub fn new(cfg: SynthConfig) -> Synthesizer {
        Synthesizer::with_db(cfg, Arc::new(Db::build(cfg.tcap)))
    }

    pub fn with_db(cfg: SynthConfig, db: Arc<Db>) -> Synthesizer {
        Synthesizer {
            cfg,
            db,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// Table read from `path` if present (and built and saved otherwise).
    pub fn load_or_build(cfg: SynthConfig, path: &Path) -> Result<Synthesizer, SynthError> {
        Ok(Synthesizer::with_db(cfg, Arc::new(Db::load_or_build(path, cfg.tcap)?)))
    }

    pub fn config(&self) -> &SynthConfig {
        &self.cfg
    }

    pub fn db(&self) -> &Arc<Db> {
        &self.db
    }

    pub fn sequence(&self, req: &RotationRequest) -> Result<Seq, SynthError> {
        if !(req.eps > 0.0 && req.eps <= 1.0) {
            return Err(SynthError::Request(format!("eps {} outside (0, 1]", req.eps)));
        }
        if !req.angle.is_finite() {
            return Err(SynthError::Request("angle is not finite".into()));
        }
        let theta = canonical(req.angle);
        if theta == 0.0 {
            return Ok(Seq::empty());
        }
        if theta < 0.0 {
            return Ok(self.positive(req.axis, -theta, req.eps)?.inverse());
        }
        self.positive(req.axis, theta, req.eps)
    }

    fn positive(&self, axis: Axis, theta: f64, eps: f64) -> Result<Seq, SynthError> {
        let key = (axis, theta.to_bits(), eps.to_bits());
        if let Some(s) = self.cache.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let s = match axis {
            Axis::Z => self.rz(theta, eps)?,
            Axis::Y => self.ry(theta, eps)?,
        };
        self.cache.lock().unwrap().insert(key, s.clone());
        Ok(s)
    }

    fn from_word(gates: Vec<G1>, target: &su2::M) -> Seq {
        let (phase, error) = su2::phase_fit(&su2::word(&gates), target);
        Seq { gates, phase, error }
    }

    fn table(&self, target: &su2::M, eps: f64, z_axis: bool) -> Option<Seq> {
        let e = self.db.first_within(&su2::quat(target), eps, z_axis)?;
        let s = Self::from_word(e.gates(), target);
        (s.error <= eps).then_some(s)
    }

    fn ry(&self, theta: f64, eps: f64) -> Result<Seq, SynthError> {
        let target = su2::ry(theta);
        if let Some(s) = self.table(&target, eps, false) {
            return Ok(s);
        }
        let z = self.rz(theta, eps)?;
        let mut gates = vec![G1::Sdg, G1::H];
        gates.extend(&z.gates);
        gates.extend([G1::H, G1::S]);
        Ok(Self::from_word(peephole(&gates), &target))
    }

    fn infeasible(&self, target: &su2::M, eps: f64, floor: f64) -> SynthError {
        let (_, d) = self.db.nearest(&su2::quat(target));
        SynthError::Infeasible {
            requested: eps,
            achievable: if floor > 0.0 { d.min(floor) } else { d },
        }
    }

    fn rz(&self, theta: f64, eps: f64) -> Result<Seq, SynthError> {
        let target = su2::rz(theta);
        if let Some(s) = self.table(&target, eps, true) {
            return Ok(s);
        }
        match self.cfg.fine {
            FineStrategy::None => Err(self.infeasible(&target, eps, 0.0)),
            FineStrategy::SolovayKitaev { depth } => {
                let (w, _) = sk::approximate(&self.db, &target, depth);
                let s = Self::from_word(peephole(&w), &target);
                if s.error <= eps {
                    Ok(s)
                } else {
                    Err(SynthError::Infeasible {
                        requested: eps,
                        achievable: s.error,
                    })
                }
            }
            FineStrategy::Grid => {
                if eps < GRID_FLOOR {
                    return Err(self.infeasible(&target, eps, GRID_FLOOR));
                }
                self.grid(theta, eps, &target)
                    .ok_or_else(|| self.infeasible(&target, eps, GRID_FLOOR))
            }
        }
    }

    fn grid(&self, theta: f64, eps: f64, target: &su2::M) -> Option<Seq> {
        for k in 0..=self.cfg.max_k {
            let mut found: Vec<Seq> = Vec::new();
            for c in grid::candidates(theta, eps, k, GRID_CANDIDATES) {
                let xi = c.xi.convert::<BigInt>();
                let Some(t) = diophantine::solve_norm_equation(&xi) else {
                    continue;
                };
                let t = t.convert::<i128>();
                let Some(w) = exact::synthesize(&c.u, &t, k, &self.db) else {
                    continue;
                };
                let s = Self::from_word(w, target);
                if s.error <= eps {
                    found.push(s);
                    if found.len() >= GRID_KEEP {
                        break;
                    }
                }
            }
            if let Some(best) = found.into_iter().min_by(|a, b| {
                let ka = (a.gates.len(), a.t_count());
                let kb = (b.gates.len(), b.t_count());
                ka.cmp(&kb).then_with(|| a.gates.cmp(&b.gates))
            }) {
                return Some(best);
            }
        }
        None
    }

    pub fn synth_rz(&self, req: &RotationRequest) -> Result<Circuit, SynthError> {
        if req.axis != Axis::Z {
            return Err(SynthError::Request("synth_rz needs axis Z".into()));
        }
        Ok(self.sequence(req)?.circuit())
    }

    pub fn synth_ry(&self, req: &RotationRequest) -> Result<Circuit, SynthError> {
        if req.axis != Axis::Y {
            return Err(SynthError::Request("synth_ry needs axis Y".into()));
        }
        Ok(self.sequence(req)?.circuit())
    }

    /// Two-qubit controlled rotation; the target is the other qubit.
    pub fn synth_controlled_rotation(
        &self,
        req: &RotationRequest,
        control: Qubit,
    ) -> Result<Circuit, SynthError> {
        if control > 1 {
            return Err(SynthError::Request(format!("control q{control} on a two-qubit circuit")));
        }
        let mut b = CircuitBuilder::new();
        b.register("q", 2);
        push_controlled_rotation(&mut b, req.axis, req.angle, req.eps, control, 1 - control);
        let c = b.finish().expect("two-qubit circuit");
        self.lower(&c)
    }

    /// Expand every abstract rotation into Clifford+T gates.
    pub fn lower(&self, c: &Circuit) -> Result<Circuit, SynthError> {
        c.rewrite(|g, out| {
            let (req, q) = match *g {
                Gate::Rz { q, angle, eps } => (RotationRequest::rz(angle, eps), q),
                Gate::Ry { q, angle, eps } => (RotationRequest::ry(angle, eps), q),
                g => {
                    out.push(g);
                    return Ok(0.0);
                }
            };
            let s = self.sequence(&req.exact_phase())?;
            out.extend(s.gates.iter().map(|g| g.on(q)));
            Ok(s.phase)
        })
    }
}

/// Controlled R(angle) as R(angle/2), CNOT, R(−angle/2), CNOT, each half
/// at eps/2. Lowering keeps the halves exact inverses of each other, so the
/// construction stays correct when the halves carry a global phase.
pub fn push_controlled_rotation(
    b: &mut CircuitBuilder,
    axis: Axis,
    angle: f64,
    eps: f64,
    control: Qubit,
    target: Qubit,
) {
    let half = angle / 2.0;
    let rot = |b: &mut CircuitBuilder, a: f64| match axis {
        Axis::Z => b.rz(target, a, eps / 2.0),
        Axis::Y => b.ry(target, a, eps / 2.0),
    };
    rot(b, half);
    b.cnot(control, target);
    rot(b, -half);
    b.cnot(control, target);
}


