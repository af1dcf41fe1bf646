use serde::{Deserialize, Serialize};

use crate::circuit::BudgetEntry;
use crate::{Circuit, CircuitError, Gate};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum CostModel {
    Concrete,
    Abstract { c_rot: f64 },
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel::Abstract { c_rot: 3.0 }
    }
}

/// Whether named X/Z gates count as one gate or as their {H,S} expansion
/// (X = H·S·S·H, Z = S·S).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Expansion {
    Pre,
    #[default]
    Post,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResourceReport {
    pub count: u64,
    pub t_count: u64,
    pub depth: u64,
    pub t_depth: u64,
    pub ancilla_peak: usize,
    pub budget_ledger: Vec<BudgetEntry>,
}

impl ResourceReport {
    /// The flat `{count, t_count, depth, t_depth, ancilla_peak}` object.
    pub fn metrics_json(&self) -> serde_json::Value {
        serde_json::json!({
            "count": self.count,
            "t_count": self.t_count,
            "depth": self.depth,
            "t_depth": self.t_depth,
            "ancilla_peak": self.ancilla_peak,
        })
    }
}

/// Cost ⌈c_rot·log2(1/eps)⌉ of one abstract rotation, at least 1.
pub fn rotation_weight(c_rot: f64, eps: f64) -> u64 {
    let w = (c_rot * (1.0 / eps).log2() - 1e-9).ceil();
    if w < 1.0 {
        1
    } else {
        w as u64
    }
}

pub fn metrics(c: &Circuit, cost: CostModel) -> Result<ResourceReport, CircuitError> {
    metrics_with(c, cost, Expansion::Post)
}

pub fn metrics_with(
    c: &Circuit,
    cost: CostModel,
    expansion: Expansion,
) -> Result<ResourceReport, CircuitError> {
    let mut ready = vec![0u64; c.n_qubits()];
    let mut t_layers: Vec<bool> = Vec::new();
    let (mut count, mut t_count, mut depth) = (0u64, 0u64, 0u64);
    for g in c.gates() {
        let (dur, t_cost) = match (*g, cost) {
            (Gate::Rz { eps, .. } | Gate::Ry { eps, .. }, CostModel::Abstract { c_rot }) => {
                let w = rotation_weight(c_rot, eps);
                (w, w)
            }
            (Gate::Rz { .. } | Gate::Ry { .. }, CostModel::Concrete) => {
                return Err(CircuitError::Mode)
            }
            (Gate::T(_) | Gate::Tdg(_), _) => (1, 1),
            (Gate::X(_), _) if expansion == Expansion::Post => (4, 0),
            (Gate::Z(_), _) if expansion == Expansion::Post => (2, 0),
            _ => (1, 0),
        };
        let (t, ctl) = g.qubits();
        let start = ctl.map_or(ready[t], |q| ready[q].max(ready[t]));
        let end = start + dur;
        ready[t] = end;
        if let Some(q) = ctl {
            ready[q] = end;
        }
        depth = depth.max(end);
        count += dur;
        if t_cost > 0 {
            t_count += t_cost;
            if t_layers.len() < end as usize {
                t_layers.resize(end as usize, false);
            }
            t_layers[start as usize..end as usize].fill(true);
        }
    }
    Ok(ResourceReport {
        count,
        t_count,
        depth,
        t_depth: t_layers.iter().filter(|&&b| b).count() as u64,
        ancilla_peak: c.ancilla_peak(),
        budget_ledger: c.budget().to_vec(),
    })
}
