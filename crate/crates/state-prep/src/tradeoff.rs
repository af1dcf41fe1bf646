use circuit_core::{metrics, Circuit, CircuitBuilder, CostModel, Qubit};
use num_complex::Complex64 as C64;
use select_oracle::emit_recursive;

use crate::tree::{core_ancillas, emit_tree, emit_tree_core, tree_ancillas};
use crate::ucr::{emit_ucr, ucr_ancillas};
use crate::{check_eps, DenseAmplitudes, StateError, TreeTable};

/// Ancillas when the low `n_b` qubits are built by trees.
pub fn tradeoff_ancillas(n: usize, n_b: usize) -> usize {
    if n_b == 0 {
        ucr_ancillas(n, false)
    } else if n_b == n {
        tree_ancillas(n, false)
    } else {
        let n_a = n - n_b;
        ucr_ancillas(n_a, false).max(n_a + core_ancillas(n_b))
    }
}

/// A = the high n-n_b qubits get the block norms (with each block's tree
/// root phase folded in) by UCR; then each block's tree runs on B under the
/// matching A value.
fn emit_split(b: &mut CircuitBuilder, data: &[Qubit], amps: &[C64], eps: f64, n_b: usize) {
    let n = data.len();
    if n_b == 0 {
        emit_ucr(b, None, data, amps, eps);
        return;
    }
    if n_b == n {
        emit_tree(b, None, data, amps, eps);
        return;
    }
    let (lo, hi) = data.split_at(n_b);
    let blocks: Vec<Vec<C64>> = amps
        .chunks(1 << n_b)
        .map(|c| {
            let norm = c.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if norm == 0.0 {
                Vec::new()
            } else {
                c.iter().map(|a| a / norm).collect()
            }
        })
        .collect();
    let top: Vec<C64> = amps
        .chunks(1 << n_b)
        .zip(&blocks)
        .map(|(c, blk)| {
            let norm = c.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            if blk.is_empty() {
                C64::new(0.0, 0.0)
            } else {
                C64::from_polar(norm, TreeTable::new(blk).root_phase())
            }
        })
        .collect();
    emit_ucr(b, None, hi, &top, eps / 2.0);
    let msb: Vec<Qubit> = hi.iter().rev().copied().collect();
    emit_recursive(
        b,
        None,
        &msb,
        &|k| !blocks[k].is_empty(),
        &mut |b, k, c| {
            emit_tree_core(b, c.expect("ladder leaf control"), lo, &blocks[k], eps / 2.0);
        },
    );
    b.budget("tradeoff.trees", eps / 2.0);
}

fn build(a: &DenseAmplitudes, eps: f64, n_b: usize) -> Result<Circuit, StateError> {
    let mut b = CircuitBuilder::new();
    let q = b.register("q", a.n());
    emit_split(&mut b, &q, a.amps(), eps, n_b);
    Ok(b.finish()?)
}

/// The tree width with the smallest cost-model depth among those that fit
/// `n_anc`, with that circuit. Ties go to fewer gates, then to the wider
/// tree.
pub fn tradeoff_split(a: &DenseAmplitudes, eps: f64, n_anc: usize) -> Result<(usize, Circuit), StateError> {
    check_eps(eps)?;
    let n = a.n();
    let mut best: Option<((u64, u64), usize, Circuit)> = None;
    for n_b in 0..=n {
        if tradeoff_ancillas(n, n_b) > n_anc {
            continue;
        }
        let c = build(a, eps, n_b)?;
        let r = metrics(&c, CostModel::default())?;
        let key = (r.depth, r.count);
        if best.as_ref().is_none_or(|(k, _, _)| key <= *k) {
            best = Some((key, n_b, c));
        }
    }
    best.map(|(_, n_b, c)| (n_b, c)).ok_or(StateError::Infeasible {
        needed: tradeoff_ancillas(n, 0),
        available: n_anc,
    })
}

/// Data register `q` (n qubits); at most `n_anc` ancillas.
pub fn synth_state_tradeoff(a: &DenseAmplitudes, eps: f64, n_anc: usize) -> Result<Circuit, StateError> {
    tradeoff_split(a, eps, n_anc).map(|(_, c)| c)
}
