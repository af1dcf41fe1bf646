use circuit_core::{Circuit, CircuitBuilder, Qubit};

use crate::{SaimError, SparseBooleanFn};

/// How the entries and word bits are cut into base-case pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Nothing to write.
    Empty,
    /// All entries at once, `width` word bits per piece.
    WordSlices { width: usize },
    /// One word bit per piece, `width` entries per piece.
    EntryChunks { width: usize },
}

/// Ancillas of one base-case piece: index copies for all but the first
/// entry, an AND tree per entry, and flag copies per extra word bit.
fn piece_cost(n: usize, values: impl Iterator<Item = u64>) -> usize {
    if n == 0 {
        return 0;
    }
    let mut e = 0;
    let mut extra = 0;
    for v in values.filter(|&v| v != 0) {
        e += 1;
        extra += v.count_ones() as usize - 1;
    }
    if e == 0 {
        return 0;
    }
    (e - 1) * n + e * (n - 1) + extra
}

fn slice_masks(word: usize, d: usize) -> Vec<u64> {
    (0..word)
        .step_by(d)
        .map(|lo| {
            let hi = (lo + d).min(word);
            ((1u64 << (hi - lo)) - 1) << lo
        })
        .collect()
}

fn cost_slices(f: &SparseBooleanFn, d: usize) -> usize {
    slice_masks(f.word(), d)
        .into_iter()
        .map(|m| piece_cost(f.n(), f.entries().iter().map(|e| e.1 & m)))
        .max()
        .unwrap_or(0)
}

fn bit_counts(f: &SparseBooleanFn) -> Vec<usize> {
    (0..f.word())
        .map(|j| f.entries().iter().filter(|e| e.1 >> j & 1 == 1).count())
        .collect()
}

fn cost_chunks(f: &SparseBooleanFn, w: usize) -> usize {
    let most = bit_counts(f).into_iter().max().unwrap_or(0);
    piece_cost(f.n(), std::iter::repeat_n(1, w.min(most)))
}

/// Smallest and largest ancilla budgets that change the circuit.
pub fn sbm_ancilla_range(f: &SparseBooleanFn) -> (usize, usize) {
    if f.s() == 0 {
        return (0, 0);
    }
    (cost_chunks(f, 1), cost_slices(f, f.word()))
}

/// Widest word slices that fit `n_anc`, else the widest entry chunks.
pub fn sbm_plan(f: &SparseBooleanFn, n_anc: usize) -> Result<Regime, SaimError> {
    if f.s() == 0 {
        return Ok(Regime::Empty);
    }
    if let Some(d) = (1..=f.word()).rev().find(|&d| cost_slices(f, d) <= n_anc) {
        return Ok(Regime::WordSlices { width: d });
    }
    let most = bit_counts(f).into_iter().max().unwrap_or(0);
    match (1..most).rev().find(|&w| cost_chunks(f, w) <= n_anc) {
        Some(w) => Ok(Regime::EntryChunks { width: w }),
        None => Err(SaimError::Infeasible {
            needed: cost_chunks(f, 1),
            available: n_anc,
        }),
    }
}

/// XOR B(q) into `word` for the index held in `index` (least significant
/// first), using at most `n_anc` ancillas.
pub fn emit_sbm(
    b: &mut CircuitBuilder,
    index: &[Qubit],
    word: &[Qubit],
    f: &SparseBooleanFn,
    n_anc: usize,
) -> Result<Regime, SaimError> {
    if index.len() != f.n() || word.len() != f.word() {
        return Err(SaimError::Shape(format!(
            "registers {}+{} for a {}x{} function",
            index.len(),
            word.len(),
            f.n(),
            f.word()
        )));
    }
    let plan = sbm_plan(f, n_anc)?;
    match plan {
        Regime::Empty => {}
        Regime::WordSlices { width } => {
            for m in slice_masks(f.word(), width) {
                piece(b, index, word, f.entries(), m);
            }
        }
        Regime::EntryChunks { width } => {
            for j in 0..f.word() {
                let hit: Vec<(u64, u64)> = f.entries().iter().copied().filter(|e| e.1 >> j & 1 == 1).collect();
                for c in hit.chunks(width) {
                    piece(b, index, word, c, 1 << j);
                }
            }
        }
    }
    Ok(plan)
}

fn piece(b: &mut CircuitBuilder, index: &[Qubit], word: &[Qubit], entries: &[(u64, u64)], mask: u64) {
    let act: Vec<(u64, u64)> = entries
        .iter()
        .map(|&(q, v)| (q, v & mask))
        .filter(|e| e.1 != 0)
        .collect();
    if act.is_empty() {
        return;
    }
    let n = index.len();
    let bits = |v: u64| (0..word.len()).filter(move |&j| v >> j & 1 == 1);
    if n == 0 {
        bits(act[0].1).for_each(|j| b.x(word[j]));
        return;
    }

    let mut owned = Vec::new();
    let mut lits = vec![index.to_vec()];
    for _ in 1..act.len() {
        let c = b.alloc_n(n);
        owned.extend_from_slice(&c);
        lits.push(c);
    }
    let trees: Vec<Vec<Qubit>> = act
        .iter()
        .map(|_| {
            let t = b.alloc_n(n - 1);
            owned.extend_from_slice(&t);
            t
        })
        .collect();
    let spares: Vec<Vec<Qubit>> = act
        .iter()
        .map(|e| {
            let c = b.alloc_n(e.1.count_ones() as usize - 1);
            owned.extend_from_slice(&c);
            c
        })
        .collect();

    let from = b.mark();
    for i in 0..n {
        let targets: Vec<Qubit> = lits[1..].iter().map(|l| l[i]).collect();
        b.fanout(index[i], &targets);
    }
    let mut flags = Vec::with_capacity(act.len());
    for (k, &(q, _)) in act.iter().enumerate() {
        for (i, &l) in lits[k].iter().enumerate() {
            if q >> i & 1 == 0 {
                b.x(l);
            }
        }
        let mut pool = trees[k].clone();
        let mut layer = lits[k].clone();
        while layer.len() > 1 {
            let mut next = Vec::with_capacity(layer.len().div_ceil(2));
            for pair in layer.chunks(2) {
                if let [a, c] = *pair {
                    let t = pool.pop().expect("AND tree size");
                    b.toffoli(a, c, t);
                    next.push(t);
                } else {
                    next.push(pair[0]);
                }
            }
            layer = next;
        }
        b.fanout(layer[0], &spares[k]);
        let mut f = vec![layer[0]];
        f.extend_from_slice(&spares[k]);
        flags.push(f);
    }
    let compute = b.since(from);

    let mut used = vec![0usize; act.len()];
    for j in bits(mask) {
        let srcs: Vec<Qubit> = act
            .iter()
            .enumerate()
            .filter(|(_, e)| e.1 >> j & 1 == 1)
            .map(|(k, _)| {
                used[k] += 1;
                flags[k][used[k] - 1]
            })
            .collect();
        if srcs.is_empty() {
            continue;
        }
        let red = b.xor_reduce(&srcs);
        b.cnot(srcs[0], word[j]);
        b.undo(&red);
    }

    b.undo(&compute);
    b.release_all(&owned);
}

/// Data qubits: `idx` (n, least significant first) then `wrd`.
pub fn synth_sbm(f: &SparseBooleanFn, n_anc: usize) -> Result<Circuit, SaimError> {
    let mut b = CircuitBuilder::new();
    let idx = b.register("idx", f.n());
    let wrd = b.register("wrd", f.word());
    emit_sbm(&mut b, &idx, &wrd, f, n_anc)?;
    Ok(b.finish()?)
}
