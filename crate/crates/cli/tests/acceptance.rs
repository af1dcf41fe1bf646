//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::collections::BTreeSet;
use std::f64::consts::FRAC_1_SQRT_2;
use std::time::{Duration, Instant};

use block_encoding::{
    lcu_ancilla_range, sparse_be_ancilla_range, synth_pauli_lcu_be, synth_sparse_be, BlockEncodingReport,
    ComplexSparseMatrix, LcuSpec,
};
use bounds::{capacity_log_gates, saim_lower_bound, sparse_be_lower_bound, stateprep_lower_bound};
use circuit_core::{metrics, write_circuit, Circuit, CostModel, Gate};
use cli::sweep::{sweep, write_csv, SweepSpec, Task};
use cli::Context;
use num_complex::Complex64 as C64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotation_synth::{SynthConfig, Synthesizer};
use select_oracle::{
    pauli_ancilla_range, synth_select_pauli, synth_select_recursive, synth_select_router, ControlledImpl, PauliString,
};
use sim_oracle::{data_unitary, extract_block, run_basis, spectral_distance, state_distance, DenseMatrix};
use sparse_access::{
    of_ancilla_range, sbm_ancilla_range, sbm_plan, synth_of, synth_oh, synth_sbm, Regime, SparseBooleanFn,
    SparseMatrixCoo,
};
use state_prep::{
    synth_sparse_state, synth_state_tradeoff, synth_state_tree, synth_state_ucr, tradeoff_ancillas, DenseAmplitudes,
    SparseAmplitudes,
};

const EXACT: f64 = 1e-10;
/// Concrete Clifford+T: H, S, S†, T, T†, X, Z, CNOT.
const GATE_SET: u64 = 8;

type Outcome = Result<String, String>;

macro_rules! t {
    ($e:expr) => {
        $e.map_err(|e| format!("{}: {e}", stringify!($e)))?
    };
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Class {
    Saim,
    BlockEncoding,
    DenseState,
}

/// What criteria 6 and 7 need from the earlier ones.
#[derive(Default)]
struct Record {
    counts: Vec<(Class, usize, f64, u64)>,
    worst_leak: (f64, String),
    sbm_involution: Option<String>,
    of_permutation: Option<String>,
    select_diagonal: Option<String>,
}

impl Record {
    fn leak(&mut self, l: f64, what: &str) {
        if l > self.worst_leak.0 {
            self.worst_leak = (l, what.to_string());
        }
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn synth() -> &'static Synthesizer {
    static S: std::sync::OnceLock<Synthesizer> = std::sync::OnceLock::new();
    S.get_or_init(|| Synthesizer::new(SynthConfig::default()))
}

fn concrete_count(circ: &Circuit) -> u64 {
    metrics(circ, CostModel::Concrete).map(|r| r.count).unwrap_or(0)
}

fn max_entry_error(a: &DenseMatrix, b: &DenseMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

// ---------- independent oracles ----------

fn pauli_dense(s: &PauliString) -> DenseMatrix {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let mut m = DenseMatrix::identity(1, 1);
    for letter in &s.letters {
        let f = match letter {
            select_oracle::Letter::I => [l, o, o, l],
            select_oracle::Letter::X => [o, l, l, o],
            select_oracle::Letter::Y => [o, -i, i, o],
            select_oracle::Letter::Z => [l, o, o, -l],
        };
        m = DenseMatrix::from_row_slice(2, 2, &f).kronecker(&m);
    }
    m * i.powu(s.phase as u32)
}

fn select_dense(strings: &[PauliString], m: usize, width: usize) -> DenseMatrix {
    let dim = 1 << (m + width);
    let mut u = DenseMatrix::zeros(dim, dim);
    for (x, s) in strings.iter().enumerate() {
        let p = pauli_dense(s);
        for r in 0..1 << width {
            for col in 0..1 << width {
                u[(x + (r << m), x + (col << m))] = p[(r, col)];
            }
        }
    }
    u
}

fn permutation_dense(q: usize, f: impl Fn(usize) -> usize) -> DenseMatrix {
    let dim = 1 << q;
    let mut u = DenseMatrix::zeros(dim, dim);
    for k in 0..dim {
        u[(f(k), k)] = c(1.0, 0.0);
    }
    u
}

fn sbm_dense(n: usize, word: usize, table: &[(u64, u64)]) -> DenseMatrix {
    let value = |q: usize| table.iter().find(|e| e.0 == q as u64).map_or(0, |e| e.1 as usize);
    permutation_dense(n + word, |k| k ^ (value(k & ((1 << n) - 1)) << n))
}

fn oh_dense(n: usize, d: usize, entries: &[(usize, usize, u64)]) -> DenseMatrix {
    let dim = 1 << n;
    permutation_dense(2 * n + d, |k| {
        let (x, y, z) = (k % dim, (k >> n) % dim, k >> (2 * n));
        let v = entries.iter().find(|e| e.0 == x && e.1 == y).map_or(0, |e| e.2 as usize);
        x + (y << n) + ((z ^ v) << (2 * n))
    })
}

/// k-th column of row x: the nonzero columns ascending, then the rest.
fn of_dense(n: usize, entries: &[(usize, usize, u64)]) -> DenseMatrix {
    let dim = 1 << n;
    permutation_dense(2 * n, |i| {
        let (x, k) = (i % dim, i >> n);
        let mut cols: Vec<usize> = entries.iter().filter(|e| e.0 == x).map(|e| e.1).collect();
        cols.sort_unstable();
        let rest: Vec<usize> = (0..dim).filter(|y| !cols.contains(y)).collect();
        cols.extend(rest);
        x + (cols[k] << n)
    })
}

// ---------- random instances ----------

fn random_pauli(rng: &mut ChaCha8Rng, len: usize) -> PauliString {
    let l = ['I', 'X', 'Y', 'Z'];
    let sign = ["+", "-", "+i", "-i"][rng.random_range(0..4)];
    let body: String = (0..len).map(|_| l[rng.random_range(0..4)]).collect();
    format!("{sign}{body}").parse().unwrap()
}

fn random_amps(rng: &mut ChaCha8Rng, n: usize) -> DenseAmplitudes {
    let v = (0..1 << n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    DenseAmplitudes::normalize(v).unwrap()
}

/// At most s nonzeros in every row and column.
fn random_cells(rng: &mut ChaCha8Rng, n: usize, s: usize) -> Vec<(usize, usize)> {
    let dim = 1 << n;
    let mut cells = Vec::new();
    for _ in 0..s {
        let mut p: Vec<usize> = (0..dim).collect();
        p.shuffle(rng);
        cells.extend(p.into_iter().enumerate());
    }
    cells.sort_unstable();
    cells.dedup();
    cells
}

fn pick(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> usize {
    rng.random_range(lo..=hi.max(lo))
}

// ---------- criteria ----------

fn check_unitary(rec: &mut Record, circ: &Circuit, want: &DenseMatrix, what: &str) -> Result<DenseMatrix, String> {
    let (u, leak) = t!(data_unitary(circ));
    rec.leak(leak, what);
    let err = max_entry_error(&u, want);
    ensure(err <= EXACT && leak <= EXACT, || format!("{what}: entry error {err:.2e}, leakage {leak:.2e}"))?;
    Ok(u)
}

fn criterion1(rec: &mut Record) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut n_select = 0;
    for i in 0..50 {
        let (m, width) = (1 + i % 3, 1 + (i / 3) % 3);
        let strings: Vec<PauliString> = (0..1 << m).map(|_| random_pauli(&mut rng, width)).collect();
        let impls: Vec<&dyn ControlledImpl> = strings.iter().map(|s| s as &dyn ControlledImpl).collect();
        let want = select_dense(&strings, m, width);
        let (lo, hi) = pauli_ancilla_range(&strings, m);
        let k = pick(&mut rng, lo, hi);
        for (name, circ) in [
            ("recursive", t!(synth_select_recursive(&impls, m))),
            ("router", t!(synth_select_router(&impls, m, None))),
            ("pauli", t!(synth_select_pauli(&strings, m, k))),
        ] {
            let u = check_unitary(rec, &circ, &want, &format!("select {name} #{i}"))?;
            let mask = (1 << m) - 1;
            let off = u
                .iter()
                .enumerate()
                .filter(|(idx, _)| (idx % u.nrows()) & mask != (idx / u.nrows()) & mask)
                .map(|(_, z)| z.norm())
                .fold(0.0, f64::max);
            if off > EXACT && rec.select_diagonal.is_none() {
                rec.select_diagonal = Some(format!("select {name} #{i}: off-block entry {off:.2e}"));
            }
            n_select += 1;
        }
    }

    let mut regimes = BTreeSet::new();
    let mut n_sbm = 0;
    for i in 0..50 {
        let (n, word) = (1 + i % 4, 1 + (i / 4) % 2);
        let s = 1 + (i / 8) % 4.min(1 << n);
        let mut idx: Vec<u64> = (0..1u64 << n).collect();
        idx.shuffle(&mut rng);
        let table: Vec<(u64, u64)> = idx[..s.min(1 << n)]
            .iter()
            .map(|&q| (q, rng.random_range(1..1u64 << word)))
            .collect();
        let f = t!(SparseBooleanFn::new(n, word, table.clone()));
        let want = sbm_dense(n, word, &table);
        let (lo, hi) = sbm_ancilla_range(&f);
        let mut seen = Vec::new();
        for k in lo..=hi {
            let r = t!(sbm_plan(&f, k));
            if !seen.contains(&r) {
                seen.push(r);
                let circ = t!(synth_sbm(&f, k));
                let u = check_unitary(rec, &circ, &want, &format!("sbm #{i} at {k}"))?;
                let sq = &u * &u;
                let err = max_entry_error(&sq, &DenseMatrix::identity(u.nrows(), u.nrows()));
                if err > EXACT && rec.sbm_involution.is_none() {
                    rec.sbm_involution = Some(format!("sbm #{i}: |U²-I| = {err:.2e}"));
                }
                regimes.insert(format!("{:?}", std::mem::discriminant(&r)));
                n_sbm += 1;
            }
        }
        ensure(
            seen.iter().any(|r| matches!(r, Regime::WordSlices { .. }))
                || seen.iter().any(|r| matches!(r, Regime::EntryChunks { .. })),
            || format!("sbm #{i}: no regime exercised"),
        )?;
    }
    ensure(regimes.len() >= 2, || format!("only {} sbm regime(s) exercised", regimes.len()))?;

    for i in 0..50 {
        let n = 1 + i % 2;
        let s = 1 + (i / 2) % 2;
        let d = 1 + (i / 4) % 2;
        let entries: Vec<(usize, usize, u64)> = random_cells(&mut rng, n, s.min(1 << n))
            .into_iter()
            .map(|(x, y)| (x, y, rng.random_range(1..1u64 << d)))
            .collect();
        let a = t!(SparseMatrixCoo::new(n, d, s, entries.clone()));
        let (lo, hi) = sbm_ancilla_range(&a.value_fn());
        let oh = t!(synth_oh(&a, pick(&mut rng, lo, hi)));
        check_unitary(rec, &oh, &oh_dense(n, d, &entries), &format!("O_H #{i}"))?;
        rec.counts.push((Class::Saim, n, 0.0, concrete_count(&oh)));

        let (lo, hi) = of_ancilla_range(&a);
        let of = t!(synth_of(&a, pick(&mut rng, lo, hi)));
        let u = check_unitary(rec, &of, &of_dense(n, &entries), &format!("O_F #{i}"))?;
        let is_perm = (0..u.ncols()).all(|col| {
            let ones = u.column(col).iter().filter(|z| (*z - c(1.0, 0.0)).norm() <= EXACT).count();
            let zeros = u.column(col).iter().filter(|z| z.norm() <= EXACT).count();
            ones == 1 && ones + zeros == u.nrows()
        });
        if !is_perm && rec.of_permutation.is_none() {
            rec.of_permutation = Some(format!("O_F #{i} is not a permutation matrix"));
        }
        rec.counts.push((Class::Saim, n, 0.0, concrete_count(&of)));
    }
    Ok(format!(
        "{n_select} select circuits, {n_sbm} SBM circuits over {} regimes, 50 O_H and 50 O_F instances",
        regimes.len()
    ))
}

/// Euclidean distance of the concrete circuit's output, leakage included.
fn state_error(rec: &mut Record, circ: &Circuit, target: &[C64]) -> Result<(f64, u64), String> {
    let exact = t!(run_basis(circ, 0));
    rec.leak(exact.leakage, "state preparation");
    let low = t!(synth().lower(circ));
    let p = t!(run_basis(&low, 0));
    let d = t!(state_distance(&p.amps, target));
    Ok(((d * d + p.leakage * p.leakage).sqrt(), concrete_count(&low)))
}

fn criterion2(rec: &mut Record) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut worst = 0.0f64;
    let mut runs = 0;
    for eps in [1e-2, 1e-3] {
        for i in 0..30 {
            let mut check = |rec: &mut Record, what: &str, n: usize, circ: Circuit, target: &[C64], dense: bool| {
                let (d, count) = state_error(rec, &circ, target)?;
                worst = worst.max(d / eps);
                runs += 1;
                if dense {
                    rec.counts.push((Class::DenseState, n, eps, count));
                }
                ensure(d <= eps, || format!("{what} #{i} n={n} eps={eps}: distance {d:.3e}"))
            };
            let n = 1 + i % 8;
            let a = random_amps(&mut rng, n);
            check(rec, "ucr", n, t!(synth_state_ucr(&a, eps)), a.amps(), true)?;

            let n = 1 + i % 6;
            let a = random_amps(&mut rng, n);
            check(rec, "tree", n, t!(synth_state_tree(&a, eps, false)), a.amps(), true)?;

            let n = 1 + i % 5;
            let a = random_amps(&mut rng, n);
            for n_b in [0, n.div_ceil(2), n] {
                let k = tradeoff_ancillas(n, n_b);
                check(rec, "tradeoff", n, t!(synth_state_tradeoff(&a, eps, k)), a.amps(), true)?;
            }

            let n = 1 + i % 8;
            let s = (1 + (i / 8) % 4).min(1 << n);
            let mut idx: Vec<u64> = (0..1u64 << n).collect();
            idx.shuffle(&mut rng);
            let raw: Vec<C64> = (0..s).map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let norm = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let entries: Vec<(u64, C64)> = idx[..s].iter().zip(&raw).map(|(&q, z)| (q, z / norm)).collect();
            let sp = t!(SparseAmplitudes::new(n, entries));
            let (lo, hi) = t!(state_prep::rows_ancillas(n, &[sp.entries().to_vec()]));
            let k = if s == 1 { 0 } else { pick(&mut rng, lo, hi) };
            check(rec, "sparse", n, t!(synth_sparse_state(&sp, eps, k)), &sp.to_dense(), false)?;
        }
    }
    Ok(format!("{runs} concrete preparations, worst distance {worst:.3}·eps"))
}

fn weight(e: f64) -> u64 {
    ((1.0 / e).log2() - 1e-9).ceil().max(1.0) as u64
}

fn criterion3() -> Outcome {
    let unit = CostModel::Abstract { c_rot: 1.0 };
    let eps = 1e-3;
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for n in 1..=10 {
        let a = random_amps(&mut rng, n);
        let circ = t!(synth_state_ucr(&a, eps));
        // every rotation weighs 1 as c_rot -> 0, so the difference isolates
        // the rotation cost from the rest of the circuit
        let rots = circ.gates().iter().filter(|g| matches!(g, Gate::Rz { .. } | Gate::Ry { .. })).count() as u64;
        let rot_cost = t!(metrics(&circ, unit)).count + rots - t!(metrics(&circ, CostModel::Abstract { c_rot: 1e-12 })).count;
        // layer j: 2^{j-1} angles per axis; under controls each is split
        // into two halves at ε_j/2
        let want: u64 = (1..=n)
            .map(|j| {
                let ej = eps / 2f64.powi((n - j + 2) as i32);
                let per = if j == 1 { weight(ej) } else { 2 * weight(ej / 2.0) };
                2 * (1u64 << (j - 1)) * per
            })
            .sum();
        ensure(rot_cost == want, || format!("n={n}: rotation cost {rot_cost} vs {want}"))?;
        for j in 1..=n {
            let ej = eps / 2f64.powi((n - j + 2) as i32);
            let label = format!("ucr.layer{j}");
            ensure(circ.budget().iter().any(|b| b.label == label && b.eps == ej), || format!("n={n}: ledger misses {label}"))?;
        }
    }
    let a = random_amps(&mut rng, 10);
    let tree = t!(metrics(&t!(synth_state_tree(&a, eps, false)), unit)).depth;
    let ucr = t!(metrics(&t!(synth_state_ucr(&a, eps)), unit)).depth;
    ensure(8 * tree <= ucr, || format!("tree depth {tree} vs UCR depth {ucr}"))?;
    Ok(format!("UCR rotation cost exact for n=1..10; n=10 tree depth {tree} = UCR/{:.1}", ucr as f64 / tree as f64))
}

fn slope(pts: &[(f64, f64)]) -> f64 {
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>()
}

fn sweep_spec(task: Task, n: Vec<usize>) -> SweepSpec {
    SweepSpec {
        task,
        n,
        eps: vec![1e-3],
        anc: None,
        width: 1,
        sparsity: None,
        terms: 4,
        measure: false,
    }
}

fn criterion4() -> Outcome {
    let ctx = Context::default();
    let rows = t!(sweep(&ctx, &sweep_spec(Task::StateUcr, (6..=12).collect())));
    let state = slope(
        &rows
            .iter()
            .map(|r| ((r.n as f64) * 2f64.ln(), (r.count.unwrap() as f64).ln()))
            .collect::<Vec<_>>(),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut pts = Vec::new();
    for total in 4..=12 {
        let m = total / 2;
        let width = total - m;
        let strings: Vec<PauliString> = (0..1 << m).map(|_| random_pauli(&mut rng, width)).collect();
        let (lo, _) = pauli_ancilla_range(&strings, m);
        let circ = t!(synth_select_pauli(&strings, m, lo));
        let count = t!(metrics(&circ, CostModel::default())).count;
        pts.push(((((1usize << m) * width) as f64).ln(), (count as f64).ln()));
    }
    let select = slope(&pts);

    let rows = t!(sweep(&ctx, &sweep_spec(Task::SaimOh, (4..=10).collect())));
    let oh = slope(
        &rows
            .iter()
            .map(|r| ((((1usize << r.n) * r.n) as f64).ln(), (r.count.unwrap() as f64).ln()))
            .collect::<Vec<_>>(),
    );
    let detail = format!("slopes: state {state:.3}, select {select:.3}, O_H {oh:.3}");
    let band = 0.85..=1.15;
    ensure(band.contains(&state) && band.contains(&select) && band.contains(&oh), || detail.clone())?;
    Ok(detail)
}

fn be_error(rec: &mut Record, kind: &str, circ: &Circuit, r: &BlockEncodingReport, h: &DenseMatrix) -> Result<f64, String> {
    let (_, leak) = t!(data_unitary(circ));
    // the sparse encoding's row register is part of its ancilla register:
    // it starts and is projected at |0⟩ but is only clean inside the block
    if kind == "LCU" {
        rec.leak(leak, kind);
    }
    let low = t!(synth().lower(circ));
    let (u, _) = t!(data_unitary(&low));
    let blk = t!(extract_block(&u, r.n_block)) * c(r.alpha, 0.0);
    rec.counts.push((Class::BlockEncoding, h.nrows().trailing_zeros() as usize, r.eps_requested, concrete_count(&low)));
    Ok(t!(spectral_distance(&blk, h)))
}

fn criterion5(rec: &mut Record) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut worst = 0.0f64;
    for eps in [1e-2, 1e-3] {
        for i in 0..20 {
            let n = 1 + i % 3;
            let p = 2 + i % 7;
            let terms: Vec<(C64, PauliString)> = (0..p)
                .map(|_| {
                    let z = c(rng.random_range(0.05..1.0), 0.0) * C64::i().powu(rng.random_range(0..4));
                    let s = random_pauli(&mut rng, n).with_phase(0);
                    (z, s)
                })
                .collect();
            let h = terms.iter().fold(DenseMatrix::zeros(1 << n, 1 << n), |acc, (z, s)| acc + pauli_dense(s) * *z);
            let alpha: f64 = terms.iter().map(|t| t.0.norm()).sum();
            let spec = t!(LcuSpec::new(n, terms));
            let (lo, hi) = lcu_ancilla_range(&spec);
            let (circ, r) = t!(synth_pauli_lcu_be(&spec, eps, pick(&mut rng, lo, hi)));
            ensure((r.alpha - alpha).abs() <= 1e-12, || format!("lcu #{i}: alpha {} vs {alpha}", r.alpha))?;
            let d = be_error(rec, "LCU", &circ, &r, &h)?;
            worst = worst.max(d / eps);
            ensure(d <= eps, || format!("lcu #{i} eps={eps}: distance {d:.3e}"))?;
        }
        for i in 0..10 {
            let n = 1 + i % 2;
            let s = 1 + (i / 2) % 2;
            let mut e = Vec::new();
            let mut h = DenseMatrix::zeros(1 << n, 1 << n);
            for row in 0..1u64 << n {
                let mut cols: Vec<u64> = (0..1u64 << n).collect();
                cols.shuffle(&mut rng);
                for &col in &cols[..s] {
                    let z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
                    h[(row as usize, col as usize)] = z;
                    e.push((row, col, z));
                }
            }
            let frob = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            let a = t!(ComplexSparseMatrix::new(n, e));
            let (lo, hi) = t!(sparse_be_ancilla_range(&a));
            let (circ, r) = t!(synth_sparse_be(&a, eps, pick(&mut rng, lo, hi)));
            ensure((r.alpha - frob).abs() <= 1e-12, || format!("sparse #{i}: alpha {} vs {frob}", r.alpha))?;
            let d = be_error(rec, "sparse BE", &circ, &r, &h)?;
            worst = worst.max(d / eps);
            ensure(d <= eps, || format!("sparse #{i} eps={eps}: distance {d:.3e}"))?;
        }
    }

    let eps = 1e-3;
    let spec = t!(LcuSpec::new(1, vec![(c(0.5, 0.0), "Z".parse().unwrap()), (c(0.5, 0.0), "X".parse().unwrap())]));
    let (circ, r) = t!(synth_pauli_lcu_be(&spec, eps, lcu_ancilla_range(&spec).0));
    let low = t!(synth().lower(&circ));
    let (u, _) = t!(data_unitary(&low));
    let blk = t!(extract_block(&u, r.n_block));
    let herm = (&blk + blk.adjoint()) * c(0.5, 0.0);
    let mut ev: Vec<f64> = herm.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ensure(
        (ev[0] + FRAC_1_SQRT_2).abs() <= eps && (ev[1] - FRAC_1_SQRT_2).abs() <= eps,
        || format!("(Z+X)/2 eigenvalues {ev:?}"),
    )?;
    Ok(format!("40 LCU and 20 sparse encodings, worst distance {worst:.3}·eps; (Z+X)/2 eigenvalues {:.6}, {:.6}", ev[0], ev[1]))
}

fn criterion6(rec: &Record) -> Outcome {
    ensure(capacity_log_gates(2, 4, 1) == 5.0, || "capacity at n=2, g=4, C=1 is not 5 bits".into())?;
    let b = t!(saim_lower_bound(2, 4));
    ensure(b.min_count == 1, || format!("SAIM min C at n=2, g=4 is {}", b.min_count))?;
    ensure(!rec.counts.is_empty(), || "no circuits recorded".into())?;
    for &(class, n, eps, count) in &rec.counts {
        let min = match class {
            Class::Saim => t!(saim_lower_bound(n, GATE_SET)),
            Class::BlockEncoding => t!(sparse_be_lower_bound(n, GATE_SET)),
            Class::DenseState => t!(stateprep_lower_bound(n, eps, GATE_SET)),
        }
        .min_count;
        ensure(count >= min, || format!("{class:?} n={n} eps={eps}: count {count} below minimum {min}"))?;
    }
    Ok(format!("worked values exact; {} circuits at or above their minima", rec.counts.len()))
}

fn criterion7(rec: &Record) -> Outcome {
    ensure(rec.worst_leak.0 <= 1e-9, || format!("ancilla leakage {:.2e} in {}", rec.worst_leak.0, rec.worst_leak.1))?;
    if let Some(msg) = [&rec.sbm_involution, &rec.of_permutation, &rec.select_diagonal].into_iter().flatten().next() {
        return Err(msg.clone());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let strings: Vec<PauliString> = (0..8).map(|_| random_pauli(&mut rng, 2)).collect();
    let a = random_amps(&mut rng, 4);
    let texts = || -> Result<Vec<String>, String> {
        Ok(vec![
            write_circuit(&t!(synth_select_pauli(&strings, 3, 4))),
            write_circuit(&t!(synth().lower(&t!(synth_state_tradeoff(&a, 1e-3, tradeoff_ancillas(4, 2)))))),
            write_circuit(&t!(synth_state_tree(&a, 1e-2, true))),
        ])
    };
    ensure(texts()? == texts()?, || "synthesis is not deterministic".into())?;

    let spec = SweepSpec {
        measure: true,
        anc: Some(vec![2, 4, 6]),
        ..sweep_spec(Task::BeSparse, vec![1, 2])
    };
    let csv = || -> Result<Vec<u8>, String> {
        let ctx = Context::new(false, 3.0, 42, None, 12);
        let mut out = Vec::new();
        t!(write_csv(&t!(sweep(&ctx, &spec)), &mut out));
        Ok(out)
    };
    ensure(csv()? == csv()?, || "sweep output differs between runs".into())?;
    Ok(format!(
        "worst leakage {:.1e}; SBM involutions, O_F permutations and select block structure hold; outputs repeat byte for byte",
        rec.worst_leak.0
    ))
}

fn main() {
    // `cargo test` passes harness flags; listing asks for no output
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let mut rec = Record::default();
    let mut failed = 0;
    let mut report = |k: usize, name: &str, limit: Option<Duration>, f: &mut dyn FnMut(&mut Record) -> Outcome| {
        let start = Instant::now();
        let mut out = f(&mut rec);
        let took = start.elapsed();
        if let (Ok(_), Some(lim)) = (&out, limit) {
            if took > lim {
                out = Err(format!("took {:.1?}, limit {lim:.0?}", took));
            }
        }
        match out {
            Ok(d) => println!("PASS criterion {k} ({name}): {d} [{took:.1?}]"),
            Err(e) => {
                failed += 1;
                println!("FAIL criterion {k} ({name}): {e} [{took:.1?}]");
            }
        }
    };
    let min = |m: u64| Some(Duration::from_secs(60 * m));
    report(1, "exact-oracle equivalence", min(5), &mut criterion1);
    report(2, "state-preparation accuracy", min(10), &mut criterion2);
    report(3, "budget arithmetic", None, &mut |_| criterion3());
    report(4, "scaling slopes", min(2), &mut |_| criterion4());
    report(5, "block-encoding contract", min(5), &mut criterion5);
    report(6, "lower-bound consistency", min(1), &mut |r| criterion6(r));
    report(7, "structural invariants", None, &mut |r| criterion7(r));
    if failed > 0 {
        std::process::exit(1);
    }
}
