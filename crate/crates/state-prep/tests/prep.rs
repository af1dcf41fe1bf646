use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::sync::OnceLock;

use circuit_core::{metrics, Circuit, CircuitBuilder, CostModel};
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rotation_synth::{SynthConfig, Synthesizer};
use sim_oracle::{run_basis, state_distance};
use state_prep::*;

fn synth() -> &'static Synthesizer {
    static S: OnceLock<Synthesizer> = OnceLock::new();
    S.get_or_init(|| Synthesizer::new(SynthConfig::default()))
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> DenseAmplitudes {
    let v = (0..1 << n)
        .map(|_| c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    DenseAmplitudes::normalize(v).unwrap()
}

fn zero_state(n: usize) -> DenseAmplitudes {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[0] = c(1.0, 0.0);
    DenseAmplitudes::new(v).unwrap()
}

/// Output from |0…0⟩ on the data register, ancillas projected.
fn prepared(circ: &Circuit) -> Vec<C64> {
    let p = run_basis(circ, 0).unwrap();
    assert!(p.leakage < 1e-9, "leakage {}", p.leakage);
    p.amps
}

fn exact_distance(circ: &Circuit, target: &[C64]) -> f64 {
    state_distance(&prepared(circ), target).unwrap()
}

fn concrete_distance(circ: &Circuit, target: &[C64]) -> f64 {
    let low = synth().lower(circ).unwrap();
    assert!(!low.has_abstract());
    let p = run_basis(&low, 0).unwrap();
    // leakage is part of the error here
    (state_distance(&p.amps, target).unwrap().powi(2) + p.leakage.powi(2)).sqrt()
}

fn depth(circ: &Circuit) -> u64 {
    metrics(circ, CostModel::default()).unwrap().depth
}

#[test]
fn zero_target_has_zero_angles_and_no_gates() {
    let t = ucr_angles(&zero_state(3));
    assert!(t.y.iter().chain(&t.z).flatten().all(|&a| a == 0.0));
    assert!(synth_state_ucr(&zero_state(3), 1e-2).unwrap().is_empty());
}

#[test]
fn one_qubit_plus_state_angles() {
    let a = DenseAmplitudes::new(vec![c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)]).unwrap();
    let t = ucr_angles(&a);
    assert!((t.y[0][0] - PI / 2.0).abs() < 1e-12);
    assert!(t.z[0][0].abs() < 1e-12);
}

#[test]
fn angle_table_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let t = ucr_angles(&random_state(&mut rng, 4));
    for j in 1..=4 {
        assert_eq!(t.y[j - 1].len(), 1 << (j - 1));
        assert_eq!(t.z[j - 1].len(), 1 << (j - 1));
    }
}

#[test]
fn input_validation() {
    assert!(matches!(DenseAmplitudes::new(vec![c(1.0, 0.0), c(1.0, 0.0)]), Err(StateError::Norm(_))));
    assert!(matches!(DenseAmplitudes::new(vec![c(1.0, 0.0); 3]), Err(StateError::Shape(_))));
    assert_eq!(
        SparseAmplitudes::new(2, vec![(1, c(FRAC_1_SQRT_2, 0.0)), (1, c(FRAC_1_SQRT_2, 0.0))]),
        Err(StateError::Duplicate(1))
    );
    assert_eq!(synth_state_ucr(&zero_state(2), 1.0), Err(StateError::Eps(1.0)));
}

#[test]
fn ucr_budget_ledger() {
    let eps = 1e-2;
    assert_eq!(ucr_budget(4, eps), vec![eps / 32.0, eps / 16.0, eps / 8.0, eps / 4.0]);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let circ = synth_state_ucr(&random_state(&mut rng, 4), eps).unwrap();
    let total: f64 = circ.budget().iter().map(|e| e.eps).sum();
    assert!((total - 15.0 * eps / 32.0).abs() < 1e-15);
}

#[test]
fn tree_budget_sums_below_eps() {
    for n in 1..=12 {
        let s: f64 = tree_budget(n, 1.0).iter().sum();
        assert!(s < 1.0 && s + K / (n + 1) as f64 <= 1.0 + 1e-12);
    }
}

#[test]
fn tree_table_conserves_probability() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let a = random_state(&mut rng, 5);
    let t = TreeTable::new(a.amps());
    for l in 0..=5 {
        let p: f64 = t.mags[l].iter().map(|m| m * m).sum();
        assert!((p - 1.0).abs() < 1e-9);
    }
}

#[test]
fn ucr_exact_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=5 {
        let a = random_state(&mut rng, n);
        let circ = synth_state_ucr(&a, 1e-3).unwrap();
        assert!(exact_distance(&circ, a.amps()) < 1e-9);
        assert!(circ.ancilla_peak() <= ucr_ancillas(n, false));
    }
}

#[test]
fn ucr_concrete_accuracy() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = random_state(&mut rng, 3);
    let circ = synth_state_ucr(&a, 1e-3).unwrap();
    assert!(concrete_distance(&circ, a.amps()) <= 1e-3);
}

#[test]
fn tree_exact_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for n in 1..=4 {
        let a = random_state(&mut rng, n);
        let circ = synth_state_tree(&a, 1e-3, false).unwrap();
        assert!(exact_distance(&circ, a.amps()) < 1e-9);
        assert!(circ.ancilla_peak() <= tree_ancillas(n, false));
    }
}

#[test]
fn tree_two_qubit_example() {
    let a = DenseAmplitudes::new(vec![c(0.6, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.8, 0.0)]).unwrap();
    let circ = synth_state_tree(&a, 1e-3, false).unwrap();
    assert!(exact_distance(&circ, a.amps()) < 1e-12);
    assert!(concrete_distance(&circ, a.amps()) <= 1e-3);
}

#[test]
fn controlled_tree_respects_the_control() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = random_state(&mut rng, 3);
    let circ = synth_state_tree(&a, 1e-3, true).unwrap();
    assert!(circ.ancilla_peak() <= tree_ancillas(3, true));
    // ctl is qubit 0
    let off = run_basis(&circ, 0).unwrap();
    assert!(off.leakage < 1e-9);
    assert!((off.amps[0] - c(1.0, 0.0)).norm() < 1e-9);
    let on = run_basis(&circ, 1).unwrap();
    assert!(on.leakage < 1e-9);
    let want: Vec<C64> = (0..16).map(|k| if k & 1 == 1 { a.amps()[k >> 1] } else { c(0.0, 0.0) }).collect();
    assert!(state_distance(&on.amps, &want).unwrap() < 1e-9);
    // concrete: the off branch stays exact
    let low = synth().lower(&circ).unwrap();
    let off = run_basis(&low, 0).unwrap();
    assert!((off.amps[0] - c(1.0, 0.0)).norm() < 1e-9);
}

#[test]
fn controlled_zero_target_is_clean() {
    let circ = synth_state_tree(&zero_state(3), 1e-3, true).unwrap();
    let on = run_basis(&circ, 1).unwrap();
    assert!(on.leakage < 1e-12 && (on.amps[1] - c(1.0, 0.0)).norm() < 1e-12);
}

#[test]
fn tree_is_shallower_than_ucr() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let a = random_state(&mut rng, 6);
    let t = synth_state_tree(&a, 1e-3, false).unwrap();
    let u = synth_state_ucr(&a, 1e-3).unwrap();
    assert!(depth(&t) <= depth(&u), "tree {} ucr {}", depth(&t), depth(&u));
}

#[test]
fn tradeoff_extremes() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = random_state(&mut rng, 4);
    let lo = tradeoff_ancillas(4, 0);
    let hi = tradeoff_ancillas(4, 4);
    let (nb, circ) = tradeoff_split(&a, 1e-2, lo).unwrap();
    assert_eq!(nb, 0);
    assert!(exact_distance(&circ, a.amps()) < 1e-9);
    let (nb, circ) = tradeoff_split(&a, 1e-2, hi).unwrap();
    assert_eq!(nb, 4);
    assert!(exact_distance(&circ, a.amps()) < 1e-9);
    assert!(matches!(synth_state_tradeoff(&a, 1e-2, lo - 1), Err(StateError::Infeasible { .. })));
}

#[test]
fn tradeoff_middle_is_between() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let a = random_state(&mut rng, 5);
    let mid = synth_state_tradeoff(&a, 1e-2, 16).unwrap();
    let lo = synth_state_tradeoff(&a, 1e-2, tradeoff_ancillas(5, 0)).unwrap();
    let hi = synth_state_tradeoff(&a, 1e-2, tradeoff_ancillas(5, 5)).unwrap();
    assert!(mid.ancilla_peak() <= 16);
    assert!(depth(&hi) < depth(&mid) && depth(&mid) < depth(&lo), "{} {} {}", depth(&hi), depth(&mid), depth(&lo));
    assert!(exact_distance(&mid, a.amps()) < 1e-9);
    assert!(concrete_distance(&mid, a.amps()) <= 1e-2);
}

#[test]
fn tradeoff_depth_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = random_state(&mut rng, 5);
    let mut last = u64::MAX;
    for n_anc in tradeoff_ancillas(5, 0)..=tradeoff_ancillas(5, 5) {
        let d = depth(&synth_state_tradeoff(&a, 1e-2, n_anc).unwrap());
        assert!(d <= last);
        last = d;
    }
}

#[test]
fn single_entry_sparse_state_is_x_gates() {
    let a = SparseAmplitudes::new(4, vec![(0b1010, c(0.0, 1.0))]).unwrap();
    let circ = synth_sparse_state(&a, 1e-3, 0).unwrap();
    assert!(circ.gates().iter().all(|g| matches!(g, circuit_core::Gate::X(_))));
    assert_eq!(circ.len(), 2);
    assert!(exact_distance(&circ, &a.to_dense()) < 1e-12);
}

#[test]
fn two_entry_sparse_state() {
    let h = FRAC_1_SQRT_2;
    let a = SparseAmplitudes::new(3, vec![(0, c(h, 0.0)), (0b101, c(h, 0.0))]).unwrap();
    let (lo, _) = rows_ancillas(3, &[a.entries().to_vec()]).unwrap();
    let circ = synth_sparse_state(&a, 1e-3, lo).unwrap();
    assert!(circ.ancilla_peak() <= lo);
    assert!(concrete_distance(&circ, &a.to_dense()) <= 1e-3);
    assert!(matches!(synth_sparse_state(&a, 1e-3, lo - 1), Err(StateError::Infeasible { .. })));
}

fn random_sparse(rng: &mut ChaCha8Rng, n: usize, s: usize) -> SparseAmplitudes {
    let mut qs: Vec<u64> = (0..1u64 << n).collect();
    let mut e: Vec<(u64, C64)> = (0..s)
        .map(|_| (qs.swap_remove(rng.random_range(0..qs.len())), c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
        .collect();
    let norm = e.iter().map(|x| x.1.norm_sqr()).sum::<f64>().sqrt();
    e.iter_mut().for_each(|x| x.1 /= norm);
    SparseAmplitudes::new(n, e).unwrap()
}

#[test]
fn sparse_cost_tracks_n_not_two_to_the_n() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let count = |n: usize, rng: &mut ChaCha8Rng| {
        let a = random_sparse(rng, n, 4);
        let (lo, _) = rows_ancillas(n, &[a.entries().to_vec()]).unwrap();
        let circ = synth_sparse_state(&a, 1e-3, lo).unwrap();
        assert!(exact_distance(&circ, &a.to_dense()) < 1e-9);
        metrics(&circ, CostModel::default()).unwrap().count as f64
    };
    let c6 = count(6, &mut rng);
    let c12 = count(12, &mut rng);
    assert!(c12 / c6 < 3.0, "{c6} {c12}");
}

#[test]
fn rows_prepare_per_index_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let rows: Vec<Vec<(u64, C64)>> = vec![
        random_sparse(&mut rng, 3, 3).entries().to_vec(),
        vec![],
        random_sparse(&mut rng, 3, 1).entries().to_vec(),
        random_sparse(&mut rng, 3, 2).entries().to_vec(),
    ];
    let (lo, hi) = rows_ancillas(3, &rows).unwrap();
    for n_anc in [lo, hi] {
        let mut b = CircuitBuilder::new();
        let r = b.register("r", 2);
        let out = b.register("out", 3);
        emit_rows(&mut b, &r, &out, &rows, 1e-3, n_anc).unwrap();
        let circ = b.finish().unwrap();
        assert!(circ.ancilla_peak() <= n_anc);
        for (ri, row) in rows.iter().enumerate() {
            let p = run_basis(&circ, ri).unwrap();
            assert!(p.leakage < 1e-9);
            let mut want = vec![c(0.0, 0.0); 32];
            if row.is_empty() {
                want[ri] = c(1.0, 0.0);
            }
            for &(q, a) in row {
                want[ri + ((q as usize) << 2)] = a;
            }
            assert!(state_distance(&p.amps, &want).unwrap() < 1e-9);
        }
    }
}

#[test]
fn deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let a = random_state(&mut rng, 4);
    assert_eq!(synth_state_tree(&a, 1e-3, false).unwrap().gates(), synth_state_tree(&a, 1e-3, false).unwrap().gates());
    assert_eq!(synth_state_tradeoff(&a, 1e-3, 12).unwrap().gates(), synth_state_tradeoff(&a, 1e-3, 12).unwrap().gates());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn every_mode_round_trips(seed in any::<u64>(), n in 1usize..=4, frac in 0.0f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_state(&mut rng, n);
        let u = synth_state_ucr(&a, 1e-2).unwrap();
        prop_assert!(exact_distance(&u, a.amps()) < 1e-9);
        let t = synth_state_tree(&a, 1e-2, false).unwrap();
        prop_assert!(exact_distance(&t, a.amps()) < 1e-9);
        let (lo, hi) = (tradeoff_ancillas(n, 0), tradeoff_ancillas(n, n));
        let k = lo + ((hi - lo) as f64 * frac) as usize;
        let m = synth_state_tradeoff(&a, 1e-2, k).unwrap();
        prop_assert!(m.ancilla_peak() <= k);
        prop_assert!(exact_distance(&m, a.amps()) < 1e-9);
    }

    #[test]
    fn budgets_stay_within_eps(n in 1usize..=12, eps in 1e-6f64..0.5) {
        prop_assert!(ucr_budget(n, eps).iter().sum::<f64>() <= eps / 2.0);
        prop_assert!(tree_budget(n, eps).iter().sum::<f64>() <= eps);
    }
}
