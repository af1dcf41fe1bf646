use circuit_core::{compose, metrics, Circuit, CostModel};
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sim_oracle::{data_unitary, DenseMatrix};
use sparse_access::*;

const TOL: f64 = 1e-10;

/// Permutation matrix of a map on data basis states.
fn perm(bits: usize, map: impl Fn(usize) -> usize) -> DenseMatrix {
    let dim = 1 << bits;
    let mut u = DenseMatrix::zeros(dim, dim);
    for k in 0..dim {
        u[(map(k), k)] = C64::new(1.0, 0.0);
    }
    u
}

fn sbm_oracle(f: &SparseBooleanFn) -> DenseMatrix {
    let n = f.n();
    let lo = (1 << n) - 1;
    perm(n + f.word(), |k| k ^ ((f.eval((k & lo) as u64) as usize) << n))
}

fn check(c: &Circuit, want: &DenseMatrix) {
    let (u, leak) = data_unitary(c).unwrap();
    assert!(leak < TOL, "leakage {leak}");
    let err = (&u - want).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(err < TOL, "entrywise error {err}");
}

fn random_fn(rng: &mut ChaCha8Rng, n: usize, word: usize, s: usize) -> SparseBooleanFn {
    let mut qs: Vec<u64> = (0..1u64 << n).collect();
    let mut e = Vec::new();
    for _ in 0..s.min(qs.len()) {
        let q = qs.swap_remove(rng.random_range(0..qs.len()));
        e.push((q, rng.random_range(1..1u64 << word)));
    }
    SparseBooleanFn::new(n, word, e).unwrap()
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize, d: usize, s: usize) -> SparseMatrixCoo {
    let dim = 1usize << n;
    loop {
        let mut e = Vec::new();
        for x in 0..dim {
            for y in 0..dim {
                if rng.random_bool(s as f64 / dim as f64 * 0.8) {
                    e.push((x, y, rng.random_range(1..1u64 << d)));
                }
            }
        }
        if let Ok(a) = SparseMatrixCoo::new(n, d, s, e) {
            return a;
        }
    }
}

fn of_oracle(a: &SparseMatrixCoo) -> DenseMatrix {
    let n = a.n();
    let f = completed_f(a);
    let lo = (1 << n) - 1;
    perm(2 * n, |i| (i & lo) + (f[i & lo][i >> n] << n))
}

#[test]
fn empty_function_is_identity() {
    let f = SparseBooleanFn::new(2, 2, vec![]).unwrap();
    let c = synth_sbm(&f, 0).unwrap();
    assert!(c.is_empty());
    assert_eq!(sbm_plan(&f, 0).unwrap(), Regime::Empty);
}

#[test]
fn single_entry_flips_on_its_index_only() {
    let f = SparseBooleanFn::new(2, 1, vec![(0b10, 1)]).unwrap();
    let c = synth_sbm(&f, 1).unwrap();
    // wrd is qubit 2
    check(&c, &perm(3, |k| if k & 3 == 2 { k ^ 4 } else { k }));
}

#[test]
fn rejects_bad_entries() {
    assert_eq!(SparseBooleanFn::new(2, 1, vec![(1, 1), (1, 1)]), Err(SaimError::Duplicate(1)));
    assert_eq!(SparseBooleanFn::new(2, 1, vec![(3, 0)]), Err(SaimError::ZeroValue(3)));
    assert!(matches!(SparseBooleanFn::new(2, 1, vec![(4, 1)]), Err(SaimError::Shape(_))));
    assert!(matches!(SparseMatrixCoo::new(1, 1, 1, vec![(0, 0, 1), (0, 1, 1)]), Err(SaimError::Shape(_))));
}

#[test]
fn budget_below_minimum_is_infeasible() {
    let f = SparseBooleanFn::new(3, 1, vec![(5, 1)]).unwrap();
    assert_eq!(sbm_ancilla_range(&f).0, 2);
    assert_eq!(synth_sbm(&f, 1).unwrap_err(), SaimError::Infeasible { needed: 2, available: 1 });
}

#[test]
fn regimes_follow_the_budget() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = random_fn(&mut rng, 3, 2, 3);
    let (lo, hi) = sbm_ancilla_range(&f);
    assert_eq!(sbm_plan(&f, hi).unwrap(), Regime::WordSlices { width: 2 });
    assert_eq!(sbm_plan(&f, lo).unwrap(), Regime::EntryChunks { width: 1 });
}

#[test]
fn range_ends_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f = random_fn(&mut rng, 3, 2, 3);
    let (lo, hi) = sbm_ancilla_range(&f);
    let a = synth_sbm(&f, lo).unwrap();
    let b = synth_sbm(&f, hi).unwrap();
    check(&a, &sbm_oracle(&f));
    check(&b, &sbm_oracle(&f));
    assert!(a.ancilla_peak() <= lo && b.ancilla_peak() <= hi);
    let d = |c: &Circuit| metrics(c, CostModel::default()).unwrap().depth;
    assert!(d(&b) < d(&a));
}

#[test]
fn seeded_sbm_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..60 {
        let n = rng.random_range(1..=4);
        let word = rng.random_range(1..=2);
        let s = rng.random_range(1..=4);
        let f = random_fn(&mut rng, n, word, s);
        let (lo, hi) = sbm_ancilla_range(&f);
        for n_anc in [lo, (lo + hi) / 2, hi] {
            let c = synth_sbm(&f, n_anc).unwrap();
            assert!(c.ancilla_peak() <= n_anc);
            check(&c, &sbm_oracle(&f));
        }
    }
}

#[test]
fn sbm_twice_is_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let f = random_fn(&mut rng, 3, 2, 4);
        let c = synth_sbm(&f, sbm_ancilla_range(&f).0).unwrap();
        let cc = compose(&c, &c).unwrap();
        check(&cc, &DenseMatrix::identity(32, 32));
    }
}

#[test]
fn oh_of_identity_matrix() {
    let a = SparseMatrixCoo::new(1, 1, 1, vec![(0, 0, 1), (1, 1, 1)]).unwrap();
    let c = synth_oh(&a, 8).unwrap();
    // x = qubit 0, y = qubit 1, wrd = qubit 2
    check(&c, &perm(3, |k| if k & 1 == (k >> 1) & 1 { k ^ 4 } else { k }));
    let z = SparseMatrixCoo::new(1, 1, 1, vec![]).unwrap();
    assert!(synth_oh(&z, 0).unwrap().is_empty());
}

#[test]
fn seeded_oh_and_of_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    for _ in 0..50 {
        let n = rng.random_range(1..=2);
        let s = rng.random_range(1..=2);
        let d = rng.random_range(1..=2);
        let a = random_matrix(&mut rng, n, d, s);
        let f = a.value_fn();
        let lo = (1 << (2 * n)) - 1;
        let want = perm(2 * n + d, |k| k ^ ((f.eval((k & lo) as u64) as usize) << (2 * n)));
        let (slo, shi) = sbm_ancilla_range(&f);
        for n_anc in [slo, shi] {
            check(&synth_oh(&a, n_anc).unwrap(), &want);
        }
        let (olo, ohi) = of_ancilla_range(&a);
        for n_anc in [olo, ohi] {
            let c = synth_of(&a, n_anc).unwrap();
            assert!(c.ancilla_peak() <= n_anc);
            check(&c, &of_oracle(&a));
        }
    }
}

#[test]
fn of_diagonal_is_a_permutation() {
    let a = SparseMatrixCoo::new(2, 1, 1, (0..4).map(|x| (x, x, 1)).collect()).unwrap();
    let f = completed_f(&a);
    assert!((0..4).all(|x| f[x][0] == x));
    let (u, leak) = data_unitary(&synth_of(&a, 16).unwrap()).unwrap();
    assert!(leak < TOL);
    for i in 0..16 {
        let row: Vec<f64> = (0..16).map(|j| u[(i, j)].norm()).collect();
        assert!(row.iter().all(|&v| v < TOL || (v - 1.0).abs() < TOL));
        assert_eq!(row.iter().filter(|&&v| v > 0.5).count(), 1);
        assert_eq!((0..16).filter(|&j| u[(j, i)].norm() > 0.5).count(), 1);
    }
    check(&synth_of(&a, 16).unwrap(), &of_oracle(&a));
}

#[test]
fn of_anti_diagonal() {
    let a = SparseMatrixCoo::new(1, 1, 1, vec![(0, 1, 1), (1, 0, 1)]).unwrap();
    let c = synth_of(&a, of_ancilla_range(&a).0).unwrap();
    // x = qubit 0, k = qubit 1: |x,0⟩ → |x,1−x⟩
    check(&c, &perm(2, |i| (i & 1) | (((i & 1) ^ 1 ^ (i >> 1)) << 1)));
}

#[test]
fn full_row_lists_columns_in_order() {
    let a = SparseMatrixCoo::new(2, 2, 4, vec![(1, 3, 1), (1, 0, 2), (1, 2, 3), (1, 1, 1)]).unwrap();
    assert_eq!(completed_f(&a)[1], vec![0, 1, 2, 3]);
    let b = SparseMatrixCoo::new(2, 2, 2, vec![(2, 3, 1), (2, 1, 2)]).unwrap();
    assert_eq!(completed_f(&b)[2], vec![1, 3, 0, 2]);
}

#[test]
fn of_budget_below_minimum() {
    let a = SparseMatrixCoo::new(1, 1, 1, vec![(0, 1, 1)]).unwrap();
    let (lo, _) = of_ancilla_range(&a);
    assert!(matches!(synth_of(&a, lo - 1), Err(SaimError::Infeasible { .. })));
}

#[test]
fn synthesis_is_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let a = random_matrix(&mut rng, 2, 2, 2);
    assert_eq!(synth_of(&a, 12).unwrap().gates(), synth_of(&a, 12).unwrap().gates());
    assert_eq!(synth_oh(&a, 5).unwrap().gates(), synth_oh(&a, 5).unwrap().gates());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sbm_matches_at_any_budget(seed in any::<u64>(), n in 1usize..=3, word in 1usize..=3, s in 0usize..=5, frac in 0.0f64..=1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_fn(&mut rng, n, word, s);
        let (lo, hi) = sbm_ancilla_range(&f);
        let n_anc = lo + ((hi - lo) as f64 * frac) as usize;
        let c = synth_sbm(&f, n_anc).unwrap();
        prop_assert!(c.ancilla_peak() <= n_anc);
        let (u, leak) = data_unitary(&c).unwrap();
        prop_assert!(leak < TOL);
        prop_assert!((&u - &sbm_oracle(&f)).iter().all(|z| z.norm() < TOL));
    }
}
