//! Invariants of the models, enumerators, and canonicalization.
//!
//! Every property is checked two ways: exhaustively over a full small grid at
//! n <= 3, and on randomized instances at n in {4, 5}. Set-level properties
//! keep randomized case counts small because each case runs a whole
//! enumeration.

use proptest::prelude::*;

use nltu_core::models::{
    ltu_truth_table, nltu_truth_table, LTUParams, NLTUParams,
};
use nltu_core::search::{
    canonicalize_nltu, enumerate_functions, enumerate_functions_with, EnumerateOptions, ModelKind,
    SearchSpec,
};

// --- shared generators ----------------------------------------------------

/// Weight rows with entries in 0..=w_max, at least one nonzero entry overall.
fn weights_strategy(n: usize, w_max: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0..=w_max, n)
}

fn nltu_params_strategy(n: usize) -> impl Strategy<Value = NLTUParams> {
    let rows = proptest::collection::vec(weights_strategy(n, 2), 1..=3);
    (rows, 1u32..=12)
        .prop_flat_map(move |(rows, theta)| {
            let sats = rows
                .iter()
                .map(|row| {
                    let total: u32 = row.iter().sum();
                    1u32..=total.max(1)
                })
                .collect::<Vec<_>>();
            (Just(rows), sats, Just(theta))
        })
        .prop_map(|(rows, sats, theta)| NLTUParams::new(rows, sats, theta).unwrap())
}

/// Enumerate all weight vectors in 0..=w_max per entry, n entries.
fn all_weight_vectors(n: usize, w_max: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=w_max).map(move |w| {
                    let mut next = prefix.clone();
                    next.push(w);
                    next
                })
            })
            .collect();
    }
    out
}

// --- 1. LTU reduction: one unsaturated subunit is exactly an LTU -----------

fn assert_single_subunit_reduces(weights: Vec<u32>, theta: u32) {
    let total: u32 = weights.iter().sum();
    let nltu = NLTUParams::new(vec![weights.clone()], vec![total.max(1)], theta).unwrap();
    let ltu = LTUParams::new(weights, theta).unwrap();
    assert_eq!(
        nltu_truth_table(&nltu).unwrap(),
        ltu_truth_table(&ltu).unwrap()
    );
}

#[test]
fn ltu_reduction_exhaustive_small() {
    for n in 1..=3usize {
        for weights in all_weight_vectors(n, 2) {
            let total: u32 = weights.iter().sum();
            for theta in 1..=total + 1 {
                assert_single_subunit_reduces(weights.clone(), theta);
            }
        }
    }
}

proptest! {
    #[test]
    fn ltu_reduction_randomized(
        n in 4usize..=5,
        seed in proptest::arbitrary::any::<u64>(),
    ) {
        // Draw parameters from the seed deterministically via a sub-runner so
        // the arity can itself vary per case.
        let mut weights = Vec::with_capacity(n);
        let mut state = seed | 1;
        for _ in 0..n {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            weights.push((state >> 33) as u32 % 4);
        }
        let total: u32 = weights.iter().sum();
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let theta = 1 + (state >> 33) as u32 % (total + 1);
        assert_single_subunit_reduces(weights, theta);
    }
}

// --- 2. Budget monotonicity: raising k never loses functions ---------------

fn assert_budget_monotone(model: ModelKind, n: usize, k: u32) {
    let small = enumerate_functions(&SearchSpec::new(model, n, k).unwrap()).unwrap();
    let large = enumerate_functions(&SearchSpec::new(model, n, k + 1).unwrap()).unwrap();
    assert!(
        small.functions.is_subset_of(&large.functions),
        "{model} n={n}: budget {k} set not within budget {} set",
        k + 1
    );
}

#[test]
fn budget_monotonicity_exhaustive_small() {
    for n in 1..=3usize {
        for model in [ModelKind::Ltu, ModelKind::Nltu] {
            for k in 1..=3u32 {
                assert_budget_monotone(model, n, k);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]
    #[test]
    fn budget_monotonicity_randomized(
        n in 4usize..=5,
        model in prop_oneof![Just(ModelKind::Ltu), Just(ModelKind::Nltu)],
        k in 1u32..=2,
    ) {
        // nltu at n=5,k=2 is the costly case (~0.3 s); case count stays low.
        let k = if model == ModelKind::Nltu && n == 5 { 1 } else { k };
        assert_budget_monotone(model, n, k);
    }
}

// --- 3. Model containment: every LTU function is an nLTU function ----------

fn assert_ltu_within_nltu(n: usize, k: u32) {
    let ltu = enumerate_functions(&SearchSpec::new(ModelKind::Ltu, n, k).unwrap()).unwrap();
    let nltu = enumerate_functions(&SearchSpec::new(ModelKind::Nltu, n, k).unwrap()).unwrap();
    assert!(
        ltu.functions.is_subset_of(&nltu.functions),
        "n={n} k={k}: LTU set escapes the dendritic set"
    );
}

#[test]
fn model_containment_exhaustive_small() {
    for n in 1..=3usize {
        for k in 1..=3u32 {
            assert_ltu_within_nltu(n, k);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]
    #[test]
    fn model_containment_randomized(n in 4usize..=5, k in 1u32..=2) {
        assert_ltu_within_nltu(n, k);
    }
}

// --- 4. Subunit permutation invariance -------------------------------------

fn assert_subunit_order_irrelevant(params: &NLTUParams) {
    let base = nltu_truth_table(params).unwrap();
    let m = params.subunit_weights().len();
    // Reversal plus a rotation generate enough of the symmetric group to
    // catch order dependence; full S_m is used at m <= 3.
    let mut orders: Vec<Vec<usize>> = vec![(0..m).rev().collect()];
    if m >= 2 {
        let mut rot: Vec<usize> = (1..m).collect();
        rot.push(0);
        orders.push(rot);
    }
    if m == 3 {
        orders.push(vec![1, 0, 2]);
        orders.push(vec![0, 2, 1]);
        orders.push(vec![2, 0, 1]);
    }
    for order in orders {
        let rows: Vec<Vec<u32>> = order
            .iter()
            .map(|&j| params.subunit_weights()[j].clone())
            .collect();
        let sats: Vec<u32> = order.iter().map(|&j| params.saturations()[j]).collect();
        let permuted = NLTUParams::new(rows, sats, params.threshold()).unwrap();
        assert_eq!(nltu_truth_table(&permuted).unwrap(), base);
    }
}

#[test]
fn subunit_permutation_exhaustive_small() {
    for n in 1..=3usize {
        let rows = all_weight_vectors(n, 1);
        for r1 in &rows {
            for r2 in &rows {
                let s1 = r1.iter().sum::<u32>().max(1);
                let s2 = r2.iter().sum::<u32>().max(1);
                for theta in 1..=(s1 + s2 + 1) {
                    let params =
                        NLTUParams::new(vec![r1.clone(), r2.clone()], vec![s1, s2], theta)
                            .unwrap();
                    assert_subunit_order_irrelevant(&params);
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn subunit_permutation_randomized(
        n in 4usize..=5,
        params in (4usize..=5).prop_flat_map(nltu_params_strategy),
    ) {
        let _ = n;
        assert_subunit_order_irrelevant(&params);
    }
}

// --- 5. Canonicalization: idempotent, sorted, function-preserving ----------

fn assert_canonicalization_sound(params: &NLTUParams) {
    let once = canonicalize_nltu(params);
    let twice = canonicalize_nltu(&once);
    assert_eq!(once, twice, "canonical form must be a fixed point");
    assert_eq!(
        nltu_truth_table(&once).unwrap(),
        nltu_truth_table(params).unwrap(),
        "canonicalization must not change the function"
    );
    let pairs: Vec<(&Vec<u32>, u32)> = once
        .subunit_weights()
        .iter()
        .zip(once.saturations().iter().copied())
        .collect();
    assert!(
        pairs.windows(2).all(|w| w[0] <= w[1]),
        "canonical subunits must be sorted"
    );
}

#[test]
fn canonicalization_exhaustive_small() {
    for n in 1..=3usize {
        let rows = all_weight_vectors(n, 1);
        for r1 in &rows {
            for r2 in &rows {
                let s1 = r1.iter().sum::<u32>().max(1);
                let s2 = r2.iter().sum::<u32>().max(1);
                let params =
                    NLTUParams::new(vec![r1.clone(), r2.clone()], vec![s1, s2], 2).unwrap();
                assert_canonicalization_sound(&params);
            }
        }
    }
}

proptest! {
    #[test]
    fn canonicalization_randomized(
        params in (4usize..=5).prop_flat_map(nltu_params_strategy),
    ) {
        assert_canonicalization_sound(&params);
    }
}

// --- 6. Determinism under parallelism --------------------------------------

fn assert_worker_count_irrelevant(model: ModelKind, n: usize, k: u32) {
    let spec = SearchSpec::new(model, n, k).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            enumerate_functions_with(
                &spec,
                EnumerateOptions {
                    collect_witnesses: true,
                    progress: false,
                },
            )
            .unwrap()
        })
    };
    let one = run(1);
    for threads in [2usize, 4] {
        let other = run(threads);
        assert_eq!(one.functions, other.functions, "{model} n={n} k={k}");
        assert_eq!(one.states_visited, other.states_visited);
        assert_eq!(one.states_pruned, other.states_pruned);
        assert_eq!(one.witnesses, other.witnesses, "witness choice must not depend on scheduling");
    }
}

#[test]
fn determinism_exhaustive_small() {
    for n in 1..=3usize {
        for model in [ModelKind::Ltu, ModelKind::Nltu] {
            for k in 1..=2u32 {
                assert_worker_count_irrelevant(model, n, k);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]
    #[test]
    fn determinism_randomized(
        n in 4usize..=5,
        model in prop_oneof![Just(ModelKind::Ltu), Just(ModelKind::Nltu)],
    ) {
        let k = if model == ModelKind::Nltu && n == 5 { 1 } else { 2 };
        assert_worker_count_irrelevant(model, n, k);
    }
}

// --- input-permutation closure of enumerated sets (supporting check) -------

/// Relabeling inputs maps each computable function to another computable
/// function, so enumerated sets must be closed under input permutation.
#[test]
fn enumerated_sets_are_closed_under_input_permutation() {
    fn permute_mask(mask: u64, n: usize, perm: &[usize]) -> u64 {
        let mut out = 0u64;
        for p in 0..(1u32 << n) {
            if (mask >> p) & 1 == 1 {
                let mut q = 0u32;
                for i in 0..n {
                    if (p >> i) & 1 == 1 {
                        q |= 1 << perm[i];
                    }
                }
                out |= 1 << q;
            }
        }
        out
    }
    fn all_perms(n: usize) -> Vec<Vec<usize>> {
        if n == 1 {
            return vec![vec![0]];
        }
        let mut out = Vec::new();
        for smaller in all_perms(n - 1) {
            for slot in 0..n {
                let mut perm = smaller.clone();
                perm.insert(slot, n - 1);
                out.push(perm);
            }
        }
        out
    }
    for (model, n, k) in [
        (ModelKind::Ltu, 3usize, 2u32),
        (ModelKind::Nltu, 3, 2),
        (ModelKind::Ltu, 4, 2),
        (ModelKind::Nltu, 4, 1),
        (ModelKind::Ltu, 5, 2),
        (ModelKind::Nltu, 5, 1),
    ] {
        let set = enumerate_functions(&SearchSpec::new(model, n, k).unwrap())
            .unwrap()
            .functions;
        for perm in all_perms(n) {
            for mask in set.sorted_masks() {
                let image = permute_mask(mask, n, &perm);
                assert!(
                    set.contains_mask(image),
                    "{model} n={n} k={k}: image of {mask:#x} under {perm:?} missing"
                );
            }
        }
    }
}
