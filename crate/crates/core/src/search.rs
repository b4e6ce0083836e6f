//! Exhaustive enumeration of every truth table a model family computes within
//! an integer parameter range, under a per-input synapse budget.
//!
//! The parameter range is fixed by three rules, all derived from the budget:
//! - weights: for the LTU, w_i in 0..=k; for the nLTU, all nonnegative integer
//!   weight matrices whose column sums satisfy Σ_j w_{j,i} <= k;
//! - saturations: s_j in 1..=(row sum of subunit j) — larger values are
//!   behaviorally identical to the row sum itself, so the cap removes an
//!   infinite redundancy from the range; empty subunits take s_j = 1;
//! - thresholds: θ in 1..=(maximum possible pre-threshold sum)+1 — any larger
//!   θ gives constant-FALSE, which the cap value already produces.
//!
//! The nLTU enumerator walks canonical configurations only: subunit rows in
//! non-decreasing order, one representative per permutation orbit. Skipped
//! orbit members are counted in `states_pruned`. A naive ordered enumerator
//! over the same raw space ([`enumerate_nltu_naive`]) exists purely as an
//! independent cross-check at toy scale.
//!
//! Work is split over the outermost parameter choice and each worker fills a
//! private [`FunctionSet`]; the merge is a set union, so results are identical
//! for any worker count or partitioning.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{NLTUParams, WitnessParams};
use crate::truthtable::{check_arity, FunctionSet};

pub const DEFAULT_STATE_CAP: u64 = 10_000_000_000;

/// Budgets beyond this are rejected up front: the search cost is already
/// astronomical long before the cap, and the cap keeps every intermediate
/// sum comfortably inside the fixed-width scratch buffers.
pub const MAX_SYNAPSE_BUDGET: u32 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Ltu,
    Nltu,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelKind::Ltu => write!(f, "ltu"),
            ModelKind::Nltu => write!(f, "nltu"),
        }
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ltu" => Ok(ModelKind::Ltu),
            "nltu" => Ok(ModelKind::Nltu),
            other => Err(Error::InvalidParams(format!(
                "unknown model '{other}' (expected 'ltu' or 'nltu')"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchSpec {
    arity: u8,
    model_kind: ModelKind,
    synapse_budget: u32,
    max_subunits: u8,
    state_cap: u64,
}

impl SearchSpec {
    /// For the nLTU the subunit count defaults to n, which at any budget k
    /// bounds the nonempty subunits a configuration can use at k = 1 and is
    /// checked against larger caps by the toy-scale completeness tests.
    pub fn new(model_kind: ModelKind, arity: usize, synapse_budget: u32) -> Result<Self> {
        let arity = check_arity(arity)?;
        if synapse_budget == 0 {
            return Err(Error::InvalidParams("synapse budget must be >= 1".into()));
        }
        if synapse_budget > MAX_SYNAPSE_BUDGET {
            return Err(Error::InvalidParams(format!(
                "synapse budget {synapse_budget} exceeds the supported maximum {MAX_SYNAPSE_BUDGET}"
            )));
        }
        let max_subunits = match model_kind {
            ModelKind::Ltu => 1,
            ModelKind::Nltu => arity,
        };
        Ok(SearchSpec {
            arity,
            model_kind,
            synapse_budget,
            max_subunits,
            state_cap: DEFAULT_STATE_CAP,
        })
    }

    /// Overrides the subunit-count cap. Ignored for the LTU, which has no
    /// subunit structure.
    pub fn with_max_subunits(mut self, max_subunits: usize) -> Result<Self> {
        if max_subunits == 0 {
            return Err(Error::InvalidParams("max subunits must be >= 1".into()));
        }
        if max_subunits > u8::MAX as usize {
            return Err(Error::InvalidParams(format!(
                "max subunits {max_subunits} is unreasonably large"
            )));
        }
        if self.model_kind == ModelKind::Nltu {
            self.max_subunits = max_subunits as u8;
        }
        Ok(self)
    }

    pub fn with_state_cap(mut self, state_cap: u64) -> Self {
        self.state_cap = state_cap;
        self
    }

    pub fn arity(&self) -> u8 {
        self.arity
    }

    pub fn model_kind(&self) -> ModelKind {
        self.model_kind
    }

    pub fn synapse_budget(&self) -> u32 {
        self.synapse_budget
    }

    pub fn max_subunits(&self) -> u8 {
        self.max_subunits
    }

    pub fn state_cap(&self) -> u64 {
        self.state_cap
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub spec: SearchSpec,
    pub functions: FunctionSet,
    /// Parameter sets actually evaluated (canonical representatives, every
    /// threshold value counted even where thresholds are batched).
    pub states_visited: u64,
    /// Parameter sets skipped as non-canonical orbit members; visited plus
    /// pruned equals the size of the ordered raw space over nonempty subunit
    /// rows. Saturating at u64::MAX.
    pub states_pruned: u64,
    /// One smallest witness per distinct function, present when requested.
    pub witnesses: Option<BTreeMap<u64, WitnessParams>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerateOptions {
    pub collect_witnesses: bool,
    /// Emit progress lines to stderr.
    pub progress: bool,
}

pub fn enumerate_functions(spec: &SearchSpec) -> Result<SearchResult> {
    enumerate_functions_with(spec, EnumerateOptions::default())
}

pub fn enumerate_functions_with(spec: &SearchSpec, opts: EnumerateOptions) -> Result<SearchResult> {
    let result = match spec.model_kind {
        ModelKind::Ltu => enumerate_ltu(spec, opts),
        ModelKind::Nltu => enumerate_nltu(spec, opts),
    }?;
    if opts.progress {
        eprintln!(
            "[search] n={} model={} k={}: {} functions, {} states visited, {} pruned",
            spec.arity,
            spec.model_kind,
            spec.synapse_budget,
            result.functions.len(),
            result.states_visited,
            result.states_pruned
        );
    }
    Ok(result)
}

/// Closed-form count of distinct LTU functions at synapse budget 1:
/// Σ_m C(n,m)·m + 1. With 0/1 weights a function is determined by the support
/// set S and a threshold 1..=|S| ("at least θ of S"), plus constant FALSE;
/// distinct (S, θ) pairs give distinct functions. Used as an independent
/// arithmetic cross-check of the enumerator.
pub fn ltu_single_synapse_closed_form(n: usize) -> u64 {
    let mut total = 1u64;
    let mut binom = 1u64; // C(n, m)
    for m in 1..=n as u64 {
        binom = binom * (n as u64 - m + 1) / m;
        total += binom * m;
    }
    total
}

// ---------------------------------------------------------------------------
// Shared accumulator for the parallel fold.

struct Accumulator {
    functions: FunctionSet,
    witnesses: Option<BTreeMap<u64, WitnessParams>>,
    visited: u64,
    pruned: u64,
}

impl Accumulator {
    fn new(arity: u8, collect_witnesses: bool) -> Self {
        Accumulator {
            functions: FunctionSet::new(arity as usize).expect("validated arity"),
            witnesses: collect_witnesses.then(BTreeMap::new),
            visited: 0,
            pruned: 0,
        }
    }

    fn record(&mut self, mask: u64, make_witness: impl FnOnce() -> WitnessParams) {
        let new = self.functions.insert_mask(mask);
        if let Some(map) = &mut self.witnesses {
            if new {
                map.insert(mask, make_witness());
            } else {
                // Keep the smallest witness so merges are order-independent.
                let candidate = make_witness();
                map.entry(mask)
                    .and_modify(|w| {
                        if candidate < *w {
                            *w = candidate.clone();
                        }
                    })
                    .or_insert(candidate);
            }
        }
    }

    fn merge(mut self, other: Accumulator) -> Self {
        self.functions
            .merge(other.functions)
            .expect("accumulators share one arity");
        self.visited += other.visited;
        self.pruned = self.pruned.saturating_add(other.pruned);
        match (&mut self.witnesses, other.witnesses) {
            (Some(a), Some(b)) => {
                for (mask, w) in b {
                    a.entry(mask)
                        .and_modify(|existing| {
                            if w < *existing {
                                *existing = w.clone();
                            }
                        })
                        .or_insert(w);
                }
            }
            (None, None) => {}
            _ => unreachable!("witness collection flag is uniform"),
        }
        self
    }
}

/// Adds `states` to the shared counter and fails once the cap is crossed.
fn charge_states(
    counter: &AtomicU64,
    cap: u64,
    states: u64,
    functions_so_far: usize,
) -> Result<()> {
    let total = counter.fetch_add(states, Ordering::Relaxed) + states;
    if total > cap {
        Err(Error::StateCapExceeded {
            visited: total,
            cap,
            functions_so_far,
        })
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// LTU enumeration.

fn enumerate_ltu(spec: &SearchSpec, opts: EnumerateOptions) -> Result<SearchResult> {
    let n = spec.arity as usize;
    let m = 1u32 << n;
    let k = spec.synapse_budget as u64;
    let num_vectors = (k + 1)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::InvalidParams("weight space size overflows".into()))?;
    let max_sum = (k as usize) * n;
    let counter = AtomicU64::new(0);

    let accumulate = |mut acc: Accumulator, idx: u64| -> Result<Accumulator> {
        let mut weights = [0u32; 6];
        let mut rest = idx;
        for w in weights.iter_mut().take(n) {
            *w = (rest % (k + 1)) as u32;
            rest /= k + 1;
        }
        let total_weight: u32 = weights[..n].iter().sum();
        let states = u64::from(total_weight) + 1;
        charge_states(&counter, spec.state_cap, states, acc.functions.len())?;
        acc.visited += states;

        // Weighted sum per assignment, then one pass per threshold value via
        // a histogram of sums: the table for θ is the OR of histogram slots
        // with sum >= θ.
        let mut sums = [0u16; 64];
        for p in 1..m {
            let i = p.trailing_zeros() as usize;
            sums[p as usize] = sums[(p - (1 << i)) as usize] + weights[i] as u16;
        }
        let mut hist = vec![0u64; max_sum + 1];
        for p in 0..m {
            hist[sums[p as usize] as usize] |= 1u64 << p;
        }
        // θ = total_weight + 1 yields constant FALSE.
        acc.record(0, || WitnessParams::Ltu {
            n,
            weights: weights[..n].to_vec(),
            theta: total_weight + 1,
        });
        let mut mask = 0u64;
        for theta in (1..=total_weight).rev() {
            mask |= hist[theta as usize];
            acc.record(mask, || WitnessParams::Ltu {
                n,
                weights: weights[..n].to_vec(),
                theta,
            });
        }
        Ok(acc)
    };

    let make_acc = || Accumulator::new(spec.arity, opts.collect_witnesses);
    let acc = (0..num_vectors)
        .into_par_iter()
        .try_fold(make_acc, accumulate)
        .try_reduce(make_acc, |a, b| Ok(a.merge(b)))?;

    Ok(SearchResult {
        spec: *spec,
        functions: acc.functions,
        states_visited: acc.visited,
        states_pruned: acc.pruned,
        witnesses: acc.witnesses,
    })
}

// ---------------------------------------------------------------------------
// nLTU enumeration.

/// One candidate subunit row: nonzero weight vector with entries 0..=k.
struct RowData {
    weights: Vec<u32>,
    rowsum: u32,
    /// Drive per assignment index.
    drives: [u16; 64],
    /// ge_masks[s-1] = bitmask of assignments with drive >= s, s = 1..=rowsum.
    ge_masks: Vec<u64>,
}

fn build_rows(n: usize, k: u32) -> Result<Vec<RowData>> {
    let m = 1u32 << n;
    let num = (u64::from(k) + 1)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::InvalidParams("row space size overflows".into()))?;
    let mut rows = Vec::with_capacity(num as usize - 1);
    for idx in 1..num {
        let mut weights = vec![0u32; n];
        let mut rest = idx;
        for w in weights.iter_mut() {
            *w = (rest % (u64::from(k) + 1)) as u32;
            rest /= u64::from(k) + 1;
        }
        let rowsum: u32 = weights.iter().sum();
        let mut drives = [0u16; 64];
        for p in 1..m {
            let i = p.trailing_zeros() as usize;
            drives[p as usize] = drives[(p - (1 << i)) as usize] + weights[i] as u16;
        }
        let mut ge_masks = vec![0u64; rowsum as usize];
        for p in 0..m {
            for s in 1..=drives[p as usize] {
                ge_masks[s as usize - 1] |= 1u64 << p;
            }
        }
        rows.push(RowData {
            weights,
            rowsum,
            drives,
            ge_masks,
        });
    }
    Ok(rows)
}

struct NltuEnv<'a> {
    rows: &'a [RowData],
    n: usize,
    m: u32,
    max_depth: usize,
    state_cap: u64,
    counter: &'a AtomicU64,
}

/// Mutable scratch carried through the recursion to avoid reallocation.
struct NltuScratch {
    chosen: Vec<u32>,
    sats: Vec<u32>,
    totals: [u16; 64],
    hist: Vec<u64>,
    remaining: [u32; 6],
    group_sats: Vec<u32>,
}

impl NltuScratch {
    fn new(n: usize, k: u32) -> Self {
        NltuScratch {
            chosen: Vec::new(),
            sats: Vec::new(),
            totals: [0u16; 64],
            hist: vec![0u64; n * k as usize + 2],
            remaining: [0u32; 6],
            group_sats: Vec::new(),
        }
    }
}

/// Exact count of ordered duplicates of the current (row, saturation)
/// multiset: the multinomial d! / Π mult!, as a product of binomials.
fn orbit_size(chosen: &[u32], sats: &[u32], group_sats: &mut Vec<u32>) -> u128 {
    fn binomial(a: u64, b: u64) -> u128 {
        let mut r: u128 = 1;
        for i in 1..=b {
            r = r * u128::from(a - b + i) / u128::from(i);
        }
        r
    }

    let mut orbit: u128 = 1;
    let mut cum = 0u64;
    let mut j = 0;
    while j < chosen.len() {
        let mut end = j + 1;
        while end < chosen.len() && chosen[end] == chosen[j] {
            end += 1;
        }
        // Within one repeated row, group equal saturations.
        group_sats.clear();
        group_sats.extend_from_slice(&sats[j..end]);
        group_sats.sort_unstable();
        let mut i = 0;
        while i < group_sats.len() {
            let mut run = i + 1;
            while run < group_sats.len() && group_sats[run] == group_sats[i] {
                run += 1;
            }
            let mult = (run - i) as u64;
            cum += mult;
            orbit = orbit.saturating_mul(binomial(cum, mult));
            i = run;
        }
        j = end;
    }
    orbit
}

/// Evaluates every saturation/threshold combination of the currently chosen
/// rows, starting at subunit `j` with `sat_sum` already committed.
fn nltu_eval_sats(
    env: &NltuEnv<'_>,
    scratch: &mut NltuScratch,
    acc: &mut Accumulator,
    j: usize,
    sat_sum: u32,
    node_states: &mut u64,
    node_pruned: &mut u64,
) {
    if j == scratch.chosen.len() {
        let states = u64::from(sat_sum) + 1;
        *node_states += states;
        let orbit = orbit_size(&scratch.chosen, &scratch.sats, &mut scratch.group_sats);
        let dup = orbit.saturating_sub(1).saturating_mul(u128::from(states));
        *node_pruned = node_pruned.saturating_add(u64::try_from(dup).unwrap_or(u64::MAX));

        for p in 0..env.m {
            scratch.hist[scratch.totals[p as usize] as usize] |= 1u64 << p;
        }
        let chosen = &scratch.chosen;
        let sats = &scratch.sats;
        let rows = env.rows;
        let n = env.n;
        let make_witness = |theta: u32| -> WitnessParams {
            let subunit_weights: Vec<Vec<u32>> = chosen
                .iter()
                .map(|&r| rows[r as usize].weights.clone())
                .collect();
            if subunit_weights.is_empty() {
                // The empty configuration computes constant FALSE; one silent
                // subunit is its smallest valid parameter form.
                WitnessParams::Nltu {
                    n,
                    subunit_weights: vec![vec![0; n]],
                    saturations: vec![1],
                    theta,
                }
            } else {
                WitnessParams::Nltu {
                    n,
                    subunit_weights,
                    saturations: sats.clone(),
                    theta,
                }
            }
        };
        // θ = sat_sum + 1 gives constant FALSE; smaller θ accumulate the
        // histogram from the top.
        acc.record(0, || make_witness(sat_sum + 1));
        let mut mask = 0u64;
        for theta in (1..=sat_sum).rev() {
            mask |= scratch.hist[theta as usize];
            acc.record(mask, || make_witness(theta));
        }
        for t in 0..=sat_sum as usize {
            scratch.hist[t] = 0;
        }
        return;
    }

    let row = &env.rows[scratch.chosen[j] as usize];
    // Saturations on copies of the same row are interchangeable, so visit
    // them in non-decreasing order only; orbit_size reinstates the ordered
    // count.
    let s_min = if j > 0 && scratch.chosen[j] == scratch.chosen[j - 1] {
        scratch.sats[j - 1]
    } else {
        1
    };
    // Raise this subunit's saturation step by step; moving from s-1 to s adds
    // 1 exactly on assignments whose drive reaches s.
    for s in 1..=row.rowsum {
        let mut bits = row.ge_masks[s as usize - 1];
        while bits != 0 {
            let p = bits.trailing_zeros() as usize;
            scratch.totals[p] += 1;
            bits &= bits - 1;
        }
        if s >= s_min {
            scratch.sats[j] = s;
            nltu_eval_sats(env, scratch, acc, j + 1, sat_sum + s, node_states, node_pruned);
        }
    }
    for p in 0..env.m as usize {
        scratch.totals[p] -= row.drives[p];
    }
}

/// Evaluates the current configuration and then extends it with every row
/// index >= `start` that fits the remaining per-input budget.
fn nltu_visit(
    env: &NltuEnv<'_>,
    scratch: &mut NltuScratch,
    acc: &mut Accumulator,
    start: u32,
) -> Result<()> {
    let mut node_states = 0u64;
    let mut node_pruned = 0u64;
    scratch.sats.resize(scratch.chosen.len(), 0);
    nltu_eval_sats(env, scratch, acc, 0, 0, &mut node_states, &mut node_pruned);
    acc.visited += node_states;
    acc.pruned = acc.pruned.saturating_add(node_pruned);
    charge_states(env.counter, env.state_cap, node_states, acc.functions.len())?;

    if scratch.chosen.len() == env.max_depth {
        return Ok(());
    }
    for idx in start..env.rows.len() as u32 {
        let row = &env.rows[idx as usize];
        if row
            .weights
            .iter()
            .zip(&scratch.remaining)
            .any(|(&w, &r)| w > r)
        {
            continue;
        }
        for (i, &w) in row.weights.iter().enumerate() {
            scratch.remaining[i] -= w;
        }
        scratch.chosen.push(idx);
        let deeper = nltu_visit(env, scratch, acc, idx);
        scratch.chosen.pop();
        for (i, &w) in row.weights.iter().enumerate() {
            scratch.remaining[i] += w;
        }
        deeper?;
    }
    Ok(())
}

fn enumerate_nltu(spec: &SearchSpec, opts: EnumerateOptions) -> Result<SearchResult> {
    let n = spec.arity as usize;
    let k = spec.synapse_budget;
    let rows = build_rows(n, k)?;
    // Each nonempty subunit consumes at least one synapse, so depth never
    // usefully exceeds the total budget.
    let max_depth = (spec.max_subunits as usize).min(n * k as usize);
    let counter = AtomicU64::new(0);
    let env = NltuEnv {
        rows: &rows,
        n,
        m: 1u32 << n,
        max_depth,
        state_cap: spec.state_cap,
        counter: &counter,
    };

    let make_acc = || Accumulator::new(spec.arity, opts.collect_witnesses);

    // The empty configuration (no nonempty subunit) computes constant FALSE.
    let mut base = make_acc();
    {
        let mut scratch = NltuScratch::new(n, k);
        scratch.remaining[..n].fill(k);
        nltu_visit(&env, &mut scratch, &mut base, u32::MAX)?;
    }

    // Parallelize over the first (smallest) row of the configuration.
    let acc = (0..rows.len() as u32)
        .into_par_iter()
        .try_fold(make_acc, |mut acc, first| {
            let mut scratch = NltuScratch::new(n, k);
            scratch.remaining[..n].fill(k);
            let row = &rows[first as usize];
            for (i, &w) in row.weights.iter().enumerate() {
                scratch.remaining[i] -= w;
            }
            scratch.chosen.push(first);
            nltu_visit(&env, &mut scratch, &mut acc, first)?;
            Ok::<_, Error>(acc)
        })
        .try_reduce(make_acc, |a, b| Ok(a.merge(b)))?;

    let acc = base.merge(acc);
    Ok(SearchResult {
        spec: *spec,
        functions: acc.functions,
        states_visited: acc.visited,
        states_pruned: acc.pruned,
        witnesses: acc.witnesses,
    })
}

// A start index beyond every row: the empty-configuration visit must not
// extend (extension is handled by the parallel loop over first rows).
// u32::MAX compares greater than any row index.

/// Reference enumerator: iterates ordered tuples of nonzero subunit rows with
/// no canonicalization and no threshold batching. Exponentially slower than
/// [`enumerate_functions`]; it exists so toy-scale tests can confirm that
/// pruning loses nothing.
pub fn enumerate_nltu_naive(spec: &SearchSpec) -> Result<SearchResult> {
    let n = spec.arity as usize;
    let m = 1u32 << n;
    let k = spec.synapse_budget;
    let rows = build_rows(n, k)?;
    let max_depth = (spec.max_subunits as usize).min(n * k as usize);

    let mut functions = FunctionSet::new(n)?;
    functions.insert_mask(0); // empty configuration
    let mut visited = 1u64;

    struct Frame<'a> {
        rows: &'a [RowData],
        m: u32,
        state_cap: u64,
    }

    fn sats_rec(
        fr: &Frame<'_>,
        chosen: &[u32],
        sats: &mut Vec<u32>,
        j: usize,
        functions: &mut FunctionSet,
        visited: &mut u64,
    ) -> Result<()> {
        if j == chosen.len() {
            let sat_sum: u32 = sats.iter().sum();
            for theta in 1..=sat_sum + 1 {
                *visited += 1;
                if *visited > fr.state_cap {
                    return Err(Error::StateCapExceeded {
                        visited: *visited,
                        cap: fr.state_cap,
                        functions_so_far: functions.len(),
                    });
                }
                let mut mask = 0u64;
                for p in 0..fr.m {
                    let total: u32 = chosen
                        .iter()
                        .zip(sats.iter())
                        .map(|(&r, &s)| {
                            u32::from(fr.rows[r as usize].drives[p as usize]).min(s)
                        })
                        .sum();
                    if total >= theta {
                        mask |= 1u64 << p;
                    }
                }
                functions.insert_mask(mask);
            }
            return Ok(());
        }
        for s in 1..=fr.rows[chosen[j] as usize].rowsum {
            sats[j] = s;
            sats_rec(fr, chosen, sats, j + 1, functions, visited)?;
        }
        Ok(())
    }

    fn rows_rec(
        fr: &Frame<'_>,
        n: usize,
        max_depth: usize,
        chosen: &mut Vec<u32>,
        remaining: &mut Vec<u32>,
        functions: &mut FunctionSet,
        visited: &mut u64,
    ) -> Result<()> {
        if !chosen.is_empty() {
            let mut sats = vec![0u32; chosen.len()];
            sats_rec(fr, chosen, &mut sats, 0, functions, visited)?;
        }
        if chosen.len() == max_depth {
            return Ok(());
        }
        for idx in 0..fr.rows.len() as u32 {
            let row = &fr.rows[idx as usize];
            if row.weights.iter().zip(remaining.iter()).any(|(&w, &r)| w > r) {
                continue;
            }
            for i in 0..n {
                remaining[i] -= row.weights[i];
            }
            chosen.push(idx);
            let r = rows_rec(fr, n, max_depth, chosen, remaining, functions, visited);
            chosen.pop();
            for i in 0..n {
                remaining[i] += row.weights[i];
            }
            r?;
        }
        Ok(())
    }

    let fr = Frame {
        rows: &rows,
        m,
        state_cap: spec.state_cap,
    };
    let mut chosen = Vec::new();
    let mut remaining = vec![k; n];
    rows_rec(
        &fr,
        n,
        max_depth,
        &mut chosen,
        &mut remaining,
        &mut functions,
        &mut visited,
    )?;

    Ok(SearchResult {
        spec: *spec,
        functions,
        states_visited: visited,
        states_pruned: 0,
        witnesses: None,
    })
}

/// Sorts subunits into the unique orbit representative: rows ordered
/// lexicographically by (weight row, saturation). The computed function is
/// unchanged because subunit order never affects the somatic sum.
pub fn canonicalize_nltu(params: &NLTUParams) -> NLTUParams {
    let mut pairs: Vec<(Vec<u32>, u32)> = params
        .subunit_weights()
        .iter()
        .cloned()
        .zip(params.saturations().iter().copied())
        .collect();
    pairs.sort();
    let (subunit_weights, saturations): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    NLTUParams::new(subunit_weights, saturations, params.threshold())
        .expect("reordering preserves validity")
}

// ---------------------------------------------------------------------------
// Minimal budget search.

#[derive(Clone, Copy, Debug)]
pub struct BudgetSearchOptions {
    /// Highest budget tried before giving up with an explicit error.
    pub max_budget: u32,
    pub state_cap: u64,
    pub progress: bool,
}

impl Default for BudgetSearchOptions {
    fn default() -> Self {
        BudgetSearchOptions {
            max_budget: 8,
            state_cap: DEFAULT_STATE_CAP,
            progress: false,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BudgetSearchResult {
    /// Smallest budget whose function count reaches the target's cardinality.
    pub budget: u32,
    pub result: SearchResult,
    /// (budget, function count) for every budget tried, in order.
    pub trajectory: Vec<(u32, usize)>,
    /// Whether the final function set equals the target exactly.
    pub equals_target: bool,
    /// Whether every target function is computable at the final budget.
    pub covers_target: bool,
    /// Target functions the model cannot compute at the final budget.
    pub missing_target_count: usize,
}

/// Finds the smallest synapse budget at which the model's function count
/// reaches the target's count, walking k = 1, 2, 3, ...
///
/// The stopping rule compares cardinalities, not sets. For the LTU the two
/// coincide: every LTU function is in any positive-threshold target superset,
/// so reaching the count forces set equality. The nLTU also computes monotone
/// functions outside the target (and can miss some target functions at small
/// budgets), so its count can reach the target's while the sets differ; the
/// result reports set equality, coverage, and the number of missing target
/// functions so that difference is never hidden.
pub fn minimal_budget_for_capacity(
    model_kind: ModelKind,
    n: usize,
    target: &FunctionSet,
    opts: BudgetSearchOptions,
) -> Result<BudgetSearchResult> {
    let arity = check_arity(n)?;
    if target.arity() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            got: target.arity(),
        });
    }
    if opts.max_budget == 0 {
        return Err(Error::InvalidParams("budget cap must be >= 1".into()));
    }

    let mut trajectory = Vec::new();
    let mut best_count = 0usize;
    for k in 1..=opts.max_budget {
        let spec = SearchSpec::new(model_kind, n, k)?.with_state_cap(opts.state_cap);
        let result = enumerate_functions_with(
            &spec,
            EnumerateOptions {
                collect_witnesses: false,
                progress: opts.progress,
            },
        )?;
        let count = result.functions.len();
        trajectory.push((k, count));
        best_count = best_count.max(count);
        if count >= target.len() {
            let equals_target = result.functions == *target;
            let covers_target = target.is_subset_of(&result.functions);
            let missing_target_count = target.count_missing_from(&result.functions);
            return Ok(BudgetSearchResult {
                budget: k,
                result,
                trajectory,
                equals_target,
                covers_target,
                missing_target_count,
            });
        }
    }
    Err(Error::BudgetNotReached {
        cap: opts.max_budget,
        best_budget: opts.max_budget,
        best_count,
        target_count: target.len(),
    })
}
