//! Independent ground truth for the enumerators: all monotone Boolean
//! functions of n <= 6 variables, and an exact decision procedure for whether
//! a function is a positive threshold function (computable by an LTU with
//! nonnegative integer weights and θ >= 1, weights unbounded in principle but
//! certified within an explicit bound).
//!
//! Nothing here shares code with the search module: the capacity target it
//! produces and the LTU enumerator's fixed point are two independent paths
//! that must land on identical sets.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::models::{ltu_truth_table, LTUParams};
use crate::truthtable::{check_arity, full_mask, FunctionSet, TruthTable};

/// Default bound on individual integer weights in the separability search.
/// Every positive threshold function of up to 6 variables has a realization
/// within this bound; tests confirm counts are stable from bound-2 upward.
pub const DEFAULT_WEIGHT_BOUND: u32 = 15;

/// All monotone-increasing functions of n variables, built by the doubling
/// construction: f is monotone iff its restrictions f0 = f(..., x_n=0) and
/// f1 = f(..., x_n=1) are monotone with f0 <= f1 pointwise, so level n is
/// exactly { f0 | (f1 << 2^(n-1)) : f0 ⊆ f1 } over level n-1 pairs.
/// Constant TRUE is included; callers apply their own threshold conventions.
pub fn enumerate_monotone(n: usize) -> Result<FunctionSet> {
    let arity = check_arity(n)?;
    let mut level: Vec<u64> = vec![0b00, 0b10, 0b11];
    for t in 2..=arity {
        let half = 1u32 << (t - 1);
        level = level
            .par_iter()
            .flat_map_iter(|&f1| {
                level
                    .iter()
                    .filter(move |&&f0| f0 & f1 == f0)
                    .map(move |&f0| f0 | (f1 << half))
            })
            .collect();
    }
    let mut out = FunctionSet::new(n)?;
    for mask in level {
        out.insert_mask(mask);
    }
    Ok(out)
}

/// Brute-force reference: filter every mask through the monotonicity
/// predicate. Only feasible through n = 4 (65536 masks); used to cross-check
/// the doubling construction.
pub fn enumerate_monotone_bruteforce(n: usize) -> Result<FunctionSet> {
    check_arity(n)?;
    if n > 4 {
        return Err(Error::InvalidParams(
            "brute-force monotone filter is limited to n <= 4".into(),
        ));
    }
    let mut out = FunctionSet::new(n)?;
    for mask in 0..=full_mask(n as u8) {
        if TruthTable::new(n, mask)?.is_monotone() {
            out.insert_mask(mask);
        }
    }
    Ok(out)
}

/// Outcome of the separability decision, self-certifying in both directions:
/// a separable verdict carries parameters that re-evaluate to the queried
/// function exactly; a non-separable verdict carries, when one exists, a pair
/// of assignments (p, q) with output(p) = 1 and output(q) = 0 although q
/// should dominate p under any nonnegative weighting (a monotonicity breach
/// or a strength-order breach). `violating_pair` is absent when the verdict
/// comes from exhausting the certified weight bound, and for constant TRUE,
/// which fails only by the θ >= 1 convention.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum SeparabilityCertificate {
    Separable { weights: Vec<u32>, theta: u32 },
    NotSeparable { violating_pair: Option<(u32, u32)> },
}

impl SeparabilityCertificate {
    pub fn is_separable(&self) -> bool {
        matches!(self, SeparabilityCertificate::Separable { .. })
    }
}

pub fn is_positive_threshold(tt: &TruthTable) -> Result<SeparabilityCertificate> {
    is_positive_threshold_with_bound(tt, DEFAULT_WEIGHT_BOUND)
}

/// Decides whether some nonnegative integer weight vector (entries <= bound)
/// and θ >= 1 realize `tt` exactly.
///
/// Pipeline: reject non-monotone functions with an adjacent violating pair;
/// handle the constants; compare inputs pairwise by strength (i is at least
/// as strong as j if moving a 1 from position j to position i never drops the
/// output) — an incomparable pair, or any inconsistency with the strength
/// ranking, certifies non-separability because a realizing weight vector
/// would have to satisfy both strict orders at once; finally search weight
/// vectors that are non-increasing along the strength order, pruning with
/// optimistic bounds, and place θ one above the largest false-point sum.
pub fn is_positive_threshold_with_bound(
    tt: &TruthTable,
    bound: u32,
) -> Result<SeparabilityCertificate> {
    if bound == 0 {
        return Err(Error::InvalidParams("weight bound must be >= 1".into()));
    }
    let n = tt.arity() as usize;
    let m = 1u32 << n;
    let mask = tt.mask();

    if let Some(pair) = monotonicity_violation(tt) {
        return Ok(SeparabilityCertificate::NotSeparable {
            violating_pair: Some(pair),
        });
    }
    if mask == 0 {
        return certify(tt, vec![0; n], 1);
    }
    if mask == full_mask(tt.arity()) {
        // The all-zero assignment would need Σ w·0 = 0 >= θ >= 1.
        return Ok(SeparabilityCertificate::NotSeparable {
            violating_pair: None,
        });
    }

    // Strength comparison: strong_ge[i][j] iff replacing input j by input i
    // in any true assignment keeps it true.
    let f = |p: u32| (mask >> p) & 1 == 1;
    let swap_violation = |i: usize, j: usize| -> Option<(u32, u32)> {
        for p in 0..m {
            if (p >> j) & 1 == 1 && (p >> i) & 1 == 0 {
                let q = p - (1 << j) + (1 << i);
                if f(p) && !f(q) {
                    return Some((p, q));
                }
            }
        }
        None
    };
    let mut strong_ge = [[false; 6]; 6];
    let mut violations = [[None; 6]; 6];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                violations[i][j] = swap_violation(i, j);
                strong_ge[i][j] = violations[i][j].is_none();
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if !strong_ge[i][j] && !strong_ge[j][i] {
                return Ok(SeparabilityCertificate::NotSeparable {
                    violating_pair: violations[i][j],
                });
            }
        }
    }

    // Rank inputs strongest-first. For a threshold function the strength
    // relation is a total preorder, so ranking by dominance count is
    // consistent; any inconsistency found below certifies non-separability.
    let mut order: Vec<usize> = (0..n).collect();
    let dominance = |i: usize| (0..n).filter(|&j| j != i && strong_ge[i][j]).count();
    order.sort_by_key(|&i| (std::cmp::Reverse(dominance(i)), i));
    for a in 0..n {
        for b in (a + 1)..n {
            if !strong_ge[order[a]][order[b]] {
                return Ok(SeparabilityCertificate::NotSeparable {
                    violating_pair: violations[order[a]][order[b]],
                });
            }
        }
    }

    // Only extreme points constrain the separation: smallest true points and
    // largest false points, remapped into strength order.
    let remap = |p: u32| -> u32 {
        let mut q = 0u32;
        for (t, &i) in order.iter().enumerate() {
            q |= ((p >> i) & 1) << t;
        }
        q
    };
    let mut min_true = Vec::new();
    let mut max_false = Vec::new();
    for p in 0..m {
        if f(p) {
            if (0..n).all(|i| (p >> i) & 1 == 0 || !f(p - (1 << i))) {
                min_true.push(remap(p));
            }
        } else if (0..n).all(|i| (p >> i) & 1 == 1 || f(p + (1 << i))) {
            max_false.push(remap(p));
        }
    }
    debug_assert!(!min_true.is_empty() && !max_false.is_empty());

    let mut sorted_weights = vec![0u32; n];
    if search_weights(
        &mut sorted_weights,
        0,
        bound,
        &min_true,
        &max_false,
        &mut vec![0u32; min_true.len()],
        &mut vec![0u32; max_false.len()],
    ) {
        let max_false_sum: u32 = max_false
            .iter()
            .map(|&p| weighted_sum(&sorted_weights, p))
            .max()
            .unwrap_or(0);
        let theta = max_false_sum + 1;
        let mut weights = vec![0u32; n];
        for (t, &i) in order.iter().enumerate() {
            weights[i] = sorted_weights[t];
        }
        return certify(tt, weights, theta);
    }

    Ok(SeparabilityCertificate::NotSeparable {
        violating_pair: None,
    })
}

fn monotonicity_violation(tt: &TruthTable) -> Option<(u32, u32)> {
    let mask = tt.mask();
    let m = tt.num_assignments();
    for p in 0..m {
        if (mask >> p) & 1 == 1 {
            for i in 0..tt.arity() as u32 {
                let q = p | (1 << i);
                if q != p && (mask >> q) & 1 == 0 {
                    return Some((p, q));
                }
            }
        }
    }
    None
}

fn weighted_sum(weights: &[u32], point: u32) -> u32 {
    weights
        .iter()
        .enumerate()
        .map(|(t, &w)| if (point >> t) & 1 == 1 { w } else { 0 })
        .sum()
}

/// Depth-first search over non-increasing weight vectors. `true_partials` and
/// `false_partials` hold each extreme point's weighted sum over the already
/// fixed positions. Succeeds as soon as every minimal true sum exceeds every
/// maximal false sum.
fn search_weights(
    weights: &mut Vec<u32>,
    t: usize,
    bound: u32,
    min_true: &[u32],
    max_false: &[u32],
    true_partials: &mut Vec<u32>,
    false_partials: &mut Vec<u32>,
) -> bool {
    let n = weights.len();
    if t == n {
        let lo = *true_partials.iter().min().expect("true points exist");
        let hi = *false_partials.iter().max().expect("false points exist");
        return lo > hi;
    }
    let w_max = if t == 0 { bound } else { weights[t - 1] };
    for w in 0..=w_max {
        weights[t] = w;
        for (s, &p) in true_partials.iter_mut().zip(min_true) {
            *s += w * ((p >> t) & 1);
        }
        for (s, &p) in false_partials.iter_mut().zip(max_false) {
            *s += w * ((p >> t) & 1);
        }
        // Remaining weights are at most w, so the best reachable true sum and
        // the least possible false sum are bounded as follows.
        let optimistic_true = true_partials
            .iter()
            .zip(min_true)
            .map(|(&s, &p)| s + w * (p >> (t + 1)).count_ones())
            .min()
            .expect("true points exist");
        let pessimistic_false = *false_partials.iter().max().expect("false points exist");
        if optimistic_true > pessimistic_false
            && search_weights(
                weights,
                t + 1,
                bound,
                min_true,
                max_false,
                true_partials,
                false_partials,
            )
        {
            return true;
        }
        for (s, &p) in true_partials.iter_mut().zip(min_true) {
            *s -= w * ((p >> t) & 1);
        }
        for (s, &p) in false_partials.iter_mut().zip(max_false) {
            *s -= w * ((p >> t) & 1);
        }
    }
    false
}

/// Re-evaluates candidate parameters before letting them out as a
/// certificate, so a separable verdict can never silently drift from the
/// queried function.
fn certify(tt: &TruthTable, weights: Vec<u32>, theta: u32) -> Result<SeparabilityCertificate> {
    let realized = ltu_truth_table(&LTUParams::new(weights.clone(), theta)?)?;
    if realized != *tt {
        return Err(Error::InvalidParams(format!(
            "internal: certificate {weights:?}, θ={theta} re-evaluates to {} instead of {}",
            realized, tt
        )));
    }
    Ok(SeparabilityCertificate::Separable { weights, theta })
}

/// The capacity target: every monotone function that is positive threshold,
/// excluding constant TRUE (unreachable with θ >= 1), including constant
/// FALSE.
pub fn oracle_capacity(n: usize) -> Result<FunctionSet> {
    oracle_capacity_with_bound(n, DEFAULT_WEIGHT_BOUND)
}

pub fn oracle_capacity_with_bound(n: usize, bound: u32) -> Result<FunctionSet> {
    let monotone = enumerate_monotone(n)?;
    let masks = monotone.sorted_masks();
    let verdicts: Vec<(u64, bool)> = masks
        .par_iter()
        .map(|&mask| {
            let tt = TruthTable::new_unchecked(n as u8, mask);
            is_positive_threshold_with_bound(&tt, bound).map(|c| (mask, c.is_separable()))
        })
        .collect::<Result<_>>()?;
    let mut out = FunctionSet::new(n)?;
    for (mask, separable) in verdicts {
        if separable {
            out.insert_mask(mask);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Disk cache: one JSONL file per arity. The first line is a header with a
// sha256 over the body; the body has one verdict line per monotone function,
// sorted by mask, so regenerated files are byte-identical.

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OracleCacheEntry {
    /// Lowercase hex with 0x prefix.
    pub mask: String,
    pub separable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<u32>,
}

impl OracleCacheEntry {
    pub fn mask_value(&self) -> Result<u64> {
        let hex = self
            .mask
            .strip_prefix("0x")
            .ok_or_else(|| Error::InvalidParams(format!("mask '{}' lacks 0x prefix", self.mask)))?;
        u64::from_str_radix(hex, 16)
            .map_err(|e| Error::InvalidParams(format!("mask '{}': {e}", self.mask)))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheHeader {
    n: usize,
    entries: usize,
    body_sha256: String,
    generated_at: String,
    weight_bound: u32,
}

/// Separability verdict for every monotone function at arity n, sorted by
/// mask. This is the expensive computation the cache exists to save.
pub fn compute_oracle_entries(n: usize, bound: u32) -> Result<Vec<OracleCacheEntry>> {
    let monotone = enumerate_monotone(n)?;
    let masks = monotone.sorted_masks();
    masks
        .par_iter()
        .map(|&mask| {
            let tt = TruthTable::new_unchecked(n as u8, mask);
            let cert = is_positive_threshold_with_bound(&tt, bound)?;
            Ok(match cert {
                SeparabilityCertificate::Separable { weights, theta } => OracleCacheEntry {
                    mask: format!("{mask:#x}"),
                    separable: true,
                    weights: Some(weights),
                    theta: Some(theta),
                },
                SeparabilityCertificate::NotSeparable { .. } => OracleCacheEntry {
                    mask: format!("{mask:#x}"),
                    separable: false,
                    weights: None,
                    theta: None,
                },
            })
        })
        .collect()
}

pub fn cache_file_path(cache_dir: &Path, n: usize) -> std::path::PathBuf {
    cache_dir.join(format!("oracle_n{n}.jsonl"))
}

pub fn write_oracle_cache(
    cache_dir: &Path,
    n: usize,
    bound: u32,
    entries: &[OracleCacheEntry],
) -> Result<()> {
    fs::create_dir_all(cache_dir)?;
    let mut body = String::new();
    for entry in entries {
        body.push_str(&serde_json::to_string(entry)?);
        body.push('\n');
    }
    let header = CacheHeader {
        n,
        entries: entries.len(),
        body_sha256: sha256_hex(body.as_bytes()),
        generated_at: chrono::Utc::now().to_rfc3339(),
        weight_bound: bound,
    };
    let path = cache_file_path(cache_dir, n);
    let mut file = fs::File::create(&path)?;
    writeln!(file, "{}", serde_json::to_string(&header)?)?;
    file.write_all(body.as_bytes())?;
    Ok(())
}

pub fn load_oracle_cache(cache_dir: &Path, n: usize) -> Result<Vec<OracleCacheEntry>> {
    let path = cache_file_path(cache_dir, n);
    let bad = |reason: String| Error::Cache {
        path: path.display().to_string(),
        reason,
    };
    let content = fs::read_to_string(&path)?;
    let (header_line, body) = content
        .split_once('\n')
        .ok_or_else(|| bad("missing header line".into()))?;
    let header: CacheHeader =
        serde_json::from_str(header_line).map_err(|e| bad(format!("bad header: {e}")))?;
    if header.n != n {
        return Err(bad(format!("file is for n={}, wanted n={n}", header.n)));
    }
    if header.body_sha256 != sha256_hex(body.as_bytes()) {
        return Err(bad("checksum mismatch".into()));
    }
    let entries: Vec<OracleCacheEntry> = body
        .lines()
        .map(|line| serde_json::from_str(line).map_err(|e| bad(format!("bad entry: {e}"))))
        .collect::<Result<_>>()?;
    if entries.len() != header.entries {
        return Err(bad(format!(
            "header claims {} entries, found {}",
            header.entries,
            entries.len()
        )));
    }
    Ok(entries)
}

pub fn capacity_from_entries(n: usize, entries: &[OracleCacheEntry]) -> Result<FunctionSet> {
    let mut out = FunctionSet::new(n)?;
    for entry in entries {
        if entry.separable {
            out.insert(TruthTable::new(n, entry.mask_value()?)?)?;
        }
    }
    Ok(out)
}

/// Cached variant of [`oracle_capacity`]: loads and checksum-validates the
/// per-arity file when present, regenerates it (with a warning) when absent
/// or invalid. The cache is an optimization only; deleting it is always safe.
pub fn oracle_capacity_cached(n: usize, cache_dir: Option<&Path>) -> Result<FunctionSet> {
    let Some(dir) = cache_dir else {
        return oracle_capacity(n);
    };
    let path = cache_file_path(dir, n);
    if path.exists() {
        match load_oracle_cache(dir, n) {
            Ok(entries) => return capacity_from_entries(n, &entries),
            Err(err) => {
                eprintln!("[oracle] ignoring invalid cache ({err}); regenerating");
            }
        }
    }
    let entries = compute_oracle_entries(n, DEFAULT_WEIGHT_BOUND)?;
    write_oracle_cache(dir, n, DEFAULT_WEIGHT_BOUND, &entries)?;
    capacity_from_entries(n, &entries)
}

pub(crate) fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_counts_match_bruteforce() {
        let expected = [3usize, 6, 20, 168];
        for (i, &want) in expected.iter().enumerate() {
            let n = i + 1;
            let brute = enumerate_monotone_bruteforce(n).unwrap();
            let doubled = enumerate_monotone(n).unwrap();
            assert_eq!(brute.len(), want, "brute force at n={n}");
            assert_eq!(doubled, brute, "construction vs filter at n={n}");
        }
        assert!(enumerate_monotone_bruteforce(5).is_err());
    }

    #[test]
    fn monotone_count_n5() {
        assert_eq!(enumerate_monotone(5).unwrap().len(), 7581);
    }

    #[test]
    fn and_or_are_separable_with_valid_certificates() {
        for (mask, n) in [(0b1000u64, 2usize), (0b1110, 2), (0xe0, 3)] {
            let tt = TruthTable::new(n, mask).unwrap();
            match is_positive_threshold(&tt).unwrap() {
                SeparabilityCertificate::Separable { weights, theta } => {
                    let realized =
                        ltu_truth_table(&LTUParams::new(weights, theta).unwrap()).unwrap();
                    assert_eq!(realized, tt);
                }
                other => panic!("{tt} should be separable, got {other:?}"),
            }
        }
    }

    #[test]
    fn golden_function_certificate_is_the_drawn_parameter_set() {
        let tt = TruthTable::new(3, 0xe0).unwrap();
        assert_eq!(
            is_positive_threshold(&tt).unwrap(),
            SeparabilityCertificate::Separable {
                weights: vec![1, 1, 2],
                theta: 3
            }
        );
    }

    #[test]
    fn xor_is_rejected_with_a_monotonicity_pair() {
        let tt = TruthTable::new(2, 0b0110).unwrap();
        match is_positive_threshold(&tt).unwrap() {
            SeparabilityCertificate::NotSeparable {
                violating_pair: Some((p, q)),
            } => {
                assert_eq!(p & q, p, "q must dominate p bitwise");
                assert!(tt.evaluate_index(p));
                assert!(!tt.evaluate_index(q));
            }
            other => panic!("XOR should be non-separable with a pair, got {other:?}"),
        }
    }

    #[test]
    fn constants_follow_the_threshold_convention() {
        let falsum = TruthTable::constant_false(3).unwrap();
        assert_eq!(
            is_positive_threshold(&falsum).unwrap(),
            SeparabilityCertificate::Separable {
                weights: vec![0, 0, 0],
                theta: 1
            }
        );
        let verum = TruthTable::constant_true(3).unwrap();
        assert_eq!(
            is_positive_threshold(&verum).unwrap(),
            SeparabilityCertificate::NotSeparable {
                violating_pair: None
            }
        );
    }

    #[test]
    fn two_and_two_or_is_not_threshold() {
        // (x1 and x2) or (x3 and x4): monotone but famously non-separable.
        let mut mask = 0u64;
        for p in 0..16u32 {
            let a = p & 1 == 1 && (p >> 1) & 1 == 1;
            let b = (p >> 2) & 1 == 1 && (p >> 3) & 1 == 1;
            if a || b {
                mask |= 1 << p;
            }
        }
        let tt = TruthTable::new(4, mask).unwrap();
        assert!(tt.is_monotone());
        let cert = is_positive_threshold(&tt).unwrap();
        assert!(!cert.is_separable());
        if let SeparabilityCertificate::NotSeparable {
            violating_pair: Some((p, q)),
        } = cert
        {
            assert!(tt.evaluate_index(p));
            assert!(!tt.evaluate_index(q));
        }
    }

    /// Unpruned scan over all small weight vectors, as an independent way of
    /// deciding separability at toy scale.
    fn separable_direct(tt: &TruthTable, bound: u32) -> bool {
        let n = tt.arity() as usize;
        let mut weights = vec![0u32; n];
        loop {
            let total: u32 = weights.iter().sum();
            for theta in 1..=total + 1 {
                let p = LTUParams::new(weights.clone(), theta).unwrap();
                if ltu_truth_table(&p).unwrap() == *tt {
                    return true;
                }
            }
            let mut t = 0;
            loop {
                if t == n {
                    return false;
                }
                if weights[t] < bound {
                    weights[t] += 1;
                    break;
                }
                weights[t] = 0;
                t += 1;
            }
        }
    }

    #[test]
    fn verdicts_match_direct_scan_at_toy_scale() {
        for n in 1..=3usize {
            for mask in 0..=full_mask(n as u8) {
                let tt = TruthTable::new(n, mask).unwrap();
                let fast = is_positive_threshold(&tt).unwrap().is_separable();
                let slow = separable_direct(&tt, 5);
                assert_eq!(fast, slow, "n={n} mask={mask:#x}");
            }
        }
    }

    #[test]
    fn capacity_counts_and_small_sets() {
        assert_eq!(oracle_capacity(1).unwrap().sorted_masks(), vec![0b00, 0b10]);
        assert_eq!(
            oracle_capacity(2).unwrap().sorted_masks(),
            vec![0b0000, 0b1000, 0b1010, 0b1100, 0b1110]
        );
        assert_eq!(oracle_capacity(3).unwrap().len(), 19);
        assert_eq!(oracle_capacity(4).unwrap().len(), 149);
    }

    #[test]
    fn capacity_is_stable_across_weight_bounds() {
        for n in 1..=4usize {
            let reference = oracle_capacity_with_bound(n, DEFAULT_WEIGHT_BOUND).unwrap();
            for bound in [DEFAULT_WEIGHT_BOUND - 2, DEFAULT_WEIGHT_BOUND - 1] {
                assert_eq!(
                    oracle_capacity_with_bound(n, bound).unwrap(),
                    reference,
                    "n={n} bound={bound}"
                );
            }
        }
    }

    #[test]
    fn capacity_is_a_subset_of_monotone() {
        for n in 1..=4usize {
            let cap = oracle_capacity(n).unwrap();
            let mono = enumerate_monotone(n).unwrap();
            assert!(cap.is_subset_of(&mono), "n={n}");
        }
    }

    #[test]
    fn cache_round_trip_and_corruption_handling() {
        let dir = tempfile::tempdir().unwrap();
        let fresh = oracle_capacity_cached(3, Some(dir.path())).unwrap();
        assert_eq!(fresh.len(), 19);
        let path = cache_file_path(dir.path(), 3);
        assert!(path.exists());

        let cached = oracle_capacity_cached(3, Some(dir.path())).unwrap();
        assert_eq!(cached, fresh);

        let entries = load_oracle_cache(dir.path(), 3).unwrap();
        assert_eq!(entries.len(), 20, "one verdict per monotone function");
        for entry in &entries {
            if entry.separable {
                assert!(entry.weights.is_some() && entry.theta.is_some());
            } else {
                assert!(entry.weights.is_none() && entry.theta.is_none());
            }
        }

        // Flip a byte in the body: the checksum must catch it, and the cached
        // read must fall back to regeneration with a correct result.
        let mut content = std::fs::read_to_string(&path).unwrap();
        let flip_at = content.len() - 3;
        let flipped = if content.as_bytes()[flip_at] == b'e' { 'f' } else { 'e' };
        content.replace_range(flip_at..flip_at + 1, &flipped.to_string());
        std::fs::write(&path, &content).unwrap();
        assert!(matches!(
            load_oracle_cache(dir.path(), 3),
            Err(Error::Cache { .. })
        ));
        let recovered = oracle_capacity_cached(3, Some(dir.path())).unwrap();
        assert_eq!(recovered, fresh);
        load_oracle_cache(dir.path(), 3).expect("regenerated cache is valid again");

        assert!(matches!(
            load_oracle_cache(dir.path(), 2),
            Err(Error::Io(_))
        ));
    }

    #[test]
    fn cache_entries_round_trip_masks() {
        let entry = OracleCacheEntry {
            mask: "0xe0".into(),
            separable: true,
            weights: Some(vec![1, 1, 2]),
            theta: Some(3),
        };
        assert_eq!(entry.mask_value().unwrap(), 0xe0);
        let bad = OracleCacheEntry {
            mask: "e0".into(),
            separable: false,
            weights: None,
            theta: None,
        };
        assert!(bad.mask_value().is_err());
    }
}
