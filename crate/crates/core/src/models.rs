//! Evaluation semantics of the two neuron models.
//!
//! Both models take binary inputs, use nonnegative integer weights (a weight
//! is a synapse count; there is no inhibition), and fire iff a sum reaches an
//! integer threshold θ >= 1.
//!
//! - LTU: fires iff Σ_i w_i·x_i >= θ.
//! - nLTU: synapses are grouped into subunits; subunit j contributes
//!   a_j = min(Σ_i w_{j,i}·x_i, s_j), a hard saturation at level s_j >= 1;
//!   the unit fires iff Σ_j a_j >= θ.
//!
//! With saturation loose enough to never bind (d = 1, s_1 >= Σ w), the nLTU
//! degenerates to the LTU with the same weights — the models only differ when
//! some subunit saturates.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::truthtable::{check_arity, TruthTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LTUParams {
    weights: Vec<u32>,
    threshold: u32,
}

impl LTUParams {
    pub fn new(weights: Vec<u32>, threshold: u32) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidParams("weight vector is empty".into()));
        }
        if threshold == 0 {
            return Err(Error::InvalidParams("threshold must be >= 1".into()));
        }
        Ok(LTUParams { weights, threshold })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn threshold(&self) -> u32 {
        self.threshold
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NLTUParams {
    subunit_weights: Vec<Vec<u32>>,
    saturations: Vec<u32>,
    threshold: u32,
}

impl NLTUParams {
    pub fn new(
        subunit_weights: Vec<Vec<u32>>,
        saturations: Vec<u32>,
        threshold: u32,
    ) -> Result<Self> {
        if subunit_weights.is_empty() {
            return Err(Error::InvalidParams("at least one subunit required".into()));
        }
        let n = subunit_weights[0].len();
        if n == 0 {
            return Err(Error::InvalidParams("subunit rows are empty".into()));
        }
        if subunit_weights.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidParams(
                "subunit weight rows have differing lengths".into(),
            ));
        }
        if saturations.len() != subunit_weights.len() {
            return Err(Error::InvalidParams(format!(
                "{} saturation levels for {} subunits",
                saturations.len(),
                subunit_weights.len()
            )));
        }
        if saturations.iter().any(|&s| s == 0) {
            return Err(Error::InvalidParams("saturation levels must be >= 1".into()));
        }
        if threshold == 0 {
            return Err(Error::InvalidParams("threshold must be >= 1".into()));
        }
        Ok(NLTUParams {
            subunit_weights,
            saturations,
            threshold,
        })
    }

    pub fn n(&self) -> usize {
        self.subunit_weights[0].len()
    }

    pub fn num_subunits(&self) -> usize {
        self.subunit_weights.len()
    }

    pub fn subunit_weights(&self) -> &[Vec<u32>] {
        &self.subunit_weights
    }

    pub fn saturations(&self) -> &[u32] {
        &self.saturations
    }

    pub fn threshold(&self) -> u32 {
        self.threshold
    }
}

/// 1 iff Σ_i w_i·x_i >= θ.
pub fn ltu_output(params: &LTUParams, assignment: &[bool]) -> Result<bool> {
    if assignment.len() != params.n() {
        return Err(Error::AssignmentLength {
            expected: params.n(),
            got: assignment.len(),
        });
    }
    let sum: u32 = params
        .weights
        .iter()
        .zip(assignment)
        .map(|(&w, &x)| if x { w } else { 0 })
        .sum();
    Ok(sum >= params.threshold)
}

/// 1 iff Σ_j min(Σ_i w_{j,i}·x_i, s_j) >= θ.
pub fn nltu_output(params: &NLTUParams, assignment: &[bool]) -> Result<bool> {
    if assignment.len() != params.n() {
        return Err(Error::AssignmentLength {
            expected: params.n(),
            got: assignment.len(),
        });
    }
    let mut total = 0u32;
    for (row, &sat) in params.subunit_weights.iter().zip(&params.saturations) {
        let drive: u32 = row
            .iter()
            .zip(assignment)
            .map(|(&w, &x)| if x { w } else { 0 })
            .sum();
        total += drive.min(sat);
    }
    Ok(total >= params.threshold)
}

/// Truth table over all 2^n assignments; n <= 6 required.
pub fn ltu_truth_table(params: &LTUParams) -> Result<TruthTable> {
    let arity = check_arity(params.n())?;
    let mut mask = 0u64;
    for p in 0..(1u32 << arity) {
        let sum: u32 = params
            .weights
            .iter()
            .enumerate()
            .map(|(i, &w)| if (p >> i) & 1 == 1 { w } else { 0 })
            .sum();
        if sum >= params.threshold {
            mask |= 1u64 << p;
        }
    }
    Ok(TruthTable::new_unchecked(arity, mask))
}

/// Truth table over all 2^n assignments; n <= 6 required.
pub fn nltu_truth_table(params: &NLTUParams) -> Result<TruthTable> {
    let arity = check_arity(params.n())?;
    let mut mask = 0u64;
    for p in 0..(1u32 << arity) {
        let mut total = 0u32;
        for (row, &sat) in params.subunit_weights.iter().zip(&params.saturations) {
            let drive: u32 = row
                .iter()
                .enumerate()
                .map(|(i, &w)| if (p >> i) & 1 == 1 { w } else { 0 })
                .sum();
            total += drive.min(sat);
        }
        if total >= params.threshold {
            mask |= 1u64 << p;
        }
    }
    Ok(TruthTable::new_unchecked(arity, mask))
}

/// Parameter set attached to a function as evidence that the model computes
/// it. The serialized form is the JSON witness schema used by witness dumps
/// and oracle caches.
///
/// The derived ordering makes "smallest witness" well defined, which keeps
/// witness maps deterministic under parallel merging.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum WitnessParams {
    Ltu {
        n: usize,
        weights: Vec<u32>,
        theta: u32,
    },
    Nltu {
        n: usize,
        subunit_weights: Vec<Vec<u32>>,
        saturations: Vec<u32>,
        theta: u32,
    },
}

impl WitnessParams {
    pub fn from_ltu(params: &LTUParams) -> Self {
        WitnessParams::Ltu {
            n: params.n(),
            weights: params.weights.clone(),
            theta: params.threshold,
        }
    }

    pub fn from_nltu(params: &NLTUParams) -> Self {
        WitnessParams::Nltu {
            n: params.n(),
            subunit_weights: params.subunit_weights.clone(),
            saturations: params.saturations.clone(),
            theta: params.threshold,
        }
    }

    /// Recomputes the truth table from the stored parameters, so a witness
    /// can be checked against the function it claims to realize.
    pub fn reevaluate(&self) -> Result<TruthTable> {
        match self {
            WitnessParams::Ltu { weights, theta, .. } => {
                ltu_truth_table(&LTUParams::new(weights.clone(), *theta)?)
            }
            WitnessParams::Nltu {
                subunit_weights,
                saturations,
                theta,
                ..
            } => nltu_truth_table(&NLTUParams::new(
                subunit_weights.clone(),
                saturations.clone(),
                *theta,
            )?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig_ltu() -> LTUParams {
        LTUParams::new(vec![1, 1, 2], 3).unwrap()
    }

    /// Two subunits: {A, B} saturating at 1, {C} saturating at 1, θ = 2.
    fn fig_nltu() -> NLTUParams {
        NLTUParams::new(vec![vec![1, 1, 0], vec![0, 0, 1]], vec![1, 1], 2).unwrap()
    }

    #[test]
    fn ltu_output_golden_assignments() {
        let p = fig_ltu();
        assert!(!ltu_output(&p, &[true, true, false]).unwrap()); // A,B on: 2 < 3
        assert!(ltu_output(&p, &[true, false, true]).unwrap()); // A,C on: 3 >= 3
        assert!(ltu_output(&p, &[false, true, true]).unwrap()); // B,C on: 3 >= 3

        let zeros = LTUParams::new(vec![0, 0, 0], 1).unwrap();
        for p_idx in 0..8u32 {
            let assignment: Vec<bool> = (0..3).map(|i| (p_idx >> i) & 1 == 1).collect();
            assert!(!ltu_output(&zeros, &assignment).unwrap());
        }
    }

    #[test]
    fn nltu_output_golden_assignments() {
        let p = fig_nltu();
        // A and B share a subunit saturating at 1, so together they still
        // contribute 1 and the soma stays below θ = 2.
        assert!(!nltu_output(&p, &[true, true, false]).unwrap());
        assert!(nltu_output(&p, &[true, false, true]).unwrap()); // 1 + 1 >= 2
        assert!(nltu_output(&p, &[false, true, true]).unwrap());
        assert!(!nltu_output(&p, &[false, false, true]).unwrap()); // 0 + 1 < 2
    }

    #[test]
    fn truth_tables_of_the_golden_example_coincide() {
        let ltu = ltu_truth_table(&fig_ltu()).unwrap();
        let nltu = nltu_truth_table(&fig_nltu()).unwrap();
        assert_eq!(ltu.mask(), 0xe0);
        assert_eq!(ltu, nltu);
    }

    #[test]
    fn small_ltu_tables() {
        let or2 = ltu_truth_table(&LTUParams::new(vec![1, 1], 1).unwrap()).unwrap();
        assert_eq!(or2.mask(), 0b1110);
        let and2 = ltu_truth_table(&LTUParams::new(vec![1, 1], 2).unwrap()).unwrap();
        assert_eq!(and2.mask(), 0b1000);
    }

    #[test]
    fn nltu_saturation_at_one_keeps_or() {
        let p = NLTUParams::new(vec![vec![1, 1]], vec![1], 1).unwrap();
        assert_eq!(nltu_truth_table(&p).unwrap().mask(), 0b1110);
    }

    #[test]
    fn nltu_threshold_above_total_saturation_is_constant_false() {
        let p = NLTUParams::new(vec![vec![1, 1, 0], vec![0, 0, 1]], vec![1, 1], 3).unwrap();
        assert_eq!(nltu_truth_table(&p).unwrap().mask(), 0);
    }

    #[test]
    fn unsaturated_single_subunit_reduces_to_ltu() {
        // Exhaustive over n=2, weights 0..=2, every valid θ.
        for w0 in 0..=2u32 {
            for w1 in 0..=2u32 {
                let total = w0 + w1;
                for theta in 1..=total + 1 {
                    let ltu = ltu_truth_table(&LTUParams::new(vec![w0, w1], theta).unwrap())
                        .unwrap();
                    let nltu = nltu_truth_table(
                        &NLTUParams::new(vec![vec![w0, w1]], vec![total.max(1)], theta).unwrap(),
                    )
                    .unwrap();
                    assert_eq!(ltu, nltu, "w=({w0},{w1}) theta={theta}");
                }
            }
        }
    }

    #[test]
    fn produced_tables_are_monotone() {
        for w0 in 0..=2u32 {
            for w1 in 0..=2u32 {
                for w2 in 0..=2u32 {
                    for theta in 1..=7u32 {
                        let tt =
                            ltu_truth_table(&LTUParams::new(vec![w0, w1, w2], theta).unwrap())
                                .unwrap();
                        assert!(tt.is_monotone());
                        let nt = nltu_truth_table(
                            &NLTUParams::new(
                                vec![vec![w0, w1, 0], vec![0, 0, w2]],
                                vec![2, 1],
                                theta,
                            )
                            .unwrap(),
                        )
                        .unwrap();
                        assert!(nt.is_monotone());
                    }
                }
            }
        }
    }

    #[test]
    fn tightening_saturation_never_turns_zero_into_one() {
        // n=2, one subunit with both inputs.
        for w0 in 0..=2u32 {
            for w1 in 0..=2u32 {
                let total = w0 + w1;
                for theta in 1..=total.max(1) + 1 {
                    for s in 1..=total.max(1) {
                        for s_tight in 1..=s {
                            let loose = nltu_truth_table(
                                &NLTUParams::new(vec![vec![w0, w1]], vec![s], theta).unwrap(),
                            )
                            .unwrap();
                            let tight = nltu_truth_table(
                                &NLTUParams::new(vec![vec![w0, w1]], vec![s_tight], theta)
                                    .unwrap(),
                            )
                            .unwrap();
                            // Every 1 of the tight table is a 1 of the loose one.
                            assert_eq!(tight.mask() & !loose.mask(), 0);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subunit_order_does_not_matter() {
        let a = NLTUParams::new(vec![vec![1, 1, 0], vec![0, 0, 1]], vec![1, 1], 2).unwrap();
        let b = NLTUParams::new(vec![vec![0, 0, 1], vec![1, 1, 0]], vec![1, 1], 2).unwrap();
        assert_eq!(
            nltu_truth_table(&a).unwrap(),
            nltu_truth_table(&b).unwrap()
        );
    }

    #[test]
    fn constructor_validation() {
        assert!(LTUParams::new(vec![], 1).is_err());
        assert!(LTUParams::new(vec![1], 0).is_err());
        assert!(NLTUParams::new(vec![], vec![], 1).is_err());
        assert!(NLTUParams::new(vec![vec![1], vec![1, 2]], vec![1, 1], 1).is_err());
        assert!(NLTUParams::new(vec![vec![1]], vec![0], 1).is_err());
        assert!(NLTUParams::new(vec![vec![1]], vec![1], 0).is_err());
        assert!(NLTUParams::new(vec![vec![1]], vec![1, 1], 1).is_err());
    }

    #[test]
    fn witness_json_shapes() {
        let w = WitnessParams::from_ltu(&fig_ltu());
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["model"], "ltu");
        assert_eq!(v["n"], 3);
        assert_eq!(v["weights"], serde_json::json!([1, 1, 2]));
        assert_eq!(v["theta"], 3);

        let w = WitnessParams::from_nltu(&fig_nltu());
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["model"], "nltu");
        assert_eq!(v["subunit_weights"], serde_json::json!([[1, 1, 0], [0, 0, 1]]));
        assert_eq!(v["saturations"], serde_json::json!([1, 1]));
        assert_eq!(v["theta"], 2);

        assert_eq!(w.reevaluate().unwrap().mask(), 0xe0);
    }
}
