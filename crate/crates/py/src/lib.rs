//! Python bindings for the exact threshold-neuron enumeration library.
//!
//! The module mirrors the Rust crate's main operations: truth tables built
//! from explicit neuron parameters, exhaustive function enumeration under
//! per-input synapse budgets, the independent linear-separability oracle, the
//! minimal-budget search, and the CSV report pipelines behind the `nltu`
//! command-line tool. Heavy computations release the interpreter lock and run
//! on all cores.

use std::path::PathBuf;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use nltu_core::experiments::{run_figure2, run_figure3, verify_figure1, ExperimentOptions};
use nltu_core::models::{LTUParams, NLTUParams, WitnessParams};
use nltu_core::oracle::{
    enumerate_monotone, is_positive_threshold_with_bound, oracle_capacity_cached,
    SeparabilityCertificate, DEFAULT_WEIGHT_BOUND,
};
use nltu_core::search::{
    ltu_single_synapse_closed_form, minimal_budget_for_capacity, BudgetSearchOptions,
    EnumerateOptions, ModelKind, SearchSpec, DEFAULT_STATE_CAP,
};
use nltu_core::truthtable::TruthTable as CoreTable;

fn to_py_err(err: nltu_core::Error) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn parse_model(model: &str) -> PyResult<ModelKind> {
    model.parse().map_err(to_py_err)
}

/// A Boolean function of up to six inputs, stored as a 2^n-bit mask whose
/// bit p holds the output on the assignment with binary encoding p
/// (input i contributes bit i).
#[pyclass(module = "nltu_py", frozen)]
#[derive(Clone)]
struct TruthTable {
    inner: CoreTable,
}

#[pymethods]
impl TruthTable {
    #[new]
    fn new(n: usize, mask: u64) -> PyResult<Self> {
        Ok(TruthTable {
            inner: CoreTable::new(n, mask).map_err(to_py_err)?,
        })
    }

    /// Number of inputs.
    #[getter]
    fn n(&self) -> usize {
        self.inner.arity() as usize
    }

    /// The output column as an integer bit mask.
    #[getter]
    fn mask(&self) -> u64 {
        self.inner.mask()
    }

    /// The mask formatted as lowercase hex, e.g. "0xe0".
    fn hex(&self) -> String {
        self.inner.hex()
    }

    /// Output on one explicit assignment, given as a list of n booleans.
    fn evaluate(&self, assignment: Vec<bool>) -> PyResult<bool> {
        self.inner.evaluate(&assignment).map_err(to_py_err)
    }

    /// True when flipping any input from 0 to 1 never flips the output
    /// from 1 to 0.
    fn is_monotone(&self) -> bool {
        self.inner.is_monotone()
    }

    fn __repr__(&self) -> String {
        format!("TruthTable(n={}, mask={})", self.inner.arity(), self.inner.hex())
    }

    fn __eq__(&self, other: &TruthTable) -> bool {
        self.inner == other.inner
    }

    fn __hash__(&self) -> u64 {
        (u64::from(self.inner.arity()) << 58) ^ self.inner.mask()
    }
}

/// Truth table of the neuron 1[Σ_i weights[i]·x_i >= theta].
#[pyfunction]
fn ltu_truth_table(weights: Vec<u32>, theta: u32) -> PyResult<TruthTable> {
    let params = LTUParams::new(weights, theta).map_err(to_py_err)?;
    Ok(TruthTable {
        inner: nltu_core::models::ltu_truth_table(&params).map_err(to_py_err)?,
    })
}

/// Truth table of the neuron 1[Σ_j min(Σ_i subunit_weights[j][i]·x_i,
/// saturations[j]) >= theta].
#[pyfunction]
fn nltu_truth_table(
    subunit_weights: Vec<Vec<u32>>,
    saturations: Vec<u32>,
    theta: u32,
) -> PyResult<TruthTable> {
    let params = NLTUParams::new(subunit_weights, saturations, theta).map_err(to_py_err)?;
    Ok(TruthTable {
        inner: nltu_core::models::nltu_truth_table(&params).map_err(to_py_err)?,
    })
}

fn witness_dict<'py>(py: Python<'py>, witness: &WitnessParams) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new_bound(py);
    match witness {
        WitnessParams::Ltu { n, weights, theta } => {
            dict.set_item("model", "ltu")?;
            dict.set_item("n", n)?;
            dict.set_item("weights", weights.clone())?;
            dict.set_item("theta", theta)?;
        }
        WitnessParams::Nltu {
            n,
            subunit_weights,
            saturations,
            theta,
        } => {
            dict.set_item("model", "nltu")?;
            dict.set_item("n", n)?;
            dict.set_item("subunit_weights", subunit_weights.clone())?;
            dict.set_item("saturations", saturations.clone())?;
            dict.set_item("theta", theta)?;
        }
    }
    Ok(dict)
}

/// Enumerates every function the model computes at the given per-input
/// synapse budget.
///
/// Returns a dict with `function_count`, the sorted list of `masks`,
/// `states_visited`, `states_pruned`, and, when `witnesses=True`, a
/// `witnesses` dict mapping each mask to one realizing parameter set.
#[pyfunction]
#[pyo3(signature = (model, n, budget, d_max=None, state_cap=None, witnesses=false))]
fn enumerate_functions<'py>(
    py: Python<'py>,
    model: &str,
    n: usize,
    budget: u32,
    d_max: Option<usize>,
    state_cap: Option<u64>,
    witnesses: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let model_kind = parse_model(model)?;
    let mut spec = SearchSpec::new(model_kind, n, budget).map_err(to_py_err)?;
    if let Some(d) = d_max {
        spec = spec.with_max_subunits(d).map_err(to_py_err)?;
    }
    spec = spec.with_state_cap(state_cap.unwrap_or(DEFAULT_STATE_CAP));
    let result = py
        .allow_threads(|| {
            nltu_core::search::enumerate_functions_with(
                &spec,
                EnumerateOptions {
                    collect_witnesses: witnesses,
                    progress: false,
                },
            )
        })
        .map_err(to_py_err)?;

    let dict = PyDict::new_bound(py);
    dict.set_item("model", model_kind.to_string())?;
    dict.set_item("n", n)?;
    dict.set_item("budget", budget)?;
    dict.set_item("function_count", result.functions.len())?;
    dict.set_item("masks", result.functions.sorted_masks())?;
    dict.set_item("states_visited", result.states_visited)?;
    dict.set_item("states_pruned", result.states_pruned)?;
    if let Some(map) = &result.witnesses {
        let witness_map = PyDict::new_bound(py);
        for (mask, params) in map {
            witness_map.set_item(mask, witness_dict(py, params)?)?;
        }
        dict.set_item("witnesses", witness_map)?;
    }
    Ok(dict)
}

/// Sorted masks of every monotone Boolean function of n inputs.
#[pyfunction]
fn monotone_functions(py: Python<'_>, n: usize) -> PyResult<Vec<u64>> {
    let set = py
        .allow_threads(|| enumerate_monotone(n))
        .map_err(to_py_err)?;
    Ok(set.sorted_masks())
}

/// Sorted masks of every positive-threshold (linearly separable with
/// nonnegative integer weights, theta >= 1) function of n inputs, decided by
/// the independent oracle. `cache_dir` reuses/creates a JSONL result cache.
#[pyfunction]
#[pyo3(signature = (n, cache_dir=None))]
fn oracle_capacity(py: Python<'_>, n: usize, cache_dir: Option<PathBuf>) -> PyResult<Vec<u64>> {
    let set = py
        .allow_threads(|| oracle_capacity_cached(n, cache_dir.as_deref()))
        .map_err(to_py_err)?;
    Ok(set.sorted_masks())
}

/// Decides whether one function is a positive-threshold function.
///
/// Returns a dict with `separable` plus either certified `weights` and
/// `theta` (re-verified against the function before being returned) or, for
/// non-monotone inputs, the `violating_pair` of assignment indices.
#[pyfunction]
#[pyo3(signature = (n, mask, bound=DEFAULT_WEIGHT_BOUND))]
fn separability<'py>(py: Python<'py>, n: usize, mask: u64, bound: u32) -> PyResult<Bound<'py, PyDict>> {
    let table = CoreTable::new(n, mask).map_err(to_py_err)?;
    let certificate = py
        .allow_threads(|| is_positive_threshold_with_bound(&table, bound))
        .map_err(to_py_err)?;
    let dict = PyDict::new_bound(py);
    match certificate {
        SeparabilityCertificate::Separable { weights, theta } => {
            dict.set_item("separable", true)?;
            dict.set_item("weights", weights)?;
            dict.set_item("theta", theta)?;
        }
        SeparabilityCertificate::NotSeparable { violating_pair } => {
            dict.set_item("separable", false)?;
            dict.set_item("violating_pair", violating_pair)?;
        }
    }
    Ok(dict)
}

/// Smallest per-input synapse budget at which the model's function count
/// reaches the separable-capacity count for n inputs.
///
/// Returns a dict with `budget`, `function_count`, the `(budget, count)`
/// `trajectory`, and the set-level diagnostics `equals_target`,
/// `covers_target`, and `missing_target_count` (the count rule can be met
/// while some separable functions remain uncomputable).
#[pyfunction]
#[pyo3(signature = (model, n, max_budget=8, cache_dir=None))]
fn minimal_budget<'py>(
    py: Python<'py>,
    model: &str,
    n: usize,
    max_budget: u32,
    cache_dir: Option<PathBuf>,
) -> PyResult<Bound<'py, PyDict>> {
    let model_kind = parse_model(model)?;
    let outcome = py
        .allow_threads(|| {
            let target = oracle_capacity_cached(n, cache_dir.as_deref())?;
            minimal_budget_for_capacity(
                model_kind,
                n,
                &target,
                BudgetSearchOptions {
                    max_budget,
                    ..BudgetSearchOptions::default()
                },
            )
        })
        .map_err(to_py_err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("model", model_kind.to_string())?;
    dict.set_item("n", n)?;
    dict.set_item("budget", outcome.budget)?;
    dict.set_item("function_count", outcome.result.functions.len())?;
    dict.set_item("trajectory", outcome.trajectory)?;
    dict.set_item("equals_target", outcome.equals_target)?;
    dict.set_item("covers_target", outcome.covers_target)?;
    dict.set_item("missing_target_count", outcome.missing_target_count)?;
    Ok(dict)
}

/// Exact count of n-input functions the plain threshold model computes at
/// one synapse per input: sum over m of C(n, m) * m, plus 1.
#[pyfunction]
fn ltu_single_synapse_count(n: usize) -> u64 {
    ltu_single_synapse_closed_form(n)
}

fn experiment_options(n_values: Option<Vec<usize>>, cache_dir: Option<PathBuf>) -> ExperimentOptions {
    let mut opts = ExperimentOptions {
        cache_dir,
        progress: false,
        ..ExperimentOptions::default()
    };
    if let Some(values) = n_values {
        opts.n_values = values;
    }
    opts
}

/// CSV report of minimal budgets to reach separable capacity
/// (default n = 3, 4, 5).
#[pyfunction]
#[pyo3(signature = (n_values=None, cache_dir=None))]
fn figure2_csv(
    py: Python<'_>,
    n_values: Option<Vec<usize>>,
    cache_dir: Option<PathBuf>,
) -> PyResult<String> {
    let opts = experiment_options(n_values, cache_dir);
    let report = py.allow_threads(|| run_figure2(&opts)).map_err(to_py_err)?;
    Ok(report.to_csv())
}

/// CSV report of function counts at one synapse per input
/// (default n = 3, 4, 5).
#[pyfunction]
#[pyo3(signature = (n_values=None, cache_dir=None))]
fn figure3_csv(
    py: Python<'_>,
    n_values: Option<Vec<usize>>,
    cache_dir: Option<PathBuf>,
) -> PyResult<String> {
    let opts = experiment_options(n_values, cache_dir);
    let report = py.allow_threads(|| run_figure3(&opts)).map_err(to_py_err)?;
    Ok(report.to_csv())
}

/// Re-derives the worked three-input example end to end and returns the
/// verification report as a JSON string (field `all_pass` summarizes it).
#[pyfunction]
fn worked_example_report(py: Python<'_>) -> PyResult<String> {
    let report = py.allow_threads(verify_figure1).map_err(to_py_err)?;
    report.to_json().map_err(to_py_err)
}

#[pymodule]
fn nltu_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<TruthTable>()?;
    m.add_function(wrap_pyfunction!(ltu_truth_table, m)?)?;
    m.add_function(wrap_pyfunction!(nltu_truth_table, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_functions, m)?)?;
    m.add_function(wrap_pyfunction!(monotone_functions, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_capacity, m)?)?;
    m.add_function(wrap_pyfunction!(separability, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_budget, m)?)?;
    m.add_function(wrap_pyfunction!(ltu_single_synapse_count, m)?)?;
    m.add_function(wrap_pyfunction!(figure2_csv, m)?)?;
    m.add_function(wrap_pyfunction!(figure3_csv, m)?)?;
    m.add_function(wrap_pyfunction!(worked_example_report, m)?)?;
    m.add("DEFAULT_WEIGHT_BOUND", DEFAULT_WEIGHT_BOUND)?;
    Ok(())
}
