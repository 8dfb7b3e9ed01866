//! Python bindings: the analytic distribution and bounds, a probe-level
//! `Table`, and the replicated simulation.

use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rhlab_core::analytic::{self, AnalyticError, LoadFactor, ModelKind};
use rhlab_core::hashtable::{self, Discipline, Slot, TableError};
use rhlab_core::simulator::{self, ComparisonReport, ExperimentConfig, SimError, Tolerances};

fn analytic_err(e: AnalyticError) -> PyErr {
    match e {
        AnalyticError::InvalidLoadFactor(_)
        | AnalyticError::InvalidEpsilon(_)
        | AnalyticError::Domain { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn table_err(e: TableError) -> PyErr {
    match e {
        TableError::NotFound(_) => PyKeyError::new_err(e.to_string()),
        TableError::DuplicateKey(_) | TableError::InvalidCenter(_) | TableError::Invalid(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn sim_err(e: SimError) -> PyErr {
    match e {
        SimError::Config(_) => PyValueError::new_err(e.to_string()),
        SimError::Analytic(a) => analytic_err(a),
        SimError::Table(t) => table_err(t),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn load(alpha: f64) -> PyResult<LoadFactor> {
    LoadFactor::new(alpha).map_err(analytic_err)
}

fn model(name: &str) -> PyResult<ModelKind> {
    name.parse().map_err(PyValueError::new_err)
}

fn discipline(name: &str) -> PyResult<Discipline> {
    name.parse().map_err(PyValueError::new_err)
}

/// Converts a report to Python objects through JSON.
fn to_python<'py>(py: Python<'py>, value: &ComparisonReport) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Double tails `qq_1, qq_2, ...` truncated at the first term below `epsilon`.
#[pyfunction]
#[pyo3(signature = (alpha, model_kind = "insert-only", epsilon = analytic::DEFAULT_EPSILON))]
fn rh_tails(alpha: f64, model_kind: &str, epsilon: f64) -> PyResult<Vec<f64>> {
    let tails =
        analytic::rh_tails(load(alpha)?, model(model_kind)?, epsilon).map_err(analytic_err)?;
    Ok(tails.values)
}

/// Point probabilities `Pr{X = i}` for `i = 1, 2, ...`.
#[pyfunction]
#[pyo3(signature = (alpha, model_kind = "insert-only", epsilon = analytic::DEFAULT_EPSILON))]
fn distribution(alpha: f64, model_kind: &str, epsilon: f64) -> PyResult<Vec<f64>> {
    let tails =
        analytic::rh_tails(load(alpha)?, model(model_kind)?, epsilon).map_err(analytic_err)?;
    Ok(analytic::distribution(&tails))
}

#[pyfunction]
#[pyo3(signature = (alpha, model_kind = "insert-only"))]
fn mean_search_cost(alpha: f64, model_kind: &str) -> PyResult<f64> {
    Ok(analytic::mean_search_cost(load(alpha)?, model(model_kind)?))
}

/// `(mean, variance, truncation_error)` of the Robin Hood search cost.
#[pyfunction]
#[pyo3(signature = (alpha, model_kind = "insert-only", epsilon = analytic::DEFAULT_EPSILON))]
fn variance_search_cost(alpha: f64, model_kind: &str, epsilon: f64) -> PyResult<(f64, f64, f64)> {
    let m = analytic::variance_search_cost(load(alpha)?, model(model_kind)?, epsilon)
        .map_err(analytic_err)?;
    Ok((m.mean, m.variance, m.truncation_error))
}

#[pyfunction]
#[pyo3(signature = (alpha, model_kind = "insert-only"))]
fn variance_upper_bound(alpha: f64, model_kind: &str) -> PyResult<f64> {
    analytic::variance_upper_bound(load(alpha)?, model(model_kind)?).map_err(analytic_err)
}

/// Upper bound on `Pr{X >= i}` for the insert-only model.
#[pyfunction]
fn tail_upper_bound(i: u32, alpha: f64) -> PyResult<f64> {
    analytic::tail_upper_bound(i, load(alpha)?).map_err(analytic_err)
}

#[pyfunction]
#[pyo3(signature = (x, alpha, model_kind = "insert-only"))]
fn ode_majorant(x: f64, alpha: f64, model_kind: &str) -> PyResult<f64> {
    analytic::ode_majorant(x, load(alpha)?, model(model_kind)?).map_err(analytic_err)
}

#[pyfunction]
fn lambert_w(y: f64) -> PyResult<f64> {
    analytic::lambert_w(y).map_err(analytic_err)
}

#[pyfunction]
fn logistic_limit_density(x: f64) -> f64 {
    analytic::logistic_limit_density(x)
}

/// Replicated simulation compared with the analytic model; returns the
/// report as a dict.
#[pyfunction]
#[pyo3(signature = (
    m,
    alpha,
    discipline_name = "rh",
    model_kind = "insert-only",
    cycles = None,
    replications = 5,
    seed = 0,
    epsilon = analytic::DEFAULT_EPSILON,
))]
#[allow(clippy::too_many_arguments)]
fn simulate<'py>(
    py: Python<'py>,
    m: usize,
    alpha: f64,
    discipline_name: &str,
    model_kind: &str,
    cycles: Option<u64>,
    replications: u32,
    seed: u64,
    epsilon: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let mut config = ExperimentConfig::new(
        m,
        load(alpha)?,
        discipline(discipline_name)?,
        model(model_kind)?,
    );
    if let Some(c) = cycles {
        config.cycles = c;
    }
    config.replications = replications;
    config.base_seed = seed;
    let report = py
        .detach(|| simulator::run_experiment(&config, epsilon, Tolerances::default(), None))
        .map_err(sim_err)?;
    let out = to_python(py, &report)?;
    out.cast::<PyDict>()?
        .set_item("all_pass", report.all_pass())?;
    Ok(out)
}

/// Open-addressing table with random probing.
#[pyclass(module = "rhlab")]
struct Table {
    inner: hashtable::Table,
    rng: ChaCha8Rng,
}

#[pymethods]
impl Table {
    #[new]
    #[pyo3(signature = (m, discipline_name = "rh", seed = 0))]
    fn new(m: usize, discipline_name: &str, seed: u64) -> PyResult<Self> {
        if !(2..=hashtable::MAX_SLOTS).contains(&m) {
            return Err(PyValueError::new_err(format!(
                "m must be in 2..={}",
                hashtable::MAX_SLOTS
            )));
        }
        Ok(Table {
            inner: hashtable::Table::new(m, discipline(discipline_name)?, seed),
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    /// Inserts a new key; returns `(final_age, slots_inspected, displacements)`.
    fn insert(&mut self, key: u64) -> PyResult<(u32, u64, u32)> {
        // the core table only checks this in debug builds
        if self.inner.search_standard(key).is_ok() {
            return Err(PyValueError::new_err(format!(
                "key {key} is already stored"
            )));
        }
        let r = self.inner.insert(key).map_err(table_err)?;
        Ok((r.final_age, r.slots_inspected, r.displacements))
    }

    /// Marks `key` deleted and returns its age.
    fn remove(&mut self, key: u64) -> PyResult<u32> {
        self.inner.remove(key).map_err(table_err)
    }

    /// Deletes a uniformly chosen key and returns it.
    fn delete_random(&mut self) -> PyResult<u64> {
        self.inner.delete_random(&mut self.rng).map_err(table_err)
    }

    /// Probes needed by a standard search, which equals the key's age.
    fn search(&self, key: u64) -> PyResult<u32> {
        self.inner.search_standard(key).map_err(table_err)
    }

    /// Slots inspected by a mean-centered search around `center`.
    fn search_centered(&self, key: u64, center: f64) -> PyResult<u64> {
        self.inner
            .search_mean_centered(key, center)
            .map_err(table_err)
    }

    fn age_histogram(&self) -> std::collections::BTreeMap<u32, u64> {
        self.inner.age_histogram()
    }

    /// Slot contents: `None` for empty, `"deleted"`, or `(key, age)`.
    fn slots<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.inner
            .slots()
            .iter()
            .map(|s| match *s {
                Slot::Empty => Ok(py.None().into_bound(py)),
                Slot::Deleted => Ok("deleted".into_pyobject(py)?.into_any()),
                Slot::Occupied { key, age } => Ok((key, age).into_pyobject(py)?.into_any()),
            })
            .collect()
    }

    /// CSV snapshot `index,state,key,age`.
    fn snapshot(&self) -> PyResult<String> {
        let mut buf = Vec::new();
        hashtable::write_snapshot(&self.inner, &mut buf)
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        String::from_utf8(buf).map_err(|e| PyRuntimeError::new_err(e.to_string()))
    }

    /// Raises if any structural invariant is broken.
    fn verify(&self) -> PyResult<()> {
        self.inner.verify().map_err(table_err)
    }

    #[getter]
    fn capacity(&self) -> usize {
        self.inner.capacity()
    }

    #[getter]
    fn load_factor(&self) -> f64 {
        self.inner.load_factor()
    }

    #[getter]
    fn discipline(&self) -> &'static str {
        self.inner.discipline().as_str()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __contains__(&self, key: u64) -> bool {
        self.inner.search_standard(key).is_ok()
    }

    fn __repr__(&self) -> String {
        format!(
            "Table(m={}, discipline={:?}, n={})",
            self.inner.capacity(),
            self.inner.discipline().as_str(),
            self.inner.len()
        )
    }
}

#[pymodule]
fn rhlab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", rhlab_core::VERSION)?;
    m.add_function(wrap_pyfunction!(rh_tails, m)?)?;
    m.add_function(wrap_pyfunction!(distribution, m)?)?;
    m.add_function(wrap_pyfunction!(mean_search_cost, m)?)?;
    m.add_function(wrap_pyfunction!(variance_search_cost, m)?)?;
    m.add_function(wrap_pyfunction!(variance_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(tail_upper_bound, m)?)?;
    m.add_function(wrap_pyfunction!(ode_majorant, m)?)?;
    m.add_function(wrap_pyfunction!(lambert_w, m)?)?;
    m.add_function(wrap_pyfunction!(logistic_limit_density, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_class::<Table>()?;
    Ok(())
}
