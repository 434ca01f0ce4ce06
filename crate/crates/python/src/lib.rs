//! Python bindings for the `crie` crate.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use crie::bounds::{audit_case, BoundReport};
use crie::entropy::{crie_all, dynamic_cre};
use crie::shape::{certify_icrie_dcrie, default_tau1_grid, DEFAULT_TAU1_POINTS};
use crie::{CrieMethod, Dist, QuadratureConfig, SampleData, Window};

create_exception!(pycrie, CrieError, PyValueError);

fn err(e: crie::Error) -> PyErr {
    CrieError::new_err(e.to_string())
}

/// A lifetime distribution built from a text spec such as `exp:0.5`,
/// `lomax:2,0.5` or `tilt(betac:2;0.25)`.
#[pyclass(name = "Distribution", frozen)]
struct PyDistribution {
    spec: String,
    inner: Dist,
}

#[pymethods]
impl PyDistribution {
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        Ok(Self { spec: spec.to_string(), inner: crie::parse_distribution(spec).map_err(err)? })
    }

    fn survival(&self, x: f64) -> f64 {
        self.inner.survival(x)
    }

    fn cdf(&self, x: f64) -> f64 {
        self.inner.cdf(x)
    }

    fn pdf(&self, x: f64) -> f64 {
        self.inner.pdf(x)
    }

    fn quantile(&self, q: f64) -> PyResult<f64> {
        if !(0.0..=1.0).contains(&q) {
            return Err(PyValueError::new_err(format!("quantile level must be in [0, 1], got {q}")));
        }
        Ok(self.inner.quantile(q))
    }

    fn mean(&self) -> f64 {
        self.inner.mean()
    }

    fn support(&self) -> (f64, f64) {
        self.inner.support()
    }

    /// Cumulative residual entropy of the residual life at age `t`.
    fn dynamic_cre(&self, t: f64) -> PyResult<f64> {
        dynamic_cre(&self.inner, t).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Distribution({:?})", self.spec)
    }
}

/// The distribution conditioned on `tau1 <= X <= tau2`.
#[pyclass(name = "TruncatedView", frozen)]
struct PyTruncatedView {
    inner: crie::TruncatedView,
}

#[pymethods]
impl PyTruncatedView {
    #[new]
    #[pyo3(signature = (dist, tau1, tau2, abs_tol=None, rel_tol=None))]
    fn new(dist: &PyDistribution, tau1: f64, tau2: f64, abs_tol: Option<f64>, rel_tol: Option<f64>) -> PyResult<Self> {
        let d = QuadratureConfig::default();
        let cfg = QuadratureConfig::new(abs_tol.unwrap_or(d.abs_tol), rel_tol.unwrap_or(d.rel_tol), d.max_subdivisions)
            .map_err(err)?;
        let w = Window::new(tau1, tau2).map_err(err)?;
        Ok(Self { inner: crie::TruncatedView::with_config(dist.inner.clone(), w, cfg).map_err(err)? })
    }

    #[getter]
    fn tau1(&self) -> f64 {
        self.inner.tau1()
    }

    #[getter]
    fn tau2(&self) -> f64 {
        self.inner.tau2()
    }

    #[getter]
    fn mass(&self) -> f64 {
        self.inner.mass()
    }

    #[pyo3(signature = (method="definition"))]
    fn crie(&self, method: &str) -> PyResult<f64> {
        let m: CrieMethod = method.parse().map_err(err)?;
        crie::crie(&self.inner, m).map_err(err)
    }

    /// All four representations keyed by method name.
    fn crie_all<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let vals = crie_all(&self.inner).map_err(err)?;
        let out = PyDict::new(py);
        for (m, v) in CrieMethod::ALL.iter().zip(vals) {
            out.set_item(m.as_str(), v)?;
        }
        Ok(out)
    }

    fn m1(&self) -> PyResult<f64> {
        self.inner.m1().map_err(err)
    }

    fn m2(&self) -> PyResult<f64> {
        self.inner.m2().map_err(err)
    }

    fn mean(&self) -> PyResult<f64> {
        self.inner.mu().map_err(err)
    }

    fn variance(&self) -> PyResult<f64> {
        self.inner.cond_var().map_err(err)
    }

    fn survival(&self, x: f64) -> PyResult<f64> {
        self.inner.trunc_survival(x).map_err(err)
    }

    fn pdf(&self, x: f64) -> PyResult<f64> {
        self.inner.trunc_pdf(x).map_err(err)
    }

    fn gfr1(&self, x: f64) -> PyResult<f64> {
        self.inner.gfr1(x).map_err(err)
    }

    fn gfr2(&self, x: f64) -> PyResult<f64> {
        self.inner.gfr2(x).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("TruncatedView(window={})", self.inner.window())
    }
}

fn report_dict<'py>(py: Python<'py>, r: &BoundReport) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("bound_id", &r.bound_id)?;
    d.set_item("statement", &r.statement)?;
    d.set_item("hypotheses_met", r.hypotheses_met)?;
    d.set_item("lhs", r.lhs)?;
    d.set_item("rhs", r.rhs)?;
    d.set_item("slack", r.slack)?;
    d.set_item("verdict", r.verdict.as_str())?;
    d.set_item("discrepancy", r.discrepancy.clone())?;
    Ok(d)
}

/// Every bound report for one window.
#[pyfunction]
fn audit<'py>(py: Python<'py>, dist: &PyDistribution, tau1: f64, tau2: f64) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let w = Window::new(tau1, tau2).map_err(err)?;
    let reports = py.detach(|| audit_case(&dist.inner, w)).map_err(err)?;
    reports.iter().map(|r| report_dict(py, r)).collect()
}

/// Entropy class at fixed `tau2`: "icrie", "dcrie", "constant" or "inconclusive".
#[pyfunction]
#[pyo3(signature = (dist, tau2, grid=None))]
fn entropy_class(dist: &PyDistribution, tau2: f64, grid: Option<Vec<f64>>) -> PyResult<String> {
    let grid = grid.unwrap_or_else(|| default_tau1_grid(&dist.inner, tau2, DEFAULT_TAU1_POINTS));
    let c = certify_icrie_dcrie(&dist.inner, tau2, &grid, QuadratureConfig::default()).map_err(err)?;
    Ok(format!("{:?}", c.verdict).to_lowercase())
}

#[pyfunction]
fn empirical_crie(data: Vec<f64>, tau1: f64, tau2: f64) -> PyResult<f64> {
    let s = SampleData::new(data).map_err(err)?;
    crie::empirical_crie(&s, Window::new(tau1, tau2).map_err(err)?).map_err(err)
}

#[pyfunction]
fn crikl_statistic(data: Vec<f64>, dist: &PyDistribution, tau1: f64, tau2: f64) -> PyResult<f64> {
    let s = SampleData::new(data).map_err(err)?;
    crie::crikl_statistic(&s, &dist.inner, Window::new(tau1, tau2).map_err(err)?).map_err(err)
}

/// Bootstrap goodness-of-fit test; returns `{statistic, p_value, replicates, seed}`.
#[pyfunction]
#[pyo3(signature = (data, dist, tau1, tau2, replicates=999, seed=0))]
fn bootstrap_gof<'py>(
    py: Python<'py>,
    data: Vec<f64>,
    dist: &PyDistribution,
    tau1: f64,
    tau2: f64,
    replicates: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let s = SampleData::new(data).map_err(err)?;
    let w = Window::new(tau1, tau2).map_err(err)?;
    let r = py
        .detach(|| crie::bootstrap_gof(&s, &dist.inner, w, replicates, seed))
        .map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("statistic", r.statistic)?;
    d.set_item("p_value", r.p_value)?;
    d.set_item("replicates", r.replicates)?;
    d.set_item("seed", r.seed)?;
    Ok(d)
}

type TableRow = (String, f64, f64, f64, f64);

/// Rows of `(distribution, tau1, tau2, computed, published)` for the
/// built-in reference table.
#[pyfunction]
fn reference_table(py: Python<'_>) -> PyResult<Vec<TableRow>> {
    let rows = py.detach(crie::reference_table::reproduce).map_err(err)?;
    Ok(rows
        .into_iter()
        .map(|r| (r.distribution.to_string(), r.tau1, r.tau2, r.computed, r.published))
        .collect())
}

#[pymodule]
fn pycrie(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("CrieError", m.py().get_type::<CrieError>())?;
    m.add_class::<PyDistribution>()?;
    m.add_class::<PyTruncatedView>()?;
    m.add_function(wrap_pyfunction!(audit, m)?)?;
    m.add_function(wrap_pyfunction!(entropy_class, m)?)?;
    m.add_function(wrap_pyfunction!(empirical_crie, m)?)?;
    m.add_function(wrap_pyfunction!(crikl_statistic, m)?)?;
    m.add_function(wrap_pyfunction!(bootstrap_gof, m)?)?;
    m.add_function(wrap_pyfunction!(reference_table, m)?)?;
    Ok(())
}
