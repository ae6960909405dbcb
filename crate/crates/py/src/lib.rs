//! Python bindings: suites and reports, the field catalog, contractions
//! and the theta expansion.

// The pyo3 0.22 macros trip this lint on every PyResult.
#![allow(clippy::useless_conversion)]

use ellwak::catalog::{build, FieldId};
use ellwak::oscillators::contract;
use ellwak::qseries::special::{theta_series, Mono};
use ellwak::qseries::{Ctx, Nome};
use ellwak::verifier::{self, Record, Report, SuiteConfig};
use ellwak::vop::commutator_delta;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: ellwak::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn field(name: &str) -> PyResult<FieldId> {
    name.parse().map_err(err)
}

/// One relation's outcome.
#[pyclass(name = "Record", module = "ellwak", frozen)]
#[derive(Clone)]
pub struct PyRecord(Record);

#[pymethods]
impl PyRecord {
    #[getter]
    fn id(&self) -> &str {
        &self.0.id
    }

    /// The relation as printed.
    #[getter]
    fn statement(&self) -> &str {
        &self.0.paper_eq
    }

    #[getter]
    fn status(&self) -> &'static str {
        self.0.status.as_str()
    }

    #[getter]
    fn window(&self) -> i64 {
        self.0.window
    }

    #[getter]
    fn p_order(&self) -> &str {
        &self.0.p_order
    }

    #[getter]
    fn compared(&self) -> usize {
        self.0.compared
    }

    #[getter]
    fn millis(&self) -> u64 {
        self.0.millis
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.0.notes.clone()
    }

    /// `(x_power, p_degree, lhs, rhs, note)` of the first disagreement.
    #[getter]
    fn mismatch(&self) -> Option<(i64, String, String, String, String)> {
        self.0.mismatch.as_ref().map(|m| (m.x_power, m.p_degree.clone(), m.lhs.clone(), m.rhs.clone(), m.note.clone()))
    }

    fn __repr__(&self) -> String {
        format!("Record({} {} compared={})", self.0.id, self.0.status.as_str(), self.0.compared)
    }
}

/// A suite report.
#[pyclass(name = "Report", module = "ellwak", frozen)]
pub struct PyReport(Report);

#[pymethods]
impl PyReport {
    #[getter]
    fn suite(&self) -> &str {
        &self.0.suite
    }

    #[getter]
    fn records(&self) -> Vec<PyRecord> {
        self.0.relations.iter().cloned().map(PyRecord).collect()
    }

    fn all_pass(&self) -> bool {
        self.0.all_pass()
    }

    fn get(&self, id: &str) -> Option<PyRecord> {
        self.0.get(id).cloned().map(PyRecord)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    fn __len__(&self) -> usize {
        self.0.relations.len()
    }

    fn __repr__(&self) -> String {
        let pass = self.0.relations.iter().filter(|r| r.status == ellwak::vop::Status::Pass).count();
        format!("Report({} {pass}/{} PASS)", self.0.suite, self.0.relations.len())
    }
}

/// Runs a suite; the GIL is released while the relations are checked.
#[pyfunction]
#[pyo3(signature = (suite, window = 6, p_order = 3, grade = 3, spins = vec![1, 2, 3], relation = None))]
fn verify(py: Python<'_>, suite: &str, window: i64, p_order: i64, grade: i64, spins: Vec<i64>, relation: Option<String>) -> PyResult<PyReport> {
    let mut cfg = SuiteConfig::new(suite).window(window).p_order(p_order).grade(grade).spins(&spins);
    cfg.relation = relation;
    py.allow_threads(|| verifier::run_suite(&cfg)).map(PyReport).map_err(err)
}

#[pyfunction]
fn suites() -> Vec<&'static str> {
    verifier::SUITES.to_vec()
}

/// `(id, statement, has_spin)` for every relation of a suite.
#[pyfunction]
fn relations(suite: &str) -> PyResult<Vec<(&'static str, &'static str, bool)>> {
    let defs = verifier::suite(suite).ok_or_else(|| PyValueError::new_err(format!("unknown suite `{suite}`")))?;
    Ok(defs.into_iter().map(|d| (d.id, d.statement, d.spin)).collect())
}

/// A catalog field such as `"E"`, `"S_I"` or `"PhiLL(2)"`.
#[pyclass(name = "Field", module = "ellwak", frozen)]
pub struct PyField(FieldId);

#[pymethods]
impl PyField {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(PyField(field(name)?))
    }

    #[getter]
    fn name(&self) -> String {
        self.0.name()
    }

    /// `(Δl, Δm₁, Δm₂, Δn̂)` as strings.
    fn sector_shift(&self) -> PyResult<Vec<String>> {
        let s = build(self.0).map_err(err)?.sector_shift().ok_or_else(|| PyValueError::new_err("terms shift different sectors"))?;
        Ok(s.iter().map(|e| e.to_string()).collect())
    }

    /// The normal-ordered exponential(s), rendered.
    fn expression(&self) -> PyResult<String> {
        Ok(build(self.0).map_err(err)?.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.0.name())
    }
}

/// `[(n, c_n)]` for the contraction `Σ c_n (w/z)^n` of two single-term fields.
#[pyfunction]
#[pyo3(signature = (a, b, window = 4, p_order = 1))]
fn contraction(a: &str, b: &str, window: i64, p_order: i64) -> PyResult<Vec<(i64, String)>> {
    let single = |name: &str| -> PyResult<_> {
        let op = build(field(name)?).map_err(err)?;
        ellwak::catalog::single(&op).cloned().ok_or_else(|| PyValueError::new_err(format!("{name} is not a single exponential")))
    };
    let c = contract(&single(a)?, &single(b)?, &Ctx::new(Nome::P, window, p_order)).map_err(err)?;
    Ok(c.terms().iter().map(|(n, v)| (*n, v.render("p"))).collect())
}

/// Supports `γ` of the delta functions `δ(q^{-γ} w/z)` in `[A(z), B(w)]`.
#[pyfunction]
#[pyo3(signature = (a, b, window = 6, p_order = 0))]
fn commutator_supports(a: &str, b: &str, window: i64, p_order: i64) -> PyResult<Vec<String>> {
    let (x, y) = (build(field(a)?).map_err(err)?, build(field(b)?).map_err(err)?);
    let d = commutator_delta(&x, &y, &Ctx::new(Nome::P, window, p_order)).map_err(err)?;
    Ok(d.supports().iter().map(|e| e.to_string()).collect())
}

/// `[(m, c_m)]` for `Θ_p(x) = (x; p)(p/x; p)(p; p)` with `|m| <= window`.
#[pyfunction]
#[pyo3(signature = (p_order = 2, window = 3))]
fn theta(p_order: i64, window: i64) -> PyResult<Vec<(i64, String)>> {
    let th = theta_series(Mono::ONE, Mono::new(4, 0, 0), 4 * p_order).map_err(err)?;
    Ok(th.restrict(-window, window).terms().iter().map(|(m, v)| (*m, v.render("p"))).collect())
}

#[pymodule]
#[pyo3(name = "ellwak")]
pub fn ellwak_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRecord>()?;
    m.add_class::<PyReport>()?;
    m.add_class::<PyField>()?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add_function(wrap_pyfunction!(relations, m)?)?;
    m.add_function(wrap_pyfunction!(contraction, m)?)?;
    m.add_function(wrap_pyfunction!(commutator_supports, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    Ok(())
}
