//! Python bindings. Structured results come back as plain dicts and lists
//! with the same layout as the JSON reports.

use std::collections::HashMap;

use indexmap::IndexMap;
use num_bigint::BigUint;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use rpr_core::coloring::Coloring as CoreColoring;
use rpr_core::config::{catalog_entry, resolve_config, Configuration as CoreConfiguration};
use rpr_core::decide::{decide_equation, rado_columns, rado_three, Question};
use rpr_core::padic;
use rpr_core::poly::Poly;
use rpr_core::search::{self, Budget, Mode, RamseyOptions, Regime, SampleSpec, SearchError};
use rpr_core::verify::{self, Corpus, RunOptions};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn search_err(e: SearchError) -> PyErr {
    match e {
        SearchError::BudgetExceeded { nodes } => PyRuntimeError::new_err(format!("budget exceeded after {nodes} nodes")),
        e => value_err(e),
    }
}

fn to_py<'py, T: Serialize>(py: Python<'py>, v: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(v).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A parsed configuration: variables, blocks, optional Ramsey pair and formula.
#[pyclass(name = "Configuration", frozen)]
struct PyConfiguration {
    inner: CoreConfiguration,
}

#[pymethods]
impl PyConfiguration {
    /// Parses grammar text, or looks up a catalog name.
    #[new]
    fn new(src: &str) -> PyResult<Self> {
        Ok(PyConfiguration { inner: resolve_config(src).map_err(value_err)? })
    }

    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        catalog_entry(name)
            .map(|inner| PyConfiguration { inner })
            .ok_or_else(|| PyValueError::new_err(format!("no catalog entry `{name}`")))
    }

    #[staticmethod]
    fn catalog_names() -> Vec<String> {
        rpr_core::config::builtin_catalog().into_iter().map(|(n, _)| n).collect()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.inner.name.clone()
    }

    #[getter]
    fn vars(&self) -> Vec<String> {
        self.inner.vars.clone()
    }

    #[getter]
    fn blocks(&self) -> Vec<Vec<String>> {
        self.inner.blocks.clone()
    }

    #[getter]
    fn ramsey(&self) -> Option<(String, String)> {
        self.inner.ramsey.clone()
    }

    /// Whether the assignment satisfies the formula.
    fn holds(&self, assignment: HashMap<String, u64>) -> PyResult<bool> {
        let a: IndexMap<String, u64> = self
            .inner
            .vars
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .map(|&x| (v.clone(), x))
                    .ok_or_else(|| PyValueError::new_err(format!("no value for `{v}`")))
            })
            .collect::<PyResult<_>>()?;
        self.inner.holds_assignment(&a).map_err(value_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Configuration({:?})", self.inner.to_string())
    }
}

/// A total coloring of `[1..bound]`.
#[pyclass(name = "Coloring", frozen)]
struct PyColoring {
    inner: CoreColoring,
}

#[pymethods]
impl PyColoring {
    /// `parity`, `mono`, `random:SEED:R`, `table:...`, `inv:DESCRIPTOR` or JSON.
    #[new]
    fn new(spec: &str, bound: u64) -> PyResult<Self> {
        Ok(PyColoring { inner: CoreColoring::from_spec(spec, bound).map_err(value_err)? })
    }

    #[staticmethod]
    fn from_table(table: Vec<u32>) -> PyResult<Self> {
        Ok(PyColoring { inner: CoreColoring::explicit(table, None).map_err(value_err)? })
    }

    #[getter]
    fn bound(&self) -> u64 {
        self.inner.bound()
    }

    #[getter]
    fn num_colors(&self) -> u32 {
        self.inner.num_colors()
    }

    fn color_of(&self, n: u64) -> PyResult<u32> {
        self.inner.color_of(n).map_err(value_err)
    }

    fn table(&self) -> Vec<u32> {
        self.inner.table().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.bound() as usize
    }
}

#[pyfunction]
fn vp(p: u64, x: BigUint) -> PyResult<u64> {
    padic::vp(p, &x).map_err(value_err)
}

#[pyfunction]
fn smodp(p: u64, x: BigUint) -> PyResult<u64> {
    padic::smodp(p, &x).map_err(value_err)
}

#[pyfunction]
fn lm(m: u64, x: BigUint) -> PyResult<u64> {
    padic::lm(m, &x).map_err(value_err)
}

/// `None` when an intermediate logarithm is undefined.
#[pyfunction]
fn lm_iter(m: u64, k: u32, x: BigUint) -> PyResult<Option<u64>> {
    padic::lm_iter(m, k, &x).map_err(value_err)
}

#[pyfunction]
fn rado_three_pr(py: Python<'_>, a: u64, b: u64, c: u64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &rado_three(a, b, c))
}

#[pyfunction]
fn rado_columns_pr(py: Python<'_>, coeffs: Vec<i64>) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &rado_columns(&coeffs).map_err(value_err)?)
}

/// Classifies an equation; `question` is `pr`, `ramsey` or `ramsey-separate`.
#[pyfunction]
#[pyo3(signature = (equation, question = "pr"))]
fn decide<'py>(py: Python<'py>, equation: &str, question: &str) -> PyResult<Bound<'py, PyAny>> {
    let q: Question = question.parse().map_err(PyValueError::new_err)?;
    to_py(py, &decide_equation(equation, q).map_err(value_err)?)
}

#[pyfunction]
#[pyo3(signature = (config, coloring, bound, budget = None))]
fn find_witness<'py>(
    py: Python<'py>,
    config: &PyConfiguration,
    coloring: &PyColoring,
    bound: u64,
    budget: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut b = Budget::new(budget);
    let w = search::find_witness(&config.inner, &coloring.inner, bound, &mut b).map_err(search_err)?;
    to_py(py, &w)
}

#[pyfunction]
#[pyo3(signature = (config, colors, n_max, budget = None))]
fn forcing_number(config: &PyConfiguration, colors: u32, n_max: u64, budget: Option<u64>) -> PyResult<Option<u64>> {
    let mut b = Budget::new(budget);
    search::forcing_number(&config.inner, colors, n_max, &mut b).map_err(search_err)
}

#[pyfunction]
#[pyo3(signature = (config, colors, bound, budget = None))]
fn avoiding_coloring(
    config: &PyConfiguration,
    colors: u32,
    bound: u64,
    budget: Option<u64>,
) -> PyResult<Option<PyColoring>> {
    let mut b = Budget::new(budget);
    let c = search::avoiding_coloring(&config.inner, colors, bound, &mut b).map_err(search_err)?;
    Ok(c.map(|inner| PyColoring { inner }))
}

#[pyfunction]
#[pyo3(signature = (config, coloring, bound, mode = "uniform", h_cap = None, budget = None, workers = 1))]
#[allow(clippy::too_many_arguments)]
fn max_ramsey_set<'py>(
    py: Python<'py>,
    config: &PyConfiguration,
    coloring: &PyColoring,
    bound: u64,
    mode: &str,
    h_cap: Option<u64>,
    budget: Option<u64>,
    workers: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let mode: Mode = mode.parse().map_err(PyValueError::new_err)?;
    let opts = RamseyOptions { mode, h_cap, budget, workers };
    let rep = search::max_ramsey_set(&config.inner, &coloring.inner, bound, &opts).map_err(search_err)?;
    verify::check_ramsey_report(&config.inner, &coloring.inner, &rep)
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    to_py(py, &rep)
}

/// `regime` is `all`, `power:K`, `exp2` or `linear:K`; `family` defaults to
/// the shipped descriptor family.
#[pyfunction]
#[pyo3(signature = (f, g, lo, hi, regime = "all", family = None, workers = 1))]
#[allow(clippy::too_many_arguments)]
fn separator_search<'py>(
    py: Python<'py>,
    f: &str,
    g: &str,
    lo: u64,
    hi: u64,
    regime: &str,
    family: Option<Vec<String>>,
    workers: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let f = rpr_core::config::parse_expr(f).map_err(value_err)?;
    let g = rpr_core::config::parse_expr(g).map_err(value_err)?;
    let regime: Regime = regime.parse().map_err(PyValueError::new_err)?;
    let family = match family {
        Some(list) => list.iter().map(|d| d.parse()).collect::<Result<Vec<_>, _>>().map_err(value_err)?,
        None => search::default_family(),
    };
    let funcs = rpr_core::config::FnRegistry::new();
    let rep = search::separator_search(&f, &g, &funcs, &family, &SampleSpec::new(lo, hi, regime), workers)
        .map_err(search_err)?;
    to_py(py, &rep)
}

/// Polynomials are coefficient lists, constant term first.
#[pyfunction]
fn sandwich_bound_check<'py>(
    py: Python<'py>,
    p: Vec<i64>,
    q: Vec<i64>,
    beta_lo: u64,
    beta_hi: u64,
    n_max: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let rep =
        verify::sandwich_bound_check(&Poly::new(p), &Poly::new(q), beta_lo, beta_hi, n_max).map_err(value_err)?;
    to_py(py, &rep)
}

/// Runs the shipped corpus, or the given corpus JSON text.
#[pyfunction]
#[pyo3(signature = (corpus = None, only = None, budget = None, workers = 1))]
fn run_corpus<'py>(
    py: Python<'py>,
    corpus: Option<&str>,
    only: Option<String>,
    budget: Option<u64>,
    workers: usize,
) -> PyResult<Bound<'py, PyAny>> {
    let corpus = match corpus {
        Some(src) => Corpus::from_json(src).map_err(value_err)?,
        None => Corpus::builtin(),
    };
    let rep = verify::run_corpus(&corpus, &RunOptions { budget, workers, only }).map_err(value_err)?;
    to_py(py, &rep)
}

#[pymodule]
fn rpr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyConfiguration>()?;
    m.add_class::<PyColoring>()?;
    m.add_function(wrap_pyfunction!(vp, m)?)?;
    m.add_function(wrap_pyfunction!(smodp, m)?)?;
    m.add_function(wrap_pyfunction!(lm, m)?)?;
    m.add_function(wrap_pyfunction!(lm_iter, m)?)?;
    m.add_function(wrap_pyfunction!(rado_three_pr, m)?)?;
    m.add_function(wrap_pyfunction!(rado_columns_pr, m)?)?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(find_witness, m)?)?;
    m.add_function(wrap_pyfunction!(forcing_number, m)?)?;
    m.add_function(wrap_pyfunction!(avoiding_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(max_ramsey_set, m)?)?;
    m.add_function(wrap_pyfunction!(separator_search, m)?)?;
    m.add_function(wrap_pyfunction!(sandwich_bound_check, m)?)?;
    m.add_function(wrap_pyfunction!(run_corpus, m)?)?;
    Ok(())
}
