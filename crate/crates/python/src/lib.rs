//! Python bindings: `pyloopcheck.Loop` plus module-level search, file and
//! catalog functions. Structured results come back as plain dicts and lists.

// pyo3 0.22 macro expansion trips this lint on every PyResult return
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{IntoPyDict, PyDict, PyList};
use serde::Serialize;
use serde_json::Value;

use loopcheck::isotopy::{principal_isotope, IsotopeSpec};
use loopcheck::loopfile::{self, LoopFile, NamedLoop};
use loopcheck::properties::{self, Method};
use loopcheck::search::{self, Mode, SearchQuery};
use loopcheck::term::{self, Identity};
use loopcheck::theoremlab;
use loopcheck::FiniteLoop;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<PyObject> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_py(py),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_py(py),
            None => n.as_f64().unwrap_or(f64::NAN).into_py(py),
        },
        Value::String(s) => s.into_py(py),
        Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_py(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (k, item) in map {
                dict.set_item(k, to_py(py, item)?)?;
            }
            dict.into_py(py)
        }
    })
}

fn serialize(py: Python<'_>, v: &impl Serialize) -> PyResult<PyObject> {
    to_py(py, &serde_json::to_value(v).map_err(value_error)?)
}

fn method(name: &str) -> PyResult<Method> {
    match name {
        "identity" => Ok(Method::Identity),
        "bruteforce" => Ok(Method::Bruteforce),
        "both" => Ok(Method::Both),
        other => Err(PyValueError::new_err(format!(
            "unknown method {other:?} (expected identity, bruteforce or both)"
        ))),
    }
}

/// A finite loop given by its Cayley table. Labels are `0..n`; the identity
/// is detected, not forced to `0`.
#[pyclass(name = "Loop", module = "pyloopcheck", frozen, eq)]
#[derive(Clone, PartialEq)]
struct PyLoop {
    inner: FiniteLoop,
}

impl PyLoop {
    fn element(&self, x: usize) -> PyResult<usize> {
        if x < self.inner.order() {
            Ok(x)
        } else {
            Err(PyIndexError::new_err(format!("element {x} out of range for order {}", self.inner.order())))
        }
    }
}

#[pymethods]
impl PyLoop {
    #[new]
    fn new(rows: Vec<Vec<usize>>) -> PyResult<Self> {
        FiniteLoop::validate(&rows, None)
            .map(|inner| PyLoop { inner })
            .map_err(value_error)
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn identity(&self) -> usize {
        self.inner.identity()
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.inner.rows()
    }

    fn mul(&self, x: usize, y: usize) -> PyResult<usize> {
        Ok(self.inner.mul(self.element(x)?, self.element(y)?))
    }

    /// `x \ y`: the `z` with `x·z = y`.
    fn ldiv(&self, x: usize, y: usize) -> PyResult<usize> {
        Ok(self.inner.ldiv(self.element(x)?, self.element(y)?))
    }

    /// `x / y`: the `z` with `z·y = x`.
    fn rdiv(&self, x: usize, y: usize) -> PyResult<usize> {
        Ok(self.inner.rdiv(self.element(x)?, self.element(y)?))
    }

    fn is_associative(&self) -> bool {
        self.inner.is_associative()
    }

    /// Checks a named property; returns the report as a dict.
    #[pyo3(signature = (prop, method = "identity"))]
    fn check(&self, py: Python<'_>, prop: &str, method: &str) -> PyResult<PyObject> {
        let report = properties::check(&self.inner, prop, self::method(method)?).map_err(value_error)?;
        serialize(py, &report)
    }

    /// Checks an identity such as `"x*(y*z) = (x*y)*z"`. Returns
    /// `(holds, counterexample)` with the counterexample as a dict or None.
    fn holds(&self, py: Python<'_>, expression: &str) -> PyResult<(bool, PyObject)> {
        let id = Identity::parse(expression, expression).map_err(value_error)?;
        let r = term::holds(&self.inner, &id);
        let cx = match r.counterexample {
            None => py.None(),
            Some(env) => env.into_py_dict_bound(py).into_py(py),
        };
        Ok((r.holds, cx))
    }

    /// Principal isotope. Pass `u` and `v` for the full isotope, or only
    /// `v` (left) or only `u` (right).
    #[pyo3(signature = (u = None, v = None))]
    fn isotope(&self, u: Option<usize>, v: Option<usize>) -> PyResult<PyLoop> {
        let spec = match (u, v) {
            (Some(u), Some(v)) => IsotopeSpec::Full { u: self.element(u)?, v: self.element(v)? },
            (None, Some(v)) => IsotopeSpec::Left { v: self.element(v)? },
            (Some(u), None) => IsotopeSpec::Right { u: self.element(u)? },
            (None, None) => return Err(PyValueError::new_err("give u, v or both")),
        };
        Ok(PyLoop { inner: principal_isotope(&self.inner, spec) })
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("Loop(order={}, identity={})", self.inner.order(), self.inner.identity())
    }
}

fn named(file: LoopFile) -> Vec<(String, PyLoop)> {
    file.into_pairs()
        .into_iter()
        .map(|(name, inner)| (name, PyLoop { inner }))
        .collect()
}

/// Parses loop-file text into `[(name, Loop)]`.
#[pyfunction]
fn parse_loop_file(text: &str) -> PyResult<Vec<(String, PyLoop)>> {
    loopfile::parse_loop_file(text).map(named).map_err(value_error)
}

#[pyfunction]
fn read_loop_file(path: std::path::PathBuf) -> PyResult<Vec<(String, PyLoop)>> {
    loopfile::read_loop_file(&path).map(named).map_err(value_error)
}

/// Renders `[(name, Loop)]` as loop-file text.
#[pyfunction]
fn format_loop_file(loops: Vec<(String, PyLoop)>) -> String {
    let file = LoopFile {
        loops: loops.into_iter().map(|(n, l)| NamedLoop::new(n, l.inner)).collect(),
        trailing: Vec::new(),
    };
    loopfile::print_loop_file(&file)
}

/// Number of reduced loops (normalized Latin squares) of order `n`.
#[pyfunction]
fn count_loops(py: Python<'_>, n: usize) -> PyResult<u64> {
    py.allow_threads(|| search::count_loops(n)).map_err(value_error)
}

/// Searches reduced loops of one order. Returns the matching loops.
#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(name = "search", signature = (order, require = Vec::new(), forbid = Vec::new(), limit = None, mode = "exhaustive", seed = 0, method = "identity"))]
fn search_loops(
    py: Python<'_>,
    order: usize,
    require: Vec<String>,
    forbid: Vec<String>,
    limit: Option<usize>,
    mode: &str,
    seed: u64,
    method: &str,
) -> PyResult<Vec<PyLoop>> {
    let mode = match mode {
        "exhaustive" => Mode::Exhaustive,
        "first" => Mode::First,
        other => return Err(PyValueError::new_err(format!("unknown mode {other:?}"))),
    };
    let q = SearchQuery {
        order,
        require,
        forbid,
        limit,
        mode,
        method: self::method(method)?,
        seed,
    };
    let out = py.allow_threads(|| search::search(&q)).map_err(value_error)?;
    Ok(out.hits.into_iter().map(|h| PyLoop { inner: h.table }).collect())
}

/// Claim ids in catalog order.
#[pyfunction]
fn claims() -> Vec<String> {
    theoremlab::claims().iter().map(|c| c.id.clone()).collect()
}

/// Runs catalog claims over `[(name, Loop)]`; returns one report dict per claim.
#[pyfunction]
#[pyo3(signature = (loops, claims = None, method = "identity"))]
fn verify(
    py: Python<'_>,
    loops: Vec<(String, PyLoop)>,
    claims: Option<Vec<String>>,
    method: &str,
) -> PyResult<PyObject> {
    let method = self::method(method)?;
    let selected: Vec<theoremlab::Claim> = match claims {
        None => theoremlab::claims().to_vec(),
        Some(ids) => ids
            .iter()
            .map(|id| {
                theoremlab::claim(id)
                    .cloned()
                    .ok_or_else(|| PyValueError::new_err(format!("unknown claim {id:?}")))
            })
            .collect::<PyResult<_>>()?,
    };
    let corpus: Vec<(String, FiniteLoop)> = loops.into_iter().map(|(n, l)| (n, l.inner)).collect();
    let reports = py
        .allow_threads(|| theoremlab::run_catalog(&selected, &corpus, method))
        .map_err(value_error)?;
    serialize(py, &reports)
}

#[pymodule]
fn pyloopcheck(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLoop>()?;
    m.add_function(wrap_pyfunction!(parse_loop_file, m)?)?;
    m.add_function(wrap_pyfunction!(read_loop_file, m)?)?;
    m.add_function(wrap_pyfunction!(format_loop_file, m)?)?;
    m.add_function(wrap_pyfunction!(count_loops, m)?)?;
    m.add_function(wrap_pyfunction!(search_loops, m)?)?;
    m.add_function(wrap_pyfunction!(claims, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
