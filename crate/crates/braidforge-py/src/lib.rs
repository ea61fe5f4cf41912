//! Python bindings: words, permutations, rewriting, normal forms and the oracle.

use braidforge::decomposition::{parse_normal_form, DEFAULT_BUDGET};
use braidforge::equivalence::{self, Witness, DEFAULT_MAX_NODES};
use braidforge::fusing_algebra::to_pure_times_coset;
use braidforge::symmetric_group::coset_map;
use braidforge::{suite, Error};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::ResourceBound { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse(text: &str, n: usize) -> PyResult<braidforge::BraidWord> {
    braidforge::parse_word(text, n).map_err(|e| py_err(e.into()))
}

/// A word in the standard generators s/S, t/T, v.
#[pyclass(name = "BraidWord", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyBraidWord(braidforge::BraidWord);

#[pymethods]
impl PyBraidWord {
    #[new]
    fn new(text: &str, strands: usize) -> PyResult<Self> {
        parse(text, strands).map(PyBraidWord)
    }

    #[getter]
    fn strands(&self) -> usize {
        self.0.strands()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("BraidWord({:?}, {})", self.0.to_string(), self.0.strands())
    }

    fn __mul__(&self, other: &PyBraidWord) -> PyBraidWord {
        PyBraidWord(self.0.concat(&other.0))
    }

    fn inverse(&self) -> PyBraidWord {
        PyBraidWord(self.0.inverse())
    }

    fn free_reduce(&self) -> PyBraidWord {
        PyBraidWord(self.0.free_reduce())
    }

    fn permutation(&self) -> String {
        braidforge::permutation_of(&self.0).to_string()
    }

    fn coset(&self) -> PyResult<String> {
        coset_map(&self.0).map(|c| c.to_string()).map_err(py_err)
    }

    /// (pure fusing word, coset representative)
    fn to_pure(&self) -> PyResult<(String, String)> {
        let d = to_pure_times_coset(&self.0).map_err(py_err)?;
        Ok((d.pure.to_string(), d.coset.to_string()))
    }

    fn rewrite(&self) -> PyResult<String> {
        braidforge::rewrite_r(&self.0).map(|r| r.to_string()).map_err(py_err)
    }

    #[pyo3(signature = (budget = DEFAULT_BUDGET))]
    fn normal_form(&self, budget: u64) -> PyResult<PyNormalForm> {
        braidforge::normal_form(&self.0, budget).map(PyNormalForm).map_err(py_err)
    }
}

/// A layered normal form w_{n-1}···w_1·λ.
#[pyclass(name = "NormalForm", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyNormalForm(braidforge::LayeredNormalForm);

#[pymethods]
impl PyNormalForm {
    #[staticmethod]
    fn parse(text: &str, strands: usize) -> PyResult<Self> {
        parse_normal_form(text, strands).map(PyNormalForm).map_err(py_err)
    }

    /// [(level, [letters])] in descending level order.
    #[getter]
    fn layers(&self) -> Vec<(usize, Vec<String>)> {
        self.0.layers.iter().map(|l| (l.level, l.letters.iter().map(|c| c.to_string()).collect())).collect()
    }

    #[getter]
    fn coset(&self) -> String {
        self.0.coset.to_string()
    }

    fn recompose(&self) -> PyBraidWord {
        PyBraidWord(self.0.recompose())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

/// status, witness and bounds of the bounded equivalence oracle.
#[pyfunction]
#[pyo3(signature = (u, v, max_nodes = DEFAULT_MAX_NODES, max_len = None))]
fn decide<'py>(
    py: Python<'py>,
    u: &PyBraidWord,
    v: &PyBraidWord,
    max_nodes: usize,
    max_len: Option<usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let bounds = equivalence::Bounds { max_len, max_nodes };
    let verdict = py.detach(|| equivalence::decide(&u.0, &v.0, &bounds));
    let out = PyDict::new(py);
    out.set_item("status", format!("{:?}", verdict.status))?;
    match &verdict.witness {
        Witness::Moves(moves) => {
            let m: Vec<(usize, String, String, String)> = moves
                .iter()
                .map(|m| (m.position, m.removed.clone(), m.inserted.clone(), m.relation.clone()))
                .collect();
            out.set_item("witness", m)?;
        }
        Witness::Invariant(s) => out.set_item("witness", (s.invariant.clone(), s.lhs.clone(), s.rhs.clone()))?,
        Witness::Exhausted {} => out.set_item("witness", py.None())?,
    }
    out.set_item("expanded", verdict.bounds.expanded)?;
    out.set_item("max_len", verdict.bounds.max_len)?;
    out.set_item("max_nodes", verdict.bounds.max_nodes)?;
    Ok(out)
}

/// [(relation, coset, lhs, rhs, trivial)]
#[pyfunction]
fn derive_relations(py: Python<'_>, strands: usize) -> PyResult<Vec<(String, String, String, String, bool)>> {
    let derived = py.detach(|| braidforge::derive_pure_relations(strands)).map_err(py_err)?;
    Ok(derived
        .into_iter()
        .map(|d| (d.source.to_string(), d.coset.to_string(), d.lhs.to_string(), d.rhs.to_string(), d.trivial))
        .collect())
}

/// [(criterion, passed, summary)]
#[pyfunction]
#[pyo3(signature = (criterion = None))]
fn verify_suite(py: Python<'_>, criterion: Option<u8>) -> PyResult<Vec<(u8, bool, String)>> {
    let reports = py.detach(|| match criterion {
        Some(c) => suite::run_criterion(c).into_iter().collect::<Vec<_>>(),
        None => suite::run_all(),
    });
    if reports.is_empty() {
        return Err(PyValueError::new_err("criterion must be in 1..=8"));
    }
    Ok(reports.into_iter().map(|r| (r.number, r.passed, r.summary)).collect())
}

#[pymodule]
#[pyo3(name = "braidforge")]
fn braidforge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBraidWord>()?;
    m.add_class::<PyNormalForm>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(derive_relations, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    Ok(())
}
