//! Python bindings for `revfree_core`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;
use serde::Serialize;

use revfree_core::avoidance::{self, AvoidanceQuery, Unavoidability};
use revfree_core::claims::{self, ClaimInputs};
use revfree_core::search::{self, SearchOptions, SearchReport};
use revfree_core::stream::{Builtin, StreamSpec};
use revfree_core::{morphism, Error, FactorSet};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Serializes through JSON so reports arrive as plain dicts and lists.
fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn query(k: usize, squarefree: bool) -> PyResult<AvoidanceQuery> {
    AvoidanceQuery::new(k, squarefree).map_err(py_err)
}

/// A finite word over the digits `0..alphabet`.
#[pyclass(name = "Word", module = "revfree", frozen, eq, ord, from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
struct PyWord(revfree_core::Word);

#[pymethods]
impl PyWord {
    #[new]
    #[pyo3(signature = (text, alphabet = 2))]
    fn new(text: &str, alphabet: usize) -> PyResult<Self> {
        revfree_core::Word::parse(text, alphabet).map(PyWord).map_err(py_err)
    }

    #[getter]
    fn alphabet(&self) -> usize {
        self.0.alphabet()
    }

    #[getter]
    fn symbols(&self) -> Vec<u8> {
        self.0.symbols().to_vec()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word('{}', alphabet={})", self.0, self.0.alphabet())
    }

    fn __hash__(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }

    fn __add__(&self, other: &PyWord) -> PyResult<PyWord> {
        self.0.concat(&other.0).map(PyWord).map_err(py_err)
    }

    fn reverse(&self) -> PyWord {
        PyWord(self.0.reverse())
    }

    fn complement(&self) -> PyResult<PyWord> {
        self.0.complement().map(PyWord).map_err(py_err)
    }

    fn permute(&self, perm: Vec<u8>) -> PyResult<PyWord> {
        self.0.permute(&perm).map(PyWord).map_err(py_err)
    }

    fn rotate(&self, r: usize) -> PyWord {
        PyWord(self.0.rotate(r))
    }

    fn prefix(&self, n: usize) -> PyWord {
        PyWord(self.0.prefix(n))
    }

    fn contains(&self, other: &PyWord) -> bool {
        self.0.contains(&other.0)
    }

    /// Sorted length-`n` factors.
    fn factors(&self, n: usize) -> PyResult<Vec<PyWord>> {
        let set = self.0.factors(n).map_err(py_err)?;
        Ok(set.iter().cloned().map(PyWord).collect())
    }

    fn is_squarefree(&self) -> bool {
        self.0.is_squarefree()
    }

    /// `(offset, half)` of the leftmost square, or None.
    fn find_square(&self) -> Option<(usize, usize)> {
        self.0.find_square()
    }
}

/// A morphism given by the images of `0..domain_size`.
#[pyclass(name = "Morphism", module = "revfree", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq, Eq)]
struct PyMorphism(morphism::Morphism);

#[pymethods]
impl PyMorphism {
    /// Without `codomain`, the alphabet is one more than the largest digit.
    #[new]
    #[pyo3(signature = (images, codomain = None))]
    fn new(images: Vec<String>, codomain: Option<usize>) -> PyResult<Self> {
        let codomain = codomain.unwrap_or_else(|| {
            images
                .iter()
                .flat_map(|s| s.chars())
                .filter_map(|c| c.to_digit(10))
                .max()
                .map_or(1, |d| d as usize + 1)
        });
        let refs: Vec<&str> = images.iter().map(String::as_str).collect();
        morphism::Morphism::from_images(&refs, codomain).map(PyMorphism).map_err(py_err)
    }

    /// Parses `c -> image` lines.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        text.parse().map(PyMorphism).map_err(py_err)
    }

    #[getter]
    fn images(&self) -> Vec<PyWord> {
        self.0.images().iter().cloned().map(PyWord).collect()
    }

    #[getter]
    fn domain_size(&self) -> usize {
        self.0.domain_size()
    }

    #[getter]
    fn codomain_size(&self) -> usize {
        self.0.codomain_size()
    }

    fn uniform_length(&self) -> Option<usize> {
        self.0.uniform_length()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        let images: Vec<String> = self.0.images().iter().map(|w| format!("'{w}'")).collect();
        format!("Morphism([{}], codomain={})", images.join(", "), self.0.codomain_size())
    }

    fn apply(&self, w: &PyWord) -> PyResult<PyWord> {
        self.0.apply(&w.0).map(PyWord).map_err(py_err)
    }

    fn __call__(&self, w: &PyWord) -> PyResult<PyWord> {
        self.apply(w)
    }

    /// Length-`k` factors of the images of all (or all squarefree) words of
    /// length `universe_length`.
    #[pyo3(signature = (k, universe_length = 2, squarefree_universe = false))]
    fn image_factor_set(&self, k: usize, universe_length: usize, squarefree_universe: bool) -> PyResult<Vec<PyWord>> {
        let mut universe = FactorSet::universe(self.0.domain_size(), universe_length).map_err(py_err)?;
        if squarefree_universe {
            let members: Vec<_> = universe.iter().filter(|u| u.is_squarefree()).cloned().collect();
            universe = FactorSet::new(universe_length, members).map_err(py_err)?;
        }
        let set = self.0.image_factor_set(k, &universe).map_err(py_err)?;
        Ok(set.iter().cloned().map(PyWord).collect())
    }

    fn marker_sync_check(&self, py: Python<'_>, marker: &PyWord) -> PyResult<Py<PyAny>> {
        let report = self.0.marker_sync_check(&marker.0).map_err(py_err)?;
        to_py(py, &report)
    }

    fn squarefree_morphism_test(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = self.0.squarefree_morphism_test().map_err(py_err)?;
        to_py(py, &report)
    }

    fn decode_blocks(&self, y: &PyWord) -> Option<PyWord> {
        self.0.decode_blocks(&y.0).map(PyWord)
    }
}

#[pyfunction]
#[pyo3(signature = (word, k, squarefree = false))]
fn is_valid(word: &PyWord, k: usize, squarefree: bool) -> PyResult<bool> {
    Ok(avoidance::is_valid(&word.0, &query(k, squarefree)?))
}

/// None when valid, otherwise a dict describing the first violation.
#[pyfunction]
#[pyo3(signature = (word, k, squarefree = false))]
fn check(py: Python<'_>, word: &PyWord, k: usize, squarefree: bool) -> PyResult<Option<Py<PyAny>>> {
    match avoidance::check(&word.0, &query(k, squarefree)?) {
        Ok(()) => Ok(None),
        Err(v) => to_py(py, &v).map(Some),
    }
}

/// Whether some word in `words` has its reversal in `words` too.
#[pyfunction]
fn has_reversal_conflict(words: Vec<PyWord>) -> PyResult<bool> {
    let Some(first) = words.first() else {
        return Ok(false);
    };
    let set = FactorSet::new(first.0.len(), words.iter().map(|w| w.0.clone())).map_err(py_err)?;
    Ok(avoidance::has_reversal_conflict(&set))
}

#[pyfunction]
#[pyo3(signature = (alphabet, k, length, squarefree = false))]
fn enumerate_valid(alphabet: usize, k: usize, length: usize, squarefree: bool) -> PyResult<Vec<PyWord>> {
    let words = search::enumerate_valid(alphabet, &query(k, squarefree)?, length).map_err(py_err)?;
    Ok(words.into_iter().map(PyWord).collect())
}

/// Exhaustive search; returns the same report as `revfree search`.
#[pyfunction]
#[pyo3(signature = (alphabet, k, squarefree = false, cap = 64, parallel = false, symmetry = false))]
fn max_valid_length(
    py: Python<'_>,
    alphabet: usize,
    k: usize,
    squarefree: bool,
    cap: usize,
    parallel: bool,
    symmetry: bool,
) -> PyResult<Py<PyAny>> {
    let q = query(k, squarefree)?;
    let options = SearchOptions { parallel, symmetry_pruning: symmetry };
    let report = py.detach(|| SearchReport::run(alphabet, &q, cap, options)).map_err(py_err)?;
    to_py(py, &report)
}

/// None if every word of `length` letters contains a member of `words`,
/// otherwise a word that avoids them all.
#[pyfunction]
fn verify_unavoidable(alphabet: usize, length: usize, words: Vec<PyWord>) -> PyResult<Option<PyWord>> {
    let set: Vec<_> = words.into_iter().map(|w| w.0).collect();
    match avoidance::verify_unavoidable(alphabet, length, &set).map_err(py_err)? {
        Unavoidability::Unavoidable => Ok(None),
        Unavoidability::Avoided(w) => Ok(Some(PyWord(w))),
    }
}

/// `(preamble, period)` for a binary prefix of `y'y^ω`, y a rotation of
/// 001011 or 110100, or None.
#[pyfunction]
fn match_ultimately_periodic(prefix: &PyWord) -> PyResult<Option<(PyWord, PyWord)>> {
    let seed = revfree_core::Word::parse("001011", 2).expect("literal");
    let periods: Vec<_> = search::rotation_class(&seed).map_err(py_err)?.into_iter().collect();
    let found = search::match_ultimately_periodic(&prefix.0, &periods, &search::standard_preambles())
        .map_err(py_err)?;
    Ok(found.map(|(p, y)| (PyWord(p), PyWord(y))))
}

/// Prefix of `preamble·period^ω`, optionally mapped through `morphism`.
#[pyfunction]
#[pyo3(signature = (preamble, period, length, morphism = None))]
fn periodic_prefix(preamble: &PyWord, period: &PyWord, length: usize, morphism: Option<&PyMorphism>) -> PyResult<PyWord> {
    let spec = StreamSpec::periodic(preamble.0.clone(), period.0.clone()).map_err(py_err)?;
    stream_prefix(spec, length, morphism)
}

/// Prefix of a builtin infinite word (`thue-squarefree-ternary` or
/// `nonperiodic-binary`), optionally mapped through `morphism`.
#[pyfunction]
#[pyo3(signature = (name, length, morphism = None))]
fn builtin_prefix(name: &str, length: usize, morphism: Option<&PyMorphism>) -> PyResult<PyWord> {
    let spec = StreamSpec::Builtin(name.parse::<Builtin>().map_err(py_err)?);
    stream_prefix(spec, length, morphism)
}

fn stream_prefix(spec: StreamSpec, length: usize, morphism: Option<&PyMorphism>) -> PyResult<PyWord> {
    let spec = match morphism {
        Some(h) => StreamSpec::morphic_image(h.0.clone(), spec).map_err(py_err)?,
        None => spec,
    };
    Ok(PyWord(spec.prefix(length)))
}

/// Re-runs the eight reproduced claims, or just `only`.
#[pyfunction]
#[pyo3(signature = (only = None, h2 = None, h6 = None, h8 = None))]
fn verify_claims(
    py: Python<'_>,
    only: Option<&str>,
    h2: Option<&PyMorphism>,
    h6: Option<&PyMorphism>,
    h8: Option<&PyMorphism>,
) -> PyResult<Py<PyAny>> {
    let mut inputs = ClaimInputs::default();
    if let Some(h) = h2 {
        inputs.h2 = h.0.clone();
    }
    if let Some(h) = h6 {
        inputs.h6 = h.0.clone();
    }
    if let Some(h) = h8 {
        inputs.h8 = h.0.clone();
    }
    let report = py.detach(|| match only {
        None => claims::verify_all(&inputs),
        Some(id) => match claims::run_claim(id, &inputs) {
            Ok(Some(entry)) => Ok(claims::ClaimReport {
                version: revfree_core::VERSION.to_string(),
                passed: usize::from(entry.status == claims::Status::Pass),
                total: 1,
                entries: vec![entry],
            }),
            Ok(None) => Err(Error::Domain(format!("unknown claim {id}"))),
            Err(e) => Err(e),
        },
    });
    to_py(py, &report.map_err(py_err)?)
}

#[pymodule]
fn revfree(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", revfree_core::VERSION)?;
    m.add_class::<PyWord>()?;
    m.add_class::<PyMorphism>()?;
    m.add_function(wrap_pyfunction!(is_valid, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(has_reversal_conflict, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_valid, m)?)?;
    m.add_function(wrap_pyfunction!(max_valid_length, m)?)?;
    m.add_function(wrap_pyfunction!(verify_unavoidable, m)?)?;
    m.add_function(wrap_pyfunction!(match_ultimately_periodic, m)?)?;
    m.add_function(wrap_pyfunction!(periodic_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_prefix, m)?)?;
    m.add_function(wrap_pyfunction!(verify_claims, m)?)?;
    Ok(())
}
