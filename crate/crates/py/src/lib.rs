//! Python bindings: fields, projective geometry, partial spreads, the ladder
//! construction, search and certificate verification.

use std::sync::Arc;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use mps_core::builder;
use mps_core::cert::{self, Certificate, Outcome, Provenance};
use mps_core::construct::{embed_spread, regular_spread, structured_pg4_seed};
use mps_core::gf;
use mps_core::projgeom;
use mps_core::search::{self, SearchConfig};
use mps_core::spread::{self, Verdict};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn budget_config(budget: &str, seed: u64) -> PyResult<SearchConfig> {
    match budget {
        "ci" => Ok(SearchConfig::ci(seed)),
        "long" => Ok(SearchConfig::long(seed)),
        other => Err(PyValueError::new_err(format!(
            "budget must be 'ci' or 'long', got {other:?}"
        ))),
    }
}

/// The finite field GF(q).
#[pyclass(name = "Field", module = "mps_py")]
struct PyField(gf::Field);

impl PyField {
    fn check(&self, a: u8) -> PyResult<u8> {
        if (a as u32) < self.0.order() {
            Ok(a)
        } else {
            Err(PyValueError::new_err(format!(
                "{a} is not an element of GF({})",
                self.0.order()
            )))
        }
    }
}

#[pymethods]
impl PyField {
    #[new]
    fn new(q: u32) -> PyResult<Self> {
        gf::Field::new(q).map(PyField).map_err(value_err)
    }

    #[getter]
    fn order(&self) -> u32 {
        self.0.order()
    }

    #[getter]
    fn characteristic(&self) -> u32 {
        self.0.characteristic()
    }

    fn add(&self, a: u8, b: u8) -> PyResult<u8> {
        Ok(self.0.add(self.check(a)?, self.check(b)?))
    }

    fn sub(&self, a: u8, b: u8) -> PyResult<u8> {
        Ok(self.0.sub(self.check(a)?, self.check(b)?))
    }

    fn mul(&self, a: u8, b: u8) -> PyResult<u8> {
        Ok(self.0.mul(self.check(a)?, self.check(b)?))
    }

    fn neg(&self, a: u8) -> PyResult<u8> {
        Ok(self.0.neg(self.check(a)?))
    }

    fn inv(&self, a: u8) -> PyResult<u8> {
        self.0.checked_inv(self.check(a)?).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.0.order())
    }
}

/// PG(dim, q) with points numbered in lexicographic order.
#[pyclass(name = "Geometry", module = "mps_py")]
struct PyGeometry(Arc<projgeom::Geometry>);

#[pymethods]
impl PyGeometry {
    #[new]
    #[pyo3(signature = (q, dim = 5))]
    fn new(q: u32, dim: usize) -> PyResult<Self> {
        projgeom::Geometry::new(q, dim)
            .map(|g| PyGeometry(Arc::new(g)))
            .map_err(value_err)
    }

    #[getter]
    fn q(&self) -> u32 {
        self.0.q()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn point_count(&self) -> usize {
        self.0.point_count()
    }

    #[getter]
    fn line_count(&self) -> u64 {
        self.0.line_count()
    }

    #[getter]
    fn spread_size(&self) -> Option<u64> {
        self.0.counts().spread_size
    }

    fn coords(&self, p: u32) -> PyResult<Vec<u8>> {
        if (p as usize) < self.0.point_count() {
            Ok(self.0.coords(p).to_vec())
        } else {
            Err(value_err(mps_core::Error::PointOutOfRange(p)))
        }
    }

    fn point_id(&self, v: Vec<u8>) -> PyResult<u32> {
        self.0.point_id(&v).map_err(value_err)
    }

    /// Sorted point ids of the line through `a` and `b`.
    fn line_span(&self, a: u32, b: u32) -> PyResult<Vec<u32>> {
        self.0.line_span(a, b).map(|l| l.points().to_vec()).map_err(value_err)
    }

    fn lines_through(&self, p: u32) -> PyResult<Vec<Vec<u32>>> {
        self.coords(p)?;
        Ok(self
            .0
            .lines_through(p)
            .into_iter()
            .map(|l| l.points().to_vec())
            .collect())
    }

    fn __repr__(&self) -> String {
        format!("Geometry(q={}, dim={})", self.0.q(), self.0.dim())
    }
}

/// A set of pairwise skew lines of a geometry.
#[pyclass(name = "PartialSpread", module = "mps_py")]
struct PyPartialSpread {
    geom: Arc<projgeom::Geometry>,
    inner: spread::PartialSpread,
}

#[pymethods]
impl PyPartialSpread {
    #[new]
    fn new(geometry: &PyGeometry) -> Self {
        let geom = geometry.0.clone();
        let inner = spread::PartialSpread::new(&geom);
        PyPartialSpread { geom, inner }
    }

    /// A full Desarguesian spread (odd dimension only).
    #[staticmethod]
    fn regular(geometry: &PyGeometry) -> PyResult<Self> {
        if geometry.0.dim().is_multiple_of(2) {
            return Err(PyValueError::new_err("spreads exist only in odd dimension"));
        }
        let geom = geometry.0.clone();
        let inner = regular_spread(&geom);
        Ok(PyPartialSpread { geom, inner })
    }

    /// Adds the line through points `a` and `b`; fails if it meets the spread.
    fn insert(&mut self, a: u32, b: u32) -> PyResult<()> {
        let line = self.geom.line_span(a, b).map_err(value_err)?;
        self.inner.insert(line, spread::Origin::External).map_err(value_err)
    }

    fn can_insert(&self, a: u32, b: u32) -> PyResult<bool> {
        let line = self.geom.line_span(a, b).map_err(value_err)?;
        Ok(self.inner.can_insert(line.points()))
    }

    fn lines(&self) -> Vec<Vec<u32>> {
        self.inner.lines().iter().map(|l| l.points().to_vec()).collect()
    }

    fn holes(&self) -> Vec<u32> {
        self.inner.holes(None)
    }

    #[getter]
    fn hole_count(&self) -> usize {
        self.inner.hole_count()
    }

    /// `None` if maximal, otherwise the least line that could be added.
    fn extension_witness(&self) -> Option<Vec<u32>> {
        match spread::is_maximal(&self.geom, &self.inner) {
            Verdict::Maximal => None,
            Verdict::Extendable(l) => Some(l.points().to_vec()),
        }
    }

    fn is_maximal(&self) -> bool {
        spread::is_maximal(&self.geom, &self.inner).is_maximal()
    }

    /// Certificate text for this spread.
    fn certificate(&self) -> String {
        Certificate::from_spread(&self.geom, &self.inner, Provenance::External, None).to_text(&self.geom)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("PartialSpread(q={}, size={})", self.inner.q(), self.inner.len())
    }
}

/// Outcome of verifying a certificate.
#[pyclass(name = "VerifyResult", module = "mps_py", get_all)]
struct PyVerifyResult {
    /// "maximal", "extendable" or "invalid".
    outcome: String,
    q: u32,
    dim: usize,
    size: usize,
    delta: Option<usize>,
    witness: Option<Vec<u32>>,
    message: Option<String>,
}

#[pymethods]
impl PyVerifyResult {
    fn __repr__(&self) -> String {
        format!(
            "VerifyResult(outcome={:?}, size={}, delta={:?})",
            self.outcome, self.size, self.delta
        )
    }
}

/// Reference sizes and deficiency bounds for PG(5,q).
#[pyclass(name = "Bounds", module = "mps_py", get_all)]
struct PyBounds {
    q: u32,
    min_size: usize,
    epsilon: usize,
    delta_min: usize,
    max_size: usize,
    interval_top: usize,
    spread_size: usize,
}

#[pymethods]
impl PyBounds {
    fn __repr__(&self) -> String {
        format!(
            "Bounds(q={}, min_size={}, delta_min={}, max_size={}, spread_size={})",
            self.q, self.min_size, self.delta_min, self.max_size, self.spread_size
        )
    }
}

#[pyfunction]
fn n_max(q: u32) -> PyResult<usize> {
    gf::Field::new(q).map_err(value_err)?;
    Ok(builder::n_max(q))
}

#[pyfunction]
fn bounds(q: u32) -> PyResult<PyBounds> {
    let r = search::bounds(q).map_err(value_err)?;
    Ok(PyBounds {
        q: r.q,
        min_size: r.min_size,
        epsilon: r.epsilon,
        delta_min: r.delta_min,
        max_size: r.max_size,
        interval_top: r.interval_top,
        spread_size: r.spread_size,
    })
}

/// Certificate text of the ladder spread of size q^3+q^2+kq+1 in PG(5,q).
#[pyfunction]
fn construct(q: u32, k: usize) -> PyResult<String> {
    let geom = projgeom::Geometry::new(q, 5).map_err(value_err)?;
    let sub = projgeom::Geometry::new(q, 4).map_err(value_err)?;
    let seed = embed_spread(&geom, &sub, &structured_pg4_seed(&sub), spread::Origin::Hyperplane);
    let cert = builder::build_ladder(&geom, k, &seed).map_err(value_err)?;
    Ok(cert.to_text(&geom))
}

#[pyfunction]
fn verify(text: &str) -> PyResult<PyVerifyResult> {
    let report = cert::verify_text(text).map_err(value_err)?;
    let delta = report.delta();
    let (outcome, witness, message) = match report.outcome {
        Outcome::Maximal => ("maximal", None, None),
        Outcome::Extendable(w) => ("extendable", Some(w.points().to_vec()), None),
        Outcome::Invalid(m) => ("invalid", None, Some(m)),
    };
    Ok(PyVerifyResult {
        outcome: outcome.into(),
        q: report.q,
        dim: report.dim,
        size: report.size,
        delta,
        witness,
        message,
    })
}

/// Searches PG(5,q) for a maximal partial spread of exactly `target` lines
/// and returns its certificate text. Raises `ValueError` for sizes the bounds
/// exclude and `RuntimeError` when the budget runs out.
#[pyfunction]
#[pyo3(signature = (q, target, seed = 1, budget = "ci", jobs = 1))]
fn search_size(py: Python<'_>, q: u32, target: usize, seed: u64, budget: &str, jobs: usize) -> PyResult<String> {
    let row = search::bounds(q).map_err(value_err)?;
    if let Some(reason) = row.refusal(target) {
        return Err(PyValueError::new_err(reason));
    }
    let cfg = budget_config(budget, seed)?;
    let geom = projgeom::Geometry::new(q, 5).map_err(value_err)?;
    py.detach(|| {
        use rand::SeedableRng;
        let mut start = spread::PartialSpread::new(&geom);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        search::greedy_complete(&geom, &mut start, &mut rng, spread::Origin::Search);
        search::parallel_search(&geom, &start, target, &cfg, jobs.max(1))
            .map(|(found, used)| {
                Certificate::from_spread(&geom, &found.spread, Provenance::Search, Some(used)).to_text(&geom)
            })
            .map_err(|f| PyRuntimeError::new_err(f.to_string()))
    })
}

/// Sizes certified by a spectrum scan, mapped to how each was obtained.
#[pyfunction]
#[pyo3(signature = (q, seed = 1, budget = "ci"))]
fn spectrum(py: Python<'_>, q: u32, seed: u64, budget: &str) -> PyResult<Vec<(usize, String)>> {
    let cfg = budget_config(budget, seed)?;
    let geom = projgeom::Geometry::new(q, 5).map_err(value_err)?;
    py.detach(|| {
        search::spectrum_scan(&geom, &search::SpectrumConfig::new(cfg))
            .map(|r| r.achieved.iter().map(|(s, a)| (*s, a.source.to_string())).collect())
            .map_err(|e| PyRuntimeError::new_err(e.to_string()))
    })
}

#[pymodule]
fn mps_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyField>()?;
    m.add_class::<PyGeometry>()?;
    m.add_class::<PyPartialSpread>()?;
    m.add_class::<PyVerifyResult>()?;
    m.add_class::<PyBounds>()?;
    m.add_function(wrap_pyfunction!(n_max, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(construct, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(search_size, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    Ok(())
}
