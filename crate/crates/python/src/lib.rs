//! Python bindings: presentations, triangulations, Alexander balls, norm
//! bounds, fibering certificates and the arithmetic tower.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fiberface_core::alexander::{alexander_ball, alexander_polynomial};
use fiberface_core::dualsurface::{randomized_norm_search, SearchConfig};
use fiberface_core::fibering::{self, FiberOptions, Verdict, WHITEHEAD_TRI};
use fiberface_core::fpgroup::{self, reidemeister_schreier, CosetTable};
use fiberface_core::triangulation::{self, cohomology_basis, homology};
use fiberface_core::{arith, Error};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen, module = "fiberface")]
#[derive(Clone)]
pub struct Presentation {
    inner: fpgroup::Presentation,
}

#[pymethods]
impl Presentation {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Presentation { inner: fpgroup::Presentation::parse(text).map_err(err)? })
    }

    #[getter]
    fn ngens(&self) -> usize {
        self.inner.ngens()
    }

    /// Invariants of H₁ as `(rank, [torsion...])`.
    fn homology(&self) -> (usize, Vec<u64>) {
        let h = self.inner.abelianization();
        (h.rank, h.torsion_u64())
    }

    /// Presentation of the subgroup described by a coset table.
    fn subgroup(&self, table: &str) -> PyResult<Presentation> {
        let t = CosetTable::parse(table, &self.inner).map_err(err)?;
        Ok(Presentation { inner: reidemeister_schreier(&self.inner, &t).presentation })
    }

    /// `(delta, ball report)`; the ball is `None` when the polynomial is 0.
    fn alexander(&self) -> PyResult<(String, Option<String>)> {
        let data = alexander_polynomial(&self.inner).map_err(err)?;
        let ball = if data.delta.is_zero() { None } else { Some(alexander_ball(&data.delta).map_err(err)?.report().to_string()) };
        Ok((data.delta.pretty(), ball))
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(frozen, module = "fiberface")]
pub struct Triangulation {
    inner: triangulation::Triangulation,
}

#[pymethods]
impl Triangulation {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Triangulation { inner: triangulation::Triangulation::parse(text).map_err(err)? })
    }

    /// The bundled Whitehead link exterior.
    #[staticmethod]
    fn whitehead() -> Self {
        Triangulation { inner: triangulation::Triangulation::parse(WHITEHEAD_TRI).unwrap() }
    }

    #[getter]
    fn ntets(&self) -> usize {
        self.inner.ntets()
    }

    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    fn homology(&self) -> (usize, Vec<u64>) {
        let h = homology(&self.inner);
        (h.rank, h.torsion_u64())
    }

    /// Thurston-norm upper bound for a class given in the cohomology basis.
    #[pyo3(signature = (coeffs, budget = 0, seed = 0, workers = 1))]
    fn norm_bound(&self, coeffs: Vec<i64>, budget: usize, seed: u64, workers: usize) -> PyResult<i64> {
        let c = self.class(&coeffs)?;
        let cfg = SearchConfig { budget, seed, workers, ..Default::default() };
        let out = randomized_norm_search(&self.inner, &[c], &cfg).map_err(err)?;
        Ok(out.best[0].bound)
    }

    #[pyo3(signature = (coeffs, budget = 0, seed = 0))]
    fn certify(&self, coeffs: Vec<i64>, budget: usize, seed: u64) -> PyResult<Certificate> {
        let c = self.class(&coeffs)?;
        let opts = FiberOptions { search_budget: budget, seed, ..Default::default() };
        let cert = fibering::certify_fiber(&self.inner, &c, &opts).map_err(err)?;
        Ok(Certificate { fibers: cert.verdict == Verdict::Fibers, euler: cert.euler, report: cert.report().to_string() })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }
}

impl Triangulation {
    fn class(&self, coeffs: &[i64]) -> PyResult<triangulation::Cocycle> {
        let basis = cohomology_basis(&self.inner);
        if basis.len() != coeffs.len() {
            return Err(PyValueError::new_err(format!("expected {} coordinates, got {}", basis.len(), coeffs.len())));
        }
        Ok(triangulation::Cocycle::combine(&self.inner, &basis, coeffs))
    }
}

#[pyclass(frozen, get_all, module = "fiberface")]
pub struct Certificate {
    fibers: bool,
    euler: i64,
    /// `cert v1` text.
    report: String,
}

/// `whitehead v1` report of the n-th cyclic Whitehead cover.
#[pyfunction]
#[pyo3(signature = (n, budget = 0, seed = 0, workers = 1))]
fn whitehead(n: usize, budget: usize, seed: u64, workers: usize) -> PyResult<String> {
    let base = triangulation::Triangulation::parse(WHITEHEAD_TRI).unwrap();
    let opts = FiberOptions { seed, ..Default::default() };
    let cfg = SearchConfig { budget, seed, workers, ..Default::default() };
    Ok(fibering::whitehead_report(&base, n, &opts, &cfg).map_err(err)?.to_string())
}

#[pyfunction]
fn special_primes(limit: u64) -> Vec<u64> {
    arith::special_primes(limit)
}

#[pyfunction]
fn ap(p: u64) -> PyResult<i64> {
    arith::EllipticCurve::cm49().ap(p).map_err(err)
}

#[pyfunction]
fn legendre(a: i64, p: i64) -> PyResult<i8> {
    arith::legendre(a, p).map_err(err)
}

#[pyfunction]
fn genus_gamma0(n: u64) -> PyResult<u64> {
    arith::genus_gamma0(n).map_err(err)
}

/// Decimal string, since the degree outgrows machine integers quickly.
#[pyfunction]
fn tower_degree(n: usize) -> String {
    arith::tower_degree(n).to_string()
}

/// TSV tower report for levels 1..=n.
#[pyfunction]
fn tower(n: usize) -> PyResult<String> {
    Ok(arith::tower_report(n).map_err(err)?.to_string())
}

#[pymodule]
pub fn fiberface(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    m.add_class::<Triangulation>()?;
    m.add_class::<Certificate>()?;
    m.add_function(wrap_pyfunction!(whitehead, m)?)?;
    m.add_function(wrap_pyfunction!(special_primes, m)?)?;
    m.add_function(wrap_pyfunction!(ap, m)?)?;
    m.add_function(wrap_pyfunction!(legendre, m)?)?;
    m.add_function(wrap_pyfunction!(genus_gamma0, m)?)?;
    m.add_function(wrap_pyfunction!(tower_degree, m)?)?;
    m.add_function(wrap_pyfunction!(tower, m)?)?;
    Ok(())
}
