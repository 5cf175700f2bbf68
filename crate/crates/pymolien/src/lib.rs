//! Python bindings: group descriptions, Molien series along the exact and
//! quadrature paths, the decomposition verifier, and the invariance oracles.

// The #[pyfunction]/#[pymethods] expansions insert an identity PyErr
// conversion that newer clippy flags; it is not present in this source.
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use molien::algebra::scalar::parse_rational;
use molien::group::DEFAULT_CLOSURE_CAP;
use molien::{Mat, Polynomial, Scalar};

fn to_py_err(e: molien::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accept ints and `p/q` strings as exact rationals, floats as floats.
fn scalar_from_py(v: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if let Ok(i) = v.extract::<i64>() {
        return Ok(Scalar::from_int(i));
    }
    if let Ok(s) = v.extract::<String>() {
        return parse_rational(&s).map(Scalar::Exact).map_err(to_py_err);
    }
    v.extract::<f64>().map(Scalar::from_f64)
}

fn mat_from_py(rows: &Bound<'_, PyAny>) -> PyResult<Mat<Scalar>> {
    let rows: Vec<Vec<Bound<'_, PyAny>>> = rows.extract()?;
    let converted: Vec<Vec<Scalar>> =
        rows.iter().map(|row| row.iter().map(scalar_from_py).collect()).collect::<PyResult<_>>()?;
    Mat::from_rows(converted).map_err(to_py_err)
}

fn poly_from_terms(terms: Vec<(Bound<'_, PyAny>, Vec<u32>)>) -> PyResult<Polynomial> {
    let nvars = terms
        .first()
        .map(|(_, exps)| exps.len())
        .ok_or_else(|| PyValueError::new_err("polynomial needs at least one term"))?;
    let converted: Vec<(Vec<u32>, Scalar)> = terms
        .into_iter()
        .map(|(c, exps)| Ok((exps, scalar_from_py(&c)?)))
        .collect::<PyResult<_>>()?;
    Polynomial::from_terms(nvars, converted).map_err(to_py_err)
}

/// A compact matrix group: rotation blocks sharing one angle, a finite
/// factor, and commuting involutions.
#[pyclass(name = "GroupSpec")]
#[derive(Clone)]
struct PyGroupSpec {
    inner: molien::GroupSpec,
}

#[pymethods]
impl PyGroupSpec {
    #[new]
    fn new(dim: usize) -> Self {
        PyGroupSpec { inner: molien::GroupSpec::new(dim) }
    }

    /// Parse a spec file; `theta` overrides the file's value.
    #[staticmethod]
    #[pyo3(signature = (path, theta=None))]
    fn from_file(path: &str, theta: Option<f64>) -> PyResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| PyValueError::new_err(format!("cannot read {path}: {e}")))?;
        Self::from_text(&text, theta)
    }

    /// Parse the spec-file format from a string.
    #[staticmethod]
    #[pyo3(signature = (text, theta=None))]
    fn from_text(text: &str, theta: Option<f64>) -> PyResult<Self> {
        let file = molien::parse_spec(text).map_err(to_py_err)?;
        let inner = file.to_group_spec(theta).map_err(to_py_err)?;
        Ok(PyGroupSpec { inner })
    }

    fn add_circle_block(&mut self, i: usize, j: usize) {
        self.inner.circle_blocks.push((i, j));
    }

    fn add_finite_generator(&mut self, rows: &Bound<'_, PyAny>) -> PyResult<()> {
        self.inner.finite_factor.push(mat_from_py(rows)?);
        Ok(())
    }

    fn add_involution(&mut self, rows: &Bound<'_, PyAny>) -> PyResult<()> {
        self.inner.involutions.push(mat_from_py(rows)?);
        Ok(())
    }

    fn set_signature(&mut self, signature: Vec<i8>) {
        self.inner.signature = Some(signature);
    }

    /// Raise if the involutions do not square to the identity and commute,
    /// or the circle blocks overlap.
    fn validate(&self) -> PyResult<()> {
        self.inner.validate().map_err(to_py_err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn theta(&self) -> Option<f64> {
        self.inner.theta
    }

    fn __repr__(&self) -> String {
        format!(
            "GroupSpec(dim={}, circle_blocks={}, finite_generators={}, involutions={})",
            self.inner.dim,
            self.inner.circle_blocks.len(),
            self.inner.finite_factor.len(),
            self.inner.involutions.len()
        )
    }
}

/// Molien series coefficients through `max_degree`, as floats.
#[pyfunction]
#[pyo3(signature = (spec, max_degree=16))]
fn molien_series(spec: &PyGroupSpec, max_degree: usize) -> PyResult<Vec<f64>> {
    Ok(molien::molien_fubini(&spec.inner, max_degree).map_err(to_py_err)?.to_f64_vec())
}

/// Molien series rounded to integers; raises if a coefficient is farther
/// than `tol` from an integer.
#[pyfunction]
#[pyo3(signature = (spec, max_degree=16, tol=1e-6))]
fn molien_series_rounded(spec: &PyGroupSpec, max_degree: usize, tol: f64) -> PyResult<Vec<i64>> {
    let series = molien::molien_fubini(&spec.inner, max_degree).map_err(to_py_err)?;
    let rounded = series.round_to_exact(tol).map_err(to_py_err)?;
    Ok(rounded.as_integers().expect("rounded series is integral"))
}

/// Molien series with the circle integral replaced by `nodes`-point
/// trapezoid quadrature.
#[pyfunction]
#[pyo3(signature = (spec, max_degree=16, nodes=64))]
fn quad_series(spec: &PyGroupSpec, max_degree: usize, nodes: usize) -> PyResult<Vec<f64>> {
    Ok(molien::quad_molien(&spec.inner, max_degree, nodes).map_err(to_py_err)?.to_f64_vec())
}

/// Exact Molien series of a fully finite description.
#[pyfunction]
#[pyo3(signature = (spec, max_degree=16, cap=DEFAULT_CLOSURE_CAP))]
fn finite_series(spec: &PyGroupSpec, max_degree: usize, cap: usize) -> PyResult<Vec<i64>> {
    spec.inner.validate().map_err(to_py_err)?;
    let group = spec.inner.full_finite_group(cap).map_err(to_py_err)?;
    let series = molien::molien_finite(&group, max_degree);
    series
        .as_integers()
        .ok_or_else(|| PyValueError::new_err("finite series has non-integer coefficients"))
}

/// Check the semidirect decomposition of a finite description; returns the
/// flag dictionary.
#[pyfunction]
#[pyo3(signature = (spec, cap=DEFAULT_CLOSURE_CAP))]
fn verify_decomposition(
    py: Python<'_>,
    spec: &PyGroupSpec,
    cap: usize,
) -> PyResult<Py<pyo3::types::PyDict>> {
    let report = molien::verify_semidirect(&spec.inner.finite_factor, &spec.inner.involutions, cap)
        .map_err(to_py_err)?;
    let dict = pyo3::types::PyDict::new_bound(py);
    dict.set_item("sigma_normal", report.sigma_normal)?;
    dict.set_item("delta_normal", report.delta_normal)?;
    dict.set_item("product_covers", report.product_covers)?;
    dict.set_item("intersections_trivial", report.intersections_trivial)?;
    dict.set_item("overall", report.overall)?;
    Ok(dict.into())
}

/// Invariant dimensions of a fully finite description for degrees
/// `0..=d_max`, counted with the averaging projector.
#[pyfunction]
fn reynolds_dims(spec: &PyGroupSpec, d_max: u32) -> PyResult<Vec<usize>> {
    molien::sample_finite_invariant_dims(&spec.inner, d_max).map_err(to_py_err)
}

/// Max invariance residual of a polynomial given as `(coeff, exponents)`
/// terms, sampled at random points and rotation angles.
#[pyfunction]
#[pyo3(signature = (spec, terms, samples=25))]
fn check_invariant(
    spec: &PyGroupSpec,
    terms: Vec<(Bound<'_, PyAny>, Vec<u32>)>,
    samples: usize,
) -> PyResult<f64> {
    let poly = poly_from_terms(terms)?;
    molien::check_invariant_spec(&poly, &spec.inner, samples).map_err(to_py_err)
}

/// Run every polynomial in a term-list file against the group; returns
/// `(name, residual)` pairs.
#[pyfunction]
#[pyo3(signature = (spec, path, samples=25))]
fn check_invariant_file(
    spec: &PyGroupSpec,
    path: &str,
    samples: usize,
) -> PyResult<Vec<(String, f64)>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| PyValueError::new_err(format!("cannot read {path}: {e}")))?;
    let polys = molien::parse_poly_file(&text).map_err(to_py_err)?;
    polys
        .iter()
        .map(|entry| {
            let residual = molien::check_invariant_spec(&entry.poly, &spec.inner, samples)
                .map_err(to_py_err)?;
            Ok((entry.name.clone(), residual))
        })
        .collect()
}

#[pymodule]
fn pymolien(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroupSpec>()?;
    m.add_function(wrap_pyfunction!(molien_series, m)?)?;
    m.add_function(wrap_pyfunction!(molien_series_rounded, m)?)?;
    m.add_function(wrap_pyfunction!(quad_series, m)?)?;
    m.add_function(wrap_pyfunction!(finite_series, m)?)?;
    m.add_function(wrap_pyfunction!(verify_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(reynolds_dims, m)?)?;
    m.add_function(wrap_pyfunction!(check_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(check_invariant_file, m)?)?;
    Ok(())
}
