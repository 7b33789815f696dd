//! Python bindings: fixtures in and out as JSON text, scalars as fraction strings.

use diassocle::algebra::{self, DiassRepData};
use diassocle::cochain;
use diassocle::cohomology::{betti, diass_complex, les_check, operator_complex, ComplexSpec, RAvgContext};
use diassocle::constructions::{graph_is_subalgebra, induced_diass, nijenhuis_check, quotient_ravg};
use diassocle::fixture::{self, Fixture};
use diassocle::homotopy::{bidegree_vanishing, mc_check_ravg};
use diassocle::instances;
use diassocle::linalg::{format_scalar, parse_scalar, Matrix, Scalar};
use diassocle::trees::{self as tr, PlanarTree};
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

fn err(e: diassocle::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(format_scalar).collect()
}

fn parse_rows(rows: Vec<Vec<String>>) -> PyResult<Matrix> {
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| r.iter().map(|s| parse_scalar(s)).collect::<diassocle::Result<_>>())
        .collect::<diassocle::Result<_>>()
        .map_err(err)?;
    Matrix::from_rows(&rows).map_err(err)
}

fn betti_numbers(spec: &ComplexSpec, nmax: usize) -> PyResult<Vec<usize>> {
    (0..=nmax).map(|n| betti(spec, n).map(|h| h.dim).map_err(err)).collect()
}

fn parse_tree(s: &str) -> PyResult<PlanarTree> {
    PlanarTree::parse(s).map_err(err)
}

/// A relative averaging algebra `P : M → A`.
#[pyclass(name = "RAvgAlgebra", module = "diassocle_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyRAvg {
    inner: algebra::RAvgAlgebra,
}

#[pymethods]
impl PyRAvg {
    /// One of the shipping instances, by name.
    #[staticmethod]
    fn shipping(name: &str) -> PyResult<PyRAvg> {
        instances::shipping()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, r)| PyRAvg { inner: r })
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))
    }

    #[staticmethod]
    fn names() -> Vec<&'static str> {
        instances::shipping().into_iter().map(|(n, _)| n).collect()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyRAvg> {
        match fixture::parse_str(text).map_err(err)?.1 {
            Fixture::Ravg(r) => Ok(PyRAvg { inner: r }),
            other => Err(PyValueError::new_err(format!("expected a ravg fixture, got {}", other.kind()))),
        }
    }

    #[pyo3(signature = (name=None))]
    fn to_json(&self, name: Option<&str>) -> String {
        fixture::to_string(&Fixture::Ravg(self.inner.clone()), name)
    }

    #[getter]
    fn dims(&self) -> (usize, usize) {
        (self.inner.a.dim, self.inner.m.dim)
    }

    /// `P` as rows of fraction strings.
    #[getter]
    fn operator(&self) -> Vec<Vec<String>> {
        (0..self.inner.p.rows).map(|i| strings(self.inner.p.row(i))).collect()
    }

    fn with_operator(&self, rows: Vec<Vec<String>>) -> PyResult<PyRAvg> {
        let p = parse_rows(rows)?;
        if (p.rows, p.cols) != (self.inner.a.dim, self.inner.m.dim) {
            return Err(PyValueError::new_err("operator has the wrong shape"));
        }
        Ok(PyRAvg { inner: self.inner.with_operator(p) })
    }

    fn verify(&self) -> PyResult<bool> {
        Ok(algebra::verify_relative_averaging(&self.inner).map_err(err)?.is_valid())
    }

    fn report(&self) -> PyResult<String> {
        Ok(algebra::verify_relative_averaging(&self.inner).map_err(err)?.to_text())
    }

    fn graph_is_subalgebra(&self) -> bool {
        graph_is_subalgebra(&self.inner)
    }

    fn nijenhuis_check(&self) -> bool {
        nijenhuis_check(&self.inner)
    }

    /// Whether `P` is a Maurer–Cartan element of the controlling structure.
    fn mc_check(&self) -> PyResult<bool> {
        mc_check_ravg(&self.inner).map_err(err)
    }

    fn bidegree_vanishing(&self) -> PyResult<bool> {
        bidegree_vanishing(&self.inner).map_err(err)
    }

    /// `dim H^n_rAvg` with adjoint coefficients, `n = 0..=nmax`.
    #[pyo3(signature = (nmax=3))]
    fn betti(&self, nmax: usize) -> PyResult<Vec<usize>> {
        let ctx = RAvgContext::adjoint(&self.inner).map_err(err)?;
        betti_numbers(&ctx.complex(nmax).map_err(err)?, nmax)
    }

    /// `dim H^n_P`, `n = 0..=nmax`.
    #[pyo3(signature = (nmax=3))]
    fn operator_betti(&self, nmax: usize) -> PyResult<Vec<usize>> {
        betti_numbers(&operator_complex(&self.inner, nmax).map_err(err)?, nmax)
    }

    #[pyo3(signature = (nmax=3))]
    fn les_exact(&self, nmax: usize) -> PyResult<bool> {
        let ctx = RAvgContext::adjoint(&self.inner).map_err(err)?;
        Ok(les_check(&ctx, nmax).map_err(err)?.is_exact())
    }

    /// `M_P` with `u ⊣ v = u·P(v)` and `u ⊢ v = P(u)·v`.
    fn induced_diass(&self) -> PyDiass {
        PyDiass { inner: induced_diass(&self.inner) }
    }

    /// `P` as an arity-1 cochain.
    fn operator_cochain(&self) -> PyCochain {
        PyCochain { inner: cochain::Cochain::from_matrix(&self.inner.p) }
    }

    fn derived_bracket(&self, f: &PyCochain, g: &PyCochain) -> PyResult<PyCochain> {
        let b = cochain::DerivedBracket::new(&self.inner.a, &self.inner.m);
        Ok(PyCochain { inner: b.bracket(&f.inner, &g.inner).map_err(err)? })
    }

    fn d_p(&self, f: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain { inner: cochain::d_p(&f.inner, &self.inner).map_err(err)? })
    }

    fn theta(&self, f: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain { inner: cochain::theta(&f.inner, &self.inner).map_err(err)? })
    }

    fn __eq__(&self, other: &PyRAvg) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("RAvgAlgebra(dim A = {}, dim M = {})", self.inner.a.dim, self.inner.m.dim)
    }
}

/// A diassociative algebra `(D, ⊣, ⊢)`.
#[pyclass(name = "DiassAlgebra", module = "diassocle_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDiass {
    inner: algebra::DiassData,
}

#[pymethods]
impl PyDiass {
    #[staticmethod]
    fn shipping(name: &str) -> PyResult<PyDiass> {
        instances::diass_shipping()
            .into_iter()
            .find(|(n, _)| *n == name)
            .map(|(_, d)| PyDiass { inner: d })
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))
    }

    #[staticmethod]
    fn names() -> Vec<&'static str> {
        instances::diass_shipping().into_iter().map(|(n, _)| n).collect()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyDiass> {
        match fixture::parse_str(text).map_err(err)?.1 {
            Fixture::Diass(d) => Ok(PyDiass { inner: d }),
            other => Err(PyValueError::new_err(format!("expected a diass fixture, got {}", other.kind()))),
        }
    }

    #[pyo3(signature = (name=None))]
    fn to_json(&self, name: Option<&str>) -> String {
        fixture::to_string(&Fixture::Diass(self.inner.clone()), name)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    fn verify(&self) -> bool {
        algebra::verify_diass(&self.inner).is_valid()
    }

    /// `dim H^n_Diass(D, D)`, `n = 0..=nmax`.
    #[pyo3(signature = (nmax=3))]
    fn betti(&self, nmax: usize) -> PyResult<Vec<usize>> {
        let spec = diass_complex(&self.inner, &DiassRepData::adjoint(&self.inner), nmax).map_err(err)?;
        betti_numbers(&spec, nmax)
    }

    /// `D → D_Ass` as a relative averaging algebra.
    fn quotient(&self) -> PyResult<PyRAvg> {
        Ok(PyRAvg { inner: quotient_ravg(&self.inner).map_err(err)?.ravg })
    }

    /// Both products as an arity-2 cochain.
    fn cochain(&self) -> PyCochain {
        PyCochain { inner: cochain::Cochain::from_diass(&self.inner) }
    }

    fn __eq__(&self, other: &PyDiass) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("DiassAlgebra(dim = {})", self.inner.dim)
    }
}

/// A tree-indexed multilinear map `Q[Y_n] ⊗ V^{⊗n} → W`.
#[pyclass(name = "Cochain", module = "diassocle_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyCochain {
    inner: cochain::Cochain,
}

#[pymethods]
impl PyCochain {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<PyCochain> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyCochain { inner: cochain::Cochain::from_json(&v).map_err(err)? })
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.inner.to_json()).expect("JSON values serialize")
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// The tree-indexed bracket `[self, other]`.
    fn mm_bracket(&self, other: &PyCochain) -> PyResult<PyCochain> {
        Ok(PyCochain { inner: cochain::mm_bracket(&self.inner, &other.inner).map_err(err)? })
    }

    fn __eq__(&self, other: &PyCochain) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Cochain(arity = {})", self.inner.arity)
    }
}

#[pyfunction]
fn catalan(n: usize) -> usize {
    tr::catalan(n)
}

/// Display strings of the planar binary trees with `n` internal vertices.
#[pyfunction]
#[pyo3(name = "trees")]
fn planar_trees(n: usize) -> PyResult<Vec<String>> {
    Ok(tr::enumerate_trees(n).map_err(err)?.iter().map(|y| y.to_string()).collect())
}

#[pyfunction]
fn face(tree: &str, i: usize) -> PyResult<String> {
    Ok(parse_tree(tree)?.face(i).map_err(err)?.to_string())
}

/// `"⊣"` or `"⊢"`.
#[pyfunction]
fn star(tree: &str, i: usize) -> PyResult<&'static str> {
    Ok(parse_tree(tree)?.star(i).map_err(err)?.symbol())
}

/// Verifies any fixture text; returns `(kind, valid, report)`.
#[pyfunction]
fn verify_fixture(text: &str) -> PyResult<(String, bool, String)> {
    let (_, f) = fixture::parse_str(text).map_err(err)?;
    let rep = fixture::verify(&f, diassocle::homotopy::DEFAULT_MAX_ARITY).map_err(err)?;
    Ok((f.kind().to_string(), rep.is_valid(), rep.to_text()))
}

/// Runs the command-line tool in-process; returns `(code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = diassocle::cli::run(std::iter::once("diassocle".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn diassocle_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRAvg>()?;
    m.add_class::<PyDiass>()?;
    m.add_class::<PyCochain>()?;
    m.add_function(wrap_pyfunction!(catalan, m)?)?;
    m.add_function(wrap_pyfunction!(planar_trees, m)?)?;
    m.add_function(wrap_pyfunction!(face, m)?)?;
    m.add_function(wrap_pyfunction!(star, m)?)?;
    m.add_function(wrap_pyfunction!(verify_fixture, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
