//! Python bindings: normal-form and torus elements plus the main
//! operations (minors, staircase generators, primitivity data, restoration,
//! normal-element construction, verification suites).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use qmat::document::{
    document_to_pbw, document_to_torus, pbw_to_document, read_document, torus_to_document,
    write_document,
};
use qmat::expr::parse_poly;
use qmat::pbw::q_normal_check;
use qmat::scalars::QLaurent;
use qmat::verify::Suite;
use qmat::{MatElement, Shape, TorusElement};

fn to_py(e: qmat::Error) -> PyErr {
    match e {
        qmat::Error::CheckFailed(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn shape(m: usize, n: usize) -> PyResult<Shape> {
    Shape::new(m, n).map_err(to_py)
}

/// An element of the quantum matrix algebra in normal form.
#[pyclass(name = "Element", skip_from_py_object)]
#[derive(Clone)]
struct PyElement {
    inner: MatElement,
}

#[pymethods]
impl PyElement {
    #[staticmethod]
    fn zero(m: usize, n: usize) -> PyResult<Self> {
        Ok(PyElement {
            inner: MatElement::zero(shape(m, n)?),
        })
    }

    #[staticmethod]
    fn one(m: usize, n: usize) -> PyResult<Self> {
        Ok(PyElement {
            inner: MatElement::one(shape(m, n)?),
        })
    }

    /// The generator `Y[i,a]`, 1-based.
    #[staticmethod]
    fn generator(m: usize, n: usize, i: usize, a: usize) -> PyResult<Self> {
        Ok(PyElement {
            inner: MatElement::generator(shape(m, n)?, i, a).map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = read_document(text).map_err(to_py)?;
        Ok(PyElement {
            inner: document_to_pbw(&doc).map_err(to_py)?,
        })
    }

    fn to_json(&self) -> String {
        write_document(&pbw_to_document(&self.inner))
    }

    fn shape(&self) -> (usize, usize) {
        (self.inner.shape().m(), self.inner.shape().n())
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Multiply by `q^k`.
    fn scale_q(&self, k: i64) -> Self {
        PyElement {
            inner: self.inner.scale(&QLaurent::q_pow(k)),
        }
    }

    /// Per-generator q-commutation ratios, or None when not q-normal.
    fn normal_ratios(&self) -> Option<Vec<String>> {
        q_normal_check(&self.inner).map(|rs| rs.iter().map(|r| r.to_string()).collect())
    }

    fn __add__(&self, other: &PyElement) -> PyResult<Self> {
        Ok(PyElement {
            inner: self.inner.add(&other.inner).map_err(to_py)?,
        })
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<Self> {
        Ok(PyElement {
            inner: self.inner.sub(&other.inner).map_err(to_py)?,
        })
    }

    fn __mul__(&self, other: &PyElement) -> PyResult<Self> {
        Ok(PyElement {
            inner: self.inner.mul(&other.inner).map_err(to_py)?,
        })
    }

    fn __pow__(&self, e: u32, modulo: Option<u32>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(PyValueError::new_err("modular powers are not defined"));
        }
        Ok(PyElement {
            inner: self.inner.pow(e).map_err(to_py)?,
        })
    }

    fn __neg__(&self) -> Self {
        PyElement {
            inner: self.inner.neg(),
        }
    }

    fn __eq__(&self, other: &PyElement) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("{}", self.inner)
    }
}

/// An element of the quantum torus on the `T[i,a]` generators.
#[pyclass(name = "TorusElement", skip_from_py_object)]
#[derive(Clone)]
struct PyTorusElement {
    inner: TorusElement,
}

#[pymethods]
impl PyTorusElement {
    #[staticmethod]
    fn generator(m: usize, n: usize, i: usize, a: usize) -> PyResult<Self> {
        Ok(PyTorusElement {
            inner: TorusElement::generator(shape(m, n)?, i, a).map_err(to_py)?,
        })
    }

    /// A single monomial `q^k * T^exps` with row-major integer exponents.
    #[staticmethod]
    fn monomial(m: usize, n: usize, exps: Vec<i64>, q_power: i64) -> PyResult<Self> {
        Ok(PyTorusElement {
            inner: TorusElement::monomial(shape(m, n)?, &exps, &QLaurent::q_pow(q_power))
                .map_err(to_py)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let doc = read_document(text).map_err(to_py)?;
        Ok(PyTorusElement {
            inner: document_to_torus(&doc).map_err(to_py)?,
        })
    }

    fn to_json(&self) -> String {
        write_document(&torus_to_document(&self.inner))
    }

    fn shape(&self) -> (usize, usize) {
        (self.inner.shape().m(), self.inner.shape().n())
    }

    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    /// Inverse of a single invertible monomial.
    fn inverse(&self) -> PyResult<Self> {
        Ok(PyTorusElement {
            inner: self.inner.inverse_monomial().map_err(to_py)?,
        })
    }

    fn __add__(&self, other: &PyTorusElement) -> PyResult<Self> {
        Ok(PyTorusElement {
            inner: self.inner.add(&other.inner).map_err(to_py)?,
        })
    }

    fn __sub__(&self, other: &PyTorusElement) -> PyResult<Self> {
        Ok(PyTorusElement {
            inner: self.inner.sub(&other.inner).map_err(to_py)?,
        })
    }

    fn __mul__(&self, other: &PyTorusElement) -> PyResult<Self> {
        Ok(PyTorusElement {
            inner: self.inner.mul(&other.inner).map_err(to_py)?,
        })
    }

    fn __eq__(&self, other: &PyTorusElement) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("{}", self.inner)
    }
}

/// Whether the zero ideal of the `(m, n)` algebra is primitive
/// (formula and rank methods cross-checked).
#[pyfunction]
fn is_primitive(m: usize, n: usize) -> PyResult<bool> {
    qmat::spectrum::is_primitive(m, n, qmat::spectrum::PrimitivityMethod::Both).map_err(to_py)
}

/// Dimension of the zero stratum.
#[pyfunction]
fn stratum_dim(m: usize, n: usize) -> PyResult<usize> {
    shape(m, n)?;
    Ok(qmat::spectrum::stratum_dim(m, n))
}

/// Kernel dimension of the commutation matrix, all three methods agreeing.
#[pyfunction]
fn dim_ker_b(m: usize, n: usize) -> PyResult<usize> {
    qmat::spectrum::dim_ker_b_checked(m, n).map_err(to_py)
}

/// The full primitivity report as a JSON string.
#[pyfunction]
fn spectrum_report_json(m: usize, n: usize) -> PyResult<String> {
    let report = qmat::spectrum::spectrum_report(m, n).map_err(to_py)?;
    Ok(serde_json::to_string_pretty(&report).unwrap())
}

/// The quantum minor on the given 1-based row and column sets.
#[pyfunction]
fn quantum_minor(m: usize, n: usize, rows: Vec<usize>, cols: Vec<usize>) -> PyResult<PyElement> {
    Ok(PyElement {
        inner: qmat::minors::quantum_minor(shape(m, n)?, &rows, &cols).map_err(to_py)?,
    })
}

/// The quantum determinant of a square shape.
#[pyfunction]
fn quantum_determinant(m: usize, n: usize) -> PyResult<PyElement> {
    Ok(PyElement {
        inner: qmat::minors::quantum_determinant(shape(m, n)?).map_err(to_py)?,
    })
}

/// The staircase generator `b_i` with its row and column sets.
#[pyfunction]
fn b_generator(m: usize, n: usize, i: usize) -> PyResult<(Vec<usize>, Vec<usize>, PyElement)> {
    let g = qmat::minors::b_generator(shape(m, n)?, i).map_err(to_py)?;
    Ok((g.rows, g.cols, PyElement { inner: g.element }))
}

/// `k` with `x * y = q^k * y * x`, or None when the pair does not q-commute.
#[pyfunction]
fn commutation_exponent(x: &PyElement, y: &PyElement) -> PyResult<Option<i64>> {
    qmat::minors::commutation_exponent(&x.inner, &y.inner).map_err(to_py)
}

/// Build the normal element for a polynomial (given as text over X1..Xd).
#[pyfunction]
fn build_u(m: usize, n: usize, poly: &str) -> PyResult<PyElement> {
    shape(m, n)?;
    let v = parse_poly(poly, num::integer::gcd(m, n)).map_err(to_py)?;
    Ok(PyElement {
        inner: qmat::spectrum::build_u(m, n, &v).map_err(to_py)?,
    })
}

/// Restore the matrix generators inside the torus; with `verify=True` the
/// defining relations and staircase monomials are checked.
#[pyfunction]
#[pyo3(signature = (m, n, verify = true))]
fn restore_generators(m: usize, n: usize, verify: bool) -> PyResult<Vec<PyTorusElement>> {
    let restored = qmat::restoration::restore_generators(shape(m, n)?).map_err(to_py)?;
    if verify {
        qmat::restoration::verify_embedding(&restored).map_err(to_py)?;
        qmat::restoration::verify_b_monomials(&restored).map_err(to_py)?;
    }
    Ok(restored
        .entries()
        .iter()
        .map(|t| PyTorusElement { inner: t.clone() })
        .collect())
}

/// Exponent vectors of the central torus monomials (with certificate).
#[pyfunction]
fn center_vectors(m: usize, n: usize) -> PyResult<Vec<Vec<i64>>> {
    Ok(qmat::torus::center_basis(shape(m, n)?)
        .map_err(to_py)?
        .vectors)
}

/// Run a named verification suite; returns (name, passed, detail) triples.
#[pyfunction]
#[pyo3(signature = (suite = "all", max_size = 6))]
fn verify_suite(suite: &str, max_size: usize) -> PyResult<Vec<(String, bool, String)>> {
    let suite: Suite = suite.parse().map_err(to_py)?;
    Ok(qmat::verify::run_suite(suite, max_size)
        .into_iter()
        .map(|c| (c.name, c.pass, c.detail))
        .collect())
}

#[pymodule]
fn qmat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyElement>()?;
    m.add_class::<PyTorusElement>()?;
    m.add_function(wrap_pyfunction!(is_primitive, m)?)?;
    m.add_function(wrap_pyfunction!(stratum_dim, m)?)?;
    m.add_function(wrap_pyfunction!(dim_ker_b, m)?)?;
    m.add_function(wrap_pyfunction!(spectrum_report_json, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_minor, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_determinant, m)?)?;
    m.add_function(wrap_pyfunction!(b_generator, m)?)?;
    m.add_function(wrap_pyfunction!(commutation_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(build_u, m)?)?;
    m.add_function(wrap_pyfunction!(restore_generators, m)?)?;
    m.add_function(wrap_pyfunction!(center_vectors, m)?)?;
    m.add_function(wrap_pyfunction!(verify_suite, m)?)?;
    Ok(())
}
