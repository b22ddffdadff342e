//! Python bindings: root systems, toroidal-algebra elements with exact
//! rational coefficients, automorphisms, the level-one vertex module, and
//! Weyl-module dimension tables.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use toroidal::charseries::{char_l0, product_expand, Caps, ProductFactor};
use toroidal::cli::{parse_elt, parse_rat};
use toroidal::torlie::{tor_bracket, verify_presentation, TorElt};
use toroidal::vrep::{act_tor, enumerate_basis, VElt, Window};
use toroidal::weylmod::{presented_weyl_dims, rank_spanning, WeylConfig};

fn err(e: toroidal::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite simply-laced root system (types A, D, E).
#[pyclass(name = "RootSystem", frozen)]
struct PyRootSystem {
    rs: Arc<toroidal::rootdata::RootSystem>,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(name: &str) -> PyResult<Self> {
        Ok(PyRootSystem {
            rs: Arc::new(toroidal::rootdata::RootSystem::parse(name).map_err(err)?),
        })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.rs.rank
    }

    #[getter]
    fn name(&self) -> String {
        self.rs.name()
    }

    /// Positive roots in simple-root coordinates.
    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.rs.positive_roots.clone()
    }

    /// Parse an element, e.g. `"E(1)*s*t"` or `"2*C(1,-1) + cs"`.
    fn element(&self, text: &str) -> PyResult<PyElement> {
        Ok(PyElement {
            elt: parse_elt(&self.rs, text).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("RootSystem({:?})", self.rs.name())
    }
}

/// An element of the toroidal Lie algebra with exact rational coefficients.
#[pyclass(name = "Element", frozen)]
#[derive(Clone)]
struct PyElement {
    elt: TorElt,
}

#[pymethods]
impl PyElement {
    fn __str__(&self) -> String {
        self.elt.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({:?})", self.elt.to_string())
    }

    fn __add__(&self, other: &PyElement) -> PyResult<PyElement> {
        let mut out = self.elt.clone();
        out.add_assign(&other.elt).map_err(err)?;
        Ok(PyElement { elt: out })
    }

    fn __sub__(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement {
            elt: self.elt.sub(&other.elt).map_err(err)?,
        })
    }

    /// Multiply by an exact rational given as a string, e.g. `"-3/2"`.
    fn scale(&self, c: &str) -> PyResult<PyElement> {
        let mut out = self.elt.clone();
        out.scale(&parse_rat(c).map_err(err)?);
        Ok(PyElement { elt: out })
    }

    /// Lie bracket with another element.
    fn bracket(&self, other: &PyElement) -> PyResult<PyElement> {
        Ok(PyElement {
            elt: tor_bracket(&self.elt, &other.elt).map_err(err)?,
        })
    }

    fn is_zero(&self) -> bool {
        self.elt.is_zero()
    }

    /// Apply the swap automorphism (`power = 1`) or its inverse (`-1`).
    fn apply_s(&self, power: i32) -> PyElement {
        PyElement {
            elt: toroidal::autos::apply_s(&self.elt, power),
        }
    }

    /// Apply the shift automorphism at the rational point `a`.
    fn tau_shift(&self, a: &str) -> PyResult<PyElement> {
        Ok(PyElement {
            elt: toroidal::autos::tau_shift(&parse_rat(a).map_err(err)?, &self.elt)
                .map_err(err)?,
        })
    }

    /// Act on the vacuum of the level-one vertex module; returns
    /// `(terms, truncated)` where each term is `(state_repr, coeff)`.
    fn act_on_vacuum(&self, dmax: i64) -> PyResult<(Vec<(String, String)>, bool)> {
        let rs = self.elt.rs.clone();
        let v = act_tor(&self.elt, &VElt::vacuum(rs, Window::new(dmax, -dmax, dmax)))
            .map_err(err)?;
        let terms = v
            .terms
            .iter()
            .map(|(st, c)| (format!("{st:?}"), c.to_string()))
            .collect();
        Ok((terms, v.truncated))
    }
}

/// Check the finite presentation of the toroidal algebra under the
/// generator map; returns `(relations_checked, failures)`.
#[pyfunction]
#[pyo3(signature = (rs, range=2, nonneg=false))]
fn check_presentation(
    rs: &PyRootSystem,
    range: i64,
    nonneg: bool,
) -> PyResult<(usize, Vec<String>)> {
    let report = verify_presentation(&rs.rs, range, nonneg).map_err(err)?;
    Ok((report.checked, report.failures))
}

/// Number of vertex-module basis states in the given window.
#[pyfunction]
fn basis_count(rs: &PyRootSystem, dmax: i64, tau_min: i64, tau_max: i64) -> usize {
    enumerate_basis(&rs.rs, &Window::new(dmax, tau_min, tau_max)).len()
}

/// Coefficients of the level-one affine character up to depth `m_max`,
/// as a list of `(weight, m, coefficient)`.
#[pyfunction]
fn affine_character(rs: &PyRootSystem, m_max: i64) -> Vec<(Vec<i64>, i64, i64)> {
    char_l0(&rs.rs, Caps::new(m_max, 0))
        .coeffs
        .into_iter()
        .map(|((w, m, _), c)| (w, m, c))
        .collect()
}

fn table_to_py(table: toroidal::weylmod::DimTable) -> Vec<(Vec<i64>, i64, i64, usize)> {
    table
        .entries
        .into_iter()
        .map(|((weight, m, n), dim)| (weight, m, n, dim))
        .collect()
}

/// Graded dimensions of the presented level-one global Weyl module,
/// as a list of `(weight, m, n, dim)`.
#[pyfunction]
fn presented_dims(rs: &PyRootSystem, m_max: i64, n_max: i64) -> PyResult<Vec<(Vec<i64>, i64, i64, usize)>> {
    let cfg = WeylConfig::new(
        rs.rs.clone(),
        toroidal::rat(0),
        Caps::new(m_max, n_max),
    );
    Ok(table_to_py(presented_weyl_dims(&cfg).map_err(err)?))
}

/// Exact ranks of the spanning set in the specialized pulled-back vertex
/// module at the nonzero rational point `a`, as `(weight, m, n, dim)`.
#[pyfunction]
fn rank_dims(rs: &PyRootSystem, m_max: i64, a: &str) -> PyResult<Vec<(Vec<i64>, i64, i64, usize)>> {
    let cfg = WeylConfig::new(
        rs.rs.clone(),
        parse_rat(a).map_err(err)?,
        Caps::new(m_max, 0),
    );
    Ok(table_to_py(rank_spanning(&cfg).map_err(err)?))
}

/// The expected product-formula dimensions at the same labels,
/// as `(weight, m, n, dim)`; `factor` is `"p"` or `"pq"`.
#[pyfunction]
fn formula_dims(
    rs: &PyRootSystem,
    m_max: i64,
    n_max: i64,
    factor: &str,
) -> PyResult<Vec<(Vec<i64>, i64, i64, i64)>> {
    let caps = Caps::new(m_max, n_max);
    let f = match factor {
        "p" => ProductFactor::PPow,
        "pq" => ProductFactor::PPowQ,
        other => return Err(PyValueError::new_err(format!("unknown factor `{other}`"))),
    };
    let ch = product_expand(&char_l0(&rs.rs, caps), f, caps);
    Ok(ch
        .coeffs
        .into_iter()
        .map(|((w, m, n), c)| (w, m, n, c))
        .collect())
}

/// Run the full verification suite; returns `(name, passed, detail)` per check.
#[pyfunction]
#[pyo3(signature = (max_delta=2, max_s=2))]
fn verify_all(max_delta: i64, max_s: i64) -> PyResult<Vec<(String, bool, String)>> {
    let opts = toroidal::verify::VerifyOptions {
        max_delta,
        max_s,
        budget: toroidal::weylmod::DEFAULT_BUDGET,
    };
    let checks = toroidal::verify::run_all(&opts).map_err(err)?;
    Ok(checks
        .into_iter()
        .map(|c| (c.name, c.passed, c.detail))
        .collect())
}

#[pymodule]
fn toroidal_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyElement>()?;
    m.add_function(wrap_pyfunction!(check_presentation, m)?)?;
    m.add_function(wrap_pyfunction!(basis_count, m)?)?;
    m.add_function(wrap_pyfunction!(affine_character, m)?)?;
    m.add_function(wrap_pyfunction!(presented_dims, m)?)?;
    m.add_function(wrap_pyfunction!(rank_dims, m)?)?;
    m.add_function(wrap_pyfunction!(formula_dims, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
