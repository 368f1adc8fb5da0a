//! Python bindings.
//!
//! Rationals cross the boundary as strings (`"3/2"`); inputs also accept
//! Python ints and `fractions.Fraction`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use lowfact::divres::{divides_with_quotient, sylvester_resultant, ExactPit};
use lowfact::engine::{self, EngineConfig};
use lowfact::formula::Formula;
use lowfact::poly::{parse_expression, parse_poly};
use lowfact::rational::parse_rational;
use lowfact::uni::{factor_univariate, UniPoly};
use lowfact::{Error, Rational, SparsePoly};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Resource(_) | Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn rational(obj: &Bound<'_, PyAny>) -> PyResult<Rational> {
    parse_rational(&obj.str()?.to_cow()?).map_err(to_py)
}

/// A sparse polynomial with rational coefficients in `x1, x2, ...`.
#[pyclass(name = "Poly", module = "lowfact_py", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    inner: SparsePoly,
}

impl Poly {
    fn pair(&self, other: &Poly) -> PyResult<(SparsePoly, SparsePoly)> {
        let n = self.inner.arity().max(other.inner.arity());
        Ok((
            self.inner.with_arity(n).map_err(to_py)?,
            other.inner.with_arity(n).map_err(to_py)?,
        ))
    }
}

#[pymethods]
impl Poly {
    /// Parses polynomial text; `expand=True` allows parentheses and powers of subexpressions.
    #[new]
    #[pyo3(signature = (text, arity=None, expand=false))]
    fn new(text: &str, arity: Option<usize>, expand: bool) -> PyResult<Self> {
        let inner = if expand {
            parse_expression(text, arity)
        } else {
            parse_poly(text, arity)
        }
        .map_err(to_py)?;
        Ok(Poly { inner })
    }

    #[getter]
    fn arity(&self) -> usize {
        self.inner.arity()
    }

    #[getter]
    fn degree(&self) -> i64 {
        self.inner.degree()
    }

    #[getter]
    fn sparsity(&self) -> usize {
        self.inner.sparsity()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Value at a point, as a string.
    fn evaluate(&self, point: Vec<Bound<'_, PyAny>>) -> PyResult<String> {
        let point = point.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
        Ok(self.inner.evaluate(&point).map_err(to_py)?.to_string())
    }

    /// Scaled so the leading coefficient is 1.
    fn normalized(&self) -> PyResult<Poly> {
        Ok(Poly {
            inner: self.inner.canonical_normalize().map_err(to_py)?,
        })
    }

    #[pyo3(signature = (var, order=1))]
    fn derivative(&self, var: usize, order: u32) -> PyResult<Poly> {
        if var == 0 || var > self.inner.arity() {
            return Err(PyValueError::new_err("variables are numbered from 1"));
        }
        Ok(Poly {
            inner: self.inner.partial_derivative(var - 1, order),
        })
    }

    fn __pow__(&self, e: u32, _modulo: Option<Bound<'_, PyAny>>) -> Poly {
        Poly { inner: self.inner.pow(e) }
    }

    fn __add__(&self, other: &Poly) -> PyResult<Poly> {
        let (a, b) = self.pair(other)?;
        Ok(Poly { inner: &a + &b })
    }

    fn __sub__(&self, other: &Poly) -> PyResult<Poly> {
        let (a, b) = self.pair(other)?;
        Ok(Poly { inner: &a - &b })
    }

    fn __mul__(&self, other: &Poly) -> PyResult<Poly> {
        let (a, b) = self.pair(other)?;
        Ok(Poly { inner: &a * &b })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Poly('{}')", self.inner)
    }
}

fn config(d: u32, mode: &str, delta_budget: u64, threads: usize) -> PyResult<EngineConfig> {
    let mut cfg = match mode {
        "guaranteed" => EngineConfig::guaranteed(d),
        "budgeted" => EngineConfig::budgeted(d, delta_budget),
        _ => return Err(PyValueError::new_err("mode must be 'guaranteed' or 'budgeted'")),
    };
    cfg.threads = threads;
    cfg.validate().map_err(to_py)?;
    Ok(cfg)
}

/// Irreducible factors of degree at most `d` with multiplicities.
///
/// Returns a dict with `factors` (list of `(Poly, int)`), `complete_product`,
/// `complete` and `stats`.
#[pyfunction]
#[pyo3(signature = (f, d, mode="guaranteed", delta_budget=10_000, threads=1))]
fn factor<'py>(
    py: Python<'py>,
    f: &Poly,
    d: u32,
    mode: &str,
    delta_budget: u64,
    threads: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = config(d, mode, delta_budget, threads)?;
    let report = py
        .detach(|| engine::all_low_degree_factors(&f.inner, &cfg))
        .map_err(to_py)?;
    let out = PyDict::new(py);
    let factors: Vec<(Poly, u32)> = report
        .factors
        .entries
        .into_iter()
        .map(|(g, e)| (Poly { inner: g }, e))
        .collect();
    out.set_item("factors", factors)?;
    out.set_item("complete_product", report.complete_product)?;
    out.set_item("complete", report.complete)?;
    let stats = PyDict::new(py);
    let s = &report.stats;
    for (k, v) in [
        ("points", s.points),
        ("certified_points", s.certified_points),
        ("lifts", s.lifts),
        ("hensel_steps", s.hensel_steps),
        ("candidates", s.candidates),
    ] {
        stats.set_item(k, v)?;
    }
    out.set_item("stats", stats)?;
    Ok(out)
}

/// Factors a formula given as JSON text, expanding it first.
#[pyfunction]
#[pyo3(signature = (formula_json, d, mode="guaranteed", delta_budget=10_000))]
fn factor_formula(formula_json: &str, d: u32, mode: &str, delta_budget: u64) -> PyResult<Vec<(Poly, u32)>> {
    let cfg = config(d, mode, delta_budget, 1)?;
    let formula = Formula::from_json_str(formula_json, None).map_err(to_py)?;
    let report = engine::all_low_degree_factors_formula(&formula, &cfg).map_err(to_py)?;
    Ok(report
        .factors
        .entries
        .into_iter()
        .map(|(g, e)| (Poly { inner: g }, e))
        .collect())
}

/// Candidate factors of multiplicity one and degree at most `d`.
#[pyfunction]
#[pyo3(signature = (f, d, mode="guaranteed", delta_budget=10_000))]
fn candidates(f: &Poly, d: u32, mode: &str, delta_budget: u64) -> PyResult<Vec<Poly>> {
    let cfg = config(d, mode, delta_budget, 1)?;
    let list = engine::candidate_factors_mult_one(&f.inner, &cfg).map_err(to_py)?;
    Ok(list.entries().iter().map(|g| Poly { inner: g.clone() }).collect())
}

/// The quotient `f / g` when `g` divides `f`, else `None`.
#[pyfunction]
fn divide(f: &Poly, g: &Poly) -> PyResult<Option<Poly>> {
    let (a, b) = f.pair(g)?;
    Ok(divides_with_quotient(&a, &b, &ExactPit)
        .map_err(to_py)?
        .map(|q| Poly { inner: q }))
}

#[pyfunction]
fn divides(f: &Poly, g: &Poly) -> PyResult<bool> {
    Ok(divide(f, g)?.is_some())
}

/// Multiplicity of the irreducible `g` in `f`, read off derivatives in variable `var` (1-based).
#[pyfunction]
fn multiplicity(f: &Poly, g: &Poly, var: usize) -> PyResult<u32> {
    if var == 0 {
        return Err(PyValueError::new_err("variables are numbered from 1"));
    }
    let (a, b) = f.pair(g)?;
    engine::multiplicity(&a, &b, var - 1, &ExactPit).map_err(to_py)
}

#[pyfunction]
fn is_irreducible(g: &Poly) -> PyResult<bool> {
    engine::is_irreducible_low_degree(&g.inner).map_err(to_py)
}

/// Sylvester resultant eliminating variable `var` (1-based).
#[pyfunction]
fn resultant(g: &Poly, h: &Poly, var: usize) -> PyResult<Poly> {
    let (a, b) = g.pair(h)?;
    if var == 0 || var > a.arity() {
        return Err(PyValueError::new_err("variable out of range"));
    }
    Ok(Poly {
        inner: sylvester_resultant(&a, &b, var - 1).map_err(to_py)?,
    })
}

/// Factors a univariate polynomial given by coefficients, lowest degree first.
///
/// Returns `(leading coefficient, [(coefficients, multiplicity), ...])` with monic factors.
#[pyfunction]
fn factor_univariate_coeffs(coeffs: Vec<Bound<'_, PyAny>>) -> PyResult<(String, Vec<(Vec<String>, u32)>)> {
    let coeffs = coeffs.iter().map(rational).collect::<PyResult<Vec<_>>>()?;
    let fact = factor_univariate(&UniPoly::new(coeffs)).map_err(to_py)?;
    let factors = fact
        .factors
        .iter()
        .map(|(p, e)| (p.coeffs().iter().map(|c| c.to_string()).collect(), *e))
        .collect();
    Ok((fact.sigma.to_string(), factors))
}

#[pymodule]
fn lowfact_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_function(wrap_pyfunction!(factor, m)?)?;
    m.add_function(wrap_pyfunction!(factor_formula, m)?)?;
    m.add_function(wrap_pyfunction!(candidates, m)?)?;
    m.add_function(wrap_pyfunction!(divide, m)?)?;
    m.add_function(wrap_pyfunction!(divides, m)?)?;
    m.add_function(wrap_pyfunction!(multiplicity, m)?)?;
    m.add_function(wrap_pyfunction!(is_irreducible, m)?)?;
    m.add_function(wrap_pyfunction!(resultant, m)?)?;
    m.add_function(wrap_pyfunction!(factor_univariate_coeffs, m)?)?;
    Ok(())
}
