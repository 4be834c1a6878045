use std::path::PathBuf;

use num::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use mgbar_core::divisor::divisor_monomials;
use mgbar_core::tau::format_tau_table;
use mgbar_core::{
    cache, parse, ChQuery, KappaPsiQuery, LambdaMonomial, Rational, Space, TauQuery,
};

fn err(e: mgbar_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    let cls = py.import("fractions")?.getattr("Fraction")?;
    let (p, q): (&BigInt, &BigInt) = (r.numer(), r.denom());
    cls.call1((p.clone(), q.clone()))
}

/// Evaluator with shared memo tables. Reuse one instance across queries.
#[pyclass(name = "Engine")]
struct PyEngine {
    inner: mgbar_core::Engine,
}

#[pymethods]
impl PyEngine {
    #[new]
    fn new() -> Self {
        PyEngine { inner: mgbar_core::Engine::new() }
    }

    /// Integral of a monomial written as "M(g,n): factor * factor ...".
    fn evaluate<'py>(&self, py: Python<'py>, expr: &str) -> PyResult<Bound<'py, PyAny>> {
        let e = parse(expr).map_err(err)?;
        let v = py.detach(|| self.inner.evaluate(e.monomial()));
        fraction(py, &v)
    }

    /// <tau_{d_1} ... tau_{d_n}>_g
    fn tau<'py>(&self, py: Python<'py>, g: u32, d: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
        let q = TauQuery::new(g, d).map_err(err)?;
        fraction(py, &self.inner.tau_number(&q))
    }

    fn kappa_psi<'py>(
        &self,
        py: Python<'py>,
        g: u32,
        psi: Vec<u32>,
        kappas: Vec<u32>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let q = KappaPsiQuery::new(g, psi, kappas).map_err(err)?;
        fraction(py, &self.inner.kappa_psi_number(&q))
    }

    #[pyo3(signature = (g, psi, kappas, chs))]
    fn ch_number<'py>(
        &self,
        py: Python<'py>,
        g: u32,
        psi: Vec<u32>,
        kappas: Vec<u32>,
        chs: Vec<u32>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let q = ChQuery::new(g, psi, kappas, chs).map_err(err)?;
        fraction(py, &self.inner.ch_number(&q))
    }

    /// Integral over M_g of lambda_1^e1 ... lambda_g^eg.
    fn lambda_number<'py>(&self, py: Python<'py>, g: u32, exponents: Vec<u32>) -> PyResult<Bound<'py, PyAny>> {
        let m = LambdaMonomial::new(g, exponents).map_err(err)?;
        let v = self.inner.lambda_number(&m).map_err(err)?;
        fraction(py, &v)
    }

    /// (monomial, value) pairs for every divisor monomial of the given degree.
    #[pyo3(signature = (g, n, degree=None))]
    fn table<'py>(
        &self,
        py: Python<'py>,
        g: u32,
        n: u32,
        degree: Option<u32>,
    ) -> PyResult<Vec<(String, Bound<'py, PyAny>)>> {
        let space = Space::new(g, n).map_err(err)?;
        let monos = divisor_monomials(space, degree.unwrap_or(space.dim()));
        monos
            .iter()
            .map(|m| Ok((m.to_string(), fraction(py, &self.inner.evaluate(m))?)))
            .collect()
    }

    fn tau_table(&self, g_max: u32) -> PyResult<String> {
        Ok(format_tau_table(&self.inner.export_tau_table(g_max).map_err(err)?))
    }

    /// Coefficients of the Jacobian locus over the square-free lambda basis,
    /// keyed by lambda index tuples.
    fn jacobian_class<'py>(
        &self,
        py: Python<'py>,
        g: u32,
    ) -> PyResult<Vec<(Bound<'py, PyTuple>, Bound<'py, PyAny>)>> {
        let class = self.inner.jacobian_class(g).map_err(err)?;
        class
            .basis
            .iter()
            .zip(&class.coeffs)
            .map(|(b, c)| Ok((PyTuple::new(py, b)?, fraction(py, c)?)))
            .collect()
    }

    fn load_cache(&self, path: PathBuf) -> PyResult<usize> {
        cache::load(&self.inner, &path).map_err(err)
    }

    fn save_cache(&self, path: PathBuf) -> PyResult<usize> {
        cache::save(&self.inner, &path).map_err(err)
    }
}

#[pyfunction]
fn bernoulli(py: Python<'_>, k: u32) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, &mgbar_core::bernoulli(k).map_err(err)?)
}

#[pymodule]
fn mgbar(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyEngine>()?;
    m.add_function(wrap_pyfunction!(bernoulli, m)?)?;
    Ok(())
}
