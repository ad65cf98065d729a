//! Python bindings. Scalars come back as floats; series failures that the
//! core reports through a status are raised as `ValueError`.

use fkin_core::bessel_family::{self as bf, KBesselParams};
use fkin_core::curve::TimeGrid;
use fkin_core::kinetic::{self, KineticProblem, Variant};
use fkin_core::kspecial;
use fkin_core::mittag_leffler::{ml as ml_eval, MlParams};
use fkin_core::oracle::{adjudicate, compare, OracleSetup};
use fkin_core::{EvalResult, SeriesControl, Status};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn value(r: EvalResult) -> PyResult<f64> {
    match r.status {
        Status::DomainError => Err(PyValueError::new_err("argument outside the function's domain")),
        _ => Ok(r.value),
    }
}

fn ctrl() -> SeriesControl {
    SeriesControl::default()
}

#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    kspecial::gamma(x).map_err(err)
}

#[pyfunction]
fn ln_gamma(x: f64) -> PyResult<f64> {
    kspecial::ln_gamma(x).map_err(err)
}

#[pyfunction]
fn gamma_k(x: f64, k: f64) -> PyResult<f64> {
    kspecial::gamma_k(x, k).map_err(err)
}

#[pyfunction]
fn pochhammer_k(g: f64, n: usize, k: f64) -> f64 {
    kspecial::pochhammer_k(g, n, k)
}

#[pyfunction]
#[pyo3(signature = (alpha, z, beta = 1.0))]
fn ml(alpha: f64, z: f64, beta: f64) -> PyResult<f64> {
    value(ml_eval(MlParams::new(alpha, beta).map_err(err)?, z, ctrl()))
}

#[pyfunction]
fn bessel_j(p: f64, z: f64) -> PyResult<f64> {
    value(bf::bessel_j(p, z, ctrl()))
}

#[pyfunction]
fn bessel_i(p: f64, z: f64) -> PyResult<f64> {
    value(bf::bessel_i(p, z, ctrl()))
}

#[pyfunction]
#[pyo3(signature = (z, *, b, c, g, lam, mu, k))]
fn gen_mod_k_bessel(z: f64, b: f64, c: f64, g: f64, lam: f64, mu: f64, k: f64) -> PyResult<f64> {
    let p = KBesselParams::new(b, c, g, lam, mu, k).map_err(err)?;
    value(bf::gen_mod_k_bessel(&p, z, ctrl()))
}

/// A kinetic problem; `a` defaults to `e`.
#[pyclass(name = "Problem", frozen)]
struct PyProblem(KineticProblem);

#[pymethods]
impl PyProblem {
    #[new]
    #[pyo3(signature = (variant = "thm1", *, n0 = 1.0, e = 1.0, a = None, nu = 1.0,
                        b = 1.0, c = -1.0, g = 1.0, lam = 1.0, mu = 1.0, k = 1.0))]
    #[allow(clippy::too_many_arguments)]
    fn new(
        variant: &str,
        n0: f64,
        e: f64,
        a: Option<f64>,
        nu: f64,
        b: f64,
        c: f64,
        g: f64,
        lam: f64,
        mu: f64,
        k: f64,
    ) -> PyResult<Self> {
        let variant: Variant = variant.parse().map_err(err)?;
        let params = KBesselParams::new(b, c, g, lam, mu, k).map_err(err)?;
        KineticProblem::with_rates(n0, e, a.unwrap_or(e), nu, params, variant)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn variant(&self) -> &'static str {
        self.0.variant().as_str()
    }

    fn solve(&self, t: f64) -> PyResult<f64> {
        value(kinetic::solve(&self.0, t, ctrl()))
    }

    /// Values on t = t_max·j/steps, j = 1..=steps.
    #[pyo3(signature = (t_max = 2.0, steps = 128))]
    fn curve(&self, t_max: f64, steps: usize) -> PyResult<(Vec<f64>, Vec<f64>)> {
        let grid = TimeGrid::new(t_max, steps).map_err(err)?;
        let c = kinetic::curve(&self.0, &grid, ctrl());
        Ok((c.grid().to_vec(), c.values().to_vec()))
    }

    fn laplace(&self, p: f64) -> PyResult<f64> {
        value(kinetic::laplace_solution_thm1(&self.0, p, ctrl()).map_err(err)?)
    }

    /// Largest relative deviation from the Volterra oracle.
    #[pyo3(signature = (log2_inv_h = 12))]
    fn oracle_error(&self, log2_inv_h: u32) -> PyResult<f64> {
        let setup = OracleSetup::standard().with_step(log2_inv_h);
        Ok(compare(&self.0, &setup, ctrl()).map_err(err)?.max_rel_err)
    }

    /// Name of the only form (published or derived) that matches the oracle, if any.
    #[pyo3(signature = (tol = 5e-4))]
    fn adjudicate(&self, tol: f64) -> PyResult<Option<&'static str>> {
        let adj = adjudicate(&self.0, &OracleSetup::standard(), tol, ctrl()).map_err(err)?;
        Ok(adj.verdict().map(|v| v.as_str()))
    }

    fn __repr__(&self) -> String {
        format!("Problem({})", self.0.describe())
    }
}

#[pymodule]
fn fkin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(ln_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_k, m)?)?;
    m.add_function(wrap_pyfunction!(pochhammer_k, m)?)?;
    m.add_function(wrap_pyfunction!(ml, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_j, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_i, m)?)?;
    m.add_function(wrap_pyfunction!(gen_mod_k_bessel, m)?)?;
    m.add_class::<PyProblem>()?;
    Ok(())
}
