//! Python bindings for the workbench: the main series evaluators, the
//! Franel closed forms and oracle, and the identity-verification suite.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hlzeta::hlseries::{self, TruncationPolicy};
use hlzeta::lattice::{self, ThetaArg, ThetaMethod};
use hlzeta::specfun;
use hlzeta::suite::{self, SuiteConfig};

fn err_to_py(e: hlzeta::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn policy(tail_tolerance: Option<f64>) -> TruncationPolicy {
    TruncationPolicy::new(200_000_000, tail_tolerance.unwrap_or(1e-10))
}

/// f(x) = sum sin(x/n)/n; returns (value, certified_error_bound).
#[pyfunction]
#[pyo3(signature = (x, tail_tolerance=None))]
fn eval_f(x: f64, tail_tolerance: Option<f64>) -> PyResult<(f64, f64)> {
    let r = hlseries::eval_f(x, &policy(tail_tolerance)).map_err(err_to_py)?;
    Ok((r.value, r.error_bound))
}

/// sum sin^2(x/n); returns (value, certified_error_bound).
#[pyfunction]
#[pyo3(signature = (x, tail_tolerance=None))]
fn eval_sin2_sum(x: f64, tail_tolerance: Option<f64>) -> PyResult<(f64, f64)> {
    let r = hlseries::eval_sin2_sum(x, &policy(tail_tolerance)).map_err(err_to_py)?;
    Ok((r.value, r.error_bound))
}

/// chi(s, t) = sum (-1)^n e^{-t/n} n^{-s}; returns (value, bound, terms_used).
#[pyfunction]
#[pyo3(signature = (s, t, tail_tolerance=None))]
fn chi(s: f64, t: f64, tail_tolerance: Option<f64>) -> PyResult<(f64, f64, u64)> {
    let r = hlseries::chi_direct(s, t, &policy(tail_tolerance)).map_err(err_to_py)?;
    Ok((r.result.value, r.result.error_bound, r.terms_used))
}

/// Riemann zeta for real s (continuation down to s > -2).
#[pyfunction]
fn zeta(s: f64) -> PyResult<f64> {
    Ok(specfun::riemann_zeta(s).map_err(err_to_py)?.value)
}

/// Hurwitz zeta(s, x).
#[pyfunction]
fn hurwitz_zeta(s: f64, x: f64) -> PyResult<f64> {
    Ok(specfun::hurwitz_zeta(s, x).map_err(err_to_py)?.value)
}

/// Gamma(re + i im); returns (re, im).
#[pyfunction]
#[pyo3(signature = (re, im=0.0))]
fn gamma(re: f64, im: f64) -> PyResult<(f64, f64)> {
    let g = specfun::gamma_complex(num_complex::Complex64::new(re, im)).map_err(err_to_py)?;
    Ok((g.value.re, g.value.im))
}

/// Real Bessel value; kind is one of "j0", "j1", "y0", "k0".
#[pyfunction]
fn bessel(kind: &str, x: f64) -> PyResult<f64> {
    let k = match kind {
        "j0" => specfun::BesselKind::J0,
        "j1" => specfun::BesselKind::J1,
        "y0" => specfun::BesselKind::Y0,
        "k0" => specfun::BesselKind::K0,
        other => return Err(PyValueError::new_err(format!("unknown kind '{other}'"))),
    };
    Ok(specfun::bessel_real(k, x).map_err(err_to_py)?.value)
}

/// Mobius function.
#[pyfunction]
fn mobius(n: u64) -> PyResult<i64> {
    specfun::mobius(n).map_err(err_to_py)
}

/// Second-kind Franel integral closed form; returns (formula, value),
/// certified against the exact piecewise oracle first.
#[pyfunction]
fn franel2_closed(n: u64, m: u64) -> PyResult<(String, f64)> {
    let c = hlzeta::franel::franel2_closed(n, m).map_err(err_to_py)?;
    let (v, _) = c.to_f64();
    Ok((c.to_string(), v))
}

/// Second-kind Franel integral by exact piecewise integration.
#[pyfunction]
#[pyo3(signature = (n, m, tol=1e-9))]
fn franel2_oracle(n: u64, m: u64, tol: f64) -> PyResult<(f64, f64)> {
    let r = hlzeta::franel::franel2_oracle(n, m, tol).map_err(err_to_py)?;
    Ok((r.value, r.error_bound))
}

/// Mobius-weighted sawtooth partial sum.
#[pyfunction]
fn davenport_sum(x: f64, n: u64) -> PyResult<f64> {
    hlseries::davenport_sum(x, n).map_err(err_to_py)
}

/// theta_4(q)^3 by the direct cube.
#[pyfunction]
fn theta4_cubed(q: f64) -> PyResult<f64> {
    let arg = ThetaArg::from_q(q).map_err(err_to_py)?;
    Ok(lattice::theta4_cubed(arg, ThetaMethod::DirectCube)
        .map_err(err_to_py)?
        .value)
}

/// All identity ids known to the suite.
#[pyfunction]
fn list_identities() -> Vec<String> {
    suite::registry().into_iter().map(|c| c.id).collect()
}

/// Run suite identities matching the selector; returns
/// [(id, abs_diff, tolerance, pass, notes), ...].
#[pyfunction]
#[pyo3(signature = (selector="all"))]
fn verify(selector: &str) -> PyResult<Vec<(String, f64, f64, bool, String)>> {
    let results = suite::run_suite(selector, &SuiteConfig::default()).map_err(err_to_py)?;
    let mut out = Vec::with_capacity(results.len());
    for (id, rep) in results {
        let rep = rep.map_err(err_to_py)?;
        out.push((id, rep.abs_diff, rep.tolerance, rep.pass, rep.notes));
    }
    Ok(out)
}

#[pymodule]
fn hlzeta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(eval_f, m)?)?;
    m.add_function(wrap_pyfunction!(eval_sin2_sum, m)?)?;
    m.add_function(wrap_pyfunction!(chi, m)?)?;
    m.add_function(wrap_pyfunction!(zeta, m)?)?;
    m.add_function(wrap_pyfunction!(hurwitz_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(bessel, m)?)?;
    m.add_function(wrap_pyfunction!(mobius, m)?)?;
    m.add_function(wrap_pyfunction!(franel2_closed, m)?)?;
    m.add_function(wrap_pyfunction!(franel2_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(davenport_sum, m)?)?;
    m.add_function(wrap_pyfunction!(theta4_cubed, m)?)?;
    m.add_function(wrap_pyfunction!(list_identities, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
