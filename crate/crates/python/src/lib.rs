//! Python bindings: simulation, island geometry, exact drifts and the
//! verification report.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hcpca_core::drift::BoundaryClass;
use hcpca_core::params::noise_from_strs;
use hcpca_core::pca::{run_densities, PcaSpec, StepContext};
use hcpca_core::report::{verify_all, VerifyOptions};
use hcpca_core::rng::SeedSpec;
use hcpca_core::state::EnvRow;
use hcpca_core::symbolic::fmt_q;

fn err(e: hcpca_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `[(question_density, one_density)]` for `steps + 1` rows from all `?`.
#[pyfunction]
#[pyo3(signature = (n, eps0, eps1, width, steps, seed, trial = 0))]
fn simulate(n: usize, eps0: &str, eps1: &str, width: usize, steps: usize, seed: u64, trial: u64) -> PyResult<Vec<(f64, f64)>> {
    let spec = PcaSpec::new(n, noise_from_strs(eps0, eps1).map_err(err)?).map_err(err)?;
    run_densities(
        &spec,
        EnvRow::all_question(width),
        steps,
        StepContext::new(SeedSpec::new(seed), trial),
    )
    .map_err(err)
}

/// Maximal `?`-free runs of a row over `{0, 1, ?}` as `(i, j)` pairs.
#[pyfunction]
fn find_islands(row: &str) -> PyResult<Vec<(usize, usize)>> {
    let r = EnvRow::parse(row).map_err(err)?;
    Ok(hcpca_core::islands::find_islands(&r)
        .map_err(err)?
        .into_iter()
        .map(|s| (s.i, s.j))
        .collect())
}

/// Boundary class name of the rightmost island cells.
#[pyfunction]
fn classify_right(f: Vec<u8>, n: usize) -> PyResult<String> {
    Ok(hcpca_core::islands::classify_right(&f, n).map_err(err)?.name().to_string())
}

/// Doubled offset of the modified right end.
#[pyfunction]
fn modified_right(cells: Vec<u8>, n: usize) -> PyResult<i64> {
    Ok(hcpca_core::islands::modified_right(&cells, n).map_err(err)?.doubled)
}

/// `(value, is_lower_bound)` of the one-step drift of a class at a noise pair.
#[pyfunction]
fn exact_drift(n: usize, class_name: &str, eps0: &str, eps1: &str) -> PyResult<(String, bool)> {
    let c = BoundaryClass::parse(class_name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown class {class_name:?}")))?;
    let d = hcpca_core::islands::exact_drift1(n, c).map_err(err)?;
    let (x0, x1) = noise_from_strs(eps0, eps1).map_err(err)?.exact_or_approx();
    let v = d
        .value
        .eval_at(&x0, &x1)
        .ok_or_else(|| PyValueError::new_err("r = 0"))?;
    Ok((fmt_q(&v), d.lower_bound))
}

/// Canonical form of a polynomial in `e0`, `e1` (`x`, `y`, `r` accepted).
#[pyfunction]
fn canonical_poly(text: &str) -> PyResult<String> {
    Ok(hcpca_core::symbolic::parse_poly(text).map_err(err)?.canonical_string())
}

/// Draw estimate at one height.
#[pyfunction]
#[pyo3(signature = (n, eps0, eps1, width, height, trials, seed = 0))]
fn draw_probability(n: usize, eps0: &str, eps1: &str, width: usize, height: usize, trials: usize, seed: u64) -> PyResult<f64> {
    let p = noise_from_strs(eps0, eps1).map_err(err)?;
    Ok(hcpca_core::game::draw_probability(width, height, &p, n, trials, SeedSpec::new(seed))
        .map_err(err)?
        .estimate)
}

/// `(all_pass, json_report)`.
#[pyfunction]
#[pyo3(signature = (grid_step = "1/50"))]
fn verify(grid_step: &str) -> PyResult<(bool, String)> {
    let step = hcpca_core::params::parse_probability(grid_step).map_err(err)?;
    let rep = verify_all(&VerifyOptions {
        grid_step: step,
        certificates: None,
    })
    .map_err(err)?;
    Ok((rep.passes(), rep.to_json()))
}

#[pymodule]
fn hcpca(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(find_islands, m)?)?;
    m.add_function(wrap_pyfunction!(classify_right, m)?)?;
    m.add_function(wrap_pyfunction!(modified_right, m)?)?;
    m.add_function(wrap_pyfunction!(exact_drift, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_poly, m)?)?;
    m.add_function(wrap_pyfunction!(draw_probability, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
