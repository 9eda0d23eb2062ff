//! Python bindings: the solver, weight kernel, and fitter behind a small
//! keyword-argument API. Validation failures raise ValueError, numerical
//! failures inside the solver raise RuntimeError.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn map_err(err: rieszfdm::Error) -> PyErr {
    match err {
        rieszfdm::Error::SingularMatrix { .. } | rieszfdm::Error::NonFinite => {
            PyRuntimeError::new_err(err.to_string())
        }
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn build_operator(
    alpha: f64,
    theta: f64,
    lambda1: f64,
    lambda2: f64,
) -> PyResult<(rieszfdm::FractionalParams, rieszfdm::SchemeWeights)> {
    let params = rieszfdm::FractionalParams::new(alpha, theta).map_err(map_err)?;
    let scheme = rieszfdm::SchemeWeights::new(lambda1, lambda2).map_err(map_err)?;
    Ok((params, scheme))
}

/// Validated (alpha, theta) pair defining the fractional operator.
#[pyclass(frozen, module = "rieszfdm_py")]
struct FractionalParams {
    inner: rieszfdm::FractionalParams,
}

#[pymethods]
impl FractionalParams {
    #[new]
    #[pyo3(signature = (alpha, theta = 0.0))]
    fn new(alpha: f64, theta: f64) -> PyResult<Self> {
        Ok(Self { inner: rieszfdm::FractionalParams::new(alpha, theta).map_err(map_err)? })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.inner.alpha()
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.inner.theta()
    }

    /// Largest admissible |theta| for this order: min(alpha, 2 - alpha).
    #[getter]
    fn skew_bound(&self) -> f64 {
        self.inner.skew_bound()
    }

    /// True when alpha sits close enough to 1 that conditioning suffers.
    #[getter]
    fn near_singular(&self) -> bool {
        self.inner.near_singular()
    }

    /// The same order with the skewness negated.
    fn mirrored(&self) -> Self {
        Self { inner: self.inner.mirrored() }
    }

    fn __repr__(&self) -> String {
        format!("FractionalParams(alpha={}, theta={})", self.inner.alpha(), self.inner.theta())
    }
}

/// A solved boundary value problem: nodes, values, and the residual norm.
#[pyclass(frozen, module = "rieszfdm_py")]
struct Solution {
    nodes: Vec<f64>,
    values: Vec<f64>,
    residual_inf: f64,
}

#[pymethods]
impl Solution {
    #[getter]
    fn nodes(&self) -> Vec<f64> {
        self.nodes.clone()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.values.clone()
    }

    #[getter]
    fn residual_inf(&self) -> f64 {
        self.residual_inf
    }

    fn __len__(&self) -> usize {
        self.nodes.len()
    }

    fn __repr__(&self) -> String {
        format!("Solution({} nodes, residual_inf={:e})", self.nodes.len(), self.residual_inf)
    }
}

/// Outcome of the (alpha, theta) least-squares fit.
#[pyclass(frozen, module = "rieszfdm_py")]
struct FitResult {
    inner: rieszfdm::FitResult,
}

#[pymethods]
impl FitResult {
    #[getter]
    fn alpha_star(&self) -> f64 {
        self.inner.alpha_star
    }

    #[getter]
    fn theta_star(&self) -> f64 {
        self.inner.theta_star
    }

    #[getter]
    fn sse(&self) -> f64 {
        self.inner.sse
    }

    #[getter]
    fn iterations(&self) -> usize {
        self.inner.iterations
    }

    #[getter]
    fn converged(&self) -> bool {
        self.inner.converged
    }

    fn __repr__(&self) -> String {
        format!(
            "FitResult(alpha_star={}, theta_star={}, sse={:e}, iterations={}, converged={})",
            self.inner.alpha_star,
            self.inner.theta_star,
            self.inner.sse,
            self.inner.iterations,
            self.inner.converged
        )
    }
}

/// Gamma function on the positive reals.
#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    rieszfdm::gamma::gamma(x).map_err(map_err)
}

/// Side coefficients (c_left, c_right) of the operator.
#[pyfunction]
#[pyo3(signature = (alpha, theta = 0.0))]
fn side_coefficients(alpha: f64, theta: f64) -> PyResult<(f64, f64)> {
    let params = rieszfdm::FractionalParams::new(alpha, theta).map_err(map_err)?;
    let side = params.side_coefficients();
    Ok((side.left, side.right))
}

/// Discrete weight w_k of the fractional difference stencil.
#[pyfunction]
#[pyo3(signature = (k, alpha, theta = 0.0, lambda1 = 0.0, lambda2 = 0.0))]
fn weight(k: i64, alpha: f64, theta: f64, lambda1: f64, lambda2: f64) -> PyResult<f64> {
    let (params, scheme) = build_operator(alpha, theta, lambda1, lambda2)?;
    Ok(rieszfdm::weight(k, &params, &scheme))
}

/// Closed-form left tail sum over the exterior offsets beyond j.
#[pyfunction]
#[pyo3(signature = (j, alpha, theta = 0.0, lambda1 = 0.0, lambda2 = 0.0))]
fn tail_sum_left(j: i64, alpha: f64, theta: f64, lambda1: f64, lambda2: f64) -> PyResult<f64> {
    let (params, scheme) = build_operator(alpha, theta, lambda1, lambda2)?;
    rieszfdm::tail_sum_left(j, &params, &scheme).map_err(map_err)
}

/// Closed-form right tail sum over the exterior offsets beyond j.
#[pyfunction]
#[pyo3(signature = (j, alpha, theta = 0.0, lambda1 = 0.0, lambda2 = 0.0))]
fn tail_sum_right(j: i64, alpha: f64, theta: f64, lambda1: f64, lambda2: f64) -> PyResult<f64> {
    let (params, scheme) = build_operator(alpha, theta, lambda1, lambda2)?;
    rieszfdm::tail_sum_right(j, &params, &scheme).map_err(map_err)
}

/// Weight table as (weights, tails_left, tails_right): weights for
/// k = -kmax..kmax in order, tails for j = 1..kmax.
#[pyfunction]
#[pyo3(signature = (alpha, theta = 0.0, kmax = 10, lambda1 = 0.0, lambda2 = 0.0))]
fn weight_table(
    alpha: f64,
    theta: f64,
    kmax: usize,
    lambda1: f64,
    lambda2: f64,
) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let (params, scheme) = build_operator(alpha, theta, lambda1, lambda2)?;
    let table = rieszfdm::WeightTable::build(&params, &scheme, kmax).map_err(map_err)?;
    let half = kmax as i64;
    let weights = (-half..=half).map(|k| table.weight(k)).collect();
    let left = (1..=kmax).map(|j| table.tail_left(j)).collect();
    let right = (1..=kmax).map(|j| table.tail_right(j)).collect();
    Ok((weights, left, right))
}

/// Solve the steady-state boundary value problem on [left, right].
#[pyfunction]
#[pyo3(signature = (
    alpha, theta = 0.0, left = 0.0, right = 1.0, cells = 200, g_left = 2.0, g_right = 1.0,
    lambda1 = 0.0, lambda2 = 0.0
))]
#[allow(clippy::too_many_arguments)]
fn solve(
    alpha: f64,
    theta: f64,
    left: f64,
    right: f64,
    cells: usize,
    g_left: f64,
    g_right: f64,
    lambda1: f64,
    lambda2: f64,
) -> PyResult<Solution> {
    let (params, scheme) = build_operator(alpha, theta, lambda1, lambda2)?;
    let domain = rieszfdm::Domain1D::new(left, right, cells).map_err(map_err)?;
    let bc = rieszfdm::DirichletBC::new(g_left, g_right).map_err(map_err)?;
    let system = rieszfdm::assemble(&domain, &params, &scheme, bc).map_err(map_err)?;
    let solution = rieszfdm::lu_solve(&system).map_err(map_err)?;
    Ok(Solution {
        nodes: domain.nodes(),
        values: solution.values,
        residual_inf: solution.residual_inf,
    })
}

/// Fit (alpha, theta) to observed (x, T) pairs; the first and last points
/// define the domain and boundary values.
#[pyfunction]
#[pyo3(signature = (points, cells = 200, lambda1 = 0.0, lambda2 = 0.0))]
fn fit(points: Vec<(f64, f64)>, cells: usize, lambda1: f64, lambda2: f64) -> PyResult<FitResult> {
    let profile = rieszfdm::ObservedProfile::from_endpoints(points).map_err(map_err)?;
    let config = rieszfdm::FitConfig {
        grid_cells: cells,
        scheme: rieszfdm::SchemeWeights::new(lambda1, lambda2).map_err(map_err)?,
        ..rieszfdm::FitConfig::default()
    };
    let result = rieszfdm::fit(&profile, &config).map_err(map_err)?;
    Ok(FitResult { inner: result })
}

#[pymodule]
fn rieszfdm_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<FractionalParams>()?;
    m.add_class::<Solution>()?;
    m.add_class::<FitResult>()?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(side_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(weight, m)?)?;
    m.add_function(wrap_pyfunction!(tail_sum_left, m)?)?;
    m.add_function(wrap_pyfunction!(tail_sum_right, m)?)?;
    m.add_function(wrap_pyfunction!(weight_table, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(fit, m)?)?;
    Ok(())
}
