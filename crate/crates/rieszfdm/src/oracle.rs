//! Independent consistency checks.
//!
//! Every check here avoids the code path it is verifying: the brute-force
//! tails sum raw weights term by term instead of using the closed forms, the
//! reduction check compares against the hard-coded classical stencil, the
//! symmetry check solves two full systems, and the convergence study compares
//! solutions across grid refinements.

use serde::Serialize;

use crate::discretize::{assemble, DirichletBC, Domain1D};
use crate::error::{Error, Result};
use crate::kernel::{FractionalParams, SchemeWeights, WeightKernel, WeightTable};
use crate::solve::lu_solve;

/// Outcome of one check. `pass` is always `max_error <= tolerance`.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub check: String,
    pub parameters: String,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub detail: String,
}

impl VerificationReport {
    pub fn evaluate(
        check: impl Into<String>,
        parameters: impl Into<String>,
        max_error: f64,
        tolerance: f64,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            check: check.into(),
            parameters: parameters.into(),
            max_error,
            tolerance,
            pass: max_error <= tolerance,
            detail: detail.into(),
        }
    }

    /// One status line for terminal output.
    pub fn status_line(&self) -> String {
        format!(
            "{} {} [{}] max_error={:.3e} tolerance={:.3e}{}",
            if self.pass { "PASS" } else { "FAIL" },
            self.check,
            self.parameters,
            self.max_error,
            self.tolerance,
            if self.detail.is_empty() { String::new() } else { format!(" ({})", self.detail) },
        )
    }
}

/// Truncated left tail: sum of w_{-k} for k = j+1 .. cutoff, summed directly
/// from the weight formula.
pub fn brute_tail_left(
    j: i64,
    params: &FractionalParams,
    scheme: &SchemeWeights,
    cutoff: i64,
) -> Result<f64> {
    if j < 1 {
        return Err(Error::TailIndex { j });
    }
    let kernel = WeightKernel::new(params, scheme);
    let mut sum = 0.0;
    for k in j + 1..=cutoff {
        sum += kernel.weight(-k);
    }
    Ok(sum)
}

/// Truncated right tail: sum of w_k for k = j+1 .. cutoff.
pub fn brute_tail_right(
    j: i64,
    params: &FractionalParams,
    scheme: &SchemeWeights,
    cutoff: i64,
) -> Result<f64> {
    if j < 1 {
        return Err(Error::TailIndex { j });
    }
    let kernel = WeightKernel::new(params, scheme);
    let mut sum = 0.0;
    for k in j + 1..=cutoff {
        sum += kernel.weight(k);
    }
    Ok(sum)
}

/// The (alpha, theta) pairs every sweeping check runs over: each order paired
/// with zero skew and half the admissible skew on both sides.
pub fn pinned_sweep() -> Vec<FractionalParams> {
    let mut out = Vec::new();
    for alpha in [0.25_f64, 0.5, 0.75, 1.25, 1.5, 1.75, 2.0] {
        let half_bound = alpha.min(2.0 - alpha) / 2.0;
        let mut thetas = vec![0.0];
        if half_bound > 0.0 {
            thetas.push(half_bound);
            thetas.push(-half_bound);
        }
        for theta in thetas {
            out.push(FractionalParams::new(alpha, theta).expect("pinned sweep is feasible"));
        }
    }
    out
}

/// Tolerance for comparing a closed-form tail against a sum truncated at
/// `cutoff`: the discarded remainder scales like cutoff^(-alpha).
pub fn tail_tolerance(alpha: f64, cutoff: i64) -> f64 {
    (10.0 * (cutoff as f64).powf(-alpha)).max(1e-6)
}

/// Compare closed-form tails against brute-force sums truncated at `cutoff`,
/// at every offset in `offsets`, on both sides.
pub fn tails_check(
    params: &FractionalParams,
    scheme: &SchemeWeights,
    cutoff: i64,
    offsets: &[i64],
) -> Result<VerificationReport> {
    let kernel = WeightKernel::new(params, scheme);
    let mut max_error = 0.0f64;
    for &j in offsets {
        let closed_left = kernel.tail_left(j)?;
        let closed_right = kernel.tail_right(j)?;
        let brute_left = brute_tail_left(j, params, scheme, cutoff)?;
        let brute_right = brute_tail_right(j, params, scheme, cutoff)?;
        max_error = max_error
            .max((closed_left - brute_left).abs())
            .max((closed_right - brute_right).abs());
    }
    Ok(VerificationReport::evaluate(
        "tails",
        format!("alpha={}, theta={}", params.alpha(), params.theta()),
        max_error,
        tail_tolerance(params.alpha(), cutoff),
        format!("closed form vs direct sum to k={cutoff}, offsets {offsets:?}"),
    ))
}

/// At alpha = 2 the weights must collapse to the classical second-difference
/// stencil {1, -2, 1}. A validation failure (for example theta != 0) is
/// reported as a failed check rather than an error.
pub fn reduction_check(scheme: &SchemeWeights, theta: f64) -> VerificationReport {
    let parameters = format!(
        "alpha=2, theta={theta}, lambda1={}, lambda2={}",
        scheme.lambda1(),
        scheme.lambda2()
    );
    let params = match FractionalParams::new(2.0, theta) {
        Ok(p) => p,
        Err(err) => {
            return VerificationReport::evaluate(
                "reduction",
                parameters,
                f64::INFINITY,
                1e-12,
                err.to_string(),
            );
        }
    };
    let table = match WeightTable::build(&params, scheme, 50) {
        Ok(t) => t,
        Err(err) => {
            return VerificationReport::evaluate(
                "reduction",
                parameters,
                f64::INFINITY,
                1e-12,
                err.to_string(),
            );
        }
    };
    let mut max_error = (table.weight(-1) - 1.0)
        .abs()
        .max((table.weight(0) + 2.0).abs())
        .max((table.weight(1) - 1.0).abs());
    for k in 2..=50i64 {
        max_error = max_error.max(table.weight(k).abs()).max(table.weight(-k).abs());
    }
    VerificationReport::evaluate(
        "reduction",
        parameters,
        max_error,
        1e-12,
        "weights vs classical stencil {1, -2, 1}",
    )
}

/// Solving with (theta, gL, gR) and with (-theta, gR, gL) must give profiles
/// that are node-for-node reversals of each other.
pub fn symmetry_check(
    params: &FractionalParams,
    scheme: &SchemeWeights,
    bc: DirichletBC,
    cells: usize,
) -> Result<VerificationReport> {
    let domain = Domain1D::new(0.0, 1.0, cells)?;
    let forward = lu_solve(&assemble(&domain, params, scheme, bc)?)?;
    let mirrored_params = params.mirrored();
    let mirrored = lu_solve(&assemble(&domain, &mirrored_params, scheme, bc.mirrored())?)?;
    let mut max_error = 0.0f64;
    for (i, &v) in forward.values.iter().enumerate() {
        max_error = max_error.max((v - mirrored.values[cells - i]).abs());
    }
    Ok(VerificationReport::evaluate(
        "symmetry",
        format!("alpha={}, theta={}, cells={cells}", params.alpha(), params.theta()),
        max_error,
        1e-9,
        "solution vs mirrored solve with swapped boundary values",
    ))
}

/// Differences between solutions on successively refined grids.
#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceStudy {
    pub cells: Vec<usize>,
    /// Max difference at shared nodes for each consecutive pair of grids.
    pub differences: Vec<f64>,
    /// Empirical orders log2(d_k / d_{k+1}).
    pub orders: Vec<f64>,
    pub report: VerificationReport,
}

/// Differences below this are rounding noise; a sequence that is entirely
/// noise (the scheme solved the problem exactly) counts as converged.
const CONVERGENCE_FLOOR: f64 = 1e-10;

/// Solve on each grid in `cells` and compare successive solutions at shared
/// nodes. Passes when the differences strictly decrease, or when they all sit
/// below the rounding floor.
pub fn convergence_study(
    params: &FractionalParams,
    scheme: &SchemeWeights,
    bc: DirichletBC,
    cells: &[usize],
) -> Result<ConvergenceStudy> {
    if cells.len() < 2 {
        return Err(Error::InvalidRefinement {
            reason: format!("need at least 2 grids, got {}", cells.len()),
        });
    }
    for pair in cells.windows(2) {
        if pair[1] <= pair[0] || pair[1] % pair[0] != 0 {
            return Err(Error::InvalidRefinement {
                reason: format!("{} does not refine {}", pair[1], pair[0]),
            });
        }
    }

    let mut solutions = Vec::with_capacity(cells.len());
    for &n in cells {
        let domain = Domain1D::new(0.0, 1.0, n)?;
        solutions.push(lu_solve(&assemble(&domain, params, scheme, bc)?)?);
    }

    let mut differences = Vec::with_capacity(cells.len() - 1);
    for (coarse_idx, pair) in cells.windows(2).enumerate() {
        let ratio = pair[1] / pair[0];
        let coarse = &solutions[coarse_idx].values;
        let fine = &solutions[coarse_idx + 1].values;
        let mut worst = 0.0f64;
        for (i, &v) in coarse.iter().enumerate() {
            worst = worst.max((v - fine[i * ratio]).abs());
        }
        differences.push(worst);
    }

    let orders: Vec<f64> = differences
        .windows(2)
        .map(|d| if d[1] > 0.0 { (d[0] / d[1]).log2() } else { f64::INFINITY })
        .collect();

    // Pass when differences strictly decrease (largest increase <= 0), or
    // when everything is already at rounding level.
    let all_noise = differences.iter().all(|d| *d <= CONVERGENCE_FLOOR);
    let max_increase = differences
        .windows(2)
        .map(|d| d[1] - d[0])
        .fold(f64::NEG_INFINITY, f64::max);
    let max_error = if all_noise { 0.0 } else { max_increase.max(0.0) };

    let report = VerificationReport::evaluate(
        "convergence",
        format!(
            "alpha={}, theta={}, grids={cells:?}",
            params.alpha(),
            params.theta()
        ),
        max_error,
        0.0,
        format!("differences {differences:?}, empirical orders {orders:?}"),
    );
    Ok(ConvergenceStudy { cells: cells.to_vec(), differences, orders, report })
}
