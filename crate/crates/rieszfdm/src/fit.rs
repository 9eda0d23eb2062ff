//! Recover (alpha, theta) from an observed steady-state profile.
//!
//! The objective is the sum of squared differences between the observations
//! and the solved profile, linearly interpolated to the observation
//! abscissae. The search runs in two deterministic stages: a coarse scan of
//! the feasible (alpha, theta) wedge, then a Nelder-Mead refinement from the
//! best coarse sample with every trial point projected back into the wedge.

use crate::discretize::{assemble, DirichletBC, Domain1D};
use crate::error::{Error, Result};
use crate::kernel::{FractionalParams, SchemeWeights};
use crate::solve::lu_solve;

/// Observations of a steady profile on [left, right] with the boundary
/// temperatures driving the underlying problem.
#[derive(Debug, Clone)]
pub struct ObservedProfile {
    points: Vec<(f64, f64)>,
    left: f64,
    right: f64,
    bc: DirichletBC,
}

impl ObservedProfile {
    /// Observations with explicit domain bounds and boundary data.
    pub fn new(points: Vec<(f64, f64)>, left: f64, right: f64, bc: DirichletBC) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidProfile {
                reason: format!("need at least 3 points, got {}", points.len()),
            });
        }
        if !left.is_finite() || !right.is_finite() || left >= right {
            return Err(Error::InvalidProfile {
                reason: format!("invalid bounds [{left}, {right}]"),
            });
        }
        for (i, &(x, t)) in points.iter().enumerate() {
            if !x.is_finite() || !t.is_finite() {
                return Err(Error::InvalidProfile {
                    reason: format!("non-finite entry at row {i}"),
                });
            }
            if x < left || x > right {
                return Err(Error::InvalidProfile {
                    reason: format!("x = {x} at row {i} lies outside [{left}, {right}]"),
                });
            }
            if i > 0 && x <= points[i - 1].0 {
                return Err(Error::InvalidProfile {
                    reason: format!("x values must be strictly increasing, row {i}"),
                });
            }
        }
        Ok(Self { points, left, right, bc })
    }

    /// Infer bounds and boundary data from the first and last observation.
    pub fn from_endpoints(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidProfile {
                reason: format!("need at least 3 points, got {}", points.len()),
            });
        }
        let (left, t_left) = points[0];
        let (right, t_right) = points[points.len() - 1];
        let bc = DirichletBC::new(t_left, t_right)
            .map_err(|_| Error::InvalidProfile { reason: "non-finite endpoint values".into() })?;
        Self::new(points, left, right, bc)
    }

    pub fn points(&self) -> &[(f64, f64)] {
        &self.points
    }

    pub fn left(&self) -> f64 {
        self.left
    }

    pub fn right(&self) -> f64 {
        self.right
    }

    pub fn bc(&self) -> DirichletBC {
        self.bc
    }
}

/// Knobs of the two-stage search.
#[derive(Debug, Clone)]
pub struct FitConfig {
    /// Cells of the forward-solve grid.
    pub grid_cells: usize,
    /// Number of alpha samples in the coarse scan.
    pub coarse_alpha: usize,
    /// Number of theta samples per alpha in the coarse scan.
    pub coarse_theta: usize,
    /// Scheme family parameters used by every forward solve.
    pub scheme: SchemeWeights,
    /// Nelder-Mead stops when the objective spread falls below this.
    pub tolerance: f64,
    /// Cap on Nelder-Mead iterations.
    pub max_iterations: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self {
            grid_cells: 200,
            coarse_alpha: 40,
            coarse_theta: 21,
            scheme: SchemeWeights::default(),
            tolerance: 1e-6,
            max_iterations: 400,
        }
    }
}

impl FitConfig {
    fn validate(&self) -> Result<()> {
        if self.grid_cells < 16 {
            return Err(Error::InvalidFitConfig {
                reason: format!("grid_cells must be >= 16, got {}", self.grid_cells),
            });
        }
        if self.coarse_alpha < 2 || self.coarse_theta < 1 {
            return Err(Error::InvalidFitConfig {
                reason: format!(
                    "coarse grid must be at least 2 x 1, got {} x {}",
                    self.coarse_alpha, self.coarse_theta
                ),
            });
        }
        let tolerance_ok = self.tolerance.is_finite() && self.tolerance > 0.0;
        if !tolerance_ok || self.max_iterations == 0 {
            return Err(Error::InvalidFitConfig {
                reason: "tolerance must be positive and max_iterations nonzero".into(),
            });
        }
        Ok(())
    }
}

/// Outcome of the search.
#[derive(Debug, Clone, PartialEq)]
pub struct FitResult {
    pub alpha_star: f64,
    pub theta_star: f64,
    pub sse: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Sum of squared residuals of the profile solved at (alpha, theta) against
/// the observations. Infeasible parameters and failed solves return
/// +infinity so search loops can treat the objective as total.
pub fn loss(alpha: f64, theta: f64, profile: &ObservedProfile, config: &FitConfig) -> f64 {
    let params = match FractionalParams::new(alpha, theta) {
        Ok(p) => p,
        Err(_) => return f64::INFINITY,
    };
    let domain = match Domain1D::new(profile.left(), profile.right(), config.grid_cells) {
        Ok(d) => d,
        Err(_) => return f64::INFINITY,
    };
    let solution = match assemble(&domain, &params, &config.scheme, profile.bc())
        .and_then(|sys| lu_solve(&sys))
    {
        Ok(s) => s,
        Err(_) => return f64::INFINITY,
    };

    let h = domain.step();
    let n = domain.cells();
    let mut sse = 0.0;
    for &(x, observed) in profile.points() {
        // Piecewise-linear interpolation; observation abscissae that land on
        // nodes reproduce nodal values exactly.
        let cell = (((x - profile.left()) / h).floor() as usize).min(n - 1);
        let frac = (x - domain.node(cell)) / h;
        let predicted =
            (1.0 - frac) * solution.values[cell] + frac * solution.values[cell + 1];
        let r = predicted - observed;
        sse += r * r;
    }
    sse
}

const ALPHA_MIN: f64 = 0.02;
const ALPHA_MAX: f64 = 2.0;
const COARSE_ALPHA_LO: f64 = 0.05;
/// Projection keeps iterates at least this far from the alpha = 1 pole
/// (double the validation band so projected points always validate).
const SINGULAR_MARGIN: f64 = 2e-6;

/// Pull an arbitrary candidate into the feasible wedge: clamp alpha into
/// [0.02, 2] and away from 1, then clamp theta to |theta| <= min(alpha, 2-alpha).
fn project(point: [f64; 2]) -> [f64; 2] {
    let mut alpha = point[0].clamp(ALPHA_MIN, ALPHA_MAX);
    if (alpha - 1.0).abs() < SINGULAR_MARGIN {
        alpha = if alpha < 1.0 { 1.0 - SINGULAR_MARGIN } else { 1.0 + SINGULAR_MARGIN };
    }
    let bound = alpha.min(2.0 - alpha);
    [alpha, point[1].clamp(-bound, bound)]
}

/// Two-stage parameter recovery. Deterministic: identical inputs give
/// bit-identical results.
pub fn fit(profile: &ObservedProfile, config: &FitConfig) -> Result<FitResult> {
    config.validate()?;

    // Coarse scan over the feasible wedge. Ties prefer smaller alpha, then
    // smaller theta, so the outcome does not depend on evaluation order.
    let na = config.coarse_alpha;
    let nt = config.coarse_theta;
    let mut best: Option<([f64; 2], f64)> = None;
    for ia in 0..na {
        let alpha =
            COARSE_ALPHA_LO + ia as f64 * (ALPHA_MAX - COARSE_ALPHA_LO) / (na - 1) as f64;
        let bound = alpha.min(2.0 - alpha);
        for it in 0..nt {
            let theta = if nt == 1 {
                0.0
            } else {
                -bound + it as f64 * (2.0 * bound) / (nt - 1) as f64
            };
            let value = loss(alpha, theta, profile, config);
            if !value.is_finite() {
                continue;
            }
            let candidate = ([alpha, theta], value);
            best = match best {
                None => Some(candidate),
                Some(current) => {
                    let better = value < current.1
                        || (value == current.1
                            && (alpha < current.0[0]
                                || (alpha == current.0[0] && theta < current.0[1])));
                    Some(if better { candidate } else { current })
                }
            };
        }
    }
    let (start, start_value) = best.ok_or(Error::NoFeasiblePoint)?;

    // Nelder-Mead refinement. Vertices may wander; the objective is always
    // evaluated at the projected point and the winner is reported projected.
    let eval = |p: [f64; 2]| -> ([f64; 2], f64) {
        let q = project(p);
        (q, loss(q[0], q[1], profile, config))
    };

    let step_alpha = if start[0] + 0.025 <= ALPHA_MAX { 0.025 } else { -0.025 };
    let bound = start[0].min(2.0 - start[0]);
    let dt = (bound / 10.0).max(5e-3);
    let step_theta = if start[1] + dt <= bound { dt } else { -dt };

    let mut simplex = [
        (start, start_value),
        eval([start[0] + step_alpha, start[1]]),
        eval([start[0], start[1] + step_theta]),
    ];

    let order = |s: &mut [([f64; 2], f64); 3]| {
        s.sort_by(|a, b| {
            a.1.partial_cmp(&b.1)
                .unwrap()
                .then(a.0[0].partial_cmp(&b.0[0]).unwrap())
                .then(a.0[1].partial_cmp(&b.0[1]).unwrap())
        });
    };

    let mut iterations = 0;
    let mut converged = false;
    while iterations < config.max_iterations {
        order(&mut simplex);
        if (simplex[2].1 - simplex[0].1).abs() <= config.tolerance {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid = [
            0.5 * (simplex[0].0[0] + simplex[1].0[0]),
            0.5 * (simplex[0].0[1] + simplex[1].0[1]),
        ];
        let worst = simplex[2];
        let dir = [centroid[0] - worst.0[0], centroid[1] - worst.0[1]];
        let at = |scale: f64| [centroid[0] + scale * dir[0], centroid[1] + scale * dir[1]];

        let reflected = eval(at(1.0));
        if reflected.1 < simplex[0].1 {
            let expanded = eval(at(2.0));
            simplex[2] = if expanded.1 < reflected.1 { expanded } else { reflected };
            continue;
        }
        if reflected.1 < simplex[1].1 {
            simplex[2] = reflected;
            continue;
        }
        let contracted = if reflected.1 < worst.1 { eval(at(0.5)) } else { eval(at(-0.5)) };
        if contracted.1 < worst.1.min(reflected.1) {
            simplex[2] = contracted;
            continue;
        }
        // Shrink toward the best vertex.
        let anchor = simplex[0].0;
        for vertex in simplex.iter_mut().skip(1) {
            let p = [
                anchor[0] + 0.5 * (vertex.0[0] - anchor[0]),
                anchor[1] + 0.5 * (vertex.0[1] - anchor[1]),
            ];
            *vertex = eval(p);
        }
    }

    order(&mut simplex);
    let (raw_best, sse) = simplex[0];
    let [alpha_star, theta_star] = project(raw_best);
    debug_assert!(FractionalParams::new(alpha_star, theta_star).is_ok());
    Ok(FitResult { alpha_star, theta_star, sse, iterations, converged })
}
