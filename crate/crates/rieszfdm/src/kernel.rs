//! Riesz-Feller fractional derivative on a uniform grid: validated order and
//! skewness parameters, side coefficients, the discrete weights w_k, and the
//! closed-form tail sums that fold the unbounded stencil back onto a bounded
//! domain.
//!
//! Two weight families cover the admissible orders. For 0 < alpha < 1 the
//! stencil interpolates with a one-parameter (lambda1) family built from
//! powers k^(1-alpha); for 1 < alpha <= 2 a second family (lambda2) uses
//! powers k^(2-alpha). Both reduce to known limits: alpha = 2 with lambda2 = 0
//! gives the classical central difference {1, -2, 1}.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::gamma;

/// Orders closer to 1 than this are rejected: sin(alpha*pi) vanishes there
/// and the side coefficients diverge.
pub const SINGULAR_BAND: f64 = 1e-6;

/// Orders within this distance of 1 are accepted but flagged: the side
/// coefficients grow like 1/(pi*(alpha - 1)) and amplify rounding error.
pub const NEAR_SINGULAR_BAND: f64 = 5e-3;

/// Slack on the skewness bound so that |theta| = min(alpha, 2 - alpha) passes
/// even when the bound itself was computed in floating point.
const SKEW_SLACK: f64 = 1e-12;

/// Validated order alpha in (0, 2] \ {1} and skewness theta with
/// |theta| <= min(alpha, 2 - alpha).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FractionalParams {
    alpha: f64,
    theta: f64,
}

impl FractionalParams {
    pub fn new(alpha: f64, theta: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 || alpha > 2.0 {
            return Err(Error::OrderOutOfRange { alpha });
        }
        if (alpha - 1.0).abs() < SINGULAR_BAND {
            return Err(Error::OrderSingular { alpha });
        }
        let bound = alpha.min(2.0 - alpha);
        if !theta.is_finite() || theta.abs() > bound + SKEW_SLACK {
            return Err(Error::SkewnessOutOfRange { alpha, theta, bound });
        }
        Ok(Self { alpha, theta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Largest admissible |theta| at this order.
    pub fn skew_bound(&self) -> f64 {
        self.alpha.min(2.0 - self.alpha)
    }

    /// True when alpha sits close enough to 1 that conditioning degrades.
    pub fn near_singular(&self) -> bool {
        (self.alpha - 1.0).abs() < NEAR_SINGULAR_BAND
    }

    /// Same order with the skewness sign flipped.
    pub fn mirrored(&self) -> Self {
        Self { alpha: self.alpha, theta: -self.theta }
    }

    /// Splitting coefficients c_left, c_right of the operator.
    ///
    /// c_left = sin((alpha - theta) pi/2) / sin(alpha pi) and c_right the
    /// mirror image. At alpha = 2 both formulas hit sin(2 pi) = 0, so the
    /// analytic limit -1/2 is substituted (theta is necessarily 0 there).
    pub fn side_coefficients(&self) -> SideCoefficients {
        if self.alpha == 2.0 {
            return SideCoefficients { left: -0.5, right: -0.5 };
        }
        let denom = (self.alpha * PI).sin();
        SideCoefficients {
            left: ((self.alpha - self.theta) * FRAC_PI_2).sin() / denom,
            right: ((self.alpha + self.theta) * FRAC_PI_2).sin() / denom,
        }
    }
}

/// Weights of the left- and right-sided parts of the operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SideCoefficients {
    pub left: f64,
    pub right: f64,
}

/// Free parameters of the two interpolation families behind the weights:
/// lambda1 steers the stencil for 0 < alpha < 1, lambda2 for 1 < alpha <= 2.
/// Zero for both recovers the plainest member of each family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeWeights {
    lambda1: f64,
    lambda2: f64,
}

impl SchemeWeights {
    pub fn new(lambda1: f64, lambda2: f64) -> Result<Self> {
        if !lambda1.is_finite() || !lambda2.is_finite() {
            return Err(Error::InvalidScheme { lambda1, lambda2 });
        }
        Ok(Self { lambda1, lambda2 })
    }

    pub fn lambda1(&self) -> f64 {
        self.lambda1
    }

    pub fn lambda2(&self) -> f64 {
        self.lambda2
    }
}

impl Default for SchemeWeights {
    fn default() -> Self {
        Self { lambda1: 0.0, lambda2: 0.0 }
    }
}

/// Precomputed ingredients for evaluating weights w_k and tail sums at one
/// (params, scheme) pair: side coefficients, the gamma normalization, and the
/// family exponent. Build once, evaluate many.
#[derive(Debug, Clone)]
pub struct WeightKernel {
    params: FractionalParams,
    scheme: SchemeWeights,
    side: SideCoefficients,
    /// 1 - alpha for the low-order family, 2 - alpha for the high-order one.
    exponent: f64,
    /// Gamma(2 - alpha) or Gamma(3 - alpha).
    gamma_norm: f64,
    low_order: bool,
}

impl WeightKernel {
    pub fn new(params: &FractionalParams, scheme: &SchemeWeights) -> Self {
        let low_order = params.alpha() < 1.0;
        let (exponent, gamma_norm) = if low_order {
            (1.0 - params.alpha(), gamma::positive(2.0 - params.alpha()))
        } else {
            (2.0 - params.alpha(), gamma::positive(3.0 - params.alpha()))
        };
        Self {
            params: *params,
            scheme: *scheme,
            side: params.side_coefficients(),
            exponent,
            gamma_norm,
            low_order,
        }
    }

    pub fn params(&self) -> &FractionalParams {
        &self.params
    }

    pub fn scheme(&self) -> &SchemeWeights {
        &self.scheme
    }

    pub fn side(&self) -> SideCoefficients {
        self.side
    }

    /// Discrete weight w_k for any integer offset k.
    pub fn weight(&self, k: i64) -> f64 {
        let SideCoefficients { left, right } = self.side;
        let p = self.exponent;
        let pref = -1.0 / (2.0 * self.gamma_norm);
        if self.low_order {
            let l1 = self.scheme.lambda1;
            match k {
                0 => pref * (pw(2.0, p) * l1 - 3.0 * l1 + 2.0) * (left + right),
                1 | -1 => {
                    let near = pw(3.0, p) * l1 + pw(2.0, p) * (2.0 - 3.0 * l1) + 3.0 * l1 - 4.0;
                    if k == 1 {
                        pref * (near * right + l1 * left)
                    } else {
                        pref * (near * left + l1 * right)
                    }
                }
                _ => {
                    let m = k.unsigned_abs() as f64;
                    let radial = pw(m + 2.0, p) * l1
                        + pw(m + 1.0, p) * (2.0 - 3.0 * l1)
                        + pw(m, p) * (3.0 * l1 - 4.0)
                        + pw(m - 1.0, p) * (2.0 - l1);
                    pref * radial * if k > 0 { right } else { left }
                }
            }
        } else {
            let l2 = self.scheme.lambda2;
            match k {
                0 => pref * (pw(2.0, p) * (2.0 - l2) + 4.0 * l2 - 6.0) * (left + right),
                1 | -1 => {
                    let near =
                        pw(3.0, p) * (2.0 - l2) + pw(2.0, p) * (4.0 * l2 - 6.0) - 6.0 * l2 + 6.0;
                    if k == 1 {
                        pref * (near * right + (2.0 - l2) * left)
                    } else {
                        pref * (near * left + (2.0 - l2) * right)
                    }
                }
                _ => {
                    let m = k.unsigned_abs() as f64;
                    let radial = pw(m + 2.0, p) * (2.0 - l2)
                        + pw(m + 1.0, p) * (4.0 * l2 - 6.0)
                        + pw(m, p) * (6.0 - 6.0 * l2)
                        + pw(m - 1.0, p) * (4.0 * l2 - 2.0)
                        - pw(m - 2.0, p) * l2;
                    pref * radial * if k > 0 { right } else { left }
                }
            }
        }
    }

    /// Closed form of sum_{k <= -(j+1)} w_k, the left tail beyond offset j.
    pub fn tail_left(&self, j: i64) -> Result<f64> {
        Ok(self.side.left * self.tail_radial(j)?)
    }

    /// Closed form of sum_{k >= j+1} w_k, the right tail beyond offset j.
    pub fn tail_right(&self, j: i64) -> Result<f64> {
        Ok(self.side.right * self.tail_radial(j)?)
    }

    /// Shared radial factor of both tails. The infinite sums telescope because
    /// each weight beyond |k| = 1 is a difference of consecutive values of one
    /// four- or five-term power expression; only the boundary term at j
    /// survives, divided by the same gamma normalization as the weights.
    fn tail_radial(&self, j: i64) -> Result<f64> {
        if j < 1 {
            return Err(Error::TailIndex { j });
        }
        let jf = j as f64;
        let p = self.exponent;
        let numer = if self.low_order {
            let l1 = self.scheme.lambda1;
            pw(jf + 2.0, p) * l1 + pw(jf + 1.0, p) * (2.0 - 2.0 * l1) + pw(jf, p) * (l1 - 2.0)
        } else {
            let l2 = self.scheme.lambda2;
            pw(jf + 2.0, p) * (2.0 - l2)
                + pw(jf + 1.0, p) * (3.0 * l2 - 4.0)
                + pw(jf, p) * (2.0 - 3.0 * l2)
                + pw(jf - 1.0, p) * l2
        };
        Ok(numer / (2.0 * self.gamma_norm))
    }
}

/// x^p with the conventions the weight algebra relies on: 0^p = 0 for p > 0
/// and 0^0 = 1 (IEEE powf already provides both). Bases are never negative.
#[inline]
fn pw(base: f64, p: f64) -> f64 {
    debug_assert!(base >= 0.0);
    base.powf(p)
}

/// One weight w_k. Convenience wrapper; batch callers should construct a
/// [`WeightKernel`] or [`WeightTable`] instead of paying the setup per call.
pub fn weight(k: i64, params: &FractionalParams, scheme: &SchemeWeights) -> f64 {
    WeightKernel::new(params, scheme).weight(k)
}

/// Closed-form left tail sum beyond offset j >= 1.
pub fn tail_sum_left(j: i64, params: &FractionalParams, scheme: &SchemeWeights) -> Result<f64> {
    WeightKernel::new(params, scheme).tail_left(j)
}

/// Closed-form right tail sum beyond offset j >= 1.
pub fn tail_sum_right(j: i64, params: &FractionalParams, scheme: &SchemeWeights) -> Result<f64> {
    WeightKernel::new(params, scheme).tail_right(j)
}

/// Weights for offsets |k| <= kmax plus tail sums for 1 <= j <= kmax,
/// evaluated once and indexed thereafter.
#[derive(Debug, Clone)]
pub struct WeightTable {
    params: FractionalParams,
    scheme: SchemeWeights,
    kmax: usize,
    /// w_k at index k + kmax.
    weights: Vec<f64>,
    /// Tail sums at index j - 1.
    tails_left: Vec<f64>,
    tails_right: Vec<f64>,
}

impl WeightTable {
    pub fn build(params: &FractionalParams, scheme: &SchemeWeights, kmax: usize) -> Result<Self> {
        if kmax < 2 {
            return Err(Error::KmaxTooSmall { kmax });
        }
        let kernel = WeightKernel::new(params, scheme);
        let half = kmax as i64;
        let weights = (-half..=half).map(|k| kernel.weight(k)).collect();
        let mut tails_left = Vec::with_capacity(kmax);
        let mut tails_right = Vec::with_capacity(kmax);
        for j in 1..=half {
            tails_left.push(kernel.tail_left(j)?);
            tails_right.push(kernel.tail_right(j)?);
        }
        Ok(Self { params: *params, scheme: *scheme, kmax, weights, tails_left, tails_right })
    }

    pub fn params(&self) -> &FractionalParams {
        &self.params
    }

    pub fn scheme(&self) -> &SchemeWeights {
        &self.scheme
    }

    pub fn kmax(&self) -> usize {
        self.kmax
    }

    /// w_k for |k| <= kmax.
    pub fn weight(&self, k: i64) -> f64 {
        let idx = k + self.kmax as i64;
        assert!(
            k.unsigned_abs() as usize <= self.kmax,
            "offset {k} outside table range +-{}",
            self.kmax
        );
        self.weights[idx as usize]
    }

    /// Left tail sum for 1 <= j <= kmax.
    pub fn tail_left(&self, j: usize) -> f64 {
        assert!((1..=self.kmax).contains(&j), "tail offset {j} outside [1, {}]", self.kmax);
        self.tails_left[j - 1]
    }

    /// Right tail sum for 1 <= j <= kmax.
    pub fn tail_right(&self, j: usize) -> f64 {
        assert!((1..=self.kmax).contains(&j), "tail offset {j} outside [1, {}]", self.kmax);
        self.tails_right[j - 1]
    }
}
