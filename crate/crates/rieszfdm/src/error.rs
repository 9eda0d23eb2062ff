use thiserror::Error;

/// Failure modes across parameter validation, assembly, solving, and fitting.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order alpha = {alpha} lies outside (0, 2]")]
    OrderOutOfRange { alpha: f64 },

    #[error(
        "order alpha = {alpha} falls in the singular band |alpha - 1| < 1e-6 \
         where the Riesz-Feller side coefficients 1/sin(alpha*pi) diverge"
    )]
    OrderSingular { alpha: f64 },

    #[error(
        "skewness theta = {theta} violates |theta| <= min(alpha, 2 - alpha) = {bound} \
         at alpha = {alpha}"
    )]
    SkewnessOutOfRange { alpha: f64, theta: f64, bound: f64 },

    #[error("scheme weights must be finite, got lambda1 = {lambda1}, lambda2 = {lambda2}")]
    InvalidScheme { lambda1: f64, lambda2: f64 },

    #[error("gamma is defined here only for x > 0, got x = {x}")]
    GammaDomain { x: f64 },

    #[error("tail sums are defined for offsets j >= 1, got j = {j}")]
    TailIndex { j: i64 },

    #[error("weight table cutoff must satisfy kmax >= 2, got kmax = {kmax}")]
    KmaxTooSmall { kmax: usize },

    #[error("domain requires finite left < right and at least 2 cells, got [{left}, {right}] with {cells} cells")]
    InvalidDomain { left: f64, right: f64, cells: usize },

    #[error("boundary values must be finite, got left = {left}, right = {right}")]
    InvalidBoundary { left: f64, right: f64 },

    #[error("expected {expected} values, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("weight table covers offsets up to {kmax}, but the grid needs {needed}")]
    TableTooSmall { kmax: usize, needed: usize },

    #[error("matrix is numerically singular at elimination step {step} (pivot {pivot:e})")]
    SingularMatrix { step: usize, pivot: f64 },

    #[error("non-finite value encountered during solve")]
    NonFinite,

    #[error("observed profile is invalid: {reason}")]
    InvalidProfile { reason: String },

    #[error("fit configuration is invalid: {reason}")]
    InvalidFitConfig { reason: String },

    #[error("refinement sequence is invalid: {reason}")]
    InvalidRefinement { reason: String },

    #[error("no feasible (alpha, theta) pair found during the coarse search")]
    NoFeasiblePoint,
}

pub type Result<T> = std::result::Result<T, Error>;
