//! Steady-state anomalous diffusion on a bounded interval.
//!
//! The library discretizes the space-fractional derivative of order
//! alpha in (0, 2] \ {1} with skewness theta (the Riesz-Feller operator) by a
//! fractional finite difference scheme, folds the unbounded stencil onto the
//! domain through closed-form tail sums, and solves the resulting dense
//! bordered-Toeplitz system directly. On top of the solver sit an oracle
//! suite of independent consistency checks and a two-parameter profile
//! fitter.

pub mod discretize;
pub mod error;
pub mod fit;
pub mod gamma;
pub mod io;
pub mod kernel;
pub mod manifest;
pub mod oracle;
pub mod solve;
pub mod svg;

pub use discretize::{
    apply_riesz_feller, assemble, AssembledSystem, DenseMatrix, DirichletBC, Domain1D,
    GridFunction,
};
pub use error::{Error, Result};
pub use fit::{fit, loss, FitConfig, FitResult, ObservedProfile};
pub use kernel::{
    tail_sum_left, tail_sum_right, weight, FractionalParams, SchemeWeights, SideCoefficients,
    WeightKernel, WeightTable,
};
pub use solve::{lu_solve, residual_inf, Solution};
