//! Predictor-corrector solvers for ordinary differential equations under the
//! classical first derivative and three fractional derivatives (power-law,
//! exponential-kernel, and Mittag-Leffler-kernel), built on Newton
//! interpolation and closed-form product-integration weights.
//!
//! The crate provides:
//!
//! * [`specfun`] — Gamma function and the normalization constants.
//! * [`model`] — problem, grid, trajectory, and solver-configuration types.
//! * [`kernels`] — the closed-form cell integrals and the memory term.
//! * [`schemes`] — the stepping strategies behind the [`schemes::Scheme`]
//!   trait, selected by name at run time, plus the solve driver.
//! * [`problems`] — builtin benchmark problems with exact solutions.
//! * [`gm`] — the activator-inhibitor case study and its stability analysis.
//! * [`tables`] — the reference error tables the benchmark harness reruns.

pub mod error;
pub mod gm;
pub mod kernels;
pub mod model;
pub mod problems;
pub mod schemes;
pub mod specfun;
pub mod tables;

pub use error::{Error, Result};
pub use model::{
    make_grid, DerivativeKind, FractionalIvp, Rhs, SchemeId, SolverConfig, Trajectory, UniformGrid,
};
pub use schemes::{scheme_by_id, scheme_by_name, solve, Scheme, StepContext};
