//! Tension-spline discretization of `-eps*y'' + P*y = f`.
//!
//! On each mesh cell the spline satisfies `S'' - tau*S = linear`, which gives
//! a closed form in the nodal values `y_i` and moments `M_i = S''(x_i)`.
//! Requiring a continuous first derivative at interior nodes yields
//!
//! ```text
//! h^2 (l1*M[i-1] + 2*l2*M[i] + l1*M[i+1]) = y[i+1] - 2*y[i] + y[i-1]
//! ```
//!
//! and substituting `M_i = (P_i*y_i - f_i)/eps` from the differential
//! equation turns it into a tridiagonal system for the interior values.

mod assemble;
mod mesh;
mod params;
mod spline;
mod truncation;

use thiserror::Error;

use crate::exprparse::EvalError;
use crate::linalg::LinalgError;
use crate::problem::ProblemError;

pub use crate::linalg::TridiagonalSystem;
pub use assemble::{assemble, moments, solve, Moments, Solution};
pub use mesh::Mesh;
pub use params::{
    params_from_tension, tension_coefficients, tension_coefficients_closed, tension_coefficients_taylor, ParamOrigin,
    Preset, SchemeParams, TAYLOR_SWITCH,
};
pub use spline::{continuity_defect, spline_value};
pub use truncation::truncation_residual;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SchemeError {
    #[error("mesh needs at least 2 subintervals, got {0}")]
    MeshTooSmall(usize),
    #[error("mesh interval [{a}, {b}] is empty or not finite")]
    InvalidInterval { a: f64, b: f64 },
    #[error("mesh interval [{mesh_a}, {mesh_b}] does not match problem interval [{a}, {b}]")]
    IntervalMismatch { mesh_a: f64, mesh_b: f64, a: f64, b: f64 },
    #[error("tension parameter must be positive, got {0}")]
    NonPositiveTension(f64),
    #[error("scheme coefficients must be positive, got lambda1 = {lambda1}, lambda2 = {lambda2}")]
    NonPositiveCoefficient { lambda1: f64, lambda2: f64 },
    #[error("vector of length {got} where {want} entries are required")]
    LengthMismatch { got: usize, want: usize },
    #[error("x = {x} lies outside [{a}, {b}]")]
    OutOfDomain { x: f64, a: f64, b: f64 },
    #[error("node index {index} is not interior to a mesh with {n} subintervals")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("problem has no exact solution")]
    MissingExact,
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
