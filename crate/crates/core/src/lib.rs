//! Tension-spline solver for singularly perturbed two-point boundary value
//! problems
//!
//! ```text
//! -eps * y''(x) + P(x) * y(x) = f(x),   y(a) = ya,   y(b) = yb,   0 < eps << 1
//! ```
//!
//! The discretization is a three-point scheme derived from a cubic spline in
//! tension. Its coefficient pair `(lambda1, lambda2)` selects the method:
//! any pair with `lambda1 + lambda2 = 1/2` is second order, `(1/12, 5/12)` is
//! fourth order, and a tension parameter `lambda` yields the hyperbolic
//! coefficients of the tension spline itself.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the `*64` and
//! `*32` aliases below fix the precision.
//!
//! ```
//! use tension_bvp::{catalog, solve, Mesh, SchemeParams};
//!
//! let problem = catalog("example_4_2", 1e-4_f64).unwrap();
//! let mesh = Mesh::new(0.0, 1.0, 16).unwrap();
//! let sol = solve(&problem, &mesh, &SchemeParams::fourth_order()).unwrap();
//! assert!((sol.values[8] - 10.0).abs() < 1e-12);
//! ```

// `!(x > 0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod exprparse;
pub mod linalg;
pub mod number;
pub mod problem;
mod scalar;
pub mod scheme;

pub use analysis::{max_abs_error, observed_order, run_sweep, ConvergenceReport, ErrorRecord};
pub use exprparse::{parse, Expr};
pub use linalg::{dense_oracle_solve, thomas_solve, SolveReport, TridiagonalSystem};
pub use problem::{catalog, verify_exact, Problem, ProblemFamily};
pub use scalar::Scalar;
pub use scheme::{
    assemble, continuity_defect, moments, params_from_tension, solve, spline_value, truncation_residual, Mesh, Moments,
    SchemeParams,
};

pub type Problem64 = Problem<f64>;
pub type Mesh64 = Mesh<f64>;
pub type SchemeParams64 = SchemeParams<f64>;
pub type TridiagonalSystem64 = TridiagonalSystem<f64>;
pub type Moments64 = Moments<f64>;
pub type ConvergenceReport64 = ConvergenceReport<f64>;

pub type Problem32 = Problem<f32>;
pub type Mesh32 = Mesh<f32>;
pub type SchemeParams32 = SchemeParams<f32>;
pub type TridiagonalSystem32 = TridiagonalSystem<f32>;
pub type Moments32 = Moments<f32>;
pub type ConvergenceReport32 = ConvergenceReport<f32>;
