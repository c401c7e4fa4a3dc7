//! Boundary value problems `-eps*y'' + P(x)*y = f(x)`, `y(a) = ya`, `y(b) = yb`.

mod catalog;
mod file;
mod verify;

use thiserror::Error;

use crate::exprparse::{EvalError, Expr};
use crate::scalar::Scalar;

pub use catalog::{catalog, CATALOG};
pub use file::ProblemFileError;
pub use verify::verify_exact;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("unknown problem `{0}` (known: {known})", known = CATALOG.join(", "))]
    UnknownProblem(String),
    #[error("eps must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("interval endpoints must satisfy a < b, got a = {a}, b = {b}")]
    EmptyInterval { a: f64, b: f64 },
    #[error("exact solution gives y({at}) = {exact}, boundary value is {given}")]
    BoundaryMismatch { at: f64, exact: f64, given: f64 },
    #[error("residual check needs at least 3 samples, got {0}")]
    TooFewSamples(usize),
    #[error("problem has no exact solution")]
    MissingExact,
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// A parametrised problem: everything but `eps`.
///
/// Both catalog entries and problem files produce one of these; a concrete
/// [`Problem`] is obtained per perturbation parameter with
/// [`ProblemFamily::instantiate`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFamily {
    pub name: String,
    pub p: Expr,
    pub f: Expr,
    pub exact: Option<Expr>,
    pub a: f64,
    pub b: f64,
    pub ya: f64,
    pub yb: f64,
    /// `eps` given in a problem file, if any.
    pub default_eps: Option<f64>,
}

impl ProblemFamily {
    pub fn catalog(name: &str) -> Result<Self, ProblemError> {
        catalog::family(name)
    }

    /// Reads the `key = value` problem-file format.
    pub fn from_file_text(name: &str, text: &str) -> Result<Self, ProblemFileError> {
        file::parse_problem_file(name, text)
    }

    pub fn instantiate<T: Scalar>(&self, epsilon: T) -> Result<Problem<T>, ProblemError> {
        Problem::new(
            epsilon,
            self.p.clone(),
            self.f.clone(),
            (T::lit(self.a), T::lit(self.b)),
            (T::lit(self.ya), T::lit(self.yb)),
            self.exact.clone(),
        )
    }
}

/// A fully specified problem instance. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem<T> {
    epsilon: T,
    p: Expr,
    f: Expr,
    a: T,
    b: T,
    ya: T,
    yb: T,
    exact: Option<Expr>,
}

impl<T: Scalar> Problem<T> {
    /// Checks `eps > 0`, `a < b` and, when an exact solution is supplied,
    /// that it matches both boundary values.
    pub fn new(
        epsilon: T,
        p: Expr,
        f: Expr,
        (a, b): (T, T),
        (ya, yb): (T, T),
        exact: Option<Expr>,
    ) -> Result<Self, ProblemError> {
        if !(epsilon > T::zero()) || !epsilon.is_finite() {
            return Err(ProblemError::NonPositiveEpsilon(epsilon.as_f64()));
        }
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(ProblemError::EmptyInterval {
                a: a.as_f64(),
                b: b.as_f64(),
            });
        }
        let problem = Problem {
            epsilon,
            p,
            f,
            a,
            b,
            ya,
            yb,
            exact,
        };
        if let Some(exact) = &problem.exact {
            let tol = T::lit(1e-12).max(T::lit(64.0) * T::epsilon());
            for (x, given) in [(a, ya), (b, yb)] {
                let value = exact.evaluate(x, epsilon)?;
                if (value - given).abs() > tol * T::one().max(given.abs()) {
                    return Err(ProblemError::BoundaryMismatch {
                        at: x.as_f64(),
                        exact: value.as_f64(),
                        given: given.as_f64(),
                    });
                }
            }
        }
        Ok(problem)
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn interval(&self) -> (T, T) {
        (self.a, self.b)
    }

    pub fn boundary_values(&self) -> (T, T) {
        (self.ya, self.yb)
    }

    pub fn p_expr(&self) -> &Expr {
        &self.p
    }

    pub fn f_expr(&self) -> &Expr {
        &self.f
    }

    pub fn exact_expr(&self) -> Option<&Expr> {
        self.exact.as_ref()
    }

    pub fn p(&self, x: T) -> Result<T, EvalError> {
        self.p.evaluate(x, self.epsilon)
    }

    pub fn f(&self, x: T) -> Result<T, EvalError> {
        self.f.evaluate(x, self.epsilon)
    }

    pub fn exact(&self, x: T) -> Result<T, ProblemError> {
        let exact = self.exact.as_ref().ok_or(ProblemError::MissingExact)?;
        Ok(exact.evaluate(x, self.epsilon)?)
    }

    /// Smallest value of P over `samples` equispaced points including both ends.
    pub fn min_p(&self, samples: usize) -> Result<T, EvalError> {
        let samples = samples.max(2);
        let span = self.b - self.a;
        let mut min = T::infinity();
        for k in 0..samples {
            let x = if k + 1 == samples {
                self.b
            } else {
                self.a + span * T::of_usize(k) / T::of_usize(samples - 1)
            };
            min = min.min(self.p(x)?);
        }
        Ok(min)
    }

    /// Non-fatal warning when P is not positive on the interval. The tension
    /// scheme's diagonal dominance relies on P > 0.
    pub fn positivity_warning(&self) -> Option<String> {
        match self.min_p(101) {
            Ok(min) if min > T::zero() => None,
            Ok(min) => Some(format!(
                "P(x) reaches {} on [{}, {}]; the scheme assumes P > 0",
                min, self.a, self.b
            )),
            Err(e) => Some(format!("P(x) could not be sampled: {e}")),
        }
    }
}
