use super::{Problem, ProblemError};
use crate::scalar::Scalar;

/// Boundary layers are skipped below this `eps`; the finite-difference y''
/// cannot resolve them.
const LAYER_EPS: f64 = 1e-3;
/// Excluded layer width in units of `sqrt(eps)`.
const LAYER_WIDTHS: f64 = 10.0;

/// Max residual `|-eps*y'' + P*y - f|` of the exact solution over
/// `n_samples` interior points, with y'' from central differences.
///
/// The difference step is the cube root of machine epsilon scaled by
/// `max(1, |x|)` and snapped to a power of two. For `eps < 1e-3` sampling
/// stays `10*sqrt(eps)` away from each endpoint.
pub fn verify_exact<T: Scalar>(problem: &Problem<T>, n_samples: usize) -> Result<T, ProblemError> {
    let exact = problem.exact_expr().ok_or(ProblemError::MissingExact)?;
    let eps = problem.epsilon();
    let (a, b) = problem.interval();
    let (mut lo, mut hi) = (a, b);
    if eps < T::lit(LAYER_EPS) {
        let width = T::lit(LAYER_WIDTHS) * eps.sqrt();
        if a + width < b - width {
            lo = a + width;
            hi = b - width;
        }
    }
    if n_samples < 3 {
        return Err(ProblemError::TooFewSamples(n_samples));
    }
    let n = n_samples;
    let base_step = T::epsilon().cbrt();
    let y = |x: T| exact.evaluate(x, eps);
    let mut worst = T::zero();
    for k in 1..=n {
        let x = lo + (hi - lo) * T::of_usize(k) / T::of_usize(n + 1);
        let scaled = base_step * T::one().max(x.abs());
        let step = T::lit(2.0).powi(scaled.log2().round().to_i32().unwrap_or(-17));
        let (xp, xm) = (x + step, x - step);
        let (hp, hm) = (xp - x, x - xm);
        let (yp, y0, ym) = (y(xp)?, y(x)?, y(xm)?);
        let second = T::lit(2.0) * ((yp - y0) / hp - (y0 - ym) / hm) / (hp + hm);
        let residual = -eps * second + problem.p(x)? * y0 - problem.f(x)?;
        worst = worst.max(residual.abs());
    }
    Ok(worst)
}
