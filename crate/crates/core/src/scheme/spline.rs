use super::{tension_coefficients, Mesh, Moments, SchemeError, TAYLOR_SWITCH};
use crate::scalar::Scalar;

fn check_lengths<T: Scalar>(mesh: &Mesh<T>, y: &[T], moments: &Moments<T>) -> Result<(), SchemeError> {
    let want = mesh.n() + 1;
    for got in [y.len(), moments.len()] {
        if got != want {
            return Err(SchemeError::LengthMismatch { got, want });
        }
    }
    Ok(())
}

fn check_tension<T: Scalar>(lambda: T) -> Result<(), SchemeError> {
    if !(lambda > T::zero()) || !lambda.is_finite() {
        return Err(SchemeError::NonPositiveTension(lambda.as_f64()));
    }
    Ok(())
}

/// `(h/lambda)^2 * (sinh(lambda*t)/sinh(lambda) - t)`, the weight of a moment
/// at relative distance `t` from the opposite node; `h^2*(t^3 - t)/6` in the
/// cubic limit.
fn moment_weight<T: Scalar>(t: T, h: T, lambda: T) -> T {
    if lambda < T::lit(TAYLOR_SWITCH) {
        h * h * (t * t * t - t) / T::lit(6.0)
    } else {
        (h / lambda).powi(2) * ((lambda * t).sinh() / lambda.sinh() - t)
    }
}

/// Value of the tension spline at `x`:
///
/// ```text
/// S(x) = (h/l)^2 [M[i+1] (sinh(l t)/sinh l - t) + M[i] (sinh(l s)/sinh l - s)] + t y[i+1] + s y[i]
/// ```
///
/// with `t = (x - x_i)/h`, `s = 1 - t` on the cell containing `x`.
pub fn spline_value<T: Scalar>(
    x: T,
    mesh: &Mesh<T>,
    y: &[T],
    moments: &Moments<T>,
    lambda: T,
) -> Result<T, SchemeError> {
    check_lengths(mesh, y, moments)?;
    check_tension(lambda)?;
    let i = mesh.cell_of(x)?;
    let h = mesh.h();
    let (left, right) = (mesh.node(i), mesh.node(i + 1));
    let width = right - left;
    let t = (x - left) / width;
    let s = (right - x) / width;
    let m = moments.as_slice();
    Ok(m[i + 1] * moment_weight(t, h, lambda) + m[i] * moment_weight(s, h, lambda) + t * y[i + 1] + s * y[i])
}

/// Jump `S'(x_i+) - S'(x_i-)` of the spline slope at interior node `i`.
///
/// Zero exactly when `y` and the moments satisfy the three-point relation at
/// that node.
pub fn continuity_defect<T: Scalar>(
    mesh: &Mesh<T>,
    y: &[T],
    moments: &Moments<T>,
    lambda: T,
    i: usize,
) -> Result<T, SchemeError> {
    check_lengths(mesh, y, moments)?;
    check_tension(lambda)?;
    if i == 0 || i >= mesh.n() {
        return Err(SchemeError::IndexOutOfRange { index: i, n: mesh.n() });
    }
    let (l1, l2) = tension_coefficients(lambda);
    let h = mesh.h();
    let m = moments.as_slice();
    let right = (y[i + 1] - y[i]) / h - h * (l1 * m[i + 1] + l2 * m[i]);
    let left = (y[i] - y[i - 1]) / h + h * (l2 * m[i] + l1 * m[i - 1]);
    Ok(right - left)
}
