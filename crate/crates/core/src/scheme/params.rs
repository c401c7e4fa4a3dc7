use std::fmt;

use serde::Serialize;

use super::SchemeError;
use crate::scalar::{ratio, Scalar};

/// Below this tension the two-term Taylor expansion is used.
pub const TAYLOR_SWITCH: f64 = 1e-4;
/// Below this tension the hyperbolic ratios are summed as power series to
/// avoid cancellation in `1 - lambda/sinh(lambda)`.
const SERIES_SWITCH: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    /// `(1/6, 1/3)`: the cubic spline, second order.
    SecondOrderCubic,
    /// `(1/12, 5/12)`: fourth order.
    FourthOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamOrigin<T> {
    Direct,
    Tension { lambda: T },
    Preset(Preset),
}

/// The coefficient pair `(lambda1, lambda2)` of the three-point relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SchemeParams<T> {
    pub lambda1: T,
    pub lambda2: T,
    pub origin: ParamOrigin<T>,
}

impl<T: Scalar> SchemeParams<T> {
    pub fn preset(preset: Preset) -> Self {
        let (lambda1, lambda2) = match preset {
            Preset::SecondOrderCubic => (ratio(1, 6), ratio(1, 3)),
            Preset::FourthOrder => (ratio(1, 12), ratio(5, 12)),
        };
        SchemeParams {
            lambda1,
            lambda2,
            origin: ParamOrigin::Preset(preset),
        }
    }

    pub fn cubic() -> Self {
        Self::preset(Preset::SecondOrderCubic)
    }

    pub fn fourth_order() -> Self {
        Self::preset(Preset::FourthOrder)
    }

    pub fn direct(lambda1: T, lambda2: T) -> Result<Self, SchemeError> {
        if !(lambda1 > T::zero() && lambda2 > T::zero()) || !(lambda1 + lambda2).is_finite() {
            return Err(SchemeError::NonPositiveCoefficient {
                lambda1: lambda1.as_f64(),
                lambda2: lambda2.as_f64(),
            });
        }
        Ok(SchemeParams {
            lambda1,
            lambda2,
            origin: ParamOrigin::Direct,
        })
    }

    pub fn from_tension(lambda: T) -> Result<Self, SchemeError> {
        params_from_tension(lambda)
    }

    /// `lambda1 + lambda2`; exactly 1/2 for the second-order families.
    pub fn lambda_sum(&self) -> T {
        self.lambda1 + self.lambda2
    }

    /// Tension `tau = (lambda/h)^2` for tension-derived parameters.
    pub fn tau(&self, h: T) -> Option<T> {
        match self.origin {
            ParamOrigin::Tension { lambda } => Some((lambda / h).powi(2)),
            _ => None,
        }
    }
}

impl<T: Scalar> fmt::Display for SchemeParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.origin {
            ParamOrigin::Preset(Preset::SecondOrderCubic) => f.write_str("cubic")?,
            ParamOrigin::Preset(Preset::FourthOrder) => f.write_str("fourth")?,
            ParamOrigin::Direct => f.write_str("direct")?,
            ParamOrigin::Tension { lambda } => write!(f, "tension(lambda={lambda})")?,
        }
        write!(f, " (lambda1={}, lambda2={})", self.lambda1, self.lambda2)
    }
}

/// Coefficients for tension `lambda = h*sqrt(tau)`:
/// `lambda1 = (1 - lambda/sinh(lambda))/lambda^2`,
/// `lambda2 = (lambda*coth(lambda) - 1)/lambda^2`.
pub fn params_from_tension<T: Scalar>(lambda: T) -> Result<SchemeParams<T>, SchemeError> {
    if !(lambda > T::zero()) || !lambda.is_finite() {
        return Err(SchemeError::NonPositiveTension(lambda.as_f64()));
    }
    let (lambda1, lambda2) = tension_coefficients(lambda);
    Ok(SchemeParams {
        lambda1,
        lambda2,
        origin: ParamOrigin::Tension { lambda },
    })
}

/// Taylor branch below [`TAYLOR_SWITCH`], exact evaluation above.
pub fn tension_coefficients<T: Scalar>(lambda: T) -> (T, T) {
    if lambda < T::lit(TAYLOR_SWITCH) {
        tension_coefficients_taylor(lambda)
    } else {
        tension_coefficients_closed(lambda)
    }
}

/// `(1/6 - 7*lambda^2/360, 1/3 - lambda^2/45)`.
pub fn tension_coefficients_taylor<T: Scalar>(lambda: T) -> (T, T) {
    let l2 = lambda * lambda;
    (
        ratio::<T>(1, 6) - ratio::<T>(7, 360) * l2,
        ratio::<T>(1, 3) - l2 / T::of_usize(45),
    )
}

/// Full-accuracy evaluation of the hyperbolic formulas.
///
/// With `q = sinh(l)/l`, `s1 = (sinh(l) - l)/l^3` and
/// `s2 = (l*cosh(l) - sinh(l))/l^3`, the coefficients are `s1/q` and `s2/q`.
/// All three series have positive terms, so small `l` loses nothing.
pub fn tension_coefficients_closed<T: Scalar>(lambda: T) -> (T, T) {
    if lambda >= T::lit(SERIES_SWITCH) {
        let l2 = lambda * lambda;
        let lambda1 = (T::one() - lambda / lambda.sinh()) / l2;
        let lambda2 = (lambda / lambda.tanh() - T::one()) / l2;
        return (lambda1, lambda2);
    }
    let l2 = lambda * lambda;
    // u_k = l^(2k-2)/(2k+1)!, k >= 1
    let mut u = ratio::<T>(1, 6);
    let mut s1 = u;
    let mut s2 = T::lit(2.0) * u;
    for k in 2..200usize {
        u = u * l2 / T::of_usize(2 * k * (2 * k + 1));
        s1 = s1 + u;
        s2 = s2 + T::of_usize(2 * k) * u;
        if u * T::of_usize(2 * k) <= T::epsilon() * s1 * T::lit(0.01) {
            break;
        }
    }
    let q = T::one() + l2 * s1;
    (s1 / q, s2 / q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_are_exact_rationals() {
        let c = SchemeParams::<f64>::cubic();
        assert_eq!((c.lambda1, c.lambda2), (1.0 / 6.0, 1.0 / 3.0));
        let f = SchemeParams::<f64>::fourth_order();
        assert_eq!((f.lambda1, f.lambda2), (1.0 / 12.0, 5.0 / 12.0));
        assert_eq!(f.lambda_sum(), 0.5);
        assert_eq!(f.tau(0.1), None);
    }

    #[test]
    fn tiny_tension_is_cubic() {
        let p = params_from_tension(1e-8f64).unwrap();
        assert!((p.lambda1 - 1.0 / 6.0).abs() <= 1e-15);
        assert!((p.lambda2 - 1.0 / 3.0).abs() <= 1e-15);
    }

    #[test]
    fn unit_tension() {
        // 40-digit references for 1 - 1/sinh(1) and coth(1) - 1
        let p = params_from_tension(1.0f64).unwrap();
        assert!((p.lambda1 - 0.149_081_871_760_678_45).abs() <= 1e-15);
        assert!((p.lambda2 - 0.313_035_285_499_331_3).abs() <= 1e-15);
        assert_eq!(p.tau(0.5), Some(4.0));
    }

    #[test]
    fn large_tension_sum_below_half() {
        let p = params_from_tension(5.0f64).unwrap();
        assert!(p.lambda_sum() < 0.5);
        assert!((p.lambda1 - 0.037_304_698_833_882_18).abs() <= 1e-15);
        assert!((p.lambda2 - 0.160_018_160_796_403_87).abs() <= 1e-15);
    }

    #[test]
    fn huge_tension_stays_finite() {
        let p = params_from_tension(1000.0f64).unwrap();
        assert!((p.lambda1 - 1e-6).abs() < 1e-18);
        assert!((p.lambda2 - 999.0 / 1e6).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            params_from_tension(0.0f64),
            Err(SchemeError::NonPositiveTension(_))
        ));
        assert!(params_from_tension(-1.0f64).is_err());
        assert!(params_from_tension(f64::NAN).is_err());
        assert!(SchemeParams::direct(0.0f64, 0.5).is_err());
        assert!(SchemeParams::direct(0.2f64, 0.3).is_ok());
    }

    #[test]
    fn branches_continuous_at_series_switch() {
        let below: (f64, f64) = tension_coefficients_closed(SERIES_SWITCH * (1.0 - 1e-15));
        let above: (f64, f64) = tension_coefficients_closed(SERIES_SWITCH);
        assert!((below.0 - above.0).abs() < 1e-15);
        assert!((below.1 - above.1).abs() < 1e-15);
    }
}
