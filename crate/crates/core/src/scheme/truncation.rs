use super::assemble::node_coefficients;
use super::{Mesh, SchemeError, SchemeParams};
use crate::problem::{Problem, ProblemError};
use crate::scalar::Scalar;

/// Local truncation residual: the exact solution substituted into each
/// interior row, left-hand side minus right-hand side. Length `n - 1`.
///
/// For the family `lambda1 + lambda2 = 1/2` the residual is `O(h^4)`, and
/// `O(h^6)` when additionally `lambda1 = 1/12`.
pub fn truncation_residual<T: Scalar>(
    problem: &Problem<T>,
    mesh: &Mesh<T>,
    params: &SchemeParams<T>,
) -> Result<Vec<T>, SchemeError> {
    let exact: Vec<T> = (0..=mesh.n())
        .map(|i| problem.exact(mesh.node(i)))
        .collect::<Result<_, ProblemError>>()
        .map_err(|e| match e {
            ProblemError::MissingExact => SchemeError::MissingExact,
            other => other.into(),
        })?;
    let (p, f) = node_coefficients(problem, mesh)?;
    let eps = problem.epsilon();
    let h2 = mesh.h() * mesh.h();
    let (l1, l2) = (params.lambda1, params.lambda2);
    let two = T::lit(2.0);
    Ok((1..mesh.n())
        .map(|i| {
            let lhs = (l1 * h2 * p[i - 1] - eps) * exact[i - 1]
                + two * (eps + l2 * h2 * p[i]) * exact[i]
                + (l1 * h2 * p[i + 1] - eps) * exact[i + 1];
            let rhs = h2 * (l1 * f[i - 1] + two * l2 * f[i] + l1 * f[i + 1]);
            lhs - rhs
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprparse::parse;
    use crate::problem::catalog;

    fn max_abs(v: &[f64]) -> f64 {
        v.iter().fold(0.0, |m, r| m.max(r.abs()))
    }

    #[test]
    fn quadratic_exact_has_no_residual() {
        let pr = catalog("example_4_2", 1e-3f64).unwrap();
        for n in [4, 16, 64] {
            let mesh = Mesh::new(0.0, 1.0, n).unwrap();
            let r = truncation_residual(&pr, &mesh, &SchemeParams::fourth_order()).unwrap();
            assert_eq!(r.len(), n - 1);
            assert!(max_abs(&r) <= 1e-12 * 10.0, "n={n}: {}", max_abs(&r));
        }
    }

    #[test]
    fn quartic_exact_annihilated_by_fourth_order() {
        let eps = 0.5;
        let pr = Problem::new(
            eps,
            parse("0").unwrap(),
            parse("-12*eps*x^2").unwrap(),
            (0.0, 1.0),
            (0.0, 1.0),
            Some(parse("x^4").unwrap()),
        )
        .unwrap();
        let mesh = Mesh::new(0.0, 1.0, 8).unwrap();
        let r = truncation_residual(&pr, &mesh, &SchemeParams::fourth_order()).unwrap();
        assert!(max_abs(&r) < 1e-15, "{}", max_abs(&r));
        let cubic = truncation_residual(&pr, &mesh, &SchemeParams::cubic()).unwrap();
        assert!(max_abs(&cubic) > 1e-6);
    }

    #[test]
    fn missing_exact() {
        let pr = Problem::new(
            1.0f64,
            parse("1").unwrap(),
            parse("0").unwrap(),
            (0.0, 1.0),
            (0.0, 0.0),
            None,
        )
        .unwrap();
        let mesh = Mesh::new(0.0, 1.0, 4).unwrap();
        assert_eq!(
            truncation_residual(&pr, &mesh, &SchemeParams::cubic()),
            Err(SchemeError::MissingExact)
        );
    }
}
