use serde::Serialize;

use super::{Mesh, SchemeError, SchemeParams};
use crate::linalg::{thomas_solve, TridiagonalSystem};
use crate::problem::Problem;
use crate::scalar::Scalar;

/// Spline second derivatives `M_i = S''(x_i)` at every node, boundaries included.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Moments<T>(Vec<T>);

impl<T: Scalar> Moments<T> {
    pub fn from_vec(values: Vec<T>) -> Self {
        Moments(values)
    }

    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }
}

fn check_interval<T: Scalar>(problem: &Problem<T>, mesh: &Mesh<T>) -> Result<(), SchemeError> {
    let (a, b) = problem.interval();
    if mesh.a() != a || mesh.b() != b {
        return Err(SchemeError::IntervalMismatch {
            mesh_a: mesh.a().as_f64(),
            mesh_b: mesh.b().as_f64(),
            a: a.as_f64(),
            b: b.as_f64(),
        });
    }
    Ok(())
}

/// P and f sampled at every node.
pub(super) fn node_coefficients<T: Scalar>(
    problem: &Problem<T>,
    mesh: &Mesh<T>,
) -> Result<(Vec<T>, Vec<T>), SchemeError> {
    let mut p = Vec::with_capacity(mesh.n() + 1);
    let mut f = Vec::with_capacity(mesh.n() + 1);
    for i in 0..=mesh.n() {
        let x = mesh.node(i);
        p.push(problem.p(x)?);
        f.push(problem.f(x)?);
    }
    Ok((p, f))
}

/// `M_i = (P(x_i)*y_i - f(x_i))/eps` from the differential equation.
pub fn moments<T: Scalar>(problem: &Problem<T>, mesh: &Mesh<T>, y: &[T]) -> Result<Moments<T>, SchemeError> {
    if y.len() != mesh.n() + 1 {
        return Err(SchemeError::LengthMismatch {
            got: y.len(),
            want: mesh.n() + 1,
        });
    }
    let eps = problem.epsilon();
    let values = y
        .iter()
        .enumerate()
        .map(|(i, &yi)| {
            let x = mesh.node(i);
            Ok((problem.p(x)? * yi - problem.f(x)?) / eps)
        })
        .collect::<Result<Vec<T>, SchemeError>>()?;
    Ok(Moments(values))
}

/// Builds the system for the `n - 1` interior unknowns. Row `k` belongs to
/// node `i = k + 1`:
///
/// ```text
/// (l1 h^2 P[i-1] - eps) y[i-1] + 2 (eps + l2 h^2 P[i]) y[i] + (l1 h^2 P[i+1] - eps) y[i+1]
///     = h^2 (l1 f[i-1] + 2 l2 f[i] + l1 f[i+1])
/// ```
///
/// with the known boundary values moved to the right-hand side of the first
/// and last rows.
pub fn assemble<T: Scalar>(
    problem: &Problem<T>,
    mesh: &Mesh<T>,
    params: &SchemeParams<T>,
) -> Result<TridiagonalSystem<T>, SchemeError> {
    check_interval(problem, mesh)?;
    let n = mesh.n();
    let eps = problem.epsilon();
    let (ya, yb) = problem.boundary_values();
    let h2 = mesh.h() * mesh.h();
    let (l1, l2) = (params.lambda1, params.lambda2);
    let two = T::lit(2.0);
    let (p, f) = node_coefficients(problem, mesh)?;

    let off = |j: usize| l1 * h2 * p[j] - eps;
    let m = n - 1;
    let mut sub = Vec::with_capacity(m - 1);
    let mut diag = Vec::with_capacity(m);
    let mut sup = Vec::with_capacity(m - 1);
    let mut rhs = Vec::with_capacity(m);
    for i in 1..n {
        diag.push(two * (eps + l2 * h2 * p[i]));
        if i > 1 {
            sub.push(off(i - 1));
        }
        if i < n - 1 {
            sup.push(off(i + 1));
        }
        let mut r = h2 * (l1 * f[i - 1] + two * l2 * f[i] + l1 * f[i + 1]);
        if i == 1 {
            r = r - off(0) * ya;
        }
        if i == n - 1 {
            r = r - off(n) * yb;
        }
        rhs.push(r);
    }
    Ok(TridiagonalSystem::new(sub, diag, sup, rhs)?)
}

/// Nodal solution with solver diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Solution<T> {
    pub nodes: Vec<T>,
    /// All `n + 1` nodal values, boundary values included.
    pub values: Vec<T>,
    pub min_pivot_magnitude: T,
    pub dominant: bool,
}

/// Assembles and solves with the Thomas algorithm.
pub fn solve<T: Scalar>(
    problem: &Problem<T>,
    mesh: &Mesh<T>,
    params: &SchemeParams<T>,
) -> Result<Solution<T>, SchemeError> {
    let system = assemble(problem, mesh, params)?;
    let report = thomas_solve(&system)?;
    let (ya, yb) = problem.boundary_values();
    let mut values = Vec::with_capacity(mesh.n() + 1);
    values.push(ya);
    values.extend_from_slice(&report.solution);
    values.push(yb);
    Ok(Solution {
        nodes: mesh.nodes(),
        values,
        min_pivot_magnitude: report.min_pivot_magnitude,
        dominant: report.dominant,
    })
}
