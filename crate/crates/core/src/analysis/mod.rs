//! Error measurement against exact solutions and (eps, N) convergence sweeps.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::problem::{Problem, ProblemError, ProblemFamily};
use crate::scalar::Scalar;
use crate::scheme::{solve, Mesh, SchemeError, SchemeParams};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("problem has no exact solution")]
    MissingExact,
    #[error("numerical solution has {got} values, mesh has {want} nodes")]
    LengthMismatch { got: usize, want: usize },
    #[error("observed order needs positive errors, got {coarse} and {fine}")]
    NonPositiveError { coarse: f64, fine: f64 },
    #[error("{0} list is empty")]
    EmptyList(&'static str),
    #[error("eps must be positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("mesh needs at least 2 subintervals, got {0}")]
    MeshTooSmall(usize),
    #[error(transparent)]
    Problem(#[from] ProblemError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

/// Relative error level below which roundoff dominates and order estimates
/// are suppressed.
pub fn saturation_floor<T: Scalar>() -> T {
    T::lit(1e-13).max(T::lit(10.0) * T::epsilon())
}

/// `max_i |numerical_i - exact(x_i)|` over all nodes, boundaries included.
pub fn max_abs_error<T: Scalar>(numerical: &[T], problem: &Problem<T>, mesh: &Mesh<T>) -> Result<T, AnalysisError> {
    if problem.exact_expr().is_none() {
        return Err(AnalysisError::MissingExact);
    }
    if numerical.len() != mesh.n() + 1 {
        return Err(AnalysisError::LengthMismatch {
            got: numerical.len(),
            want: mesh.n() + 1,
        });
    }
    let mut worst = T::zero();
    for (i, &v) in numerical.iter().enumerate() {
        worst = worst.max((v - problem.exact(mesh.node(i))?).abs());
    }
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderEstimate<T> {
    pub order: T,
    /// One of the errors sits at roundoff level; the order is noise.
    pub saturated: bool,
}

/// `log2(e_coarse / e_fine)` for a mesh refined by a factor of two.
pub fn observed_order<T: Scalar>(e_coarse: T, e_fine: T) -> Result<OrderEstimate<T>, AnalysisError> {
    observed_order_scaled(e_coarse, e_fine, T::lit(2.0), T::one())
}

/// Order for an arbitrary refinement ratio, with saturation judged relative
/// to `scale` (the magnitude of the solution).
pub fn observed_order_scaled<T: Scalar>(
    e_coarse: T,
    e_fine: T,
    refinement: T,
    scale: T,
) -> Result<OrderEstimate<T>, AnalysisError> {
    if !(e_coarse > T::zero() && e_fine > T::zero()) {
        return Err(AnalysisError::NonPositiveError {
            coarse: e_coarse.as_f64(),
            fine: e_fine.as_f64(),
        });
    }
    let floor = saturation_floor::<T>() * scale.max(T::one());
    Ok(OrderEstimate {
        order: (e_coarse / e_fine).ln() / refinement.ln(),
        saturated: e_coarse < floor || e_fine < floor,
    })
}

/// One solved (eps, N) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorRecord<T> {
    pub epsilon: T,
    pub n: usize,
    pub max_abs_error: T,
    pub dominant: bool,
    pub lambda_sum: T,
    /// `max |exact|` over the nodes; scales the saturation floor.
    pub exact_scale: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SweepCell<T> {
    Solved(ErrorRecord<T>),
    Failed { epsilon: T, n: usize, reason: String },
}

impl<T: Scalar> SweepCell<T> {
    pub fn epsilon(&self) -> T {
        match self {
            SweepCell::Solved(r) => r.epsilon,
            SweepCell::Failed { epsilon, .. } => *epsilon,
        }
    }

    pub fn n(&self) -> usize {
        match self {
            SweepCell::Solved(r) => r.n,
            SweepCell::Failed { n, .. } => *n,
        }
    }

    pub fn record(&self) -> Option<&ErrorRecord<T>> {
        match self {
            SweepCell::Solved(r) => Some(r),
            SweepCell::Failed { .. } => None,
        }
    }
}

/// Order between two adjacent N values at one eps. `order` is `None` when a
/// cell failed or the pair is saturated.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderEntry<T> {
    pub epsilon: T,
    pub n_coarse: usize,
    pub n_fine: usize,
    pub order: Option<T>,
    pub saturated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceReport<T> {
    pub problem: String,
    pub scheme: String,
    pub params: SchemeParams<T>,
    pub eps_list: Vec<T>,
    pub n_list: Vec<usize>,
    /// Row-major: eps outer, N inner.
    pub cells: Vec<SweepCell<T>>,
    pub orders: Vec<OrderEntry<T>>,
}

impl<T: Scalar> ConvergenceReport<T> {
    pub fn cell(&self, eps_index: usize, n_index: usize) -> &SweepCell<T> {
        &self.cells[eps_index * self.n_list.len() + n_index]
    }

    pub fn row(&self, eps_index: usize) -> &[SweepCell<T>] {
        let w = self.n_list.len();
        &self.cells[eps_index * w..(eps_index + 1) * w]
    }

    pub fn orders_for(&self, eps_index: usize) -> &[OrderEntry<T>] {
        let w = self.n_list.len().saturating_sub(1);
        &self.orders[eps_index * w..(eps_index + 1) * w]
    }
}

fn run_cell<T: Scalar>(
    family: &ProblemFamily,
    epsilon: T,
    n: usize,
    params: &SchemeParams<T>,
) -> Result<ErrorRecord<T>, AnalysisError> {
    let problem = family.instantiate(epsilon)?;
    let (a, b) = problem.interval();
    let mesh = Mesh::new(a, b, n)?;
    let solution = solve(&problem, &mesh, params)?;
    let max_abs_error = max_abs_error(&solution.values, &problem, &mesh)?;
    let mut exact_scale = T::zero();
    for &x in &solution.nodes {
        exact_scale = exact_scale.max(problem.exact(x)?.abs());
    }
    Ok(ErrorRecord {
        epsilon,
        n,
        max_abs_error,
        dominant: solution.dominant,
        lambda_sum: params.lambda_sum(),
        exact_scale,
    })
}

/// Solves every (eps, N) combination independently. Cells run in parallel;
/// the report order is fixed (eps outer, N inner). A failing cell is
/// recorded, not fatal.
pub fn run_sweep<T: Scalar>(
    family: &ProblemFamily,
    eps_list: &[T],
    n_list: &[usize],
    params: &SchemeParams<T>,
) -> Result<ConvergenceReport<T>, AnalysisError> {
    if eps_list.is_empty() {
        return Err(AnalysisError::EmptyList("eps"));
    }
    if n_list.is_empty() {
        return Err(AnalysisError::EmptyList("N"));
    }
    if let Some(bad) = eps_list.iter().find(|e| !(**e > T::zero()) || !e.is_finite()) {
        return Err(AnalysisError::InvalidEpsilon(bad.as_f64()));
    }
    if let Some(&bad) = n_list.iter().find(|&&n| n < 2) {
        return Err(AnalysisError::MeshTooSmall(bad));
    }
    if family.exact.is_none() {
        return Err(AnalysisError::MissingExact);
    }

    let grid: Vec<(T, usize)> = eps_list
        .iter()
        .flat_map(|&e| n_list.iter().map(move |&n| (e, n)))
        .collect();
    let cells: Vec<SweepCell<T>> = grid
        .par_iter()
        .map(|&(epsilon, n)| match run_cell(family, epsilon, n, params) {
            Ok(record) => SweepCell::Solved(record),
            Err(e) => SweepCell::Failed {
                epsilon,
                n,
                reason: e.to_string(),
            },
        })
        .collect();

    let w = n_list.len();
    let mut orders = Vec::with_capacity(eps_list.len() * w.saturating_sub(1));
    for (row, &epsilon) in eps_list.iter().enumerate() {
        for k in 1..w {
            let (coarse, fine) = (&cells[row * w + k - 1], &cells[row * w + k]);
            let mut entry = OrderEntry {
                epsilon,
                n_coarse: coarse.n(),
                n_fine: fine.n(),
                order: None,
                saturated: false,
            };
            if let (Some(c), Some(f)) = (coarse.record(), fine.record()) {
                let refinement = T::of_usize(f.n) / T::of_usize(c.n);
                let scale = c.exact_scale.max(f.exact_scale);
                match observed_order_scaled(c.max_abs_error, f.max_abs_error, refinement, scale) {
                    Ok(est) if !est.saturated => entry.order = Some(est.order),
                    _ => entry.saturated = true,
                }
            }
            orders.push(entry);
        }
    }

    Ok(ConvergenceReport {
        problem: family.name.clone(),
        scheme: params.to_string(),
        params: *params,
        eps_list: eps_list.to_vec(),
        n_list: n_list.to_vec(),
        cells,
        orders,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::catalog;

    #[test]
    fn zero_error_on_exact_samples() {
        let p = catalog("example_4_1", 1.0f64 / 16.0).unwrap();
        let mesh = Mesh::new(0.0, 1.0, 8).unwrap();
        let exact: Vec<f64> = mesh.nodes().iter().map(|&x| p.exact(x).unwrap()).collect();
        assert_eq!(max_abs_error(&exact, &p, &mesh).unwrap(), 0.0);
        let mut bumped = exact.clone();
        bumped[3] += 0.5;
        assert_eq!(max_abs_error(&bumped, &p, &mesh).unwrap(), 0.5);
        assert!(matches!(
            max_abs_error(&exact[..5], &p, &mesh),
            Err(AnalysisError::LengthMismatch { got: 5, want: 9 })
        ));
    }

    #[test]
    fn order_examples() {
        let o = observed_order(1e-2f64, 6.25e-4).unwrap();
        assert!((o.order - 4.0).abs() < 1e-12 && !o.saturated);
        let o = observed_order(1e-2f64, 2.5e-3).unwrap();
        assert!((o.order - 2.0).abs() < 1e-12);
        assert!(observed_order(1e-2f64, 1e-14).unwrap().saturated);
        assert!(matches!(
            observed_order(0.0f64, 1e-3),
            Err(AnalysisError::NonPositiveError { .. })
        ));
    }

    #[test]
    fn single_n_gives_no_orders() {
        let fam = ProblemFamily::catalog("example_4_1").unwrap();
        let r = run_sweep(&fam, &[1.0f64 / 16.0], &[3], &SchemeParams::fourth_order()).unwrap();
        assert_eq!(r.cells.len(), 1);
        assert!(r.orders.is_empty());
        assert!(r.cell(0, 0).record().is_some());
    }

    #[test]
    fn sweep_preconditions() {
        let fam = ProblemFamily::catalog("example_4_2").unwrap();
        let p = SchemeParams::<f64>::fourth_order();
        assert_eq!(run_sweep(&fam, &[], &[4], &p), Err(AnalysisError::EmptyList("eps")));
        assert_eq!(run_sweep(&fam, &[0.1], &[], &p), Err(AnalysisError::EmptyList("N")));
        assert_eq!(
            run_sweep(&fam, &[0.0], &[4], &p),
            Err(AnalysisError::InvalidEpsilon(0.0))
        );
        assert_eq!(run_sweep(&fam, &[0.1], &[1], &p), Err(AnalysisError::MeshTooSmall(1)));
    }

    #[test]
    fn failed_cells_do_not_abort() {
        // f is singular at the midpoint node of even meshes.
        let fam = ProblemFamily::from_file_text("pole", "p = 1\nf = 1/(x - 0.5)\nexact = 0\n").unwrap();
        let r = run_sweep(&fam, &[1.0f64], &[3, 4], &SchemeParams::cubic()).unwrap();
        assert!(r.cell(0, 0).record().is_some());
        assert!(matches!(r.cell(0, 1), SweepCell::Failed { n: 4, .. }));
        assert_eq!(r.orders.len(), 1);
        assert_eq!(r.orders[0].order, None);
    }
}
