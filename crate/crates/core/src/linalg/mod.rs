//! Tridiagonal systems: the production Thomas solver and a dense
//! partial-pivoting oracle used to cross-check it.

use serde::Serialize;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("inconsistent tridiagonal dimensions: diag {diag}, sub {sub}, sup {sup}, rhs {rhs}")]
    Dimensions {
        diag: usize,
        sub: usize,
        sup: usize,
        rhs: usize,
    },
    #[error("zero pivot at row {row} (|pivot| = {magnitude:e})")]
    ZeroPivot { row: usize, magnitude: f64 },
    #[error("matrix is singular to working precision at column {0}")]
    SingularMatrix(usize),
    #[error("dense oracle limited to {max} unknowns, got {got}")]
    SystemTooLarge { got: usize, max: usize },
    #[error("vector of length {got} does not match system size {want}")]
    LengthMismatch { got: usize, want: usize },
}

/// `sub[k]` couples row `k + 1` to column `k`; `sup[k]` couples row `k` to
/// column `k + 1`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TridiagonalSystem<T> {
    sub: Vec<T>,
    diag: Vec<T>,
    sup: Vec<T>,
    rhs: Vec<T>,
}

impl<T: Scalar> TridiagonalSystem<T> {
    pub fn new(sub: Vec<T>, diag: Vec<T>, sup: Vec<T>, rhs: Vec<T>) -> Result<Self, LinalgError> {
        let m = diag.len();
        if m == 0 || sub.len() + 1 != m || sup.len() + 1 != m || rhs.len() != m {
            return Err(LinalgError::Dimensions {
                diag: m,
                sub: sub.len(),
                sup: sup.len(),
                rhs: rhs.len(),
            });
        }
        Ok(TridiagonalSystem { sub, diag, sup, rhs })
    }

    pub fn size(&self) -> usize {
        self.diag.len()
    }

    pub fn sub(&self) -> &[T] {
        &self.sub
    }

    pub fn diag(&self) -> &[T] {
        &self.diag
    }

    pub fn sup(&self) -> &[T] {
        &self.sup
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    fn off_diagonal_sum(&self, row: usize) -> T {
        let mut s = T::zero();
        if row > 0 {
            s = s + self.sub[row - 1].abs();
        }
        if row + 1 < self.size() {
            s = s + self.sup[row].abs();
        }
        s
    }

    /// `|diag| > |sub| + |sup|` on every row.
    pub fn is_strictly_diagonally_dominant(&self) -> bool {
        (0..self.size()).all(|r| self.diag[r].abs() > self.off_diagonal_sum(r))
    }

    /// Matrix-vector product `T * y`.
    pub fn apply(&self, y: &[T]) -> Result<Vec<T>, LinalgError> {
        let m = self.size();
        if y.len() != m {
            return Err(LinalgError::LengthMismatch { got: y.len(), want: m });
        }
        Ok((0..m)
            .map(|r| {
                let mut v = self.diag[r] * y[r];
                if r > 0 {
                    v = v + self.sub[r - 1] * y[r - 1];
                }
                if r + 1 < m {
                    v = v + self.sup[r] * y[r + 1];
                }
                v
            })
            .collect())
    }

    /// `||T*y - rhs||_inf`.
    pub fn residual_norm(&self, y: &[T]) -> Result<T, LinalgError> {
        Ok(self
            .apply(y)?
            .iter()
            .zip(&self.rhs)
            .fold(T::zero(), |acc, (ty, r)| acc.max((*ty - *r).abs())))
    }

    /// Infinity norm of the matrix.
    pub fn norm_inf(&self) -> T {
        (0..self.size())
            .map(|r| self.diag[r].abs() + self.off_diagonal_sum(r))
            .fold(T::zero(), T::max)
    }

    pub fn rhs_norm_inf(&self) -> T {
        self.rhs.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    /// Row-major dense copy.
    pub fn to_dense(&self) -> Vec<Vec<T>> {
        let m = self.size();
        let mut a = vec![vec![T::zero(); m]; m];
        for r in 0..m {
            a[r][r] = self.diag[r];
            if r > 0 {
                a[r][r - 1] = self.sub[r - 1];
            }
            if r + 1 < m {
                a[r][r + 1] = self.sup[r];
            }
        }
        a
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport<T> {
    pub solution: Vec<T>,
    pub min_pivot_magnitude: T,
    /// Strict diagonal dominance of the input matrix.
    pub dominant: bool,
}

/// Thomas algorithm: forward elimination and back substitution, no pivoting.
/// The input system is left untouched.
pub fn thomas_solve<T: Scalar>(system: &TridiagonalSystem<T>) -> Result<SolveReport<T>, LinalgError> {
    let m = system.size();
    let floor = T::pivot_floor();
    let mut c = vec![T::zero(); m];
    let mut d = vec![T::zero(); m];
    let mut min_pivot = T::infinity();

    let mut pivot = system.diag[0];
    for row in 0..m {
        if row > 0 {
            pivot = system.diag[row] - system.sub[row - 1] * c[row - 1];
        }
        if !(pivot.abs() >= floor) {
            return Err(LinalgError::ZeroPivot {
                row,
                magnitude: pivot.abs().as_f64(),
            });
        }
        min_pivot = min_pivot.min(pivot.abs());
        if row + 1 < m {
            c[row] = system.sup[row] / pivot;
        }
        d[row] = if row == 0 {
            system.rhs[0] / pivot
        } else {
            (system.rhs[row] - system.sub[row - 1] * d[row - 1]) / pivot
        };
    }
    for row in (0..m.saturating_sub(1)).rev() {
        d[row] = d[row] - c[row] * d[row + 1];
    }
    Ok(SolveReport {
        solution: d,
        min_pivot_magnitude: min_pivot,
        dominant: system.is_strictly_diagonally_dominant(),
    })
}

/// Largest system the dense oracle accepts.
pub const DENSE_ORACLE_MAX: usize = 64;

/// Gaussian elimination with partial pivoting on the expanded dense matrix.
/// Test oracle only; O(m^3).
pub fn dense_oracle_solve<T: Scalar>(system: &TridiagonalSystem<T>) -> Result<Vec<T>, LinalgError> {
    let m = system.size();
    if m > DENSE_ORACLE_MAX {
        return Err(LinalgError::SystemTooLarge {
            got: m,
            max: DENSE_ORACLE_MAX,
        });
    }
    let mut a = system.to_dense();
    let mut b = system.rhs.clone();
    for col in 0..m {
        let (p, best) = (col..m)
            .map(|r| (r, a[r][col].abs()))
            .fold((col, T::zero()), |acc, cur| if cur.1 > acc.1 { cur } else { acc });
        if !(best >= T::pivot_floor()) {
            return Err(LinalgError::SingularMatrix(col));
        }
        a.swap(col, p);
        b.swap(col, p);
        let (upper, lower) = a.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for (offset, row) in lower.iter_mut().enumerate() {
            let factor = row[col] / pivot_row[col];
            if factor == T::zero() {
                continue;
            }
            for (v, &p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *v = *v - factor * p;
            }
            let r = col + 1 + offset;
            b[r] = b[r] - factor * b[col];
        }
    }
    let mut x = vec![T::zero(); m];
    for r in (0..m).rev() {
        let tail = (r + 1..m).fold(T::zero(), |acc, k| acc + a[r][k] * x[k]);
        x[r] = (b[r] - tail) / a[r][r];
    }
    Ok(x)
}
