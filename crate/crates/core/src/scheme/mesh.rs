use serde::Serialize;

use super::SchemeError;
use crate::scalar::Scalar;

/// Uniform grid `x_i = a + i*h`, `i = 0..=n`, with `h = (b - a)/n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Mesh<T> {
    a: T,
    b: T,
    n: usize,
}

impl<T: Scalar> Mesh<T> {
    pub fn new(a: T, b: T, n: usize) -> Result<Self, SchemeError> {
        if n < 2 {
            return Err(SchemeError::MeshTooSmall(n));
        }
        if !(a < b) || !a.is_finite() || !b.is_finite() {
            return Err(SchemeError::InvalidInterval {
                a: a.as_f64(),
                b: b.as_f64(),
            });
        }
        Ok(Mesh { a, b, n })
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    /// Number of subintervals N.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> T {
        (self.b - self.a) / T::of_usize(self.n)
    }

    /// Node `i` computed as `a + i*h`; the last node is `b` exactly.
    pub fn node(&self, i: usize) -> T {
        if i >= self.n {
            self.b
        } else {
            self.a + T::of_usize(i) * self.h()
        }
    }

    pub fn nodes(&self) -> Vec<T> {
        (0..=self.n).map(|i| self.node(i)).collect()
    }

    /// Cell `[x_i, x_{i+1}]` containing `x`; the last cell is closed on the right.
    pub fn cell_of(&self, x: T) -> Result<usize, SchemeError> {
        if !(x >= self.a && x <= self.b) {
            return Err(SchemeError::OutOfDomain {
                x: x.as_f64(),
                a: self.a.as_f64(),
                b: self.b.as_f64(),
            });
        }
        let guess = ((x - self.a) / self.h())
            .floor()
            .to_usize()
            .unwrap_or(0)
            .min(self.n - 1);
        // Rounding in the division can land one cell off.
        let mut i = guess;
        while i > 0 && x < self.node(i) {
            i -= 1;
        }
        while i + 1 < self.n && x >= self.node(i + 1) {
            i += 1;
        }
        Ok(i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_exact_and_increasing() {
        for n in [2, 3, 7, 10, 16, 33, 256] {
            let m = Mesh::new(0.1f64, 0.7, n).unwrap();
            let x = m.nodes();
            assert_eq!(x.len(), n + 1);
            assert_eq!(x[0], 0.1);
            assert_eq!(x[n], 0.7);
            assert!(x.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn too_small() {
        assert_eq!(Mesh::new(0.0f64, 1.0, 1), Err(SchemeError::MeshTooSmall(1)));
        assert!(Mesh::new(1.0f64, 0.0, 4).is_err());
    }

    #[test]
    fn cell_lookup() {
        let m = Mesh::new(0.0f64, 1.0, 4).unwrap();
        assert_eq!(m.cell_of(0.0).unwrap(), 0);
        assert_eq!(m.cell_of(0.25).unwrap(), 1);
        assert_eq!(m.cell_of(0.3).unwrap(), 1);
        assert_eq!(m.cell_of(1.0).unwrap(), 3);
        assert!(m.cell_of(1.0 + 1e-12).is_err());
        assert!(m.cell_of(-1e-300).is_err());
    }

    #[test]
    fn cell_lookup_at_every_node() {
        let m = Mesh::new(0.0f64, 1.0, 10).unwrap();
        for i in 0..10 {
            assert_eq!(m.cell_of(m.node(i)).unwrap(), i);
        }
    }
}
