use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Positive square matrix of pairwise ratio judgments.
///
/// Reciprocity is not a construction requirement; it is checked where an
/// operation needs it (see [`PCMatrix::reciprocity_violation`]).
#[derive(Debug, Clone, PartialEq)]
pub struct PCMatrix {
    entries: DMatrix<f64>,
}

impl PCMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = entries.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        if rows < 2 {
            return Err(Error::OrderTooSmall(rows));
        }
        for i in 0..rows {
            for j in 0..cols {
                let v = entries[(i, j)];
                if !(v > 0.0 && v.is_finite()) {
                    return Err(Error::NonPositiveEntry { i, j, value: v });
                }
            }
        }
        Ok(PCMatrix { entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: bad.len(),
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    /// The all-ones matrix `U_n`.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(DMatrix::from_element(n, n, 1.0))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.entries.nrows()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        let n = self.order();
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[(i, j)]).collect())
            .collect()
    }

    /// Worst pair `(i, j, |a_ij·a_ji − 1|)` over `i <= j`; the diagonal is
    /// included, so a unit diagonal is part of reciprocity.
    pub fn reciprocity_violation(&self) -> (usize, usize, f64) {
        let n = self.order();
        let mut worst = (0, 0, 0.0);
        for i in 0..n {
            for j in i..n {
                let dev = (self.entries[(i, j)] * self.entries[(j, i)] - 1.0).abs();
                if dev > worst.2 {
                    worst = (i, j, dev);
                }
            }
        }
        worst
    }

    pub fn is_reciprocal(&self, tol: f64) -> bool {
        self.reciprocity_violation().2 <= tol
    }

    /// Geometric symmetrization `a_ij ← sqrt(a_ij / a_ji)`, which always
    /// yields a reciprocal matrix.
    pub fn symmetrized(&self) -> PCMatrix {
        let n = self.order();
        let entries =
            DMatrix::from_fn(n, n, |i, j| (self.entries[(i, j)] / self.entries[(j, i)]).sqrt());
        PCMatrix { entries }
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &PCMatrix) -> Result<PCMatrix> {
        if self.order() != other.order() {
            return Err(Error::ShapeMismatch {
                expected: self.order(),
                found: other.order(),
            });
        }
        Ok(PCMatrix {
            entries: self.entries.component_mul(&other.entries),
        })
    }

    /// Largest entrywise relative difference `|a − b| / |b|`.
    pub fn max_rel_diff(&self, other: &PCMatrix) -> f64 {
        self.entries
            .iter()
            .zip(other.entries.iter())
            .fold(0.0_f64, |m, (a, b)| m.max(((a - b) / b).abs()))
    }

    pub(crate) fn from_entries_unchecked(entries: DMatrix<f64>) -> Self {
        PCMatrix { entries }
    }
}
