use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::inner_products::check_positive_definite;

/// Relative symmetry tolerance applied when a weight matrix is constructed.
pub const SYMMETRY_RTOL: f64 = 1e-10;

/// Symmetric positive-definite matrix `W` defining `⟨A, B⟩_W = tr(A W Bᵀ)`.
///
/// Positive definiteness is established once here; operations taking a
/// `WeightMatrix` do not re-check it.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    w: DMatrix<f64>,
}

impl WeightMatrix {
    pub fn new(w: DMatrix<f64>) -> Result<Self> {
        if w.nrows() < 2 {
            return Err(Error::OrderTooSmall(w.nrows()));
        }
        if !check_positive_definite(&w)? {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(WeightMatrix { w })
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

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(DMatrix::identity(n, n))
    }

    pub fn diagonal(d: &[f64]) -> Result<Self> {
        Self::new(DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(d)))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.w.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.w
    }

    pub fn is_identity(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..n).all(|j| self.w[(i, j)] == if i == j { 1.0 } else { 0.0 }))
    }

    /// `W · 1`.
    pub fn row_sums(&self) -> Vec<f64> {
        self.w.row_iter().map(|r| r.iter().sum()).collect()
    }

    /// `1ᵀ W 1`.
    pub fn total(&self) -> f64 {
        self.row_sums().iter().sum()
    }

    /// Induced ∞-norm (largest absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        self.w
            .row_iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_order(&self, n: usize) -> Result<()> {
        if self.order() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: self.order(),
            });
        }
        Ok(())
    }
}
