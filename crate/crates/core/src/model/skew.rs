use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Position of entry `(i, j)`, `i < j`, in the lexicographic upper-triangle layout.
#[inline]
pub(crate) fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Number of strictly upper-triangular entries of an `n × n` matrix.
#[inline]
pub fn half_len(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Skew-symmetric matrix stored as its strict upper triangle.
///
/// Only `b_12, b_13, …, b_{n-1,n}` are kept; the diagonal is zero and the lower
/// triangle is the negated transpose, so `b_ij + b_ji = 0` holds exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix {
    n: usize,
    upper: Vec<f64>,
}

impl SkewMatrix {
    pub fn zeros(n: usize) -> Self {
        SkewMatrix {
            n,
            upper: vec![0.0; half_len(n)],
        }
    }

    /// Builds a skew matrix from its upper triangle in lexicographic order.
    pub fn from_upper(n: usize, upper: Vec<f64>) -> Result<Self> {
        let expected = half_len(n);
        if upper.len() != expected {
            return Err(Error::LengthMismatch {
                len: upper.len(),
                n,
                expected,
            });
        }
        Ok(SkewMatrix { n, upper })
    }

    /// Reads a dense matrix, rejecting it unless `|b_ij + b_ji| <= tol` everywhere
    /// and the diagonal is within `tol` of zero.
    pub fn from_dense(m: &DMatrix<f64>, tol: f64) -> Result<Self> {
        let (rows, cols) = m.shape();
        if rows != cols {
            return Err(Error::NotSquare { rows, cols });
        }
        let n = rows;
        let mut upper = Vec::with_capacity(half_len(n));
        for i in 0..n {
            let d = m[(i, i)];
            if !d.is_finite() {
                return Err(Error::NonFinite { i, j: i, value: d });
            }
            if d.abs() > tol {
                return Err(Error::NotSkew {
                    i,
                    j: i,
                    deviation: 2.0 * d.abs(),
                });
            }
            for j in (i + 1)..n {
                let (a, b) = (m[(i, j)], m[(j, i)]);
                if !a.is_finite() {
                    return Err(Error::NonFinite { i, j, value: a });
                }
                if !b.is_finite() {
                    return Err(Error::NonFinite { i: j, j: i, value: b });
                }
                if (a + b).abs() > tol {
                    return Err(Error::NotSkew {
                        i,
                        j,
                        deviation: (a + b).abs(),
                    });
                }
                upper.push(a);
            }
        }
        Ok(SkewMatrix { n, upper })
    }

    /// Entry `(i, j)` with zero-based indices.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Less => self.upper[upper_index(self.n, i, j)],
            Ordering::Greater => -self.upper[upper_index(self.n, j, i)],
            Ordering::Equal => 0.0,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn into_upper(self) -> Vec<f64> {
        self.upper
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// `B · x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.n, "vector length must equal matrix order");
        let mut out = vec![0.0; self.n];
        let mut k = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let b = self.upper[k];
                out[i] += b * x[j];
                out[j] -= b * x[i];
                k += 1;
            }
        }
        out
    }

    /// Row sums `B · 1`.
    pub fn row_sums(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n];
        let mut k = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                out[i] += self.upper[k];
                out[j] -= self.upper[k];
                k += 1;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(|&x| x == 0.0)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.upper.iter().fold(0.0_f64, |m, &x| m.max(x.abs()))
    }

    /// Induced ∞-norm (largest absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        let mut rows = vec![0.0; self.n];
        let mut k = 0;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let a = self.upper[k].abs();
                rows[i] += a;
                rows[j] += a;
                k += 1;
            }
        }
        rows.into_iter().fold(0.0, f64::max)
    }

    /// Frobenius inner product of two skew matrices, `2 Σ_{i<j} a_ij b_ij`.
    pub fn frobenius_dot(&self, other: &SkewMatrix) -> f64 {
        assert_eq!(self.n, other.n, "orders must match");
        2.0 * self
            .upper
            .iter()
            .zip(&other.upper)
            .map(|(a, b)| a * b)
            .sum::<f64>()
    }

    /// `self += alpha * other`.
    pub fn axpy(&mut self, alpha: f64, other: &SkewMatrix) {
        assert_eq!(self.n, other.n, "orders must match");
        for (a, b) in self.upper.iter_mut().zip(&other.upper) {
            *a += alpha * b;
        }
    }

    pub fn scaled(&self, alpha: f64) -> SkewMatrix {
        SkewMatrix {
            n: self.n,
            upper: self.upper.iter().map(|x| alpha * x).collect(),
        }
    }

    pub fn add(&self, other: &SkewMatrix) -> SkewMatrix {
        let mut out = self.clone();
        out.axpy(1.0, other);
        out
    }

    pub fn sub(&self, other: &SkewMatrix) -> SkewMatrix {
        let mut out = self.clone();
        out.axpy(-1.0, other);
        out
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &SkewMatrix) -> f64 {
        assert_eq!(self.n, other.n, "orders must match");
        self.upper
            .iter()
            .zip(&other.upper)
            .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Iterates `(i, j, b_ij)` over the upper triangle in lexicographic order.
    pub fn iter_upper(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
            .zip(self.upper.iter().copied())
            .map(|((i, j), b)| (i, j, b))
    }
}
