//! Frobenius and `W`-weighted inner products, the inner product they induce on
//! `ℝⁿ` through `f_n`, and a modified Gram-Schmidt engine.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{cholesky, dot, mat_vec};
use crate::model::{f_n, SkewMatrix, WeightMatrix, SYMMETRY_RTOL};

/// Residual-to-input norm ratio below which Gram-Schmidt declares dependence.
pub const DEGENERATE_RTOL: f64 = 1e-12;
/// Pivot floor, relative to the largest diagonal entry, for positive definiteness.
pub const PIVOT_RTOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum InnerProduct {
    /// `⟨A, B⟩ = tr(A Bᵀ)` on matrices.
    Frobenius,
    /// `⟨A, B⟩_W = tr(A W Bᵀ)` on matrices.
    Weighted(WeightMatrix),
    /// `(v | w) = vᵀ M w` on vectors, `M` symmetric positive definite.
    Metric(DMatrix<f64>),
}

impl InnerProduct {
    /// Vector metric with a validated symmetric positive-definite `M`.
    pub fn metric(m: DMatrix<f64>) -> Result<Self> {
        if !check_positive_definite(&m)? {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(InnerProduct::Metric(m))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            InnerProduct::Frobenius => "frobenius",
            InnerProduct::Weighted(_) => "w-frobenius",
            InnerProduct::Metric(_) => "vector-metric",
        }
    }

    pub fn on_matrices(&self, a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<f64> {
        match self {
            InnerProduct::Frobenius => frobenius(a, b),
            InnerProduct::Weighted(w) => w_frobenius(a, b, w),
            InnerProduct::Metric(_) => Err(Error::ArityMismatch {
                kind: self.kind(),
                operand: "matrices",
            }),
        }
    }

    pub fn on_skew(&self, a: &SkewMatrix, b: &SkewMatrix) -> Result<f64> {
        match self {
            InnerProduct::Frobenius => {
                if a.order() != b.order() {
                    return Err(Error::ShapeMismatch {
                        expected: a.order(),
                        found: b.order(),
                    });
                }
                Ok(a.frobenius_dot(b))
            }
            InnerProduct::Weighted(w) => w_frobenius(&a.to_dense(), &b.to_dense(), w),
            InnerProduct::Metric(_) => Err(Error::ArityMismatch {
                kind: self.kind(),
                operand: "matrices",
            }),
        }
    }

    pub fn on_vectors(&self, x: &[f64], y: &[f64]) -> Result<f64> {
        match self {
            InnerProduct::Metric(m) => {
                if x.len() != m.nrows() || y.len() != m.nrows() {
                    return Err(Error::ShapeMismatch {
                        expected: m.nrows(),
                        found: if x.len() != m.nrows() { x.len() } else { y.len() },
                    });
                }
                Ok(dot(x, &mat_vec(m, y)))
            }
            _ => Err(Error::ArityMismatch {
                kind: self.kind(),
                operand: "vectors",
            }),
        }
    }
}

fn check_same_shape(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            expected: a.nrows(),
            found: b.nrows(),
        });
    }
    Ok(())
}

/// `tr(A Bᵀ) = Σ_ij a_ij b_ij`, accumulated row by row.
pub fn frobenius(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<f64> {
    check_same_shape(a, b)?;
    let mut s = 0.0;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            s += a[(i, j)] * b[(i, j)];
        }
    }
    Ok(s)
}

/// `tr(A W Bᵀ) = Σ_ij (A W)_ij b_ij`, same summation order as [`frobenius`].
pub fn w_frobenius(a: &DMatrix<f64>, b: &DMatrix<f64>, w: &WeightMatrix) -> Result<f64> {
    check_same_shape(a, b)?;
    if a.nrows() != a.ncols() {
        return Err(Error::NotSquare {
            rows: a.nrows(),
            cols: a.ncols(),
        });
    }
    w.check_order(a.ncols())?;
    let wm = w.as_matrix();
    let n = a.ncols();
    let mut s = 0.0;
    let mut aw_row = vec![0.0; n];
    for i in 0..a.nrows() {
        for (j, slot) in aw_row.iter_mut().enumerate() {
            let mut t = 0.0;
            for k in 0..n {
                t += a[(i, k)] * wm[(k, j)];
            }
            *slot = t;
        }
        for j in 0..n {
            s += aw_row[j] * b[(i, j)];
        }
    }
    Ok(s)
}

/// Closed form of `⟨f_n(v), f_n(w)⟩_W`:
/// `(1ᵀW1) wᵀv − (1ᵀWw)(1ᵀv) − (vᵀW1)(wᵀ1) + n vᵀWw`.
pub fn f_pair_w(v: &[f64], w: &[f64], weights: &WeightMatrix) -> Result<f64> {
    let n = weights.order();
    for len in [v.len(), w.len()] {
        if len != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let w1 = weights.row_sums();
    let total: f64 = w1.iter().sum();
    let sum_v: f64 = v.iter().sum();
    let sum_w: f64 = w.iter().sum();
    let ww = mat_vec(weights.as_matrix(), w);
    Ok(total * dot(w, v) - dot(&w1, w) * sum_v - dot(v, &w1) * sum_w
        + n as f64 * dot(v, &ww))
}

/// `⟨x | y⟩_n = (xᵀ1)(yᵀ1) + base(f_n(x), f_n(y))`.
pub fn induced_vector_ip(x: &[f64], y: &[f64], base: &InnerProduct) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::ShapeMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    Ok(sx * sy + base.on_skew(&f_n(x), &f_n(y))?)
}

/// `M = (1ᵀ W 1) I + n W`.
pub fn metric_matrix(w: &WeightMatrix) -> DMatrix<f64> {
    let n = w.order();
    let mut m = w.as_matrix() * n as f64;
    let total = w.total();
    for i in 0..n {
        m[(i, i)] += total;
    }
    m
}

/// Cholesky-based test; pivots must exceed `1e-12 × max diagonal`.
pub fn check_positive_definite(w: &DMatrix<f64>) -> Result<bool> {
    let (rows, cols) = w.shape();
    if rows != cols {
        return Err(Error::NotSquare { rows, cols });
    }
    let scale = w.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    for i in 0..rows {
        for j in i..cols {
            let (a, b) = (w[(i, j)], w[(j, i)]);
            if !a.is_finite() {
                return Err(Error::NonFinite { i, j, value: a });
            }
            let deviation = (a - b).abs();
            if deviation > SYMMETRY_RTOL * scale {
                return Err(Error::NotSymmetric { i, j, deviation });
            }
        }
    }
    let max_diag = (0..rows).map(|i| w[(i, i)]).fold(f64::NEG_INFINITY, f64::max);
    if !(max_diag > 0.0) {
        return Ok(false);
    }
    Ok(cholesky(w, PIVOT_RTOL * max_diag).is_some())
}

/// Elements that Gram-Schmidt can combine linearly.
pub trait LinearElement: Clone {
    /// `self += alpha * other`.
    fn axpy(&mut self, alpha: f64, other: &Self);
}

impl LinearElement for SkewMatrix {
    fn axpy(&mut self, alpha: f64, other: &Self) {
        SkewMatrix::axpy(self, alpha, other)
    }
}

impl LinearElement for Vec<f64> {
    fn axpy(&mut self, alpha: f64, other: &Self) {
        for (a, b) in self.iter_mut().zip(other) {
            *a += alpha * b;
        }
    }
}

impl LinearElement for DMatrix<f64> {
    fn axpy(&mut self, alpha: f64, other: &Self) {
        *self += other * alpha;
    }
}

/// Modified Gram-Schmidt without normalization.
///
/// Output `k` is input `k` with its components along outputs `0..k` removed,
/// one at a time. Fails with [`Error::DegenerateElement`] when a residual's norm
/// drops to `1e-12` of its input's norm.
pub fn gram_schmidt<T, F>(elements: &[T], mut ip: F) -> Result<Vec<T>>
where
    T: LinearElement,
    F: FnMut(&T, &T) -> Result<f64>,
{
    let mut out: Vec<T> = Vec::with_capacity(elements.len());
    let mut sq_norms: Vec<f64> = Vec::with_capacity(elements.len());
    for (index, x) in elements.iter().enumerate() {
        let input_norm = ip(x, x)?.max(0.0).sqrt();
        let mut r = x.clone();
        for (q, &qq) in out.iter().zip(&sq_norms) {
            let c = ip(&r, q)? / qq;
            r.axpy(-c, q);
        }
        let rr = ip(&r, &r)?;
        if !(rr.max(0.0).sqrt() > DEGENERATE_RTOL * input_norm) {
            return Err(Error::DegenerateElement { index });
        }
        out.push(r);
        sq_norms.push(rr);
    }
    Ok(out)
}

/// [`gram_schmidt`] over skew matrices under a matrix inner product.
pub fn gram_schmidt_skew(elements: &[SkewMatrix], ip: &InnerProduct) -> Result<Vec<SkewMatrix>> {
    gram_schmidt(elements, |a, b| ip.on_skew(a, b))
}

/// [`gram_schmidt`] over vectors under `(v | w) = vᵀ M w`, caching `M q` for
/// every accepted output so each projection costs `O(n)`.
pub fn gram_schmidt_metric(vectors: &[Vec<f64>], m: &DMatrix<f64>) -> Result<Vec<Vec<f64>>> {
    let n = m.nrows();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    let mut m_out: Vec<Vec<f64>> = Vec::with_capacity(vectors.len());
    let mut sq_norms: Vec<f64> = Vec::with_capacity(vectors.len());
    for (index, x) in vectors.iter().enumerate() {
        if x.len() != n {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: x.len(),
            });
        }
        let input_norm = dot(x, &mat_vec(m, x)).max(0.0).sqrt();
        let mut r = x.clone();
        for ((q, mq), &qq) in out.iter().zip(&m_out).zip(&sq_norms) {
            let c = dot(&r, mq) / qq;
            r.axpy(-c, q);
        }
        let mr = mat_vec(m, &r);
        let rr = dot(&r, &mr);
        if !(rr.max(0.0).sqrt() > DEGENERATE_RTOL * input_norm) {
            return Err(Error::DegenerateElement { index });
        }
        out.push(r);
        m_out.push(mr);
        sq_norms.push(rr);
    }
    Ok(out)
}
