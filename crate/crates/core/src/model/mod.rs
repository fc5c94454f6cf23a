//! Domain types and the maps between the multiplicative and additive pictures.
//!
//! A reciprocal PC matrix `A` corresponds to the skew matrix `μ(A) = [ln a_ij]`
//! and back through `φ(B) = [exp b_ij]`. Consistent matrices are exactly the
//! images of `f_n(v) = v 1ᵀ − 1 vᵀ`.

mod pc;
mod ranking;
mod skew;
mod weight;

pub use pc::PCMatrix;
pub use ranking::RankingVector;
pub use skew::{half_len, SkewMatrix};
pub use weight::{WeightMatrix, SYMMETRY_RTOL};

pub(crate) use skew::upper_index;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Default bound on `|a_ij·a_ji − 1|` accepted as reciprocal.
pub const RECIPROCITY_TOL: f64 = 1e-9;
/// Default tolerance for user-facing consistency verdicts.
pub const CONSISTENCY_TOL: f64 = 1e-9;

/// Coordinates `b_12, b_13, …, b_{n−1,n}` of a skew matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfVector {
    n: usize,
    coords: Vec<f64>,
}

impl HalfVector {
    pub fn new(n: usize, coords: Vec<f64>) -> Result<Self> {
        let expected = half_len(n);
        if coords.len() != expected {
            return Err(Error::LengthMismatch {
                len: coords.len(),
                n,
                expected,
            });
        }
        Ok(HalfVector { n, coords })
    }

    /// Infers the order from a triangular length `n(n−1)/2`.
    pub fn from_coords(coords: Vec<f64>) -> Result<Self> {
        let len = coords.len();
        let mut n = 1;
        while half_len(n) < len {
            n += 1;
        }
        if half_len(n) != len {
            return Err(Error::LengthMismatch {
                len,
                n,
                expected: half_len(n),
            });
        }
        Ok(HalfVector { n, coords })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }
}

/// Elementwise logarithm of a reciprocal PC matrix.
pub fn mu(a: &PCMatrix) -> Result<SkewMatrix> {
    mu_with_tolerance(a, RECIPROCITY_TOL)
}

pub fn mu_with_tolerance(a: &PCMatrix, reciprocity_tol: f64) -> Result<SkewMatrix> {
    let (i, j, deviation) = a.reciprocity_violation();
    if deviation > reciprocity_tol {
        return Err(Error::NotReciprocal { i, j, deviation });
    }
    let n = a.order();
    let upper = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| a.get(i, j).ln())
        .collect();
    SkewMatrix::from_upper(n, upper)
}

/// Elementwise exponential; the result is reciprocal with unit diagonal.
pub fn phi(b: &SkewMatrix) -> PCMatrix {
    let n = b.order();
    let mut m = DMatrix::from_element(n, n, 1.0);
    for (i, j, x) in b.iter_upper() {
        m[(i, j)] = x.exp();
        m[(j, i)] = (-x).exp();
    }
    PCMatrix::from_entries_unchecked(m)
}

/// `f_n(v) = v 1ᵀ − 1 vᵀ`, entry `(i, j)` is `v_i − v_j`.
pub fn f_n(v: &[f64]) -> SkewMatrix {
    let n = v.len();
    let upper = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| v[i] - v[j])
        .collect();
    SkewMatrix::from_upper(n, upper).expect("length is triangular by construction")
}

pub fn skew_to_half(b: &SkewMatrix) -> HalfVector {
    HalfVector {
        n: b.order(),
        coords: b.upper().to_vec(),
    }
}

pub fn half_to_skew(x: &HalfVector) -> SkewMatrix {
    SkewMatrix::from_upper(x.n, x.coords.clone()).expect("HalfVector length is validated")
}

/// Largest `|m_ij·m_jk / m_ik − 1|` over all triples.
pub fn consistency_deviation(a: &PCMatrix) -> f64 {
    let n = a.order();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            let mij = a.get(i, j);
            for k in 0..n {
                let dev = (mij * a.get(j, k) / a.get(i, k) - 1.0).abs();
                worst = worst.max(dev);
            }
        }
    }
    worst
}

/// Multiplicative consistency over all `n³` triples.
pub fn is_consistent(a: &PCMatrix, tol: f64) -> bool {
    consistency_deviation(a) <= tol
}

/// Largest `|b_ij + b_jk + b_ki|` over `i < j < k`; the remaining triples
/// follow by skewness.
pub fn additive_consistency_deviation(b: &SkewMatrix) -> f64 {
    let n = b.order();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in (i + 1)..n {
            let bij = b.get(i, j);
            for k in (j + 1)..n {
                worst = worst.max((bij + b.get(j, k) + b.get(k, i)).abs());
            }
        }
    }
    worst
}

pub fn is_additively_consistent(b: &SkewMatrix, tol: f64) -> bool {
    additive_consistency_deviation(b) <= tol
}

/// The consistent matrix `[w_i / w_j]`.
pub fn consistent_from_weights(w: &[f64]) -> Result<PCMatrix> {
    if let Some((index, &value)) = w
        .iter()
        .enumerate()
        .find(|(_, &x)| !(x > 0.0 && x.is_finite()))
    {
        return Err(Error::NonPositiveWeight { index, value });
    }
    let n = w.len();
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    PCMatrix::new(DMatrix::from_fn(n, n, |i, j| w[i] / w[j]))
}
