//! Orthogonal decomposition `B = B_h + B_l` with `B_l ∈ l_n` and
//! `B_h ∈ h_{n,W}`, the multiplicative factorization `A = φ(B_h) ⊙ φ(B_l)`,
//! and priority extraction from the consistent part.

use nalgebra::DMatrix;

use crate::bases::{hn_residual, ln_w_basis, BasisSet, Subspace};
use crate::error::{Error, Result};
use crate::inner_products::{f_pair_w, w_frobenius, InnerProduct, PIVOT_RTOL};
use crate::linalg::{cholesky, cholesky_solve, dot};
use crate::model::{
    f_n, mu_with_tolerance, phi, PCMatrix, RankingVector, SkewMatrix, WeightMatrix,
    RECIPROCITY_TOL,
};

/// Tolerance on `max |b_ij − (v_i − v_j)|` accepted by [`ranking`].
pub const RANKING_TOL: f64 = 1e-8;

/// Frobenius projection onto `l_n`: `B_l = (1/n) f_n(B 1)`, entry `(i, j)` is
/// `(1/n) Σ_k (b_ik − b_jk)`.
pub fn project_ln_closed(b: &SkewMatrix) -> SkewMatrix {
    let n = b.order() as f64;
    let r: Vec<f64> = b.row_sums().into_iter().map(|x| x / n).collect();
    f_n(&r)
}

/// `W`-orthogonal projection onto `l_n` by Fourier expansion over a freshly
/// built [`ln_w_basis`].
pub fn project_ln_w(b: &SkewMatrix, w: &WeightMatrix) -> Result<SkewMatrix> {
    w.check_order(b.order())?;
    let basis = ln_w_basis(b.order(), w)?;
    project_ln_w_with(b, w, &basis)
}

/// Same as [`project_ln_w`] with a precomputed `W`-orthogonal basis of `l_n`.
pub fn project_ln_w_with(b: &SkewMatrix, w: &WeightMatrix, basis: &BasisSet) -> Result<SkewMatrix> {
    let n = b.order();
    w.check_order(n)?;
    if basis.subspace() != Subspace::Ln || basis.order() != n {
        return Err(Error::BasisMismatch(format!(
            "need an ln basis of order {n}, got {} of order {}",
            basis.subspace().name(),
            basis.order()
        )));
    }
    if !basis.is_orthogonal_under(w) {
        return Err(Error::BasisMismatch(
            "basis is not orthogonal under the given weight".into(),
        ));
    }
    match basis.generators() {
        Some(ys) => {
            // ⟨B, f_n(y)⟩_W = yᵀ (B W 1 + W B 1)
            let bw1 = b.mul_vec(&w.row_sums());
            let wb1 = crate::linalg::mat_vec(w.as_matrix(), &b.row_sums());
            let g: Vec<f64> = bw1.iter().zip(&wb1).map(|(x, y)| x + y).collect();
            let mut v = vec![0.0; n];
            for y in ys {
                let c = dot(y, &g) / f_pair_w(y, y, w)?;
                for (vi, yi) in v.iter_mut().zip(y) {
                    *vi += c * yi;
                }
            }
            Ok(f_n(&v))
        }
        None => {
            let ip = InnerProduct::Weighted(w.clone());
            let dense_b = b.to_dense();
            let mut out = SkewMatrix::zeros(n);
            for e in basis.elements() {
                let dense_e = e.to_dense();
                let c = w_frobenius(&dense_b, &dense_e, w)? / ip.on_matrices(&dense_e, &dense_e)?;
                out.axpy(c, e);
            }
            Ok(out)
        }
    }
}

/// `B = B_l + B_h` under `⟨·,·⟩_W`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub input: SkewMatrix,
    /// `B_{l,W}`, the consistent part.
    pub consistent: SkewMatrix,
    /// `B_{h,W}`, the totally inconsistent part.
    pub inconsistent: SkewMatrix,
    pub weights: WeightMatrix,
    /// `‖B − B_l − B_h‖_∞`, entrywise.
    pub residual_check: f64,
}

impl Decomposition {
    /// `‖B_h‖_W / ‖B‖_W`.
    pub fn inconsistency_ratio(&self) -> Result<f64> {
        let total = w_norm_sq(&self.input, &self.weights)?;
        if !(total > 0.0) {
            return Err(Error::ZeroMatrix);
        }
        let part = w_norm_sq(&self.inconsistent, &self.weights)?;
        Ok((part / total).sqrt().min(1.0))
    }

    pub fn ranking(&self) -> Result<RankingVector> {
        ranking(&self.consistent)
    }
}

fn w_norm_sq(b: &SkewMatrix, w: &WeightMatrix) -> Result<f64> {
    let d = b.to_dense();
    w_frobenius(&d, &d, w)
}

pub fn decompose(b: &SkewMatrix, w: &WeightMatrix) -> Result<Decomposition> {
    w.check_order(b.order())?;
    let basis = ln_w_basis(b.order(), w)?;
    decompose_with(b, w, &basis)
}

/// [`decompose`] reusing a precomputed basis from [`ln_w_basis`].
pub fn decompose_with(b: &SkewMatrix, w: &WeightMatrix, basis: &BasisSet) -> Result<Decomposition> {
    let consistent = project_ln_w_with(b, w, basis)?;
    let inconsistent = b.sub(&consistent);
    let residual_check = b.max_abs_diff(&consistent.add(&inconsistent));
    Ok(Decomposition {
        input: b.clone(),
        consistent,
        inconsistent,
        weights: w.clone(),
        residual_check,
    })
}

/// `A = φ(B_h) ⊙ φ(B_l)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    /// `φ(B_h)`.
    pub inconsistent: PCMatrix,
    /// `φ(B_l)`, consistent.
    pub consistent: PCMatrix,
}

pub fn factor_pc(a: &PCMatrix, w: &WeightMatrix) -> Result<Factorization> {
    factor_pc_with_tolerance(a, w, RECIPROCITY_TOL)
}

pub fn factor_pc_with_tolerance(
    a: &PCMatrix,
    w: &WeightMatrix,
    reciprocity_tol: f64,
) -> Result<Factorization> {
    let d = decompose(&mu_with_tolerance(a, reciprocity_tol)?, w)?;
    Ok(Factorization {
        inconsistent: phi(&d.inconsistent),
        consistent: phi(&d.consistent),
    })
}

/// Priority vector of a consistent skew matrix: `v = (1/n) B_l 1`, the unique
/// sum-zero `v` with `f_n(v) = B_l`.
pub fn ranking(b_l: &SkewMatrix) -> Result<RankingVector> {
    ranking_with_tolerance(b_l, RANKING_TOL)
}

pub fn ranking_with_tolerance(b_l: &SkewMatrix, tol: f64) -> Result<RankingVector> {
    let n = b_l.order() as f64;
    let v: Vec<f64> = b_l.row_sums().into_iter().map(|x| x / n).collect();
    // b_ij − (v_i − v_j) is the mean of the cycle sums b_ij + b_jk + b_ki over k
    let deviation = b_l.max_abs_diff(&f_n(&v));
    if deviation > tol {
        return Err(Error::NotConsistent { deviation });
    }
    Ok(RankingVector::from_logvalues(&v))
}

/// Share of `B` lying in `h_{n,W}`, `‖B_h‖_W / ‖B‖_W ∈ [0, 1]`.
pub fn inconsistency_ratio(b: &SkewMatrix, w: &WeightMatrix) -> Result<f64> {
    w.check_order(b.order())?;
    if b.is_zero() {
        return Err(Error::ZeroMatrix);
    }
    decompose(b, w)?.inconsistency_ratio()
}

/// Projection onto `span(basis)` by solving the Gram normal equations
/// `G c = r`, `G_ij = ip(B_i, B_j)`, `r_i = ip(B, B_i)`, with every inner
/// product evaluated on dense matrices. Does not use Gram-Schmidt and does not
/// assume the basis is orthogonal.
pub fn oracle_project(b: &SkewMatrix, basis: &BasisSet, ip: &InnerProduct) -> Result<SkewMatrix> {
    let n = b.order();
    if basis.order() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            found: basis.order(),
        });
    }
    let k = basis.len();
    if k == 0 {
        return Ok(SkewMatrix::zeros(n));
    }
    let dense: Vec<_> = basis.elements().iter().map(SkewMatrix::to_dense).collect();
    let dense_b = b.to_dense();
    // ⟨X, Y⟩_W = ⟨X W, Y⟩: right-multiply the first arguments once.
    let (left, left_b, plain) = match ip {
        InnerProduct::Weighted(w) => {
            w.check_order(n)?;
            let wm = w.as_matrix();
            (
                dense.iter().map(|e| e * wm).collect::<Vec<_>>(),
                &dense_b * wm,
                InnerProduct::Frobenius,
            )
        }
        other => (dense.clone(), dense_b.clone(), other.clone()),
    };
    let mut gram = DMatrix::<f64>::zeros(k, k);
    for i in 0..k {
        for j in 0..=i {
            let g = plain.on_matrices(&left[i], &dense[j])?;
            gram[(i, j)] = g;
            gram[(j, i)] = g;
        }
    }
    let rhs: Vec<f64> = dense
        .iter()
        .map(|e| plain.on_matrices(&left_b, e))
        .collect::<Result<_>>()?;
    let max_diag = (0..k).map(|i| gram[(i, i)]).fold(0.0_f64, f64::max);
    let l = cholesky(&gram, PIVOT_RTOL * max_diag).ok_or(Error::SingularGram)?;
    let coeffs = cholesky_solve(&l, &rhs);
    let mut out = SkewMatrix::zeros(n);
    for (c, e) in coeffs.iter().zip(basis.elements()) {
        out.axpy(*c, e);
    }
    Ok(out)
}

/// Maximum deviations of the row/column identities of a decomposition.
///
/// `h_sums` and `l_sums` are zero when `W 1` is a multiple of `1` (in
/// particular `W = I`). For other weights the identity that survives is
/// `B_h W 1 + W B_h 1 = 0`, reported as `balance`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorollaryReport {
    /// Rows of `B_h W` and columns of `W B_h` should sum to zero.
    pub h_sums: f64,
    /// Rows of `B_l W` (columns of `W B_l`) should match those of `B W` (`W B`).
    pub l_sums: f64,
    /// `max |(B_h W + W B_h) 1|`, zero for every weight.
    pub balance: f64,
    /// `W = I` only: every row of `φ(B_h)` multiplies to 1 (relative).
    pub h_products: Option<f64>,
    /// `W = I` only: rows of `φ(B_l)` and `φ(B)` have equal products (relative).
    pub l_products: Option<f64>,
}

impl CorollaryReport {
    pub fn max_deviation(&self) -> f64 {
        [
            Some(self.balance),
            Some(self.h_sums),
            Some(self.l_sums),
            self.h_products,
            self.l_products,
        ]
        .into_iter()
        .flatten()
        .fold(0.0, f64::max)
    }

    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }
}

pub fn corollary_checks(d: &Decomposition) -> CorollaryReport {
    let w = d.weights.as_matrix();
    let bh_w = d.inconsistent.to_dense() * w;
    let w_bh = w * d.inconsistent.to_dense();
    let bl_w = d.consistent.to_dense() * w;
    let w_bl = w * d.consistent.to_dense();
    let b_w = d.input.to_dense() * w;
    let w_b = w * d.input.to_dense();

    let row_sums = |m: &DMatrix<f64>| -> Vec<f64> {
        m.row_iter().map(|r| r.iter().sum()).collect()
    };
    let col_sums = |m: &DMatrix<f64>| -> Vec<f64> {
        m.column_iter().map(|c| c.iter().sum()).collect()
    };
    let max_abs = |v: Vec<f64>| v.into_iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let max_diff = |a: Vec<f64>, b: Vec<f64>| {
        a.iter()
            .zip(&b)
            .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()))
    };

    let h_sums = max_abs(row_sums(&bh_w)).max(max_abs(col_sums(&w_bh)));
    let l_sums = max_diff(row_sums(&bl_w), row_sums(&b_w))
        .max(max_diff(col_sums(&w_bl), col_sums(&w_b)));
    let balance = max_abs(
        row_sums(&bh_w)
            .into_iter()
            .zip(row_sums(&w_bh))
            .map(|(x, y)| x + y)
            .collect(),
    );

    let (h_products, l_products) = if d.weights.is_identity() {
        let row_products = |m: &PCMatrix| -> Vec<f64> {
            m.as_matrix()
                .row_iter()
                .map(|r| r.iter().product())
                .collect()
        };
        let ph = row_products(&phi(&d.inconsistent));
        let pl = row_products(&phi(&d.consistent));
        let pb = row_products(&phi(&d.input));
        let h = ph.iter().fold(0.0_f64, |m, p| m.max((p - 1.0).abs()));
        let l = pl
            .iter()
            .zip(&pb)
            .fold(0.0_f64, |m, (x, y)| m.max((x / y - 1.0).abs()));
        (Some(h), Some(l))
    } else {
        (None, None)
    };

    CorollaryReport {
        h_sums,
        l_sums,
        balance,
        h_products,
        l_products,
    }
}

/// [`hn_residual`] of the inconsistent part.
pub fn membership_residual(d: &Decomposition) -> Result<f64> {
    hn_residual(&d.inconsistent, &d.weights)
}
