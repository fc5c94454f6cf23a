//! Orthogonal decomposition of reciprocal pairwise-comparison (PC) matrices.
//!
//! A reciprocal PC matrix `A` is moved to the additive picture with
//! [`mu`](model::mu), giving a skew-symmetric `B`. Under a weighted inner
//! product `⟨X, Y⟩_W = tr(X W Yᵀ)`, `B` splits uniquely into a consistent part
//! `B_l ∈ l_n` and a totally inconsistent part `B_h ∈ h_{n,W}`, and
//! `A = φ(B_h) ⊙ φ(B_l)`.
//!
//! ```
//! use pcortho::{decompose, mu, PCMatrix, WeightMatrix};
//!
//! let a = PCMatrix::from_rows(&[
//!     vec![1.0, 2.0, 0.5],
//!     vec![0.5, 1.0, 4.0],
//!     vec![2.0, 0.25, 1.0],
//! ])?;
//! let d = decompose(&mu(&a)?, &WeightMatrix::identity(3)?)?;
//! let ranking = d.ranking()?;
//! assert!((ranking.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
//! # Ok::<(), pcortho::Error>(())
//! ```

// `!(x > t)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bases;
pub mod error;
pub mod inner_products;
pub mod io;
mod linalg;
pub mod model;
pub mod projection;

pub use nalgebra;

pub use bases::{
    comparison_graph_dot, complement_vectors, hn_cycle_basis, hn_membership,
    hn_membership_with_tolerance, hn_residual, incidence_matrix, ln_basis, ln_w_basis,
    row_balance_residual, BasisSet, IncidenceMatrix, Subspace,
};
pub use error::{Error, Result};
pub use inner_products::{
    check_positive_definite, f_pair_w, frobenius, gram_schmidt, gram_schmidt_metric,
    gram_schmidt_skew, induced_vector_ip, metric_matrix, w_frobenius, InnerProduct,
    LinearElement,
};
pub use model::{
    additive_consistency_deviation, consistency_deviation, consistent_from_weights, f_n, half_len,
    half_to_skew, is_additively_consistent, is_consistent, mu, mu_with_tolerance, phi,
    skew_to_half, HalfVector, PCMatrix, RankingVector, SkewMatrix, WeightMatrix,
    CONSISTENCY_TOL, RECIPROCITY_TOL,
};
pub use projection::{
    corollary_checks, decompose, decompose_with, factor_pc, factor_pc_with_tolerance,
    inconsistency_ratio, membership_residual, oracle_project, project_ln_closed, project_ln_w, project_ln_w_with,
    ranking, ranking_with_tolerance, CorollaryReport, Decomposition, Factorization,
};
