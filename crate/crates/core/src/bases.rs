//! Bases of the consistent subspace `l_n` and of its complement `h_n`.
//!
//! `l_n` is spanned by `f_n(y_k)` for the integer vectors
//! `y_k = [1, …, 1, −k, 0, …, 0]` (`k` ones). Under a weight `W` the `y_k`
//! are first orthogonalized in the metric `M = (1ᵀW1) I + n W`.
//!
//! Under `W` the complement `h_{n,W}` consists of the skew `B` with
//! `B W 1 + W B 1 = 0`, which reduces to `B 1 = 0` for `W = I`.
//!
//! `h_n` is the cycle space of the complete graph on `1..n` with edges
//! `i → j` for `i < j`: each edge `i → j` not touching vertex 1 closes the
//! triangle `1 → i → j → 1`.

use std::fmt::Write as _;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::inner_products::{
    gram_schmidt_metric, gram_schmidt_skew, metric_matrix, InnerProduct,
};
use crate::linalg::mat_vec;
use crate::model::{f_n, half_len, upper_index, SkewMatrix, WeightMatrix};

/// Tolerance for `hn_residual(B, W) <= tol · (1 + ‖B‖_∞ ‖W‖_∞)`.
pub const MEMBERSHIP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subspace {
    /// Additively consistent matrices.
    Ln,
    /// Totally inconsistent matrices (`B 1 = 0`; `B W 1 + W B 1 = 0` under `W`).
    Hn,
}

impl Subspace {
    pub fn name(self) -> &'static str {
        match self {
            Subspace::Ln => "ln",
            Subspace::Hn => "hn",
        }
    }

    pub fn dimension(self, n: usize) -> usize {
        match self {
            Subspace::Ln => n.saturating_sub(1),
            Subspace::Hn => n.saturating_sub(1) * n.saturating_sub(2) / 2,
        }
    }
}

impl std::str::FromStr for Subspace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ln" | "l" => Ok(Subspace::Ln),
            "hn" | "h" => Ok(Subspace::Hn),
            other => Err(Error::Parse(format!("unknown subspace {other:?}"))),
        }
    }
}

/// Ordered basis of `l_n` or `h_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    subspace: Subspace,
    n: usize,
    elements: Vec<SkewMatrix>,
    /// Inner product the elements are orthogonal under, if any.
    inner_product: Option<InnerProduct>,
    /// For `l_n` bases, the vectors `y` with `elements[k] = f_n(y[k])`.
    generators: Option<Vec<Vec<f64>>>,
}

impl BasisSet {
    /// Assembles a basis from parts, checking the element count and orders.
    pub fn new(
        subspace: Subspace,
        n: usize,
        elements: Vec<SkewMatrix>,
        inner_product: Option<InnerProduct>,
    ) -> Result<Self> {
        let expected = subspace.dimension(n);
        if elements.len() != expected {
            return Err(Error::BasisMismatch(format!(
                "{} basis of order {n} needs {expected} elements, got {}",
                subspace.name(),
                elements.len()
            )));
        }
        if let Some(bad) = elements.iter().find(|e| e.order() != n) {
            return Err(Error::ShapeMismatch {
                expected: n,
                found: bad.order(),
            });
        }
        Ok(BasisSet {
            subspace,
            n,
            elements,
            inner_product,
            generators: None,
        })
    }

    pub fn subspace(&self) -> Subspace {
        self.subspace
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[SkewMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn inner_product(&self) -> Option<&InnerProduct> {
        self.inner_product.as_ref()
    }

    pub fn is_orthogonal(&self) -> bool {
        self.inner_product.is_some()
    }

    pub fn generators(&self) -> Option<&[Vec<f64>]> {
        self.generators.as_deref()
    }

    /// True when the elements are known to be orthogonal under `⟨·,·⟩_W`.
    pub fn is_orthogonal_under(&self, w: &WeightMatrix) -> bool {
        match &self.inner_product {
            Some(InnerProduct::Weighted(bw)) => bw == w,
            Some(InnerProduct::Frobenius) => w.is_identity(),
            _ => false,
        }
    }

    /// Runs Gram-Schmidt under `ip`. Generators are dropped since the new
    /// elements are no longer tied to the original vectors.
    pub fn orthogonalized(&self, ip: InnerProduct) -> Result<BasisSet> {
        let elements = gram_schmidt_skew(&self.elements, &ip)?;
        Ok(BasisSet {
            subspace: self.subspace,
            n: self.n,
            elements,
            inner_product: Some(ip),
            generators: None,
        })
    }

    /// Scales every element to unit norm under its inner product (Frobenius
    /// when the basis carries none).
    pub fn normalized(&self) -> Result<BasisSet> {
        let ip = self.inner_product.clone().unwrap_or(InnerProduct::Frobenius);
        let mut elements = Vec::with_capacity(self.elements.len());
        let mut scales = Vec::with_capacity(self.elements.len());
        for e in &self.elements {
            let norm = ip.on_skew(e, e)?.sqrt();
            scales.push(1.0 / norm);
            elements.push(e.scaled(1.0 / norm));
        }
        let generators = self.generators.as_ref().map(|gs| {
            gs.iter()
                .zip(&scales)
                .map(|(g, s)| g.iter().map(|x| x * s).collect())
                .collect()
        });
        Ok(BasisSet {
            subspace: self.subspace,
            n: self.n,
            elements,
            inner_product: self.inner_product.clone(),
            generators,
        })
    }
}

fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OrderTooSmall(n));
    }
    Ok(())
}

/// `y_k = [1, …, 1, −k, 0, …, 0]` for `k = 1..n−1`, an orthogonal basis of `1ⁿ^⊥`.
pub fn complement_vectors(n: usize) -> Result<Vec<Vec<f64>>> {
    check_order(n)?;
    Ok((1..n)
        .map(|k| {
            let mut y = vec![0.0; n];
            y[..k].fill(1.0);
            y[k] = -(k as f64);
            y
        })
        .collect())
}

/// Frobenius-orthogonal basis `E_k = f_n(y_k)` of `l_n` (unnormalized).
pub fn ln_basis(n: usize) -> Result<BasisSet> {
    let generators = complement_vectors(n)?;
    let elements = generators.iter().map(|y| f_n(y)).collect();
    Ok(BasisSet {
        subspace: Subspace::Ln,
        n,
        elements,
        inner_product: Some(InnerProduct::Frobenius),
        generators: Some(generators),
    })
}

/// `W`-orthogonal basis of `l_n`: the `y_k` are orthogonalized under
/// `(v | w) = vᵀ M w` and mapped through `f_n`.
pub fn ln_w_basis(n: usize, w: &WeightMatrix) -> Result<BasisSet> {
    check_order(n)?;
    w.check_order(n)?;
    let m = metric_matrix(w);
    let generators = gram_schmidt_metric(&complement_vectors(n)?, &m)?;
    let elements = generators.iter().map(|y| f_n(y)).collect();
    Ok(BasisSet {
        subspace: Subspace::Ln,
        n,
        elements,
        inner_product: Some(InnerProduct::Weighted(w.clone())),
        generators: Some(generators),
    })
}

/// Vertex-by-edge incidence matrix of the complete graph with edges `i → j`,
/// `i < j`, in lexicographic order. `+1` marks the tail, `−1` the head.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl IncidenceMatrix {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        half_len(self.n)
    }

    /// `(tail, head)` for every edge, zero-based, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.n;
        (0..n).flat_map(move |i| ((i + 1)..n).map(move |j| (i, j)))
    }

    pub fn get(&self, vertex: usize, edge: usize) -> i8 {
        self.entries[vertex * self.edge_count() + edge]
    }

    /// `P · x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.edge_count(), "one coordinate per edge");
        let mut out = vec![0.0; self.n];
        for ((tail, head), &xe) in self.edges().zip(x) {
            out[tail] += xe;
            out[head] -= xe;
        }
        out
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let m = self.edge_count();
        DMatrix::from_fn(self.n, m, |v, e| f64::from(self.get(v, e)))
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries
            .chunks(self.edge_count().max(1))
            .take(self.n)
            .map(<[i8]>::to_vec)
            .collect()
    }
}

pub fn incidence_matrix(n: usize) -> Result<IncidenceMatrix> {
    check_order(n)?;
    let m = half_len(n);
    let mut entries = vec![0i8; n * m];
    let mut e = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            entries[i * m + e] = 1;
            entries[j * m + e] = -1;
            e += 1;
        }
    }
    Ok(IncidenceMatrix { n, entries })
}

/// Cycle basis of `h_n`: for `2 <= i < j <= n` (one-based) the matrix with
/// `N[1,i] = 1`, `N[i,j] = 1`, `N[1,j] = −1` and skew counterparts.
pub fn hn_cycle_basis(n: usize) -> Result<BasisSet> {
    check_order(n)?;
    let mut elements = Vec::with_capacity(Subspace::Hn.dimension(n));
    for i in 1..n {
        for j in (i + 1)..n {
            let mut upper = vec![0.0; half_len(n)];
            upper[upper_index(n, 0, i)] = 1.0;
            upper[upper_index(n, i, j)] = 1.0;
            upper[upper_index(n, 0, j)] = -1.0;
            elements.push(SkewMatrix::from_upper(n, upper)?);
        }
    }
    Ok(BasisSet {
        subspace: Subspace::Hn,
        n,
        elements,
        inner_product: None,
        generators: None,
    })
}

/// `½ ‖(B W + W B) 1‖_∞`, zero exactly on the `W`-orthogonal complement of
/// `l_n`. For `W = I` (or any `W` with constant row sums) this is `‖B 1‖_∞`
/// up to the row-sum factor, and vanishes iff `B W 1 = 0`.
pub fn hn_residual(b: &SkewMatrix, w: &WeightMatrix) -> Result<f64> {
    w.check_order(b.order())?;
    let bw1 = b.mul_vec(&w.row_sums());
    let wb1 = mat_vec(w.as_matrix(), &b.row_sums());
    Ok(bw1
        .iter()
        .zip(&wb1)
        .fold(0.0_f64, |m, (x, y)| m.max((0.5 * (x + y)).abs())))
}

/// `‖B W 1‖_∞`, the row-balance residual of `B W`.
///
/// This vanishes on `h_{n,W}` only when `W 1` is a multiple of `1`; for
/// general `W` use [`hn_residual`].
pub fn row_balance_residual(b: &SkewMatrix, w: &WeightMatrix) -> Result<f64> {
    w.check_order(b.order())?;
    Ok(b.mul_vec(&w.row_sums())
        .into_iter()
        .fold(0.0_f64, |m, x| m.max(x.abs())))
}

/// Membership in `h_{n,W}`, the `W`-orthogonal complement of `l_n` in the
/// skew matrices, at the default tolerance.
pub fn hn_membership(b: &SkewMatrix, w: &WeightMatrix) -> Result<bool> {
    hn_membership_with_tolerance(b, w, MEMBERSHIP_TOL)
}

/// `hn_residual(B, W) <= tol · (1 + ‖B‖_∞ ‖W‖_∞)`.
pub fn hn_membership_with_tolerance(b: &SkewMatrix, w: &WeightMatrix, tol: f64) -> Result<bool> {
    let residual = hn_residual(b, w)?;
    Ok(residual <= tol * (1.0 + b.norm_inf() * w.norm_inf()))
}

/// DOT text of the oriented comparison graph, vertices labelled `1..n`.
/// With `reduced`, vertex 1 and its edges are dropped.
pub fn comparison_graph_dot(n: usize, reduced: bool) -> Result<String> {
    check_order(n)?;
    let first = usize::from(reduced);
    let mut out = String::from("digraph pc {\n");
    for i in first..n {
        for j in (i + 1)..n {
            let _ = writeln!(out, "  {} -> {};", i + 1, j + 1);
        }
    }
    out.push_str("}\n");
    Ok(out)
}
