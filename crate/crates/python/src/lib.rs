//! Python bindings for `pcortho`.
//!
//! Matrices cross the boundary as lists of rows. Errors from the library
//! surface as `pcortho_py.PcorthoError` (a `ValueError`), except numeric
//! breakdowns such as a degenerate Gram-Schmidt step, which raise
//! `ArithmeticError`.

use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyIndexError, PyValueError};
use pyo3::prelude::*;

create_exception!(pcortho_py, PcorthoError, PyValueError);

fn to_py(e: pcortho::Error) -> PyErr {
    match e {
        pcortho::Error::DegenerateElement { .. } | pcortho::Error::SingularGram => {
            PyArithmeticError::new_err(e.to_string())
        }
        other => PcorthoError::new_err(other.to_string()),
    }
}

trait IntoPy<T> {
    fn py_err(self) -> PyResult<T>;
}

impl<T> IntoPy<T> for pcortho::Result<T> {
    fn py_err(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

fn dense(rows: &[Vec<f64>]) -> PyResult<pcortho::nalgebra::DMatrix<f64>> {
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(to_py(pcortho::Error::NotSquare {
            rows: n,
            cols: bad.len(),
        }));
    }
    Ok(pcortho::nalgebra::DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

fn weights_or_identity(w: Option<&WeightMatrix>, n: usize) -> PyResult<pcortho::WeightMatrix> {
    match w {
        Some(w) => Ok(w.inner.clone()),
        None => pcortho::WeightMatrix::identity(n).py_err(),
    }
}

/// Positive PC matrix given as a list of rows.
#[pyclass(module = "pcortho_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PCMatrix {
    inner: pcortho::PCMatrix,
}

#[pymethods]
impl PCMatrix {
    #[new]
    fn new(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(PCMatrix {
            inner: pcortho::PCMatrix::new(dense(&rows)?).py_err()?,
        })
    }

    /// The consistent matrix `[w_i / w_j]`.
    #[staticmethod]
    fn from_weights(weights: Vec<f64>) -> PyResult<Self> {
        Ok(PCMatrix {
            inner: pcortho::consistent_from_weights(&weights).py_err()?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.inner.to_rows()
    }

    #[pyo3(signature = (tol = pcortho::RECIPROCITY_TOL))]
    fn is_reciprocal(&self, tol: f64) -> bool {
        self.inner.is_reciprocal(tol)
    }

    #[pyo3(signature = (tol = pcortho::CONSISTENCY_TOL))]
    fn is_consistent(&self, tol: f64) -> bool {
        pcortho::is_consistent(&self.inner, tol)
    }

    fn consistency_deviation(&self) -> f64 {
        pcortho::consistency_deviation(&self.inner)
    }

    fn symmetrized(&self) -> Self {
        PCMatrix {
            inner: self.inner.symmetrized(),
        }
    }

    fn __repr__(&self) -> String {
        format!("PCMatrix({:?})", self.inner.to_rows())
    }
}

/// Skew-symmetric matrix; only the strict upper triangle is stored.
#[pyclass(module = "pcortho_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct SkewMatrix {
    inner: pcortho::SkewMatrix,
}

#[pymethods]
impl SkewMatrix {
    #[new]
    #[pyo3(signature = (rows, tol = 1e-12))]
    fn new(rows: Vec<Vec<f64>>, tol: f64) -> PyResult<Self> {
        Ok(SkewMatrix {
            inner: pcortho::SkewMatrix::from_dense(&dense(&rows)?, tol).py_err()?,
        })
    }

    /// Builds from the strict upper triangle in lexicographic order.
    #[staticmethod]
    fn from_upper(n: usize, upper: Vec<f64>) -> PyResult<Self> {
        Ok(SkewMatrix {
            inner: pcortho::SkewMatrix::from_upper(n, upper).py_err()?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn upper(&self) -> Vec<f64> {
        self.inner.upper().to_vec()
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        let n = self.inner.order();
        (0..n)
            .map(|i| (0..n).map(|j| self.inner.get(i, j)).collect())
            .collect()
    }

    fn get(&self, i: usize, j: usize) -> PyResult<f64> {
        let n = self.inner.order();
        if i >= n || j >= n {
            return Err(PyIndexError::new_err(format!("({i}, {j}) out of range for order {n}")));
        }
        Ok(self.inner.get(i, j))
    }

    fn max_abs_diff(&self, other: &SkewMatrix) -> f64 {
        self.inner.max_abs_diff(&other.inner)
    }

    #[pyo3(signature = (tol = pcortho::CONSISTENCY_TOL))]
    fn is_consistent(&self, tol: f64) -> bool {
        pcortho::is_additively_consistent(&self.inner, tol)
    }

    fn __repr__(&self) -> String {
        format!("SkewMatrix(n={}, upper={:?})", self.inner.order(), self.inner.upper())
    }
}

/// Symmetric positive definite weight matrix.
#[pyclass(module = "pcortho_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct WeightMatrix {
    inner: pcortho::WeightMatrix,
}

#[pymethods]
impl WeightMatrix {
    #[new]
    fn new(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        Ok(WeightMatrix {
            inner: pcortho::WeightMatrix::new(dense(&rows)?).py_err()?,
        })
    }

    #[staticmethod]
    fn identity(n: usize) -> PyResult<Self> {
        Ok(WeightMatrix {
            inner: pcortho::WeightMatrix::identity(n).py_err()?,
        })
    }

    #[staticmethod]
    fn diagonal(d: Vec<f64>) -> PyResult<Self> {
        Ok(WeightMatrix {
            inner: pcortho::WeightMatrix::diagonal(&d).py_err()?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        let m = self.inner.as_matrix();
        m.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    fn __repr__(&self) -> String {
        format!("WeightMatrix({:?})", self.rows())
    }
}

#[pyclass(module = "pcortho_py", frozen)]
pub struct Ranking {
    #[pyo3(get)]
    weights: Vec<f64>,
    #[pyo3(get)]
    logvalues: Vec<f64>,
}

#[pymethods]
impl Ranking {
    fn __repr__(&self) -> String {
        format!("Ranking(weights={:?})", self.weights)
    }
}

impl From<pcortho::RankingVector> for Ranking {
    fn from(r: pcortho::RankingVector) -> Self {
        Ranking {
            weights: r.weights().to_vec(),
            logvalues: r.logvalues().to_vec(),
        }
    }
}

#[pyclass(module = "pcortho_py", frozen)]
pub struct Decomposition {
    inner: pcortho::Decomposition,
}

#[pymethods]
impl Decomposition {
    #[getter]
    fn consistent(&self) -> SkewMatrix {
        SkewMatrix {
            inner: self.inner.consistent.clone(),
        }
    }

    #[getter]
    fn inconsistent(&self) -> SkewMatrix {
        SkewMatrix {
            inner: self.inner.inconsistent.clone(),
        }
    }

    #[getter]
    fn residual_check(&self) -> f64 {
        self.inner.residual_check
    }

    fn inconsistency_ratio(&self) -> PyResult<f64> {
        self.inner.inconsistency_ratio().py_err()
    }

    fn ranking(&self) -> PyResult<Ranking> {
        Ok(self.inner.ranking().py_err()?.into())
    }

    fn membership_residual(&self) -> PyResult<f64> {
        pcortho::membership_residual(&self.inner).py_err()
    }
}

#[pyclass(module = "pcortho_py", frozen)]
pub struct BasisSet {
    inner: pcortho::BasisSet,
}

#[pymethods]
impl BasisSet {
    #[getter]
    fn subspace(&self) -> &'static str {
        self.inner.subspace().name()
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    fn elements(&self) -> Vec<SkewMatrix> {
        self.inner
            .elements()
            .iter()
            .map(|e| SkewMatrix { inner: e.clone() })
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn to_json(&self) -> String {
        pcortho::io::basis_to_json(&self.inner)
    }

    fn normalized(&self) -> PyResult<BasisSet> {
        Ok(BasisSet {
            inner: self.inner.normalized().py_err()?,
        })
    }
}

#[pyfunction]
#[pyo3(signature = (a, tol = pcortho::RECIPROCITY_TOL))]
fn mu(a: &PCMatrix, tol: f64) -> PyResult<SkewMatrix> {
    Ok(SkewMatrix {
        inner: pcortho::mu_with_tolerance(&a.inner, tol).py_err()?,
    })
}

#[pyfunction]
fn phi(b: &SkewMatrix) -> PCMatrix {
    PCMatrix {
        inner: pcortho::phi(&b.inner),
    }
}

#[pyfunction]
fn f_n(v: Vec<f64>) -> SkewMatrix {
    SkewMatrix {
        inner: pcortho::f_n(&v),
    }
}

#[pyfunction]
fn f_pair_w(v: Vec<f64>, u: Vec<f64>, w: &WeightMatrix) -> PyResult<f64> {
    pcortho::f_pair_w(&v, &u, &w.inner).py_err()
}

#[pyfunction]
#[pyo3(signature = (b, w = None))]
fn decompose(b: &SkewMatrix, w: Option<&WeightMatrix>) -> PyResult<Decomposition> {
    let w = weights_or_identity(w, b.inner.order())?;
    Ok(Decomposition {
        inner: pcortho::decompose(&b.inner, &w).py_err()?,
    })
}

/// Returns `(inconsistent, consistent)` with `a = inconsistent ⊙ consistent`.
#[pyfunction]
#[pyo3(signature = (a, w = None, tol = pcortho::RECIPROCITY_TOL))]
fn factor_pc(a: &PCMatrix, w: Option<&WeightMatrix>, tol: f64) -> PyResult<(PCMatrix, PCMatrix)> {
    let w = weights_or_identity(w, a.inner.order())?;
    let f = pcortho::factor_pc_with_tolerance(&a.inner, &w, tol).py_err()?;
    Ok((
        PCMatrix {
            inner: f.inconsistent,
        },
        PCMatrix {
            inner: f.consistent,
        },
    ))
}

#[pyfunction]
fn ranking(b_l: &SkewMatrix) -> PyResult<Ranking> {
    Ok(pcortho::ranking(&b_l.inner).py_err()?.into())
}

#[pyfunction]
#[pyo3(signature = (b, w = None))]
fn inconsistency_ratio(b: &SkewMatrix, w: Option<&WeightMatrix>) -> PyResult<f64> {
    let w = weights_or_identity(w, b.inner.order())?;
    pcortho::inconsistency_ratio(&b.inner, &w).py_err()
}

#[pyfunction]
fn project_ln_closed(b: &SkewMatrix) -> SkewMatrix {
    SkewMatrix {
        inner: pcortho::project_ln_closed(&b.inner),
    }
}

#[pyfunction]
fn project_ln_w(b: &SkewMatrix, w: &WeightMatrix) -> PyResult<SkewMatrix> {
    Ok(SkewMatrix {
        inner: pcortho::project_ln_w(&b.inner, &w.inner).py_err()?,
    })
}

#[pyfunction]
#[pyo3(signature = (b, w = None))]
fn hn_membership(b: &SkewMatrix, w: Option<&WeightMatrix>) -> PyResult<bool> {
    let w = weights_or_identity(w, b.inner.order())?;
    pcortho::hn_membership(&b.inner, &w).py_err()
}

#[pyfunction]
fn ln_basis(n: usize) -> PyResult<BasisSet> {
    Ok(BasisSet {
        inner: pcortho::ln_basis(n).py_err()?,
    })
}

#[pyfunction]
fn ln_w_basis(n: usize, w: &WeightMatrix) -> PyResult<BasisSet> {
    Ok(BasisSet {
        inner: pcortho::ln_w_basis(n, &w.inner).py_err()?,
    })
}

#[pyfunction]
fn hn_cycle_basis(n: usize) -> PyResult<BasisSet> {
    Ok(BasisSet {
        inner: pcortho::hn_cycle_basis(n).py_err()?,
    })
}

#[pyfunction]
fn incidence_matrix(n: usize) -> PyResult<Vec<Vec<i8>>> {
    Ok(pcortho::incidence_matrix(n).py_err()?.rows())
}

#[pyfunction]
#[pyo3(signature = (n, reduced = false))]
fn comparison_graph_dot(n: usize, reduced: bool) -> PyResult<String> {
    pcortho::comparison_graph_dot(n, reduced).py_err()
}

#[pymodule]
pub fn pcortho_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("PcorthoError", m.py().get_type::<PcorthoError>())?;
    m.add_class::<PCMatrix>()?;
    m.add_class::<SkewMatrix>()?;
    m.add_class::<WeightMatrix>()?;
    m.add_class::<Ranking>()?;
    m.add_class::<Decomposition>()?;
    m.add_class::<BasisSet>()?;
    m.add_function(wrap_pyfunction!(mu, m)?)?;
    m.add_function(wrap_pyfunction!(phi, m)?)?;
    m.add_function(wrap_pyfunction!(f_n, m)?)?;
    m.add_function(wrap_pyfunction!(f_pair_w, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(factor_pc, m)?)?;
    m.add_function(wrap_pyfunction!(ranking, m)?)?;
    m.add_function(wrap_pyfunction!(inconsistency_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(project_ln_closed, m)?)?;
    m.add_function(wrap_pyfunction!(project_ln_w, m)?)?;
    m.add_function(wrap_pyfunction!(hn_membership, m)?)?;
    m.add_function(wrap_pyfunction!(ln_basis, m)?)?;
    m.add_function(wrap_pyfunction!(ln_w_basis, m)?)?;
    m.add_function(wrap_pyfunction!(hn_cycle_basis, m)?)?;
    m.add_function(wrap_pyfunction!(incidence_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(comparison_graph_dot, m)?)?;
    Ok(())
}
