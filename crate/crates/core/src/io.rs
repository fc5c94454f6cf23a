//! Matrix and basis file formats.
//!
//! * CSV: one row per line, comma-separated decimal literals (dot decimal
//!   separator, scientific notation accepted). Blank lines are skipped.
//! * JSON matrix: `{"n": 3, "rows": [[...], ...]}`.
//! * JSON basis: `{"subspace": "hn", "n": 4, "elements": [[b12, b13, ...], ...]}`
//!   where each element lists its upper triangle in lexicographic order.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::bases::{BasisSet, Subspace};
use crate::error::{Error, Result};
use crate::model::SkewMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    /// JSON when the first non-blank character is `{`, CSV otherwise.
    Auto,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "auto" => Ok(Format::Auto),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &DMatrix<f64>) -> Self {
        MatrixFile {
            n: m.nrows(),
            rows: m.row_iter().map(|r| r.iter().copied().collect()).collect(),
        }
    }

    pub fn into_matrix(self) -> Result<DMatrix<f64>> {
        if self.rows.len() != self.n {
            return Err(Error::Parse(format!(
                "\"n\" is {} but {} rows were given",
                self.n,
                self.rows.len()
            )));
        }
        rows_to_matrix(&self.rows)
    }
}

fn rows_to_matrix(rows: &[Vec<f64>]) -> Result<DMatrix<f64>> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Parse("matrix has no rows".into()));
    }
    for r in rows {
        if r.len() != n {
            return Err(Error::NotSquare {
                rows: n,
                cols: r.len(),
            });
        }
    }
    for (i, r) in rows.iter().enumerate() {
        for (j, &value) in r.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { i, j, value });
            }
        }
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

pub fn parse_csv(text: &str) -> Result<DMatrix<f64>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|field| {
                let field = field.trim();
                field.parse::<f64>().map_err(|_| {
                    Error::Parse(format!("line {}: {field:?} is not a number", lineno + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    rows_to_matrix(&rows)
}

pub fn parse_json(text: &str) -> Result<DMatrix<f64>> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_matrix()
}

pub fn parse_matrix(text: &str, format: Format) -> Result<DMatrix<f64>> {
    match format {
        Format::Csv => parse_csv(text),
        Format::Json => parse_json(text),
        Format::Auto => {
            if text.trim_start().starts_with('{') {
                parse_json(text)
            } else {
                parse_csv(text)
            }
        }
    }
}

/// Serializes a square matrix as JSON with `n` and `rows`.
pub fn matrix_to_json(m: &DMatrix<f64>) -> String {
    serde_json::to_string(&MatrixFile::from_matrix(m)).expect("plain data serializes")
}

pub fn matrix_to_csv(m: &DMatrix<f64>) -> String {
    let mut out = String::new();
    for r in m.row_iter() {
        let fields: Vec<String> = r.iter().map(|x| format!("{x:?}")).collect();
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisFile {
    pub subspace: String,
    pub n: usize,
    pub elements: Vec<Vec<f64>>,
}

impl BasisFile {
    pub fn from_basis(b: &BasisSet) -> Self {
        BasisFile {
            subspace: b.subspace().name().to_string(),
            n: b.order(),
            elements: b.elements().iter().map(|e| e.upper().to_vec()).collect(),
        }
    }

    /// Element matrices and subspace tag; orthogonality is not recorded in the
    /// file and therefore not restored.
    pub fn into_parts(self) -> Result<(Subspace, Vec<SkewMatrix>)> {
        let subspace: Subspace = self.subspace.parse()?;
        let n = self.n;
        let elements = self
            .elements
            .into_iter()
            .map(|u| SkewMatrix::from_upper(n, u))
            .collect::<Result<Vec<_>>>()?;
        Ok((subspace, elements))
    }
}

pub fn basis_to_json(b: &BasisSet) -> String {
    serde_json::to_string(&BasisFile::from_basis(b)).expect("plain data serializes")
}

pub fn parse_basis_json(text: &str) -> Result<(Subspace, Vec<SkewMatrix>)> {
    let file: BasisFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.into_parts()
}
