use std::fs;
use std::io::Read;
use std::path::Path;

use pcortho::io::{matrix_to_csv, matrix_to_json, parse_matrix, BasisFile};
use pcortho::nalgebra::DMatrix;
use pcortho::{
    comparison_graph_dot, consistency_deviation, corollary_checks, decompose, hn_cycle_basis,
    ln_basis, ln_w_basis, membership_residual, oracle_project, phi, InnerProduct, PCMatrix,
    SkewMatrix, WeightMatrix,
};
use serde::Serialize;
use serde_json::Value;

use crate::args::{BasisKind, Command, GlobalOpts, InputFormat};
use crate::error::CliError;

/// Relative agreement required between the projection and the oracle.
const VERIFY_RTOL: f64 = 1e-9;

/// What a command produces: a structured report or raw text.
pub enum Outcome {
    Report(Value),
    Raw(String),
}

pub fn run(command: &Command, opts: &GlobalOpts) -> Result<Outcome, CliError> {
    match command {
        Command::Check { input } => check(input, opts),
        Command::Project {
            input,
            verify,
            emit_consistent,
        } => project(input, opts, *verify, emit_consistent.as_deref()),
        Command::Factor { input } => factor(input, opts),
        Command::Rank { input } => rank(input, opts),
        Command::Basis {
            order,
            subspace,
            orthogonalize_hn,
            normalize_basis,
        } => basis(*order, *subspace, *orthogonalize_hn, *normalize_basis, opts),
        Command::Graph { order, reduced } => Ok(Outcome::Raw(comparison_graph_dot(*order, *reduced)?)),
    }
}

fn read_source(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

fn load_dense(path: &Path, format: InputFormat) -> Result<DMatrix<f64>, CliError> {
    let text = read_source(path)?;
    parse_matrix(&text, format.into()).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_pc(path: &Path, opts: &GlobalOpts) -> Result<PCMatrix, CliError> {
    let a = PCMatrix::new(load_dense(path, opts.format)?)?;
    Ok(if opts.symmetrize { a.symmetrized() } else { a })
}

fn load_weights(opts: &GlobalOpts, n: usize) -> Result<WeightMatrix, CliError> {
    match &opts.weights {
        Some(path) => Ok(WeightMatrix::new(load_dense(path, opts.format)?)?),
        None => Ok(WeightMatrix::identity(n)?),
    }
}

fn log_input(a: &PCMatrix, opts: &GlobalOpts) -> Result<SkewMatrix, CliError> {
    Ok(pcortho::mu_with_tolerance(a, opts.reciprocity_tol)?)
}

fn to_value<T: Serialize>(report: &T) -> Value {
    serde_json::to_value(report).expect("reports are plain data")
}

#[derive(Serialize)]
struct Violation {
    i: usize,
    j: usize,
    deviation: f64,
}

#[derive(Serialize)]
struct CheckReport {
    n: usize,
    reciprocal: bool,
    consistent: bool,
    worst_reciprocity: Violation,
    consistency_deviation: f64,
    reciprocity_tol: f64,
    consistency_tol: f64,
}

fn check(input: &Path, opts: &GlobalOpts) -> Result<Outcome, CliError> {
    let a = load_pc(input, opts)?;
    let (i, j, deviation) = a.reciprocity_violation();
    let reciprocal = deviation <= opts.reciprocity_tol;
    let consistency = consistency_deviation(&a);
    let report = CheckReport {
        n: a.order(),
        reciprocal,
        consistent: reciprocal && consistency <= opts.consistency_tol,
        worst_reciprocity: Violation {
            i: i + 1,
            j: j + 1,
            deviation,
        },
        consistency_deviation: consistency,
        reciprocity_tol: opts.reciprocity_tol,
        consistency_tol: opts.consistency_tol,
    };
    Ok(Outcome::Report(to_value(&report)))
}

#[derive(Serialize)]
struct RankReport {
    weights: Vec<f64>,
    logvalues: Vec<f64>,
}

#[derive(Serialize)]
struct CorollaryDeviations {
    h_sums: f64,
    l_sums: f64,
    balance: f64,
    h_products: Option<f64>,
    l_products: Option<f64>,
}

#[derive(Serialize)]
struct Verification {
    max_abs_diff: f64,
    tolerance: f64,
    agrees: bool,
}

#[derive(Serialize)]
struct ProjectReport {
    n: usize,
    input: Vec<Vec<f64>>,
    /// `B = ln A`.
    log_input: Vec<Vec<f64>>,
    /// Consistent part of `B`.
    b_l: Vec<Vec<f64>>,
    /// Totally inconsistent part of `B`.
    b_h: Vec<Vec<f64>>,
    inconsistency_ratio: Option<f64>,
    ranking: RankReport,
    corollary: CorollaryDeviations,
    membership_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<Verification>,
}

fn project(
    input: &Path,
    opts: &GlobalOpts,
    verify: bool,
    emit_consistent: Option<&Path>,
) -> Result<Outcome, CliError> {
    let a = load_pc(input, opts)?;
    let b = log_input(&a, opts)?;
    let w = load_weights(opts, a.order())?;
    let d = decompose(&b, &w)?;
    let ranking = d.ranking()?;
    let inconsistency_ratio = match d.inconsistency_ratio() {
        Ok(r) => Some(r),
        Err(pcortho::Error::ZeroMatrix) => None,
        Err(e) => return Err(e.into()),
    };
    let c = corollary_checks(&d);

    let verification = if verify {
        let oracle = oracle_project(&b, &ln_basis(b.order())?, &InnerProduct::Weighted(w.clone()))?;
        let max_abs_diff = oracle.max_abs_diff(&d.consistent);
        let tolerance = VERIFY_RTOL * (1.0 + oracle.max_abs());
        Some(Verification {
            max_abs_diff,
            tolerance,
            agrees: max_abs_diff <= tolerance,
        })
    } else {
        None
    };

    let report = ProjectReport {
        n: a.order(),
        input: a.to_rows(),
        log_input: dense_rows(&b),
        b_l: dense_rows(&d.consistent),
        b_h: dense_rows(&d.inconsistent),
        inconsistency_ratio,
        ranking: RankReport {
            weights: ranking.weights().to_vec(),
            logvalues: ranking.logvalues().to_vec(),
        },
        corollary: CorollaryDeviations {
            h_sums: c.h_sums,
            l_sums: c.l_sums,
            balance: c.balance,
            h_products: c.h_products,
            l_products: c.l_products,
        },
        membership_residual: membership_residual(&d)?,
        verification,
    };

    if let Some(v) = &report.verification {
        if !v.agrees {
            return Err(CliError::Numeric(format!(
                "projection disagrees with the least-squares oracle by {:e} (tolerance {:e})",
                v.max_abs_diff, v.tolerance
            )));
        }
    }

    if let Some(path) = emit_consistent {
        let consistent = phi(&d.consistent);
        let body = match opts.format {
            InputFormat::Csv => matrix_to_csv(consistent.as_matrix()),
            _ => matrix_to_json(consistent.as_matrix()) + "\n",
        };
        fs::write(path, body).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }

    Ok(Outcome::Report(to_value(&report)))
}

#[derive(Serialize)]
struct FactorReport {
    n: usize,
    inconsistent: Vec<Vec<f64>>,
    consistent: Vec<Vec<f64>>,
    reconstruction_error: f64,
}

fn factor(input: &Path, opts: &GlobalOpts) -> Result<Outcome, CliError> {
    let a = load_pc(input, opts)?;
    let w = load_weights(opts, a.order())?;
    let f = pcortho::factor_pc_with_tolerance(&a, &w, opts.reciprocity_tol)?;
    let reconstruction_error = f.inconsistent.hadamard(&f.consistent)?.max_rel_diff(&a);
    let report = FactorReport {
        n: a.order(),
        inconsistent: f.inconsistent.to_rows(),
        consistent: f.consistent.to_rows(),
        reconstruction_error,
    };
    Ok(Outcome::Report(to_value(&report)))
}

fn rank(input: &Path, opts: &GlobalOpts) -> Result<Outcome, CliError> {
    let a = load_pc(input, opts)?;
    let b = log_input(&a, opts)?;
    let w = load_weights(opts, a.order())?;
    let r = decompose(&b, &w)?.ranking()?;
    let report = RankReport {
        weights: r.weights().to_vec(),
        logvalues: r.logvalues().to_vec(),
    };
    Ok(Outcome::Report(to_value(&report)))
}

fn basis(
    n: usize,
    kind: BasisKind,
    orthogonalize_hn: bool,
    normalize: bool,
    opts: &GlobalOpts,
) -> Result<Outcome, CliError> {
    let mut set = match kind {
        BasisKind::Ln => ln_basis(n)?,
        BasisKind::LnW => ln_w_basis(n, &load_weights(opts, n)?)?,
        BasisKind::Hn => {
            let cycles = hn_cycle_basis(n)?;
            if orthogonalize_hn {
                cycles.orthogonalized(InnerProduct::Frobenius)?
            } else {
                cycles
            }
        }
    };
    if normalize {
        set = set.normalized()?;
    }
    Ok(Outcome::Report(to_value(&BasisFile::from_basis(&set))))
}

fn dense_rows(b: &SkewMatrix) -> Vec<Vec<f64>> {
    let n = b.order();
    (0..n).map(|i| (0..n).map(|j| b.get(i, j)).collect()).collect()
}
