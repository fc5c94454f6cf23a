use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "pcortho",
    version,
    about = "Orthogonal decomposition of reciprocal pairwise-comparison matrices"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Format of matrix files read from disk or stdin.
    #[arg(long, global = true, value_enum, default_value_t = InputFormat::Auto)]
    pub format: InputFormat,

    /// Report format written to stdout.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub output: OutputFormat,

    /// Symmetric positive definite weight matrix; identity when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub weights: Option<PathBuf>,

    /// Allowed |a_ij·a_ji − 1| before a matrix counts as non-reciprocal.
    #[arg(long, global = true, value_name = "TOL", default_value_t = pcortho::RECIPROCITY_TOL)]
    pub reciprocity_tol: f64,

    /// Allowed |a_ij·a_jk / a_ik − 1| before a matrix counts as inconsistent.
    #[arg(long, global = true, value_name = "TOL", default_value_t = pcortho::CONSISTENCY_TOL)]
    pub consistency_tol: f64,

    /// Replace the input by its geometric symmetrization sqrt(a_ij / a_ji).
    #[arg(long, global = true)]
    pub symmetrize: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Csv,
    Json,
    Auto,
}

impl From<InputFormat> for pcortho::io::Format {
    fn from(f: InputFormat) -> Self {
        match f {
            InputFormat::Csv => pcortho::io::Format::Csv,
            InputFormat::Json => pcortho::io::Format::Json,
            InputFormat::Auto => pcortho::io::Format::Auto,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisKind {
    Ln,
    Hn,
    #[value(name = "ln-w")]
    LnW,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report reciprocity and consistency of a PC matrix.
    Check {
        /// Matrix file, or `-` for stdin.
        input: PathBuf,
    },
    /// Split a PC matrix into consistent and totally inconsistent parts.
    Project {
        input: PathBuf,
        /// Cross-check the projection against a direct least-squares solve.
        #[arg(long)]
        verify: bool,
        /// Also write the consistent factor φ(B_l) to this file.
        #[arg(long, value_name = "PATH")]
        emit_consistent: Option<PathBuf>,
    },
    /// Write A as the entrywise product of an inconsistent and a consistent PC matrix.
    Factor { input: PathBuf },
    /// Priority vector of the consistent part.
    Rank { input: PathBuf },
    /// Print a basis of l_n, h_n or the W-orthogonal basis of l_n.
    Basis {
        #[arg(long, short = 'n')]
        order: usize,
        #[arg(long, value_enum)]
        subspace: BasisKind,
        /// Run Gram-Schmidt on the cycle basis of h_n (under W when given).
        #[arg(long)]
        orthogonalize_hn: bool,
        /// Scale every element to unit norm.
        #[arg(long)]
        normalize_basis: bool,
    },
    /// DOT text of the oriented complete comparison graph.
    Graph {
        #[arg(long, short = 'n')]
        order: usize,
        /// Drop vertex 1 and its edges.
        #[arg(long)]
        reduced: bool,
    },
}
