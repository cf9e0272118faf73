use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "lommel", version, about = "Modified Lommel functions, their integrals and bounds on them")]
pub struct Cli {
    /// Relative tolerance for series truncation and quadrature
    #[arg(long, global = true, default_value = "1e-12")]
    pub tol: f64,

    /// Emit a JSON report instead of CSV
    #[arg(long, global = true)]
    pub json: bool,

    /// Write the output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for random parameter draws
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point
    Eval(EvalArgs),
    /// Check inequalities against the integral oracle
    Verify(VerifyArgs),
    /// Relative errors of the two bounds on F over the 15 x 7 grid
    Table(TableArgs),
    /// Integral, bound and ratio of one inequality over an x grid
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    /// Unnormalized t_{mu,nu}(x)
    T,
    /// Normalized t~_{mu,nu}(x)
    TTilde,
    /// Modified Struve L_nu(x)
    #[value(name = "struve-L", alias = "struve-l")]
    StruveL,
    /// Lower incomplete gamma(a, x)
    GammaLower,
    Hyp1f2,
    Hyp2f3,
    /// Integral of e^{-beta u} u^alpha t~_{mu,nu}(u) over [0, x]
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Closed,
    Quad,
    Series,
    Both,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: Function,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub x: Option<f64>,
    /// Numerator parameters (comma separated), or a for gamma-lower
    #[arg(long, value_delimiter = ',')]
    pub a: Vec<f64>,
    /// Denominator parameters (comma separated)
    #[arg(long, value_delimiter = ',')]
    pub b: Vec<f64>,
    #[arg(long)]
    pub z: Option<f64>,
    /// Weight exponent for `integral`
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, value_enum, default_value_t = Method::Both)]
    pub method: Method,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    /// Inequality label, or `all`
    #[arg(long)]
    pub inequality: String,
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub n: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    /// Comma-separated points, or start:end:count for a linear grid
    #[arg(long)]
    pub x: Option<String>,
    /// Random draws per inequality inside its domain (overrides mu/nu/n/beta/x)
    #[arg(long)]
    pub samples: Option<usize>,
    /// Count parameter-domain violations as failures
    #[arg(long)]
    pub strict_domain: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: u8,
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    pub format: TableFormat,
    /// Compare against the embedded printed values; fail if any differ by more than 1e-4
    #[arg(long)]
    pub compare_paper: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long)]
    pub inequality: String,
    #[arg(long)]
    pub mu: f64,
    #[arg(long)]
    pub nu: f64,
    #[arg(long, default_value_t = 0.0)]
    pub n: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long)]
    pub x_min: f64,
    #[arg(long)]
    pub x_max: f64,
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    /// Logarithmic spacing
    #[arg(long)]
    pub log: bool,
}
