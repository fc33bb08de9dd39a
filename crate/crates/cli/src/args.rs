use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "darboux", version, about = "Exact Darboux integration of polynomial 1-forms over Q and F_p")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Machine,
}

/// Flags shared by the form-based subcommands.
#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long)]
    pub field: Option<String>,
    /// Comma-separated variable names.
    #[arg(long)]
    pub vars: Option<String>,
    /// Polynomial 1-form, e.g. "y*dx - x*dy".
    #[arg(long, allow_hyphen_values = true)]
    pub form: Option<String>,
    /// Single polynomial.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// Semicolon-separated invariant polynomials, e.g. "x;y;x+y".
    #[arg(long, allow_hyphen_values = true)]
    pub invariants: Option<String>,
    /// Semicolon-separated differential constants for a logarithmic form.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    /// Subset strategy for rational first integrals: `literal` or `exhaustive`.
    #[arg(long)]
    pub strategy: Option<String>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Re-verify every certificate from the emitted report.
    #[arg(long)]
    pub recheck: bool,
    /// TOML problem file; its entries override the individual flags.
    #[arg(long)]
    pub problem: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct CountArgs {
    #[arg(long)]
    pub n: i64,
    #[arg(long)]
    pub d: i64,
    #[arg(long)]
    pub r: i64,
    /// 0 or a prime.
    #[arg(long = "char")]
    pub characteristic: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check whether F divides ω∧dF.
    CheckInvariant(Common),
    /// Cofactor Θ_F = ω∧dF/F of an invariant polynomial.
    Cofactor(Common),
    /// Relations among the cofactors of the invariants over K(z^p).
    Dependence(Common),
    /// Tangent logarithmic 1-forms built from cofactor relations or from --lambda.
    Logform(Common),
    /// Check ω∧η = 0 for η = Σ λ_i dF_i/F_i.
    Tangency(Common),
    /// Rational first integral from the invariants, or a check of --function.
    FirstIntegral(FirstIntegralArgs),
    /// First integral Π F_i^δ_i with exponents in the prime field.
    MultiplicativeIntegral(Common),
    /// Dimension bound C(n,r)·C(n+m,n), m = min(p-1, d).
    Nk(CountArgs),
    /// Exact K(z^p)-dimension of polynomial r-forms of degree at most d.
    DimExact(CountArgs),
    /// Exhaustive search for invariant hypersurfaces over F_p.
    Search(SearchArgs),
    /// Residue at 0 of α·dg/g for univariate α and g.
    Residue(ResidueArgs),
    /// Parse and print back an expression.
    Parse(ParseArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FirstIntegralArgs {
    #[command(flatten)]
    pub common: Common,
    /// Candidate rational function to check instead of constructing one.
    #[arg(long, allow_hyphen_values = true)]
    pub function: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct SearchArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub max_candidates: Option<u128>,
}

#[derive(Args, Debug, Clone)]
pub struct ResidueArgs {
    #[command(flatten)]
    pub common: Common,
    /// Univariate rational function α (default 1).
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Print the residue table over α = x^{sp} and monic g with g(0) ≠ 0.
    #[arg(long)]
    pub table: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ParseArgs {
    #[command(flatten)]
    pub common: Common,
    /// Rational function.
    #[arg(long, allow_hyphen_values = true)]
    pub ratfunc: Option<String>,
}
