//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use coredhex::exactnum::parse_rational;
use coredhex::formulas::{FormulaId, WatsonVariant};
use coredhex::verify::Suite;
use coredhex::Rational;

#[derive(Debug, Parser)]
#[command(name = "coredhex", version, about = "Exact lozenge tiling counts of cored hexagons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count tilings of C_{a,b,c}(m), plainly or weighted by (−1)^n(T).
    Count(CountArgs),
    /// Weighted count of cyclically symmetric tilings of C_a(m).
    CyclicCount(CyclicArgs),
    /// Evaluate one closed form.
    Formula(FormulaArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// The growth constant k and the convergence table, as CSV.
    Asymptotic(AsymptoticArgs),
    /// Compare a conjectured formula with its determinant over a range, as CSV.
    Conjecture(ConjectureArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CountWeight {
    One,
    Minus1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CyclicWeight {
    One,
    Minus1,
    Omega3,
    Omega6,
    #[value(name = "minus1-n6")]
    Minus1N6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Determinant,
    Brute,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Formula => "formula",
            Method::Determinant => "determinant",
            Method::Brute => "brute",
        }
    }
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long)]
    pub c: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_enum, default_value = "one")]
    pub weight: CountWeight,
    #[arg(long, value_enum, default_value = "formula")]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct CyclicArgs {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long, value_enum, default_value = "one")]
    pub weight: CyclicWeight,
    #[arg(long, value_enum, default_value = "formula")]
    pub method: Method,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn formula_id(s: &str) -> Result<FormulaId, String> {
    s.parse().map_err(|e: coredhex::Error| e.to_string())
}

fn watson_variant(s: &str) -> Result<WatsonVariant, String> {
    WatsonVariant::ALL
        .into_iter()
        .find(|v| v.name().eq_ignore_ascii_case(s.trim()))
        .ok_or_else(|| format!("unknown Watson variant {s:?}, expected w1, w2 or w3"))
}

fn suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: coredhex::Error| e.to_string())
}

/// Which parameters a formula reads depends on `--id`; missing ones are
/// reported before evaluation.
#[derive(Debug, Args)]
pub struct FormulaArgs {
    #[arg(long, value_parser = formula_id)]
    pub id: FormulaId,
    #[arg(long)]
    pub a: Option<u32>,
    #[arg(long)]
    pub b: Option<u32>,
    #[arg(long)]
    pub c: Option<u32>,
    /// The core size `m`, or the summation bound `M` for the Watson sums.
    #[arg(long)]
    pub m: Option<u32>,
    /// Watson parameter `B`.
    #[arg(long = "big-b", value_parser = rational, allow_hyphen_values = true)]
    pub big_b: Option<Rational>,
    /// Watson parameter `C`.
    #[arg(long = "big-c", value_parser = rational, allow_hyphen_values = true)]
    pub big_c: Option<Rational>,
    #[arg(long, value_parser = watson_variant)]
    pub variant: Option<WatsonVariant>,
    /// Significant digits for `asymptotic-k`.
    #[arg(long, default_value_t = coredhex::formulas::DEFAULT_PRECISION)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// A suite name, or `all`.
    #[arg(long)]
    pub suite: String,
    #[arg(long = "max-a")]
    pub max_a: Option<u32>,
    #[arg(long = "max-m")]
    pub max_m: Option<u32>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Write every report as one JSON line.
    #[arg(long)]
    pub jsonl: Option<PathBuf>,
    /// Write the per-suite summary as CSV.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

impl VerifyArgs {
    pub fn suites(&self) -> Result<Vec<Suite>, String> {
        if self.suite.trim().eq_ignore_ascii_case("all") {
            Ok(Suite::ALL.to_vec())
        } else {
            self.suite.split(',').map(suite).collect()
        }
    }
}

#[derive(Debug, Args)]
pub struct AsymptoticArgs {
    #[arg(long)]
    pub a: u32,
    #[arg(long)]
    pub b: u32,
    #[arg(long)]
    pub c: u32,
    #[arg(long)]
    pub m: u32,
    #[arg(long = "n-list", value_delimiter = ',', default_value = "4,8,16")]
    pub n_list: Vec<u32>,
    #[arg(long, default_value_t = coredhex::formulas::DEFAULT_PRECISION)]
    pub precision: usize,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    /// `1` for the one-unit shift, `2` for the three-half-unit shift.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub which: u8,
    #[arg(long = "max-a", default_value_t = 4)]
    pub max_a: u32,
    #[arg(long = "max-m", default_value_t = 4)]
    pub max_m: u32,
}
