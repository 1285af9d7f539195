//! Command-line surface. Every experiment is one subcommand; output and
//! size-cap plumbing is shared through global flags.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "cosetcount",
    version,
    about = "Residue-class counting experiments over finite fields",
    long_about = "Counts field elements by the residue classes of the discrete \
logarithms of polynomial values, checks the square-root deviation bounds that \
predict those counts, and runs the derived applications (sign quadrants, runs \
of consecutive squares, primitive roots in images, subspace and digit-class \
statistics). Emits one table per invocation as CSV or JSON."
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads for sweeps (integer tallies are identical at any
    /// degree).
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    /// Raise the field-size cap above the built-in default
    /// (env: COSETCOUNT_MAX_Q).
    #[arg(long, global = true, env = "COSETCOUNT_MAX_Q")]
    pub max_q: Option<u64>,

    /// Raise the residue-cell cap above the built-in default
    /// (env: COSETCOUNT_MAX_CELLS).
    #[arg(long, global = true, env = "COSETCOUNT_MAX_CELLS")]
    pub max_cells: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    /// Field characteristic (a prime).
    #[arg(long)]
    pub p: u64,

    /// Extension degree, so the field has p^n elements.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count elements by the joint residue classes of log P_i(y) mod d_i,
    /// one row per residue cell, with the exact deviation check.
    Count(CountArgs),

    /// Decide whether a (polynomials, divisors) tuple is independent;
    /// print the dependence witness and verify its identity if not.
    Indep(IndepArgs),

    /// Complete character sums of chi(F(y)) against the square-root
    /// cancellation bound, one row per character.
    Weil(WeilArgs),

    /// Search for a run of t consecutive nonzero squares.
    Squares(SquaresArgs),

    /// Count primitive roots in the image of an integer polynomial, one
    /// row per prime in a range.
    Primroots(PrimrootsArgs),

    /// Residue classes of discrete logs over an affine subspace.
    Subspace(SubspaceArgs),

    /// Residue classes of discrete logs on digit-sum hyperplanes, one row
    /// per digit-sum value.
    Digits(DigitsArgs),
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub field: FieldArgs,

    /// Polynomials, semicolon-separated; coefficients comma-separated,
    /// lowest degree first (extension coefficients as colon-joined
    /// coordinates), e.g. "0,1;1,1".
    #[arg(long)]
    pub polys: String,

    /// Divisors of q - 1, comma-separated, one per polynomial, e.g. "2,2".
    #[arg(long)]
    pub divisors: String,
}

#[derive(Debug, Args)]
pub struct IndepArgs {
    #[command(flatten)]
    pub field: FieldArgs,

    /// Polynomials, as in `count`.
    #[arg(long)]
    pub polys: String,

    /// Divisors, as in `count`.
    #[arg(long)]
    pub divisors: String,
}

#[derive(Debug, Args)]
pub struct WeilArgs {
    #[command(flatten)]
    pub field: FieldArgs,

    /// The polynomial F, comma-separated coefficients lowest first.
    #[arg(long)]
    pub f: String,

    /// Check only the character with this index (default: all nontrivial).
    #[arg(long, conflicts_with = "order")]
    pub k: Option<u64>,

    /// Check only characters of exactly this order.
    #[arg(long)]
    pub order: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SquaresArgs {
    #[command(flatten)]
    pub field: FieldArgs,

    /// Length of the run of consecutive nonzero squares to search for.
    #[arg(long, default_value_t = 3)]
    pub t: u64,
}

#[derive(Debug, Args)]
pub struct PrimrootsArgs {
    /// Integer polynomial, comma-separated coefficients lowest first
    /// (reduced mod p for each prime; primes where it degenerates to a
    /// constant are skipped).
    #[arg(long)]
    pub f: String,

    /// Smallest prime of the sweep (inclusive).
    #[arg(long)]
    pub pmin: u64,

    /// Largest prime of the sweep (inclusive).
    #[arg(long)]
    pub pmax: u64,
}

#[derive(Debug, Args)]
pub struct SubspaceArgs {
    #[command(flatten)]
    pub field: FieldArgs,

    /// Basis elements, semicolon-separated; each element is a colon-joined
    /// coordinate vector (or a plain integer when n = 1), e.g. "1:0;0:1".
    #[arg(long)]
    pub basis: String,

    /// Offset element (default: zero, i.e. a linear subspace).
    #[arg(long)]
    pub offset: Option<String>,

    /// Divisor of q - 1 classifying the logs.
    #[arg(long)]
    pub d: u64,
}

#[derive(Debug, Args)]
pub struct DigitsArgs {
    #[command(flatten)]
    pub field: FieldArgs,

    /// Divisor of q - 1 classifying the logs.
    #[arg(long)]
    pub d: u64,

    /// Basis for the digit expansion, as in `subspace` (default: the
    /// standard power basis).
    #[arg(long)]
    pub basis: Option<String>,
}
