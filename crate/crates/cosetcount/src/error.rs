//! Error type shared by every module in the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across field construction, polynomial
/// algebra, and the counting layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A value that must be prime is not.
    NotPrime(u64),
    /// The requested field order exceeds the configured cap.
    SizeCapExceeded { q: u64, cap: u64 },
    /// A residue-vector enumeration would exceed the configured cap.
    EnumerationCapExceeded { cells: u64, cap: u64 },
    /// Multiplicative inverse of zero requested.
    DivisionByZero,
    /// Discrete log of zero requested (undefined).
    UndefinedLog,
    /// A divisor that must divide the multiplicative group order does not.
    InvalidDivisor { d: u64, group_order: u64 },
    /// The zero polynomial was passed where a nonzero one is required.
    ZeroPolynomial,
    /// A residue vector does not match the divisor vector's shape or ranges.
    InvalidResidues(String),
    /// A claimed dependence witness does not reproduce the stated identity.
    InvalidWitness,
    /// The operation requires an independent tuple but the tuple is dependent.
    DependentTuple,
    /// An integer polynomial vanished identically under reduction mod p.
    VanishingReduction,
    /// The operation requires a squarefree integer polynomial.
    NotSquarefree,
    /// Basis vectors are linearly dependent or otherwise unusable.
    DegenerateBasis(String),
    /// A proven bound failed numerically; this indicates an implementation
    /// bug, so it is surfaced loudly instead of being folded into a flag.
    BoundViolation(String),
    /// Floating-point output drifted past its documented tolerance.
    NumericalInstability(String),
    /// Catch-all for argument validation not covered above.
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::SizeCapExceeded { q, cap } => {
                write!(f, "field order {q} exceeds the size cap {cap}")
            }
            Error::EnumerationCapExceeded { cells, cap } => {
                write!(f, "enumeration of {cells} cells exceeds the cap {cap}")
            }
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::UndefinedLog => write!(f, "discrete log of zero is undefined"),
            Error::InvalidDivisor { d, group_order } => {
                write!(f, "{d} does not divide the group order {group_order}")
            }
            Error::ZeroPolynomial => write!(f, "the zero polynomial is not allowed here"),
            Error::InvalidResidues(msg) => write!(f, "invalid residue vector: {msg}"),
            Error::InvalidWitness => write!(f, "dependence witness fails verification"),
            Error::DependentTuple => write!(f, "tuple is multiplicatively dependent"),
            Error::VanishingReduction => {
                write!(f, "polynomial vanishes identically after reduction")
            }
            Error::NotSquarefree => write!(f, "polynomial is not squarefree"),
            Error::DegenerateBasis(msg) => write!(f, "degenerate basis: {msg}"),
            Error::BoundViolation(msg) => write!(f, "verified bound failed: {msg}"),
            Error::NumericalInstability(msg) => write!(f, "numerical drift: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}
