//! Exhaustive verification toolkit for the distribution of discrete
//! logarithms of polynomial values over finite fields.
//!
//! The crate builds small finite fields with full log/exp tables, factors
//! polynomials over them, and counts how the values of polynomial tuples
//! fall into residue classes of their discrete logs modulo divisors of
//! q - 1. Counts are computed by two independent routes (direct table
//! sweeps and per-point character sums) and checked against square-root
//! deviation bounds in exact integer arithmetic. On top of that sit four
//! applications: sign quadrants of polynomial values, runs of consecutive
//! squares, primitive roots in polynomial images, and log statistics over
//! subspaces and digit hyperplanes.
//!
//! Everything is deterministic: fields pick a canonical modulus and
//! generator, factorization uses a fixed seed, and enumeration orders are
//! specified, so results are reproducible bit for bit.

pub mod apps;
pub mod arith;
pub mod charsum;
pub mod counting;
pub mod dlog;
pub mod error;
pub mod field;
pub mod indep;
pub mod intpoly;
pub mod poly;

pub use charsum::{CharCtx, MultChar, WeilReport};
pub use counting::{CellCount, DeviationCheck, Distribution, PositivityReport};
pub use error::{Error, Result};
pub use field::{FieldCtx, FieldDescriptor, FieldSpec, FqElem};
pub use indep::{DependenceWitness, IdentityReport, IndepVerdict, TupleSpec};
pub use intpoly::{ReducedPoly, ZPoly};
pub use poly::{Factorization, FqPoly};
