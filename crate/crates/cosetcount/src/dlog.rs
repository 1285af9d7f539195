//! Discrete logarithms to the canonical generator, and their residues
//! modulo divisors of the group order.
//!
//! The log of a nonzero u is the unique i in 0..q-1 with theta^i = u; zero
//! has no log. Residues mod d are only meaningful when d divides q - 1,
//! which every entry point validates.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};

/// Sentinel for "no logarithm" (the zero element) in rank-indexed tables.
pub const LOG_UNDEF: u32 = u32::MAX;

/// Discrete log of u base theta. Errors on zero.
pub fn log(ctx: &FieldCtx, u: &FqElem) -> Result<u64> {
    ctx.log_rank(ctx.rank_of(u)).ok_or(Error::UndefinedLog)
}

/// Validate that d is a positive divisor of the multiplicative group order.
pub fn check_divisor(ctx: &FieldCtx, d: u64) -> Result<()> {
    let m = ctx.q() - 1;
    if d == 0 || (m > 0 && m % d != 0) || (m == 0 && d != 1) {
        return Err(Error::InvalidDivisor { d, group_order: m });
    }
    Ok(())
}

/// Discrete log of u reduced mod d, for d a divisor of q - 1.
pub fn log_mod(ctx: &FieldCtx, u: &FqElem, d: u64) -> Result<u64> {
    check_divisor(ctx, d)?;
    Ok(log(ctx, u)? % d)
}

/// Rank-indexed table of logs mod d, with LOG_UNDEF at the zero element.
/// This is the fast path for whole-field sweeps.
pub fn log_mod_table(ctx: &FieldCtx, d: u64) -> Result<Vec<u32>> {
    check_divisor(ctx, d)?;
    let q = ctx.q() as usize;
    let mut table = vec![LOG_UNDEF; q];
    for (r, slot) in table.iter_mut().enumerate().skip(1) {
        let l = ctx.log_rank(r).expect("nonzero rank has a log");
        *slot = (l % d) as u32;
    }
    Ok(table)
}
