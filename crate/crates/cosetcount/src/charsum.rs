//! Multiplicative characters of F_q* and complete character sums over
//! polynomial values, with the square-root cancellation bound check.
//!
//! Characters are indexed against the canonical generator: chi_k maps
//! theta^a to exp(2 pi i k a / (q-1)). Every character, including the
//! trivial one, is extended by chi(0) = 0, which is the convention the
//! counting identities in this crate rely on. Values are computed with
//! exact integer phase arithmetic and a shared table of roots of unity, so
//! floating-point error only enters at the final summation.

use crate::dlog;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::poly::{self, FqPoly};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Tolerance used when comparing a floating-point sum magnitude against an
/// analytic bound.
pub const MAGNITUDE_EPS: f64 = 1e-6;

/// A multiplicative character chi_k of F_q*, identified by its index k
/// modulo q - 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultChar {
    index: u64,
    order: u64,
}

impl MultChar {
    /// Character with the given index (reduced mod q - 1).
    pub fn of_index(ctx: &FieldCtx, k: u64) -> MultChar {
        let m = (ctx.q() - 1).max(1);
        let index = k % m;
        MultChar {
            index,
            order: m / crate::arith::gcd(index, m),
        }
    }

    pub fn index(&self) -> u64 {
        self.index
    }

    /// Multiplicative order of the character.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.index == 0
    }
}

/// All d characters whose order divides d: indices j (q-1)/d for j in 0..d.
/// The trivial character (j = 0) comes first. Errors unless d divides q - 1.
pub fn all_of_order_dividing(ctx: &FieldCtx, d: u64) -> Result<Vec<MultChar>> {
    dlog::check_divisor(ctx, d)?;
    let step = (ctx.q() - 1) / d;
    Ok((0..d).map(|j| MultChar::of_index(ctx, j * step)).collect())
}

/// Character-evaluation context: a field plus the precomputed (q-1)-st
/// roots of unity.
pub struct CharCtx<'a> {
    ctx: &'a FieldCtx,
    roots: Vec<Complex64>,
}

impl<'a> CharCtx<'a> {
    pub fn new(ctx: &'a FieldCtx) -> CharCtx<'a> {
        let m = (ctx.q() - 1).max(1);
        let roots = (0..m)
            .map(|t| Complex64::from_polar(1.0, TAU * t as f64 / m as f64))
            .collect();
        CharCtx { ctx, roots }
    }

    pub fn field(&self) -> &FieldCtx {
        self.ctx
    }

    /// Exact phase of chi at a nonzero rank: the t with value
    /// exp(2 pi i t / (q-1)). None at zero.
    pub fn phase_index(&self, chi: &MultChar, rank: usize) -> Option<u64> {
        let a = self.ctx.log_rank(rank)?;
        let m = (self.ctx.q() - 1).max(1);
        Some(((chi.index as u128 * a as u128) % m as u128) as u64)
    }

    /// Character value at a rank; zero maps to 0 for every character.
    #[inline]
    pub fn eval_rank(&self, chi: &MultChar, rank: usize) -> Complex64 {
        match self.phase_index(chi, rank) {
            None => Complex64::new(0.0, 0.0),
            Some(t) => self.roots[t as usize],
        }
    }

    pub fn eval(&self, chi: &MultChar, u: &FqElem) -> Complex64 {
        self.eval_rank(chi, self.ctx.rank_of(u))
    }

    /// Root of unity exp(2 pi i t / (q-1)) by exact index.
    pub fn root(&self, t: u64) -> Complex64 {
        let m = (self.ctx.q() - 1).max(1);
        self.roots[(t % m) as usize]
    }
}

/// Average over the characters of order dividing d of chi(y theta^(-a)):
/// 1 for nonzero y with log y = a (mod d), 0 for other nonzero y, and 0 at
/// y = 0 (every character kills zero).
pub fn coset_indicator(cc: &CharCtx<'_>, y_rank: usize, a: u64, d: u64) -> Result<Complex64> {
    dlog::check_divisor(cc.ctx, d)?;
    let m = (cc.ctx.q() - 1).max(1);
    let shift = cc.ctx.exp_rank((m - a % m) % m);
    let arg = cc.ctx.mul_rank(y_rank, shift);
    let mut acc = Complex64::new(0.0, 0.0);
    for chi in all_of_order_dividing(cc.ctx, d)? {
        acc += cc.eval_rank(&chi, arg);
    }
    Ok(acc / d as f64)
}

/// Complete sum of chi(F(c)) over all c in F_q.
pub fn weil_sum(cc: &CharCtx<'_>, chi: &MultChar, f: &FqPoly) -> Complex64 {
    let ranks = poly::to_ranks(cc.ctx, f);
    let mut acc = Complex64::new(0.0, 0.0);
    for c in 0..cc.ctx.q() as usize {
        acc += cc.eval_rank(chi, poly::eval_ranks(cc.ctx, &ranks, c));
    }
    acc
}

/// Outcome of checking a complete character sum against the square-root
/// cancellation bound (z - 1) sqrt(q), where z counts distinct roots of F
/// in its splitting field.
#[derive(Debug, Clone, PartialEq)]
pub struct WeilReport {
    pub sum_re: f64,
    pub sum_im: f64,
    pub magnitude: f64,
    pub distinct_roots: u64,
    pub bound: f64,
    /// The bound only applies when F is nonconstant and is not a constant
    /// times an ord(chi)-th power; a trivial character never qualifies.
    pub applicable: bool,
    /// True when the bound is inapplicable or the magnitude respects it.
    pub pass: bool,
}

/// Evaluate the sum and compare against the cancellation bound. Errors on
/// the zero polynomial.
pub fn weil_bound_check(cc: &CharCtx<'_>, chi: &MultChar, f: &FqPoly) -> Result<WeilReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let z = poly::distinct_root_count(cc.ctx, f)?;
    let nonconstant = f.degree().unwrap() >= 1;
    // ord = 1 always reports a power form, so trivial characters are
    // excluded here without a special case.
    let power_form = poly::is_power_form(cc.ctx, f, chi.order())?.is_some();
    let applicable = nonconstant && !power_form;
    let s = weil_sum(cc, chi, f);
    let magnitude = s.norm();
    let bound = (z as f64 - 1.0) * (cc.ctx.q() as f64).sqrt();
    let pass = !applicable || magnitude <= bound + MAGNITUDE_EPS;
    Ok(WeilReport {
        sum_re: s.re,
        sum_im: s.im,
        magnitude,
        distinct_roots: z,
        bound,
        applicable,
        pass,
    })
}
