//! Counting field elements by the residues of the discrete logs of their
//! polynomial images.
//!
//! For a tuple (P_1, ..., P_k) with divisors (d_1, ..., d_k) of q - 1 and a
//! residue cell c, N(c) counts the y in F_q with every P_i(y) nonzero and
//! log P_i(y) = c_i (mod d_i). Two independent routes compute it: a direct
//! sweep over the log tables, and a character-sum expansion evaluated
//! per point with exact integer phases. Their agreement is an identity,
//! not an approximation, so the two routes double-check each other; the
//! square-root deviation bound is then checked in exact integer
//! arithmetic.

use crate::charsum::CharCtx;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::indep::{cell_index_of, cell_residues_of, TupleSpec};
use crate::poly::{self, FqPoly};
use num_complex::Complex64;
use serde::Serialize;

/// Relative tolerance on the imaginary part of a character-route count.
pub const IMAG_TOL: f64 = 1e-6;

/// All cell counts from a direct sweep, plus how many points were excluded
/// because some polynomial vanished there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Distribution {
    pub q: u64,
    pub divisors: Vec<u64>,
    /// Points y with some P_i(y) = 0; they belong to no cell.
    pub excluded: u64,
    /// Cell counts indexed mixed-radix, first divisor most significant.
    pub counts: Vec<u64>,
}

impl Distribution {
    pub fn count(&self, residues: &[u64]) -> Result<u64> {
        Ok(self.counts[cell_index_of(&self.divisors, residues)? as usize])
    }

    pub fn residues_of(&self, idx: u64) -> Vec<u64> {
        cell_residues_of(&self.divisors, idx)
    }

    /// Sum of all cells; always q - excluded.
    pub fn observed_total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// One cell counted through the character expansion: the rounded count and
/// the raw complex accumulator it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellCount {
    pub residues: Vec<u64>,
    pub n: u64,
    pub raw_re: f64,
    pub raw_im: f64,
}

fn eval_tables(ctx: &FieldCtx, spec: &TupleSpec) -> Vec<Vec<usize>> {
    spec.polys().iter().map(|p| poly::to_ranks(ctx, p)).collect()
}

/// Direct count of a single cell from the log tables.
pub fn count_direct(ctx: &FieldCtx, spec: &TupleSpec, residues: &[u64]) -> Result<u64> {
    cell_index_of(spec.divisors(), residues)?;
    let ranks = eval_tables(ctx, spec);
    let mut n = 0u64;
    'outer: for y in 0..ctx.q() as usize {
        for ((rp, &d), &c) in ranks.iter().zip(spec.divisors()).zip(residues) {
            let v = poly::eval_ranks(ctx, rp, y);
            match ctx.log_rank(v) {
                Some(l) if l % d == c => {}
                _ => continue 'outer,
            }
        }
        n += 1;
    }
    Ok(n)
}

/// Direct counts for every cell in one sweep.
pub fn full_distribution(ctx: &FieldCtx, spec: &TupleSpec) -> Result<Distribution> {
    full_distribution_threads(ctx, spec, 1)
}

/// Same sweep split across worker threads; the result is identical to the
/// single-threaded one.
pub fn full_distribution_threads(
    ctx: &FieldCtx,
    spec: &TupleSpec,
    threads: usize,
) -> Result<Distribution> {
    let q = ctx.q();
    let d_total = spec.cell_count() as usize;
    let ranks = eval_tables(ctx, spec);
    let threads = threads.clamp(1, 64).min(q as usize);

    let sweep = |from: usize, to: usize| -> (Vec<u64>, u64) {
        let mut counts = vec![0u64; d_total];
        let mut excluded = 0u64;
        'outer: for y in from..to {
            let mut idx = 0u64;
            for (rp, &d) in ranks.iter().zip(spec.divisors()) {
                let v = poly::eval_ranks(ctx, rp, y);
                match ctx.log_rank(v) {
                    Some(l) => idx = idx * d + l % d,
                    None => {
                        excluded += 1;
                        continue 'outer;
                    }
                }
            }
            counts[idx as usize] += 1;
        }
        (counts, excluded)
    };

    let (counts, excluded) = if threads == 1 {
        sweep(0, q as usize)
    } else {
        let chunk = (q as usize).div_ceil(threads);
        let parts: Vec<(Vec<u64>, u64)> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let from = t * chunk;
                    let to = ((t + 1) * chunk).min(q as usize);
                    let sweep = &sweep;
                    s.spawn(move || sweep(from, to))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let mut counts = vec![0u64; d_total];
        let mut excluded = 0u64;
        for (c, e) in parts {
            for (acc, v) in counts.iter_mut().zip(c) {
                *acc += v;
            }
            excluded += e;
        }
        (counts, excluded)
    };

    Ok(Distribution {
        q,
        divisors: spec.divisors().to_vec(),
        excluded,
        counts,
    })
}

/// Indicator that log v = c (mod d), evaluated as the character average
/// (1/d) sum_j chi_j(v theta^(-c)) with exact integer phases. `log_v` is
/// the discrete log of a nonzero value.
fn char_indicator(cc: &CharCtx<'_>, m: u64, step: u64, d: u64, log_v: u64, c: u64) -> Complex64 {
    let diff = (log_v + m - c % m) % m;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..d {
        let t = ((j as u128 * step as u128) % m as u128 * diff as u128) % m as u128;
        acc += cc.root(t as u64);
    }
    acc / d as f64
}

/// Count one cell through the character expansion, never consulting a
/// direct histogram: each point contributes the product of its per-entry
/// character averages. Errors as numerically unstable if the imaginary
/// part fails to cancel.
pub fn count_via_chars(ctx: &FieldCtx, spec: &TupleSpec, residues: &[u64]) -> Result<CellCount> {
    cell_index_of(spec.divisors(), residues)?;
    let cc = CharCtx::new(ctx);
    let m = (ctx.q() - 1).max(1);
    let ranks = eval_tables(ctx, spec);
    let steps: Vec<u64> = spec.divisors().iter().map(|&d| m / d).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for y in 0..ctx.q() as usize {
        let mut prod = Complex64::new(1.0, 0.0);
        for (((rp, &d), &step), &c) in ranks.iter().zip(spec.divisors()).zip(&steps).zip(residues)
        {
            let v = poly::eval_ranks(ctx, rp, y);
            match ctx.log_rank(v) {
                Some(l) => prod *= char_indicator(&cc, m, step, d, l, c),
                None => {
                    prod = Complex64::new(0.0, 0.0);
                    break;
                }
            }
        }
        total += prod;
    }
    finish_cell(ctx, residues.to_vec(), total)
}

fn finish_cell(ctx: &FieldCtx, residues: Vec<u64>, total: Complex64) -> Result<CellCount> {
    if total.im.abs() > IMAG_TOL * ctx.q() as f64 {
        return Err(Error::NumericalInstability(format!(
            "character count imaginary part {} for cell {:?}",
            total.im, residues
        )));
    }
    Ok(CellCount {
        residues,
        n: total.re.round().max(0.0) as u64,
        raw_re: total.re,
        raw_im: total.im,
    })
}

/// Character-route counts for every cell in one sweep over the field.
pub fn char_distribution(ctx: &FieldCtx, spec: &TupleSpec) -> Result<Vec<CellCount>> {
    let cc = CharCtx::new(ctx);
    let m = (ctx.q() - 1).max(1);
    let ranks = eval_tables(ctx, spec);
    let divisors = spec.divisors();
    let steps: Vec<u64> = divisors.iter().map(|&d| m / d).collect();
    let d_total = spec.cell_count() as usize;
    let mut totals = vec![Complex64::new(0.0, 0.0); d_total];

    // Per point: the indicator value of every residue choice for every
    // entry, then the product over entries per cell.
    let mut per_entry: Vec<Vec<Complex64>> = divisors
        .iter()
        .map(|&d| vec![Complex64::new(0.0, 0.0); d as usize])
        .collect();
    for y in 0..ctx.q() as usize {
        let mut dead = false;
        for ((rp, &d), (row, &step)) in ranks
            .iter()
            .zip(divisors)
            .zip(per_entry.iter_mut().zip(&steps))
        {
            let v = poly::eval_ranks(ctx, rp, y);
            match ctx.log_rank(v) {
                Some(l) => {
                    for (c, slot) in row.iter_mut().enumerate() {
                        *slot = char_indicator(&cc, m, step, d, l, c as u64);
                    }
                }
                None => {
                    dead = true;
                    break;
                }
            }
        }
        if dead {
            continue;
        }
        for (idx, total) in totals.iter_mut().enumerate() {
            let mut prod = Complex64::new(1.0, 0.0);
            let mut rest = idx as u64;
            for (row, &d) in per_entry.iter().zip(divisors).rev() {
                prod *= row[(rest % d) as usize];
                rest /= d;
            }
            *total += prod;
        }
    }
    totals
        .into_iter()
        .enumerate()
        .map(|(idx, t)| finish_cell(ctx, cell_residues_of(divisors, idx as u64), t))
        .collect()
}

/// Exact integer form of the square-root deviation check for one cell:
/// (N D - q)^2 < z^2 q D^2, with z the number of distinct roots of the
/// product of the tuple's polynomials in its splitting field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeviationCheck {
    pub n: u64,
    pub q: u64,
    /// D = product of divisors.
    pub cells: u64,
    /// Distinct roots of prod_i P_i.
    pub z: u64,
    /// N D - q, the deviation scaled by D.
    pub h_num: i128,
    pub holds: bool,
}

/// Distinct roots (in the splitting field) of the product of the tuple's
/// polynomials.
pub fn product_distinct_roots(ctx: &FieldCtx, spec: &TupleSpec) -> Result<u64> {
    let mut prod = FqPoly::one(ctx);
    for p in spec.polys() {
        prod = poly::mul(ctx, &prod, p);
    }
    poly::distinct_root_count(ctx, &prod)
}

/// Run the exact deviation check for one counted cell.
pub fn deviation_check(ctx: &FieldCtx, spec: &TupleSpec, n: u64) -> Result<DeviationCheck> {
    let q = ctx.q();
    let cells = spec.cell_count();
    let z = product_distinct_roots(ctx, spec)?;
    let h_num = n as i128 * cells as i128 - q as i128;
    let lhs = h_num * h_num;
    let rhs = (z as i128 * z as i128) * q as i128 * (cells as i128 * cells as i128);
    Ok(DeviationCheck {
        n,
        q,
        cells,
        z,
        h_num,
        holds: lhs < rhs,
    })
}

/// Whether every cell is provably (and actually) populated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub independent: bool,
    /// Analytic threshold q > z^2 D^2 that forces every cell nonempty for
    /// an independent tuple.
    pub sufficient: bool,
    /// Both of the above: every cell is guaranteed nonempty in advance.
    pub guaranteed: bool,
    pub z: u64,
    pub min_count: u64,
    pub all_nonempty: bool,
}

pub fn positivity_check(ctx: &FieldCtx, spec: &TupleSpec) -> Result<PositivityReport> {
    let z = product_distinct_roots(ctx, spec)?;
    let d = spec.cell_count();
    let sufficient = (ctx.q() as u128) > (z as u128 * z as u128) * (d as u128 * d as u128);
    let independent = crate::indep::check_independence(ctx, spec)?.is_independent();
    let dist = full_distribution(ctx, spec)?;
    let min_count = dist.counts.iter().copied().min().unwrap_or(0);
    Ok(PositivityReport {
        independent,
        sufficient,
        guaranteed: independent && sufficient,
        z,
        min_count,
        all_nonempty: min_count >= 1,
    })
}
