//! Applications of the residue-counting machinery: sign quadrants of
//! polynomial values, runs of consecutive squares, primitive roots in
//! polynomial images, and discrete-log statistics over subspaces, affine
//! spaces, and digit hyperplanes.
//!
//! Every report pairs an exhaustively computed count with the exact
//! integer form of the deviation bound that predicts it, so a test can
//! check both the arithmetic and the analytic claim.

use crate::arith;
use crate::counting;
use crate::dlog;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::indep::{self, TupleSpec};
use crate::poly::{self, FqPoly};
use serde::Serialize;

// ----- sign quadrants -----

/// Square / non-square cross-tabulation of (f(y), y) over nonzero values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuadrantCounts {
    pub q: u64,
    /// counts[i][j]: i is the residue class of log f(y) mod 2, j the class
    /// of log y (0 = square, 1 = non-square).
    pub counts: [[u64; 2]; 2],
    /// Points with y = 0 or f(y) = 0.
    pub excluded: u64,
}

impl QuadrantCounts {
    /// Look up by multiplicative signs, +1 meaning square.
    pub fn by_sign(&self, f_sign: i32, y_sign: i32) -> u64 {
        self.counts[usize::from(f_sign < 0)][usize::from(y_sign < 0)]
    }
}

/// Tabulate the four sign quadrants of (f(y), y). Odd characteristic only:
/// in characteristic 2 everything is a square.
pub fn square_quadrant_counts(ctx: &FieldCtx, f: &FqPoly) -> Result<QuadrantCounts> {
    if ctx.p() == 2 {
        return Err(Error::InvalidArgument(
            "sign quadrants need odd characteristic".into(),
        ));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ranks = poly::to_ranks(ctx, f);
    let mut counts = [[0u64; 2]; 2];
    let mut excluded = 0u64;
    for y in 0..ctx.q() as usize {
        let v = poly::eval_ranks(ctx, &ranks, y);
        match (ctx.log_rank(v), ctx.log_rank(y)) {
            (Some(lv), Some(ly)) => counts[(lv % 2) as usize][(ly % 2) as usize] += 1,
            _ => excluded += 1,
        }
    }
    Ok(QuadrantCounts {
        q: ctx.q(),
        counts,
        excluded,
    })
}

// ----- consecutive squares -----

/// Search outcome for runs y, y+1, ..., y+t-1 of nonzero squares.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsecSquareReport {
    pub t: u64,
    pub q: u64,
    /// Number of starting points whose whole run consists of nonzero
    /// squares.
    pub count: u64,
    /// Rank of the first such starting point, if any.
    pub found_at: Option<u64>,
    /// The tuple (x, x+1, ..., x+t-1) is independent and q clears the
    /// positivity threshold, so a run was certain in advance.
    pub guaranteed: bool,
}

/// Count and locate runs of t consecutive squares. Requires q odd (d = 2
/// must divide q - 1); t is capped only by the cell budget, but note that
/// shifts repeat once t exceeds the characteristic.
pub fn consecutive_square_search(ctx: &FieldCtx, t: u64) -> Result<ConsecSquareReport> {
    if t == 0 {
        return Err(Error::InvalidArgument("run length must be >= 1".into()));
    }
    let polys: Vec<FqPoly> = (0..t)
        .map(|i| FqPoly::from_coeffs(vec![ctx.scalar(i), ctx.one()]))
        .collect();
    let spec = TupleSpec::new(ctx, polys, vec![2; t as usize])?;
    let dist = counting::full_distribution(ctx, &spec)?;
    let count = dist.counts[0];
    let z = counting::product_distinct_roots(ctx, &spec)?;
    let d = spec.cell_count();
    let sufficient = (ctx.q() as u128) > (z as u128 * z as u128) * (d as u128 * d as u128);
    let independent = indep::check_independence(ctx, &spec)?.is_independent();

    let mut found_at = None;
    'outer: for y in 0..ctx.q() as usize {
        let mut v = y;
        for _ in 0..t {
            match ctx.log_rank(v) {
                Some(l) if l % 2 == 0 => {}
                _ => continue 'outer,
            }
            v = ctx.add_rank(v, ctx.rank_of(&ctx.one()));
        }
        found_at = Some(y as u64);
        break;
    }
    Ok(ConsecSquareReport {
        t,
        q: ctx.q(),
        count,
        found_at,
        guaranteed: independent && sufficient,
    })
}

// ----- primitive roots in polynomial images -----

/// Census of primitive roots among the values of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimRootReport {
    pub q: u64,
    /// Number of y with f(y) a generator of the multiplicative group.
    pub count: u64,
    /// phi(q - 1): the number of generators.
    pub phi: u64,
    /// Number of distinct primes dividing q - 1.
    pub s: u32,
    /// Distinct roots of f in its splitting field.
    pub z: u64,
    /// The deviation bound applies: f nonconstant and the gcd of its
    /// factorization multiplicities is coprime to q - 1.
    pub applicable: bool,
    /// Exact check (count (q-1) - q phi)^2 < 4^s z^2 q (q-1)^2, when
    /// applicable.
    pub bound_holds: Option<bool>,
}

fn is_primitive(ctx: &FieldCtx, rank: usize) -> bool {
    match ctx.log_rank(rank) {
        Some(l) => arith::gcd(l, ctx.q() - 1) == 1,
        None => false,
    }
}

/// Count the y with f(y) a primitive root, and run the exact deviation
/// check against the phi(q-1)/(q-1) density when it applies.
pub fn primitive_root_image_count(ctx: &FieldCtx, f: &FqPoly) -> Result<PrimRootReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let q = ctx.q();
    let m = q - 1;
    let ranks = poly::to_ranks(ctx, f);
    let mut count = 0u64;
    for y in 0..q as usize {
        if is_primitive(ctx, poly::eval_ranks(ctx, &ranks, y)) {
            count += 1;
        }
    }
    let phi = arith::euler_phi(m.max(1))?;
    let s = arith::prime_divisors(m).len() as u32;
    let z = poly::distinct_root_count(ctx, f)?;
    let fac = poly::factorize(ctx, f)?;
    let mult_gcd = fac
        .factors
        .iter()
        .fold(0u64, |g, &(_, m)| arith::gcd(g, m as u64));
    let applicable = f.degree().unwrap() >= 1 && arith::gcd(mult_gcd, m.max(1)) == 1;
    let bound_holds = applicable.then(|| {
        let lhs = count as i128 * m as i128 - q as i128 * phi as i128;
        let rhs = (1i128 << (2 * s)) * (z as i128 * z as i128) * q as i128
            * (m as i128 * m as i128);
        lhs * lhs < rhs
    });
    Ok(PrimRootReport {
        q,
        count,
        phi,
        s,
        z,
        applicable,
        bound_holds,
    })
}

/// The same census through Moebius inclusion-exclusion over the squarefree
/// divisors of q - 1: count = sum_w mu(w) N_w, with N_w the number of y
/// whose value is a nonzero w-th power. This identity is combinatorial and
/// holds for every polynomial.
pub fn primitive_root_inclusion_exclusion(ctx: &FieldCtx, f: &FqPoly) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let m = (ctx.q() - 1).max(1);
    let ranks = poly::to_ranks(ctx, f);
    let mut total = 0i64;
    for w in arith::divisors(arith::radical(m)) {
        let mu = arith::moebius(w)?;
        if mu == 0 {
            continue;
        }
        let mut n_w = 0i64;
        for y in 0..ctx.q() as usize {
            if let Some(l) = ctx.log_rank(poly::eval_ranks(ctx, &ranks, y)) {
                if l % w == 0 {
                    n_w += 1;
                }
            }
        }
        total += mu * n_w;
    }
    Ok(total)
}

// ----- affine spaces, subspace polynomials, digit hyperplanes -----

/// An affine F_p-subspace of F_q: offset + span of an independent basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineSpace {
    offset: FqElem,
    basis: Vec<FqElem>,
}

/// Reduce a set of coordinate vectors mod p, returning its rank.
fn fp_rank(p: u64, rows: &mut [Vec<u64>]) -> usize {
    let n = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] % p != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = arith::pow_mod(rows[rank][col] % p, p - 2, p);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] % p != 0 {
                let factor = arith::mul_mod(row[col] % p, inv, p);
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    let sub = arith::mul_mod(factor, pv % p, p);
                    *x = (*x % p + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

impl AffineSpace {
    /// Validates that the basis is F_p-linearly independent.
    pub fn new(ctx: &FieldCtx, offset: FqElem, basis: Vec<FqElem>) -> Result<AffineSpace> {
        if basis.len() > ctx.n() as usize {
            return Err(Error::DegenerateBasis(format!(
                "{} vectors cannot be independent in dimension {}",
                basis.len(),
                ctx.n()
            )));
        }
        let mut rows: Vec<Vec<u64>> = basis.iter().map(|b| b.coeffs().to_vec()).collect();
        if !rows.is_empty() && fp_rank(ctx.p(), &mut rows) < basis.len() {
            return Err(Error::DegenerateBasis(
                "basis vectors are linearly dependent".into(),
            ));
        }
        Ok(AffineSpace { offset, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn offset(&self) -> &FqElem {
        &self.offset
    }

    pub fn basis(&self) -> &[FqElem] {
        &self.basis
    }

    pub fn is_linear(&self) -> bool {
        self.offset.is_zero()
    }

    pub fn size(&self, ctx: &FieldCtx) -> u64 {
        ctx.p().pow(self.basis.len() as u32)
    }

    /// Ranks of all p^t points, in mixed-radix coefficient order.
    pub fn element_ranks(&self, ctx: &FieldCtx) -> Vec<usize> {
        let p = ctx.p();
        let base: Vec<usize> = self.basis.iter().map(|b| ctx.rank_of(b)).collect();
        let mut out = Vec::with_capacity(self.size(ctx) as usize);
        let mut digits = vec![0u64; base.len()];
        loop {
            let mut v = ctx.rank_of(&self.offset);
            for (&c, &b) in digits.iter().zip(&base) {
                let scaled = ctx.mul_rank(ctx.rank_of(&ctx.scalar(c)), b);
                v = ctx.add_rank(v, scaled);
            }
            out.push(v);
            let mut i = digits.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                digits[i] += 1;
                if digits[i] < p {
                    break;
                }
                digits[i] = 0;
            }
        }
    }
}

/// Basis {1, s, ..., s^(r-1)} of the subfield F_{p^r}, where s is the
/// canonical generator's (q-1)/(p^r-1)-th power. Errors unless r divides
/// the extension degree.
pub fn subfield_basis(ctx: &FieldCtx, r: u32) -> Result<Vec<FqElem>> {
    if r == 0 || ctx.n() % r != 0 {
        return Err(Error::InvalidArgument(format!(
            "subfield degree {r} does not divide {}",
            ctx.n()
        )));
    }
    let sub_order = ctx.p().pow(r) - 1;
    let s = ctx.elem_of(ctx.exp_rank((ctx.q() - 1) / sub_order));
    let mut basis = Vec::with_capacity(r as usize);
    let mut acc = ctx.one();
    for _ in 0..r {
        basis.push(acc.clone());
        acc = ctx.mul(&acc, &s);
    }
    Ok(basis)
}

/// Product of (x - v) over an explicit set of ranks.
pub fn annihilator_of_set(ctx: &FieldCtx, ranks: &[usize]) -> FqPoly {
    let mut acc = FqPoly::one(ctx);
    for &r in ranks {
        let lin = FqPoly::from_coeffs(vec![ctx.neg(&ctx.elem_of(r)), ctx.one()]);
        acc = poly::mul(ctx, &acc, &lin);
    }
    acc
}

/// The monic annihilator of a linear subspace: prod_{v in V} (x - v).
/// Requires a zero offset; the result is linearized (only p-power
/// exponents appear).
pub fn subspace_poly(ctx: &FieldCtx, space: &AffineSpace) -> Result<FqPoly> {
    if !space.is_linear() {
        return Err(Error::InvalidArgument(
            "subspace polynomial needs a zero offset".into(),
        ));
    }
    Ok(annihilator_of_set(ctx, &space.element_ranks(ctx)))
}

/// Whether only exponents 1, p, p^2, ... carry nonzero coefficients.
pub fn is_linearized(p: u64, f: &FqPoly) -> bool {
    f.coeffs().iter().enumerate().all(|(i, c)| {
        if c.is_zero() {
            return true;
        }
        let mut e = i as u64;
        if e == 0 {
            return false;
        }
        while e % p == 0 {
            e /= p;
        }
        e == 1
    })
}

/// Sorted, deduplicated ranks of the image f(F_q).
pub fn image_of(ctx: &FieldCtx, f: &FqPoly) -> Vec<usize> {
    let ranks = poly::to_ranks(ctx, f);
    let mut out: Vec<usize> = (0..ctx.q() as usize)
        .map(|y| poly::eval_ranks(ctx, &ranks, y))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Discrete-log residue census over an affine space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubspaceDistribution {
    pub q: u64,
    pub d: u64,
    pub dim: u32,
    /// p^dim, the number of points.
    pub size: u64,
    /// counts[a] = points v with v nonzero and log v = a (mod d).
    pub counts: Vec<u64>,
    /// 1 when the space contains 0, else 0.
    pub excluded: u64,
    /// Exact check (counts[a] d - size)^2 < q d^2 for every class a.
    pub bounds_hold: bool,
}

/// Count the points of an affine space in each log-residue class mod d and
/// check every class against the square-root deviation bound.
pub fn subspace_log_distribution(
    ctx: &FieldCtx,
    space: &AffineSpace,
    d: u64,
) -> Result<SubspaceDistribution> {
    dlog::check_divisor(ctx, d)?;
    let mut counts = vec![0u64; d as usize];
    let mut excluded = 0u64;
    for v in space.element_ranks(ctx) {
        match ctx.log_rank(v) {
            Some(l) => counts[(l % d) as usize] += 1,
            None => excluded += 1,
        }
    }
    let size = space.size(ctx);
    let q = ctx.q();
    let bounds_hold = counts.iter().all(|&c| {
        let lhs = c as i128 * d as i128 - size as i128;
        lhs * lhs < q as i128 * (d as i128 * d as i128)
    });
    Ok(SubspaceDistribution {
        q,
        d,
        dim: space.dim() as u32,
        size,
        counts,
        excluded,
        bounds_hold,
    })
}

// ----- digit hyperplanes -----

/// A basis of F_q over F_p with the change-of-basis matrix to read off
/// digits of arbitrary elements.
#[derive(Debug, Clone)]
pub struct DigitBasis {
    basis: Vec<FqElem>,
    /// Inverse of the column matrix of basis coordinates, mod p.
    inv: Vec<Vec<u64>>,
}

fn invert_matrix_mod_p(p: u64, m: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m.iter().map(|row| row.to_vec()).collect();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] % p != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let pinv = arith::pow_mod(a[col][col] % p, p - 2, p);
        for j in 0..n {
            a[col][j] = arith::mul_mod(a[col][j] % p, pinv, p);
            inv[col][j] = arith::mul_mod(inv[col][j] % p, pinv, p);
        }
        for r in 0..n {
            if r != col && a[r][col] % p != 0 {
                let f = a[r][col] % p;
                for j in 0..n {
                    let s1 = arith::mul_mod(f, a[col][j], p);
                    a[r][j] = (a[r][j] + p - s1) % p;
                    let s2 = arith::mul_mod(f, inv[col][j], p);
                    inv[r][j] = (inv[r][j] + p - s2) % p;
                }
            }
        }
    }
    Some(inv)
}

impl DigitBasis {
    /// A full basis of n vectors; errors when they are dependent.
    pub fn new(ctx: &FieldCtx, basis: Vec<FqElem>) -> Result<DigitBasis> {
        let n = ctx.n() as usize;
        if basis.len() != n {
            return Err(Error::DegenerateBasis(format!(
                "need exactly {n} basis vectors"
            )));
        }
        // Column matrix of coordinates.
        let m: Vec<Vec<u64>> = (0..n)
            .map(|i| basis.iter().map(|b| b.coeffs()[i]).collect())
            .collect();
        let inv = invert_matrix_mod_p(ctx.p(), &m)
            .ok_or_else(|| Error::DegenerateBasis("basis matrix is singular".into()))?;
        Ok(DigitBasis { basis, inv })
    }

    /// The coordinate basis 1, alpha, ..., alpha^(n-1).
    pub fn standard(ctx: &FieldCtx) -> DigitBasis {
        let n = ctx.n() as usize;
        let basis = (0..n)
            .map(|i| {
                let mut coeffs = vec![0u64; n];
                coeffs[i] = 1;
                ctx.elem(&coeffs).expect("valid coordinates")
            })
            .collect();
        DigitBasis::new(ctx, basis).expect("standard basis is independent")
    }

    pub fn basis(&self) -> &[FqElem] {
        &self.basis
    }

    /// Digits of v in this basis: v = sum digits[j] * basis[j].
    pub fn digits(&self, ctx: &FieldCtx, v: &FqElem) -> Vec<u64> {
        let p = ctx.p();
        self.inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v.coeffs())
                    .fold(0u64, |acc, (&m, &c)| (acc + arith::mul_mod(m, c, p)) % p)
            })
            .collect()
    }

    /// Integer sum of the digits (not reduced mod p).
    pub fn digit_sum(&self, ctx: &FieldCtx, v: &FqElem) -> u64 {
        self.digits(ctx, v).iter().sum()
    }
}

/// Log-residue census over a digit hyperplane.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DigitClassReport {
    pub q: u64,
    pub d: u64,
    /// The linear functional on digits that cuts the hyperplane.
    pub functional: Vec<u64>,
    pub value: u64,
    /// p^(n-1), the number of points on the hyperplane.
    pub hyperplane_size: u64,
    pub counts: Vec<u64>,
    pub excluded: u64,
    /// Non-strict exact check (counts[a] d - size)^2 <= q d^2 for every a.
    pub bounds_hold: bool,
}

/// Count log residues mod d over the hyperplane where a nonzero F_p-linear
/// functional of the digits takes a fixed value.
pub fn digit_hyperplane_counts(
    ctx: &FieldCtx,
    basis: &DigitBasis,
    functional: &[u64],
    value: u64,
    d: u64,
) -> Result<DigitClassReport> {
    dlog::check_divisor(ctx, d)?;
    let p = ctx.p();
    let n = ctx.n() as usize;
    if functional.len() != n || functional.iter().all(|&c| c % p == 0) {
        return Err(Error::InvalidArgument(
            "functional must have length n and not vanish mod p".into(),
        ));
    }
    if value >= p {
        return Err(Error::InvalidArgument("target value must lie in 0..p".into()));
    }
    let mut counts = vec![0u64; d as usize];
    let mut excluded = 0u64;
    let mut on_plane = 0u64;
    for r in 0..ctx.q() as usize {
        let v = ctx.elem_of(r);
        let dot = basis
            .digits(ctx, &v)
            .iter()
            .zip(functional)
            .fold(0u64, |acc, (&dg, &fc)| (acc + arith::mul_mod(dg, fc, p)) % p);
        if dot != value {
            continue;
        }
        on_plane += 1;
        match ctx.log_rank(r) {
            Some(l) => counts[(l % d) as usize] += 1,
            None => excluded += 1,
        }
    }
    let size = ctx.q() / p;
    debug_assert_eq!(on_plane, size);
    let bounds_hold = counts.iter().all(|&c| {
        let lhs = c as i128 * d as i128 - size as i128;
        lhs * lhs <= ctx.q() as i128 * (d as i128 * d as i128)
    });
    Ok(DigitClassReport {
        q: ctx.q(),
        d,
        functional: functional.to_vec(),
        value,
        hyperplane_size: size,
        counts,
        excluded,
        bounds_hold,
    })
}

/// Census over the hyperplane where digit `pos` equals `value`.
pub fn digit_position_counts(
    ctx: &FieldCtx,
    basis: &DigitBasis,
    pos: usize,
    value: u64,
    d: u64,
) -> Result<DigitClassReport> {
    if pos >= ctx.n() as usize {
        return Err(Error::InvalidArgument(format!(
            "digit position {pos} out of range"
        )));
    }
    let mut functional = vec![0u64; ctx.n() as usize];
    functional[pos] = 1;
    digit_hyperplane_counts(ctx, basis, &functional, value, d)
}

/// Census over the hyperplane where the digit sum mod p equals `value`.
pub fn digit_sum_counts(
    ctx: &FieldCtx,
    basis: &DigitBasis,
    value: u64,
    d: u64,
) -> Result<DigitClassReport> {
    let functional = vec![1u64; ctx.n() as usize];
    digit_hyperplane_counts(ctx, basis, &functional, value, d)
}
