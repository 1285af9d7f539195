//! Dense univariate polynomials over a finite field.
//!
//! Coefficients are stored low degree first and kept normalized (no trailing
//! zeros); the zero polynomial is the empty vector and reports degree `None`.
//! Factorization runs squarefree decomposition (with the characteristic-p
//! p-th-root branch), then distinct-degree splitting, then randomized
//! equal-degree splitting from a fixed internal seed; the returned factor
//! list is canonically ordered, so the whole pipeline is deterministic.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Seed for equal-degree splitting; fixed so factorization is reproducible.
const EDF_SEED: u64 = 0x5eed_c0de_2026_0001;

/// Polynomial over F_q, low degree first, normalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqPoly {
    coeffs: Vec<FqElem>,
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqPoly {
    /// Degree first, then the coefficient vector lexicographically
    /// (constant coefficient compared first).
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl FqPoly {
    pub fn zero() -> FqPoly {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn one(ctx: &FieldCtx) -> FqPoly {
        FqPoly::from_scalars(ctx, &[1])
    }

    pub fn x(ctx: &FieldCtx) -> FqPoly {
        FqPoly::from_scalars(ctx, &[0, 1])
    }

    pub fn constant(c: FqElem) -> FqPoly {
        FqPoly::from_coeffs(vec![c])
    }

    /// From explicit coefficients, low degree first (normalizes).
    pub fn from_coeffs(coeffs: Vec<FqElem>) -> FqPoly {
        let mut p = FqPoly { coeffs };
        p.normalize();
        p
    }

    /// From integer coefficients via the prime-subfield embedding. This is
    /// how one polynomial with small integer coefficients is reinterpreted
    /// over any field in a sweep.
    pub fn from_scalars(ctx: &FieldCtx, coeffs: &[u64]) -> FqPoly {
        FqPoly::from_coeffs(coeffs.iter().map(|&c| ctx.scalar(c)).collect())
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored length).
    pub fn coeff(&self, ctx: &FieldCtx, i: usize) -> FqElem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn leading(&self) -> Option<&FqElem> {
        self.coeffs.last()
    }

    pub fn is_one(&self, ctx: &FieldCtx) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == ctx.one()
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            let scalar_one = cs == "1";
            match (i, scalar_one) {
                (0, _) => write!(f, "{cs}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "({cs})*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "({cs})*x^{i}")?,
            }
        }
        Ok(())
    }
}

// ----- ring operations -----

pub fn add(ctx: &FieldCtx, a: &FqPoly, b: &FqPoly) -> FqPoly {
    let n = a.coeffs.len().max(b.coeffs.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero());
        let y = b.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero());
        out.push(ctx.add(&x, &y));
    }
    FqPoly::from_coeffs(out)
}

pub fn neg(ctx: &FieldCtx, a: &FqPoly) -> FqPoly {
    FqPoly::from_coeffs(a.coeffs.iter().map(|c| ctx.neg(c)).collect())
}

pub fn sub(ctx: &FieldCtx, a: &FqPoly, b: &FqPoly) -> FqPoly {
    add(ctx, a, &neg(ctx, b))
}

pub fn mul(ctx: &FieldCtx, a: &FqPoly, b: &FqPoly) -> FqPoly {
    if a.is_zero() || b.is_zero() {
        return FqPoly::zero();
    }
    let mut out = vec![ctx.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.coeffs.iter().enumerate() {
            out[i + j] = ctx.add(&out[i + j], &ctx.mul(x, y));
        }
    }
    FqPoly::from_coeffs(out)
}

pub fn scale(ctx: &FieldCtx, a: &FqPoly, c: &FqElem) -> FqPoly {
    FqPoly::from_coeffs(a.coeffs.iter().map(|x| ctx.mul(x, c)).collect())
}

/// Quotient and remainder; errors if `b` is zero.
pub fn div_rem(ctx: &FieldCtx, a: &FqPoly, b: &FqPoly) -> Result<(FqPoly, FqPoly)> {
    if b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let db = b.degree().unwrap();
    let da = match a.degree() {
        Some(d) if d >= db => d,
        _ => return Ok((FqPoly::zero(), a.clone())),
    };
    let lc_inv = ctx.inv(b.leading().unwrap())?;
    let mut r = a.coeffs.clone();
    let mut q = vec![ctx.zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = ctx.mul(&r[db + k], &lc_inv);
        if c.is_zero() {
            continue;
        }
        q[k] = c.clone();
        for (j, bj) in b.coeffs.iter().enumerate() {
            r[k + j] = ctx.sub(&r[k + j], &ctx.mul(&c, bj));
        }
    }
    r.truncate(db);
    Ok((FqPoly::from_coeffs(q), FqPoly::from_coeffs(r)))
}

/// Remainder of `a` mod `b`; errors if `b` is zero.
pub fn rem(ctx: &FieldCtx, a: &FqPoly, b: &FqPoly) -> Result<FqPoly> {
    Ok(div_rem(ctx, a, b)?.1)
}

/// Split off the leading coefficient: (unit, monic part). Zero is (1, 0) by
/// convention so callers need not special-case it.
pub fn monic(ctx: &FieldCtx, a: &FqPoly) -> (FqElem, FqPoly) {
    match a.leading() {
        None => (ctx.one(), FqPoly::zero()),
        Some(lc) => {
            let inv = ctx.inv(lc).expect("leading coefficient is nonzero");
            (lc.clone(), scale(ctx, a, &inv))
        }
    }
}

/// Monic gcd; gcd(0, 0) = 0 and gcd(f, 0) is the monic multiple of f.
pub fn gcd(ctx: &FieldCtx, a: &FqPoly, b: &FqPoly) -> FqPoly {
    let mut f = a.clone();
    let mut g = b.clone();
    while !g.is_zero() {
        let (_, gm) = monic(ctx, &g);
        let r = rem(ctx, &f, &gm).expect("gm nonzero");
        f = gm;
        g = r;
    }
    monic(ctx, &f).1
}

/// Horner evaluation.
pub fn eval(ctx: &FieldCtx, f: &FqPoly, x: &FqElem) -> FqElem {
    let mut acc = ctx.zero();
    for c in f.coeffs.iter().rev() {
        acc = ctx.add(&ctx.mul(&acc, x), c);
    }
    acc
}

/// t-th formal derivative.
pub fn derivative(ctx: &FieldCtx, f: &FqPoly, t: u32) -> FqPoly {
    let mut cur = f.clone();
    for _ in 0..t {
        if cur.coeffs.len() <= 1 {
            return FqPoly::zero();
        }
        let mut out = Vec::with_capacity(cur.coeffs.len() - 1);
        for (i, c) in cur.coeffs.iter().enumerate().skip(1) {
            out.push(ctx.mul(&ctx.scalar(i as u64 % ctx.p()), c));
        }
        cur = FqPoly::from_coeffs(out);
    }
    cur
}

/// f^e by square-and-multiply (f^0 = 1).
pub fn pow(ctx: &FieldCtx, f: &FqPoly, mut e: u64) -> FqPoly {
    let mut acc = FqPoly::one(ctx);
    let mut base = f.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(ctx, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(ctx, &base, &base);
        }
    }
    acc
}

/// Composition f(g(x)) by Horner over f's coefficients.
pub fn compose(ctx: &FieldCtx, f: &FqPoly, g: &FqPoly) -> FqPoly {
    let mut acc = FqPoly::zero();
    for c in f.coeffs.iter().rev() {
        acc = mul(ctx, &acc, g);
        acc = add(ctx, &acc, &FqPoly::constant(c.clone()));
    }
    acc
}

/// Shifted polynomial f(x + s).
pub fn shift(ctx: &FieldCtx, f: &FqPoly, s: &FqElem) -> FqPoly {
    let xs = FqPoly::from_coeffs(vec![s.clone(), ctx.one()]);
    compose(ctx, f, &xs)
}

// ----- rank-level helpers for whole-field sweeps -----

/// Coefficient ranks of f, low degree first (empty for zero).
pub fn to_ranks(ctx: &FieldCtx, f: &FqPoly) -> Vec<usize> {
    f.coeffs.iter().map(|c| ctx.rank_of(c)).collect()
}

/// Horner evaluation on ranks; the fast path for field sweeps.
#[inline]
pub fn eval_ranks(ctx: &FieldCtx, coeff_ranks: &[usize], y: usize) -> usize {
    let mut acc = 0usize;
    for &c in coeff_ranks.iter().rev() {
        acc = ctx.add_rank(ctx.mul_rank(acc, y), c);
    }
    acc
}

// ----- factorization pipeline -----

/// Complete factorization: unit times monic irreducibles with
/// multiplicities, canonically ordered by (degree, coefficient vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(FqPoly, u32)>,
}

impl Factorization {
    /// Multiply the factorization back out (test / verification aid).
    pub fn reassemble(&self, ctx: &FieldCtx) -> FqPoly {
        let mut acc = FqPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = mul(ctx, &acc, &pow(ctx, f, *m as u64));
        }
        acc
    }
}

/// p-th root of a polynomial whose derivative vanishes (all exponents are
/// multiples of p): maps sum a_i x^(p i) to sum a_i^(q/p) x^i.
fn pth_root(ctx: &FieldCtx, f: &FqPoly) -> FqPoly {
    let p = ctx.p() as usize;
    let e = ctx.q() / ctx.p();
    let mut out = Vec::with_capacity(f.coeffs.len() / p + 1);
    for (i, c) in f.coeffs.iter().enumerate() {
        if i % p == 0 {
            out.push(ctx.pow(c, e));
        } else {
            debug_assert!(c.is_zero(), "nonzero coefficient off the p-grid");
        }
    }
    FqPoly::from_coeffs(out)
}

/// Squarefree decomposition of a monic polynomial of degree >= 1: pairwise
/// coprime monic squarefree parts with their multiplicities, merged so each
/// multiplicity appears once, sorted by multiplicity.
pub fn squarefree_decomposition(ctx: &FieldCtx, f: &FqPoly) -> Vec<(FqPoly, u32)> {
    let mut parts: BTreeMap<u32, FqPoly> = BTreeMap::new();
    sqf_inner(ctx, f, 1, &mut parts);
    parts.into_iter().map(|(m, g)| (g, m)).collect()
}

fn sqf_inner(ctx: &FieldCtx, f: &FqPoly, outer: u32, parts: &mut BTreeMap<u32, FqPoly>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let push = |ctx: &FieldCtx, g: FqPoly, m: u32, parts: &mut BTreeMap<u32, FqPoly>| {
        if g.degree().unwrap_or(0) >= 1 {
            parts
                .entry(m)
                .and_modify(|acc| *acc = mul(ctx, acc, &g))
                .or_insert(g);
        }
    };
    let fp = derivative(ctx, f, 1);
    if fp.is_zero() {
        // Every exponent is a multiple of p: take the p-th root and recurse.
        let root = pth_root(ctx, f);
        let mut sub = BTreeMap::new();
        sqf_inner(ctx, &root, 1, &mut sub);
        for (m, g) in sub {
            push(ctx, g, m * ctx.p() as u32 * outer, parts);
        }
        return;
    }
    let mut c = gcd(ctx, f, &fp);
    let mut w = div_rem(ctx, f, &c).expect("gcd divides f").0;
    let mut i = 1u32;
    while !w.is_one(ctx) {
        let y = gcd(ctx, &w, &c);
        let z = div_rem(ctx, &w, &y).expect("y divides w").0;
        push(ctx, z, i * outer, parts);
        w = y;
        c = div_rem(ctx, &c, &w).expect("w divides c").0;
        i += 1;
    }
    if !c.is_one(ctx) {
        // The leftover is a p-th power.
        let root = pth_root(ctx, &c);
        let mut sub = BTreeMap::new();
        sqf_inner(ctx, &root, 1, &mut sub);
        for (m, g) in sub {
            push(ctx, g, m * ctx.p() as u32 * outer, parts);
        }
    }
}

/// x^(q^k) mod h by iterated q-th powers.
fn frobenius_mod(ctx: &FieldCtx, start: &FqPoly, h: &FqPoly) -> FqPoly {
    powmod_u64(ctx, start, ctx.q(), h)
}

fn powmod_u64(ctx: &FieldCtx, base: &FqPoly, mut e: u64, m: &FqPoly) -> FqPoly {
    let mut acc = FqPoly::one(ctx);
    let mut b = rem(ctx, base, m).expect("modulus nonzero");
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(ctx, &mul(ctx, &acc, &b), m).unwrap();
        }
        b = rem(ctx, &mul(ctx, &b, &b), m).unwrap();
        e >>= 1;
    }
    acc
}

fn powmod_big(ctx: &FieldCtx, base: &FqPoly, e: &BigUint, m: &FqPoly) -> FqPoly {
    let mut acc = FqPoly::one(ctx);
    let mut b = rem(ctx, base, m).expect("modulus nonzero");
    for i in 0..e.bits() {
        if e.bit(i) {
            acc = rem(ctx, &mul(ctx, &acc, &b), m).unwrap();
        }
        if i + 1 < e.bits() {
            b = rem(ctx, &mul(ctx, &b, &b), m).unwrap();
        }
    }
    acc
}

/// Distinct-degree splitting of a monic squarefree polynomial: returns
/// (d, product of all irreducible factors of degree d) with d increasing.
fn distinct_degree_split(ctx: &FieldCtx, f: &FqPoly) -> Vec<(usize, FqPoly)> {
    let mut out = Vec::new();
    let mut h = f.clone();
    let x = FqPoly::x(ctx);
    let mut r = rem(ctx, &x, &h).unwrap_or_else(|_| x.clone());
    let mut d = 0usize;
    while h.degree().unwrap_or(0) >= 1 {
        d += 1;
        if 2 * d > h.degree().unwrap() {
            // Whatever is left is a single irreducible.
            out.push((h.degree().unwrap(), h.clone()));
            break;
        }
        r = frobenius_mod(ctx, &r, &h);
        let g = gcd(ctx, &sub(ctx, &r, &x), &h);
        if g.degree().unwrap_or(0) >= 1 {
            out.push((d, g.clone()));
            h = div_rem(ctx, &h, &g).expect("g divides h").0;
            if h.degree().unwrap_or(0) == 0 {
                break;
            }
            r = rem(ctx, &r, &h).unwrap();
        }
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting: `f` is a monic squarefree
/// product of irreducibles all of degree `d`.
fn equal_degree_split(
    ctx: &FieldCtx,
    f: &FqPoly,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<FqPoly>,
) {
    let deg = f.degree().unwrap();
    if deg == d {
        out.push(f.clone());
        return;
    }
    let q = ctx.q();
    loop {
        // Random nonconstant polynomial of degree < deg.
        let coeffs: Vec<FqElem> = (0..deg)
            .map(|_| ctx.elem_of(rng.gen_range(0..q) as usize))
            .collect();
        let a = FqPoly::from_coeffs(coeffs);
        if a.degree().unwrap_or(0) < 1 {
            continue;
        }
        let g1 = gcd(ctx, &a, f);
        let split = if g1.degree().unwrap() >= 1 && g1.degree().unwrap() < deg {
            Some(g1)
        } else if ctx.p() == 2 {
            // Char 2: additive trace of a over F_2 separates factors.
            let e = (ctx.n() as usize) * d;
            let mut t = rem(ctx, &a, f).unwrap();
            let mut acc = t.clone();
            for _ in 1..e {
                t = rem(ctx, &mul(ctx, &t, &t), f).unwrap();
                acc = add(ctx, &acc, &t);
            }
            let g = gcd(ctx, &acc, f);
            let dg = g.degree().unwrap_or(0);
            (dg >= 1 && dg < deg).then_some(g)
        } else {
            // Odd q: a^((q^d - 1)/2) - 1 vanishes on about half the factors.
            let e = (BigUint::from(q).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = powmod_big(ctx, &a, &e, f);
            let g = gcd(ctx, &sub(ctx, &b, &FqPoly::one(ctx)), f);
            let dg = g.degree().unwrap_or(0);
            (dg >= 1 && dg < deg).then_some(g)
        };
        if let Some(g) = split {
            let other = div_rem(ctx, f, &g).expect("g divides f").0;
            equal_degree_split(ctx, &g, d, rng, out);
            equal_degree_split(ctx, &other, d, rng, out);
            return;
        }
    }
}

/// Complete factorization into a unit and monic irreducible powers.
/// Deterministic: the split uses an internally seeded generator and the
/// factor list is sorted by (degree, coefficient vector).
pub fn factorize(ctx: &FieldCtx, f: &FqPoly) -> Result<Factorization> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (unit, mf) = monic(ctx, f);
    let mut factors: Vec<(FqPoly, u32)> = Vec::new();
    if mf.degree().unwrap() >= 1 {
        let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
        for (part, mult) in squarefree_decomposition(ctx, &mf) {
            for (d, prod) in distinct_degree_split(ctx, &part) {
                let mut irreducibles = Vec::new();
                equal_degree_split(ctx, &prod, d, &mut rng, &mut irreducibles);
                for irr in irreducibles {
                    factors.push((irr, mult));
                }
            }
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(Factorization { unit, factors })
}

/// Number of distinct roots of f in its splitting field, i.e. the degree of
/// the radical. Constants have none. Errors on the zero polynomial.
pub fn distinct_root_count(ctx: &FieldCtx, f: &FqPoly) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (_, mf) = monic(ctx, f);
    if mf.degree().unwrap() == 0 {
        return Ok(0);
    }
    Ok(squarefree_decomposition(ctx, &mf)
        .iter()
        .map(|(g, _)| g.degree().unwrap() as u64)
        .sum())
}

/// If f = u * G^l with u a nonzero constant and G monic, return (u, G);
/// otherwise None. l = 1 always yields (leading coefficient, monic part).
/// Errors on the zero polynomial or l = 0.
pub fn is_power_form(ctx: &FieldCtx, f: &FqPoly, l: u64) -> Result<Option<(FqElem, FqPoly)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if l == 0 {
        return Err(Error::InvalidArgument("power-form exponent must be >= 1".into()));
    }
    let (unit, mf) = monic(ctx, f);
    if l == 1 {
        return Ok(Some((unit, mf)));
    }
    if mf.degree().unwrap() == 0 {
        // A nonzero constant is u * 1^l.
        return Ok(Some((unit, FqPoly::one(ctx))));
    }
    let parts = squarefree_decomposition(ctx, &mf);
    let l32 = u32::try_from(l).unwrap_or(u32::MAX);
    if parts.iter().any(|&(_, m)| l32 == u32::MAX || m % l32 != 0) {
        return Ok(None);
    }
    let mut g = FqPoly::one(ctx);
    for (part, m) in &parts {
        g = mul(ctx, &g, &pow(ctx, part, (m / l32) as u64));
    }
    Ok(Some((unit, g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    fn fp(ctx: &FieldCtx, cs: &[u64]) -> FqPoly {
        FqPoly::from_scalars(ctx, cs)
    }

    #[test]
    fn normalization_and_degree() {
        let ctx = FieldCtx::new(7, 1).unwrap();
        assert_eq!(fp(&ctx, &[0, 0, 0]), FqPoly::zero());
        assert_eq!(FqPoly::zero().degree(), None);
        assert_eq!(fp(&ctx, &[1, 1, 0, 1]).degree(), Some(3));
        assert_eq!(fp(&ctx, &[3, 0, 7]).degree(), Some(0)); // 7 = 0 mod 7
    }

    #[test]
    fn eval_by_horner() {
        let ctx = FieldCtx::new(7, 1).unwrap();
        let f = fp(&ctx, &[1, 1, 0, 1]); // x^3 + x + 1
        assert_eq!(eval(&ctx, &f, &ctx.scalar(2)), ctx.scalar(4)); // 11 mod 7
        assert_eq!(eval(&ctx, &FqPoly::zero(), &ctx.scalar(3)), ctx.zero());
        let ranks = to_ranks(&ctx, &f);
        for y in 0..7usize {
            assert_eq!(
                eval_ranks(&ctx, &ranks, y),
                ctx.rank_of(&eval(&ctx, &f, &ctx.elem_of(y)))
            );
        }
    }

    #[test]
    fn derivative_iterated() {
        let ctx = FieldCtx::new(7, 1).unwrap();
        let f = fp(&ctx, &[0, 0, 0, 1]); // x^3
        assert_eq!(derivative(&ctx, &f, 2), fp(&ctx, &[0, 6])); // 6x
        assert_eq!(derivative(&ctx, &f, 4), FqPoly::zero());
        // Char-p annihilation: d/dx of x^5 over F_5 is 0.
        let ctx5 = FieldCtx::new(5, 1).unwrap();
        assert_eq!(derivative(&ctx5, &fp(&ctx5, &[0, 0, 0, 0, 0, 1]), 1), FqPoly::zero());
    }

    #[test]
    fn division_and_gcd_conventions() {
        let ctx = FieldCtx::new(7, 1).unwrap();
        let a = fp(&ctx, &[6, 0, 1]); // x^2 + 6 = (x+1)(x+6)
        let b = fp(&ctx, &[1, 1]);
        let (q, r) = div_rem(&ctx, &a, &b).unwrap();
        assert_eq!(q, fp(&ctx, &[6, 1]));
        assert!(r.is_zero());
        assert!(div_rem(&ctx, &a, &FqPoly::zero()).is_err());

        assert_eq!(gcd(&ctx, &FqPoly::zero(), &FqPoly::zero()), FqPoly::zero());
        // gcd(f, 0) is the monic scalar multiple of f.
        let f = fp(&ctx, &[2, 4]); // 4x + 2 -> monic x + 4
        assert_eq!(gcd(&ctx, &f, &FqPoly::zero()), fp(&ctx, &[4, 1]));
        assert_eq!(gcd(&ctx, &a, &b), fp(&ctx, &[1, 1]));
    }

    #[test]
    fn factorize_split_cases() {
        // Irreducible quadratic stays put.
        let ctx3 = FieldCtx::new(3, 1).unwrap();
        let f = fp(&ctx3, &[1, 0, 1]); // x^2 + 1, no roots mod 3
        let fac = factorize(&ctx3, &f).unwrap();
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);

        // Equal-degree split of x^2 + 1 = (x+2)(x+3) over F_5.
        let ctx5 = FieldCtx::new(5, 1).unwrap();
        let fac = factorize(&ctx5, &fp(&ctx5, &[1, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![(fp(&ctx5, &[2, 1]), 1), (fp(&ctx5, &[3, 1]), 1)]
        );

        // Mixed degrees over F_2: x^4 + x = x (x+1) (x^2+x+1).
        let ctx2 = FieldCtx::new(2, 1).unwrap();
        let fac = factorize(&ctx2, &fp(&ctx2, &[0, 1, 0, 0, 1])).unwrap();
        assert_eq!(
            fac.factors,
            vec![
                (fp(&ctx2, &[0, 1]), 1),
                (fp(&ctx2, &[1, 1]), 1),
                (fp(&ctx2, &[1, 1, 1]), 1),
            ]
        );

        // Vanishing derivative: x^4 + x^2 + 1 = (x^2+x+1)^2 over F_2.
        let fac = factorize(&ctx2, &fp(&ctx2, &[1, 0, 1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(fp(&ctx2, &[1, 1, 1]), 2)]);

        // Unit retained: 3 (x+2)^2 over F_7.
        let ctx7 = FieldCtx::new(7, 1).unwrap();
        let f = scale(&ctx7, &pow(&ctx7, &fp(&ctx7, &[2, 1]), 2), &ctx7.scalar(3));
        let fac = factorize(&ctx7, &f).unwrap();
        assert_eq!(fac.unit, ctx7.scalar(3));
        assert_eq!(fac.factors, vec![(fp(&ctx7, &[2, 1]), 2)]);
        assert_eq!(fac.reassemble(&ctx7), f);

        // Constants factorize to an empty list.
        let fac = factorize(&ctx7, &fp(&ctx7, &[5])).unwrap();
        assert_eq!(fac.unit, ctx7.scalar(5));
        assert!(fac.factors.is_empty());
        assert!(factorize(&ctx7, &FqPoly::zero()).is_err());
    }

    #[test]
    fn extension_field_pth_root_path() {
        // (x - theta)^2 over F_4 has zero derivative; the p-th root must take
        // square roots of coefficients through the Frobenius.
        let ctx = FieldCtx::new(2, 2).unwrap();
        let a = ctx.theta().clone();
        let lin = FqPoly::from_coeffs(vec![a.clone(), ctx.one()]);
        let f = mul(&ctx, &lin, &lin);
        let fac = factorize(&ctx, &f).unwrap();
        assert_eq!(fac.factors, vec![(lin, 2)]);
    }

    #[test]
    fn distinct_roots_examples() {
        let ctx3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(distinct_root_count(&ctx3, &fp(&ctx3, &[1, 0, 1])).unwrap(), 2);
        let ctx2 = FieldCtx::new(2, 1).unwrap();
        // x^2 (x+1): two distinct roots.
        let f = mul(&ctx2, &fp(&ctx2, &[0, 0, 1]), &fp(&ctx2, &[1, 1]));
        assert_eq!(distinct_root_count(&ctx2, &f).unwrap(), 2);
        // (x^2+x+1)^2: both roots live in F_4.
        assert_eq!(
            distinct_root_count(&ctx2, &fp(&ctx2, &[1, 0, 1, 0, 1])).unwrap(),
            2
        );
        assert_eq!(distinct_root_count(&ctx2, &fp(&ctx2, &[1])).unwrap(), 0);
        assert!(distinct_root_count(&ctx2, &FqPoly::zero()).is_err());
    }

    #[test]
    fn power_form_detection() {
        let ctx = FieldCtx::new(7, 1).unwrap();
        // x^2 + 1 is irreducible over F_7, so not a square form.
        assert_eq!(is_power_form(&ctx, &fp(&ctx, &[1, 0, 1]), 2).unwrap(), None);
        // (x+1)^2.
        let sq = pow(&ctx, &fp(&ctx, &[1, 1]), 2);
        assert_eq!(
            is_power_form(&ctx, &sq, 2).unwrap(),
            Some((ctx.one(), fp(&ctx, &[1, 1])))
        );
        // 3 (x+2)^4 = 3 ((x+2)^2)^2.
        let f = scale(&ctx, &pow(&ctx, &fp(&ctx, &[2, 1]), 4), &ctx.scalar(3));
        let (u, g) = is_power_form(&ctx, &f, 2).unwrap().unwrap();
        assert_eq!(u, ctx.scalar(3));
        assert_eq!(g, pow(&ctx, &fp(&ctx, &[2, 1]), 2));
        // l = 1 returns (leading coefficient, monic part).
        let f = fp(&ctx, &[1, 0, 3]);
        let (u, g) = is_power_form(&ctx, &f, 1).unwrap().unwrap();
        assert_eq!(u, ctx.scalar(3));
        assert_eq!(g, fp(&ctx, &[5, 0, 1]));
        // Nonzero constants are u * 1^l.
        let (u, g) = is_power_form(&ctx, &fp(&ctx, &[4]), 3).unwrap().unwrap();
        assert_eq!(u, ctx.scalar(4));
        assert!(g.is_one(&ctx));
        assert!(is_power_form(&ctx, &FqPoly::zero(), 2).is_err());
        assert!(is_power_form(&ctx, &fp(&ctx, &[1, 1]), 0).is_err());
    }

    #[test]
    fn compose_and_shift() {
        let ctx = FieldCtx::new(7, 1).unwrap();
        let f = fp(&ctx, &[1, 0, 1]); // x^2 + 1
        let g = fp(&ctx, &[1, 1]); // x + 1
        assert_eq!(compose(&ctx, &f, &g), fp(&ctx, &[2, 2, 1]));
        assert_eq!(shift(&ctx, &f, &ctx.scalar(1)), fp(&ctx, &[2, 2, 1]));
        // Composition with x is the identity.
        assert_eq!(compose(&ctx, &f, &FqPoly::x(&ctx)), f);
    }

    #[test]
    fn canonical_factor_order() {
        let ctx = FieldCtx::new(5, 1).unwrap();
        // (x+3)(x+2)(x^2+2) assembled in scrambled order.
        let f = mul(
            &ctx,
            &mul(&ctx, &fp(&ctx, &[3, 1]), &fp(&ctx, &[2, 0, 1])),
            &fp(&ctx, &[2, 1]),
        );
        let fac = factorize(&ctx, &f).unwrap();
        let degs: Vec<usize> = fac.factors.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1, 2]);
        // Within equal degree, constant coefficient ascending.
        assert!(fac.factors[0].0 < fac.factors[1].0);
        assert_eq!(fac.reassemble(&ctx), f);
    }
}
