//! Helpers shared by the integration suites: prime-power enumeration, slow
//! table-free oracles, exhaustive subspace enumeration, seeded random
//! spaces, and the fixed pool of integer polynomial pairs the sweeps use.

#![allow(dead_code)]

use cosetcount::apps::AffineSpace;
use cosetcount::arith;
use cosetcount::field::{FieldCtx, FqElem};
use cosetcount::poly::{self, FqPoly};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;

/// Deterministic generator for everything sampled in the suites; `tag`
/// separates the streams of unrelated tests.
pub fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x0ac3_93f5_0000_0000 ^ tag)
}

/// All prime powers p^n <= max, ascending by value.
pub fn prime_powers(max: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in arith::primes_in_range(2, max) {
        let mut q = p;
        let mut n = 1u32;
        while q <= max {
            out.push((p, n));
            match q.checked_mul(p) {
                Some(next) => {
                    q = next;
                    n += 1;
                }
                None => break,
            }
        }
    }
    out.sort_by_key(|&(p, n)| p.pow(n));
    out
}

/// Shorthand for a polynomial from scalar coefficients, lowest first.
pub fn fq(ctx: &FieldCtx, coeffs: &[u64]) -> FqPoly {
    FqPoly::from_scalars(ctx, coeffs)
}

/// Discrete log by an explicit generator-power scan. Linear in q and free
/// of any table lookup, so it cross-checks the precomputed tables.
pub fn brute_log(ctx: &FieldCtx, v: &FqElem) -> Option<u64> {
    if v.is_zero() {
        return None;
    }
    let mut acc = ctx.one();
    for e in 0..ctx.q() - 1 {
        if acc == *v {
            return Some(e);
        }
        acc = ctx.mul(&acc, ctx.theta());
    }
    None
}

/// Cell count straight from the definition: element-level evaluation and
/// brute-force logs. Quadratic in q; small fields only.
pub fn naive_cell_count(
    ctx: &FieldCtx,
    polys: &[FqPoly],
    divisors: &[u64],
    residues: &[u64],
) -> u64 {
    let mut n = 0;
    'outer: for y in ctx.elements() {
        for (f, (&d, &r)) in polys.iter().zip(divisors.iter().zip(residues)) {
            let v = poly::eval(ctx, f, &y);
            match brute_log(ctx, &v) {
                Some(l) if l % d == r => {}
                _ => continue 'outer,
            }
        }
        n += 1;
    }
    n
}

/// Sorted ranks of the F_p-span of a set of elements.
pub fn span_ranks(ctx: &FieldCtx, basis: &[FqElem]) -> Vec<usize> {
    let p = ctx.p() as usize;
    let mut ranks = Vec::new();
    for combo in 0..p.pow(basis.len() as u32) {
        let mut code = combo;
        let mut acc = ctx.zero();
        for b in basis {
            let c = ctx.scalar((code % p) as u64);
            code /= p;
            acc = ctx.add(&acc, &ctx.mul(&c, b));
        }
        ranks.push(ctx.rank_of(&acc));
    }
    ranks.sort_unstable();
    ranks.dedup();
    ranks
}

/// Every linear subspace of F_q, all dimensions 0..=n, as (basis, sorted
/// element ranks). Grows bases a vector at a time and dedups by span, so
/// it is exponential; intended for q <= 32 or so.
pub fn all_subspaces(ctx: &FieldCtx) -> Vec<(Vec<FqElem>, Vec<usize>)> {
    let q = ctx.q() as usize;
    let zero_span = vec![0usize];
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(zero_span.clone());
    let mut out = vec![(Vec::new(), zero_span.clone())];
    let mut frontier = vec![(Vec::<FqElem>::new(), zero_span)];
    for _ in 0..ctx.n() {
        let mut next = Vec::new();
        for (basis, ranks) in &frontier {
            for r in 1..q {
                if ranks.binary_search(&r).is_ok() {
                    continue; // already in the span
                }
                let mut bigger = basis.clone();
                bigger.push(ctx.elem_of(r));
                let span = span_ranks(ctx, &bigger);
                if seen.insert(span.clone()) {
                    out.push((bigger.clone(), span.clone()));
                    next.push((bigger, span));
                }
            }
        }
        frontier = next;
    }
    out
}

/// Random t-dimensional linear subspace by rejection on independence.
pub fn random_subspace(ctx: &FieldCtx, t: usize, rng: &mut ChaCha8Rng) -> AffineSpace {
    loop {
        let basis: Vec<FqElem> = (0..t)
            .map(|_| ctx.elem_of(rng.gen_range(1..ctx.q() as usize)))
            .collect();
        if let Ok(space) = AffineSpace::new(ctx, ctx.zero(), basis) {
            return space;
        }
    }
}

/// Random t-dimensional affine space: random offset, independent basis.
pub fn random_affine(ctx: &FieldCtx, t: usize, rng: &mut ChaCha8Rng) -> AffineSpace {
    loop {
        let offset = ctx.elem_of(rng.gen_range(0..ctx.q() as usize));
        let basis: Vec<FqElem> = (0..t)
            .map(|_| ctx.elem_of(rng.gen_range(1..ctx.q() as usize)))
            .collect();
        if let Ok(space) = AffineSpace::new(ctx, offset, basis) {
            return space;
        }
    }
}

/// The fixed pool of twenty integer coefficient pairs (degree <= 3, lowest
/// coefficient first) behind the counting sweeps. Every polynomial keeps a
/// unit coefficient, so no reduction mod p collapses to zero.
pub const PAIR_POOL: [(&[u64], &[u64]); 20] = [
    (&[0, 1], &[1, 1]),
    (&[0, 1], &[1, 0, 1]),
    (&[1, 1], &[1, 1, 1]),
    (&[0, 1], &[1, 1, 0, 1]),
    (&[1, 0, 1], &[1, 1, 0, 1]),
    (&[0, 1], &[0, 1]),
    (&[0, 0, 1], &[0, 1]),
    (&[0, 1, 1], &[1, 1]),
    (&[0, 0, 0, 1], &[0, 1]),
    (&[2, 1], &[3, 1]),
    (&[2, 1], &[1, 3, 1]),
    (&[1, 1, 1], &[2, 1, 1]),
    (&[1, 0, 1, 1], &[1, 1]),
    (&[1, 2, 0, 1], &[1, 0, 1]),
    (&[0, 1, 3], &[3, 1]),
    (&[1, 2, 1], &[1, 1]),
    (&[0, 1, 0, 1], &[2, 0, 1]),
    (&[1, 1], &[1, 1, 2]),
    (&[1, 1, 1], &[1, 1, 0, 1]),
    (&[1, 2, 3, 1], &[1, 1, 1]),
];

/// The pool reduced into a field.
pub fn pool_pairs(ctx: &FieldCtx) -> Vec<(FqPoly, FqPoly)> {
    PAIR_POOL
        .iter()
        .map(|(a, b)| (fq(ctx, a), fq(ctx, b)))
        .collect()
}
