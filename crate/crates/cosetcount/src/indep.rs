//! Multiplicative independence of polynomial tuples relative to a vector
//! of divisors of q - 1.
//!
//! A tuple (P_1, ..., P_k) with divisors (d_1, ..., d_k) and L = lcm(d_i)
//! is dependent when some nonzero residue vector a in Z_{d_1} x ... x
//! Z_{d_k} makes prod_i P_i^(L a_i / d_i) equal to a constant times an
//! L-th power; independence means no such vector exists. The check works
//! on factorization multiplicity vectors, so each polynomial is factored
//! exactly once, and any witness found is re-verified by expanding the
//! product before it is returned.

use crate::dlog;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::poly::{self, FqPoly};

/// Default cap on the number of residue cells prod d_i a tuple may span.
pub const DEFAULT_MAX_CELLS: u64 = 1_000_000;

/// A validated tuple of nonzero polynomials with one divisor of q - 1 per
/// entry. Carries the derived lcm and cell count.
#[derive(Debug, Clone)]
pub struct TupleSpec {
    polys: Vec<FqPoly>,
    divisors: Vec<u64>,
    lcm: u64,
    cells: u64,
}

impl TupleSpec {
    pub fn new(ctx: &FieldCtx, polys: Vec<FqPoly>, divisors: Vec<u64>) -> Result<TupleSpec> {
        TupleSpec::with_cell_cap(ctx, polys, divisors, DEFAULT_MAX_CELLS)
    }

    pub fn with_cell_cap(
        ctx: &FieldCtx,
        polys: Vec<FqPoly>,
        divisors: Vec<u64>,
        cap: u64,
    ) -> Result<TupleSpec> {
        if polys.is_empty() || polys.len() != divisors.len() {
            return Err(Error::InvalidArgument(
                "tuple needs the same positive number of polynomials and divisors".into(),
            ));
        }
        if polys.iter().any(|p| p.is_zero()) {
            return Err(Error::ZeroPolynomial);
        }
        let mut lcm = 1u64;
        let mut cells = 1u64;
        for &d in &divisors {
            dlog::check_divisor(ctx, d)?;
            lcm = crate::arith::lcm(lcm, d).expect("divisors of q-1 have a small lcm");
            cells = cells
                .checked_mul(d)
                .filter(|&c| c <= cap)
                .ok_or(Error::EnumerationCapExceeded {
                    cells: cells.saturating_mul(d),
                    cap,
                })?;
        }
        Ok(TupleSpec {
            polys,
            divisors,
            lcm,
            cells,
        })
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction requires at least one entry
    }

    pub fn polys(&self) -> &[FqPoly] {
        &self.polys
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    /// L = lcm of the divisors.
    pub fn lcm(&self) -> u64 {
        self.lcm
    }

    /// D = product of the divisors: the number of residue cells.
    pub fn cell_count(&self) -> u64 {
        self.cells
    }

    /// Mixed-radix index of a residue vector, first coordinate most
    /// significant; the inverse of `cell_residues`.
    pub fn cell_index(&self, residues: &[u64]) -> Result<u64> {
        cell_index_of(&self.divisors, residues)
    }

    /// Residue vector for a cell index (see `cell_index`).
    pub fn cell_residues(&self, idx: u64) -> Vec<u64> {
        cell_residues_of(&self.divisors, idx)
    }
}

/// Mixed-radix index of a residue vector against a divisor list, first
/// coordinate most significant.
pub fn cell_index_of(divisors: &[u64], residues: &[u64]) -> Result<u64> {
    if residues.len() != divisors.len() {
        return Err(Error::InvalidResidues(format!(
            "expected {} residues, got {}",
            divisors.len(),
            residues.len()
        )));
    }
    let mut idx = 0u64;
    for (&r, &d) in residues.iter().zip(divisors) {
        if r >= d {
            return Err(Error::InvalidResidues(format!(
                "residue {r} out of range for divisor {d}"
            )));
        }
        idx = idx * d + r;
    }
    Ok(idx)
}

/// Inverse of `cell_index_of`.
pub fn cell_residues_of(divisors: &[u64], mut idx: u64) -> Vec<u64> {
    let mut out = vec![0u64; divisors.len()];
    for (slot, &d) in out.iter_mut().zip(divisors).rev() {
        *slot = idx % d;
        idx /= d;
    }
    out
}

/// A dependence certificate: prod_i P_i^(L a_i / d_i) = unit * g^L with a
/// nonzero.
#[derive(Debug, Clone, PartialEq)]
pub struct DependenceWitness {
    pub a: Vec<u64>,
    pub unit: FqElem,
    pub g: FqPoly,
}

#[derive(Debug, Clone, PartialEq)]
pub enum IndepVerdict {
    Independent,
    Dependent(DependenceWitness),
}

impl IndepVerdict {
    pub fn is_independent(&self) -> bool {
        matches!(self, IndepVerdict::Independent)
    }
}

/// The exponents L a_i / d_i for a residue vector.
fn exponents(spec: &TupleSpec, a: &[u64]) -> Vec<u64> {
    a.iter()
        .zip(&spec.divisors)
        .map(|(&ai, &di)| (spec.lcm / di) * ai)
        .collect()
}

/// Expand prod_i P_i^(e_i).
fn expand_product(ctx: &FieldCtx, polys: &[FqPoly], exps: &[u64]) -> FqPoly {
    let mut acc = FqPoly::one(ctx);
    for (p, &e) in polys.iter().zip(exps) {
        acc = poly::mul(ctx, &acc, &poly::pow(ctx, p, e));
    }
    acc
}

/// Decide independence by scanning every nonzero residue vector in
/// lexicographic order and testing divisibility of the combined
/// factorization multiplicities by L. The first dependence found is
/// re-verified by expansion and returned as the witness.
pub fn check_independence(ctx: &FieldCtx, spec: &TupleSpec) -> Result<IndepVerdict> {
    let l = spec.lcm;
    let factored: Vec<_> = spec
        .polys
        .iter()
        .map(|p| poly::factorize(ctx, p))
        .collect::<Result<Vec<_>>>()?;

    // Shared basis of irreducibles across the tuple.
    let mut basis: Vec<FqPoly> = Vec::new();
    for fac in &factored {
        for (f, _) in &fac.factors {
            if !basis.contains(f) {
                basis.push(f.clone());
            }
        }
    }
    basis.sort();
    let mult_vec = |fac: &poly::Factorization| -> Vec<u64> {
        let mut v = vec![0u64; basis.len()];
        for (f, m) in &fac.factors {
            let i = basis.binary_search(f).expect("factor is in basis");
            v[i] = *m as u64;
        }
        v
    };
    let mults: Vec<Vec<u64>> = factored.iter().map(mult_vec).collect();

    for idx in 1..spec.cells {
        let a = spec.cell_residues(idx);
        let exps = exponents(spec, &a);
        let mut total = vec![0u64; basis.len()];
        for (mv, &e) in mults.iter().zip(&exps) {
            for (t, &m) in total.iter_mut().zip(mv) {
                *t += e * m;
            }
        }
        if total.iter().all(|&m| m % l == 0) {
            // Assemble the certificate and confirm it by expansion.
            let mut unit = ctx.one();
            for (fac, &e) in factored.iter().zip(&exps) {
                unit = ctx.mul(&unit, &ctx.pow(&fac.unit, e));
            }
            let mut g = FqPoly::one(ctx);
            for (f, &m) in basis.iter().zip(&total) {
                g = poly::mul(ctx, &g, &poly::pow(ctx, f, m / l));
            }
            let lhs = expand_product(ctx, &spec.polys, &exps);
            let rhs = poly::scale(ctx, &poly::pow(ctx, &g, l), &unit);
            if lhs != rhs {
                return Err(Error::InvalidWitness);
            }
            return Ok(IndepVerdict::Dependent(DependenceWitness { a, unit, g }));
        }
    }
    Ok(IndepVerdict::Independent)
}

/// Result of sweeping the log-residue identity implied by a dependence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    /// Points y where every P_i(y) was nonzero and the identity was tested.
    pub checked: u64,
    /// Points skipped because some P_i(y) = 0.
    pub skipped: u64,
    /// Whether sum_i (L a_i / d_i) log P_i(y) = log(unit) (mod L) held at
    /// every checked point.
    pub holds: bool,
}

/// Verify a dependence witness by expansion, then sweep all y in F_q and
/// check the induced identity on discrete logs mod L.
pub fn dependence_identity(
    ctx: &FieldCtx,
    spec: &TupleSpec,
    witness: &DependenceWitness,
) -> Result<IdentityReport> {
    if witness.a.len() != spec.len()
        || witness.a == vec![0; spec.len()]
        || witness
            .a
            .iter()
            .zip(spec.divisors())
            .any(|(&ai, &di)| ai >= di)
    {
        return Err(Error::InvalidWitness);
    }
    let exps = exponents(spec, &witness.a);
    let lhs = expand_product(ctx, &spec.polys, &exps);
    let rhs = poly::scale(ctx, &poly::pow(ctx, &witness.g, spec.lcm), &witness.unit);
    if lhs != rhs {
        return Err(Error::InvalidWitness);
    }
    let l = spec.lcm;
    let log_u = dlog::log(ctx, &witness.unit)? % l;
    let rank_polys: Vec<Vec<usize>> = spec.polys.iter().map(|p| poly::to_ranks(ctx, p)).collect();
    let mut checked = 0u64;
    let mut skipped = 0u64;
    let mut holds = true;
    for y in 0..ctx.q() as usize {
        let vals: Vec<usize> = rank_polys
            .iter()
            .map(|rp| poly::eval_ranks(ctx, rp, y))
            .collect();
        if vals.contains(&0) {
            skipped += 1;
            continue;
        }
        checked += 1;
        let mut acc = 0u64;
        for (&v, &e) in vals.iter().zip(&exps) {
            let lv = ctx.log_rank(v).expect("nonzero value") % l;
            acc = (acc + (e % l) * lv) % l;
        }
        if acc != log_u {
            holds = false;
        }
    }
    Ok(IdentityReport {
        checked,
        skipped,
        holds,
    })
}
