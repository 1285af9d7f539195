//! Literal parsing for the CLI surface: polynomials as semicolon-separated
//! comma lists (lowest degree first), extension-field elements as
//! colon-joined coordinate vectors, integer polynomials as comma-separated
//! signed integers. Errors carry the offending literal, the caller prefixes
//! the flag name.

use cosetcount::field::{FieldCtx, FqElem};
use cosetcount::intpoly::ZPoly;
use cosetcount::poly::FqPoly;

/// One field element: a plain nonnegative integer (reduced into the prime
/// subfield) or a colon-joined coordinate vector of length n.
pub fn elem(ctx: &FieldCtx, lit: &str) -> Result<FqElem, String> {
    let lit = lit.trim();
    if lit.is_empty() {
        return Err("empty element literal".into());
    }
    if lit.contains(':') {
        let coords = lit
            .split(':')
            .map(|c| {
                c.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("bad coordinate {c:?} in element {lit:?}"))
            })
            .collect::<Result<Vec<u64>, String>>()?;
        ctx.elem(&coords).map_err(|e| e.to_string())
    } else {
        let c = lit
            .parse::<u64>()
            .map_err(|_| format!("bad element literal {lit:?}"))?;
        Ok(ctx.scalar(c))
    }
}

/// Semicolon-separated element list (e.g. a subspace basis).
pub fn elems(ctx: &FieldCtx, lit: &str) -> Result<Vec<FqElem>, String> {
    lit.split(';').map(|part| elem(ctx, part)).collect()
}

/// One polynomial: comma-separated coefficients, lowest degree first.
pub fn poly(ctx: &FieldCtx, lit: &str) -> Result<FqPoly, String> {
    let coeffs = lit
        .split(',')
        .map(|c| elem(ctx, c))
        .collect::<Result<Vec<FqElem>, String>>()?;
    Ok(FqPoly::from_coeffs(coeffs))
}

/// Semicolon-separated polynomial list.
pub fn polys(ctx: &FieldCtx, lit: &str) -> Result<Vec<FqPoly>, String> {
    lit.split(';').map(|part| poly(ctx, part)).collect()
}

/// Comma-separated unsigned integers (divisor lists).
pub fn u64_list(lit: &str) -> Result<Vec<u64>, String> {
    lit.split(',')
        .map(|c| {
            c.trim()
                .parse::<u64>()
                .map_err(|_| format!("bad integer {c:?}"))
        })
        .collect()
}

/// Integer polynomial: comma-separated signed integers, lowest first.
pub fn zpoly(lit: &str) -> Result<ZPoly, String> {
    let coeffs = lit
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<i64>()
                .map_err(|_| format!("bad integer coefficient {c:?}"))
        })
        .collect::<Result<Vec<i64>, String>>()?;
    Ok(ZPoly::from_i64(&coeffs))
}
