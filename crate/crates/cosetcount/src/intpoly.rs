//! Polynomials with integer coefficients: reduction into prime fields,
//! resultants over Z, and the bound on primes at which a squarefree
//! polynomial stays squarefree.
//!
//! Coefficients are arbitrary-precision, so resultants are exact; the
//! Sylvester determinant is evaluated with Bareiss fraction-free
//! elimination to keep intermediate entries integral.

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::poly::{self, FqPoly};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Integer polynomial, low degree first, normalized (zero = empty).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ZPoly {
    coeffs: Vec<BigInt>,
}

impl ZPoly {
    pub fn zero() -> ZPoly {
        ZPoly { coeffs: Vec::new() }
    }

    pub fn from_i64(coeffs: &[i64]) -> ZPoly {
        ZPoly::from_bigints(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> ZPoly {
        let mut p = ZPoly { coeffs };
        while matches!(p.coeffs.last(), Some(c) if c.is_zero()) {
            p.coeffs.pop();
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> ZPoly {
        if self.coeffs.len() <= 1 {
            return ZPoly::zero();
        }
        ZPoly::from_bigints(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        ZPoly::from_bigints(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_default()
                        + other.coeffs.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ZPoly::from_bigints(out)
    }
}

impl fmt::Display for ZPoly {
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
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "x")?,
                1 => write!(f, "({c})*x")?,
                _ if c.is_one() => write!(f, "x^{i}")?,
                _ => write!(f, "({c})*x^{i}")?,
            }
        }
        Ok(())
    }
}

/// An integer polynomial pushed into a prime field, with enough context to
/// see what the reduction did to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedPoly {
    pub poly: FqPoly,
    pub original_degree: Option<usize>,
    /// Nonzero over Z but identically zero mod p.
    pub vanished: bool,
}

impl ReducedPoly {
    /// How many degrees the reduction lost; None when it vanished outright
    /// (or the input was zero).
    pub fn degree_drop(&self) -> Option<usize> {
        Some(self.original_degree? - self.poly.degree()?)
    }
}

/// Reduce an integer polynomial mod p into a prime field (the context
/// must have extension degree 1).
pub fn reduce_mod_p(ctx: &FieldCtx, f: &ZPoly) -> Result<ReducedPoly> {
    if ctx.n() != 1 {
        return Err(Error::InvalidArgument(
            "integer polynomials reduce into prime fields only".into(),
        ));
    }
    let p = BigInt::from(ctx.p());
    let coeffs: Vec<FqElem> = f
        .coeffs
        .iter()
        .map(|c| {
            let mut r = c % &p;
            if r.is_negative() {
                r += &p;
            }
            let (_, digits) = r.to_u64_digits();
            ctx.scalar(digits.first().copied().unwrap_or(0))
        })
        .collect();
    let poly = FqPoly::from_coeffs(coeffs);
    Ok(ReducedPoly {
        vanished: poly.is_zero() && !f.is_zero(),
        original_degree: f.degree(),
        poly,
    })
}

/// Reduce mod p and test the power form there: Some((u, G)) when the image
/// equals u G^l. Errors if the reduction vanishes.
pub fn power_form_mod_p(
    ctx: &FieldCtx,
    f: &ZPoly,
    l: u64,
) -> Result<Option<(FqElem, FqPoly)>> {
    let red = reduce_mod_p(ctx, f)?;
    if red.vanished {
        return Err(Error::VanishingReduction);
    }
    poly::is_power_form(ctx, &red.poly, l)
}

/// Resultant of two integer polynomials as the Sylvester determinant.
/// Two nonzero constants give 1 (empty matrix); any zero polynomial gives
/// 0.
pub fn resultant_z(f: &ZPoly, g: &ZPoly) -> BigInt {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return BigInt::zero(),
    };
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    // Sylvester matrix: n rows of f's coefficients (high first), then m
    // rows of g's, each shifted one column right of the previous.
    let mut mat = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n {
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    bareiss_det(mat)
}

/// Fraction-free determinant: every intermediate entry stays an integer
/// and every division is exact.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..size.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = num / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * m[size - 1][size - 1].clone()
}

/// A bound M >= 1 for a squarefree integer polynomial of degree >= 1 such
/// that at every prime p not dividing M (in particular every p > M) the
/// reduction mod p keeps the same degree and stays squarefree:
/// M = |lc(f)| * |res(f, f')|. Errors when f has repeated roots over Q
/// (resultant zero) or degree < 1.
pub fn squarefree_stability_bound(f: &ZPoly) -> Result<BigInt> {
    if f.degree().unwrap_or(0) < 1 {
        return Err(Error::InvalidArgument(
            "stability bound needs degree >= 1".into(),
        ));
    }
    let r = resultant_z(f, &f.derivative());
    if r.is_zero() {
        return Err(Error::NotSquarefree);
    }
    Ok((f.leading().unwrap() * &r).abs())
}
