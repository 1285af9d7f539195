//! Finite-field construction and arithmetic.
//!
//! A field F_{p^n} is built deterministically: the modulus is the
//! lexicographically smallest monic irreducible of degree n over F_p
//! (coefficient vectors compared constant-term first), and the generator is
//! the first element in enumeration order whose multiplicative order is
//! q - 1. Elements are coordinate vectors in the power basis of the modulus;
//! the enumeration order is lexicographic on those vectors, so the constant
//! coordinate is the most significant digit of an element's rank.
//!
//! Construction precomputes the full discrete-log and antilog tables, which
//! pins every field at or below the configured size cap (default 2^20).

use crate::arith;
use crate::error::{Error, Result};
use serde::Serialize;
use std::fmt;

/// Default cap on the field order q = p^n.
pub const DEFAULT_MAX_Q: u64 = 1 << 20;

/// Sentinel stored in the log table at the rank of zero.
const LOG_UNDEF: u32 = u32::MAX;

/// Validated shape of a finite field: p prime, n >= 1, q = p^n within cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    p: u64,
    n: u32,
    q: u64,
}

impl FieldSpec {
    /// Validate (p, n) against the default size cap.
    pub fn new(p: u64, n: u32) -> Result<FieldSpec> {
        FieldSpec::with_cap(p, n, DEFAULT_MAX_Q)
    }

    /// Validate (p, n) against an explicit cap. Raising the cap is the
    /// caller's deliberate act; there is no environment-side default raise.
    pub fn with_cap(p: u64, n: u32, cap: u64) -> Result<FieldSpec> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidArgument("extension degree must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..n {
            q = q
                .checked_mul(p)
                .ok_or(Error::SizeCapExceeded { q: u64::MAX, cap })?;
            if q > cap {
                return Err(Error::SizeCapExceeded { q, cap });
            }
        }
        Ok(FieldSpec { p, n, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }
}

/// Element of F_{p^n}: coordinates in the power basis, low degree first,
/// always exactly n entries, each reduced mod p. Ordering is lexicographic
/// on the coordinate vector and matches the field's enumeration order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem {
    coeffs: Vec<u64>,
}

impl FqElem {
    /// Coordinates w.r.t. the power basis, constant term first.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for FqElem {
    /// Colon-separated coordinates; a prime-field element prints as a bare
    /// integer.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(":"))
    }
}

/// JSON-friendly snapshot of a constructed field, sufficient to reproduce
/// it: the shape, the modulus, and the chosen generator.
#[derive(Debug, Clone, Serialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    /// Modulus coefficients, low degree first, including the leading 1.
    pub modulus: Vec<u64>,
    /// Generator coordinates, constant term first.
    pub theta: Vec<u64>,
}

/// A fully constructed finite field: modulus, generator, and the complete
/// log/antilog tables. Immutable after construction and safe to share
/// across threads.
pub struct FieldCtx {
    spec: FieldSpec,
    /// Monic irreducible modulus, low degree first, length n + 1.
    modulus: Vec<u64>,
    theta: FqElem,
    /// exp[i] = rank of theta^i, for i in [0, q-2].
    exp: Vec<u32>,
    /// log[rank] = i with theta^i = element, LOG_UNDEF at rank 0 (zero).
    log: Vec<u32>,
    /// Place value of coordinate i in an element's rank: p^(n-1-i).
    place: Vec<u64>,
    /// Cached prime factorization of q - 1.
    group_factors: Vec<(u64, u32)>,
}

impl FieldCtx {
    /// Build F_{p^n} under the default size cap.
    pub fn new(p: u64, n: u32) -> Result<FieldCtx> {
        FieldCtx::from_spec(FieldSpec::new(p, n)?)
    }

    /// Build F_{p^n} under an explicit size cap.
    pub fn with_cap(p: u64, n: u32, cap: u64) -> Result<FieldCtx> {
        FieldCtx::from_spec(FieldSpec::with_cap(p, n, cap)?)
    }

    /// Build the field for an already validated spec.
    pub fn from_spec(spec: FieldSpec) -> Result<FieldCtx> {
        let (p, n, q) = (spec.p, spec.n, spec.q);
        let modulus = smallest_irreducible(p, n);
        let place: Vec<u64> = (0..n).map(|i| p.pow(n - 1 - i)).collect();
        let group_factors = arith::factor(q - 1);

        let mut ctx = FieldCtx {
            spec,
            modulus,
            theta: FqElem { coeffs: vec![0; n as usize] },
            exp: Vec::new(),
            log: Vec::new(),
            place,
            group_factors,
        };

        ctx.theta = ctx.find_generator()?;
        ctx.build_tables();
        Ok(ctx)
    }

    /// First element in enumeration order of multiplicative order q - 1.
    fn find_generator(&self) -> Result<FqElem> {
        let q = self.spec.q;
        for rank in 1..q {
            let cand = self.elem_of(rank as usize);
            let mut ok = true;
            for &(r, _) in &self.group_factors {
                if self.pow(&cand, (q - 1) / r) == self.one() {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(cand);
            }
        }
        // Unreachable for a real prime power: every finite field is cyclic.
        Err(Error::InvalidArgument("no generator found".into()))
    }

    fn build_tables(&mut self) {
        let q = self.spec.q as usize;
        self.exp = vec![0u32; q - 1];
        self.log = vec![LOG_UNDEF; q];
        let mut acc = self.one();
        for i in 0..(q - 1) {
            let r = self.rank_of(&acc);
            debug_assert_eq!(self.log[r], LOG_UNDEF, "generator order too small");
            self.exp[i] = r as u32;
            self.log[r] = i as u32;
            acc = self.mul(&acc, &self.theta);
        }
        debug_assert_eq!(acc, self.one(), "generator order mismatch");
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn n(&self) -> u32 {
        self.spec.n
    }

    pub fn q(&self) -> u64 {
        self.spec.q
    }

    /// Modulus coefficients, low degree first, including the leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn theta(&self) -> &FqElem {
        &self.theta
    }

    /// Prime factorization of the multiplicative group order q - 1.
    pub fn group_order_factors(&self) -> &[(u64, u32)] {
        &self.group_factors
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.spec.p,
            n: self.spec.n,
            q: self.spec.q,
            modulus: self.modulus.clone(),
            theta: self.theta.coeffs.clone(),
        }
    }

    pub fn zero(&self) -> FqElem {
        FqElem { coeffs: vec![0; self.spec.n as usize] }
    }

    pub fn one(&self) -> FqElem {
        self.scalar(1)
    }

    /// Image of the integer c under the prime-subfield embedding.
    pub fn scalar(&self, c: u64) -> FqElem {
        let mut coeffs = vec![0; self.spec.n as usize];
        coeffs[0] = c % self.spec.p;
        FqElem { coeffs }
    }

    /// Element from explicit coordinates (length must equal n); entries are
    /// reduced mod p.
    pub fn elem(&self, coords: &[u64]) -> Result<FqElem> {
        if coords.len() != self.spec.n as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.spec.n,
                coords.len()
            )));
        }
        Ok(FqElem { coeffs: coords.iter().map(|&c| c % self.spec.p).collect() })
    }

    /// Enumeration index of an element (lexicographic on coordinates).
    pub fn rank_of(&self, x: &FqElem) -> usize {
        debug_assert_eq!(x.coeffs.len(), self.spec.n as usize);
        let mut r = 0u64;
        for (c, pl) in x.coeffs.iter().zip(&self.place) {
            r += c * pl;
        }
        r as usize
    }

    /// Element at the given enumeration index.
    pub fn elem_of(&self, rank: usize) -> FqElem {
        debug_assert!((rank as u64) < self.spec.q);
        let mut r = rank as u64;
        let mut coeffs = vec![0u64; self.spec.n as usize];
        for (c, pl) in coeffs.iter_mut().zip(&self.place) {
            *c = r / pl;
            r %= pl;
        }
        FqElem { coeffs }
    }

    /// All q elements in enumeration order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.spec.q as usize).map(move |r| self.elem_of(r))
    }

    pub fn add(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let p = self.spec.p;
        FqElem {
            coeffs: x
                .coeffs
                .iter()
                .zip(&y.coeffs)
                .map(|(&a, &b)| (a + b) % p)
                .collect(),
        }
    }

    pub fn neg(&self, x: &FqElem) -> FqElem {
        let p = self.spec.p;
        FqElem { coeffs: x.coeffs.iter().map(|&a| (p - a) % p).collect() }
    }

    pub fn sub(&self, x: &FqElem, y: &FqElem) -> FqElem {
        self.add(x, &self.neg(y))
    }

    /// Product in the power basis: schoolbook multiply, reduce by the
    /// modulus. Deliberately independent of the log tables (the tables are
    /// themselves built from this routine).
    pub fn mul(&self, x: &FqElem, y: &FqElem) -> FqElem {
        let n = self.spec.n as usize;
        let p = self.spec.p;
        if n == 1 {
            return FqElem { coeffs: vec![arith::mul_mod(x.coeffs[0], y.coeffs[0], p)] };
        }
        let mut buf = vec![0u64; 2 * n - 1];
        for (i, &a) in x.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.coeffs.iter().enumerate() {
                buf[i + j] = (buf[i + j] + a * b) % p;
            }
        }
        // x^n = -sum_j m_j x^j, folding from the top down.
        for i in (n..2 * n - 1).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for j in 0..n {
                let m = self.modulus[j];
                if m != 0 {
                    buf[i - n + j] = (buf[i - n + j] + c * (p - m)) % p;
                }
            }
        }
        buf.truncate(n);
        FqElem { coeffs: buf }
    }

    /// Multiplicative inverse via the log tables; errors on zero.
    pub fn inv(&self, x: &FqElem) -> Result<FqElem> {
        let r = self.rank_of(x);
        if r == 0 {
            return Err(Error::DivisionByZero);
        }
        let l = self.log[r] as u64;
        let qm1 = self.spec.q - 1;
        Ok(self.elem_of(self.exp[((qm1 - l) % qm1) as usize] as usize))
    }

    /// Square-and-multiply power. Convention: pow(0, 0) = 0, so that the
    /// zero-extended characters downstream treat 0 consistently.
    pub fn pow(&self, x: &FqElem, e: u64) -> FqElem {
        if x.is_zero() {
            return self.zero();
        }
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    // ----- rank-level fast arithmetic (table backed) -----

    /// Rank-level addition: digit-wise mod p. O(n).
    #[inline]
    pub fn add_rank(&self, a: usize, b: usize) -> usize {
        let p = self.spec.p;
        let mut out = 0u64;
        let (mut ra, mut rb) = (a as u64, b as u64);
        for &pl in &self.place {
            let da = ra / pl;
            let db = rb / pl;
            ra %= pl;
            rb %= pl;
            let mut s = da + db;
            if s >= p {
                s -= p;
            }
            out += s * pl;
        }
        out as usize
    }

    /// Rank-level multiplication via log/antilog tables. O(1).
    #[inline]
    pub fn mul_rank(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let qm1 = (self.spec.q - 1) as u32;
        let mut s = self.log[a] + self.log[b];
        if s >= qm1 {
            s -= qm1;
        }
        self.exp[s as usize] as usize
    }

    /// Rank-level power with the same pow(0,0) = 0 convention.
    #[inline]
    pub fn pow_rank(&self, a: usize, e: u64) -> usize {
        if a == 0 {
            return 0;
        }
        let qm1 = self.spec.q - 1;
        let l = self.log[a] as u128;
        let idx = (l * (e as u128 % qm1 as u128)) % qm1 as u128;
        self.exp[idx as usize] as usize
    }

    /// Discrete log of the element at `rank`; `None` for zero.
    #[inline]
    pub fn log_rank(&self, rank: usize) -> Option<u64> {
        let l = self.log[rank];
        if l == LOG_UNDEF {
            None
        } else {
            Some(l as u64)
        }
    }

    /// Rank of theta^e (e reduced mod q - 1).
    #[inline]
    pub fn exp_rank(&self, e: u64) -> usize {
        self.exp[(e % (self.spec.q - 1)) as usize] as usize
    }
}

// ----- bootstrap polynomial arithmetic over F_p -----
//
// Plain Vec<u64> coefficient vectors (low degree first, trimmed), used only
// while searching for the modulus, before any FieldCtx exists.

fn pp_trim(v: &mut Vec<u64>) {
    while let Some(&0) = v.last() {
        v.pop();
    }
}

fn pp_rem(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    // m monic of degree >= 1.
    let dm = m.len() - 1;
    let mut r = a.to_vec();
    pp_trim(&mut r);
    while r.len() > dm {
        let c = *r.last().unwrap();
        let k = r.len() - 1 - dm;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate().take(dm) {
                let idx = k + j;
                r[idx] = (r[idx] + c * (p - mj)) % p;
            }
        }
        r.pop();
        pp_trim(&mut r);
    }
    r
}

fn pp_mulmod(p: u64, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut buf = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            buf[i + j] = (buf[i + j] + x * y) % p;
        }
    }
    pp_rem(p, &buf, m)
}

fn pp_powmod(p: u64, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = pp_rem(p, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = pp_mulmod(p, &acc, &b, m);
        }
        b = pp_mulmod(p, &b, &b, m);
        e >>= 1;
    }
    acc
}

fn pp_gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut f = a.to_vec();
    let mut g = b.to_vec();
    pp_trim(&mut f);
    pp_trim(&mut g);
    while !g.is_empty() {
        // Make g monic so pp_rem applies.
        let lc = *g.last().unwrap();
        let inv = arith::pow_mod(lc, p - 2, p);
        let gm: Vec<u64> = g.iter().map(|&c| arith::mul_mod(c, inv, p)).collect();
        let r = pp_rem(p, &f, &gm);
        f = gm;
        g = r;
    }
    f
}

/// Frobenius iterate x^(p^k) mod m.
fn pp_frobenius(p: u64, k: u32, m: &[u64]) -> Vec<u64> {
    let x = vec![0u64, 1];
    let mut r = pp_rem(p, &x, m);
    for _ in 0..k {
        r = pp_powmod(p, &r, p, m);
    }
    r
}

/// Rabin irreducibility test for a monic polynomial of degree n over F_p.
fn pp_is_irreducible(p: u64, f: &[u64], n: u32) -> bool {
    // x^(p^n) must equal x mod f...
    let xq = pp_frobenius(p, n, f);
    let x = pp_rem(p, &[0, 1], f);
    if xq != x {
        return false;
    }
    // ...and x^(p^(n/r)) - x must be coprime to f for every prime r | n.
    for r in arith::prime_divisors(n as u64) {
        let mut g = pp_frobenius(p, n / r as u32, f);
        // g -= x
        if g.len() < 2 {
            g.resize(2, 0);
        }
        g[1] = (g[1] + p - 1) % p;
        pp_trim(&mut g);
        let d = pp_gcd(p, &g, f);
        if d.len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree n over F_p,
/// scanning coefficient vectors (c_0, ..., c_{n-1}) constant term first.
fn smallest_irreducible(p: u64, n: u32) -> Vec<u64> {
    if n == 1 {
        return vec![0, 1]; // x
    }
    let nn = n as usize;
    let total = p.pow(n);
    for m in 0..total {
        let mut f = vec![0u64; nn + 1];
        f[nn] = 1;
        let mut r = m;
        // c_0 is the most significant digit so that scanning m ascending
        // walks coefficient vectors in lexicographic order.
        let mut pl = total / p;
        for fi in f[..nn].iter_mut() {
            *fi = r / pl;
            r %= pl;
            pl /= p;
        }
        if f[0] == 0 {
            continue; // divisible by x
        }
        if f.iter().sum::<u64>() % p == 0 {
            continue; // root at 1
        }
        if pp_is_irreducible(p, &f, n) {
            return f;
        }
    }
    unreachable!("irreducibles of every degree exist over F_p")
}
