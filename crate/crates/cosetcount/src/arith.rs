//! Small integer number-theory helpers: primality, factoring, divisors,
//! gcd/lcm, prime sieves. Everything here is plain `u64` trial-division
//! scale arithmetic; the sizes involved (field orders, group orders) are
//! capped well below the range where that becomes a bottleneck.

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin for `u64`.
///
/// The base set {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37} is known to be
/// exact for every 64-bit integer.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `(a * b) mod m` without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// `(a ^ e) mod m` by square-and-multiply.
pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple; `None` on overflow.
pub fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// increasing prime order. `factor(1)` is empty.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut push = |p: u64, n: &mut u64| {
        if *n % p == 0 {
            let mut e = 0;
            while *n % p == 0 {
                *n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    while p.saturating_mul(p) <= n {
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let base = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(base.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// Distinct prime divisors of `n` in increasing order.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

/// Euler's totient. Errors on 0.
pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("phi(0) is undefined".into()));
    }
    let mut phi = n;
    for (p, _) in factor(n) {
        phi = phi / p * (p - 1);
    }
    Ok(phi)
}

/// Moebius function: 0 on non-squarefree n, else (-1)^(number of prime
/// divisors). Errors on 0.
pub fn moebius(n: u64) -> Result<i64> {
    if n == 0 {
        return Err(Error::InvalidArgument("mu(0) is undefined".into()));
    }
    let fac = factor(n);
    if fac.iter().any(|&(_, e)| e > 1) {
        return Ok(0);
    }
    Ok(if fac.len() % 2 == 0 { 1 } else { -1 })
}

/// Product of the distinct prime divisors of n (radical); radical(1) = 1.
pub fn radical(n: u64) -> u64 {
    prime_divisors(n).iter().product::<u64>().max(1)
}

/// Primes in `[lo, hi]` by a plain sieve of Eratosthenes.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || hi < lo {
        return Vec::new();
    }
    let n = hi as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            if i as u64 >= lo {
                primes.push(i as u64);
            }
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}
