//! Prime sieve shared by every Euler-product and prime-indexed computation,
//! plus small divisor utilities.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::{Error, Result};

/// Upper limit of the process-wide sieve.
pub const SIEVE_LIMIT: u64 = 1_000_000;

struct Sieve {
    composite: Vec<bool>,
    primes: Vec<u64>,
}

fn sieve() -> &'static Sieve {
    static SIEVE: OnceLock<Sieve> = OnceLock::new();
    SIEVE.get_or_init(|| {
        let n = SIEVE_LIMIT as usize;
        let mut composite = vec![false; n + 1];
        composite[0] = true;
        composite[1] = true;
        let mut i = 2;
        while i * i <= n {
            if !composite[i] {
                let mut j = i * i;
                while j <= n {
                    composite[j] = true;
                    j += i;
                }
            }
            i += 1;
        }
        let primes = (2..=n)
            .filter(|&k| !composite[k])
            .map(|k| k as u64)
            .collect();
        Sieve { composite, primes }
    })
}

/// All primes p ≤ x, for x up to [`SIEVE_LIMIT`].
pub fn primes_up_to(x: u64) -> Result<&'static [u64]> {
    if x > SIEVE_LIMIT {
        return Err(Error::domain(format!(
            "prime bound {x} exceeds sieve limit {SIEVE_LIMIT}"
        )));
    }
    let all = &sieve().primes;
    let end = all.partition_point(|&p| p <= x);
    Ok(&all[..end])
}

/// π(x).
pub fn prime_count(x: u64) -> Result<usize> {
    primes_up_to(x).map(<[u64]>::len)
}

pub fn is_prime(n: u64) -> bool {
    if n <= SIEVE_LIMIT {
        return !sieve().composite[n as usize];
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<u64> {
    if is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Prime factorization by trial division, as (prime, exponent) pairs in
/// increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of n in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// σ_t(n) = Σ_{d | n} d^t for an integer exponent, exactly.
pub fn sigma_int(n: u64, t: u32) -> u128 {
    divisors(n).into_iter().map(|d| (d as u128).pow(t)).sum()
}

/// σ_t(n) for a complex exponent.
pub fn sigma_complex(n: u64, t: Complex64) -> Complex64 {
    divisors(n)
        .into_iter()
        .map(|d| (t * (d as f64).ln()).exp())
        .sum()
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
