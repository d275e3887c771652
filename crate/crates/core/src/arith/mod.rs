//! Exact integer arithmetic: factorization, divisor functions and
//! primality for machine words and arbitrary-precision naturals.

mod bignat;
mod prime;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use bignat::{is_probable_prime, lucas_lehmer, BigNat};
pub use prime::is_prime_u64;

use crate::error::{Error, Result};

/// Prime-power decomposition of a positive integer.
///
/// Primes are strictly increasing and every exponent is at least 1;
/// `n = 1` has no factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<(u64, u32)> {
        self.factors
    }

    /// Multiplies the prime powers back together.
    pub fn recompose(&self) -> u64 {
        self.factors.iter().map(|&(p, e)| p.pow(e)).product()
    }

    /// Number of divisors.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| e as u64 + 1).product()
    }

    pub fn is_square_free(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// σ(n) as a 128-bit value. Every 64-bit n has σ(n) < 2^70, so this
    /// never overflows.
    pub fn sigma_wide(&self) -> u128 {
        self.factors
            .iter()
            .map(|&(p, e)| {
                let p = p as u128;
                let mut term = 1u128;
                let mut power = 1u128;
                for _ in 0..e {
                    power *= p;
                    term += power;
                }
                term
            })
            .product()
    }

    /// All divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = Vec::with_capacity(self.divisor_count() as usize);
        divs.push(1u64);
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut power = 1u64;
            for _ in 0..e {
                power *= p;
                for i in 0..len {
                    divs.push(divs[i] * power);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if prime::is_prime_u64(n) {
        out.push(n);
        return;
    }
    let f = prime::rho_split(n);
    split_into(f, out);
    split_into(n / f, out);
}

/// Factors a positive 64-bit integer.
///
/// Trial division by the small-prime table strips small factors; anything
/// left is split by Pollard's rho. Output is deterministic.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn factorize(n: u64) -> Factorization {
    assert!(n > 0, "factorize: n must be positive");
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    for &p in prime::small_primes() {
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rest > 1 {
        let limit = prime::SMALL_PRIME_LIMIT;
        if rest < limit * limit {
            factors.push((rest, 1));
        } else {
            let mut primes = Vec::new();
            split_into(rest, &mut primes);
            primes.sort_unstable();
            for p in primes {
                match factors.last_mut() {
                    Some((q, e)) if *q == p => *e += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
    }
    Factorization { n, factors }
}

/// σ(n), the sum of all positive divisors of n.
///
/// Errors with [`Error::Overflow`] when the result does not fit in 64 bits;
/// [`sigma_wide`] always succeeds.
pub fn sigma(n: u64) -> Result<u64> {
    let wide = sigma_wide(n)?;
    u64::try_from(wide).map_err(|_| Error::overflow(format!("σ({n}) = {wide} exceeds 64 bits")))
}

pub fn sigma_wide(n: u64) -> Result<u128> {
    if n == 0 {
        return Err(Error::Zero);
    }
    Ok(factorize(n).sigma_wide())
}

/// Divisors of n in ascending order, from 1 to n.
///
/// # Panics
///
/// Panics if `n` is zero.
pub fn divisors(n: u64) -> Vec<u64> {
    factorize(n).divisors()
}
