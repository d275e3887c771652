//! Machine-word primality and factor splitting.
//!
//! `is_prime_u64` is a deterministic Miller-Rabin test: the first twelve
//! primes as witnesses are sufficient for every n < 3.3 * 10^24, which
//! covers the whole 64-bit range. Cofactors left over after trial division
//! are split with Brent's variant of Pollard's rho, driven by a fixed
//! sequence of polynomial constants so factorizations are reproducible.

use std::sync::OnceLock;

const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Trial division bound for the small-prime table.
pub(crate) const SMALL_PRIME_LIMIT: u64 = 1 << 12;

/// Primes below `SMALL_PRIME_LIMIT`, built once on first use.
pub(crate) fn small_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let limit = SMALL_PRIME_LIMIT as usize;
        let mut composite = vec![false; limit];
        let mut primes = Vec::new();
        for i in 2..limit {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j < limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn strong_probable_prime(n: u64, odd_part: u64, twos: u32, base: u64) -> bool {
    let mut x = pow_mod(base, odd_part, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..twos {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test valid for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let twos = (n - 1).trailing_zeros();
    let odd_part = (n - 1) >> twos;
    WITNESSES
        .iter()
        .all(|&a| strong_probable_prime(n, odd_part, twos, a))
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Finds a nontrivial factor of an odd composite `n` (Brent's cycle finding).
///
/// The polynomial x^2 + c is tried for c = 1, 2, 3, ... starting from x0 = 2,
/// so the result depends only on `n`.
pub(crate) fn rho_split(n: u64) -> u64 {
    debug_assert!(n > 3 && n % 2 == 1 && !is_prime_u64(n));
    const BATCH: u64 = 128;
    for c in 1..n {
        let step = |x: u64| (mul_mod(x, x, n) + c) % n;
        let mut y = 2u64;
        let mut x = y;
        let mut ys = y;
        let mut q = 1u64;
        let mut g = 1u64;
        let mut r = 1u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = step(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = step(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            // batch overshot; walk back one step at a time
            loop {
                ys = step(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!("rho failed to split composite {n}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division_is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= n {
            if n.is_multiple_of(d) {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn small_values() {
        assert!(!is_prime_u64(0));
        assert!(!is_prime_u64(1));
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(223));
        assert!(is_prime_u64(8191));
        assert!(trial_division_is_prime(8191));
        assert!(!is_prime_u64(2047));
    }

    #[test]
    fn strong_pseudoprimes_rejected() {
        // strong pseudoprimes to several small bases
        for n in [
            2047u64,
            1_373_653,
            25_326_001,
            3_215_031_751,
            2_152_302_898_747,
            3_474_749_660_383,
            341_550_071_728_321,
            3_825_123_056_546_413_051,
        ] {
            assert!(!is_prime_u64(n), "{n}");
        }
    }

    #[test]
    fn large_known_primes() {
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest prime < 2^64
        assert!(!is_prime_u64(u64::MAX));
    }

    #[test]
    fn agrees_with_trial_division_on_samples() {
        for n in (1u64 << 32..(1 << 32) + 2000).chain(999_000..1_001_000) {
            assert_eq!(is_prime_u64(n), trial_division_is_prime(n), "{n}");
        }
    }

    #[test]
    fn rho_splits_semiprimes() {
        for (p, q) in [(1_000_003u64, 1_000_033u64), (4_294_967_291, 4_294_967_279), (65_537, 2_147_483_647)] {
            let f = rho_split(p * q);
            assert!(f == p || f == q, "{p}*{q} gave {f}");
        }
    }
}
