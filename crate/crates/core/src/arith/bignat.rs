//! Arbitrary-precision naturals and the tests that need them: a
//! Baillie-PSW probable-prime battery and the Lucas-Lehmer test for
//! Mersenne numbers.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::prime::{is_prime_u64, small_primes};
use crate::error::{Error, Result};

/// A nonnegative integer of any size.
///
/// Backed by `BigUint`, which keeps its limbs normalized, so equal values
/// always compare and hash equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigNat(BigUint);

impl BigNat {
    pub fn zero() -> Self {
        BigNat(BigUint::zero())
    }

    /// 2^exp.
    pub fn pow2(exp: u32) -> Self {
        BigNat(BigUint::one() << exp as usize)
    }

    pub fn as_biguint(&self) -> &BigUint {
        &self.0
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_even(&self) -> bool {
        self.0.is_even()
    }

    pub fn bits(&self) -> u64 {
        self.0.bits()
    }

    /// Number of trailing zero bits; `None` for zero.
    pub fn trailing_zeros(&self) -> Option<u64> {
        self.0.trailing_zeros()
    }

    /// Whether the value is 2^j - 1 for some j >= 1 (all ones in binary).
    pub fn is_all_ones(&self) -> bool {
        !self.0.is_zero() && self.0.count_ones() == self.0.bits()
    }
}

impl From<u64> for BigNat {
    fn from(v: u64) -> Self {
        BigNat(BigUint::from(v))
    }
}

impl From<u128> for BigNat {
    fn from(v: u128) -> Self {
        BigNat(BigUint::from(v))
    }
}

impl From<BigUint> for BigNat {
    fn from(v: BigUint) -> Self {
        BigNat(v)
    }
}

impl fmt::Display for BigNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for BigNat {
    type Err = num_bigint::ParseBigIntError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse().map(BigNat)
    }
}

impl std::ops::Add<&BigNat> for &BigNat {
    type Output = BigNat;
    fn add(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 + &rhs.0)
    }
}

impl std::ops::Sub<&BigNat> for &BigNat {
    type Output = BigNat;
    /// Panics on underflow.
    fn sub(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 - &rhs.0)
    }
}

impl std::ops::Mul<&BigNat> for &BigNat {
    type Output = BigNat;
    fn mul(self, rhs: &BigNat) -> BigNat {
        BigNat(&self.0 * &rhs.0)
    }
}

/// Serialized as a JSON integer when it fits in 64 bits, otherwise as a
/// decimal string.
impl Serialize for BigNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.to_u64() {
            Some(v) => s.serialize_u64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for BigNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Small(u64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Small(v) => Ok(BigNat::from(v)),
            Repr::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

fn strong_test(n: &BigUint, n_minus_1: &BigUint, odd_part: &BigUint, twos: u64, base: &BigUint) -> bool {
    let mut x = base.modpow(odd_part, n);
    if x.is_one() || &x == n_minus_1 {
        return true;
    }
    for _ in 1..twos {
        x = (&x * &x) % n;
        if &x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
fn jacobi(a: &BigUint, n: &BigUint) -> i32 {
    let mut a = a % n;
    let mut n = n.clone();
    let mut sign = 1;
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz % 2 == 1 {
            let r = (&n % 8u32).to_u32().unwrap();
            if r == 3 || r == 5 {
                sign = -sign;
            }
        }
        a >>= tz as usize;
        if (&a % 4u32) == BigUint::from(3u32) && (&n % 4u32) == BigUint::from(3u32) {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= &n;
    }
    if n.is_one() {
        sign
    } else {
        0
    }
}

/// Reduces a signed small integer into [0, n).
fn signed_mod(v: i64, n: &BigUint) -> BigUint {
    let m = BigUint::from(v.unsigned_abs()) % n;
    if v < 0 && !m.is_zero() {
        n - m
    } else {
        m
    }
}

/// Strong Lucas probable-prime test with Selfridge's parameters (P = 1).
/// `n` must be odd, > 2, and not a perfect square.
fn strong_lucas(n: &BigUint) -> bool {
    // Selfridge: first D in 5, -7, 9, -11, ... with (D/n) = -1
    let mut d: i64 = 5;
    loop {
        let j = jacobi(&signed_mod(d, n), n);
        if j == -1 {
            break;
        }
        if j == 0 && BigUint::from(d.unsigned_abs()) != *n {
            return false;
        }
        d = if d > 0 { -(d + 2) } else { -d + 2 };
    }
    let q = (1 - d) / 4;
    let d_mod = signed_mod(d, n);
    let q_mod = signed_mod(q, n);

    let half = |x: BigUint| -> BigUint {
        if x.is_odd() {
            (x + n) >> 1
        } else {
            x >> 1
        }
    };
    let sub = |a: &BigUint, b: &BigUint| -> BigUint {
        if a >= b {
            a - b
        } else {
            n - (b - a)
        }
    };

    let n_plus_1: BigUint = n + 1u32;
    let twos = n_plus_1.trailing_zeros().unwrap();
    let odd_part = &n_plus_1 >> twos as usize;

    // U_1 = 1, V_1 = P = 1, Q^1
    let mut u = BigUint::one();
    let mut v = BigUint::one();
    let mut qk = q_mod.clone();
    for bit in (0..odd_part.bits() - 1).rev() {
        u = (&u * &v) % n;
        v = sub(&((&v * &v) % n), &((&qk << 1usize) % n));
        qk = (&qk * &qk) % n;
        if odd_part.bit(bit) {
            let u_next = half(&u + &v);
            let v_next = half((&d_mod * &u + &v) % n);
            u = u_next % n;
            v = v_next % n;
            qk = (&qk * &q_mod) % n;
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..twos {
        v = sub(&((&v * &v) % n), &((&qk << 1usize) % n));
        if v.is_zero() {
            return true;
        }
        qk = (&qk * &qk) % n;
    }
    false
}

const EXTRA_ROUND_SEED: u64 = 0x6e65_6172_7065_7266;

/// Probable-prime test for arbitrary naturals.
///
/// Runs trial division by the small-prime table, a base-2 strong test and a
/// strong Lucas test (Baillie-PSW), then `rounds` additional strong tests
/// with bases drawn from a fixed-seed generator. `false` is always correct.
pub fn is_probable_prime(n: &BigNat, rounds: u32) -> bool {
    let n = &n.0;
    if n < &BigUint::from(2u32) {
        return false;
    }
    for &p in small_primes() {
        let p_big = BigUint::from(p);
        if (n % &p_big).is_zero() {
            return *n == p_big;
        }
    }
    if n.bits() <= 24 {
        // no factor below 2^12 and n < 2^24
        return true;
    }

    let n_minus_1: BigUint = n - 1u32;
    let twos = n_minus_1.trailing_zeros().unwrap();
    let odd_part = &n_minus_1 >> twos as usize;
    if !strong_test(n, &n_minus_1, &odd_part, twos, &BigUint::from(2u32)) {
        return false;
    }
    let root = n.sqrt();
    if &(&root * &root) == n {
        return false;
    }
    if !strong_lucas(n) {
        return false;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(EXTRA_ROUND_SEED);
    let span: BigUint = n - 3u32;
    let byte_len = n.bits().div_ceil(8) as usize + 8;
    let mut buf = vec![0u8; byte_len];
    for _ in 0..rounds {
        rng.fill_bytes(&mut buf);
        let base = BigUint::from_bytes_le(&buf) % &span + 2u32;
        if !strong_test(n, &n_minus_1, &odd_part, twos, &base) {
            return false;
        }
    }
    true
}

/// Lucas-Lehmer test: whether 2^p - 1 is prime, for prime `p`.
pub fn lucas_lehmer(p: u64) -> Result<bool> {
    if !is_prime_u64(p) {
        return Err(Error::InvalidExponent(p));
    }
    if p == 2 {
        return Ok(true);
    }
    if p < 64 {
        let m = (1u64 << p) - 1;
        let mut s = 4u64;
        for _ in 0..p - 2 {
            s = super::prime::mul_mod(s, s, m);
            s = (s + m - 2) % m;
        }
        return Ok(s == 0);
    }
    let bits = p as usize;
    let m = (BigUint::one() << bits) - 1u32;
    let two = BigUint::from(2u32);
    let mut s = BigUint::from(4u32);
    for _ in 0..p - 2 {
        let sq = &s * &s;
        // x mod 2^p - 1 == (x & m) + (x >> p)
        let mut r = (&sq & &m) + (&sq >> bits);
        if r >= m {
            r -= &m;
        }
        s = if r >= two { r - &two } else { r + &m - &two };
    }
    Ok(s.is_zero() || s == m)
}
