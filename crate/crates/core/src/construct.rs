//! Constructive generators for perfect and near-perfect numbers.
//!
//! Every generator builds its number in factored form 2^a · q^b (q an odd
//! prime), then checks the near-perfect witness directly whenever n fits
//! in 64 bits. Larger constructions are returned unverified.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, is_prime_u64, is_probable_prime, lucas_lehmer, BigNat};
use crate::classify::{self, Tag};
use crate::error::{Error, Result};

/// Extra random-base strong tests for P_k candidates beyond 64 bits.
pub const PK_EXTRA_ROUNDS: u32 = 2;

/// A prime of the form 2^t - 2^k - 1 with 1 <= k < t.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PkPrime {
    pub t: u32,
    pub k: u32,
    pub value: BigNat,
}

impl PkPrime {
    /// 2^t - 2^k - 1, whether or not it is prime. Requires 1 <= k < t.
    pub fn candidate(t: u32, k: u32) -> BigNat {
        assert!(k >= 1 && k < t, "need 1 <= k < t, got t={t} k={k}");
        &(&BigNat::pow2(t) - &BigNat::pow2(k)) - &BigNat::from(1u64)
    }

    /// The P_k prime for (t, k), if 2^t - 2^k - 1 is prime.
    pub fn new(t: u32, k: u32) -> Option<PkPrime> {
        let value = Self::candidate(t, k);
        let prime = match value.to_u64() {
            Some(v) => is_prime_u64(v),
            None => is_probable_prime(&value, PK_EXTRA_ROUNDS),
        };
        prime.then_some(PkPrime { t, k, value })
    }

    /// Primality is proven (value below 2^64) rather than probable.
    pub fn is_certified(&self) -> bool {
        self.value.to_u64().is_some()
    }
}

/// Every P_k prime with t <= t_max, ascending by value.
pub fn enumerate_p_primes(t_max: u32) -> Vec<PkPrime> {
    if t_max < 2 {
        return Vec::new();
    }
    let pairs: Vec<(u32, u32)> = (2..=t_max).flat_map(|t| (1..t).map(move |k| (t, k))).collect();
    let mut primes: Vec<PkPrime> = pairs.into_par_iter().filter_map(|(t, k)| PkPrime::new(t, k)).collect();
    primes.sort_by(|a, b| a.value.cmp(&b.value));
    primes
}

/// The unique (t, k) with q = 2^t - 2^k - 1, k >= 1, t >= k + 1.
///
/// Read off the binary expansion: q + 1 = 2^k · (2^(t-k) - 1), so k is the
/// number of trailing zeros of q + 1 and the odd part must be all ones.
pub fn represent_in_p(q: &BigNat) -> Option<(u32, u32)> {
    let plus_one = q + &BigNat::from(1u64);
    let k = plus_one.trailing_zeros()?;
    if k == 0 {
        return None;
    }
    let odd = BigNat::from(plus_one.as_biguint() >> k as usize);
    if !odd.is_all_ones() {
        return None;
    }
    let t = k + odd.bits();
    Some((t as u32, k as u32))
}

/// If n = 2^(t-1)·q with q = 2^t - 2^k - 1 prime, the parameters (t, k).
pub fn as_pk_near_perfect(n: u64) -> Option<(u32, u32)> {
    if n == 0 {
        return None;
    }
    let twos = n.trailing_zeros();
    let q = n >> twos;
    let (t, k) = represent_in_p(&BigNat::from(q))?;
    (t == twos + 1 && is_prime_u64(q)).then_some((t, k))
}

/// Theorem 1 construction: 2^(p-1)·(2^p - 1) when 2^p - 1 is prime.
pub fn euclid_perfect(p: u64) -> Result<Option<u64>> {
    if !lucas_lehmer(p)? {
        return Ok(None);
    }
    let value = if p < 64 {
        (1u128 << (p - 1)).checked_mul((1u128 << p) - 1)
    } else {
        None
    };
    match value.and_then(|v| u64::try_from(v).ok()) {
        Some(v) => Ok(Some(v)),
        None => Err(Error::overflow(format!("2^{}·(2^{p} - 1) exceeds 64 bits", p - 1))),
    }
}

/// Which construction produced a number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "lowercase")]
pub enum Provenance {
    /// n = 2^(t-1)·(2^t - 2^k - 1)
    Theorem3 { t: u32, k: u32 },
    /// n = 2^x·m, m an even perfect number
    Theorem4 { m: u64, x: u32 },
    /// n = 2^(p-1)·(2^p - 1)^2
    Theorem5 { p: u64 },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Provenance::Theorem3 { t, k } => write!(f, "theorem3(t={t},k={k})"),
            Provenance::Theorem4 { m, x } => write!(f, "theorem4(m={m},x={x})"),
            Provenance::Theorem5 { p } => write!(f, "theorem5(p={p})"),
        }
    }
}

/// n = 2^two_exp · odd_prime^odd_exp
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredForm {
    pub two_exp: u32,
    pub odd_prime: BigNat,
    pub odd_exp: u32,
}

impl FactoredForm {
    pub fn value(&self) -> BigNat {
        let mut v = BigNat::pow2(self.two_exp);
        for _ in 0..self.odd_exp {
            v = &v * &self.odd_prime;
        }
        v
    }
}

impl fmt::Display for FactoredForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2^{}·{}", self.two_exp, self.odd_prime)?;
        if self.odd_exp != 1 {
            write!(f, "^{}", self.odd_exp)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verification {
    /// σ(n) was computed and σ(n) - 2n equals the claimed redundant divisor.
    Classified,
    /// n exceeds 64 bits; only the symbolic construction is reported.
    BeyondMachineRange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedNearPerfect {
    pub n: BigNat,
    pub redundant: BigNat,
    pub form: FactoredForm,
    pub provenance: Provenance,
    pub verification: Verification,
}

impl GeneratedNearPerfect {
    fn build(form: FactoredForm, redundant: BigNat, provenance: Provenance) -> Result<Self> {
        let n = form.value();
        let verification = match n.to_u64() {
            Some(small) => {
                verify_witness(small, &redundant, provenance)?;
                Verification::Classified
            }
            None => Verification::BeyondMachineRange,
        };
        Ok(GeneratedNearPerfect {
            n,
            redundant,
            form,
            provenance,
            verification,
        })
    }

    pub fn n_u64(&self) -> Option<u64> {
        self.n.to_u64()
    }

    pub fn redundant_u64(&self) -> Option<u64> {
        self.redundant.to_u64()
    }
}

fn verify_witness(n: u64, claimed: &BigNat, provenance: Provenance) -> Result<()> {
    let fail = |detail: String| Error::VerificationFailed {
        provenance: provenance.to_string(),
        detail,
    };
    let sigma = arith::sigma_wide(n)?;
    let excess = sigma as i128 - 2 * n as i128;
    let claimed = claimed
        .to_u64()
        .ok_or_else(|| fail(format!("redundant divisor {claimed} exceeds n = {n}")))?;
    if excess != claimed as i128 {
        return Err(fail(format!("σ({n}) - 2n = {excess}, expected {claimed}")));
    }
    if claimed == 0 || claimed >= n || !n.is_multiple_of(claimed) {
        return Err(fail(format!("{claimed} is not a proper divisor of {n}")));
    }
    Ok(())
}

fn mersenne(p: u64) -> BigNat {
    &BigNat::pow2(p as u32) - &BigNat::from(1u64)
}

/// Theorem 3: 2^(t-1)·(2^t - 2^k - 1) with redundant divisor 2^k, when
/// 2^t - 2^k - 1 is prime.
pub fn theorem3_generate(t: u32, k: u32) -> Result<Option<GeneratedNearPerfect>> {
    if t < 2 || k < 1 || k >= t {
        return Err(Error::InvalidParameters(format!(
            "theorem 3 needs t >= 2 and 1 <= k <= t-1, got t={t} k={k}"
        )));
    }
    let Some(prime) = PkPrime::new(t, k) else {
        return Ok(None);
    };
    let form = FactoredForm {
        two_exp: t - 1,
        odd_prime: prime.value,
        odd_exp: 1,
    };
    GeneratedNearPerfect::build(form, BigNat::pow2(k), Provenance::Theorem3 { t, k }).map(Some)
}

/// Checks that m is an even perfect number and returns p with 2^(p-1) ∥ m.
pub fn even_perfect_exponent(m: u64) -> Result<u64> {
    if m == 0 || m % 2 == 1 || classify::classify(m)?.tag != Tag::Perfect {
        return Err(Error::NotPerfect(m));
    }
    Ok(m.trailing_zeros() as u64 + 1)
}

/// Theorem 4: 2^x·m for an even perfect m = 2^(p-1)(2^p - 1) is
/// near-perfect exactly when x = 1 or x = p, with redundant divisor
/// 2^p·(2^x - 1).
pub fn theorem4_generate(m: u64, x: u32) -> Result<Option<GeneratedNearPerfect>> {
    let p = even_perfect_exponent(m)?;
    if x < 1 {
        return Err(Error::InvalidParameters(format!("theorem 4 needs x >= 1, got {x}")));
    }
    if x != 1 && x as u64 != p {
        return Ok(None);
    }
    let form = FactoredForm {
        two_exp: p as u32 + x - 1,
        odd_prime: mersenne(p),
        odd_exp: 1,
    };
    let redundant = &BigNat::pow2(p as u32) * &(&BigNat::pow2(x) - &BigNat::from(1u64));
    GeneratedNearPerfect::build(form, redundant, Provenance::Theorem4 { m, x }).map(Some)
}

/// Theorem 5: 2^(p-1)·(2^p - 1)^2 with odd redundant divisor 2^p - 1, when
/// 2^p - 1 is prime.
pub fn theorem5_generate(p: u64) -> Result<Option<GeneratedNearPerfect>> {
    if !lucas_lehmer(p)? {
        return Ok(None);
    }
    let q = mersenne(p);
    let form = FactoredForm {
        two_exp: p as u32 - 1,
        odd_prime: q.clone(),
        odd_exp: 2,
    };
    GeneratedNearPerfect::build(form, q, Provenance::Theorem5 { p }).map(Some)
}

/// For an even perfect m with 2^(p-1) ∥ m, the near-perfect numbers
/// n2 = 2^p·m and n3 = (2^p - 1)·m, whose difference is m.
pub fn perfect_difference_pair(m: u64) -> Result<(GeneratedNearPerfect, GeneratedNearPerfect)> {
    let p = even_perfect_exponent(m)?;
    let n2 = theorem4_generate(m, p as u32)?.expect("x = p always constructs");
    let n3 = theorem5_generate(p)?.ok_or(Error::NotPerfect(m))?;
    if n2.n < n3.n || &n2.n - &n3.n != BigNat::from(m) {
        return Err(Error::VerificationFailed {
            provenance: format!("difference pair for {m}"),
            detail: format!("{} - {} != {m}", n2.n, n3.n),
        });
    }
    Ok((n2, n3))
}
