//! Divisor-sum classes: deficient / perfect / abundant, near-perfect
//! witnesses, pseudoperfect testing and (ℕ∖{l})-perfect testing.
//!
//! Proper divisors include 1 and exclude n. A near-perfect n satisfies
//! σ(n) - 2n = d for a proper divisor d of n; that d is the redundant
//! divisor and is determined by σ(n), hence unique.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::sieve::{PredicateKind, SieveConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tag {
    Deficient,
    Perfect,
    Abundant,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Deficient => "deficient",
            Tag::Perfect => "perfect",
            Tag::Abundant => "abundant",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "deficient" => Ok(Tag::Deficient),
            "perfect" => Ok(Tag::Perfect),
            "abundant" => Ok(Tag::Abundant),
            other => Err(format!("unknown tag {other:?}")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub n: u64,
    pub sigma: u64,
    pub tag: Tag,
    /// σ(n) - 2n
    pub abundance: i128,
}

impl Classification {
    /// Builds the classification from a known σ(n).
    pub fn from_sigma(n: u64, sigma: u64) -> Self {
        let abundance = sigma as i128 - 2 * n as i128;
        let tag = match abundance {
            a if a < 0 => Tag::Deficient,
            0 => Tag::Perfect,
            _ => Tag::Abundant,
        };
        Classification {
            n,
            sigma,
            tag,
            abundance,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NearPerfectWitness {
    pub n: u64,
    pub sigma: u64,
    pub redundant: u64,
}

impl NearPerfectWitness {
    /// The witness for n given σ(n), if n is near-perfect.
    #[inline]
    pub fn from_sigma(n: u64, sigma: u64) -> Option<Self> {
        let twice = 2 * n as u128;
        let s = sigma as u128;
        if s <= twice {
            return None;
        }
        let d = s - twice;
        if d < n as u128 && n.is_multiple_of(d as u64) {
            Some(NearPerfectWitness {
                n,
                sigma,
                redundant: d as u64,
            })
        } else {
            None
        }
    }
}

pub fn classify(n: u64) -> Result<Classification> {
    Ok(Classification::from_sigma(n, arith::sigma(n)?))
}

/// The redundant divisor of n, if n is near-perfect.
pub fn near_perfect_witness(n: u64) -> Result<Option<NearPerfectWitness>> {
    Ok(NearPerfectWitness::from_sigma(n, arith::sigma(n)?))
}

/// Every near-perfect n in [lo, hi) with its witness, ascending.
pub fn enumerate_near_perfect(lo: u64, hi: u64) -> Result<Vec<NearPerfectWitness>> {
    enumerate_near_perfect_with(&SieveConfig::default(), lo, hi)
}

pub fn enumerate_near_perfect_with(cfg: &SieveConfig, lo: u64, hi: u64) -> Result<Vec<NearPerfectWitness>> {
    let candidates = cfg.scan_range(lo, hi, PredicateKind::NearPerfectCandidate)?;
    Ok(candidates
        .into_iter()
        .filter_map(|(n, s)| NearPerfectWitness::from_sigma(n, s))
        .collect())
}

/// Default bound for [`is_pseudoperfect`].
pub const DEFAULT_PSEUDOPERFECT_CAP: u64 = 10_000_000;

/// Exact subset-sum over proper divisors, target n.
///
/// Cost is about n·τ(n)/64 word operations and n/8 bytes, which is why
/// inputs are capped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PseudoperfectChecker {
    pub cap: u64,
}

impl Default for PseudoperfectChecker {
    fn default() -> Self {
        PseudoperfectChecker {
            cap: DEFAULT_PSEUDOPERFECT_CAP,
        }
    }
}

impl PseudoperfectChecker {
    pub fn is_pseudoperfect(&self, n: u64) -> Result<bool> {
        if n == 0 {
            return Err(Error::Zero);
        }
        if n > self.cap {
            return Err(Error::CapExceeded { n, cap: self.cap });
        }
        let divs = arith::divisors(n);
        let proper = &divs[..divs.len() - 1];
        let total: u64 = proper.iter().sum();
        if total < n {
            return Ok(false);
        }
        if total == n {
            return Ok(true);
        }
        Ok(subset_sum_reaches(proper, n))
    }
}

/// Whether some subset of `items` sums to exactly `target`.
fn subset_sum_reaches(items: &[u64], target: u64) -> bool {
    let bits = target as usize + 1;
    let words = bits.div_ceil(64);
    let mut reach = vec![0u64; words];
    reach[0] = 1;
    let (goal_word, goal_bit) = (target as usize / 64, target % 64);
    let tail_mask = if bits.is_multiple_of(64) { u64::MAX } else { (1u64 << (bits % 64)) - 1 };
    // larger items first prune faster in practice
    for &item in items.iter().rev() {
        let word_shift = item as usize / 64;
        let bit_shift = (item % 64) as u32;
        for w in (word_shift..words).rev() {
            let src = w - word_shift;
            let mut shifted = reach[src] << bit_shift;
            if bit_shift > 0 && src > 0 {
                shifted |= reach[src - 1] >> (64 - bit_shift);
            }
            reach[w] |= shifted;
        }
        reach[words - 1] &= tail_mask;
        if reach[goal_word] >> goal_bit & 1 == 1 {
            return true;
        }
    }
    false
}

/// Whether n is the sum of some subset of its proper divisors, using the
/// default cap.
pub fn is_pseudoperfect(n: u64) -> Result<bool> {
    PseudoperfectChecker::default().is_pseudoperfect(n)
}

/// (ℕ∖{l})-perfect: perfect when l ∤ n, otherwise near-perfect with
/// redundant divisor exactly l.
pub fn is_n_minus_l_perfect(n: u64, l: u64) -> Result<bool> {
    if n == 0 || l == 0 {
        return Err(Error::Zero);
    }
    if !n.is_multiple_of(l) {
        Ok(classify(n)?.tag == Tag::Perfect)
    } else {
        Ok(near_perfect_witness(n)?.is_some_and(|w| w.redundant == l))
    }
}
