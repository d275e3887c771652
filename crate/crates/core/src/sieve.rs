//! Segmented σ(n) over contiguous ranges.
//!
//! Each segment [lo, hi) is filled by divisor accumulation: every divisor
//! pair (d, n/d) with d <= n/d has d <= sqrt(hi), so the outer loop only runs
//! to sqrt(hi). For each such d we walk the multiples n = d*q in the segment
//! with q >= d, adding d + q (or just d when q = d). The cofactor q advances
//! by one per step, so no division happens in the inner loop.
//!
//! Odd-only segments store odd n only and walk odd d with odd cofactors,
//! which roughly halves the work of odd searches.

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default segment width, in entries.
pub const DEFAULT_BLOCK_SIZE: usize = 1 << 22;

/// Default exclusive upper bound for sieved ranges. σ(n) < 2^46 below it,
/// far from the 64-bit entry limit.
pub const DEFAULT_MAX_HI: u64 = 1 << 40;

/// Which integers a segment covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    All,
    OddOnly,
}

/// σ values for the integers of [lo, hi) (or its odd members).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSegment {
    lo: u64,
    hi: u64,
    parity: Parity,
    values: Vec<u64>,
}

impl SigmaSegment {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Raw σ entries. For `Parity::All`, entry i is σ(lo + i); for
    /// `Parity::OddOnly`, entry i is σ(first_odd + 2i).
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn first(&self) -> u64 {
        match self.parity {
            Parity::All => self.lo,
            Parity::OddOnly => self.lo | 1,
        }
    }

    fn stride(&self) -> u64 {
        match self.parity {
            Parity::All => 1,
            Parity::OddOnly => 2,
        }
    }

    /// σ(n) if n is covered by this segment.
    pub fn get(&self, n: u64) -> Option<u64> {
        if n < self.first() || n >= self.hi {
            return None;
        }
        let offset = n - self.first();
        if !offset.is_multiple_of(self.stride()) {
            return None;
        }
        self.values.get((offset / self.stride()) as usize).copied()
    }

    /// (n, σ(n)) pairs in ascending n.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        let first = self.first();
        let stride = self.stride();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &s)| (first + i as u64 * stride, s))
    }
}

/// What `scan_range` keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PredicateKind {
    /// σ(n) = 2n
    Perfect,
    /// σ(n) > 2n
    Abundant,
    /// σ(n) < 2n
    Deficient,
    /// 2n < σ(n) < 3n: the abundance σ(n) - 2n could be a proper divisor.
    NearPerfectCandidate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Predicate {
    pub kind: PredicateKind,
    pub parity: Parity,
}

impl Predicate {
    pub const fn new(kind: PredicateKind) -> Self {
        Predicate {
            kind,
            parity: Parity::All,
        }
    }

    pub const fn odd(kind: PredicateKind) -> Self {
        Predicate {
            kind,
            parity: Parity::OddOnly,
        }
    }

    #[inline]
    pub fn matches(&self, n: u64, sigma: u64) -> bool {
        let n = n as u128;
        let s = sigma as u128;
        match self.kind {
            PredicateKind::Perfect => s == 2 * n,
            PredicateKind::Abundant => s > 2 * n,
            PredicateKind::Deficient => s < 2 * n,
            PredicateKind::NearPerfectCandidate => s > 2 * n && s < 3 * n,
        }
    }
}

impl From<PredicateKind> for Predicate {
    fn from(kind: PredicateKind) -> Self {
        Predicate::new(kind)
    }
}

/// Segment-size and range limits for the sieve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SieveConfig {
    pub block_size: usize,
    pub max_hi: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            block_size: DEFAULT_BLOCK_SIZE,
            max_hi: DEFAULT_MAX_HI,
        }
    }
}

impl SieveConfig {
    pub fn with_block_size(block_size: usize) -> Self {
        SieveConfig {
            block_size,
            ..Default::default()
        }
    }

    fn check_range(&self, lo: u64, hi: u64) -> Result<()> {
        if lo == 0 {
            return Err(Error::range(lo, hi, "lo must be at least 1"));
        }
        if hi <= lo {
            return Err(Error::range(lo, hi, "hi must exceed lo"));
        }
        if hi > self.max_hi {
            return Err(Error::range(lo, hi, format!("hi exceeds the configured bound {}", self.max_hi)));
        }
        if self.block_size == 0 {
            return Err(Error::range(lo, hi, "block size must be positive"));
        }
        Ok(())
    }

    /// σ over every integer of [lo, hi). The width may not exceed the block size.
    pub fn sigma_segment(&self, lo: u64, hi: u64) -> Result<SigmaSegment> {
        self.segment(lo, hi, Parity::All)
    }

    /// σ over the odd integers of [lo, hi). The number of odd entries may
    /// not exceed the block size.
    pub fn odd_sigma_segment(&self, lo: u64, hi: u64) -> Result<SigmaSegment> {
        self.segment(lo, hi, Parity::OddOnly)
    }

    pub fn segment(&self, lo: u64, hi: u64, parity: Parity) -> Result<SigmaSegment> {
        self.check_range(lo, hi)?;
        let width = entry_count(lo, hi, parity);
        if width > self.block_size as u64 {
            return Err(Error::range(
                lo,
                hi,
                format!("{width} entries exceed the block size {}", self.block_size),
            ));
        }
        let mut values = vec![0u64; width as usize];
        // Fill in L2-sized tiles; each tile pays O(sqrt(hi)) setup.
        let tile = (MIN_TILE_ENTRIES).max(4 * isqrt(hi)) * parity.stride();
        let mut overflowed = false;
        let mut a = lo;
        while a < hi {
            let b = a.saturating_add(tile).min(hi);
            let out = &mut values[entry_count(lo, a, parity) as usize..];
            overflowed |= match parity {
                Parity::All => fill_all(a, b, out),
                Parity::OddOnly => fill_odd(a, b, out),
            };
            a = b;
        }
        if overflowed {
            return Err(Error::overflow(format!(
                "σ accumulation in segment [{lo}, {hi}) exceeded 64 bits"
            )));
        }
        Ok(SigmaSegment { lo, hi, parity, values })
    }

    /// Splits [lo, hi) into block-sized pieces aligned to `lo`.
    pub fn blocks(&self, lo: u64, hi: u64, parity: Parity) -> Vec<(u64, u64)> {
        let span = match parity {
            Parity::All => self.block_size as u64,
            Parity::OddOnly => 2 * self.block_size as u64,
        };
        let mut out = Vec::new();
        let mut a = lo;
        while a < hi {
            let b = a.saturating_add(span).min(hi);
            out.push((a, b));
            a = b;
        }
        out
    }

    /// All (n, σ(n)) in [lo, hi) satisfying `predicate`, ascending.
    ///
    /// Segments are evaluated in parallel on the current rayon pool and
    /// concatenated in order, so the output does not depend on the block
    /// size or the thread count.
    pub fn scan_range(&self, lo: u64, hi: u64, predicate: impl Into<Predicate>) -> Result<Vec<(u64, u64)>> {
        let predicate = predicate.into();
        self.check_range(lo, hi)?;
        let parts: Vec<Vec<(u64, u64)>> = self
            .blocks(lo, hi, predicate.parity)
            .into_par_iter()
            .map(|(a, b)| {
                let seg = self.segment(a, b, predicate.parity)?;
                Ok(seg.iter().filter(|&(n, s)| predicate.matches(n, s)).collect())
            })
            .collect::<Result<_>>()?;
        Ok(parts.into_iter().flatten().collect())
    }
}

const MIN_TILE_ENTRIES: u64 = 1 << 17;

impl Parity {
    fn stride(self) -> u64 {
        match self {
            Parity::All => 1,
            Parity::OddOnly => 2,
        }
    }
}

fn entry_count(lo: u64, hi: u64, parity: Parity) -> u64 {
    match parity {
        Parity::All => hi - lo,
        // odd numbers below x: x / 2
        Parity::OddOnly => hi / 2 - lo / 2,
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.saturating_mul(r) > n {
        r -= 1;
    }
    while (r + 1).saturating_mul(r + 1) <= n {
        r += 1;
    }
    r
}

/// Returns true if any accumulation overflowed.
fn fill_all(lo: u64, hi: u64, out: &mut [u64]) -> bool {
    let mut carry = false;
    let root = isqrt(hi - 1);
    for d in 1..=root {
        let mut q = lo.div_ceil(d).max(d);
        let mut n = d * q;
        if n >= hi {
            continue;
        }
        if q == d {
            let slot = &mut out[(n - lo) as usize];
            let (v, c) = slot.overflowing_add(d);
            *slot = v;
            carry |= c;
            n += d;
            q += 1;
        }
        let mut idx = (n - lo) as usize;
        let step = d as usize;
        while n < hi {
            let slot = &mut out[idx];
            let (v, c) = slot.overflowing_add(d + q);
            *slot = v;
            carry |= c;
            q += 1;
            n += d;
            idx += step;
        }
    }
    carry
}

/// Odd-only fill: `out[i]` receives σ(first + 2i), first = lo | 1.
fn fill_odd(lo: u64, hi: u64, out: &mut [u64]) -> bool {
    let mut carry = false;
    let first = lo | 1;
    if first >= hi {
        return false;
    }
    let root = isqrt(hi - 1);
    let mut d = 1u64;
    while d <= root {
        let mut q = lo.div_ceil(d).max(d);
        if q.is_multiple_of(2) {
            q += 1;
        }
        let mut n = d * q;
        if n < hi {
            if q == d {
                let slot = &mut out[((n - first) / 2) as usize];
                let (v, c) = slot.overflowing_add(d);
                *slot = v;
                carry |= c;
                n += 2 * d;
                q += 2;
            }
            let mut idx = ((n - first) / 2) as usize;
            let step = d as usize;
            while n < hi {
                let slot = &mut out[idx];
                let (v, c) = slot.overflowing_add(d + q);
                *slot = v;
                carry |= c;
                q += 2;
                n += 2 * d;
                idx += step;
            }
        }
        d += 2;
    }
    carry
}

/// `SieveConfig::default().sigma_segment(lo, hi)`.
pub fn sigma_segment(lo: u64, hi: u64) -> Result<SigmaSegment> {
    SieveConfig::default().sigma_segment(lo, hi)
}

/// `SieveConfig::default().scan_range(lo, hi, predicate)`.
pub fn scan_range(lo: u64, hi: u64, predicate: impl Into<Predicate>) -> Result<Vec<(u64, u64)>> {
    SieveConfig::default().scan_range(lo, hi, predicate)
}
