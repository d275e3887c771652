//! Range surveys over [lo, hi): evidence for the near-perfect conjectures,
//! the odd near-perfect search and classification censuses.
//!
//! A survey splits its range into segments, evaluates a batch of segments
//! on a bounded worker pool, merges the batch in ascending order and then
//! checkpoints. Results never depend on the worker count or segment size,
//! and a survey resumed from any checkpoint ends with the same report as an
//! uninterrupted run.

mod checkpoint;
mod report;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{self, is_prime_u64, lucas_lehmer};
use crate::classify::{Classification, NearPerfectWitness, Tag};
use crate::error::{Error, Result};
use crate::sieve::{Parity, SieveConfig, DEFAULT_BLOCK_SIZE, DEFAULT_MAX_HI};

pub use checkpoint::Checkpoint;
pub use report::{MultiplicityRow, Summary};

/// Desk-scale default upper bound for the odd near-perfect search.
pub const DEFAULT_ODD_HI: u64 = 200_000_000;
/// Desk-scale default upper bound for conjecture scans.
pub const DEFAULT_CONJECTURE_HI: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurveyMode {
    /// Near-perfect numbers with redundant divisor 2^k.
    Conjecture1 { k: u32 },
    /// Even near-perfect numbers with odd redundant divisor.
    Conjecture2,
    /// Redundant divisor multiplicities.
    Conjecture3,
    OddNearPerfect,
    Census,
}

impl SurveyMode {
    pub fn parity(self) -> Parity {
        match self {
            SurveyMode::OddNearPerfect => Parity::OddOnly,
            _ => Parity::All,
        }
    }

    /// Whether the mode can produce violations at all.
    pub fn is_falsifiable(self) -> bool {
        matches!(self, SurveyMode::Conjecture2 | SurveyMode::Conjecture3)
    }

    /// Short name without parameters, usable in file names.
    pub fn slug(self) -> &'static str {
        match self {
            SurveyMode::Conjecture1 { .. } => "conjecture1",
            SurveyMode::Conjecture2 => "conjecture2",
            SurveyMode::Conjecture3 => "conjecture3",
            SurveyMode::OddNearPerfect => "odd-near-perfect",
            SurveyMode::Census => "census",
        }
    }
}

impl fmt::Display for SurveyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurveyMode::Conjecture1 { k } => write!(f, "conjecture1(k={k})"),
            other => f.write_str(other.slug()),
        }
    }
}

impl FromStr for SurveyMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "conjecture2" => Ok(SurveyMode::Conjecture2),
            "conjecture3" => Ok(SurveyMode::Conjecture3),
            "odd-near-perfect" => Ok(SurveyMode::OddNearPerfect),
            "census" => Ok(SurveyMode::Census),
            _ => {
                let k = s
                    .strip_prefix("conjecture1(k=")
                    .and_then(|rest| rest.strip_suffix(')'))
                    .ok_or_else(|| format!("unknown survey mode {s:?}"))?;
                let k = k.parse().map_err(|_| format!("bad k in {s:?}"))?;
                Ok(SurveyMode::Conjecture1 { k })
            }
        }
    }
}

impl Serialize for SurveyMode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SurveyMode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurveyConfig {
    pub mode: SurveyMode,
    pub lo: u64,
    pub hi: u64,
    /// Entries per segment (odd entries for odd-only modes).
    pub segment_size: usize,
    pub worker_count: usize,
    pub checkpoint_path: Option<PathBuf>,
}

pub fn default_worker_count() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

impl SurveyConfig {
    pub fn new(mode: SurveyMode, lo: u64, hi: u64) -> Self {
        SurveyConfig {
            mode,
            lo,
            hi,
            segment_size: DEFAULT_BLOCK_SIZE,
            worker_count: default_worker_count(),
            checkpoint_path: None,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.worker_count = workers;
        self
    }

    pub fn with_segment_size(mut self, size: usize) -> Self {
        self.segment_size = size;
        self
    }

    pub fn with_checkpoint(mut self, path: impl Into<PathBuf>) -> Self {
        self.checkpoint_path = Some(path.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: &str| Err(Error::range(self.lo, self.hi, reason));
        if self.lo == 0 {
            return bad("lo must be at least 1");
        }
        if self.lo >= self.hi {
            return bad("lo must be below hi");
        }
        if self.hi > DEFAULT_MAX_HI {
            return bad("hi exceeds the sieve bound");
        }
        if self.segment_size == 0 {
            return Err(Error::InvalidParameters("segment size must be at least 1".into()));
        }
        if self.worker_count == 0 {
            return Err(Error::InvalidParameters("worker count must be at least 1".into()));
        }
        if let SurveyMode::Conjecture1 { k } = self.mode {
            if !(1..64).contains(&k) {
                return Err(Error::InvalidParameters(format!("k must be in 1..=63, got {k}")));
            }
        }
        Ok(())
    }

    fn sieve(&self) -> SieveConfig {
        SieveConfig {
            block_size: self.segment_size,
            max_hi: DEFAULT_MAX_HI,
        }
    }
}

/// One hit or violation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub n: u64,
    pub sigma: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub redundant: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<Tag>,
    pub factorization: Vec<(u64, u32)>,
    pub mode: SurveyMode,
    /// Conjecture 2: the redundant divisor is a Mersenne prime.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mersenne_divisor: Option<bool>,
    /// Conjecture 2: n = 2^(p-1)·(2^p - 1)^2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem5_form: Option<bool>,
}

impl SurveyRecord {
    fn near_perfect(mode: SurveyMode, w: NearPerfectWitness) -> Self {
        SurveyRecord {
            n: w.n,
            sigma: w.sigma,
            redundant: Some(w.redundant),
            tag: None,
            factorization: arith::factorize(w.n).into_factors(),
            mode,
            mersenne_divisor: None,
            theorem5_form: None,
        }
    }
}

/// Totals for census surveys.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCounts {
    pub deficient: u64,
    pub perfect: u64,
    pub abundant: u64,
    pub near_perfect: u64,
    pub odd_abundant: u64,
}

impl CensusCounts {
    fn add(&mut self, other: &CensusCounts) {
        self.deficient += other.deficient;
        self.perfect += other.perfect;
        self.abundant += other.abundant;
        self.near_perfect += other.near_perfect;
        self.odd_abundant += other.odd_abundant;
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurveyReport {
    pub mode: SurveyMode,
    pub lo: u64,
    pub hi: u64,
    pub segment_size: usize,
    pub worker_count: usize,
    pub hits: Vec<SurveyRecord>,
    pub violations: Vec<SurveyRecord>,
    /// Every n below this value has been processed.
    pub completed_up_to: u64,
    pub elapsed_secs: f64,
    pub census: Option<CensusCounts>,
}

impl SurveyReport {
    pub fn is_complete(&self) -> bool {
        self.completed_up_to >= self.hi
    }

    /// Redundant divisor -> near-perfect numbers having it, over the hits.
    pub fn multiplicity(&self) -> BTreeMap<u64, Vec<u64>> {
        multiplicity(&self.hits)
    }

    /// Hits whose redundant divisor is 1 (σ(n) = 2n + 1).
    pub fn unit_divisor_hits(&self) -> usize {
        self.hits.iter().filter(|h| h.redundant == Some(1)).count()
    }

    /// Equality ignoring timing and execution parameters.
    pub fn same_results(&self, other: &SurveyReport) -> bool {
        self.mode == other.mode
            && self.lo == other.lo
            && self.hi == other.hi
            && self.completed_up_to == other.completed_up_to
            && self.hits == other.hits
            && self.violations == other.violations
            && self.census == other.census
    }
}

fn multiplicity(hits: &[SurveyRecord]) -> BTreeMap<u64, Vec<u64>> {
    let mut table: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for h in hits {
        if let Some(d) = h.redundant {
            table.entry(d).or_default().push(h.n);
        }
    }
    table
}

/// Records contradicting the conjecture under test, sorted by n.
///
/// Conjecture 2: the odd redundant divisor is not a Mersenne prime.
/// Conjecture 3: a redundant divisor that is not a power of two (1 = 2^0
/// counts as one) belongs to two or more near-perfect numbers.
pub fn derive_violations(mode: SurveyMode, hits: &[SurveyRecord]) -> Vec<SurveyRecord> {
    match mode {
        SurveyMode::Conjecture2 => hits
            .iter()
            .filter(|h| h.mersenne_divisor == Some(false))
            .cloned()
            .collect(),
        SurveyMode::Conjecture3 => {
            let shared: Vec<u64> = multiplicity(hits)
                .into_iter()
                .filter(|(d, ns)| !d.is_power_of_two() && ns.len() >= 2)
                .map(|(d, _)| d)
                .collect();
            hits.iter()
                .filter(|h| h.redundant.is_some_and(|d| shared.contains(&d)))
                .cloned()
                .collect()
        }
        _ => Vec::new(),
    }
}

/// Whether odd d is a Mersenne prime, and whether n = 2^(p-1)·d^2 with d = 2^p - 1.
pub fn mersenne_annotation(n: u64, d: u64) -> (bool, bool) {
    let Some(plus) = d.checked_add(1) else {
        return (false, false);
    };
    if !plus.is_power_of_two() || d < 3 {
        return (false, false);
    }
    let p = plus.trailing_zeros() as u64;
    let mersenne = is_prime_u64(p) && lucas_lehmer(p).unwrap_or(false);
    let form = mersenne && n as u128 == (1u128 << (p - 1)) * (d as u128) * (d as u128);
    (mersenne, form)
}

#[derive(Default)]
struct SegmentOutcome {
    hits: Vec<SurveyRecord>,
    census: CensusCounts,
}

fn process_segment(mode: SurveyMode, sieve: &SieveConfig, a: u64, b: u64) -> Result<SegmentOutcome> {
    let seg = sieve.segment(a, b, mode.parity())?;
    let mut out = SegmentOutcome::default();
    match mode {
        SurveyMode::Conjecture1 { k } => {
            let d = 1u64 << k;
            for (n, s) in seg.iter() {
                if s as u128 == 2 * n as u128 + d as u128 {
                    if let Some(w) = NearPerfectWitness::from_sigma(n, s) {
                        out.hits.push(SurveyRecord::near_perfect(mode, w));
                    }
                }
            }
        }
        SurveyMode::Conjecture2 => {
            for (n, s) in seg.iter() {
                if n % 2 != 0 {
                    continue;
                }
                if let Some(w) = NearPerfectWitness::from_sigma(n, s) {
                    if w.redundant % 2 == 1 {
                        let (mersenne, form) = mersenne_annotation(n, w.redundant);
                        let mut rec = SurveyRecord::near_perfect(mode, w);
                        rec.mersenne_divisor = Some(mersenne);
                        rec.theorem5_form = Some(form);
                        out.hits.push(rec);
                    }
                }
            }
        }
        SurveyMode::Conjecture3 | SurveyMode::OddNearPerfect => {
            for (n, s) in seg.iter() {
                if let Some(w) = NearPerfectWitness::from_sigma(n, s) {
                    out.hits.push(SurveyRecord::near_perfect(mode, w));
                }
            }
        }
        SurveyMode::Census => {
            for (n, s) in seg.iter() {
                let c = Classification::from_sigma(n, s);
                match c.tag {
                    Tag::Deficient => out.census.deficient += 1,
                    Tag::Perfect => out.census.perfect += 1,
                    Tag::Abundant => {
                        out.census.abundant += 1;
                        if n % 2 == 1 {
                            out.census.odd_abundant += 1;
                        }
                    }
                }
                let witness = NearPerfectWitness::from_sigma(n, s);
                if witness.is_some() {
                    out.census.near_perfect += 1;
                }
                if c.tag == Tag::Perfect || witness.is_some() {
                    out.hits.push(SurveyRecord {
                        n,
                        sigma: s,
                        redundant: witness.map(|w| w.redundant),
                        tag: Some(c.tag),
                        factorization: arith::factorize(n).into_factors(),
                        mode,
                        mersenne_divisor: None,
                        theorem5_form: None,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Ways to stop a survey early. The survey always stops at a segment
/// boundary, after writing its checkpoint.
#[derive(Clone, Debug, Default)]
pub struct Interrupt {
    /// Stop once every n below this value is processed.
    pub halt_at: Option<u64>,
    /// Stop after the current batch when set.
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Interrupt {
    pub fn halt_at(n: u64) -> Self {
        Interrupt {
            halt_at: Some(n),
            cancel: None,
        }
    }

    fn should_stop(&self, cursor: u64) -> bool {
        self.halt_at.is_some_and(|h| cursor >= h)
            || self.cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed))
    }
}

/// Runs a survey to completion, continuing from its checkpoint if one exists.
pub fn run(config: &SurveyConfig) -> Result<SurveyReport> {
    run_with(config, &Interrupt::default())
}

/// Runs a survey until it completes or `interrupt` fires.
pub fn run_with(config: &SurveyConfig, interrupt: &Interrupt) -> Result<SurveyReport> {
    config.validate()?;
    let started = Instant::now();
    let mut state = match &config.checkpoint_path {
        Some(path) if path.exists() => {
            let cp = Checkpoint::load(path)?;
            cp.ensure_matches(config, path)?;
            cp
        }
        _ => Checkpoint::fresh(config),
    };
    let prior_elapsed = state.elapsed_secs;

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count)
        .build()
        .map_err(|e| Error::InvalidParameters(format!("worker pool: {e}")))?;
    let sieve = config.sieve();
    let mode = config.mode;

    while state.completed_up_to < config.hi && !interrupt.should_stop(state.completed_up_to) {
        let mut batch = Vec::with_capacity(config.worker_count);
        for (a, b) in sieve.blocks(state.completed_up_to, config.hi, mode.parity()) {
            if batch.len() == config.worker_count || interrupt.halt_at.is_some_and(|h| a >= h) {
                break;
            }
            batch.push((a, b));
        }
        let outcomes: Vec<SegmentOutcome> = pool.install(|| {
            batch
                .par_iter()
                .map(|&(a, b)| process_segment(mode, &sieve, a, b))
                .collect::<Result<_>>()
        })?;
        for outcome in outcomes {
            state.hits.extend(outcome.hits);
            if let Some(c) = state.census.as_mut() {
                c.add(&outcome.census);
            }
        }
        state.completed_up_to = batch.last().map(|&(_, b)| b).unwrap_or(config.hi);
        state.violations = derive_violations(mode, &state.hits);
        state.elapsed_secs = prior_elapsed + started.elapsed().as_secs_f64();
        if let Some(path) = &config.checkpoint_path {
            state.save(path)?;
        }
    }
    state.violations = derive_violations(mode, &state.hits);
    Ok(state.into_report(config))
}

/// Continues the survey recorded in a checkpoint, with default execution
/// parameters.
pub fn resume(checkpoint_path: &Path) -> Result<SurveyReport> {
    let cp = Checkpoint::load(checkpoint_path)?;
    let config = SurveyConfig::new(cp.mode, cp.lo, cp.hi).with_checkpoint(checkpoint_path);
    run(&config)
}

pub fn survey_conjecture1(k: u32, lo: u64, hi: u64) -> Result<SurveyReport> {
    run(&SurveyConfig::new(SurveyMode::Conjecture1 { k }, lo, hi))
}

pub fn survey_conjecture2(lo: u64, hi: u64) -> Result<SurveyReport> {
    run(&SurveyConfig::new(SurveyMode::Conjecture2, lo, hi))
}

pub fn survey_conjecture3(lo: u64, hi: u64) -> Result<SurveyReport> {
    run(&SurveyConfig::new(SurveyMode::Conjecture3, lo, hi))
}

pub fn survey_odd_near_perfect(lo: u64, hi: u64) -> Result<SurveyReport> {
    run(&SurveyConfig::new(SurveyMode::OddNearPerfect, lo, hi))
}

pub fn survey_census(lo: u64, hi: u64) -> Result<SurveyReport> {
    run(&SurveyConfig::new(SurveyMode::Census, lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify;

    fn ns(records: &[SurveyRecord]) -> Vec<u64> {
        records.iter().map(|r| r.n).collect()
    }

    #[test]
    fn mode_text_round_trip() {
        for mode in [
            SurveyMode::Conjecture1 { k: 7 },
            SurveyMode::Conjecture2,
            SurveyMode::Conjecture3,
            SurveyMode::OddNearPerfect,
            SurveyMode::Census,
        ] {
            assert_eq!(mode.to_string().parse::<SurveyMode>().unwrap(), mode);
        }
        assert!("conjecture4".parse::<SurveyMode>().is_err());
        assert!("conjecture1(k=x)".parse::<SurveyMode>().is_err());
    }

    #[test]
    fn conjecture1_examples() {
        assert_eq!(ns(&survey_conjecture1(1, 1, 1000).unwrap().hits), vec![20, 104, 464, 650]);
        assert!(survey_conjecture1(1, 1, 20).unwrap().hits.is_empty());
        assert_eq!(ns(&survey_conjecture1(3, 1, 1000).unwrap().hits), vec![56, 368]);
        let r = survey_conjecture1(1, 1, 1000).unwrap();
        assert!(r.violations.is_empty());
        assert!(matches!(survey_conjecture1(0, 1, 1000), Err(Error::InvalidParameters(_))));
    }

    #[test]
    fn conjecture2_examples() {
        let r = survey_conjecture2(1, 1000).unwrap();
        assert_eq!(ns(&r.hits), vec![18, 196]);
        assert!(r.violations.is_empty());
        assert!(r.hits.iter().all(|h| h.mersenne_divisor == Some(true) && h.theorem5_form == Some(true)));
        assert!(survey_conjecture2(1, 18).unwrap().hits.is_empty());
    }

    #[test]
    fn conjecture3_examples() {
        let r = survey_conjecture3(1, 1000).unwrap();
        let table = r.multiplicity();
        assert_eq!(table[&2], vec![20, 104, 464, 650]);
        assert_eq!(table[&3], vec![18]);
        assert!(r.violations.is_empty());
        assert!(survey_conjecture3(1, 12).unwrap().multiplicity().is_empty());
    }

    #[test]
    fn conjecture3_violation_detection() {
        // synthetic hits: non-power-of-two divisor 6 shared by two numbers
        let rec = |n, d| SurveyRecord {
            n,
            sigma: 2 * n + d,
            redundant: Some(d),
            tag: None,
            factorization: vec![],
            mode: SurveyMode::Conjecture3,
            mersenne_divisor: None,
            theorem5_form: None,
        };
        let hits = vec![rec(10, 2), rec(12, 6), rec(20, 2), rec(30, 6), rec(40, 1), rec(50, 1)];
        assert_eq!(ns(&derive_violations(SurveyMode::Conjecture3, &hits)), vec![12, 30]);
    }

    #[test]
    fn conjecture2_annotation() {
        assert_eq!(mersenne_annotation(18, 3), (true, true));
        assert_eq!(mersenne_annotation(15376, 31), (true, true));
        // 2047 = 23·89 is not a Mersenne prime
        assert_eq!(mersenne_annotation(1 << 20, 2047), (false, false));
        // 2^4 - 1 = 15, exponent 4 is not prime
        assert_eq!(mersenne_annotation(100, 15), (false, false));
        assert_eq!(mersenne_annotation(100, 9), (false, false));
        // Mersenne divisor but a different shape
        assert_eq!(mersenne_annotation(42, 7), (true, false));
    }

    #[test]
    fn odd_examples() {
        let r = survey_odd_near_perfect(1, 1_000_000).unwrap();
        assert!(r.hits.is_empty());
        let r = survey_odd_near_perfect(173_369_889, 173_369_890).unwrap();
        assert_eq!(ns(&r.hits), vec![173_369_889]);
        assert_eq!(r.hits[0].factorization, vec![(3, 4), (7, 2), (11, 2), (19, 2)]);
        let d = r.hits[0].redundant.unwrap();
        assert_eq!(d, 2_751_903);
        assert_eq!(classify::near_perfect_witness(173_369_889).unwrap().unwrap().redundant, d);
    }

    #[test]
    fn census_counts() {
        let r = survey_census(1, 10_000).unwrap();
        let c = r.census.unwrap();
        assert_eq!(c.deficient + c.perfect + c.abundant, 9_999);
        assert_eq!(c.perfect, 4);
        // independent numpy sieve over [1, 10^4)
        assert_eq!(c.abundant, 2487);
        assert_eq!(c.odd_abundant, 23);
        let np = classify::enumerate_near_perfect(1, 10_000).unwrap();
        assert_eq!(c.near_perfect as usize, np.len());
        assert_eq!(r.hits.len(), np.len() + 4);
    }

    #[test]
    fn hits_revalidate_individually() {
        for mode in [SurveyMode::Conjecture2, SurveyMode::Conjecture3, SurveyMode::Conjecture1 { k: 2 }] {
            let r = run(&SurveyConfig::new(mode, 1, 200_000).with_segment_size(4096)).unwrap();
            for h in &r.hits {
                let w = classify::near_perfect_witness(h.n).unwrap().unwrap();
                assert_eq!(Some(w.redundant), h.redundant);
                assert_eq!(w.sigma, h.sigma);
            }
        }
    }

    #[test]
    fn independent_of_workers_and_segments() {
        for mode in [SurveyMode::Conjecture3, SurveyMode::Census, SurveyMode::OddNearPerfect] {
            let base = run(&SurveyConfig::new(mode, 1, 300_000).with_workers(1).with_segment_size(1 << 16)).unwrap();
            for (w, s) in [(2usize, 1000usize), (3, 777), (8, 50_000)] {
                let other = run(&SurveyConfig::new(mode, 1, 300_000).with_workers(w).with_segment_size(s)).unwrap();
                assert!(base.same_results(&other), "{mode} w={w} s={s}");
            }
        }
    }

    #[test]
    fn halting_mid_range() {
        let cfg = SurveyConfig::new(SurveyMode::Conjecture3, 1, 100_000).with_segment_size(1000).with_workers(2);
        let partial = run_with(&cfg, &Interrupt::halt_at(50_000)).unwrap();
        assert!(!partial.is_complete());
        assert!(partial.completed_up_to >= 50_000 && partial.completed_up_to < 100_000);
        assert!(partial.hits.iter().all(|h| h.n < partial.completed_up_to));
    }

    #[test]
    fn invalid_configs() {
        let cfg = SurveyConfig::new(SurveyMode::Census, 10, 10);
        assert!(matches!(run(&cfg), Err(Error::Range { .. })));
        let cfg = SurveyConfig::new(SurveyMode::Census, 0, 10);
        assert!(matches!(run(&cfg), Err(Error::Range { .. })));
        let cfg = SurveyConfig::new(SurveyMode::Census, 1, 10).with_workers(0);
        assert!(matches!(run(&cfg), Err(Error::InvalidParameters(_))));
        let cfg = SurveyConfig::new(SurveyMode::Census, 1, 10).with_segment_size(0);
        assert!(matches!(run(&cfg), Err(Error::InvalidParameters(_))));
    }
}
