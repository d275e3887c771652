//! Plain-text survey checkpoints.
//!
//! ```text
//! nearperfect-checkpoint v1
//! config-hash 3f1c0e5a9b2d4c71
//! mode conjecture3
//! lo 1
//! hi 1000000
//! completed-up-to 524289
//! elapsed-secs 0.412
//! census 0 0 0 0 0          (census mode only)
//! hits 38
//! violations 0
//! ---
//! {"kind":"hit","n":12,...}
//! ```
//!
//! The config hash covers (mode, lo, hi); worker count and segment size may
//! change between runs. Files are replaced atomically via rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::report::{RecordKind, ReportLine};
use super::{derive_violations, CensusCounts, SurveyConfig, SurveyMode, SurveyRecord, SurveyReport};
use crate::error::{Error, Result};

const MAGIC: &str = "nearperfect-checkpoint v1";
const SEPARATOR: &str = "---";

/// Survey state at a segment boundary.
#[derive(Clone, Debug, PartialEq)]
pub struct Checkpoint {
    pub mode: SurveyMode,
    pub lo: u64,
    pub hi: u64,
    pub completed_up_to: u64,
    pub elapsed_secs: f64,
    pub census: Option<CensusCounts>,
    pub hits: Vec<SurveyRecord>,
    pub violations: Vec<SurveyRecord>,
}

pub fn config_hash(mode: SurveyMode, lo: u64, hi: u64) -> String {
    let digest = Sha256::digest(format!("{mode}|{lo}|{hi}").as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

impl Checkpoint {
    pub fn fresh(config: &SurveyConfig) -> Self {
        Checkpoint {
            mode: config.mode,
            lo: config.lo,
            hi: config.hi,
            completed_up_to: config.lo,
            elapsed_secs: 0.0,
            census: (config.mode == SurveyMode::Census).then(CensusCounts::default),
            hits: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn render(&self) -> Result<String> {
        let mut out = String::new();
        out.push_str(MAGIC);
        out.push('\n');
        out.push_str(&format!("config-hash {}\n", config_hash(self.mode, self.lo, self.hi)));
        out.push_str(&format!("mode {}\n", self.mode));
        out.push_str(&format!("lo {}\n", self.lo));
        out.push_str(&format!("hi {}\n", self.hi));
        out.push_str(&format!("completed-up-to {}\n", self.completed_up_to));
        out.push_str(&format!("elapsed-secs {}\n", self.elapsed_secs));
        if let Some(c) = &self.census {
            out.push_str(&format!(
                "census {} {} {} {} {}\n",
                c.deficient, c.perfect, c.abundant, c.near_perfect, c.odd_abundant
            ));
        }
        out.push_str(&format!("hits {}\n", self.hits.len()));
        out.push_str(&format!("violations {}\n", self.violations.len()));
        out.push_str(SEPARATOR);
        out.push('\n');
        for (kind, records) in [(RecordKind::Hit, &self.hits), (RecordKind::Violation, &self.violations)] {
            for r in records {
                out.push_str(&serde_json::to_string(&ReportLine::new(kind, r.clone()))?);
                out.push('\n');
            }
        }
        Ok(out)
    }

    /// Writes to a sibling temporary file, then renames over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let text = self.render()?;
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = PathBuf::from(tmp);
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Self::parse(&text).map_err(|reason| Error::CorruptCheckpoint {
            path: path.to_path_buf(),
            reason,
        })
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        if lines.next() != Some(MAGIC) {
            return Err("missing checkpoint header".into());
        }
        let mut field = |name: &str| -> Result<String, String> {
            let line = lines.next().ok_or_else(|| format!("missing field {name}"))?;
            line.strip_prefix(name)
                .and_then(|rest| rest.strip_prefix(' '))
                .map(str::to_owned)
                .ok_or_else(|| format!("expected field {name}, found {line:?}"))
        };
        fn num<T: std::str::FromStr>(name: &str, v: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("field {name}: cannot parse {v:?}"))
        }

        let hash = field("config-hash")?;
        let mode: SurveyMode = field("mode")?.parse()?;
        let lo: u64 = num("lo", &field("lo")?)?;
        let hi: u64 = num("hi", &field("hi")?)?;
        if hash != config_hash(mode, lo, hi) {
            return Err("config hash does not match header fields".into());
        }
        let completed_up_to: u64 = num("completed-up-to", &field("completed-up-to")?)?;
        if completed_up_to < lo || completed_up_to > hi {
            return Err(format!("completed-up-to {completed_up_to} outside [{lo}, {hi}]"));
        }
        let elapsed_secs: f64 = num("elapsed-secs", &field("elapsed-secs")?)?;
        let census = if mode == SurveyMode::Census {
            let raw = field("census")?;
            let parts: Vec<u64> = raw
                .split_whitespace()
                .map(|v| num("census", v))
                .collect::<Result<_, _>>()?;
            let [deficient, perfect, abundant, near_perfect, odd_abundant] = parts[..] else {
                return Err("census needs five counts".into());
            };
            Some(CensusCounts {
                deficient,
                perfect,
                abundant,
                near_perfect,
                odd_abundant,
            })
        } else {
            None
        };
        let hit_count: usize = num("hits", &field("hits")?)?;
        let violation_count: usize = num("violations", &field("violations")?)?;
        if lines.next() != Some(SEPARATOR) {
            return Err("missing record separator".into());
        }

        let mut hits = Vec::with_capacity(hit_count);
        let mut violations = Vec::with_capacity(violation_count);
        for (i, line) in lines.enumerate() {
            let entry: ReportLine =
                serde_json::from_str(line).map_err(|e| format!("record {}: {e}", i + 1))?;
            if entry.record.mode != mode {
                return Err(format!("record {} has mode {}", i + 1, entry.record.mode));
            }
            if entry.record.n < lo || entry.record.n >= completed_up_to {
                return Err(format!("record {} (n = {}) outside the processed range", i + 1, entry.record.n));
            }
            let r = &entry.record;
            let product: Option<u64> = r
                .factorization
                .iter()
                .try_fold(1u64, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?));
            if product != Some(r.n) || crate::arith::sigma(r.n).ok() != Some(r.sigma) {
                return Err(format!("record {} (n = {}) fails revalidation", i + 1, r.n));
            }
            match entry.kind {
                RecordKind::Hit => hits.push(entry.record),
                RecordKind::Violation => violations.push(entry.record),
            }
        }
        if hits.len() != hit_count || violations.len() != violation_count {
            return Err(format!(
                "header announces {hit_count} hits and {violation_count} violations, found {} and {}",
                hits.len(),
                violations.len()
            ));
        }
        if !hits.windows(2).all(|w| w[0].n < w[1].n) {
            return Err("hits are not strictly ascending".into());
        }
        if violations != derive_violations(mode, &hits) {
            return Err("violations disagree with the recorded hits".into());
        }
        Ok(Checkpoint {
            mode,
            lo,
            hi,
            completed_up_to,
            elapsed_secs,
            census,
            hits,
            violations,
        })
    }

    pub fn ensure_matches(&self, config: &SurveyConfig, path: &Path) -> Result<()> {
        let mut diffs = Vec::new();
        if self.mode != config.mode {
            diffs.push(format!("mode {} vs {}", self.mode, config.mode));
        }
        if self.lo != config.lo {
            diffs.push(format!("lo {} vs {}", self.lo, config.lo));
        }
        if self.hi != config.hi {
            diffs.push(format!("hi {} vs {}", self.hi, config.hi));
        }
        if diffs.is_empty() {
            Ok(())
        } else {
            Err(Error::ConfigMismatch {
                path: path.to_path_buf(),
                reason: format!("checkpoint vs requested: {}", diffs.join(", ")),
            })
        }
    }

    pub(super) fn into_report(self, config: &SurveyConfig) -> SurveyReport {
        SurveyReport {
            mode: self.mode,
            lo: self.lo,
            hi: self.hi,
            segment_size: config.segment_size,
            worker_count: config.worker_count,
            hits: self.hits,
            violations: self.violations,
            completed_up_to: self.completed_up_to,
            elapsed_secs: self.elapsed_secs,
            census: self.census,
        }
    }
}
