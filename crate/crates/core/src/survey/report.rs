//! Report persistence: `<prefix>.jsonl` holds one record per line (hits,
//! then violations, each ascending by n); `<prefix>.summary.json` holds
//! totals and timing. Field names are listed in docs/SCHEMA.md.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{CensusCounts, SurveyMode, SurveyRecord, SurveyReport};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Hit,
    Violation,
}

/// One line of a report or checkpoint body.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportLine {
    pub kind: RecordKind,
    #[serde(flatten)]
    pub record: SurveyRecord,
}

impl ReportLine {
    pub fn new(kind: RecordKind, record: SurveyRecord) -> Self {
        ReportLine { kind, record }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityRow {
    pub redundant: u64,
    pub power_of_two: bool,
    pub numbers: Vec<u64>,
}

/// Sidecar summary of a survey run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mode: SurveyMode,
    pub lo: u64,
    pub hi: u64,
    pub completed_up_to: u64,
    pub complete: bool,
    pub hits: usize,
    pub violations: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub census: Option<CensusCounts>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<Vec<MultiplicityRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit_divisor_hits: Option<usize>,
    pub segment_size: usize,
    pub worker_count: usize,
    pub elapsed_secs: f64,
}

impl SurveyReport {
    /// The line-delimited report body. Independent of timing and execution
    /// parameters.
    pub fn body(&self) -> Result<String> {
        let mut out = String::new();
        for (kind, records) in [(RecordKind::Hit, &self.hits), (RecordKind::Violation, &self.violations)] {
            for r in records {
                out.push_str(&serde_json::to_string(&ReportLine::new(kind, r.clone()))?);
                out.push('\n');
            }
        }
        Ok(out)
    }

    /// Splits a report body back into hits and violations.
    pub fn parse_body(text: &str) -> Result<(Vec<SurveyRecord>, Vec<SurveyRecord>)> {
        let mut hits = Vec::new();
        let mut violations = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let entry: ReportLine = serde_json::from_str(line)?;
            match entry.kind {
                RecordKind::Hit => hits.push(entry.record),
                RecordKind::Violation => violations.push(entry.record),
            }
        }
        Ok((hits, violations))
    }

    pub fn summary(&self) -> Summary {
        let c3 = self.mode == SurveyMode::Conjecture3;
        Summary {
            mode: self.mode,
            lo: self.lo,
            hi: self.hi,
            completed_up_to: self.completed_up_to,
            complete: self.is_complete(),
            hits: self.hits.len(),
            violations: self.violations.len(),
            census: self.census,
            multiplicity: c3.then(|| {
                self.multiplicity()
                    .into_iter()
                    .map(|(redundant, numbers)| MultiplicityRow {
                        redundant,
                        power_of_two: redundant.is_power_of_two(),
                        numbers,
                    })
                    .collect()
            }),
            unit_divisor_hits: c3.then(|| self.unit_divisor_hits()),
            segment_size: self.segment_size,
            worker_count: self.worker_count,
            elapsed_secs: self.elapsed_secs,
        }
    }

    /// Writes `<prefix>.jsonl` and `<prefix>.summary.json`.
    pub fn write(&self, prefix: &Path) -> Result<(PathBuf, PathBuf)> {
        let body_path = with_suffix(prefix, ".jsonl");
        let summary_path = with_suffix(prefix, ".summary.json");
        fs::write(&body_path, self.body()?)?;
        let mut summary = serde_json::to_string_pretty(&self.summary())?;
        summary.push('\n');
        fs::write(&summary_path, summary)?;
        Ok((body_path, summary_path))
    }
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::survey::{run, SurveyConfig};

    #[test]
    fn body_round_trip() {
        let r = run(&SurveyConfig::new(SurveyMode::Conjecture2, 1, 100_000)).unwrap();
        let (hits, violations) = SurveyReport::parse_body(&r.body().unwrap()).unwrap();
        assert_eq!(hits, r.hits);
        assert_eq!(violations, r.violations);
    }

    #[test]
    fn line_field_names() {
        let r = run(&SurveyConfig::new(SurveyMode::Conjecture2, 1, 100)).unwrap();
        let first = r.body().unwrap().lines().next().unwrap().to_owned();
        assert_eq!(
            first,
            r#"{"kind":"hit","n":18,"sigma":39,"redundant":3,"factorization":[[2,1],[3,2]],"mode":"conjecture2","mersenne_divisor":true,"theorem5_form":true}"#
        );
    }

    #[test]
    fn files_written() {
        let dir = tempfile::tempdir().unwrap();
        let r = run(&SurveyConfig::new(SurveyMode::Conjecture3, 1, 1000)).unwrap();
        let (body, summary) = r.write(&dir.path().join("c3")).unwrap();
        assert!(body.ends_with("c3.jsonl"));
        assert_eq!(fs::read_to_string(body).unwrap(), r.body().unwrap());
        let s: Summary = serde_json::from_str(&fs::read_to_string(summary).unwrap()).unwrap();
        assert_eq!(s.hits, 15);
        assert!(s.complete);
        let rows = s.multiplicity.unwrap();
        let two = rows.iter().find(|r| r.redundant == 2).unwrap();
        assert_eq!(two.numbers, vec![20, 104, 464, 650]);
        assert!(two.power_of_two);
        assert_eq!(s.unit_divisor_hits, Some(0));
    }
}
