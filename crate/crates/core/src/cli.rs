//! Command-line front end.
//!
//! Exit codes: 0 success, 1 survey found violations, 2 malformed input,
//! 3 arithmetic overflow, 4 other operational failures (I/O, checkpoints).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::arith::{self, BigNat};
use crate::classify::{self, Classification, NearPerfectWitness, Tag};
use crate::construct::{self, GeneratedNearPerfect, Provenance, Verification};
use crate::error::Error;
use crate::sieve::{PredicateKind, SieveConfig};
use crate::survey::{self, SurveyConfig, SurveyMode, SurveyReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_OVERFLOW: i32 = 3;
pub const EXIT_FAILURE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "nearperfect", version, about = "Perfect and near-perfect number toolkit")]
pub struct Cli {
    /// Output style: aligned tables for people, one JSON object per line for scripts.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Lines,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify n, or every n in lo..hi.
    Classify {
        #[arg(value_parser = parse_target)]
        target: Target,
    },
    /// List near-perfect numbers, perfect numbers or P_k primes.
    Enumerate(EnumerateArgs),
    /// Build near-perfect numbers from a construction theorem.
    Generate(GenerateArgs),
    /// Run a range survey, writing report and checkpoint files.
    Survey(SurveyArgs),
}

#[derive(Debug, Args)]
pub struct EnumerateArgs {
    /// lo..hi (inclusive-exclusive). For --pk-primes the range bounds t.
    #[arg(value_parser = parse_range)]
    pub range: Option<(u64, u64)>,

    #[arg(long, group = "what")]
    pub near_perfect: bool,

    #[arg(long, group = "what")]
    pub perfect: bool,

    #[arg(long, group = "what")]
    pub pk_primes: bool,

    /// Largest t for --pk-primes.
    #[arg(long)]
    pub t_max: Option<u32>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(3..=5))]
    pub theorem: u8,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, value_parser = parse_count)]
    pub m: Option<u64>,
    #[arg(long)]
    pub x: Option<u32>,
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Conjecture1,
    Conjecture2,
    Conjecture3,
    OddNearPerfect,
    Census,
}

#[derive(Debug, Args)]
pub struct SurveyArgs {
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Exponent of the redundant divisor 2^k (conjecture1 only).
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, value_parser = parse_count, default_value = "1")]
    pub lo: u64,
    /// Exclusive bound; defaults to 2e8 for odd-near-perfect, 1e8 otherwise.
    #[arg(long, value_parser = parse_count)]
    pub hi: Option<u64>,
    #[arg(long, env = "NEARPERFECT_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, env = "NEARPERFECT_SEGMENT_SIZE", value_parser = parse_count)]
    pub segment_size: Option<u64>,
    /// Checkpoint file; an existing one is resumed.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Report prefix; writes <out>.jsonl and <out>.summary.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Single(u64),
    Range(u64, u64),
}

/// Parses a positive count: plain digits, `_` separators, or scientific
/// notation with an integral value (`2e8`, `1.5e6`).
pub fn parse_count(s: &str) -> Result<u64, String> {
    let cleaned: String = s.trim().chars().filter(|&c| c != '_').collect();
    let bad = || format!("not a nonnegative integer: {s:?}");
    let Some((mantissa, exp)) = cleaned.split_once(['e', 'E']) else {
        return cleaned.parse().map_err(|_| bad());
    };
    let exp: u32 = exp.strip_prefix('+').unwrap_or(exp).parse().map_err(|_| bad())?;
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let frac_part = frac_part.trim_end_matches('0');
    let digits: u128 = format!("{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let shift = exp
        .checked_sub(frac_part.len() as u32)
        .ok_or_else(|| format!("{s:?} is not an integer"))?;
    10u128
        .checked_pow(shift)
        .and_then(|scale| digits.checked_mul(scale))
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| format!("{s:?} does not fit in 64 bits"))
}

/// Parses `lo..hi`.
pub fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let (lo, hi) = (parse_count(lo)?, parse_count(hi)?);
    if lo == 0 || lo >= hi {
        return Err(format!("range {s:?} must satisfy 1 <= lo < hi"));
    }
    Ok((lo, hi))
}

fn parse_target(s: &str) -> Result<Target, String> {
    if s.contains("..") {
        parse_range(s).map(|(lo, hi)| Target::Range(lo, hi))
    } else {
        match parse_count(s)? {
            0 => Err("n must be positive".into()),
            n => Ok(Target::Single(n)),
        }
    }
}

/// One output line, shared by every subcommand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<BigNat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tag: Option<Tag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub redundant: Option<BigNat>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factorization: Option<Vec<(BigNat, u32)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub provenance: Option<String>,
    /// "none" when a generator's parameters admit no construction.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub construction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<Verification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<bool>,
}

fn factor_list(n: u64) -> Vec<(BigNat, u32)> {
    arith::factorize(n)
        .into_factors()
        .into_iter()
        .map(|(p, e)| (BigNat::from(p), e))
        .collect()
}

impl OutputRecord {
    pub fn classification(c: &Classification) -> Self {
        OutputRecord {
            n: Some(c.n.into()),
            sigma: Some(c.sigma),
            tag: Some(c.tag),
            redundant: NearPerfectWitness::from_sigma(c.n, c.sigma).map(|w| w.redundant.into()),
            factorization: Some(factor_list(c.n)),
            ..Default::default()
        }
    }

    pub fn witness(w: &NearPerfectWitness) -> Self {
        OutputRecord {
            n: Some(w.n.into()),
            sigma: Some(w.sigma),
            redundant: Some(w.redundant.into()),
            ..Default::default()
        }
    }

    pub fn generated(g: &GeneratedNearPerfect) -> Self {
        let sigma = g.n_u64().and_then(|n| arith::sigma(n).ok());
        let mut factorization = vec![(BigNat::from(2u64), g.form.two_exp), (g.form.odd_prime.clone(), g.form.odd_exp)];
        factorization.retain(|&(_, e)| e > 0);
        OutputRecord {
            n: Some(g.n.clone()),
            sigma,
            redundant: Some(g.redundant.clone()),
            factorization: Some(factorization),
            provenance: Some(g.provenance.to_string()),
            verification: Some(g.verification),
            ..Default::default()
        }
    }

    pub fn no_construction(provenance: Provenance) -> Self {
        OutputRecord {
            provenance: Some(provenance.to_string()),
            construction: Some("none".into()),
            ..Default::default()
        }
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Overflow(_) => EXIT_OVERFLOW,
        Error::Zero
        | Error::Range { .. }
        | Error::InvalidExponent(_)
        | Error::InvalidParameters(_)
        | Error::NotPerfect(_)
        | Error::CapExceeded { .. } => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Parses arguments and runs the command. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Error> {
    let mut printer = Printer::new(cli.format);
    let code = match &cli.command {
        Command::Classify { target } => {
            cmd_classify(*target, &mut printer)?;
            EXIT_OK
        }
        Command::Enumerate(args) => {
            cmd_enumerate(args, &mut printer)?;
            EXIT_OK
        }
        Command::Generate(args) => {
            cmd_generate(args, &mut printer)?;
            EXIT_OK
        }
        Command::Survey(args) => cmd_survey(args, &mut printer)?,
    };
    printer.flush(out)?;
    Ok(code)
}

fn cmd_classify(target: Target, printer: &mut Printer) -> Result<(), Error> {
    match target {
        Target::Single(n) => printer.record(OutputRecord::classification(&classify::classify(n)?)),
        Target::Range(lo, hi) => {
            let cfg = SieveConfig::default();
            for (a, b) in cfg.blocks(lo, hi, crate::sieve::Parity::All) {
                for (n, s) in cfg.sigma_segment(a, b)?.iter() {
                    printer.record(OutputRecord::classification(&Classification::from_sigma(n, s)));
                }
            }
        }
    }
    Ok(())
}

fn cmd_enumerate(args: &EnumerateArgs, printer: &mut Printer) -> Result<(), Error> {
    if args.pk_primes {
        let (t_lo, t_max) = match (args.range, args.t_max) {
            (_, Some(t)) => (args.range.map_or(2, |r| r.0), t),
            (Some((lo, hi)), None) => (lo, (hi - 1).min(u32::MAX as u64) as u32),
            (None, None) => return Err(Error::InvalidParameters("--pk-primes needs --t-max or a t range".into())),
        };
        for p in construct::enumerate_p_primes(t_max) {
            if (p.t as u64) < t_lo {
                continue;
            }
            printer.record(OutputRecord {
                n: Some(p.value.clone()),
                provenance: Some(format!("p-prime(t={},k={})", p.t, p.k)),
                verification: Some(if p.is_certified() { Verification::Classified } else { Verification::BeyondMachineRange }),
                ..Default::default()
            });
        }
        return Ok(());
    }
    let (lo, hi) = args
        .range
        .ok_or_else(|| Error::InvalidParameters("enumerate needs a lo..hi range".into()))?;
    if args.perfect {
        for (n, s) in SieveConfig::default().scan_range(lo, hi, PredicateKind::Perfect)? {
            printer.record(OutputRecord::classification(&Classification::from_sigma(n, s)));
        }
    } else if args.near_perfect {
        for w in classify::enumerate_near_perfect(lo, hi)? {
            printer.record(OutputRecord::witness(&w));
        }
    } else {
        return Err(Error::InvalidParameters(
            "choose one of --near-perfect, --perfect, --pk-primes".into(),
        ));
    }
    Ok(())
}

fn cmd_generate(args: &GenerateArgs, printer: &mut Printer) -> Result<(), Error> {
    fn need<T>(v: Option<T>, theorem: u8, name: &str) -> Result<T, Error> {
        v.ok_or_else(|| Error::InvalidParameters(format!("theorem {theorem} needs --{name}")))
    }
    let (result, provenance) = match args.theorem {
        3 => {
            let (t, k) = (need(args.t, args.theorem, "t")?, need(args.k, args.theorem, "k")?);
            (construct::theorem3_generate(t, k)?, Provenance::Theorem3 { t, k })
        }
        4 => {
            let (m, x) = (need(args.m, args.theorem, "m")?, need(args.x, args.theorem, "x")?);
            (construct::theorem4_generate(m, x)?, Provenance::Theorem4 { m, x })
        }
        _ => {
            let p = need(args.p, args.theorem, "p")?;
            (construct::theorem5_generate(p)?, Provenance::Theorem5 { p })
        }
    };
    printer.record(match result {
        Some(g) => OutputRecord::generated(&g),
        None => OutputRecord::no_construction(provenance),
    });
    Ok(())
}

fn cmd_survey(args: &SurveyArgs, printer: &mut Printer) -> Result<i32, Error> {
    let mode = match args.mode {
        ModeArg::Conjecture1 => SurveyMode::Conjecture1 {
            k: args
                .k
                .ok_or_else(|| Error::InvalidParameters("conjecture1 needs --k".into()))?,
        },
        ModeArg::Conjecture2 => SurveyMode::Conjecture2,
        ModeArg::Conjecture3 => SurveyMode::Conjecture3,
        ModeArg::OddNearPerfect => SurveyMode::OddNearPerfect,
        ModeArg::Census => SurveyMode::Census,
    };
    let hi = args.hi.unwrap_or(match mode {
        SurveyMode::OddNearPerfect => survey::DEFAULT_ODD_HI,
        _ => survey::DEFAULT_CONJECTURE_HI,
    });
    let mut config = SurveyConfig::new(mode, args.lo, hi);
    if let Some(w) = args.workers {
        config.worker_count = w;
    }
    if let Some(s) = args.segment_size {
        config.segment_size = usize::try_from(s)
            .map_err(|_| Error::InvalidParameters(format!("segment size {s} too large")))?;
    }
    config.checkpoint_path = args.checkpoint.clone();

    let report = survey::run(&config)?;
    let prefix = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}-{}-{}", mode.slug(), config.lo, config.hi)));
    let (body_path, summary_path) = report.write(&prefix)?;
    printer.survey(&report, &body_path, &summary_path);
    Ok(if report.violations.is_empty() { EXIT_OK } else { EXIT_VIOLATIONS })
}

/// Collects output so nothing is printed when a command fails halfway.
struct Printer {
    format: Format,
    records: Vec<OutputRecord>,
    preamble: Vec<String>,
}

impl Printer {
    fn new(format: Format) -> Self {
        Printer {
            format,
            records: Vec::new(),
            preamble: Vec::new(),
        }
    }

    fn record(&mut self, r: OutputRecord) {
        self.records.push(r);
    }

    fn survey(&mut self, report: &SurveyReport, body: &std::path::Path, summary: &std::path::Path) {
        let mode = report.mode.to_string();
        let to_record = |h: &survey::SurveyRecord, violation: bool| OutputRecord {
            n: Some(h.n.into()),
            sigma: Some(h.sigma),
            tag: h.tag,
            redundant: h.redundant.map(BigNat::from),
            factorization: Some(h.factorization.iter().map(|&(p, e)| (BigNat::from(p), e)).collect()),
            provenance: Some(mode.clone()),
            violation: Some(violation),
            ..Default::default()
        };
        let mut rows: Vec<OutputRecord> = report.hits.iter().map(|h| to_record(h, false)).collect();
        rows.extend(report.violations.iter().map(|h| to_record(h, true)));
        if self.format == Format::Table {
            self.preamble.push(format!("survey {mode} over [{}, {})", report.lo, report.hi));
            self.preamble.push(format!(
                "completed up to {}{}",
                report.completed_up_to,
                if report.is_complete() { " (complete)" } else { "" }
            ));
            self.preamble.push(format!("hits: {}", report.hits.len()));
            self.preamble.push(format!("violations: {}", report.violations.len()));
            if let Some(c) = report.census {
                self.preamble.push(format!(
                    "census: deficient {} perfect {} abundant {} (odd {}) near-perfect {}",
                    c.deficient, c.perfect, c.abundant, c.odd_abundant, c.near_perfect
                ));
            }
            if report.mode == SurveyMode::Conjecture3 {
                let table = report.multiplicity();
                let repeated: Vec<String> = table
                    .iter()
                    .filter(|(d, ns)| ns.len() > 1 && !d.is_power_of_two())
                    .map(|(d, ns)| format!("{d}×{}", ns.len()))
                    .collect();
                self.preamble.push(format!(
                    "distinct redundant divisors: {}; shared non-power-of-two: {}; d = 1 hits: {}",
                    table.len(),
                    if repeated.is_empty() { "none".to_string() } else { repeated.join(", ") },
                    report.unit_divisor_hits()
                ));
            }
            self.preamble.push(format!("elapsed: {:.2}s", report.elapsed_secs));
            self.preamble.push(format!("report: {}", body.display()));
            self.preamble.push(format!("summary: {}", summary.display()));
        }
        self.records.extend(rows);
    }

    fn flush(&self, out: &mut dyn Write) -> std::io::Result<()> {
        match self.format {
            Format::Lines => {
                for r in &self.records {
                    let line = serde_json::to_string(r).map_err(std::io::Error::other)?;
                    writeln!(out, "{line}")?;
                }
            }
            Format::Table => {
                for line in &self.preamble {
                    writeln!(out, "{line}")?;
                }
                if !self.records.is_empty() {
                    if !self.preamble.is_empty() {
                        writeln!(out)?;
                    }
                    write_table(&self.records, out)?;
                }
            }
        }
        Ok(())
    }
}

fn write_table(records: &[OutputRecord], out: &mut dyn Write) -> std::io::Result<()> {
    let show = |v: &Option<String>| v.clone().unwrap_or_else(|| "-".into());
    let rows: Vec<[String; 6]> = records
        .iter()
        .map(|r| {
            let factors = r.factorization.as_ref().map(|f| {
                if f.is_empty() {
                    "1".to_string()
                } else {
                    f.iter()
                        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") })
                        .collect::<Vec<_>>()
                        .join("·")
                }
            });
            let mut note = r.provenance.clone().unwrap_or_default();
            if r.construction.as_deref() == Some("none") {
                note = format!("{note}: no construction");
            }
            if r.violation == Some(true) {
                note = format!("{note} VIOLATION");
            }
            if r.verification == Some(Verification::BeyondMachineRange) {
                note = format!("{note} (unverified, beyond 64 bits)");
            }
            [
                show(&r.n.as_ref().map(|v| v.to_string())),
                show(&r.sigma.map(|v| v.to_string())),
                show(&r.tag.map(|t| t.to_string())),
                show(&r.redundant.as_ref().map(|v| v.to_string())),
                show(&factors),
                if note.is_empty() { "-".into() } else { note },
            ]
        })
        .collect();
    let header = ["n", "sigma", "tag", "redundant", "factorization", "note"];
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[&str]| -> String {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    writeln!(out, "{}", line(&header))?;
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        writeln!(out, "{}", line(&cells))?;
    }
    Ok(())
}
