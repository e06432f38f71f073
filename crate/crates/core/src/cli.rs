//! Command-line front end.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::count::{count_types_rank1, count_types_rank2, total_types, CountReport, TotalReport};
use crate::error::{Error, Result};
use crate::oracle::{
    count_orbits, Guard, OrbitTable, DEFAULT_MAX_MULTISETS, DEFAULT_MAX_STEPS, GUARD_STEPS_ENV,
};
use crate::partition::{
    admissible_partitions, check_admissible, genus_of, ActionParams, PartitionType,
};
use crate::polyfit::{render_table, TableFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "topotype",
    version,
    about = "Count topological types of fully ramified Z_p and Z_p^2 actions on surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,

    /// Report progress and timings on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(flatten)]
    pub guard: GuardArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Plain => TableFormat::Plain,
            Format::Json => TableFormat::Json,
            Format::Csv => TableFormat::Csv,
        }
    }
}

#[derive(Debug, Args)]
pub struct GuardArgs {
    /// Largest number of candidate multisets an enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_MULTISETS)]
    pub max_multisets: u128,

    /// Largest group-order times multiset-count product an orbit count may spend.
    #[arg(long, global = true, env = GUARD_STEPS_ENV, default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: u128,
}

impl GuardArgs {
    fn guard(&self) -> Guard {
        Guard {
            max_multisets: self.max_multisets,
            max_steps: self.max_steps,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count types for one partition, or for all partitions of R.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Partition type, e.g. `2,2,1` or `1^4`.
        #[arg(long, conflicts_with = "r", required_unless_present = "r")]
        partition: Option<PartitionType>,
        /// Number of branch points.
        #[arg(long = "R", alias = "r", id = "r")]
        r: Option<u32>,
    },
    /// Per-partition breakdown and total for R branch points.
    Total {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long = "R", alias = "r")]
        r: u32,
    },
    /// Compare closed forms with exhaustive orbit enumeration.
    Verify {
        /// Primes, e.g. `3,5` or `3..7`.
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        /// Branch point counts, e.g. `3..6`.
        #[arg(long = "R", alias = "r")]
        r: String,
    },
    /// Counts as polynomials in p for every partition of R.
    Table {
        #[arg(long = "R", alias = "r")]
        r: u32,
        /// Sampled primes, e.g. `5,7,11,13,17,19`; chosen per row when omitted.
        #[arg(long)]
        primes: Option<String>,
    },
    /// Write one canonical representative per orbit.
    Orbits {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long = "R", alias = "r")]
        r: u32,
        /// Representative file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

/// Parses `3,5,7`, `3..6` (inclusive) or a mix such as `3,5..7`.
pub fn parse_list(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidArgument(format!("bad list {s:?}"));
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                let a: u64 = a.trim().parse().map_err(|_| bad())?;
                let b: u64 = b
                    .trim_start_matches('=')
                    .trim()
                    .parse()
                    .map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(item.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

/// `count` output: the report with the genus from Riemann-Hurwitz.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountOutput {
    #[serde(flatten)]
    pub report: CountReport,
    pub genus: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One verification case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRecord {
    pub p: u64,
    pub k: u32,
    pub r: u32,
    /// `None` for a whole-`R` case that was skipped.
    pub partition: Option<PartitionType>,
    pub oracle: Option<String>,
    pub formula: Option<String>,
    pub status: Status,
    pub reason: Option<String>,
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::InvalidArgument(e.to_string()))
}

fn csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let err = |e: csv::Error| Error::InvalidArgument(e.to_string());
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(err)?;
    for row in rows {
        w.write_record(row).map_err(err)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}

fn burnside_text(report: &CountReport) -> String {
    if report.burnside_terms.is_empty() {
        return "none".into();
    }
    report
        .burnside_terms
        .iter()
        .map(|t| format!("d={}:{}", t.divisor, t.contribution))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_count(out: &CountOutput, format: Format) -> Result<String> {
    let r = &out.report;
    let genus = out.genus.clone().unwrap_or_else(|| "-".into());
    match format {
        Format::Json => json(out),
        Format::Csv => csv_string(
            &[
                "partition",
                "p",
                "k",
                "genus",
                "card_a",
                "burnside",
                "markings",
                "count",
                "validated_by_oracle_only",
            ],
            &[vec![
                r.partition.to_string(),
                r.p.to_string(),
                r.k.to_string(),
                genus,
                r.card_a.to_string(),
                burnside_text(r),
                r.marking_multiplier.to_string(),
                r.count.to_string(),
                r.validated_by_oracle_only.to_string(),
            ]],
        ),
        Format::Plain => {
            let mut s = format!(
                "partition  {}\np          {}\nk          {}\ngenus      {}\n|A|        {}\nburnside   {}\nmarkings   {}\nT          {}\n",
                r.partition,
                r.p,
                r.k,
                genus,
                r.card_a,
                burnside_text(r),
                r.marking_multiplier,
                r.count
            );
            if r.validated_by_oracle_only {
                s.push_str("note       validated-by-oracle-only\n");
            }
            Ok(s)
        }
    }
}

pub fn render_total(t: &TotalReport, format: Format) -> Result<String> {
    let genus = t
        .genus
        .as_ref()
        .map_or("-".to_string(), ToString::to_string);
    match format {
        Format::Json => json(t),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = t
                .rows
                .iter()
                .map(|row| {
                    vec![
                        t.p.to_string(),
                        t.k.to_string(),
                        t.r.to_string(),
                        row.partition.to_string(),
                        row.card_a.to_string(),
                        row.marking_multiplier.to_string(),
                        row.count.to_string(),
                    ]
                })
                .collect();
            rows.push(vec![
                t.p.to_string(),
                t.k.to_string(),
                t.r.to_string(),
                "total".into(),
                String::new(),
                String::new(),
                t.total.to_string(),
            ]);
            csv_string(
                &["p", "k", "r", "partition", "card_a", "markings", "count"],
                &rows,
            )
        }
        Format::Plain => {
            let width = t
                .rows
                .iter()
                .map(|r| r.partition.to_string().len())
                .max()
                .unwrap_or(0)
                .max("partition".len());
            let mut s = format!("p = {}, k = {}, R = {}, genus {}\n", t.p, t.k, t.r, genus);
            s.push_str(&format!("{:<width$}  T\n", "partition"));
            for row in &t.rows {
                s.push_str(&format!(
                    "{:<width$}  {}\n",
                    row.partition.to_string(),
                    row.count
                ));
            }
            s.push_str(&format!("{:<width$}  {}\n", "total", t.total));
            Ok(s)
        }
    }
}

pub fn render_verify(records: &[VerifyRecord], format: Format) -> Result<String> {
    let cell = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
    match format {
        Format::Json => json(&records),
        Format::Csv => csv_string(
            &[
                "p",
                "k",
                "r",
                "partition",
                "oracle",
                "formula",
                "status",
                "reason",
            ],
            &records
                .iter()
                .map(|v| {
                    vec![
                        v.p.to_string(),
                        v.k.to_string(),
                        v.r.to_string(),
                        v.partition.as_ref().map_or("*".into(), ToString::to_string),
                        cell(&v.oracle),
                        cell(&v.formula),
                        status_text(v.status).into(),
                        v.reason.clone().unwrap_or_default(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
        Format::Plain => {
            let mut s = String::new();
            for v in records {
                let part = v.partition.as_ref().map_or("*".into(), ToString::to_string);
                s.push_str(&format!(
                    "{:<7} p={} k={} R={} {} oracle={} formula={}",
                    status_text(v.status),
                    v.p,
                    v.k,
                    v.r,
                    part,
                    cell(&v.oracle),
                    cell(&v.formula)
                ));
                if let Some(reason) = &v.reason {
                    s.push_str(&format!(" ({reason})"));
                }
                s.push('\n');
            }
            let fails = records.iter().filter(|v| v.status == Status::Fail).count();
            let skips = records
                .iter()
                .filter(|v| v.status == Status::Skipped)
                .count();
            s.push_str(&format!(
                "{} cases, {} passed, {} failed, {} skipped\n",
                records.len(),
                records.len() - fails - skips,
                fails,
                skips
            ));
            Ok(s)
        }
    }
}

fn status_text(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIPPED",
    }
}

/// Per-partition comparison of orbit counts with the closed forms.
pub fn verify_case(p: u64, k: u32, r: u32, guard: &Guard) -> Result<Vec<VerifyRecord>> {
    ActionParams::new(p, k, r)?;
    let table = match count_orbits(p, k, r, guard) {
        Ok(t) => t,
        Err(e @ Error::GuardExceeded { .. }) => {
            return Ok(vec![VerifyRecord {
                p,
                k,
                r,
                partition: None,
                oracle: None,
                formula: None,
                status: Status::Skipped,
                reason: Some(e.to_string()),
            }])
        }
        Err(e) => return Err(e),
    };
    compare_with_formulas(&table)
}

fn compare_with_formulas(table: &OrbitTable) -> Result<Vec<VerifyRecord>> {
    let (p, k, r) = (table.p, table.k, table.r);
    let mut parts = admissible_partitions(p, k, r);
    for seen in table.by_partition.keys() {
        if !parts.contains(seen) {
            parts.push(seen.clone());
        }
    }
    let mut out = Vec::new();
    for part in parts {
        let oracle = BigInt::from(table.count(&part));
        let formula = if k == 1 {
            count_types_rank1(r, p).map(|rep| rep.count)
        } else {
            count_types_rank2(&part, p).map(|rep| rep.count)
        };
        let (formula, reason) = match formula {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e.to_string())),
        };
        let status = if formula.as_ref() == Some(&oracle) {
            Status::Pass
        } else {
            Status::Fail
        };
        let reason =
            reason.or_else(|| (k == 2 && p == 3).then(|| "validated-by-oracle-only".into()));
        out.push(VerifyRecord {
            p,
            k,
            r,
            partition: Some(part),
            oracle: Some(oracle.to_string()),
            formula: formula.map(|f| f.to_string()),
            status,
            reason,
        });
    }
    Ok(out)
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    verbose: u8,
}

impl Ctx<'_> {
    fn note(&mut self, msg: impl AsRef<str>) {
        if self.verbose > 0 {
            let _ = writeln!(self.err, "{}", msg.as_ref());
        }
    }

    fn emit(&mut self, s: &str) -> Result<()> {
        self.out
            .write_all(s.as_bytes())
            .map_err(|e| Error::InvalidArgument(e.to_string()))
    }
}

fn genus_text(p: u64, k: u32, r: u32) -> Option<String> {
    ActionParams::new(p, k, r)
        .and_then(genus_of)
        .ok()
        .map(|g| g.to_string())
}

fn run_command(cli: &Cli, ctx: &mut Ctx<'_>) -> Result<i32> {
    let guard = cli.guard.guard();
    match &cli.command {
        Command::Count { p, k, partition, r } => {
            let (p, k) = (*p, *k);
            match (partition, r) {
                (Some(part), _) => {
                    ActionParams::new(p, k, part.total())?;
                    let report = if k == 1 {
                        check_admissible(part, p, 1).map_err(|restriction| {
                            Error::Inadmissible {
                                partition: part.to_string(),
                                restriction,
                            }
                        })?;
                        count_types_rank1(part.total(), p)?
                    } else {
                        count_types_rank2(part, p)?
                    };
                    let out = CountOutput {
                        genus: genus_text(p, k, part.total()),
                        report,
                    };
                    ctx.emit(&render_count(&out, cli.format)?)?;
                }
                (None, Some(r)) => {
                    let total = total_types(p, k, *r)?;
                    ctx.emit(&render_total(&total, cli.format)?)?;
                }
                (None, None) => {
                    return Err(Error::InvalidArgument("need --partition or --R".into()))
                }
            }
            Ok(EXIT_OK)
        }
        Command::Total { p, k, r } => {
            let total = total_types(*p, *k, *r)?;
            ctx.emit(&render_total(&total, cli.format)?)?;
            Ok(EXIT_OK)
        }
        Command::Verify { p, k, r } => {
            let primes = parse_list(p)?;
            let rs = parse_list(r)?;
            let mut records = Vec::new();
            for &p in &primes {
                for &r in &rs {
                    let r = u32::try_from(r)
                        .map_err(|_| Error::InvalidArgument(format!("R = {r} too large")))?;
                    let start = Instant::now();
                    records.extend(verify_case(p, *k, r, &guard)?);
                    ctx.note(format!("p={p} k={k} R={r}: {:.2?}", start.elapsed()));
                }
            }
            ctx.emit(&render_verify(&records, cli.format)?)?;
            let failed = records.iter().any(|v| v.status == Status::Fail);
            Ok(if failed { EXIT_FAIL } else { EXIT_OK })
        }
        Command::Table { r, primes } => {
            let primes = primes.as_deref().map(parse_list).transpose()?;
            let start = Instant::now();
            let text = render_table(*r, primes.as_deref(), cli.format.into())?;
            ctx.note(format!("table R={r}: {:.2?}", start.elapsed()));
            ctx.emit(&text)?;
            Ok(EXIT_OK)
        }
        Command::Orbits { p, k, r, output } => {
            let start = Instant::now();
            let table = count_orbits(*p, *k, *r, &guard)?;
            ctx.note(format!(
                "{} orbits for p={p} k={k} R={r} in {:.2?}",
                table.total,
                start.elapsed()
            ));
            let io = |e: std::io::Error| Error::InvalidArgument(e.to_string());
            match output {
                Some(path) => {
                    let file = File::create(path).map_err(io)?;
                    let mut w = BufWriter::new(file);
                    table.write_representatives(&mut w).map_err(io)?;
                    w.flush().map_err(io)?;
                    let summary = match cli.format {
                        Format::Json => json(&table)?,
                        _ => format!("{} orbits written to {}\n", table.total, path.display()),
                    };
                    ctx.emit(&summary)?;
                }
                None => table.write_representatives(&mut *ctx.out).map_err(io)?,
            }
            Ok(EXIT_OK)
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let mut ctx = Ctx {
        out,
        err,
        verbose: cli.verbose,
    };
    match run_command(&cli, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("topotype").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list("3,5").unwrap(), [3, 5]);
        assert_eq!(parse_list("3..6").unwrap(), [3, 4, 5, 6]);
        assert_eq!(parse_list("2, 4..5").unwrap(), [2, 4, 5]);
        assert!(parse_list("6..3").is_err());
        assert!(parse_list("x").is_err());
        assert!(parse_list("").is_err());
    }

    #[test]
    fn count_plain() {
        let (code, out, _) = call(&["count", "--p", "5", "--k", "2", "--partition", "2,2"]);
        assert_eq!(code, 0);
        assert!(out.contains("T          2\n"), "{out}");
        assert!(out.contains("genus      16\n"));
    }

    #[test]
    fn count_whole_r() {
        let (code, out, _) = call(&["count", "--p", "2", "--k", "2", "--R", "6"]);
        assert_eq!(code, 0);
        assert!(out.lines().last().unwrap().ends_with(" 2"), "{out}");
    }

    #[test]
    fn inadmissible_partition_exits_two() {
        let (code, out, err) = call(&["count", "--p", "5", "--k", "2", "--partition", "4,1"]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("not admissible"), "{err}");
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(call(&["count", "--p", "5"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["count", "--p", "6", "--partition", "2,2"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn count_json_round_trip() {
        let (code, out, _) = call(&[
            "count",
            "--p",
            "7",
            "--partition",
            "3,3",
            "--format",
            "json",
        ]);
        assert_eq!(code, 0);
        let parsed: CountOutput = serde_json::from_str(&out).unwrap();
        assert_eq!(parsed.report.count, BigInt::from(12));
        assert_eq!(render_count(&parsed, Format::Json).unwrap(), out);
        assert!(out.contains("\"count\": \"12\""));
    }

    #[test]
    fn total_outputs() {
        let (code, out, _) = call(&["total", "--p", "5", "--k", "2", "--R", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2 + 3 + 1);
        assert!(out.ends_with("total      10\n"), "{out}");
        let (_, out, _) = call(&["total", "--p", "5", "--R", "4", "--format", "json"]);
        let parsed: TotalReport = serde_json::from_str(&out).unwrap();
        assert_eq!(render_total(&parsed, Format::Json).unwrap(), out);
        let (_, out, _) = call(&["total", "--p", "5", "--R", "4", "--format", "csv"]);
        assert_eq!(out.lines().count(), 5);
        let (_, out, _) = call(&["total", "--p", "7", "--k", "1", "--R", "3"]);
        assert!(out.ends_with("total      2\n"), "{out}");
    }

    #[test]
    fn verify_klein_and_skip() {
        let (code, out, _) = call(&["verify", "--p", "2", "--k", "2", "--R", "3..10"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("0 failed"));
        let (code, out, _) = call(&["verify", "--p", "13", "--k", "2", "--R", "6"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("SKIPPED"), "{out}");
    }

    #[test]
    fn verify_rank1_passes() {
        let (code, out, _) = call(&["verify", "--p", "3,5,7", "--k", "1", "--R", "3..8"]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn verify_reports_failures() {
        let (code, out, _) = call(&[
            "verify", "--p", "5", "--k", "2", "--R", "4", "--format", "json",
        ]);
        assert_eq!(code, 1);
        let recs: Vec<VerifyRecord> = serde_json::from_str(&out).unwrap();
        assert_eq!(render_verify(&recs, Format::Json).unwrap(), out);
        let unitary = recs
            .iter()
            .find(|v| v.partition.as_ref().is_some_and(|p| p.is_unitary()))
            .unwrap();
        assert_eq!(unitary.status, Status::Fail);
        assert_eq!(unitary.oracle.as_deref(), Some("1"));
        assert_eq!(unitary.formula.as_deref(), Some("6"));
    }

    #[test]
    fn table_outputs() {
        let (code, out, _) = call(&["table", "--R", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2);
        let (code, out, _) = call(&["table", "--R", "4", "--format", "csv"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
    }

    #[test]
    fn orbits_to_stdout() {
        let (code, out, _) = call(&["orbits", "--p", "5", "--R", "4"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 4);
    }
}
