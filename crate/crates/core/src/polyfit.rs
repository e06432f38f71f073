//! Counts as exact polynomials in `p`, one per residue class of `p`.
//!
//! The count for a fixed partition is evaluated at sampled primes, and
//! within each residue class the lowest-degree interpolant that also
//! reproduces every remaining (held-out) prime is kept.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::arith::{gcd, interpolate, is_prime, primes_after, RationalPolynomial};
use crate::count::count_types_rank2;
use crate::error::{Error, Result};
use crate::partition::{admissible_partitions, PartitionType};

/// Polynomials in `p` indexed by `p mod modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratifiedPolynomial {
    pub modulus: u64,
    pub branches: BTreeMap<u64, RationalPolynomial>,
}

impl StratifiedPolynomial {
    pub fn single(poly: RationalPolynomial) -> Self {
        Self {
            modulus: 1,
            branches: BTreeMap::from([(0, poly)]),
        }
    }

    pub fn branch(&self, p: u64) -> Option<&RationalPolynomial> {
        self.branches.get(&(p % self.modulus))
    }

    pub fn eval(&self, p: u64) -> Option<BigRational> {
        self.branch(p).map(|f| f.eval_int(&BigInt::from(p)))
    }
}

/// Residue classes mod `modulus` that can contain a prime above `modulus`.
pub fn residue_classes(modulus: u64) -> Vec<u64> {
    if modulus <= 1 {
        return vec![0];
    }
    (1..modulus).filter(|&r| gcd(r, modulus) == 1).collect()
}

/// The gcd of the parts. Only the divisors of this gcd that also divide
/// `p - 1` change the count, so `p mod gcd` fixes the branch.
pub fn default_modulus(partition: &PartitionType) -> u64 {
    partition
        .parts()
        .iter()
        .fold(0, |acc, &x| gcd(acc, x as u64))
}

/// `R - 3 + max(n - 3, 0)`: one factor of `p` per branch point beyond three,
/// plus one per marked subgroup beyond the first three.
pub fn default_degree_bound(partition: &PartitionType) -> usize {
    let r = partition.total() as usize;
    let n = partition.len();
    r.saturating_sub(3) + n.saturating_sub(3)
}

/// Smallest prime the fit will sample: above 3, above every part, and with
/// room for `n` distinct cyclic subgroups.
pub fn min_sample_prime(partition: &PartitionType) -> u64 {
    let floor = [
        5,
        partition.largest() as u64 + 1,
        partition.len() as u64 - 1,
    ]
    .into_iter()
    .max()
    .unwrap();
    primes_after(floor - 1).next().unwrap()
}

/// Enough primes for `degree_bound + 2` samples in every class.
pub fn default_primes(partition: &PartitionType, degree_bound: usize, modulus: u64) -> Vec<u64> {
    let classes = residue_classes(modulus);
    let need = degree_bound + 2;
    let mut have: BTreeMap<u64, usize> = classes.iter().map(|&c| (c, 0)).collect();
    let mut out = Vec::new();
    for p in primes_after(min_sample_prime(partition) - 1) {
        if let Some(n) = have.get_mut(&(p % modulus.max(1))) {
            *n += 1;
            out.push(p);
        }
        if have.values().all(|&n| n >= need) {
            break;
        }
    }
    out
}

fn fit_class(
    samples: &[(u64, BigInt)],
    degree_bound: usize,
    modulus: u64,
    class: u64,
) -> Result<RationalPolynomial> {
    let points: Vec<(BigInt, BigRational)> = samples
        .iter()
        .map(|(p, c)| (BigInt::from(*p), BigRational::from_integer(c.clone())))
        .collect();
    for degree in 0..=degree_bound {
        if points.len() < degree + 2 {
            return Err(Error::InsufficientPrimes {
                modulus,
                class,
                needed: degree + 2,
                have: points.len(),
            });
        }
        let f = interpolate(&points[..=degree])?;
        if points[degree + 1..]
            .iter()
            .all(|(x, y)| &f.eval_int(x) == y)
        {
            return Ok(f);
        }
    }
    let prime = samples[degree_bound + 1].0;
    Err(Error::NotPolynomial {
        modulus,
        class,
        degree: degree_bound,
        prime,
    })
}

/// Fits the rank-2 count of `partition` in each residue class of `p` mod
/// `modulus`, using the lowest degree up to `degree_bound` that matches at
/// least one held-out prime per class.
pub fn fit_partition_polynomial(
    partition: &PartitionType,
    degree_bound: usize,
    modulus: u64,
    primes: &[u64],
) -> Result<StratifiedPolynomial> {
    if modulus == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if let Some(&bad) = primes.iter().find(|&&p| !is_prime(p) || p <= 3) {
        return Err(Error::InvalidArgument(format!(
            "sampled primes must be primes above 3, got {bad}"
        )));
    }
    let mut by_class: BTreeMap<u64, Vec<(u64, BigInt)>> = residue_classes(modulus)
        .into_iter()
        .map(|c| (c, Vec::new()))
        .collect();
    for &p in primes {
        if let Some(v) = by_class.get_mut(&(p % modulus)) {
            v.push((p, count_types_rank2(partition, p)?.count));
        }
    }
    let mut branches = BTreeMap::new();
    for (class, samples) in &by_class {
        branches.insert(*class, fit_class(samples, degree_bound, modulus, *class)?);
    }
    Ok(StratifiedPolynomial { modulus, branches })
}

/// `fit_partition_polynomial` with the default modulus, degree bound and
/// primes.
pub fn fit_default(partition: &PartitionType) -> Result<StratifiedPolynomial> {
    let modulus = default_modulus(partition);
    let bound = default_degree_bound(partition);
    let primes = default_primes(partition, bound, modulus);
    fit_partition_polynomial(partition, bound, modulus, &primes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Plain,
    Csv,
    Json,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(Self::Plain),
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(Error::InvalidArgument(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Branch {
    pub class: u64,
    /// Human-readable form, e.g. `(p^2 - 1)/12`.
    pub polynomial: String,
    /// Exact coefficients, constant term first.
    pub coefficients: RationalPolynomial,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sample {
    pub p: u64,
    #[serde(with = "crate::serde_bigint")]
    pub count: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub r: u32,
    pub partition: PartitionType,
    pub modulus: u64,
    pub branches: Vec<Branch>,
    pub samples: Vec<Sample>,
    /// Why no polynomial was fitted, if none was.
    pub error: Option<String>,
}

fn table_row(partition: PartitionType, primes: Option<&[u64]>) -> Result<TableRow> {
    let modulus = default_modulus(&partition);
    let bound = default_degree_bound(&partition);
    let sample_primes = match primes {
        Some(ps) => ps.to_vec(),
        None => default_primes(&partition, bound, modulus),
    };
    let samples = sample_primes
        .iter()
        .map(|&p| {
            count_types_rank2(&partition, p).map(|rep| Sample {
                p,
                count: rep.count,
            })
        })
        .collect::<Result<Vec<_>>>();
    let (samples, fit) = match samples {
        Ok(s) => (
            s,
            fit_partition_polynomial(&partition, bound, modulus, &sample_primes),
        ),
        Err(e) => (Vec::new(), Err(e)),
    };
    let (branches, error) = match fit {
        Ok(fit) => (
            fit.branches
                .into_iter()
                .map(|(class, f)| Branch {
                    class,
                    polynomial: f.to_string(),
                    coefficients: f,
                })
                .collect(),
            None,
        ),
        Err(e) => (Vec::new(), Some(e.to_string())),
    };
    Ok(TableRow {
        r: partition.total(),
        partition,
        modulus,
        branches,
        samples,
        error,
    })
}

/// One row per partition of `r` admissible for large `p`, with the fitted
/// polynomial branches and raw counts. Fit failures are recorded in the row.
pub fn table_rows(r: u32, primes: Option<&[u64]>) -> Result<Vec<TableRow>> {
    if r < 3 {
        return Err(Error::TooFewBranchPoints(r));
    }
    let large = primes_after(r as u64 + 1).next().unwrap();
    admissible_partitions(large, 2, r)
        .into_iter()
        .map(|part| table_row(part, primes))
        .collect()
}

fn render_plain(rows: &[TableRow]) -> String {
    let mut lines: Vec<[String; 4]> = vec![[
        "R".into(),
        "partition".into(),
        "T(p)".into(),
        "samples".into(),
    ]];
    for row in rows {
        let samples = row
            .samples
            .iter()
            .map(|s| format!("{}:{}", s.p, s.count))
            .collect::<Vec<_>>()
            .join(" ");
        let polys: Vec<String> = match &row.error {
            Some(e) => vec![format!("no fit ({e})")],
            None if row.modulus == 1 || row.branches.len() == 1 => {
                vec![row.branches[0].polynomial.clone()]
            }
            None => row
                .branches
                .iter()
                .map(|b| format!("{} if p = {} mod {}", b.polynomial, b.class, row.modulus))
                .collect(),
        };
        for (i, poly) in polys.into_iter().enumerate() {
            let first = i == 0;
            lines.push([
                if first {
                    row.r.to_string()
                } else {
                    String::new()
                },
                if first {
                    row.partition.to_exponent_notation()
                } else {
                    String::new()
                },
                poly,
                if first {
                    samples.clone()
                } else {
                    String::new()
                },
            ]);
        }
    }
    let widths: Vec<usize> = (0..4)
        .map(|c| {
            lines
                .iter()
                .map(|l| l[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for line in &lines {
        let mut text = String::new();
        for (c, cell) in line.iter().enumerate() {
            if c == 3 {
                text.push_str(cell);
            } else {
                let _ = write!(text, "{cell:<w$}  ", w = widths[c]);
            }
        }
        out.push_str(text.trim_end());
        out.push('\n');
    }
    out
}

fn render_csv(rows: &[TableRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::InvalidArgument(e.to_string());
    w.write_record([
        "r",
        "partition",
        "modulus",
        "class",
        "polynomial",
        "coefficients",
        "samples",
        "error",
    ])
    .map_err(io)?;
    for row in rows {
        let samples = row
            .samples
            .iter()
            .map(|s| format!("{}:{}", s.p, s.count))
            .collect::<Vec<_>>()
            .join(" ");
        let base = [
            row.r.to_string(),
            row.partition.to_string(),
            row.modulus.to_string(),
        ];
        if row.branches.is_empty() {
            let rest = [
                String::new(),
                String::new(),
                String::new(),
                samples.clone(),
                row.error.clone().unwrap_or_default(),
            ];
            w.write_record(base.iter().chain(&rest)).map_err(io)?;
        }
        for b in &row.branches {
            let coeffs = b
                .coefficients
                .coeffs()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            let rest = [
                b.class.to_string(),
                b.polynomial.clone(),
                coeffs,
                samples.clone(),
                String::new(),
            ];
            w.write_record(base.iter().chain(&rest)).map_err(io)?;
        }
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}

pub fn render_rows(rows: &[TableRow], format: TableFormat) -> Result<String> {
    match format {
        TableFormat::Plain => Ok(render_plain(rows)),
        TableFormat::Csv => render_csv(rows),
        TableFormat::Json => {
            let mut s = serde_json::to_string_pretty(rows)
                .map_err(|e| Error::InvalidArgument(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

/// Renders the table for `r` branch points.
pub fn render_table(r: u32, primes: Option<&[u64]>, format: TableFormat) -> Result<String> {
    render_rows(&table_rows(r, primes)?, format)
}
