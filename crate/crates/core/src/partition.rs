//! Partition types of fully ramified actions and the constraints on them.
//!
//! A fully ramified `Z_p^k` action with `R` branch points distributes the
//! branch points among the nontrivial cyclic subgroups; the sizes of the
//! nonempty groups form a partition of `R`. Only partitions passing
//! [`check_admissible`] can occur.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, is_prime, pow};
use crate::error::{Error, Result};

/// A partition of `R`, parts stored in descending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PartitionType {
    parts: Vec<u32>,
}

impl PartitionType {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self { parts })
    }

    pub fn unitary(n: u32) -> Self {
        Self {
            parts: vec![1; n as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts `n`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `R`, the sum of the parts.
    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.parts[0]
    }

    /// Number of parts equal to `size`.
    pub fn multiplicity(&self, size: u32) -> usize {
        self.parts.iter().filter(|&&x| x == size).count()
    }

    pub fn is_unitary(&self) -> bool {
        self.parts.iter().all(|&x| x == 1)
    }

    /// Compact notation with exponents for repeated parts: `3,1^3`.
    pub fn to_exponent_notation(&self) -> String {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let x = self.parts[i];
            let run = self.parts[i..].iter().take_while(|&&y| y == x).count();
            out.push(if run > 1 {
                format!("{x}^{run}")
            } else {
                x.to_string()
            });
            i += run;
        }
        out.join(",")
    }
}

impl fmt::Display for PartitionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, x) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Accepts `2,2,1`, `{2,2,1}`, `1^4` and mixtures such as `3,1^3`.
impl FromStr for PartitionType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        let bad = |item: &str| Error::InvalidPartition(format!("cannot parse {item:?} in {s:?}"));
        let mut parts = Vec::new();
        for item in body.split(',').map(str::trim) {
            let (base, exp) = match item.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().trim_matches(|c| c == '[' || c == ']')),
                None => (item, "1"),
            };
            let base: u32 = base.parse().map_err(|_| bad(item))?;
            let exp: usize = exp.parse().map_err(|_| bad(item))?;
            if exp == 0 {
                return Err(bad(item));
            }
            parts.extend(std::iter::repeat(base).take(exp));
        }
        Self::new(parts)
    }
}

impl From<PartitionType> for String {
    fn from(p: PartitionType) -> Self {
        p.to_string()
    }
}

impl TryFrom<String> for PartitionType {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// The prime, rank and branch-point count of a fully ramified action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionParams {
    pub p: u64,
    pub k: u32,
    pub r: u32,
}

impl ActionParams {
    pub fn new(p: u64, k: u32, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(1..=2).contains(&k) {
            return Err(Error::UnsupportedRank(k));
        }
        if r < 3 {
            return Err(Error::TooFewBranchPoints(r));
        }
        Ok(Self { p, k, r })
    }
}

/// Genus from Riemann-Hurwitz: `g - 1 = R p^(k-1) (p-1)/2 - p^k`.
pub fn genus_of(params: ActionParams) -> Result<BigInt> {
    let ActionParams { p, k, r } = params;
    if r < 3 {
        return Err(Error::TooFewBranchPoints(r));
    }
    let twice = BigInt::from(r) * pow(p, k - 1) * (p - 1) - 2 * pow(p, k);
    if &twice % 2u32 != BigInt::from(0) {
        return Err(Error::NonIntegralGenus { p, k, r });
    }
    let g = twice / 2 + 1;
    if g <= BigInt::one() {
        return Err(Error::NonHyperbolic(g));
    }
    Ok(g)
}

/// Which admissibility condition a partition violates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restriction {
    /// Fewer parts than the rank.
    TooFewParts { parts: usize, rank: u32 },
    /// More parts than there are cyclic subgroups of order p.
    TooManyParts { parts: usize, subgroups: u128 },
    /// Exactly `k` parts, one of them of size 1.
    UnitPartWithRankParts { rank: u32 },
    /// A part larger than `R - k`.
    PartTooLarge { part: u32, max: u32 },
    /// Rank 1 allows only the single part `{R}`.
    RankOneMultipleParts,
}

impl fmt::Display for Restriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TooFewParts { parts, rank } => write!(
                f,
                "number of parts {parts} is below the rank {rank} (a generating set meets at least k cyclic subgroups)"
            ),
            Self::TooManyParts { parts, subgroups } => write!(
                f,
                "number of parts {parts} exceeds the {subgroups} cyclic subgroups of order p"
            ),
            Self::UnitPartWithRankParts { rank } => write!(
                f,
                "with exactly {rank} parts every part must have size >= 2, otherwise some row sum is nonzero mod p"
            ),
            Self::PartTooLarge { part, max } => {
                write!(f, "part {part} exceeds the largest possible part size R - k = {max}")
            }
            Self::RankOneMultipleParts => f.write_str("rank 1 admits only the one-part partition {R}"),
        }
    }
}

impl std::error::Error for Restriction {}

/// Number of cyclic subgroups of order `p` in `Z_p^k`: `(p^k - 1)/(p - 1)`.
pub fn cyclic_subgroup_count(p: u64, k: u32) -> u128 {
    (0..k).map(|i| (p as u128).pow(i)).sum()
}

/// Tests the necessary conditions on the partition type of a fully ramified
/// `Z_p^k` action.
pub fn check_admissible(
    partition: &PartitionType,
    p: u64,
    k: u32,
) -> std::result::Result<(), Restriction> {
    let n = partition.len();
    let r = partition.total();
    if k == 1 {
        return if n == 1 {
            Ok(())
        } else {
            Err(Restriction::RankOneMultipleParts)
        };
    }
    if n < k as usize {
        return Err(Restriction::TooFewParts { parts: n, rank: k });
    }
    let subgroups = cyclic_subgroup_count(p, k);
    if n as u128 > subgroups {
        return Err(Restriction::TooManyParts {
            parts: n,
            subgroups,
        });
    }
    if n == k as usize && partition.parts().contains(&1) {
        return Err(Restriction::UnitPartWithRankParts { rank: k });
    }
    let max = r.saturating_sub(k);
    if partition.largest() > max {
        return Err(Restriction::PartTooLarge {
            part: partition.largest(),
            max,
        });
    }
    Ok(())
}

pub(crate) fn require_admissible(partition: &PartitionType, p: u64, k: u32) -> Result<()> {
    check_admissible(partition, p, k).map_err(|restriction| Error::Inadmissible {
        partition: partition.to_string(),
        restriction,
    })
}

/// All partitions of `r` with parts in descending order, listed in
/// descending lexicographic order (`{4}`, `{3,1}`, `{2,2}`, ...).
pub fn partitions_of(r: u32) -> Vec<PartitionType> {
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<PartitionType>) {
        if left == 0 {
            out.push(PartitionType { parts: cur.clone() });
            return;
        }
        for x in (1..=max.min(left)).rev() {
            cur.push(x);
            rec(left - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        rec(r, r, &mut Vec::new(), &mut out);
    }
    out
}

/// Partitions of `r` that can be the type of a fully ramified `Z_p^k`
/// action, in descending lexicographic order. For `k = 1` this is `[{R}]`.
pub fn admissible_partitions(p: u64, k: u32, r: u32) -> Vec<PartitionType> {
    if k == 1 {
        return PartitionType::new(vec![r]).into_iter().collect();
    }
    partitions_of(r)
        .into_iter()
        .filter(|part| check_admissible(part, p, k).is_ok())
        .collect()
}

/// Number of normalized markings of `n` parts: `C(p - 2, n - 3)` for
/// `n >= 3`, and 1 for `n = 2`.
pub fn marking_count(p: u64, n: usize) -> Result<BigInt> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "a rank-2 partition needs at least 2 parts, got {n}"
        )));
    }
    if n as u64 > p + 1 {
        return Err(Error::InvalidArgument(format!(
            "{n} parts but only {} cyclic subgroups",
            p + 1
        )));
    }
    if n == 2 {
        return Ok(BigInt::one());
    }
    Ok(binomial(p - 2, n as i64 - 3))
}
