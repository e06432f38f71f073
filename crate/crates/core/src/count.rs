//! Counts of topological types by partition type.
//!
//! For rank 2 and odd `p`, the count for a partition `{P_1..P_n}` is
//!
//! ```text
//! T = markings(p, n) / (p - 1) * [ |A| + sum_{1 < d' | d} phi(d') prod_i C(P_i/d' + (p-1)/d' - 1, P_i/d') ]
//! ```
//!
//! with `d = gcd(P_1, ..., P_n, p - 1)` and `|A|` the number of coefficient
//! matrices with both row sums zero mod `p`. `|A|` comes from the two- and
//! three-part base cases and a two-parts-at-a-time recursion over the
//! remaining block, or from the shortcut `prod b_{P_i} / p^2` when at least
//! two parts are not `0, 1` mod `p`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{divisors_greater_than_one, euler_phi, gcd, is_prime, multichoose, pow};
use crate::error::{exact_div, Error, Result};
use crate::partition::{
    admissible_partitions, genus_of, marking_count, require_admissible, ActionParams, PartitionType,
};
use crate::residue::{b_product, block_wz, part_wz, PartWZ};

/// One Burnside correction term: the fixed points of the central subgroup
/// element class of order `divisor`, weighted by `phi(divisor)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideTerm {
    pub divisor: u64,
    #[serde(with = "crate::serde_bigint")]
    pub contribution: BigInt,
}

/// The full audit trail of one count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountReport {
    pub partition: PartitionType,
    pub p: u64,
    pub k: u32,
    /// `|A| = |M|`, coefficient matrices with zero row sums.
    #[serde(with = "crate::serde_bigint")]
    pub card_a: BigInt,
    pub burnside_terms: Vec<BurnsideTerm>,
    #[serde(with = "crate::serde_bigint")]
    pub marking_multiplier: BigInt,
    /// Number of topological types `T`.
    #[serde(with = "crate::serde_bigint")]
    pub count: BigInt,
    /// Set for `p = 3`, where the closed forms are only checked against the
    /// orbit enumeration.
    pub validated_by_oracle_only: bool,
}

impl CountReport {
    pub fn burnside_sum(&self) -> BigInt {
        self.burnside_terms.iter().map(|t| &t.contribution).sum()
    }
}

/// Aggregates carried between recursion steps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionState {
    pub u: usize,
    /// `|A|` of the current tail block.
    #[serde(with = "crate::serde_bigint")]
    pub r: BigInt,
    /// Choices of the tail with exactly one of the two residues zero.
    #[serde(with = "crate::serde_bigint")]
    pub s01: BigInt,
    /// Choices of the tail with both residues nonzero.
    #[serde(with = "crate::serde_bigint")]
    pub s11: BigInt,
}

fn require_odd_prime(p: u64, what: &'static str) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::EvenPrime { what, p });
    }
    Ok(())
}

/// `|A({P1, P2})| = W_1 W_2`.
pub fn card_a_base2(p1: u32, p2: u32, p: u64) -> Result<BigInt> {
    Ok(part_wz(p1, p)?.w * part_wz(p2, p)?.w)
}

/// `|A({P1, P2, P3})| = W_1 W_2 W_3 + (p - 1) Z_1 Z_2 Z_3`.
pub fn card_a_base3(p1: u32, p2: u32, p3: u32, p: u64) -> Result<BigInt> {
    let (a, b, c) = (part_wz(p1, p)?, part_wz(p2, p)?, part_wz(p3, p)?);
    Ok(&a.w * &b.w * &c.w + (p - 1) * a.z * b.z * c.z)
}

/// `[W_a Z_a] [[r, s01], [s01, s11]] [W_b Z_b]^T`
fn quadratic_step(a: &PartWZ, b: &PartWZ, st: &RecursionState) -> BigInt {
    &a.w * (&st.r * &b.w + &st.s01 * &b.z) + &a.z * (&st.s01 * &b.w + &st.s11 * &b.z)
}

fn tail_state(u: usize, tail: &[u32], r: BigInt, p: u64) -> Result<RecursionState> {
    let block = block_wz(tail, p)?;
    let s01 = &block.w - &r;
    let s11 = (p - 1) * &block.z - &block.w + &r;
    if s01 < BigInt::zero() || s11 < BigInt::zero() {
        return Err(Error::Invariant(format!(
            "negative completion counts s01={s01} s11={s11} for tail {tail:?}"
        )));
    }
    Ok(RecursionState { u, r, s01, s11 })
}

/// `|A|` for the parts in the given order via the even/odd recursion,
/// together with the state before each step. The recursion starts from the
/// last two (even `n`) or three (odd `n`) parts and prepends two parts per
/// step.
pub fn card_a_trace(parts: &[u32], p: u64) -> Result<(BigInt, Vec<RecursionState>)> {
    require_odd_prime(p, "card_a")?;
    let n = parts.len();
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "|A| needs at least two parts, got {n}"
        )));
    }
    let (mut start, mut r) = if n % 2 == 0 {
        (n - 2, card_a_base2(parts[n - 2], parts[n - 1], p)?)
    } else {
        (
            n - 3,
            card_a_base3(parts[n - 3], parts[n - 2], parts[n - 1], p)?,
        )
    };
    let mut trace = Vec::new();
    let mut u = 0;
    while start > 0 {
        let st = tail_state(u, &parts[start..], r, p)?;
        let a = part_wz(parts[start - 2], p)?;
        let b = part_wz(parts[start - 1], p)?;
        r = quadratic_step(&a, &b, &st);
        trace.push(st);
        start -= 2;
        u += 1;
    }
    Ok((r, trace))
}

/// `|A|` by recursion only, parts taken in the given order.
pub fn card_a_recursive(parts: &[u32], p: u64) -> Result<BigInt> {
    card_a_trace(parts, p).map(|(r, _)| r)
}

/// `prod b_{P_i} / p^2`, available when at least two parts are not
/// `0, 1` mod `p`.
pub fn card_a_shortcut(parts: &[u32], p: u64) -> Option<Result<BigInt>> {
    let off = parts
        .iter()
        .filter(|&&x| !matches!(x as u64 % p, 0 | 1))
        .count();
    if off < 2 || p < 3 {
        return None;
    }
    let pp = BigInt::from(p) * p;
    Some(exact_div(&b_product(parts, p), &pp, "|A| shortcut"))
}

/// `|A(partition)|` with parts in canonical (descending) order, using the
/// shortcut where it applies.
pub fn card_a(partition: &PartitionType, p: u64) -> Result<BigInt> {
    require_odd_prime(p, "card_a")?;
    let parts = partition.parts();
    if parts.len() as u64 > p + 1 {
        return Err(Error::InvalidArgument(format!(
            "{} parts exceed the {} cyclic subgroups",
            parts.len(),
            p + 1
        )));
    }
    match card_a_shortcut(parts, p) {
        Some(v) => v,
        None => card_a_recursive(parts, p),
    }
}

/// `|A(1^[n])|` from the specialized unitary recursion: every part has
/// `W = 0, Z = 1`, so each step keeps only `s11` of the previous block.
pub fn card_a_unitary(n: u32, p: u64) -> Result<BigInt> {
    require_odd_prime(p, "card_a_unitary")?;
    if n < 2 || n as u64 > p + 1 {
        return Err(Error::InvalidArgument(format!(
            "unitary partition needs 2 <= n <= p + 1, got n = {n}"
        )));
    }
    let pb = BigInt::from(p);
    let (mut r, steps, even) = if n % 2 == 0 {
        (BigInt::zero(), (n - 2) / 2, true)
    } else {
        (pb.clone() - 1, (n - 3) / 2, false)
    };
    for u in 1..=steps {
        if even {
            // Z'_u = ((p-1)^(2u) - 1)/p over the previous 2u parts
            let z = exact_div(&(pow(p - 1, 2 * u) - 1), &pb, "unitary Z'")?;
            r = (&pb - 2) * z - 1 + r;
        } else {
            // Z''_u = ((p-1)^(2u+1) + 1)/p over the previous 2u + 1 parts
            let z = exact_div(&(pow(p - 1, 2 * u + 1) + 1), &pb, "unitary Z''")?;
            r = (&pb - 2) * z + 1 + r;
        }
    }
    Ok(r)
}

/// Burnside correction terms for the central subgroup of scalar matrices
/// (rank 2) or for `F_p^*` (rank 1): one term per divisor `1 < d' | d`.
pub fn burnside_terms(parts: &[u32], p: u64) -> Vec<BurnsideTerm> {
    let d = parts.iter().fold(p - 1, |acc, &x| gcd(acc, x as u64));
    divisors_greater_than_one(d)
        .into_iter()
        .map(|dd| {
            let fixed: BigInt = parts
                .iter()
                .map(|&x| multichoose(x as u64 / dd, (p - 1) / dd))
                .product();
            BurnsideTerm {
                divisor: dd,
                contribution: fixed * euler_phi(dd),
            }
        })
        .collect()
}

/// Klein four-group rule for a single partition: one type when the three
/// parts (padding a two-part partition with 0) share a parity, else none.
fn klein_partition_count(parts: &[u32]) -> BigInt {
    let padded: Vec<u32> = parts.iter().copied().chain([0]).take(3).collect();
    let ok = parts.len() <= 3 && padded.iter().all(|&x| x % 2 == padded[0] % 2);
    if ok {
        BigInt::one()
    } else {
        BigInt::zero()
    }
}

/// Number of topological types of fully ramified `Z_p^2` actions with the
/// given partition type.
pub fn count_types_rank2(partition: &PartitionType, p: u64) -> Result<CountReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    require_admissible(partition, p, 2)?;
    let parts = partition.parts();
    if p == 2 {
        let count = klein_partition_count(parts);
        return Ok(CountReport {
            partition: partition.clone(),
            p,
            k: 2,
            card_a: count.clone(),
            burnside_terms: Vec::new(),
            marking_multiplier: BigInt::one(),
            count,
            validated_by_oracle_only: false,
        });
    }
    let card = match parts.len() {
        2 => card_a_base2(parts[0], parts[1], p)?,
        3 => card_a_base3(parts[0], parts[1], parts[2], p)?,
        _ => card_a(partition, p)?,
    };
    let terms = burnside_terms(parts, p);
    let marking = marking_count(p, parts.len())?;
    let sum: BigInt = &card + terms.iter().map(|t| &t.contribution).sum::<BigInt>();
    let classes = exact_div(&sum, &BigInt::from(p - 1), "Burnside average")?;
    Ok(CountReport {
        partition: partition.clone(),
        p,
        k: 2,
        card_a: card,
        burnside_terms: terms,
        count: &marking * classes,
        marking_multiplier: marking,
        validated_by_oracle_only: p == 3,
    })
}

/// Number of topological types of fully ramified `Z_p` actions with `r`
/// branch points.
pub fn count_types_rank1(r: u32, p: u64) -> Result<CountReport> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r < 3 {
        return Err(Error::TooFewBranchPoints(r));
    }
    let partition = PartitionType::new(vec![r])?;
    if p == 2 {
        let count = BigInt::from(u32::from(r % 2 == 0));
        return Ok(CountReport {
            partition,
            p,
            k: 1,
            card_a: count.clone(),
            burnside_terms: Vec::new(),
            marking_multiplier: BigInt::one(),
            count,
            validated_by_oracle_only: false,
        });
    }
    let w = part_wz(r, p)?.w;
    let terms = burnside_terms(&[r], p);
    let sum: BigInt = &w + terms.iter().map(|t| &t.contribution).sum::<BigInt>();
    let count = exact_div(&sum, &BigInt::from(p - 1), "rank-1 Burnside average")?;
    Ok(CountReport {
        partition,
        p,
        k: 1,
        card_a: w,
        burnside_terms: terms,
        marking_multiplier: BigInt::one(),
        count,
        validated_by_oracle_only: false,
    })
}

/// Types of fully ramified Klein four-group actions with `r` branch points:
/// partitions of `r` into three parts of equal parity plus partitions into
/// two even parts.
pub fn count_types_klein(r: u32) -> Result<BigInt> {
    if r < 3 {
        return Err(Error::TooFewBranchPoints(r));
    }
    let mut n = 0u64;
    for a in 1..=r {
        for b in 1..=a {
            if a + b > r {
                break;
            }
            let c = r - a - b;
            if c == 0 {
                n += u64::from(a % 2 == 0 && b % 2 == 0);
            } else if c <= b && a % 2 == b % 2 && b % 2 == c % 2 {
                n += 1;
            }
        }
    }
    Ok(n.into())
}

/// Per-partition counts and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalReport {
    pub p: u64,
    pub k: u32,
    pub r: u32,
    /// `None` when Riemann-Hurwitz gives no hyperbolic surface.
    #[serde(with = "opt_bigint")]
    pub genus: Option<BigInt>,
    pub rows: Vec<CountReport>,
    #[serde(with = "crate::serde_bigint")]
    pub total: BigInt,
}

mod opt_bigint {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(ToString::to_string).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Sums the per-partition counts over every admissible partition of `r`.
pub fn total_types(p: u64, k: u32, r: u32) -> Result<TotalReport> {
    let params = ActionParams::new(p, k, r)?;
    let genus = genus_of(params).ok();
    let rows: Vec<CountReport> = if k == 1 {
        vec![count_types_rank1(r, p)?]
    } else {
        admissible_partitions(p, k, r)
            .par_iter()
            .map(|part| count_types_rank2(part, p))
            .collect::<Result<_>>()?
    };
    let total = rows.iter().map(|row| &row.count).sum();
    Ok(TotalReport {
        p,
        k,
        r,
        genus,
        rows,
        total,
    })
}
