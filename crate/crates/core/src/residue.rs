//! Distribution of weighted row sums mod `p` over nonnegative integer
//! matrices with prescribed row sums.
//!
//! A row `(a_0, ..., a_{p-1})` with `sum a_j = P` has weighted sum
//! `sum j a_j`. Over all `e_P = C(P + p - 1, P)` such rows, and over the
//! `b_P = C(P + p - 2, P)` rows with `a_0 = 0`, the weighted sums are
//! equidistributed mod `p` except when every row sum is `0` or `1` mod `p`.
//! [`part_wz`] and [`block_wz`] give the closed forms; [`full_distribution`]
//! computes the whole distribution for arbitrary parts and weights.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{gaussian_binomial, multichoose};
use crate::error::{exact_div, Error, Result};

/// Row counts for one part: `e` over `p` symbols, `b` over `p - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowCounts {
    pub e: BigInt,
    pub b: BigInt,
}

pub fn row_counts(part: u32, p: u64) -> RowCounts {
    RowCounts {
        e: multichoose(part as u64, p),
        b: multichoose(part as u64, p - 1),
    }
}

/// `b_P`: rows with zero first entry and row sum `P`.
pub fn b_count(part: u32, p: u64) -> BigInt {
    multichoose(part as u64, p - 1)
}

/// `B = prod b_{P_i}`.
pub fn b_product(parts: &[u32], p: u64) -> BigInt {
    parts.iter().map(|&x| b_count(x, p)).product()
}

/// Completion counts: `w` rows (or blocks) whose weighted sum is `0` mod `p`,
/// and `z` for each nonzero residue class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartWZ {
    #[serde(with = "crate::serde_bigint")]
    pub w: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub z: BigInt,
}

impl PartWZ {
    pub fn new(w: impl Into<BigInt>, z: impl Into<BigInt>) -> Self {
        Self {
            w: w.into(),
            z: z.into(),
        }
    }

    /// `w + (p - 1) z`, the total number of rows or blocks.
    pub fn total(&self, p: u64) -> BigInt {
        &self.w + &self.z * (p - 1)
    }
}

fn require_odd(p: u64, what: &'static str) -> Result<()> {
    if p < 3 {
        return Err(Error::EvenPrime { what, p });
    }
    Ok(())
}

/// `(W, Z)` for a single part. An empty part (`P = 0`) gives `(1, 0)`.
pub fn part_wz(part: u32, p: u64) -> Result<PartWZ> {
    require_odd(p, "part_wz")?;
    if part == 0 {
        return Ok(PartWZ::new(1, 0));
    }
    let b = b_count(part, p);
    let pb = BigInt::from(p);
    let wz = match part as u64 % p {
        0 => {
            let z = exact_div(&(&b - 1), &pb, "part_wz")?;
            PartWZ { w: &z + 1, z }
        }
        1 => {
            let z = exact_div(&(&b + 1), &pb, "part_wz")?;
            PartWZ { w: &z - 1, z }
        }
        _ => {
            let q = exact_div(&b, &pb, "part_wz")?;
            PartWZ { w: q.clone(), z: q }
        }
    };
    Ok(wz)
}

/// `(W, Z)` for a block of parts, i.e. for matrices with zero first column
/// and the given row sums, all rows weighted by 1.
pub fn block_wz(parts: &[u32], p: u64) -> Result<PartWZ> {
    require_odd(p, "block_wz")?;
    if parts.is_empty() {
        return Err(Error::InvalidArgument("block_wz of an empty block".into()));
    }
    let big_b = b_product(parts, p);
    let pb = BigInt::from(p);
    if parts.iter().any(|&x| !matches!(x as u64 % p, 0 | 1)) {
        let q = exact_div(&big_b, &pb, "block_wz")?;
        return Ok(PartWZ { w: q.clone(), z: q });
    }
    let t = parts.iter().filter(|&&x| x as u64 % p == 1).count();
    let sign: i64 = if t % 2 == 0 { 1 } else { -1 };
    // Z = (B + (-1)^(t+1)) / p,  W = Z + (-1)^t
    let z = exact_div(&(&big_b - sign), &pb, "block_wz")?;
    Ok(PartWZ { w: &z + sign, z })
}

/// Counts of matrices by weighted-sum residue, indexed `0..p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distribution {
    #[serde(with = "crate::serde_bigint::vec")]
    pub counts: Vec<BigInt>,
}

impl Distribution {
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// True when the nonzero classes `1..p` all carry the same count.
    pub fn nonzero_classes_equal(&self) -> bool {
        self.counts[1..].windows(2).all(|w| w[0] == w[1])
    }
}

/// Residue profile of the weighted sums of single rows with sum `part`.
///
/// The number of rows `(a_0..a_{p-1})` with `sum a_j = P` and weighted sum
/// `l` is the coefficient `t_l` of the Gaussian binomial `[P + p - 1, P]_q`.
/// With `a_0 = 0` every row uses exactly `P` entries of weight at least one;
/// subtracting one from each gives `[P + p - 2, P]_q` shifted by `P`.
fn row_profile(part: u32, p: u64, zero_first_column: bool) -> Vec<BigInt> {
    let mut profile = vec![BigInt::zero(); p as usize];
    if zero_first_column {
        if p < 2 {
            return profile;
        }
        let g = gaussian_binomial(part, (p - 2) as u32);
        for (l, t) in g.coeffs.iter().enumerate() {
            profile[(l as u64 + part as u64) as usize % p as usize] += t;
        }
    } else {
        let g = gaussian_binomial(part, (p - 1) as u32);
        for (l, t) in g.coeffs.iter().enumerate() {
            profile[l % p as usize] += t;
        }
    }
    profile
}

/// Exact distribution of `sum_i w_i sum_j j a_ij mod p` over all matrices
/// with row sums `parts`, optionally restricted to a zero first column.
pub fn full_distribution(
    parts: &[u32],
    weights: &[u64],
    p: u64,
    zero_first_column: bool,
) -> Result<Distribution> {
    require_odd(p, "full_distribution")?;
    if parts.len() != weights.len() {
        return Err(Error::InvalidArgument(format!(
            "{} parts but {} weights",
            parts.len(),
            weights.len()
        )));
    }
    if let Some(&w) = weights.iter().find(|&&w| w == 0 || w >= p) {
        return Err(Error::InvalidArgument(format!("weight {w} outside 1..{p}")));
    }
    let modulus = p as usize;
    let mut acc = vec![BigInt::zero(); modulus];
    acc[0] = BigInt::one();
    for (&part, &weight) in parts.iter().zip(weights) {
        let profile = row_profile(part, p, zero_first_column);
        let mut next = vec![BigInt::zero(); modulus];
        for (a, ca) in acc.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (r, cr) in profile.iter().enumerate() {
                let idx = (a + r * weight as usize) % modulus;
                next[idx] += ca * cr;
            }
        }
        acc = next;
    }
    Ok(Distribution { counts: acc })
}
