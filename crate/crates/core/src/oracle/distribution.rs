use num_bigint::BigInt;

use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::residue::{row_counts, Distribution};

use super::Guard;

/// All rows `(a_0, ..., a_{p-1})` with the given sum, as weighted-sum
/// residues `sum j a_j mod p`.
fn row_residues(part: u32, p: u64, zero_first_column: bool) -> Vec<u64> {
    fn rec(j: u64, left: u32, acc: u64, p: u64, out: &mut Vec<u64>) {
        if j == p - 1 {
            out.push((acc + j * left as u64) % p);
            return;
        }
        for a in 0..=left {
            rec(j + 1, left - a, acc + j * a as u64, p, out);
        }
    }
    let mut out = Vec::new();
    rec(u64::from(zero_first_column), part, 0, p, &mut out);
    out
}

/// Counts every matrix `[a_ij]` with row sums `parts` (and `a_i0 = 0` when
/// `zero_first_column`) by `sum_i w_i sum_j j a_ij mod p`.
pub fn distribution_bruteforce(
    parts: &[u32],
    weights: &[u64],
    p: u64,
    zero_first_column: bool,
    guard: &Guard,
) -> Result<Distribution> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 && zero_first_column {
        return Err(Error::EvenPrime {
            what: "distribution_bruteforce",
            p,
        });
    }
    if parts.len() != weights.len() {
        return Err(Error::InvalidArgument(format!(
            "{} parts but {} weights",
            parts.len(),
            weights.len()
        )));
    }
    let size: BigInt = parts
        .iter()
        .map(|&x| {
            let c = row_counts(x, p);
            if zero_first_column {
                c.b
            } else {
                c.e
            }
        })
        .product();
    guard.check_multisets(&size)?;

    let rows: Vec<Vec<u64>> = parts
        .iter()
        .zip(weights)
        .map(|(&x, &w)| {
            row_residues(x, p, zero_first_column)
                .into_iter()
                .map(|r| r * w % p)
                .collect()
        })
        .collect();
    let mut counts = vec![0u64; p as usize];
    let mut pick = vec![0usize; rows.len()];
    'odometer: loop {
        let s = pick
            .iter()
            .zip(&rows)
            .fold(0, |acc, (&j, row)| (acc + row[j]) % p);
        counts[s as usize] += 1;
        for i in (0..rows.len()).rev() {
            pick[i] += 1;
            if pick[i] < rows[i].len() {
                continue 'odometer;
            }
            pick[i] = 0;
        }
        break;
    }
    Ok(Distribution {
        counts: counts.into_iter().map(BigInt::from).collect(),
    })
}
