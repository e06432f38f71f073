use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

/// Polynomial form of the Gaussian binomial `[m + n, m]_q`.
///
/// `coeffs[l]` is the number of partitions of `l` into at most `m` parts,
/// each of size at most `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GaussianBinomial {
    pub m: u32,
    pub n: u32,
    #[serde(with = "crate::serde_bigint::vec")]
    pub coeffs: Vec<BigInt>,
}

impl GaussianBinomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation at an integer `q`.
    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }
}

/// `[m + n, m]_q` via the q-Pascal rule
/// `G(m, n) = G(m - 1, n) + q^m G(m, n - 1)`.
pub fn gaussian_binomial(m: u32, n: u32) -> GaussianBinomial {
    let (m_us, n_us) = (m as usize, n as usize);
    // row[j] holds G(i, j) for the current i
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]; n_us + 1];
    for i in 1..=m_us {
        let mut next: Vec<Vec<BigInt>> = Vec::with_capacity(n_us + 1);
        next.push(vec![BigInt::one()]);
        for j in 1..=n_us {
            let left = &row[j];
            let shifted = &next[j - 1];
            let len = (i * j) + 1;
            let mut c = vec![BigInt::zero(); len];
            for (l, v) in left.iter().enumerate() {
                c[l] += v;
            }
            for (l, v) in shifted.iter().enumerate() {
                c[l + i] += v;
            }
            next.push(c);
        }
        row = next;
    }
    GaussianBinomial {
        m,
        n,
        coeffs: row.swap_remove(n_us),
    }
}
