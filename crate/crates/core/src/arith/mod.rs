//! Exact integer helpers, Gaussian binomials and rational polynomials.
//!
//! Nothing in this crate touches floating point. Counts are [`BigInt`]s and
//! interpolated table entries are polynomials over [`BigRational`].
//!
//! [`BigRational`]: num_rational::BigRational

mod gaussian;
mod poly;

pub use gaussian::{gaussian_binomial, GaussianBinomial};
pub use poly::{interpolate, RationalPolynomial};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `n choose k`, zero when `k < 0` or `k > n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of `n`-element multisets drawn from an `m`-element set.
pub fn multichoose(n: u64, m: u64) -> BigInt {
    if m == 0 {
        return if n == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    binomial(n + m - 1, n as i64)
}

pub fn euler_phi(d: u64) -> u64 {
    assert!(d > 0, "euler_phi(0) is undefined");
    let mut n = d;
    let mut phi = d;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            while n % q == 0 {
                n /= q;
            }
            phi -= phi / q;
        }
        q += 1;
    }
    if n > 1 {
        phi -= phi / n;
    }
    phi
}

/// Divisors `d' > 1` of `d`, ascending.
pub fn divisors_greater_than_one(d: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut q = 1;
    while q * q <= d {
        if d % q == 0 {
            small.push(q);
            if q != d / q {
                large.push(d / q);
            }
        }
        q += 1;
    }
    small.extend(large.into_iter().rev());
    small.retain(|&x| x > 1);
    small
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut q = 3;
    while q * q <= n {
        if n % q == 0 {
            return false;
        }
        q += 2;
    }
    true
}

/// Primes strictly greater than `after`, ascending, unbounded.
pub fn primes_after(after: u64) -> impl Iterator<Item = u64> {
    (after.saturating_add(1)..).filter(|&n| is_prime(n))
}

pub fn pow(base: u64, exp: u32) -> BigInt {
    num_traits::pow(BigInt::from(base), exp as usize)
}
