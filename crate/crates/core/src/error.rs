use num_bigint::BigInt;
use thiserror::Error;

use crate::partition::Restriction;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{what} requires an odd prime, got {p}")]
    EvenPrime { what: &'static str, p: u64 },

    #[error("unsupported rank {0}")]
    UnsupportedRank(u32),

    #[error("fewer than 3 branch points (R = {0})")]
    TooFewBranchPoints(u32),

    #[error("no hyperbolic action: Riemann-Hurwitz gives genus {0}, need g > 1")]
    NonHyperbolic(BigInt),

    #[error("no action: Riemann-Hurwitz gives a non-integral genus for p = {p}, k = {k}, R = {r}")]
    NonIntegralGenus { p: u64, k: u32, r: u32 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition {partition} is not admissible: {restriction}")]
    Inadmissible {
        partition: String,
        restriction: Restriction,
    },

    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(BigInt),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("enumeration refused: {what} estimated at {estimate}, limit {limit}")]
    GuardExceeded {
        what: &'static str,
        estimate: u128,
        limit: u128,
    },

    #[error("residue class {class} mod {modulus}: need {needed} primes, have {have}")]
    InsufficientPrimes {
        modulus: u64,
        class: u64,
        needed: usize,
        have: usize,
    },

    #[error("not polynomial at modulus {modulus}, degree {degree}: class {class} fit misses held-out prime {prime}")]
    NotPolynomial {
        modulus: u64,
        class: u64,
        degree: usize,
        prime: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Exact division; a nonzero remainder is an invariant violation.
pub(crate) fn exact_div(num: &BigInt, den: &BigInt, context: &str) -> Result<BigInt> {
    use num_integer::Integer;
    let (q, r) = num.div_rem(den);
    if r != BigInt::from(0) {
        return Err(Error::Invariant(format!(
            "{context}: {num} is not divisible by {den}"
        )));
    }
    Ok(q)
}
