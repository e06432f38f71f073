use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// A nonzero vector of `F_p^k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FpVector {
    coords: Vec<u64>,
}

impl FpVector {
    pub fn new(coords: Vec<u64>, p: u64) -> Result<Self> {
        if coords.iter().any(|&c| c >= p) {
            return Err(Error::InvalidArgument(format!(
                "coordinates {coords:?} not reduced mod {p}"
            )));
        }
        if coords.iter().all(|&c| c == 0) {
            return Err(Error::InvalidArgument("zero column".into()));
        }
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Scales so the first nonzero coordinate is 1, naming the cyclic
    /// subgroup the vector generates.
    pub fn projective(&self, p: u64) -> FpVector {
        let lead = *self.coords.iter().find(|&&c| c != 0).unwrap();
        let inv = inverse(lead, p);
        FpVector {
            coords: self.coords.iter().map(|&c| c * inv % p).collect(),
        }
    }
}

impl fmt::Display for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn inverse(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// The nonzero vectors of `F_p^k`, indexed `0..p^k - 1` in lexicographic
/// order of their coordinates.
#[derive(Debug, Clone)]
pub struct VectorSpace {
    pub p: u64,
    pub k: u32,
}

impl VectorSpace {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(1..=2).contains(&k) {
            return Err(Error::UnsupportedRank(k));
        }
        Ok(Self { p, k })
    }

    pub fn len(&self) -> usize {
        (self.p.pow(self.k) - 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn coords(&self, index: u16) -> (u64, u64) {
        let v = index as u64 + 1;
        if self.k == 1 {
            (v, 0)
        } else {
            (v / self.p, v % self.p)
        }
    }

    /// `None` for the zero vector.
    pub fn index(&self, x: u64, y: u64) -> Option<u16> {
        let v = if self.k == 1 { x } else { x * self.p + y };
        v.checked_sub(1).map(|i| i as u16)
    }

    pub fn vector(&self, index: u16) -> FpVector {
        let (x, y) = self.coords(index);
        let coords = if self.k == 1 { vec![x] } else { vec![x, y] };
        FpVector { coords }
    }

    pub fn index_of(&self, v: &FpVector) -> Result<u16> {
        let c = v.coords();
        if c.len() != self.k as usize {
            return Err(Error::InvalidArgument(format!(
                "vector {v} has {} coordinates, expected {}",
                c.len(),
                self.k
            )));
        }
        let y = if self.k == 1 { 0 } else { c[1] };
        self.index(c[0], y)
            .ok_or_else(|| Error::InvalidArgument("zero column".into()))
    }

    /// Index of the normalized generator of the line through `index`.
    pub fn line(&self, index: u16) -> u16 {
        let (x, y) = self.coords(index);
        if self.k == 1 {
            return 0;
        }
        if x == 0 {
            self.index(0, 1).unwrap()
        } else {
            let inv = inverse(x, self.p);
            self.index(1, y * inv % self.p).unwrap()
        }
    }
}

/// `GL_k(F_p)` as permutations of the nonzero-vector indices.
#[derive(Debug, Clone)]
pub struct LinearGroup {
    pub space: VectorSpace,
    /// Row-major matrices, `k * k` entries each.
    matrices: Vec<Vec<u64>>,
    perms: Vec<Vec<u16>>,
}

impl LinearGroup {
    pub fn new(space: VectorSpace) -> Self {
        let p = space.p;
        let mut matrices = Vec::new();
        if space.k == 1 {
            matrices.extend((1..p).map(|a| vec![a]));
        } else {
            for a in 0..p {
                for b in 0..p {
                    for c in 0..p {
                        for d in 0..p {
                            if (a * d + p * p - b * c) % p != 0 {
                                matrices.push(vec![a, b, c, d]);
                            }
                        }
                    }
                }
            }
        }
        let perms = matrices
            .iter()
            .map(|m| {
                (0..space.len() as u16)
                    .map(|i| {
                        let (x, y) = space.coords(i);
                        let (u, v) = apply(m, x, y, p);
                        space.index(u, v).expect("invertible image is nonzero")
                    })
                    .collect()
            })
            .collect();
        Self {
            space,
            matrices,
            perms,
        }
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn matrix(&self, g: usize) -> &[u64] {
        &self.matrices[g]
    }

    pub fn perm(&self, g: usize) -> &[u16] {
        &self.perms[g]
    }

    pub fn perms(&self) -> &[Vec<u16>] {
        &self.perms
    }
}

fn apply(m: &[u64], x: u64, y: u64, p: u64) -> (u64, u64) {
    if m.len() == 1 {
        (m[0] * x % p, 0)
    } else {
        ((m[0] * x + m[1] * y) % p, (m[2] * x + m[3] * y) % p)
    }
}
