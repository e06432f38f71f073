//! Brute-force ground truth.
//!
//! Enumerates every multiset of `R` nonzero columns of `F_p^k` with zero row
//! sums and full rank, then counts orbits of `GL_k(F_p)` acting columnwise.
//! An orbit is represented by its lexicographically least sorted image.

mod distribution;
mod group;

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, BufRead, Write};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{binomial, multichoose};
use crate::error::{Error, Result};
use crate::partition::{ActionParams, PartitionType};

pub use distribution::distribution_bruteforce;
pub use group::{FpVector, LinearGroup, VectorSpace};

pub const DEFAULT_MAX_MULTISETS: u128 = 10_000_000;
pub const DEFAULT_MAX_STEPS: u128 = 10_000_000_000;
pub const GUARD_STEPS_ENV: &str = "TOPOTYPE_GUARD_STEPS";

/// Feasibility limits for exhaustive enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guard {
    /// Candidate multisets (or matrices) before filtering.
    pub max_multisets: u128,
    /// Group elements times surviving multisets.
    pub max_steps: u128,
}

impl Default for Guard {
    fn default() -> Self {
        Self {
            max_multisets: DEFAULT_MAX_MULTISETS,
            max_steps: DEFAULT_MAX_STEPS,
        }
    }
}

impl Guard {
    /// Defaults, with the step limit taken from `TOPOTYPE_GUARD_STEPS` when set.
    pub fn from_env() -> Result<Self> {
        let mut guard = Self::default();
        if let Ok(v) = std::env::var(GUARD_STEPS_ENV) {
            guard.max_steps = v.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("{GUARD_STEPS_ENV}={v:?} is not an integer"))
            })?;
        }
        Ok(guard)
    }

    fn check(&self, what: &'static str, estimate: &BigInt, limit: u128) -> Result<()> {
        let est = u128::try_from(estimate).unwrap_or(u128::MAX);
        if est > limit {
            return Err(Error::GuardExceeded {
                what,
                estimate: est,
                limit,
            });
        }
        Ok(())
    }

    pub fn check_multisets(&self, estimate: &BigInt) -> Result<()> {
        self.check("candidate multisets", estimate, self.max_multisets)
    }

    pub fn check_steps(&self, estimate: &BigInt) -> Result<()> {
        self.check("group steps", estimate, self.max_steps)
    }
}

/// A multiset of nonzero columns with zero row sums and full rank, stored
/// in nondecreasing lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratingColumnSet {
    p: u64,
    k: u32,
    columns: Vec<FpVector>,
}

impl GeneratingColumnSet {
    pub fn new(p: u64, k: u32, mut columns: Vec<FpVector>) -> Result<Self> {
        let space = VectorSpace::new(p, k)?;
        for c in &columns {
            space.index_of(c)?;
        }
        columns.sort();
        let set = Self { p, k, columns };
        let idx = set.indices(&space);
        if !row_sums_vanish(&space, &idx) {
            return Err(Error::InvalidArgument(format!(
                "row sums of {set} are not zero"
            )));
        }
        if !full_rank(&space, &idx) {
            return Err(Error::InvalidArgument(format!(
                "{set} does not have rank {k}"
            )));
        }
        Ok(set)
    }

    fn from_indices(space: &VectorSpace, idx: &[u16]) -> Self {
        Self {
            p: space.p,
            k: space.k,
            columns: idx.iter().map(|&i| space.vector(i)).collect(),
        }
    }

    fn indices(&self, space: &VectorSpace) -> Vec<u16> {
        self.columns
            .iter()
            .map(|c| space.index_of(c).expect("validated column"))
            .collect()
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn columns(&self) -> &[FpVector] {
        &self.columns
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Parses a representative line such as `(1,0) (2,0) (0,1)`.
    pub fn parse(line: &str, p: u64, k: u32) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad column multiset {line:?}"));
        let mut columns = Vec::new();
        for tok in line.split_whitespace() {
            let inner = tok
                .strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .ok_or_else(bad)?;
            let coords = inner
                .split(',')
                .map(|c| c.trim().parse::<u64>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            columns.push(FpVector::new(coords, p)?);
        }
        Self::new(p, k, columns)
    }
}

impl fmt::Display for GeneratingColumnSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.columns.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

fn row_sums_vanish(space: &VectorSpace, idx: &[u16]) -> bool {
    let (sx, sy) = idx.iter().fold((0, 0), |(a, b), &i| {
        let (x, y) = space.coords(i);
        ((a + x) % space.p, (b + y) % space.p)
    });
    sx == 0 && sy == 0
}

fn full_rank(space: &VectorSpace, idx: &[u16]) -> bool {
    if space.k == 1 {
        return !idx.is_empty();
    }
    let first = idx.first().map(|&i| space.line(i));
    idx.iter().any(|&i| Some(space.line(i)) != first)
}

/// Flat list of all generating column multisets as sorted index runs of
/// length `r`, in lexicographic order.
fn enumerate_indices(space: &VectorSpace, r: usize) -> Vec<u16> {
    fn rec(
        space: &VectorSpace,
        r: usize,
        cur: &mut Vec<u16>,
        sx: u64,
        sy: u64,
        out: &mut Vec<u16>,
    ) {
        let p = space.p;
        let lo = cur.last().copied().unwrap_or(0);
        if cur.len() + 1 == r {
            let need = space.index((p - sx) % p, (p - sy) % p);
            if let Some(last) = need.filter(|&n| n >= lo) {
                cur.push(last);
                if full_rank(space, cur) {
                    out.extend_from_slice(cur);
                }
                cur.pop();
            }
            return;
        }
        for i in lo..space.len() as u16 {
            let (x, y) = space.coords(i);
            cur.push(i);
            rec(space, r, cur, (sx + x) % p, (sy + y) % p, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(space, r, &mut Vec::with_capacity(r), 0, 0, &mut out);
    out
}

/// Every generating column multiset for `(p, k, R)`, each exactly once, in
/// nondecreasing lexicographic column order.
pub fn enumerate_generating_sets(
    p: u64,
    k: u32,
    r: u32,
    guard: &Guard,
) -> Result<impl Iterator<Item = GeneratingColumnSet>> {
    ActionParams::new(p, k, r)?;
    let space = VectorSpace::new(p, k)?;
    guard.check_multisets(&multichoose(r as u64, space.len() as u64))?;
    let flat = enumerate_indices(&space, r as usize);
    let sets: Vec<GeneratingColumnSet> = flat
        .chunks(r as usize)
        .map(|c| GeneratingColumnSet::from_indices(&space, c))
        .collect();
    Ok(sets.into_iter())
}

/// The partition type: sizes of the groups of columns generating the same
/// cyclic subgroup.
pub fn classify_partition(set: &GeneratingColumnSet) -> PartitionType {
    let mut groups: BTreeMap<FpVector, u32> = BTreeMap::new();
    for c in set.columns() {
        *groups.entry(c.projective(set.p())).or_default() += 1;
    }
    PartitionType::new(groups.into_values().collect()).expect("nonempty multiset")
}

fn image_into(perm: &[u16], m: &[u16], buf: &mut Vec<u16>) {
    buf.clear();
    buf.extend(m.iter().map(|&i| perm[i as usize]));
    buf.sort_unstable();
}

fn is_canonical_indices(group: &LinearGroup, m: &[u16], buf: &mut Vec<u16>) -> bool {
    group.perms().iter().all(|perm| {
        image_into(perm, m, buf);
        buf.as_slice() >= m
    })
}

/// The lexicographically least sorted image of `set` under `GL_k(F_p)`.
pub fn canonical(set: &GeneratingColumnSet, group: &LinearGroup) -> GeneratingColumnSet {
    let space = &group.space;
    let m = set.indices(space);
    let mut best = m.clone();
    let mut buf = Vec::with_capacity(m.len());
    for perm in group.perms() {
        image_into(perm, &m, &mut buf);
        if buf < best {
            best.clone_from(&buf);
        }
    }
    GeneratingColumnSet::from_indices(space, &best)
}

pub fn is_canonical(set: &GeneratingColumnSet, group: &LinearGroup) -> bool {
    let m = set.indices(&group.space);
    is_canonical_indices(group, &m, &mut Vec::new())
}

/// A matrix `g` with `g a = b` as multisets, row-major.
pub fn find_witness(
    a: &GeneratingColumnSet,
    b: &GeneratingColumnSet,
    group: &LinearGroup,
) -> Option<Vec<u64>> {
    let space = &group.space;
    let (ma, mb) = (a.indices(space), b.indices(space));
    let mut buf = Vec::with_capacity(ma.len());
    (0..group.order()).find_map(|g| {
        image_into(group.perm(g), &ma, &mut buf);
        (buf == mb).then(|| group.matrix(g).to_vec())
    })
}

/// Orbit counts by partition type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitTable {
    pub p: u64,
    pub k: u32,
    pub r: u32,
    pub by_partition: BTreeMap<PartitionType, u64>,
    pub total: u64,
    /// Canonical representative of each orbit, in enumeration order.
    #[serde(skip)]
    pub representatives: Vec<GeneratingColumnSet>,
}

impl OrbitTable {
    pub fn count(&self, partition: &PartitionType) -> u64 {
        self.by_partition.get(partition).copied().unwrap_or(0)
    }

    /// One representative per line.
    pub fn write_representatives<W: Write>(&self, mut w: W) -> io::Result<()> {
        for rep in &self.representatives {
            writeln!(w, "{rep}")?;
        }
        Ok(())
    }

    pub fn read_representatives<R: BufRead>(
        reader: R,
        p: u64,
        k: u32,
    ) -> Result<Vec<GeneratingColumnSet>> {
        let mut out = Vec::new();
        for line in reader.lines() {
            let line = line.map_err(|e| Error::InvalidArgument(e.to_string()))?;
            if !line.trim().is_empty() {
                out.push(GeneratingColumnSet::parse(&line, p, k)?);
            }
        }
        Ok(out)
    }
}

/// Orbits of `GL_k(F_p)` on generating column multisets of size `r`.
pub fn count_orbits(p: u64, k: u32, r: u32, guard: &Guard) -> Result<OrbitTable> {
    ActionParams::new(p, k, r)?;
    let space = VectorSpace::new(p, k)?;
    guard.check_multisets(&multichoose(r as u64, space.len() as u64))?;
    let group = LinearGroup::new(space.clone());
    let flat = enumerate_indices(&space, r as usize);
    let surviving = flat.len() / r as usize;
    guard.check_steps(&(BigInt::from(surviving) * group.order()))?;

    let reps: Vec<&[u16]> = flat
        .par_chunks(r as usize)
        .filter(|m| is_canonical_indices(&group, m, &mut Vec::with_capacity(m.len())))
        .collect();

    let representatives: Vec<GeneratingColumnSet> = reps
        .iter()
        .map(|m| GeneratingColumnSet::from_indices(&space, m))
        .collect();
    let mut by_partition = BTreeMap::new();
    for rep in &representatives {
        *by_partition.entry(classify_partition(rep)).or_insert(0u64) += 1;
    }
    Ok(OrbitTable {
        p,
        k,
        r,
        total: representatives.len() as u64,
        by_partition,
        representatives,
    })
}

/// Orbits of `F_p^*` on `r`-multisets of nonzero residues summing to zero.
pub fn rank1_orbit_count(p: u64, r: u32, guard: &Guard) -> Result<BigInt> {
    Ok(count_orbits(p, 1, r, guard)?.total.into())
}

/// Literal count in the normalized model behind the closed forms: the parts
/// (in descending order) are pinned to distinct cyclic subgroups, the first
/// three to `<(1,0)>, <(0,1)>, <(1,1)>` and the rest to every increasing
/// choice among `<(1,j)>`, `j >= 2`. For each pinning, column multisets
/// with zero row sums are counted up to the scalar matrices.
///
/// Unlike [`count_orbits`], parts of equal size stay distinguishable and
/// the stabilizer of the pinned subgroups is reduced to the scalars, so this
/// can exceed the true orbit count.
pub fn normalized_model_count(partition: &PartitionType, p: u64, guard: &Guard) -> Result<BigInt> {
    if p == 2 {
        return Err(Error::EvenPrime {
            what: "normalized_model_count",
            p,
        });
    }
    crate::partition::require_admissible(partition, p, 2)?;
    let parts = partition.parts();
    let n = parts.len();

    let per_marking: BigInt = parts
        .iter()
        .map(|&x| multichoose(x as u64, p - 1))
        .product();
    let markings = if n <= 3 {
        BigInt::from(1)
    } else {
        binomial(p - 2, n as i64 - 3)
    };
    guard.check_multisets(&(&per_marking * &markings))?;

    // scalar multisets for each part, with their scalar sums
    let choices: Vec<Vec<(Vec<u64>, u64)>> = parts
        .iter()
        .map(|&x| scalar_multisets(x as usize, p))
        .collect();

    let mut lines: Vec<(u64, u64)> = vec![(1, 0), (0, 1), (1, 1)];
    lines.truncate(n.min(3));
    let extra: Vec<(u64, u64)> = (2..p).map(|j| (1, j)).collect();
    let mut total = BigInt::from(0);
    for_each_subset(extra.len(), n.saturating_sub(3), &mut |subset| {
        let mut marking = lines.clone();
        marking.extend(subset.iter().map(|&i| extra[i]));
        total += count_scalar_orbits(&choices, &marking, p);
    });
    Ok(total)
}

fn scalar_multisets(size: usize, p: u64) -> Vec<(Vec<u64>, u64)> {
    fn rec(size: usize, lo: u64, p: u64, cur: &mut Vec<u64>, out: &mut Vec<(Vec<u64>, u64)>) {
        if cur.len() == size {
            out.push((cur.clone(), cur.iter().sum::<u64>() % p));
            return;
        }
        for c in lo..p {
            cur.push(c);
            rec(size, c, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(size, 1, p, &mut Vec::new(), &mut out);
    out
}

fn for_each_subset(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, f);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut Vec::new(), f);
}

fn count_scalar_orbits(choices: &[Vec<(Vec<u64>, u64)>], lines: &[(u64, u64)], p: u64) -> u64 {
    let n = choices.len();
    let mut pick = vec![0usize; n];
    let mut count = 0;
    let mut img: Vec<u64> = Vec::new();
    let mut orig: Vec<u64> = Vec::new();
    'odometer: loop {
        let (mut sx, mut sy) = (0, 0);
        for (i, &j) in pick.iter().enumerate() {
            let s = choices[i][j].1;
            sx = (sx + s * lines[i].0) % p;
            sy = (sy + s * lines[i].1) % p;
        }
        if sx == 0 && sy == 0 {
            orig.clear();
            for (i, &j) in pick.iter().enumerate() {
                orig.extend_from_slice(&choices[i][j].0);
            }
            let least = (2..p).all(|lambda| {
                img.clear();
                for (i, &j) in pick.iter().enumerate() {
                    let start = img.len();
                    img.extend(choices[i][j].0.iter().map(|c| c * lambda % p));
                    img[start..].sort_unstable();
                }
                img >= orig
            });
            if least {
                count += 1;
            }
        }
        for i in (0..n).rev() {
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                continue 'odometer;
            }
            pick[i] = 0;
        }
        break;
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::{count_types_klein, count_types_rank1, count_types_rank2};
    use crate::partition::admissible_partitions;

    fn pt(s: &str) -> PartitionType {
        s.parse().unwrap()
    }

    fn cols(s: &str, p: u64, k: u32) -> GeneratingColumnSet {
        GeneratingColumnSet::parse(s, p, k).unwrap()
    }

    fn table(p: u64, k: u32, r: u32) -> OrbitTable {
        count_orbits(p, k, r, &Guard::default()).unwrap()
    }

    #[test]
    fn enumeration_examples() {
        let g = Guard::default();
        let sets: Vec<_> = enumerate_generating_sets(3, 1, 4, &g).unwrap().collect();
        assert_eq!(sets, [cols("(1) (1) (2) (2)", 3, 1)]);
        let sets: Vec<_> = enumerate_generating_sets(2, 2, 3, &g).unwrap().collect();
        assert_eq!(sets, [cols("(0,1) (1,0) (1,1)", 2, 2)]);
        for s in enumerate_generating_sets(3, 2, 3, &g).unwrap() {
            assert_eq!(classify_partition(&s), pt("1,1,1"));
        }
    }

    #[test]
    fn enumeration_is_sorted_and_valid() {
        let sets: Vec<_> = enumerate_generating_sets(3, 2, 5, &Guard::default())
            .unwrap()
            .collect();
        assert!(sets.windows(2).all(|w| w[0] < w[1]));
        for s in &sets {
            assert_eq!(
                GeneratingColumnSet::new(3, 2, s.columns().to_vec()).as_ref(),
                Ok(s)
            );
        }
    }

    #[test]
    fn enumeration_matches_unpruned_filter() {
        let space = VectorSpace::new(3, 2).unwrap();
        let n = space.len() as u16;
        let mut expected = Vec::new();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    for d in c..n {
                        let m = [a, b, c, d];
                        if row_sums_vanish(&space, &m) && full_rank(&space, &m) {
                            expected.extend_from_slice(&m);
                        }
                    }
                }
            }
        }
        assert_eq!(enumerate_indices(&space, 4), expected);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_partition(&cols("(1,0) (0,1) (2,2)", 3, 2)),
            pt("1,1,1")
        );
        assert_eq!(
            classify_partition(&cols("(1,0) (2,0) (0,1) (0,2)", 3, 2)),
            pt("2,2")
        );
        assert_eq!(
            classify_partition(&cols("(1,1) (1,1) (1,0) (1,0) (2,1)", 3, 2)),
            pt("2,2,1")
        );
    }

    #[test]
    fn rejects_invalid_sets() {
        assert!(GeneratingColumnSet::parse("(1,0) (1,0)", 3, 2).is_err());
        assert!(GeneratingColumnSet::parse("(1,0) (2,0)", 3, 2).is_err());
        assert!(GeneratingColumnSet::parse("(1,0) (0,0) (2,0)", 3, 2).is_err());
        assert!(GeneratingColumnSet::parse("1,0", 3, 2).is_err());
    }

    #[test]
    fn canonical_idempotent_with_witness() {
        let group = LinearGroup::new(VectorSpace::new(5, 2).unwrap());
        let sets: Vec<_> = enumerate_generating_sets(5, 2, 5, &Guard::default())
            .unwrap()
            .collect();
        for s in sets.iter().step_by(97) {
            let c = canonical(s, &group);
            assert_eq!(canonical(&c, &group), c);
            assert!(is_canonical(&c, &group));
            let g = find_witness(s, &c, &group).expect("witness");
            let det = (g[0] * g[3] + 25 - g[1] * g[2] % 5) % 5;
            assert_ne!(det, 0);
            assert_eq!(classify_partition(s), classify_partition(&c));
        }
        let a = cols("(1,0) (1,0) (3,0) (0,1) (0,4)", 5, 2);
        let b = cols("(1,1) (1,1) (3,3) (0,1) (0,4)", 5, 2);
        let c = cols("(1,0) (1,0) (0,1) (0,1) (3,3)", 5, 2);
        assert!(find_witness(&a, &b, &group).is_some());
        assert!(find_witness(&a, &c, &group).is_none());
        assert_ne!(canonical(&a, &group), canonical(&c, &group));
    }

    #[test]
    fn representatives_round_trip() {
        let t = table(5, 2, 5);
        let mut buf = Vec::new();
        t.write_representatives(&mut buf).unwrap();
        let back = OrbitTable::read_representatives(&buf[..], 5, 2).unwrap();
        assert_eq!(back, t.representatives);
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 14);
    }

    // Orbit counts found by an independent exhaustive search that marks
    // every image of each new multiset as seen.
    type Expected<'a> = &'a [(u64, u32, &'a [(&'a str, u64)])];

    #[test]
    fn orbit_counts_small_primes() {
        let expect: Expected = &[
            (3, 3, &[("1,1,1", 1)]),
            (3, 4, &[("2,2", 1), ("2,1,1", 1)]),
            (
                3,
                5,
                &[("3,2", 1), ("3,1,1", 1), ("2,2,1", 1), ("2,1,1,1", 1)],
            ),
            (
                3,
                6,
                &[
                    ("4,2", 1),
                    ("4,1,1", 2),
                    ("3,3", 1),
                    ("3,2,1", 1),
                    ("3,1,1,1", 1),
                    ("2,2,2", 2),
                    ("2,2,1,1", 1),
                ],
            ),
            (5, 3, &[("1,1,1", 1)]),
            (5, 4, &[("2,2", 1), ("2,1,1", 2), ("1^4", 1)]),
            (
                5,
                5,
                &[
                    ("3,2", 1),
                    ("3,1,1", 4),
                    ("2,2,1", 3),
                    ("2,1,1,1", 4),
                    ("1^5", 2),
                ],
            ),
            (7, 4, &[("2,2", 1), ("2,1,1", 3), ("1^4", 2)]),
        ];
        for &(p, r, rows) in expect {
            let t = table(p, 2, r);
            let want: BTreeMap<PartitionType, u64> =
                rows.iter().map(|&(s, c)| (pt(s), c)).collect();
            assert_eq!(t.by_partition, want, "p={p} R={r}");
            assert_eq!(t.total, want.values().sum::<u64>());
        }
    }

    #[test]
    fn orbit_partitions_are_admissible() {
        for (p, r) in [(3, 6), (5, 6), (7, 5)] {
            let t = table(p, 2, r);
            let adm = admissible_partitions(p, 2, r);
            for part in t.by_partition.keys() {
                assert!(adm.contains(part), "{part} p={p} R={r}");
            }
        }
    }

    #[test]
    fn no_two_part_action_with_a_unit_part() {
        for (p, r) in [(3, 6), (5, 6), (7, 5)] {
            let t = table(p, 2, r);
            assert!(t
                .by_partition
                .keys()
                .all(|part| part.len() > 2 || !part.parts().contains(&1)));
        }
    }

    #[test]
    fn klein_orbits() {
        let totals: Vec<u64> = (3..=10).map(|r| table(2, 2, r).total).collect();
        assert_eq!(totals, [1, 1, 1, 2, 2, 3, 3, 4]);
        for r in 3..=10 {
            assert_eq!(
                BigInt::from(table(2, 2, r).total),
                count_types_klein(r).unwrap()
            );
        }
    }

    #[test]
    fn rank1_orbits() {
        let g = Guard::default();
        assert_eq!(rank1_orbit_count(3, 4, &g).unwrap(), 1.into());
        assert_eq!(rank1_orbit_count(2, 6, &g).unwrap(), 1.into());
        assert_eq!(rank1_orbit_count(7, 3, &g).unwrap(), 2.into());
        let counts: Vec<BigInt> = (3..=10)
            .map(|r| rank1_orbit_count(11, r, &g).unwrap())
            .collect();
        let expected: Vec<BigInt> = [2, 8, 19, 49, 104, 228, 442, 854]
            .map(BigInt::from)
            .to_vec();
        assert_eq!(counts, expected);
        for r in 3..=10 {
            assert_eq!(
                rank1_orbit_count(5, r, &g).unwrap(),
                count_types_rank1(r, 5).unwrap().count
            );
        }
    }

    #[test]
    fn normalized_model_matches_closed_forms() {
        let g = Guard::default();
        for (p, max_r) in [(3u64, 6), (5, 6), (7, 5)] {
            for r in 3..=max_r {
                for part in admissible_partitions(p, 2, r) {
                    assert_eq!(
                        normalized_model_count(&part, p, &g).unwrap(),
                        count_types_rank2(&part, p).unwrap().count,
                        "{part} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn guard_refuses_large_runs() {
        let err = count_orbits(13, 2, 6, &Guard::default()).unwrap_err();
        assert!(matches!(err, Error::GuardExceeded { .. }), "{err}");
        let tight = Guard {
            max_multisets: u128::MAX,
            max_steps: 10,
        };
        assert!(matches!(
            count_orbits(5, 2, 4, &tight),
            Err(Error::GuardExceeded {
                what: "group steps",
                ..
            })
        ));
    }
}
