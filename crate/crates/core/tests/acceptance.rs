//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Every tolerance and time budget is pinned below.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed};

use topotype::arith::{binomial, gaussian_binomial, RationalPolynomial};
use topotype::count::{
    card_a, card_a_recursive, card_a_shortcut, card_a_unitary, count_types_klein,
    count_types_rank1, count_types_rank2,
};
use topotype::oracle::{count_orbits, distribution_bruteforce, rank1_orbit_count, Guard};
use topotype::partition::{admissible_partitions, partitions_of, PartitionType};
use topotype::polyfit::{
    default_degree_bound, default_modulus, default_primes, fit_partition_polynomial,
};
use topotype::residue::{full_distribution, Distribution};

/// Counts are exact integers; any difference is a failure.
const EXACT_TOLERANCE: u32 = 0;

const BUDGET_TABLE: Duration = Duration::from_secs(1);
const BUDGET_POLYFIT: Duration = Duration::from_secs(5);
const BUDGET_ORACLE_RANK2: Duration = Duration::from_secs(300);
const BUDGET_ORACLE_RANK1: Duration = Duration::from_secs(10);
const BUDGET_KLEIN: Duration = Duration::from_secs(10);
const BUDGET_DISTRIBUTION: Duration = Duration::from_secs(30);
const BUDGET_ORDER: Duration = Duration::from_secs(30);
const BUDGET_CONSISTENCY: Duration = Duration::from_secs(30);
const BUDGET_GAUSSIAN: Duration = Duration::from_secs(30);

const TABLE_PRIMES: [u64; 4] = [5, 7, 11, 13];
const MIN_FIT_PRIMES: usize = 6;

struct Outcome {
    failures: Vec<String>,
    checked: usize,
}

impl Outcome {
    fn new() -> Self {
        Self {
            failures: Vec::new(),
            checked: 0,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(detail());
        }
    }
}

/// Product of linear factors `(p + c)` over `den`, times `lead`.
fn factored(lead: i64, roots: &[i64], extra: &[i64], den: i64) -> RationalPolynomial {
    let mut f = RationalPolynomial::from_integers([lead]);
    for &c in roots {
        f = f * RationalPolynomial::from_integers([c, 1]);
    }
    if !extra.is_empty() {
        f = f * RationalPolynomial::from_integers(extra.iter().copied());
    }
    f.scale(&BigRational::new(1.into(), den.into()))
}

type RowFn = Box<dyn Fn(u64) -> RationalPolynomial>;

/// The published table for 3 <= R <= 6, keyed by partition, with the
/// polynomial to use at `p`.
fn published_rows() -> Vec<(&'static str, RowFn)> {
    let one = |f: RationalPolynomial| -> RowFn { Box::new(move |_| f.clone()) };
    vec![
        ("1^3", one(factored(1, &[], &[], 1))),
        ("2,2", one(factored(1, &[-1], &[], 2))),
        ("2,1,1", one(factored(1, &[-1], &[], 2))),
        ("1^4", one(factored(1, &[-2, -3], &[], 1))),
        ("3,2", one(factored(1, &[1, -1], &[], 12))),
        ("3,1,1", one(factored(1, &[1, -1], &[], 6))),
        ("2,2,1", one(factored(1, &[-1, -1], &[], 4))),
        ("2,1,1,1", one(factored(1, &[-1, -2, -2], &[], 2))),
        ("1^5", one(factored(1, &[-2, -3], &[6, -4, 1], 2))),
        ("4,2", one(factored(1, &[5, 1, -1], &[], 48))),
        ("4,1,1", one(factored(1, &[2, 1, -1], &[], 24))),
        (
            "3,3",
            Box::new(|p| {
                if p % 3 == 2 {
                    factored(1, &[1, 1, -1], &[], 36)
                } else {
                    factored(1, &[-1], &[9, 2, 1], 36)
                }
            }),
        ),
        ("3,2,1", one(factored(1, &[1, -2, -2], &[], 12))),
        ("3,1,1,1", one(factored(1, &[-1, -2, -2], &[], 6))),
        ("2,2,2", one(factored(1, &[1, -1, -1], &[], 8))),
        ("2,2,1,1", one(factored(1, &[-1, -1, -1, -2], &[], 4))),
        ("2,1,1,1,1", one(factored(1, &[0, -1, -2, -3, -4], &[], 4))),
        ("1^6", one(factored(1, &[-2, -3, -4], &[-10, 10, -5, 1], 6))),
    ]
}

fn pt(s: &str) -> PartitionType {
    s.parse().unwrap()
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    for (name, poly) in published_rows() {
        let part = pt(name);
        for p in TABLE_PRIMES {
            let expected = poly(p).eval_int(&BigInt::from(p));
            let got = count_types_rank2(&part, p).map(|r| BigRational::from_integer(r.count));
            let ok = got.as_ref().is_ok_and(|g| {
                (g - &expected).abs() <= BigRational::from_integer(EXACT_TOLERANCE.into())
            });
            o.check(ok, || match &got {
                Ok(g) => format!("{part} p={p}: computed {g}, published {expected}"),
                Err(e) => format!("{part} p={p}: {e}, published {expected}"),
            });
        }
    }
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    for (name, poly) in published_rows() {
        let part = pt(name);
        let modulus = default_modulus(&part);
        let bound = default_degree_bound(&part);
        let primes = default_primes(&part, bound.max(MIN_FIT_PRIMES - 2), modulus);
        match fit_partition_polynomial(&part, bound, modulus, &primes) {
            Ok(fit) => {
                for (&class, f) in &fit.branches {
                    let sample = primes
                        .iter()
                        .copied()
                        .find(|&p| p % modulus == class)
                        .unwrap();
                    let published = poly(sample);
                    o.check(f == &published, || {
                        format!(
                            "{part} class {class} mod {modulus}: fitted {f}, published {published}"
                        )
                    });
                }
            }
            Err(e) => o.check(false, || format!("{part}: {e}")),
        }
    }
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let guard = Guard::default();
    for (p, max_r) in [(3u64, 6u32), (5, 6), (7, 5)] {
        for r in 3..=max_r {
            let table = match count_orbits(p, 2, r, &guard) {
                Ok(t) => t,
                Err(e) => {
                    o.check(false, || format!("p={p} R={r}: {e}"));
                    continue;
                }
            };
            let mut parts = admissible_partitions(p, 2, r);
            parts.extend(
                table
                    .by_partition
                    .keys()
                    .filter(|k| !parts.contains(k))
                    .cloned()
                    .collect::<Vec<_>>(),
            );
            let mut formula_total = BigInt::from(0);
            for part in parts {
                let oracle = BigInt::from(table.count(&part));
                let formula = count_types_rank2(&part, p).map(|r| r.count);
                if let Ok(f) = &formula {
                    formula_total += f;
                }
                o.check(formula.as_ref() == Ok(&oracle), || match &formula {
                    Ok(f) => format!("p={p} R={r} {part}: orbits {oracle}, formula {f}"),
                    Err(e) => format!("p={p} R={r} {part}: orbits {oracle}, formula error: {e}"),
                });
            }
            o.check(BigInt::from(table.total) == formula_total, || {
                format!(
                    "p={p} R={r} total: orbits {}, formula {formula_total}",
                    table.total
                )
            });
        }
    }
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let guard = Guard::default();
    for p in [3u64, 5, 7, 11, 13] {
        for r in 3..=10 {
            let oracle = rank1_orbit_count(p, r, &guard);
            let formula = count_types_rank1(r, p).map(|x| x.count);
            o.check(oracle.is_ok() && oracle == formula, || {
                format!("p={p} R={r}: orbits {oracle:?}, formula {formula:?}")
            });
        }
    }
    for r in 3..=10 {
        let want = BigInt::from(u32::from(r % 2 == 0));
        let formula = count_types_rank1(r, 2).map(|x| x.count);
        let oracle = rank1_orbit_count(2, r, &guard);
        o.check(
            formula.as_ref() == Ok(&want) && oracle.as_ref() == Ok(&want),
            || format!("p=2 R={r}: expected {want}, formula {formula:?}, orbits {oracle:?}"),
        );
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    for r in 3..=10 {
        let klein = count_types_klein(r);
        let orbits = count_orbits(2, 2, r, &Guard::default()).map(|t| BigInt::from(t.total));
        o.check(klein.is_ok() && klein == orbits, || {
            format!("R={r}: formula {klein:?}, orbits {orbits:?}")
        });
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let guard = Guard::default();
    let spot = full_distribution(&[3], &[1], 3, false);
    let want = Distribution {
        counts: [4, 3, 3].map(BigInt::from).to_vec(),
    };
    o.check(spot.as_ref() == Ok(&want), || {
        format!("spot {{3}} p=3: {spot:?}")
    });
    for p in [3u64, 5, 7] {
        for total in 1..=8 {
            for part in partitions_of(total) {
                let parts = part.parts();
                let ones = vec![1u64; parts.len()];
                let spread: Vec<u64> = (0..parts.len() as u64)
                    .map(|i| 1 + (i + 1) % (p - 1))
                    .collect();
                for weights in [&ones, &spread] {
                    for zero in [false, true] {
                        let fast = full_distribution(parts, weights, p, zero);
                        let slow = distribution_bruteforce(parts, weights, p, zero, &guard);
                        o.check(fast.is_ok() && fast == slow, || {
                            format!("{part} p={p} w={weights:?} zero={zero}: {fast:?} vs {slow:?}")
                        });
                    }
                }
            }
        }
    }
    o
}

/// Distinct permutations in lexicographic order, starting from ascending.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    for p in [5u64, 7, 11] {
        for r in 3..=8 {
            for part in admissible_partitions(p, 2, r) {
                let reference = card_a(&part, p).unwrap();
                let mut order = part.parts().to_vec();
                order.sort_unstable();
                loop {
                    let v = card_a_recursive(&order, p);
                    o.check(v.as_ref() == Ok(&reference), || {
                        format!("{part} p={p} order {order:?}: {v:?} vs {reference}")
                    });
                    if !next_permutation(&mut order) {
                        break;
                    }
                }
            }
        }
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    for p in [5u64, 7, 11, 13] {
        for r in 3..=10 {
            for part in admissible_partitions(p, 2, r) {
                if let Some(short) = card_a_shortcut(part.parts(), p) {
                    let rec = card_a_recursive(part.parts(), p);
                    o.check(short.is_ok() && short == rec, || {
                        format!("shortcut {part} p={p}: {short:?} vs {rec:?}")
                    });
                }
            }
        }
        for n in 2..=9u32.min(p as u32 + 1) {
            let uni = card_a_unitary(n, p);
            let gen = card_a(&PartitionType::unitary(n), p);
            o.check(uni.is_ok() && uni == gen, || {
                format!("unitary n={n} p={p}: {uni:?} vs {gen:?}")
            });
        }
        let q = BigInt::from(p);
        let a = card_a(&pt("2,2,1,1"), p);
        let want_a: BigInt = Pow::pow(&q - 1, 4u32) / 4;
        o.check(a.as_ref() == Ok(&want_a), || {
            format!("|A(2,2,1,1)| p={p}: {a:?}")
        });
        let t = count_types_rank2(&pt("2,2,1,1"), p).map(|r| r.count);
        let want_t: BigInt = (&q - 2) * Pow::pow(&q - 1, 3u32) / 4;
        o.check(t.as_ref() == Ok(&want_t), || {
            format!("T(2,2,1,1) p={p}: {t:?}")
        });
    }
    o
}

fn bounded_partitions(l: u32, parts: u32, size: u32) -> u64 {
    if l == 0 {
        return 1;
    }
    if parts == 0 || size == 0 {
        return 0;
    }
    // largest part s, then the rest bounded by s
    (1..=size.min(l))
        .map(|s| bounded_partitions(l - s, parts - 1, s))
        .sum()
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    for m in 0..=6 {
        for n in 0..=6 {
            let g = gaussian_binomial(m, n);
            for (l, t) in g.coeffs.iter().enumerate() {
                let want = BigInt::from(bounded_partitions(l as u32, m, n));
                o.check(t == &want, || {
                    format!("[{m},{n}] t_{l} = {t}, partitions {want}")
                });
            }
        }
    }
    for m in 0..=8u32 {
        for n in 0..=8u32 {
            let g = gaussian_binomial(m, n);
            o.check(g.is_palindromic(), || format!("[{m},{n}] not palindromic"));
            let at_one = g.eval(&BigInt::from(1));
            let want = binomial((m + n) as u64, m as i64);
            o.check(at_one == want, || {
                format!("[{m},{n}](1) = {at_one}, want {want}")
            });
        }
    }
    o
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 9] = [
        (1, "published table reproduction", criterion_1, BUDGET_TABLE),
        (2, "polynomial reconstruction", criterion_2, BUDGET_POLYFIT),
        (
            3,
            "orbit equivalence, rank 2",
            criterion_3,
            BUDGET_ORACLE_RANK2,
        ),
        (
            4,
            "orbit equivalence, rank 1",
            criterion_4,
            BUDGET_ORACLE_RANK1,
        ),
        (5, "Klein four-group", criterion_5, BUDGET_KLEIN),
        (6, "residue distributions", criterion_6, BUDGET_DISTRIBUTION),
        (7, "order independence of |A|", criterion_7, BUDGET_ORDER),
        (
            8,
            "shortcut, base and unitary consistency",
            criterion_8,
            BUDGET_CONSISTENCY,
        ),
        (9, "Gaussian binomials", criterion_9, BUDGET_GAUSSIAN),
    ];
    let filter: Vec<u32> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (id, name, run, budget) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let slow = elapsed > budget;
        let pass = outcome.failures.is_empty() && !slow;
        if !pass {
            failed += 1;
        }
        println!(
            "{} [{id}] {name}: {} checks, {} mismatches, {:.2?} (budget {:?})",
            if pass { "PASS" } else { "FAIL" },
            outcome.checked,
            outcome.failures.len(),
            elapsed,
            budget
        );
        for f in &outcome.failures {
            println!("       {f}");
        }
        if slow {
            println!("       over time budget");
        }
    }
    println!("acceptance: {failed} criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
