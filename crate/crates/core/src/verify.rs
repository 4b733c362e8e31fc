//! Executable checks of the transposition-order properties.
//!
//! Each check returns a [`VerificationReport`] listing every violation it
//! found rather than stopping at the first one. Range checks split their work
//! into contiguous chunks processed in parallel; chunk reports are merged in
//! seed order, so a report never depends on the thread count.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distance::{bfs_distance, cayley_distance, BFS_LIMIT};
use crate::error::{Error, Result};
use crate::factoradic::{decode_permutation, integer_from_code, FactoradicCode, Permutation};
use crate::num::SeedInt;
use crate::stream::{partition, SeedRange};
use crate::unranker::unrank;

/// Widest exhaustive bijection check.
pub const BIJECTION_LIMIT: usize = 8;
/// Widest exhaustive distance-to-identity check.
pub const RADIUS_LIMIT: usize = 8;
/// Widest exhaustive check over all seed pairs.
pub const PAIRWISE_LIMIT: usize = 6;
/// Widest exhaustive comparison against breadth-first search.
pub const ORACLE_PAIR_LIMIT: usize = 4;
/// Widest exhaustive check over all seed triples.
pub const TRIPLE_LIMIT: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Bijection,
    Adjacency,
    Step2,
    DistanceBound,
    Radius,
    ReverseTriangle,
    MetricAxioms,
    OracleAgreement,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Bijection,
        Property::Adjacency,
        Property::Step2,
        Property::DistanceBound,
        Property::Radius,
        Property::ReverseTriangle,
        Property::MetricAxioms,
        Property::OracleAgreement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Bijection => "bijection",
            Property::Adjacency => "adjacency",
            Property::Step2 => "step2",
            Property::DistanceBound => "distance_bound",
            Property::Radius => "radius",
            Property::ReverseTriangle => "reverse_triangle",
            Property::MetricAxioms => "metric_axioms",
            Property::OracleAgreement => "oracle_agreement",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s.replace('-', "_"))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown property `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Seeds involved, as decimal strings.
    pub seeds: Vec<String>,
    /// Which relation failed, e.g. `d(s,s+1) = 1`.
    pub rule: &'static str,
    pub observed: u64,
    pub bound: u64,
}

impl Violation {
    fn new<T: SeedInt>(seeds: &[&T], rule: &'static str, observed: usize, bound: usize) -> Self {
        Self {
            seeds: seeds.iter().map(|s| s.to_string()).collect(),
            rule,
            observed: observed as u64,
            bound: bound as u64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub property: Property,
    pub n: usize,
    pub seeds_checked: u64,
    pub violations: Vec<Violation>,
    pub passed: bool,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    fn empty(property: Property, n: usize) -> Self {
        Self { property, n, seeds_checked: 0, violations: Vec::new(), passed: true, elapsed: Duration::ZERO }
    }

    fn record(&mut self, violation: Violation) {
        self.violations.push(violation);
        self.passed = false;
    }

    /// Combines reports of disjoint work in order.
    pub fn merge(mut self, other: VerificationReport) -> VerificationReport {
        debug_assert_eq!((self.property, self.n), (other.property, other.n));
        self.seeds_checked += other.seeds_checked;
        self.violations.extend(other.violations);
        self.passed = self.violations.is_empty();
        self.elapsed = self.elapsed.max(other.elapsed);
        self
    }

    fn merge_all(property: Property, n: usize, parts: Vec<VerificationReport>) -> Self {
        parts.into_iter().fold(Self::empty(property, n), Self::merge)
    }

    fn timed(mut self, started: Instant) -> Self {
        self.elapsed = started.elapsed();
        self
    }
}

/// How seed pairs or triples are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sampling {
    /// Every combination.
    Exhaustive,
    /// `count` uniform draws from a ChaCha8 stream seeded with `rng_seed`.
    Random { count: usize, rng_seed: u64 },
}

/// Uniform seed in `[0, n!)`: uniform digits give a uniform standard code.
pub fn random_seed<T: SeedInt, R: Rng>(rng: &mut R, n: usize) -> T {
    let digits = (0..n).map(|i| rng.gen_range(0..=i)).collect();
    let code = FactoradicCode::new(digits).expect("digits within bounds");
    integer_from_code(&code).expect("caller picked a seed type wide enough for n")
}

/// Replaces one digit of one seed's code after unranking.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitFlip {
    pub seed: BigUint,
    /// Factorial position of the corrupted digit, `>= 1`.
    pub position: usize,
}

impl DigitFlip {
    /// Picks a victim seed inside `range` and a digit position, reproducibly.
    pub fn seeded<T: SeedInt>(range: &SeedRange<T>, rng_seed: u64) -> Result<Self> {
        if range.width() < 2 || range.is_empty() {
            return Err(Error::InvalidArgument("fault injection needs width >= 2 and a non-empty range".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let span = range.len().to_u64().unwrap_or(u64::MAX);
        let seed = range.start().to_big() + rng.gen_range(0..span);
        let position = rng.gen_range(1..range.width());
        Ok(Self { seed, position })
    }

    fn corrupt(&self, code: &FactoradicCode) -> FactoradicCode {
        let mut digits = code.digits().to_vec();
        let p = self.position.min(digits.len() - 1);
        digits[p] = (digits[p] + 1) % (p + 1);
        FactoradicCode::new(digits).expect("flipped digit stays in bounds")
    }
}

/// Runs property checks, optionally with an injected fault.
#[derive(Debug, Clone, Default)]
pub struct Verifier {
    fault: Option<DigitFlip>,
}

struct Unranker<T> {
    fault: Option<(T, DigitFlip)>,
}

impl<T: SeedInt> Unranker<T> {
    fn perm(&self, s: &T, n: usize) -> Result<Permutation> {
        let code = unrank(s, n)?;
        let code = match &self.fault {
            Some((victim, flip)) if victim == s => flip.corrupt(&code),
            _ => code,
        };
        Ok(decode_permutation(&code))
    }
}

fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

fn distance(p: &Permutation, q: &Permutation) -> usize {
    cayley_distance(p, q).expect("same width")
}

fn chunk_count() -> usize {
    rayon::current_num_threads().max(1) * 4
}

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_fault(fault: DigitFlip) -> Self {
        Self { fault: Some(fault) }
    }

    pub fn fault(&self) -> Option<&DigitFlip> {
        self.fault.as_ref()
    }

    fn unranker<T: SeedInt>(&self) -> Unranker<T> {
        Unranker { fault: self.fault.as_ref().and_then(|f| T::from_big(&f.seed).map(|s| (s, f.clone()))) }
    }

    /// Every seed below `n!` maps to a distinct permutation.
    pub fn check_bijection(&self, n: usize) -> Result<VerificationReport> {
        if n > BIJECTION_LIMIT {
            return Err(Error::OracleSizeExceeded { width: n, limit: BIJECTION_LIMIT });
        }
        let started = Instant::now();
        let unranker = self.unranker::<u64>();
        let total = factorial_u64(n);
        let mut report = VerificationReport::empty(Property::Bijection, n);
        // each permutation's standard rank indexes the first seed that produced it
        let mut first_seed: Vec<Option<u64>> = vec![None; total as usize];
        let mut distinct = 0u64;
        for s in 0..total {
            let perm = unranker.perm(&s, n)?;
            let slot: u64 = integer_from_code(&crate::factoradic::encode_permutation(&perm))?;
            match first_seed[slot as usize] {
                Some(earlier) => report.record(Violation::new(&[&earlier, &s], "P(s) != P(s') for s != s'", 0, 1)),
                None => {
                    first_seed[slot as usize] = Some(s);
                    distinct += 1;
                }
            }
        }
        report.seeds_checked = total;
        if distinct != total {
            report.record(Violation {
                seeds: Vec::new(),
                rule: "distinct permutations = n!",
                observed: distinct,
                bound: total,
            });
        }
        Ok(report.timed(started))
    }

    /// `d(s, s + offset) = offset` for every `s` with `s + offset` in range.
    fn check_fixed_offset<T: SeedInt>(
        &self,
        range: &SeedRange<T>,
        property: Property,
        offset: usize,
        rule: &'static str,
    ) -> Result<VerificationReport> {
        let started = Instant::now();
        let n = range.width();
        let off = T::from_small(offset as u64);
        if range.len() <= off {
            return Err(Error::InvalidArgument(format!("{property} needs a range of at least {} seeds", offset + 1)));
        }
        let unranker = self.unranker::<T>();
        let lefts = SeedRange::new(range.start().clone(), range.end().clone() - off.clone(), n)?;
        let parts = partition(&lefts, chunk_count())?;
        let reports = parts
            .par_iter()
            .map(|part| -> Result<VerificationReport> {
                let mut report = VerificationReport::empty(property, n);
                if part.is_empty() {
                    return Ok(report);
                }
                // sliding window of the permutations of s .. s + offset
                let mut window = std::collections::VecDeque::with_capacity(offset + 1);
                let mut s = part.start().clone();
                for i in 0..=offset {
                    window.push_back(unranker.perm(&(s.clone() + T::from_small(i as u64)), n)?);
                }
                loop {
                    let d = distance(&window[0], &window[offset]);
                    if d != offset {
                        let right = s.clone() + off.clone();
                        report.record(Violation::new(&[&s, &right], rule, d, offset));
                    }
                    report.seeds_checked += 1;
                    s = s + T::one();
                    if &s >= part.end() {
                        break;
                    }
                    window.pop_front();
                    window.push_back(unranker.perm(&(s.clone() + off.clone()), n)?);
                }
                Ok(report)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VerificationReport::merge_all(property, n, reports).timed(started))
    }

    /// `d(s, s+1) = 1` for all consecutive seeds in the range.
    pub fn check_adjacency<T: SeedInt>(&self, range: &SeedRange<T>) -> Result<VerificationReport> {
        self.check_fixed_offset(range, Property::Adjacency, 1, "d(s,s+1) = 1")
    }

    /// `d(s, s + offset) = offset` at `count` uniformly drawn seeds.
    fn check_offset_sampled<T: SeedInt>(
        &self,
        property: Property,
        offset: usize,
        rule: &'static str,
        n: usize,
        count: usize,
        rng_seed: u64,
    ) -> Result<VerificationReport> {
        let total = crate::num::factorial::<T>(n).ok_or(Error::SeedOverflow { width: n })?;
        let off = T::from_small(offset as u64);
        if total <= off {
            return Err(Error::InvalidArgument(format!("{property} needs width with more than {offset} seeds")));
        }
        let started = Instant::now();
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
        let last_start = total - off.clone() - T::one();
        let seeds: Vec<T> = (0..count)
            .map(|_| {
                let s: T = random_seed(&mut rng, n);
                // seeds without a partner inside the width check the last full window
                s.min(last_start.clone())
            })
            .collect();
        let unranker = self.unranker::<T>();
        let reports = seeds
            .par_chunks(1024)
            .map(|chunk| -> Result<VerificationReport> {
                let mut report = VerificationReport::empty(property, n);
                for s in chunk {
                    let partner = s.clone() + off.clone();
                    let d = distance(&unranker.perm(s, n)?, &unranker.perm(&partner, n)?);
                    if d != offset {
                        report.record(Violation::new(&[s, &partner], rule, d, offset));
                    }
                    report.seeds_checked += 1;
                }
                Ok(report)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(VerificationReport::merge_all(property, n, reports).timed(started))
    }

    /// `d(s, s+1) = 1` at `count` uniformly drawn seeds.
    pub fn check_adjacency_sampled<T: SeedInt>(
        &self,
        n: usize,
        count: usize,
        rng_seed: u64,
    ) -> Result<VerificationReport> {
        self.check_offset_sampled::<T>(Property::Adjacency, 1, "d(s,s+1) = 1", n, count, rng_seed)
    }

    /// `d(s, s+2) = 2` at `count` uniformly drawn seeds.
    pub fn check_step2_sampled<T: SeedInt>(&self, n: usize, count: usize, rng_seed: u64) -> Result<VerificationReport> {
        self.check_offset_sampled::<T>(Property::Step2, 2, "d(s,s+2) = 2", n, count, rng_seed)
    }

    /// `d(s, s+2) = 2` within the range.
    pub fn check_step2<T: SeedInt>(&self, range: &SeedRange<T>) -> Result<VerificationReport> {
        self.check_fixed_offset(range, Property::Step2, 2, "d(s,s+2) = 2")
    }

    /// `d(s, 0) <= k - 1` for every `s < k!`.
    pub fn check_radius(&self, k: usize) -> Result<VerificationReport> {
        if k > RADIUS_LIMIT {
            return Err(Error::OracleSizeExceeded { width: k, limit: RADIUS_LIMIT });
        }
        let started = Instant::now();
        let unranker = self.unranker::<u64>();
        let identity = unranker.perm(&0u64, k)?;
        let mut report = VerificationReport::empty(Property::Radius, k);
        for s in 0..factorial_u64(k) {
            let d = distance(&unranker.perm(&s, k)?, &identity);
            if d > k - 1 {
                report.record(Violation::new(&[&s, &0u64], "d(s,0) <= k-1", d, k - 1));
            }
            report.seeds_checked += 1;
        }
        Ok(report.timed(started))
    }

    fn seeds_for<T: SeedInt>(&self, n: usize, sampling: Sampling, arity: usize, limit: usize) -> Result<Vec<Vec<T>>> {
        match sampling {
            Sampling::Exhaustive => {
                if n > limit {
                    return Err(Error::OracleSizeExceeded { width: n, limit });
                }
                // one shared axis, iterated `arity` times by the caller
                Ok(vec![(0..factorial_u64(n)).map(T::from_small).collect()])
            }
            Sampling::Random { count, rng_seed } => {
                if T::MAX_EXACT_WIDTH.is_some_and(|max| n > max) {
                    return Err(Error::SeedOverflow { width: n });
                }
                let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
                Ok((0..count).map(|_| (0..arity).map(|_| random_seed(&mut rng, n)).collect()).collect())
            }
        }
    }

    /// Runs `check` on every pair (exhaustive) or on sampled pairs.
    fn pairwise<T: SeedInt>(
        &self,
        property: Property,
        n: usize,
        sampling: Sampling,
        check: impl Fn(&mut VerificationReport, [(&T, &Permutation); 2]) + Sync,
    ) -> Result<VerificationReport> {
        let started = Instant::now();
        let unranker = self.unranker::<T>();
        let reports = match sampling {
            Sampling::Exhaustive => {
                let seeds = self.seeds_for::<T>(n, sampling, 2, PAIRWISE_LIMIT)?.remove(0);
                let perms = seeds.iter().map(|s| unranker.perm(s, n)).collect::<Result<Vec<_>>>()?;
                (0..seeds.len())
                    .into_par_iter()
                    .map(|i| {
                        let mut report = VerificationReport::empty(property, n);
                        for j in 0..seeds.len() {
                            check(&mut report, [(&seeds[i], &perms[i]), (&seeds[j], &perms[j])]);
                            report.seeds_checked += 1;
                        }
                        report
                    })
                    .collect::<Vec<_>>()
            }
            Sampling::Random { .. } => {
                let draws = self.seeds_for::<T>(n, sampling, 2, PAIRWISE_LIMIT)?;
                draws
                    .par_chunks(256)
                    .map(|chunk| -> Result<VerificationReport> {
                        let mut report = VerificationReport::empty(property, n);
                        for pair in chunk {
                            let p = unranker.perm(&pair[0], n)?;
                            let q = unranker.perm(&pair[1], n)?;
                            check(&mut report, [(&pair[0], &p), (&pair[1], &q)]);
                            report.seeds_checked += 1;
                        }
                        Ok(report)
                    })
                    .collect::<Result<Vec<_>>>()?
            }
        };
        Ok(VerificationReport::merge_all(property, n, reports).timed(started))
    }

    /// `d(s, s') <= min(|s - s'|, n - 1)`.
    pub fn check_distance_bound<T: SeedInt>(&self, n: usize, sampling: Sampling) -> Result<VerificationReport> {
        let cap = T::from_small(n as u64 - 1);
        self.pairwise::<T>(Property::DistanceBound, n, sampling, |report, [(s, p), (t, q)]| {
            let gap = if s >= t { s.clone() - t.clone() } else { t.clone() - s.clone() };
            let bound = gap.min(cap.clone()).to_usize().expect("bounded by n - 1");
            let d = distance(p, q);
            if d > bound {
                report.record(Violation::new(&[s, t], "d(s,s') <= min(|s-s'|, n-1)", d, bound));
            }
        })
    }

    /// `|d(s, 0) - d(s', 0)| <= d(s, s')`.
    pub fn check_reverse_triangle<T: SeedInt>(&self, n: usize, sampling: Sampling) -> Result<VerificationReport> {
        let identity = Permutation::identity(n)?;
        self.pairwise::<T>(Property::ReverseTriangle, n, sampling, |report, [(s, p), (t, q)]| {
            let gap = distance(p, &identity).abs_diff(distance(q, &identity));
            let d = distance(p, q);
            if gap > d {
                report.record(Violation::new(&[s, t], "|d(s,0) - d(s',0)| <= d(s,s')", gap, d));
            }
        })
    }

    /// Cycle-count distance agrees with breadth-first search.
    pub fn check_oracle_agreement<T: SeedInt>(&self, n: usize, sampling: Sampling) -> Result<VerificationReport> {
        if n > BFS_LIMIT {
            return Err(Error::OracleSizeExceeded { width: n, limit: BFS_LIMIT });
        }
        if sampling == Sampling::Exhaustive && n > ORACLE_PAIR_LIMIT {
            return Err(Error::OracleSizeExceeded { width: n, limit: ORACLE_PAIR_LIMIT });
        }
        self.pairwise::<T>(Property::OracleAgreement, n, sampling, |report, [(s, p), (t, q)]| {
            let fast = distance(p, q);
            let slow = bfs_distance(p, q).expect("width checked");
            if fast != slow {
                report.record(Violation::new(&[s, t], "cycle distance = BFS distance", fast, slow));
            }
        })
    }

    /// Non-negativity, identity of indiscernibles, symmetry and the triangle
    /// inequality over seed triples.
    pub fn check_metric_axioms<T: SeedInt>(&self, n: usize, sampling: Sampling) -> Result<VerificationReport> {
        let started = Instant::now();
        let unranker = self.unranker::<T>();
        let draws = self.seeds_for::<T>(n, sampling, 3, TRIPLE_LIMIT)?;
        let check = |report: &mut VerificationReport, [(a, pa), (b, pb), (c, pc)]: [(&T, &Permutation); 3]| {
            let ab = distance(pa, pb);
            let ba = distance(pb, pa);
            // usize distances are non-negative by construction
            if (ab == 0) != (pa == pb) {
                report.record(Violation::new(&[a, b], "d(a,b) = 0 iff P(a) = P(b)", ab, 0));
            }
            if ab != ba {
                report.record(Violation::new(&[a, b], "d(a,b) = d(b,a)", ab, ba));
            }
            let via = distance(pa, pc) + distance(pc, pb);
            if ab > via {
                report.record(Violation::new(&[a, b, c], "d(a,b) <= d(a,c) + d(c,b)", ab, via));
            }
            report.seeds_checked += 1;
        };
        let reports = match sampling {
            Sampling::Exhaustive => {
                let seeds = &draws[0];
                let perms = seeds.iter().map(|s| unranker.perm(s, n)).collect::<Result<Vec<_>>>()?;
                let m = seeds.len();
                (0..m)
                    .into_par_iter()
                    .map(|i| {
                        let mut report = VerificationReport::empty(Property::MetricAxioms, n);
                        for j in 0..m {
                            for k in 0..m {
                                check(
                                    &mut report,
                                    [(&seeds[i], &perms[i]), (&seeds[j], &perms[j]), (&seeds[k], &perms[k])],
                                );
                            }
                        }
                        report
                    })
                    .collect::<Vec<_>>()
            }
            Sampling::Random { .. } => draws
                .par_chunks(256)
                .map(|chunk| -> Result<VerificationReport> {
                    let mut report = VerificationReport::empty(Property::MetricAxioms, n);
                    for t in chunk {
                        let perms = [unranker.perm(&t[0], n)?, unranker.perm(&t[1], n)?, unranker.perm(&t[2], n)?];
                        check(&mut report, [(&t[0], &perms[0]), (&t[1], &perms[1]), (&t[2], &perms[2])]);
                    }
                    Ok(report)
                })
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(VerificationReport::merge_all(Property::MetricAxioms, n, reports).timed(started))
    }
}

pub fn check_bijection(n: usize) -> Result<VerificationReport> {
    Verifier::new().check_bijection(n)
}

pub fn check_adjacency<T: SeedInt>(range: &SeedRange<T>) -> Result<VerificationReport> {
    Verifier::new().check_adjacency(range)
}

pub fn check_step2<T: SeedInt>(range: &SeedRange<T>) -> Result<VerificationReport> {
    Verifier::new().check_step2(range)
}

pub fn check_distance_bound<T: SeedInt>(n: usize, sampling: Sampling) -> Result<VerificationReport> {
    Verifier::new().check_distance_bound::<T>(n, sampling)
}

pub fn check_radius(k: usize) -> Result<VerificationReport> {
    Verifier::new().check_radius(k)
}

pub fn check_reverse_triangle<T: SeedInt>(n: usize, sampling: Sampling) -> Result<VerificationReport> {
    Verifier::new().check_reverse_triangle::<T>(n, sampling)
}

pub fn check_metric_axioms<T: SeedInt>(n: usize, sampling: Sampling) -> Result<VerificationReport> {
    Verifier::new().check_metric_axioms::<T>(n, sampling)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Seed;

    fn full(n: usize) -> SeedRange<u64> {
        SeedRange::full(n).unwrap()
    }

    #[test]
    fn bijection() {
        let r = check_bijection(4).unwrap();
        assert!(r.passed);
        assert_eq!(r.seeds_checked, 24);
        assert!(check_bijection(1).unwrap().passed);
        assert_eq!(check_bijection(9), Err(Error::OracleSizeExceeded { width: 9, limit: 8 }));
    }

    #[test]
    fn adjacency_and_step2() {
        let r = check_adjacency(&SeedRange::new(319u64, 323, 6).unwrap()).unwrap();
        assert!(r.passed);
        assert_eq!(r.seeds_checked, 3);
        assert!(check_adjacency(&SeedRange::new(0u64, 2, 3).unwrap()).unwrap().passed);
        let r = check_adjacency(&full(6)).unwrap();
        assert!(r.passed);
        assert_eq!(r.seeds_checked, 719);

        let r = check_step2(&full(6)).unwrap();
        assert!(r.passed, "{:?}", r.violations);
        assert_eq!(r.seeds_checked, 718);
        assert!(matches!(check_step2(&SeedRange::new(0u64, 2, 3).unwrap()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn pairwise_properties() {
        for n in 1..=5 {
            assert!(check_distance_bound::<u64>(n, Sampling::Exhaustive).unwrap().passed);
            assert!(check_reverse_triangle::<u64>(n, Sampling::Exhaustive).unwrap().passed);
            assert!(check_radius(n).unwrap().passed);
        }
        assert_eq!(check_distance_bound::<u64>(5, Sampling::Exhaustive).unwrap().seeds_checked, 120 * 120);
        assert!(check_metric_axioms::<u64>(4, Sampling::Exhaustive).unwrap().passed);
        assert!(matches!(
            check_metric_axioms::<u64>(5, Sampling::Exhaustive),
            Err(Error::OracleSizeExceeded { .. })
        ));
    }

    #[test]
    fn sampled_offsets() {
        let v = Verifier::new();
        let r = v.check_adjacency_sampled::<u64>(12, 2000, 1).unwrap();
        assert!(r.passed);
        assert_eq!(r.seeds_checked, 2000);
        assert!(v.check_step2_sampled::<u64>(12, 2000, 1).unwrap().passed);
        assert!(v.check_adjacency_sampled::<Seed>(30, 200, 1).unwrap().passed);
        assert_eq!(v.check_adjacency_sampled::<u64>(21, 1, 1), Err(Error::SeedOverflow { width: 21 }));
        assert!(v.check_step2_sampled::<u64>(2, 10, 1).is_err());
        // width 3 has six seeds; every draw clamps into a valid window
        assert!(v.check_step2_sampled::<u64>(3, 100, 5).unwrap().passed);
    }

    #[test]
    fn reports_are_deterministic() {
        let sampling = Sampling::Random { count: 500, rng_seed: 7 };
        let a = check_metric_axioms::<u64>(6, sampling).unwrap();
        let b = check_metric_axioms::<u64>(6, sampling).unwrap();
        assert_eq!(a.seeds_checked, b.seeds_checked);
        assert_eq!(a.violations, b.violations);
    }

    #[test]
    fn property_names_parse() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert_eq!("distance-bound".parse::<Property>().unwrap(), Property::DistanceBound);
        assert!("nope".parse::<Property>().is_err());
    }

    #[test]
    fn merge_is_order_preserving() {
        let v = |s: u64| Violation::new(&[&s], "x", 0, 0);
        let mut a = VerificationReport::empty(Property::Adjacency, 3);
        a.record(v(1));
        let mut b = VerificationReport::empty(Property::Adjacency, 3);
        b.record(v(2));
        let merged = a.merge(b).merge(VerificationReport::empty(Property::Adjacency, 3));
        assert!(!merged.passed);
        assert_eq!(merged.violations, vec![v(1), v(2)]);
    }

    #[test]
    fn injected_fault_is_detected() {
        // a flip can leave the corrupted permutation one swap from both
        // neighbours, so only the bijection check is guaranteed to notice
        let range = full(5);
        let mut adjacency_hits = 0;
        for rng_seed in 0..50 {
            let flip = DigitFlip::seeded(&range, rng_seed).unwrap();
            let verifier = Verifier::with_fault(flip.clone());
            assert!(!verifier.check_bijection(5).unwrap().passed, "fault {flip:?} escaped");
            if !verifier.check_adjacency(&range).unwrap().passed {
                adjacency_hits += 1;
            }
        }
        assert!(adjacency_hits >= 40, "adjacency caught only {adjacency_hits} of 50 faults");

        let flip = DigitFlip::seeded(&range, 0).unwrap();
        let report = Verifier::with_fault(flip.clone()).check_adjacency(&range).unwrap();
        assert!(!report.passed);
        assert!(report.violations.iter().all(|v| v.seeds.contains(&flip.seed.to_string())));
    }
}
