//! Enumerating seed ranges as permutation deltas.

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::factoradic::{check_width, decode_permutation, FactoradicCode, Permutation};
use crate::num::{factorial, SeedInt};
use crate::unranker::{minimal_width, unrank, unrank_permutation};

/// Exchange of the entries at two 1-based positions, `pos_a < pos_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Transposition {
    pos_a: usize,
    pos_b: usize,
}

impl Transposition {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a == b {
            return Err(Error::InvalidArgument(format!("bad transposition ({a}, {b})")));
        }
        Ok(Self { pos_a: a.min(b), pos_b: a.max(b) })
    }

    pub fn pos_a(&self) -> usize {
        self.pos_a
    }

    pub fn pos_b(&self) -> usize {
        self.pos_b
    }

    pub fn apply(&self, perm: &mut Permutation) {
        perm.swap(self.pos_a, self.pos_b);
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.pos_a, self.pos_b)
    }
}

/// Positions at which `p` and `q` differ, as a transposition.
///
/// Returns `None` when they are equal and an error unless they differ in
/// exactly two positions.
pub fn delta(p: &Permutation, q: &Permutation) -> Result<Option<Transposition>> {
    if p.width() != q.width() {
        return Err(Error::IncompatibleWidths { left: p.width(), right: q.width() });
    }
    let mut differing = p
        .entries()
        .iter()
        .zip(q.entries())
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, _)| i + 1);
    match (differing.next(), differing.next(), differing.next()) {
        (None, _, _) => Ok(None),
        (Some(a), Some(b), None) => Ok(Some(Transposition { pos_a: a, pos_b: b })),
        (Some(_), None, _) => unreachable!("permutations cannot differ in one position"),
        (Some(_), Some(_), Some(_)) => Err(Error::NotAdjacent { differing: 3 + differing.count() }),
    }
}

/// Half-open range of seeds `[start, end)` at a fixed width.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeedRange<T = BigUint> {
    start: T,
    end: T,
    width: usize,
}

impl<T: SeedInt> SeedRange<T> {
    /// Requires `start <= end <= width!`.
    pub fn new(start: T, end: T, width: usize) -> Result<Self> {
        check_width(width)?;
        if start > end {
            return Err(Error::InvalidArgument(format!("range start {start} exceeds end {end}")));
        }
        if !end.is_zero() && minimal_width(&(end.clone() - T::one())) > width {
            return Err(Error::SeedOutOfRange { seed: (end - T::one()).to_string(), width });
        }
        Ok(Self { start, end, width })
    }

    /// Every seed of a width, `[0, width!)`.
    pub fn full(width: usize) -> Result<Self> {
        check_width(width)?;
        let end = factorial::<T>(width).ok_or(Error::SeedOverflow { width })?;
        Ok(Self { start: T::zero(), end, width })
    }

    pub fn start(&self) -> &T {
        &self.start
    }

    pub fn end(&self) -> &T {
        &self.end
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> T {
        self.end.clone() - self.start.clone()
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, seed: &T) -> bool {
        &self.start <= seed && seed < &self.end
    }
}

/// One emitted permutation with its transposition from the predecessor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaStep<T = BigUint> {
    pub seed: T,
    pub code: FactoradicCode,
    pub perm: Permutation,
    pub delta: Option<Transposition>,
}

/// Iterator over a [`SeedRange`]; stops after the first error.
#[derive(Debug, Clone)]
pub struct DeltaStream<T> {
    next: T,
    end: T,
    width: usize,
    previous: Option<Permutation>,
    failed: bool,
}

impl<T: SeedInt> Iterator for DeltaStream<T> {
    type Item = Result<DeltaStep<T>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed || self.next >= self.end {
            return None;
        }
        let seed = self.next.clone();
        self.next = self.next.clone() + T::one();
        let step = unrank(&seed, self.width).and_then(|code| {
            let perm = decode_permutation(&code);
            let delta = match &self.previous {
                Some(prev) => match delta(prev, &perm)? {
                    Some(t) => Some(t),
                    // equal neighbours would break the bijection
                    None => return Err(Error::NotAdjacent { differing: 0 }),
                },
                None => None,
            };
            self.previous = Some(perm.clone());
            Ok(DeltaStep { seed, code, perm, delta })
        });
        self.failed = step.is_err();
        Some(step)
    }
}

/// Streams a range; the first step carries no delta.
pub fn open_stream<T: SeedInt>(range: &SeedRange<T>) -> DeltaStream<T> {
    DeltaStream {
        next: range.start.clone(),
        end: range.end.clone(),
        width: range.width,
        previous: None,
        failed: false,
    }
}

/// Streams a range as the continuation of the seeds before it: when
/// `start > 0` the first step's delta is taken against seed `start - 1`, so
/// concatenated chunks reproduce the unchunked stream exactly.
pub fn open_stream_continuing<T: SeedInt>(range: &SeedRange<T>) -> Result<DeltaStream<T>> {
    let mut stream = open_stream(range);
    if !range.start.is_zero() && !range.is_empty() {
        let before = range.start.clone() - T::one();
        stream.previous = Some(unrank_permutation(&before, range.width)?);
    }
    Ok(stream)
}

/// Splits a range into `chunks` contiguous pieces whose sizes differ by at
/// most one, larger pieces first.
pub fn partition<T: SeedInt>(range: &SeedRange<T>, chunks: usize) -> Result<Vec<SeedRange<T>>> {
    if chunks == 0 {
        return Err(Error::InvalidArgument("chunk count must be positive".into()));
    }
    let count = T::from_small(chunks as u64);
    let (base, extra) = range.len().div_rem(&count);
    let extra = extra.to_usize().expect("remainder below chunk count");
    let mut out = Vec::with_capacity(chunks);
    let mut start = range.start.clone();
    for i in 0..chunks {
        let mut end = start.clone() + base.clone();
        if i < extra {
            end = end + T::one();
        }
        out.push(SeedRange { start, end: end.clone(), width: range.width });
        start = end;
    }
    debug_assert!(start == range.end);
    Ok(out)
}
