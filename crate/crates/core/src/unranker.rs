//! Seed to factoradic code in transposition order, and back.
//!
//! For `k = n` down to `1`, with `d_{n+1} = 0`:
//!
//! ```text
//! x_k     = floor((s mod k!) / (k-1)!)
//! d_k     = floor((floor((s + d_{k+1} (k+1)!) / k!) mod (k+1)^2) / (k+2))
//! f_{k-1} = (x_k - floor(s / k!) - d_k) mod k        (Euclidean mod)
//! ```
//!
//! Writing `Q_k = floor(s / k!)`, the quantity inside `d_k` equals
//! `Q_k + (k+1) d_{k+1}` because `k!` divides `d_{k+1} (k+1)!`, and `x_k` is the
//! standard factoradic digit `Q_{k-1} mod k`. A single upward pass of
//! small-divisor divisions therefore yields every `x_k` and every
//! `Q_k mod k (k+1)^2`, and the downward pass runs on machine words. The seed
//! type only ever sees division and multiplication by small words.

use crate::error::{Error, Result};
use crate::factoradic::{check_width, decode_permutation, FactoradicCode, Permutation};
use crate::num::SeedInt;

/// Intermediate values of one loop iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub k: usize,
    pub x: usize,
    pub d: usize,
    pub f: usize,
}

/// Per-step record of an unranking, from `k = n` down to `k = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UnrankTrace {
    pub steps: Vec<TraceStep>,
}

impl UnrankTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step(&self, k: usize) -> Option<&TraceStep> {
        self.steps.iter().find(|step| step.k == k)
    }
}

/// Smallest `n >= 1` with `s <= n! - 1`.
pub fn minimal_width<T: SeedInt>(s: &T) -> usize {
    let mut n = 1;
    let mut q = s.clone();
    // q = floor(s / n!)
    while !q.is_zero() {
        n += 1;
        q = q.div_rem_small(n as u64).0;
    }
    n
}

#[inline]
fn step_modulus(k: u64) -> u64 {
    k * (k + 1) * (k + 1)
}

/// `d_k` from `Q_k mod k (k+1)^2` and `d_{k+1}`.
#[inline]
fn carry(k: u64, q_residue: u64, d_next: u64) -> u64 {
    let m = (k + 1) * (k + 1);
    ((q_residue % m + (k + 1) * d_next) % m) / (k + 2)
}

fn unrank_with<T: SeedInt>(s: &T, n: usize, mut on_step: impl FnMut(TraceStep)) -> Result<FactoradicCode> {
    check_width(n)?;
    let mut xs = Vec::with_capacity(n);
    let mut residues = Vec::with_capacity(n);
    let mut q = s.clone();
    for k in 1..=n as u64 {
        let (next, x) = q.div_rem_small(k);
        q = next;
        xs.push(x);
        residues.push(if q.is_zero() { 0 } else { q.rem_small(step_modulus(k)) });
    }
    if !q.is_zero() {
        return Err(Error::SeedOutOfRange { seed: s.to_string(), width: n });
    }

    let mut digits = vec![0; n];
    let mut d_next = 0;
    for k in (1..=n as u64).rev() {
        let i = k as usize - 1;
        let r = residues[i];
        let d = carry(k, r, d_next);
        // x < k, so adding 2k keeps the dividend non-negative
        let f = (xs[i] + 2 * k - r % k - d % k) % k;
        digits[i] = f as usize;
        on_step(TraceStep { k: k as usize, x: xs[i] as usize, d: d as usize, f: f as usize });
        d_next = d;
    }
    Ok(FactoradicCode::from_digits_unchecked(digits))
}

/// Factoradic code of seed `s` at width `n`.
pub fn unrank<T: SeedInt>(s: &T, n: usize) -> Result<FactoradicCode> {
    unrank_with(s, n, |_| {})
}

pub fn unrank_traced<T: SeedInt>(s: &T, n: usize) -> Result<(FactoradicCode, UnrankTrace)> {
    let mut trace = UnrankTrace { steps: Vec::with_capacity(n) };
    let code = unrank_with(s, n, |step| trace.steps.push(step))?;
    Ok((code, trace))
}

pub fn unrank_permutation<T: SeedInt>(s: &T, n: usize) -> Result<Permutation> {
    unrank(s, n).map(|code| decode_permutation(&code))
}

/// Inverse of [`unrank`]: recovers the seed whose code is `code`.
///
/// Runs the loop top-down again, reconstructing `Q_{k-1} = k Q_k + x_k` as it
/// goes, since line 5 determines `x_k` modulo `k` once `Q_k` and `d_k` are
/// known.
pub fn rank<T: SeedInt>(code: &FactoradicCode) -> Result<T> {
    let n = code.width();
    let mut q = T::zero();
    let mut d_next = 0;
    for k in (1..=n as u64).rev() {
        let r = if q.is_zero() { 0 } else { q.rem_small(step_modulus(k)) };
        let d = carry(k, r, d_next);
        let x = (code.digit(k as usize - 1) as u64 + r % k + d % k) % k;
        q = q.checked_mul_add_small(k, x).ok_or(Error::SeedOverflow { width: n })?;
        d_next = d;
    }
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factoradic::{code_from_integer, integer_from_code};
    use num_bigint::BigUint;
    use std::collections::HashSet;

    fn code(msd: &[usize]) -> FactoradicCode {
        FactoradicCode::from_msd(msd).unwrap()
    }

    #[test]
    fn minimal_width_examples() {
        assert_eq!(minimal_width(&0u64), 1);
        assert_eq!(minimal_width(&1u64), 2);
        assert_eq!(minimal_width(&4u64), 3);
        assert_eq!(minimal_width(&5u64), 3);
        assert_eq!(minimal_width(&6u64), 4);
        assert_eq!(minimal_width(&319u64), 6);
        assert_eq!(minimal_width(&BigUint::from(319u32)), 6);
    }

    #[test]
    fn unrank_examples() {
        let (c, trace) = unrank_traced(&4u64, 4).unwrap();
        assert_eq!(c, code(&[0, 2, 0, 0]));
        let step4 = trace.step(4).unwrap();
        let step3 = trace.step(3).unwrap();
        assert_eq!((step4.x, step4.d), (0, 0));
        assert_eq!((step3.x, step3.d), (2, 0));

        assert_eq!(unrank(&0u64, 5).unwrap(), FactoradicCode::zero(5).unwrap());
        assert_eq!(unrank(&319u64, 6).unwrap(), code(&[2, 1, 2, 2, 0, 0]));
        assert_eq!(unrank(&320u64, 6).unwrap(), code(&[2, 1, 2, 0, 1, 0]));
        assert_eq!(unrank(&2u64, 3).unwrap(), code(&[1, 1, 0]));
    }

    #[test]
    fn negative_dividend_uses_euclidean_mod() {
        // s = 319, k = 4: x_4 = 1, Q_4 = 13, d_4 = 2, so the dividend is -14
        let (_, trace) = unrank_traced(&319u64, 6).unwrap();
        let step = trace.step(4).unwrap();
        assert_eq!((step.x, step.d, step.f), (1, 2, 2));
    }

    #[test]
    fn unrank_permutation_examples() {
        assert_eq!(unrank_permutation(&4u64, 4).unwrap().entries(), &[1, 4, 2, 3]);
        assert_eq!(unrank_permutation(&0u64, 6).unwrap(), Permutation::identity(6).unwrap());
        assert_eq!(unrank_permutation(&321u64, 6).unwrap().entries(), &[3, 2, 5, 1, 4, 6]);
    }

    #[test]
    fn out_of_range_seed() {
        assert_eq!(unrank(&24u64, 4), Err(Error::SeedOutOfRange { seed: "24".into(), width: 4 }));
        assert!(unrank(&23u64, 4).is_ok());
        assert_eq!(unrank(&0u64, 0), Err(Error::EmptyWidth));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank::<u64>(&code(&[0, 2, 0, 0])).unwrap(), 4);
        assert_eq!(rank::<u64>(&FactoradicCode::zero(8).unwrap()).unwrap(), 0);
        for s in 0..5040u64 {
            assert_eq!(rank::<u64>(&unrank(&s, 7).unwrap()).unwrap(), s);
        }
    }

    #[test]
    fn bijection_and_padding_small_widths() {
        for n in 1..=7usize {
            let total: u64 = (1..=n as u64).product();
            let mut codes = HashSet::new();
            let mut perms = HashSet::new();
            for s in 0..total {
                let (c, trace) = unrank_traced(&s, n).unwrap();
                assert_eq!(trace.len(), n);
                assert_eq!(c.digit(0), 0);
                for step in &trace.steps {
                    assert!(step.x < step.k && step.f < step.k);
                }
                if n <= 6 {
                    assert_eq!(unrank(&s, n + 1).unwrap(), c.padded(n + 1).unwrap());
                    assert_eq!(unrank(&s, n + 2).unwrap(), c.padded(n + 2).unwrap());
                }
                perms.insert(decode_permutation(&c));
                codes.insert(c);
            }
            assert_eq!(codes.len() as u64, total);
            assert_eq!(perms.len() as u64, total);
        }
    }

    #[test]
    fn unrank_of_every_code_is_inverted_by_rank() {
        for s in 0..720u64 {
            let c = code_from_integer(&s, 6).unwrap();
            let seed: u64 = rank(&c).unwrap();
            assert_eq!(unrank(&seed, 6).unwrap(), c);
        }
    }

    #[test]
    fn native_and_big_paths_agree_near_the_u64_limit() {
        let top = crate::num::factorial::<u64>(20).unwrap() - 1;
        for s in [top, top - 1, top / 3, 1u64 << 61] {
            let big = BigUint::from(s);
            assert_eq!(unrank(&s, 20).unwrap(), unrank(&big, 20).unwrap());
            assert_eq!(unrank(&s, 25).unwrap(), unrank(&big, 25).unwrap());
            let c = unrank(&s, 20).unwrap();
            assert_eq!(rank::<u64>(&c).unwrap(), s);
            assert_eq!(integer_from_code::<u64>(&code_from_integer(&s, 20).unwrap()).unwrap(), s);
        }
    }
}
