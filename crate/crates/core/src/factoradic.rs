//! Factoradic codes and the removal-based permutation codec.
//!
//! A width-`n` code stores digit `i` as the coefficient of `i!`, with
//! `0 <= digit[i] <= i`. Codes print most-significant digit first.

use std::fmt;

use crate::error::{Error, Result};
use crate::num::SeedInt;

/// Widths are capped so that `k * (k + 1)^2` always fits a `u64`.
pub const MAX_WIDTH: usize = 1 << 20;

pub(crate) fn check_width(width: usize) -> Result<()> {
    if width == 0 {
        Err(Error::EmptyWidth)
    } else if width > MAX_WIDTH {
        Err(Error::WidthTooLarge { width, max: MAX_WIDTH })
    } else {
        Ok(())
    }
}

/// Digit vector in the factorial number system.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactoradicCode {
    digits: Vec<usize>,
}

impl FactoradicCode {
    /// Builds a code from digits indexed by factorial position (least
    /// significant first).
    pub fn new(digits: Vec<usize>) -> Result<Self> {
        check_width(digits.len())?;
        if let Some((position, &digit)) = digits.iter().enumerate().find(|(i, &d)| d > *i) {
            return Err(Error::InvalidCode { position, digit });
        }
        Ok(Self { digits })
    }

    /// Builds a code from digits written most-significant first, as printed.
    pub fn from_msd(digits: &[usize]) -> Result<Self> {
        Self::new(digits.iter().rev().copied().collect())
    }

    pub fn zero(width: usize) -> Result<Self> {
        check_width(width)?;
        Ok(Self { digits: vec![0; width] })
    }

    pub(crate) fn from_digits_unchecked(digits: Vec<usize>) -> Self {
        debug_assert!(digits.iter().enumerate().all(|(i, &d)| d <= i));
        Self { digits }
    }

    pub fn width(&self) -> usize {
        self.digits.len()
    }

    /// Digits indexed by factorial position.
    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub fn digit(&self, position: usize) -> usize {
        self.digits[position]
    }

    pub fn to_msd_vec(&self) -> Vec<usize> {
        self.digits.iter().rev().copied().collect()
    }

    /// Prepends zero digits until the code has `width` digits.
    pub fn padded(&self, width: usize) -> Result<Self> {
        check_width(width)?;
        let mut digits = self.digits.clone();
        if width > digits.len() {
            digits.resize(width, 0);
        }
        Ok(Self { digits })
    }
}

impl fmt::Display for FactoradicCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, self.digits.iter().rev())
    }
}

/// One-line arrangement of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<usize>,
}

impl Permutation {
    pub fn new(entries: Vec<usize>) -> Result<Self> {
        let width = entries.len();
        check_width(width)?;
        let mut seen = vec![false; width + 1];
        for &value in &entries {
            if value == 0 || value > width {
                return Err(Error::EntryOutOfRange { value, width });
            }
            if std::mem::replace(&mut seen[value], true) {
                return Err(Error::DuplicateEntry { value });
            }
        }
        Ok(Self { entries })
    }

    pub fn identity(width: usize) -> Result<Self> {
        check_width(width)?;
        Ok(Self { entries: (1..=width).collect() })
    }

    pub fn width(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Entry at a 1-based position.
    pub fn at(&self, position: usize) -> usize {
        self.entries[position - 1]
    }

    /// Exchanges the entries at two 1-based positions.
    pub fn swap(&mut self, pos_a: usize, pos_b: usize) {
        self.entries.swap(pos_a - 1, pos_b - 1);
    }

    /// 0-based position of each value, indexed by value.
    pub(crate) fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.entries.len() + 1];
        for (i, &v) in self.entries.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_spaced(f, self.entries.iter())
    }
}

fn write_spaced<'a>(f: &mut fmt::Formatter<'_>, mut items: impl Iterator<Item = &'a usize>) -> fmt::Result {
    if let Some(first) = items.next() {
        write!(f, "{first}")?;
        for item in items {
            write!(f, " {item}")?;
        }
    }
    Ok(())
}

/// Evaluates `sum digit[i] * i!` by Horner's rule.
pub fn integer_from_code<T: SeedInt>(code: &FactoradicCode) -> Result<T> {
    let width = code.width();
    let mut acc = T::zero();
    for position in (0..width).rev() {
        // afterwards acc = floor(s / position!)
        acc = acc
            .checked_mul_add_small(position as u64 + 1, code.digits[position] as u64)
            .ok_or(Error::SeedOverflow { width })?;
    }
    Ok(acc)
}

/// Standard factoradic expansion of `s` in `width` digits.
pub fn code_from_integer<T: SeedInt>(s: &T, width: usize) -> Result<FactoradicCode> {
    check_width(width)?;
    let mut digits = Vec::with_capacity(width);
    let mut q = s.clone();
    for radix in 1..=width as u64 {
        let (next, digit) = q.div_rem_small(radix);
        digits.push(digit as usize);
        q = next;
    }
    if !q.is_zero() {
        return Err(Error::SeedOutOfRange { seed: s.to_string(), width });
    }
    Ok(FactoradicCode { digits })
}

/// Removal decode: the most significant digit picks (0-based) from the ordered
/// set `1..=n`, the next digit picks from what remains, and so on.
pub fn decode_permutation(code: &FactoradicCode) -> Permutation {
    let mut remaining: Vec<usize> = (1..=code.width()).collect();
    let entries = code.digits.iter().rev().map(|&d| remaining.remove(d)).collect();
    Permutation { entries }
}

/// Inverse of [`decode_permutation`] (the Lehmer code of `perm`).
pub fn encode_permutation(perm: &Permutation) -> FactoradicCode {
    let mut remaining: Vec<usize> = (1..=perm.width()).collect();
    let mut digits: Vec<usize> = perm
        .entries
        .iter()
        .map(|v| {
            let idx = remaining.binary_search(v).expect("valid permutation");
            remaining.remove(idx);
            idx
        })
        .collect();
    digits.reverse();
    FactoradicCode { digits }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use std::collections::HashSet;

    fn code(msd: &[usize]) -> FactoradicCode {
        FactoradicCode::from_msd(msd).unwrap()
    }

    fn perm(entries: &[usize]) -> Permutation {
        Permutation::new(entries.to_vec()).unwrap()
    }

    /// Every valid code of a width, in standard-rank order.
    fn all_codes(width: usize) -> Vec<FactoradicCode> {
        let total: u64 = (1..=width as u64).product();
        (0..total).map(|s| code_from_integer(&s, width).unwrap()).collect()
    }

    #[test]
    fn integer_from_code_examples() {
        assert_eq!(integer_from_code::<u64>(&code(&[0, 2, 0, 0])).unwrap(), 4);
        assert_eq!(integer_from_code::<u64>(&FactoradicCode::zero(9).unwrap()).unwrap(), 0);
        assert_eq!(integer_from_code::<u64>(&code(&[1, 2, 1, 0])).unwrap(), 11);
        assert_eq!(integer_from_code::<BigUint>(&code(&[1, 2, 1, 0])).unwrap(), BigUint::from(11u32));
    }

    #[test]
    fn code_from_integer_examples() {
        assert_eq!(code_from_integer(&4u64, 4).unwrap(), code(&[0, 2, 0, 0]));
        assert_eq!(code_from_integer(&0u64, 5).unwrap(), FactoradicCode::zero(5).unwrap());
        assert_eq!(code_from_integer(&6u64, 4).unwrap(), code(&[1, 0, 0, 0]));
    }

    #[test]
    fn code_from_integer_rejects_small_width() {
        assert_eq!(
            code_from_integer(&24u64, 4),
            Err(Error::SeedOutOfRange { seed: "24".into(), width: 4 })
        );
        assert!(code_from_integer(&23u64, 4).is_ok());
    }

    #[test]
    fn invalid_codes_name_the_position() {
        assert_eq!(
            FactoradicCode::from_msd(&[0, 3, 0, 0]),
            Err(Error::InvalidCode { position: 2, digit: 3 })
        );
        assert_eq!(FactoradicCode::new(vec![1]), Err(Error::InvalidCode { position: 0, digit: 1 }));
        assert_eq!(FactoradicCode::new(vec![]), Err(Error::EmptyWidth));
    }

    #[test]
    fn decode_examples() {
        assert_eq!(decode_permutation(&code(&[0, 2, 0, 0])), perm(&[1, 4, 2, 3]));
        assert_eq!(decode_permutation(&FactoradicCode::zero(6).unwrap()), Permutation::identity(6).unwrap());
        assert_eq!(decode_permutation(&code(&[2, 1, 2, 2, 0, 0])), perm(&[3, 2, 5, 6, 1, 4]));
    }

    #[test]
    fn encode_examples() {
        assert_eq!(encode_permutation(&perm(&[1, 4, 2, 3])), code(&[0, 2, 0, 0]));
        assert_eq!(encode_permutation(&Permutation::identity(7).unwrap()), FactoradicCode::zero(7).unwrap());
        assert_eq!(encode_permutation(&perm(&[3, 2, 5, 1, 6, 4])), code(&[2, 1, 2, 0, 1, 0]));
    }

    #[test]
    fn invalid_permutations() {
        assert_eq!(Permutation::new(vec![1, 1, 3]), Err(Error::DuplicateEntry { value: 1 }));
        assert_eq!(Permutation::new(vec![1, 4, 3]), Err(Error::EntryOutOfRange { value: 4, width: 3 }));
        assert_eq!(Permutation::new(vec![0, 1]), Err(Error::EntryOutOfRange { value: 0, width: 2 }));
    }

    #[test]
    fn display_is_msd_first_and_space_separated() {
        assert_eq!(code(&[2, 1, 2, 2, 0, 0]).to_string(), "2 1 2 2 0 0");
        assert_eq!(perm(&[1, 4, 2, 3]).to_string(), "1 4 2 3");
    }

    #[test]
    fn round_trips_and_bijection_exhaustive() {
        for width in 1..=7 {
            let mut perms = HashSet::new();
            for c in all_codes(width) {
                assert_eq!(c.digit(0), 0);
                let s: u64 = integer_from_code(&c).unwrap();
                assert_eq!(code_from_integer(&s, width).unwrap(), c);
                let p = decode_permutation(&c);
                assert_eq!(encode_permutation(&p), c);
                perms.insert(p);
            }
            let total: usize = (1..=width).product();
            assert_eq!(perms.len(), total);
        }
    }

    #[test]
    fn native_overflow_is_reported() {
        let widest = FactoradicCode::new((0..21).collect()).unwrap();
        assert_eq!(integer_from_code::<u64>(&widest), Err(Error::SeedOverflow { width: 21 }));
        assert!(integer_from_code::<u128>(&widest).is_ok());
    }
}
