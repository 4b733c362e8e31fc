//! Seed integer types.
//!
//! Every algorithm in this crate is generic over [`SeedInt`], so the same code
//! runs on a native word (fast path, exact for widths up to 20 with `u64`) and
//! on [`BigUint`] for arbitrary widths. Per-step arithmetic only ever divides or
//! multiplies a seed by a small word, so the trait is deliberately narrow.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{FromPrimitive, ToPrimitive, Unsigned};

/// Non-negative integer usable as a seed.
pub trait SeedInt:
    Integer
    + Unsigned
    + Clone
    + Hash
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Largest width `n` for which every seed `< n!` is representable, or
    /// `None` when the type is unbounded.
    const MAX_EXACT_WIDTH: Option<usize>;

    fn from_small(v: u64) -> Self;

    /// Quotient and remainder by a small divisor.
    fn div_rem_small(&self, divisor: u64) -> (Self, u64);

    fn rem_small(&self, divisor: u64) -> u64;

    /// `self * factor + addend`, or `None` on overflow.
    fn checked_mul_add_small(&self, factor: u64, addend: u64) -> Option<Self>;

    fn to_big(&self) -> BigUint;

    /// Narrowing conversion; `None` when the value does not fit.
    fn from_big(v: &BigUint) -> Option<Self>;
}

macro_rules! impl_native_seed {
    ($t:ty, $max_width:expr) => {
        impl SeedInt for $t {
            const MAX_EXACT_WIDTH: Option<usize> = Some($max_width);

            #[inline]
            fn from_small(v: u64) -> Self {
                v as $t
            }

            #[inline]
            fn div_rem_small(&self, divisor: u64) -> (Self, u64) {
                let d = divisor as $t;
                (*self / d, (*self % d) as u64)
            }

            #[inline]
            fn rem_small(&self, divisor: u64) -> u64 {
                (*self % divisor as $t) as u64
            }

            #[inline]
            fn checked_mul_add_small(&self, factor: u64, addend: u64) -> Option<Self> {
                self.checked_mul(factor as $t)?.checked_add(addend as $t)
            }

            fn to_big(&self) -> BigUint {
                BigUint::from(*self)
            }

            fn from_big(v: &BigUint) -> Option<Self> {
                <$t>::try_from(v).ok()
            }
        }
    };
}

// 20! < 2^64 < 21!, 34! < 2^128 < 35!
impl_native_seed!(u64, 20);
impl_native_seed!(u128, 34);

impl SeedInt for BigUint {
    const MAX_EXACT_WIDTH: Option<usize> = None;

    fn from_small(v: u64) -> Self {
        BigUint::from(v)
    }

    fn div_rem_small(&self, divisor: u64) -> (Self, u64) {
        let (q, r) = self.div_rem(&BigUint::from(divisor));
        // remainder < divisor, always fits
        (q, r.to_u64().unwrap_or_default())
    }

    fn rem_small(&self, divisor: u64) -> u64 {
        (self % divisor).to_u64().unwrap_or_default()
    }

    fn checked_mul_add_small(&self, factor: u64, addend: u64) -> Option<Self> {
        Some(self * factor + addend)
    }

    fn to_big(&self) -> BigUint {
        self.clone()
    }

    fn from_big(v: &BigUint) -> Option<Self> {
        Some(v.clone())
    }
}

/// `n!` in the seed type, or `None` if it overflows.
pub fn factorial<T: SeedInt>(n: usize) -> Option<T> {
    let mut acc = T::one();
    for k in 2..=n as u64 {
        acc = acc.checked_mul_add_small(k, 0)?;
    }
    Some(acc)
}
