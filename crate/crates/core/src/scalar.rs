//! Integer scalar abstraction.
//!
//! Every parameter of an element (exclusion points, shifts, window radii) is
//! a bounded signed machine integer. Arithmetic on those parameters goes
//! through the checked helpers below so an overflow surfaces as
//! [`Error::Overflow`] instead of wrapping.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{CheckedNeg, PrimInt, Signed};

use crate::error::{Error, Result};

/// Signed integer type usable as the coordinate scalar.
pub trait Int:
    PrimInt + Signed + CheckedNeg + Hash + Debug + Display + FromStr + Default + Send + Sync + 'static
{
}

impl<T> Int for T where
    T: PrimInt
        + Signed
        + CheckedNeg
        + Hash
        + Debug
        + Display
        + FromStr
        + Default
        + Send
        + Sync
        + 'static
{
}

#[inline]
pub(crate) fn add<T: Int>(a: T, b: T) -> Result<T> {
    a.checked_add(&b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn sub<T: Int>(a: T, b: T) -> Result<T> {
    a.checked_sub(&b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn neg<T: Int>(a: T) -> Result<T> {
    a.checked_neg().ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn succ<T: Int>(a: T) -> Result<T> {
    add(a, T::one())
}

#[inline]
pub(crate) fn pred<T: Int>(a: T) -> Result<T> {
    sub(a, T::one())
}

#[inline]
pub(crate) fn abs<T: Int>(a: T) -> Result<T> {
    if a < T::zero() {
        neg(a)
    } else {
        Ok(a)
    }
}

/// Converts a count into the scalar type.
#[inline]
pub(crate) fn from_count<T: Int>(n: usize) -> Result<T> {
    T::from(n).ok_or(Error::Overflow)
}

/// Converts an `i64` literal into the scalar type.
#[inline]
pub fn from_i64<T: Int>(v: i64) -> Result<T> {
    T::from(v).ok_or(Error::Overflow)
}

/// Inclusive integer range `lo..=hi` over a generic scalar.
pub(crate) fn range_inclusive<T: Int>(lo: T, hi: T) -> impl Iterator<Item = T> {
    let mut next = if lo <= hi { Some(lo) } else { None };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur < hi { cur.checked_add(&T::one()) } else { None };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checked_helpers_report_overflow() {
        assert_eq!(add(i32::MAX, 1), Err(Error::Overflow));
        assert_eq!(neg(i64::MIN), Err(Error::Overflow));
        assert_eq!(sub(i8::MIN, 1i8), Err(Error::Overflow));
        assert_eq!(abs(-5i16), Ok(5));
        assert_eq!(from_count::<i8>(300), Err(Error::Overflow));
    }

    #[test]
    fn inclusive_range_handles_extremes() {
        let v: Vec<i8> = range_inclusive(125i8, 127).collect();
        assert_eq!(v, vec![125, 126, 127]);
        assert_eq!(range_inclusive(3i64, 2).count(), 0);
        assert_eq!(range_inclusive(-2i32, 2).count(), 5);
    }
}
