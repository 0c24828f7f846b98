//! The ordered-field abstraction every geometric routine is written against.
//!
//! All predicates in this crate (vertex tests, ratio tests, rank decisions)
//! need exact comparisons, so the trait is only implemented for exact types:
//! [`BigRational`] and the quadratic-field [`Scalar`](crate::Scalar).

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact ordered field.
pub trait ExactField:
    Clone
    + Debug
    + Display
    + Eq
    + Ord
    + Hash
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// The radicand `d` of the smallest field `Q(sqrt d)` containing `self`;
    /// `1` for rationals.
    fn radicand(&self) -> u64 {
        1
    }

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    fn signum_i8(&self) -> i8 {
        match self.cmp(&Self::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    fn abs_value(&self) -> Self {
        if self.signum_i8() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Lossy conversion, only for diagnostics.
    fn approx_f64(&self) -> f64;
}

impl ExactField for BigRational {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }

    fn signum_i8(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn approx_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// `d` of the common field of two values, if they are compatible.
pub(crate) fn common_radicand(left: u64, right: u64) -> Option<u64> {
    match (left, right) {
        (1, r) => Some(r),
        (l, 1) => Some(l),
        (l, r) if l == r => Some(l),
        _ => None,
    }
}
