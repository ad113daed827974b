//! Exact coefficient types for power series.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Zero};

mod sealed {
    pub trait Sealed {}
    impl Sealed for num_bigint::BigInt {}
    impl Sealed for num_rational::BigRational {}
}

/// A coefficient ring with exact arithmetic.
///
/// Only arbitrary-precision integers and rationals implement this; there is
/// deliberately no floating-point instance.
pub trait Scalar:
    sealed::Sealed
    + Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Num
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_integer(n: &BigInt) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_integer(&BigInt::from(n))
    }

    /// The value as an integer, if it is one.
    fn to_integer(&self) -> Option<BigInt>;

    /// `self / rhs` when the quotient exists in this ring.
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
}

impl Scalar for BigInt {
    fn from_integer(n: &BigInt) -> Self {
        n.clone()
    }

    fn to_integer(&self) -> Option<BigInt> {
        Some(self.clone())
    }

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(self, rhs);
        r.is_zero().then_some(q)
    }
}

impl Scalar for BigRational {
    fn from_integer(n: &BigInt) -> Self {
        BigRational::from_integer(n.clone())
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.denom().is_one().then(|| self.numer().clone())
    }

    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
}
