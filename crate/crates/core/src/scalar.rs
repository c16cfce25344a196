//! Scalar traits.
//!
//! Everything in this crate is written against two small traits: [`Ring`] for
//! commutative rings with exact equality, and [`Field`] for exact fields of
//! characteristic zero. Floating point types are deliberately not fields here:
//! every algorithm relies on exact zero tests.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Zero};

/// A commutative ring with exact equality and by-reference arithmetic.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + Debug
        + Zero
        + One
        + Neg<Output = T>
        + Sub<Output = T>
        + for<'a> Add<&'a T, Output = T>
        + for<'a> Sub<&'a T, Output = T>
        + for<'a> Mul<&'a T, Output = T>
{
}

/// An exact field of characteristic zero.
pub trait Field: Ring + Display + Div<Output = Self> + for<'a> Div<&'a Self, Output = Self> {
    /// The image of an integer under the canonical map `Z -> F`.
    fn from_int(n: i64) -> Self;

    fn inv(&self) -> Self {
        Self::one() / self
    }
}

impl Field for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

impl Field for Ratio<i64> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n)
    }
}

impl Field for Ratio<i128> {
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(n as i128)
    }
}
