//! The scalar abstraction shared by exact, dual and floating-point code paths.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use super::matrix::Matrix;
use super::rational::Rational;

/// A commutative ring containing the rationals, with a notion of units.
///
/// Every algorithm that must run in exact, forward-mode and floating-point
/// mode is written against this trait.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse, `None` when `self` is not a unit.
    fn recip(&self) -> Option<Self>;
    /// Determinant of a square matrix over this ring.
    fn det(m: &Matrix<Self>) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from(v))
    }

    fn pow(&self, exp: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn recip(&self) -> Option<Self> {
        Rational::recip(self)
    }

    fn det(m: &Matrix<Self>) -> Self {
        super::matrix::det_bareiss(m)
    }
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_rational(q: &Rational) -> Self {
        q.to_f64()
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn recip(&self) -> Option<Self> {
        if *self == 0.0 {
            None
        } else {
            Some(1.0 / self)
        }
    }

    fn det(m: &Matrix<Self>) -> Self {
        super::matrix::det_lu_f64(m)
    }
}
