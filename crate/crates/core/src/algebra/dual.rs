//! First-order dual numbers `a + b·ε`, `ε² = 0`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::matrix::{det_berkowitz, Matrix};
use super::rational::Rational;
use super::scalar::Scalar;

/// A value together with its first-order infinitesimal part.
///
/// Nesting (`Dual<Dual<T>>`) gives mixed second derivatives.
#[derive(Clone, PartialEq)]
pub struct Dual<T> {
    pub value: T,
    pub deriv: T,
}

pub type DualRational = Dual<Rational>;

impl<T: Scalar> Dual<T> {
    pub fn new(value: T, deriv: T) -> Self {
        Dual { value, deriv }
    }

    pub fn constant(value: T) -> Self {
        Dual {
            value,
            deriv: T::zero(),
        }
    }

    /// The independent variable at `value`.
    pub fn variable(value: T) -> Self {
        Dual {
            value,
            deriv: T::one(),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for Dual<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}ε)", self.value, self.deriv)
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Dual::new(self.value + rhs.value, self.deriv + rhs.deriv)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Dual::new(self.value - rhs.value, self.deriv - rhs.deriv)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let deriv = self.value.clone() * rhs.deriv + self.deriv * rhs.value.clone();
        Dual::new(self.value * rhs.value, deriv)
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.value, -self.deriv)
    }
}

/// Quotient rule. Panics when the divisor's value part is not a unit; use
/// [`Scalar::recip`] for a checked inverse.
#[allow(clippy::suspicious_arithmetic_impl)]
impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip().expect("dual division by a non-unit")
    }
}

impl<T: Scalar> Scalar for Dual<T> {
    fn zero() -> Self {
        Dual::constant(T::zero())
    }

    fn one() -> Self {
        Dual::constant(T::one())
    }

    fn from_rational(q: &Rational) -> Self {
        Dual::constant(T::from_rational(q))
    }

    fn is_zero(&self) -> bool {
        self.value.is_zero() && self.deriv.is_zero()
    }

    fn recip(&self) -> Option<Self> {
        let inv = self.value.recip()?;
        let deriv = -(self.deriv.clone() * inv.clone() * inv.clone());
        Some(Dual::new(inv, deriv))
    }

    fn det(m: &Matrix<Self>) -> Self {
        // Division-free, so no pivot has to be a unit.
        det_berkowitz(m)
    }
}
