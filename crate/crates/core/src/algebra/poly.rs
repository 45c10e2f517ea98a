//! Univariate polynomials in η and determinants of η-affine matrices.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Serialize, Serializer};

use super::matrix::{Matrix, RatMatrix};
use super::rational::Rational;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// Polynomial with `coeffs[k]` the coefficient of η^k. The coefficient list
/// is trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type EtaPoly = Poly<Rational>;

impl<T: Scalar> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Poly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of η^k, zero past the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl fmt::Debug for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            if k == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "η")?,
                _ => write!(f, "η^{k}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for Poly<Rational> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

fn inverse_vandermonde(k: usize) -> Arc<RatMatrix> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<RatMatrix>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().expect("cache lock").get(&k) {
        return m.clone();
    }
    let v = RatMatrix::from_fn(k + 1, k + 1, |i, j| {
        Rational::from(i as i64).pow(j as i32).expect("nonnegative exponent")
    });
    let inv = Arc::new(v.inverse().expect("Vandermonde on distinct nodes"));
    cache.lock().expect("cache lock").insert(k, inv.clone());
    inv
}

/// Exact `det(A + ηB)` as a polynomial in η.
///
/// The determinant is evaluated at η = 0, 1, …, k and interpolated.
pub fn det_eta<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Poly<T>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let k = a.rows();
    if k == 0 {
        return Ok(Poly::constant(T::one()));
    }
    let values: Vec<T> = (0..=k)
        .map(|t| {
            let eta = T::from_i64(t as i64);
            let m = a.entries().iter().zip(b.entries()).map(|(x, y)| x.clone() + eta.clone() * y.clone());
            T::det(&Matrix::new(k, k, m.collect()).expect("same shape"))
        })
        .collect();
    let vinv = inverse_vandermonde(k);
    let coeffs = (0..=k)
        .map(|i| {
            (0..=k).fold(T::zero(), |acc, j| {
                let w = &vinv[(i, j)];
                if w.is_zero() {
                    acc
                } else {
                    acc + T::from_rational(w) * values[j].clone()
                }
            })
        })
        .collect();
    Ok(Poly::new(coeffs))
}
