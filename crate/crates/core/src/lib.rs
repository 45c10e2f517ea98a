//! Exact and numerical computations on the Borel subgroup of GL(n, ℝ) and
//! the lower Hessenberg model of its coadjoint orbits.

pub mod algebra;
pub mod chops;
pub mod dpop;
pub mod error;
pub mod heisenberg;
pub mod liestruct;
pub mod orbits;
pub mod poisson;
pub mod random;

pub use algebra::{Dual, EtaPoly, Matrix, RatMatrix, Rational, Scalar};
pub use error::{Error, Result};
