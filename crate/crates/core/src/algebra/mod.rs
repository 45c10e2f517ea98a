//! Arithmetic substrate: exact rationals, dual numbers, matrices, η-polynomials.

mod dual;
pub mod linalg;
mod matrix;
mod poly;
mod rational;
mod scalar;

pub use dual::{Dual, DualRational};
pub use linalg::{in_span, nullspace, rank, solve, span_equal, span_rank};
pub use matrix::{Matrix, RatMatrix};
pub use poly::{det_eta, EtaPoly, Poly};
pub use rational::Rational;
pub use scalar::Scalar;
