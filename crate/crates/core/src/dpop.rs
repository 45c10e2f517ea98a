//! Modular function of `B`, the Pfaffian `ρ(λ)`, `Det_{s*}` and the
//! Dixmier–Pukanszky symbol data.

use serde::Serialize;

use crate::algebra::{RatMatrix, Rational};
use crate::error::{Error, Result};
use crate::liestruct::{half, Decomposition};

/// Coordinates `λ_r` on `s*`, dual to `e_{r,n−r+1}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaPoint {
    pub n: usize,
    pub lambda: Vec<Rational>,
}

impl LambdaPoint {
    pub fn new(n: usize, lambda: Vec<Rational>) -> Result<Self> {
        if n < 2 {
            return Err(Error::SizeTooSmall(n));
        }
        if lambda.len() != half(n) {
            return Err(Error::LengthMismatch {
                expected: half(n),
                got: lambda.len(),
            });
        }
        Ok(LambdaPoint { n, lambda })
    }

    /// All `λ_r ≠ 0`.
    pub fn in_t_star(&self) -> bool {
        self.lambda.iter().all(|l| !l.is_zero())
    }
}

fn diagonal_of(a: &RatMatrix) -> Result<Vec<Rational>> {
    if !a.is_square() {
        return Err(Error::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let n = a.rows();
    for i in 0..n {
        for j in 0..n {
            if i != j && !a[(i, j)].is_zero() {
                return Err(Error::NotInSubspace("matrix is not diagonal".into()));
            }
        }
        if !a[(i, i)].is_positive() {
            return Err(Error::NotPositive(format!("diagonal entry {}", i + 1)));
        }
    }
    Ok((0..n).map(|i| a[(i, i)].clone()).collect())
}

fn exponent(i: usize, n: usize) -> i64 {
    2 * i as i64 - n as i64 - 1
}

/// `δ_B(a) = Π a_i^{2i−n−1}` for a positive diagonal `a`.
pub fn modular_delta(a: &RatMatrix) -> Result<Rational> {
    let diag = diagonal_of(a)?;
    let n = diag.len();
    Ok(diag
        .iter()
        .enumerate()
        .map(|(k, x)| x.pow(exponent(k + 1, n) as i32).expect("positive base"))
        .product())
}

pub fn modular_delta_f64(diag: &[f64]) -> Result<f64> {
    let n = diag.len();
    let mut out = 1.0;
    for (k, &x) in diag.iter().enumerate() {
        if x.is_nan() || x <= 0.0 {
            return Err(Error::NotPositive(format!("diagonal entry {}", k + 1)));
        }
        out *= x.powi(exponent(k + 1, n) as i32);
    }
    Ok(out)
}

/// Exact Pfaffian of a skew-symmetric matrix by pivoted block elimination.
pub fn pfaffian(m: &RatMatrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    if m != &-&m.transpose() {
        return Err(Error::InvalidParameter("matrix is not skew-symmetric".into()));
    }
    if n % 2 == 1 {
        return Ok(Rational::zero());
    }
    let mut a = m.clone();
    let mut pf = Rational::one();
    for k in (0..n).step_by(2) {
        let Some(p) = (k + 1..n).find(|&p| !a[(k, p)].is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k + 1 {
            a.swap_rows(k + 1, p);
            for row in 0..n {
                let tmp = a[(row, k + 1)].clone();
                a[(row, k + 1)] = a[(row, p)].clone();
                a[(row, p)] = tmp;
            }
            pf = -pf;
        }
        let piv = a[(k, k + 1)].clone();
        pf = &pf * &piv;
        let inv = piv.recip().ok_or(Error::Singular)?;
        for i in k + 2..n {
            for j in k + 2..n {
                let corr = &(&(&a[(k + 1, i)] * &a[(k, j)]) - &(&a[(k, i)] * &a[(k + 1, j)])) * &inv;
                a[(i, j)] = &a[(i, j)] + &corr;
            }
        }
    }
    Ok(pf)
}

/// `ρ(λ) = Π λ_r^{d_r}`.
pub fn pfaffian_rho(lambda: &LambdaPoint) -> Rational {
    lambda
        .lambda
        .iter()
        .enumerate()
        .map(|(k, l)| l.pow((lambda.n - 2 * (k + 1)) as i32).expect("nonnegative exponent"))
        .product()
}

/// The Pfaffian of the Gram matrix of `b_λ` on `v`.
pub fn gram_pfaffian(lambda: &LambdaPoint) -> Result<Rational> {
    let d = Decomposition::new(lambda.n)?;
    pfaffian(&d.b_lambda_gram(&lambda.lambda)?)
}

/// `Det_{s*}(λ) = Π β_r(λ)`, with `β_r(λ) = λ_r`.
pub fn det_s_star(lambda: &LambdaPoint) -> Rational {
    lambda.lambda.iter().cloned().product()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DPSymbol {
    pub n: usize,
    /// `σ(D) = Π E_{0,r}^{α_r}`.
    pub alpha: Vec<u64>,
    pub degree: u64,
    /// Coefficients of `β_1, …, β_R`.
    pub weight_beta: Vec<u64>,
}

fn toeplitz_rhs(n: usize) -> Vec<u64> {
    (1..=half(n)).map(|r| (n - 2 * r + 1) as u64).collect()
}

/// Solves `Σ_{r≥ℓ} α_r = d_ℓ + 1` through `α = (I − ε)(d + 1)`.
pub fn dp_exponents(n: usize) -> Result<DPSymbol> {
    if n < 2 {
        return Err(Error::SizeTooSmall(n));
    }
    let c = toeplitz_rhs(n);
    let alpha: Vec<u64> = (0..c.len())
        .map(|l| c[l] - c.get(l + 1).copied().unwrap_or(0))
        .collect();
    let degree = alpha.iter().zip(1u64..).map(|(a, r)| a * r).sum();
    let weight_beta = (0..alpha.len()).map(|l| alpha[l..].iter().sum()).collect();
    Ok(DPSymbol {
        n,
        alpha,
        degree,
        weight_beta,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityChecks {
    /// `Σ_{r≥ℓ} α_r = d_ℓ + 1` for every ℓ.
    pub toeplitz: bool,
    /// `Σ_r α_r Σ_{ℓ≤r} β_ℓ = Σ_ℓ (d_ℓ+1) β_ℓ`.
    pub weight: bool,
    /// `degree = ½(dim n + dim s)`.
    pub degree_half_dim: bool,
    /// `α = (2,…,2)` or `(2,…,2,1)`, degree `R(R+1)` or `R²`.
    pub closed_form: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DPReport {
    pub n: usize,
    pub alpha: Vec<u64>,
    pub degree: u64,
    pub weight_beta: Vec<u64>,
    pub identity_checks: IdentityChecks,
}

impl DPReport {
    pub fn passed(&self) -> bool {
        let c = &self.identity_checks;
        c.toeplitz && c.weight && c.degree_half_dim && c.closed_form
    }
}

pub fn dp_weight_check(n: usize) -> Result<DPReport> {
    let sym = dp_exponents(n)?;
    let d = Decomposition::new(n)?;
    let rhs = toeplitz_rhs(n);
    let big_r = d.big_r as u64;

    let toeplitz = (0..rhs.len()).all(|l| sym.alpha[l..].iter().sum::<u64>() == rhs[l]);
    let mut weight = vec![0u64; rhs.len()];
    for (r, a) in sym.alpha.iter().enumerate() {
        for w in &mut weight[..=r] {
            *w += a;
        }
    }
    let dim_n = d.dim_n() as u64;
    let degree_half_dim = 2 * sym.degree == dim_n + big_r;
    let expected_alpha: Vec<u64> = (0..big_r).map(|r| if n.is_multiple_of(2) && r + 1 == big_r { 1 } else { 2 }).collect();
    let expected_degree = if n % 2 == 1 { big_r * (big_r + 1) } else { big_r * big_r };
    Ok(DPReport {
        n,
        identity_checks: IdentityChecks {
            toeplitz,
            weight: weight == rhs && weight == sym.weight_beta,
            degree_half_dim,
            closed_form: sym.alpha == expected_alpha && sym.degree == expected_degree,
        },
        alpha: sym.alpha,
        degree: sym.degree,
        weight_beta: sym.weight_beta,
    })
}
