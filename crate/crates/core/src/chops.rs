//! Chop polynomials `det(X − ηI)_{(r)}`, their coefficients `E_{m,r}`, the
//! ratios `I_{m,r}`, and the parabolic and unipotent coadjoint actions under
//! which they are semi-invariant.

use rand::Rng;
use serde::Serialize;

use crate::algebra::{det_eta, Matrix, Poly, RatMatrix, Rational, Scalar};
use crate::error::{Error, Result};
use crate::liestruct::{half, pi_strictly_lower};
use crate::random::{self, par_trials, MAX_RESAMPLES};

/// A lower Hessenberg matrix: ones on the superdiagonal, zeros above it.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct HessenbergPoint(RatMatrix);

impl HessenbergPoint {
    pub fn new(x: RatMatrix) -> Result<Self> {
        check_hessenberg(&x)?;
        Ok(HessenbergPoint(x))
    }

    /// Build from the entries on and below the diagonal, row by row.
    pub fn from_lower(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        HessenbergPoint(RatMatrix::from_fn(n, n, |i, j| match j.cmp(&i) {
            std::cmp::Ordering::Greater if j == i + 1 => Rational::one(),
            std::cmp::Ordering::Greater => Rational::zero(),
            _ => f(i, j),
        }))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> RatMatrix {
        self.0
    }
}

/// Verify the lower Hessenberg shape of any scalar matrix.
pub fn check_hessenberg<T: Scalar>(x: &Matrix<T>) -> Result<()> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let n = x.rows();
    for i in 0..n {
        for j in i + 1..n {
            let ok = if j == i + 1 {
                x[(i, j)] == T::one()
            } else {
                x[(i, j)].is_zero()
            };
            if !ok {
                return Err(Error::NotHessenberg(format!("entry ({}, {})", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

fn check_level(n: usize, r: usize) -> Result<()> {
    let max = half(n);
    if r > max {
        return Err(Error::LevelOutOfRange { n, r, max });
    }
    Ok(())
}

/// `det(X − ηI)` with the first `r` rows and last `r` columns removed.
pub fn chop_poly<T: Scalar>(x: &Matrix<T>, r: usize) -> Result<Poly<T>> {
    if !x.is_square() {
        return Err(Error::NotSquare {
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    let n = x.rows();
    check_level(n, r)?;
    let k = n - r;
    let a = Matrix::from_fn(k, k, |i, j| x[(i + r, j)].clone());
    let b = Matrix::from_fn(k, k, |i, j| if i + r == j { -T::one() } else { T::zero() });
    det_eta(&a, &b)
}

pub fn chop_coeffs(x: &RatMatrix, r: usize) -> Result<Poly<Rational>> {
    chop_poly(x, r)
}

/// `E_{m,r}`, the coefficient of `η^{n−2r−m}` in the `r`-chop.
pub fn e_coeff<T: Scalar>(x: &Matrix<T>, m: usize, r: usize) -> Result<T> {
    let p = chop_poly(x, r)?;
    let top = x.rows() - 2 * r;
    if m > top {
        return Err(Error::CoefficientOutOfRange { m, r, max: top });
    }
    Ok(p.coeff(top - m))
}

/// All `E_{m,r}` at one level, `m = 0..=n−2r`.
pub fn e_coeffs<T: Scalar>(x: &Matrix<T>, r: usize) -> Result<Vec<T>> {
    let p = chop_poly(x, r)?;
    let top = x.rows() - 2 * r;
    Ok((0..=top).map(|m| p.coeff(top - m)).collect())
}

/// `I_{m,r} = E_{m,r} / E_{0,r}`.
pub fn casimir<T: Scalar>(x: &Matrix<T>, m: usize, r: usize) -> Result<T> {
    if r == 0 {
        return Err(Error::LevelOutOfRange {
            n: x.rows(),
            r,
            max: half(x.rows()),
        });
    }
    let e = e_coeffs(x, r)?;
    let top = e.len() - 1;
    if m > top {
        return Err(Error::CoefficientOutOfRange { m, r, max: top });
    }
    let inv = e[0].recip().ok_or(Error::NotGeneric { r })?;
    Ok(e[m].clone() * inv)
}

pub fn casimir_i(x: &HessenbergPoint, m: usize, r: usize) -> Result<Rational> {
    casimir(x.matrix(), m, r)
}

/// Levels at which genericity is required for the involutive family.
pub fn casimir_levels(n: usize) -> std::ops::RangeInclusive<usize> {
    1..=(n - 1) / 2
}

/// Whether `E_{0,r} ≠ 0` for `r = 1..=R`.
pub fn is_generic<T: Scalar>(x: &Matrix<T>) -> bool {
    (1..=half(x.rows())).all(|r| e_coeff(x, 0, r).map(|e| !e.is_zero()).unwrap_or(false))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChopLevel {
    pub r: usize,
    pub poly: Poly<Rational>,
    /// `E_{m,r}` for `m = 0..=n−2r`.
    pub e: Vec<Rational>,
    pub generic: bool,
}

/// Every chop polynomial of one matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChopFamily {
    pub n: usize,
    pub levels: Vec<ChopLevel>,
}

impl ChopFamily {
    pub fn new(x: &RatMatrix) -> Result<Self> {
        let n = x.rows();
        let levels = (0..=half(n))
            .map(|r| {
                let poly = chop_poly(x, r)?;
                let top = n - 2 * r;
                let e: Vec<Rational> = (0..=top).map(|m| poly.coeff(top - m)).collect();
                let generic = !e[0].is_zero();
                Ok(ChopLevel { r, poly, e, generic })
            })
            .collect::<Result<_>>()?;
        Ok(ChopFamily { n, levels })
    }

    pub fn is_generic(&self) -> bool {
        self.levels.iter().skip(1).all(|l| l.generic)
    }
}

/// `τ_r`: the superdiagonal units at rows `i ≤ r` and `i ≥ n−r` (as a set,
/// so `τ_R = ε`).
pub fn tau<T: Scalar>(n: usize, r: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, j| {
        let row = i + 1;
        if j == i + 1 && (row <= r || row >= n - r) && r > 0 {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// Zero pattern of `P_r` (0-based): below the diagonal in the first `r`
/// columns, or left of the diagonal in the last `r` rows.
fn parabolic_zero(n: usize, r: usize, i: usize, j: usize) -> bool {
    i > j && (j < r || i >= n - r)
}

/// Zero pattern of `p_{r−}`, the transpose of the parabolic algebra.
fn p_minus_zero(n: usize, r: usize, i: usize, j: usize) -> bool {
    parabolic_zero(n, r, j, i)
}

pub fn pi_p_minus<T: Scalar>(x: &Matrix<T>, r: usize) -> Matrix<T> {
    let n = x.rows();
    Matrix::from_fn(n, n, |i, j| {
        if p_minus_zero(n, r, i, j) {
            T::zero()
        } else {
            x[(i, j)].clone()
        }
    })
}

pub fn in_p_minus<T: Scalar>(x: &Matrix<T>, r: usize) -> bool {
    let n = x.rows();
    (0..n).all(|i| (0..n).all(|j| !p_minus_zero(n, r, i, j) || x[(i, j)].is_zero()))
}

/// An invertible element of `P_r`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParabolicElement {
    r: usize,
    p: RatMatrix,
}

impl ParabolicElement {
    pub fn new(r: usize, p: RatMatrix) -> Result<Self> {
        if !p.is_square() {
            return Err(Error::NotSquare {
                rows: p.rows(),
                cols: p.cols(),
            });
        }
        let n = p.rows();
        check_level(n, r)?;
        for i in 0..n {
            for j in 0..n {
                if parabolic_zero(n, r, i, j) && !p[(i, j)].is_zero() {
                    return Err(Error::NotInSubspace(format!(
                        "entry ({}, {}) must vanish in P_{r}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if p.det()?.is_zero() {
            return Err(Error::Singular);
        }
        Ok(ParabolicElement { r, p })
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.p
    }

    pub fn sample<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> Result<Self> {
        for _ in 0..MAX_RESAMPLES {
            let p = RatMatrix::from_fn(n, n, |i, j| {
                if parabolic_zero(n, r, i, j) {
                    Rational::zero()
                } else if i == j {
                    random::nonzero_rational(rng)
                } else {
                    random::rational(rng)
                }
            });
            match ParabolicElement::new(r, p) {
                Ok(e) => return Ok(e),
                Err(Error::Singular) => continue,
                Err(e) => return Err(e),
            }
        }
        Err(Error::SamplingExhausted(MAX_RESAMPLES))
    }
}

/// `χ_r(p) = p_{11}⋯p_{rr} / (p_{n−r+1,n−r+1}⋯p_{nn})`.
pub fn weight_chi(r: usize, p: &RatMatrix) -> Result<Rational> {
    let n = p.rows();
    check_level(n, r)?;
    let mut num = Rational::one();
    let mut den = Rational::one();
    for i in 0..r {
        if p[(i, i)].is_zero() {
            return Err(Error::ZeroDiagonal(i + 1));
        }
        num *= &p[(i, i)];
    }
    for i in n - r..n {
        if p[(i, i)].is_zero() {
            return Err(Error::ZeroDiagonal(i + 1));
        }
        den *= &p[(i, i)];
    }
    Ok(num / den)
}

/// `Ad*_p X = τ_r + π_{p_{r−}}(p⁻¹ (X − τ_r) p)`. This is a right action:
/// acting by `p₂` and then `p₁` equals acting by `p₂p₁`.
pub fn coadjoint_p(r: usize, p: &RatMatrix, x: &RatMatrix) -> Result<RatMatrix> {
    let n = x.rows();
    check_level(n, r)?;
    if p.rows() != n || !x.is_square() {
        return Err(Error::DimensionMismatch("p and X sizes differ".into()));
    }
    let t = tau::<Rational>(n, r);
    let y = x - &t;
    if !in_p_minus(&y, r) {
        return Err(Error::NotInSubspace(format!("X − τ_{r} is not in p_{r}−")));
    }
    let pinv = p.inverse()?;
    Ok(&t + &pi_p_minus(&(&(&pinv * &y) * p), r))
}

/// A random point of `τ_r + p_{r−}`.
pub fn sample_p_minus_point<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> RatMatrix {
    let t = tau::<Rational>(n, r);
    let y = RatMatrix::from_fn(n, n, |i, j| {
        if p_minus_zero(n, r, i, j) {
            Rational::zero()
        } else {
            random::rational(rng)
        }
    });
    &t + &y
}

/// A random lower Hessenberg point with `E_{0,r} ≠ 0` for every `r = 1..=R`.
pub fn sample_generic<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<HessenbergPoint> {
    for _ in 0..MAX_RESAMPLES {
        let x = HessenbergPoint::from_lower(n, |_, _| random::rational(rng));
        if is_generic(x.matrix()) {
            return Ok(x);
        }
    }
    Err(Error::SamplingExhausted(MAX_RESAMPLES))
}

pub fn sample_unipotent<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RatMatrix {
    RatMatrix::from_fn(n, n, |i, j| match j.cmp(&i) {
        std::cmp::Ordering::Equal => Rational::one(),
        std::cmp::Ordering::Greater => random::rational(rng),
        std::cmp::Ordering::Less => Rational::zero(),
    })
}

pub fn sample_strictly_lower<R: Rng + ?Sized>(n: usize, rng: &mut R) -> RatMatrix {
    RatMatrix::from_fn(n, n, |i, j| if i > j { random::rational(rng) } else { Rational::zero() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiInvarianceReport {
    pub n: usize,
    pub r: usize,
    pub m: usize,
    pub trials: usize,
    pub failures: Vec<usize>,
}

impl SemiInvarianceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check `E_{m,r}(Ad*_p X) = χ_r(p) E_{m,r}(X)` at random exact inputs.
pub fn semi_invariance_check(n: usize, r: usize, m: usize, trials: usize, seed: u64) -> Result<SemiInvarianceReport> {
    if n < 2 {
        return Err(Error::SizeTooSmall(n));
    }
    check_level(n, r)?;
    if m > n - 2 * r {
        return Err(Error::CoefficientOutOfRange { m, r, max: n - 2 * r });
    }
    let outcomes = par_trials(trials, seed, |_, rng| -> Result<bool> {
        let x = sample_p_minus_point(n, r, rng);
        let p = ParabolicElement::sample(n, r, rng)?;
        let moved = coadjoint_p(r, p.matrix(), &x)?;
        let lhs = e_coeff(&moved, m, r)?;
        let rhs = weight_chi(r, p.matrix())? * e_coeff(&x, m, r)?;
        Ok(lhs == rhs)
    });
    let mut failures = Vec::new();
    for (t, o) in outcomes.into_iter().enumerate() {
        if !o? {
            failures.push(t);
        }
    }
    Ok(SemiInvarianceReport {
        n,
        r,
        m,
        trials,
        failures,
    })
}

/// `π_{strictly-lower}(n⁻¹ Y n)` for unipotent upper triangular `n`.
pub fn coadjoint_n_restricted(nelt: &RatMatrix, y: &RatMatrix) -> Result<RatMatrix> {
    let size = nelt.rows();
    if !nelt.is_square() || y.rows() != size || y.cols() != size {
        return Err(Error::DimensionMismatch("nelt and Y sizes differ".into()));
    }
    for i in 0..size {
        for j in 0..=i {
            let want = if i == j { Rational::one() } else { Rational::zero() };
            if nelt[(i, j)] != want {
                return Err(Error::NotInSubspace("nelt is not unipotent upper triangular".into()));
            }
            if !y[(j, i)].is_zero() {
                return Err(Error::NotInSubspace("Y is not strictly lower triangular".into()));
            }
        }
    }
    let inv = nelt.inverse()?;
    Ok(pi_strictly_lower(&(&(&inv * y) * nelt)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NInvarianceReport {
    pub n: usize,
    pub trials: usize,
    /// Trials where some `E_{0,r}` changed under the action.
    pub invariance_failures: Vec<usize>,
    /// Trials where `E_{0,r}(tY) ≠ t^r E_{0,r}(Y)` for some `r`.
    pub homogeneity_failures: Vec<usize>,
}

impl NInvarianceReport {
    pub fn passed(&self) -> bool {
        self.invariance_failures.is_empty() && self.homogeneity_failures.is_empty()
    }
}

/// Invariance of every `E_{0,r}` under the restricted unipotent action, and
/// homogeneity of degree `r` under scaling, at random exact inputs.
pub fn n_invariance_check(n: usize, trials: usize, seed: u64) -> Result<NInvarianceReport> {
    if n < 2 {
        return Err(Error::SizeTooSmall(n));
    }
    let outcomes = par_trials(trials, seed, |_, rng| -> Result<(bool, bool)> {
        let nelt = sample_unipotent(n, rng);
        let y = sample_strictly_lower(n, rng);
        let t = random::nonzero_rational(rng);
        let moved = coadjoint_n_restricted(&nelt, &y)?;
        let scaled = y.scale(&t);
        let mut inv = true;
        let mut hom = true;
        for r in 1..=half(n) {
            let e = e_coeff(&y, 0, r)?;
            inv &= e_coeff(&moved, 0, r)? == e;
            let tr = t.pow(r as i32).expect("nonzero");
            hom &= e_coeff(&scaled, 0, r)? == tr * e;
        }
        Ok((inv, hom))
    });
    let mut report = NInvarianceReport {
        n,
        trials,
        invariance_failures: Vec::new(),
        homogeneity_failures: Vec::new(),
    };
    for (t, o) in outcomes.into_iter().enumerate() {
        let (inv, hom) = o?;
        if !inv {
            report.invariance_failures.push(t);
        }
        if !hom {
            report.homogeneity_failures.push(t);
        }
    }
    Ok(report)
}
