//! Heisenberg layers `M_r`: coordinates, group law, the Schrödinger
//! representation on a grid and a numerical Plancherel check for `d_r = 1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Matrix;
use crate::error::{Error, Result};

/// `q_k ↔ e_{r,r+k}`, `p_k ↔ e_{r+k,n−r+1}`, `c ↔ e_{r,n−r+1}` in
/// exponential coordinates, so that `[Q_k, P_k] = Z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HeisenbergElement {
    pub r: usize,
    pub q: Vec<f64>,
    pub p: Vec<f64>,
    pub c: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl HeisenbergElement {
    pub fn new(r: usize, q: Vec<f64>, p: Vec<f64>, c: f64) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("layer index starts at 1".into()));
        }
        if q.len() != p.len() || q.is_empty() {
            return Err(Error::LengthMismatch {
                expected: q.len(),
                got: p.len(),
            });
        }
        Ok(HeisenbergElement { r, q, p, c })
    }

    pub fn identity(r: usize, d: usize) -> Self {
        HeisenbergElement {
            r,
            q: vec![0.0; d],
            p: vec![0.0; d],
            c: 0.0,
        }
    }

    pub fn d(&self) -> usize {
        self.q.len()
    }

    /// Smallest `n` whose layer `r` has width `d`.
    pub fn n(&self) -> usize {
        2 * self.r + self.d()
    }

    pub fn inverse(&self) -> Self {
        HeisenbergElement {
            r: self.r,
            q: self.q.iter().map(|x| -x).collect(),
            p: self.p.iter().map(|x| -x).collect(),
            c: -self.c,
        }
    }

    /// `exp` of the Lie algebra element, as an `n × n` unipotent matrix.
    pub fn to_matrix(&self) -> Matrix<f64> {
        let n = self.n();
        let (r, last) = (self.r - 1, n - self.r);
        let mut m = Matrix::<f64>::identity(n);
        for k in 0..self.d() {
            m[(r, r + 1 + k)] = self.q[k];
            m[(r + 1 + k, last)] = self.p[k];
        }
        m[(r, last)] = self.c + 0.5 * dot(&self.q, &self.p);
        m
    }

    /// Inverse of [`HeisenbergElement::to_matrix`].
    pub fn from_matrix(r: usize, m: &Matrix<f64>) -> Result<Self> {
        let n = m.rows();
        if r == 0 || n < 2 * r + 1 {
            return Err(Error::InvalidParameter(format!("layer {r} does not fit in size {n}")));
        }
        let d = n - 2 * r;
        let (i, last) = (r - 1, n - r);
        let q: Vec<f64> = (0..d).map(|k| m[(i, i + 1 + k)]).collect();
        let p: Vec<f64> = (0..d).map(|k| m[(i + 1 + k, last)]).collect();
        let c = m[(i, last)] - 0.5 * dot(&q, &p);
        HeisenbergElement::new(r, q, p, c)
    }
}

/// `(q₁,p₁,c₁)(q₂,p₂,c₂) = (q₁+q₂, p₁+p₂, c₁+c₂+½(q₁·p₂ − q₂·p₁))`.
pub fn group_mul(x: &HeisenbergElement, y: &HeisenbergElement) -> Result<HeisenbergElement> {
    if x.r != y.r {
        return Err(Error::LayerMismatch(x.r, y.r));
    }
    if x.d() != y.d() {
        return Err(Error::LengthMismatch {
            expected: x.d(),
            got: y.d(),
        });
    }
    let add = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(s, t)| s + t).collect();
    Ok(HeisenbergElement {
        r: x.r,
        q: add(&x.q, &y.q),
        p: add(&x.p, &y.p),
        c: x.c + y.c + 0.5 * (dot(&x.q, &y.p) - dot(&y.q, &x.p)),
    })
}

/// Samples on `ξ_k = −L + kΔ`, `Δ = 2L/N`, k = 0..N.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    pub samples: Vec<Complex64>,
    pub gridsize: usize,
    pub l: f64,
}

impl GridFunction {
    pub fn from_fn(gridsize: usize, l: f64, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        check_grid(gridsize, l)?;
        let h = 2.0 * l / gridsize as f64;
        let samples = (0..gridsize).map(|k| f(-l + k as f64 * h)).collect();
        Ok(GridFunction { samples, gridsize, l })
    }

    pub fn spacing(&self) -> f64 {
        2.0 * self.l / self.gridsize as f64
    }

    pub fn point(&self, k: usize) -> f64 {
        -self.l + k as f64 * self.spacing()
    }

    pub fn norm(&self) -> f64 {
        (self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.spacing()).sqrt()
    }

    /// Linear interpolation, zero outside the sampled interval.
    pub fn sample_at(&self, x: f64) -> Complex64 {
        let t = (x + self.l) / self.spacing();
        let k = t.floor();
        if k < 0.0 || k >= (self.gridsize - 1) as f64 {
            if (t - (self.gridsize - 1) as f64).abs() < 1e-9 {
                return self.samples[self.gridsize - 1];
            }
            return Complex64::new(0.0, 0.0);
        }
        let k0 = k as usize;
        let w = t - k;
        if w < 1e-12 {
            return self.samples[k0];
        }
        if w > 1.0 - 1e-12 {
            return self.samples[k0 + 1];
        }
        self.samples[k0] * (1.0 - w) + self.samples[k0 + 1] * w
    }

    pub fn distance(&self, other: &GridFunction) -> f64 {
        let s: f64 = self.samples.iter().zip(&other.samples).map(|(a, b)| (a - b).norm_sqr()).sum();
        (s * self.spacing()).sqrt()
    }
}

fn check_grid(gridsize: usize, l: f64) -> Result<()> {
    if gridsize < 2 {
        return Err(Error::InvalidParameter(format!("grid size {gridsize} is degenerate")));
    }
    if !(l > 0.0 && l.is_finite()) {
        return Err(Error::NotPositive(format!("half-width L = {l}")));
    }
    Ok(())
}

/// `[π_λ(q,p,c)f](ξ) = e^{iλ(pξ + ½pq + c)} f(ξ + q)` for `d_r = 1`.
pub fn schrodinger_apply(lambda: f64, g: &HeisenbergElement, f: &GridFunction) -> Result<GridFunction> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(Error::InvalidParameter("λ must be nonzero".into()));
    }
    if g.d() != 1 {
        return Err(Error::InvalidParameter(format!("grid functions live on ℝ¹, layer has d = {}", g.d())));
    }
    let (q, p) = (g.q[0], g.p[0]);
    let samples = (0..f.gridsize)
        .map(|k| {
            let xi = f.point(k);
            let phase = Complex64::from_polar(1.0, lambda * (p * xi + 0.5 * p * q + g.c));
            phase * f.sample_at(xi + q)
        })
        .collect();
    Ok(GridFunction {
        samples,
        gridsize: f.gridsize,
        l: f.l,
    })
}

/// `w · exp(−Σ ((x_k − μ_k)/σ_k)²/2)` in `(q, p, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianTerm {
    pub weight: f64,
    pub center: [f64; 3],
    pub width: [f64; 3],
}

impl GaussianTerm {
    fn factor(&self, axis: usize, x: f64) -> f64 {
        let z = (x - self.center[axis]) / self.width[axis];
        (-0.5 * z * z).exp()
    }
}

/// A finite sum of separable Gaussians on `M₁ ≅ ℝ³`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestFunction {
    pub name: String,
    pub terms: Vec<GaussianTerm>,
}

impl TestFunction {
    pub fn eval(&self, q: f64, p: f64, c: f64) -> f64 {
        self.terms
            .iter()
            .map(|t| t.weight * t.factor(0, q) * t.factor(1, p) * t.factor(2, c))
            .sum()
    }

    pub fn scaled(&self, s: f64) -> Self {
        TestFunction {
            name: format!("{s}*{}", self.name),
            terms: self
                .terms
                .iter()
                .map(|t| GaussianTerm {
                    weight: t.weight * s,
                    ..*t
                })
                .collect(),
        }
    }
}

/// Three distinct Gaussian-type functions.
pub fn standard_test_functions() -> Vec<TestFunction> {
    let g = |weight, center, width| GaussianTerm { weight, center, width };
    vec![
        TestFunction {
            name: "isotropic".into(),
            terms: vec![g(1.0, [0.0; 3], [1.0; 3])],
        },
        TestFunction {
            name: "anisotropic-shifted".into(),
            terms: vec![g(1.0, [0.5, -0.3, 0.2], [0.8, 1.2, 0.9])],
        },
        TestFunction {
            name: "two-bump".into(),
            terms: vec![g(1.0, [-0.7, 0.0, 0.0], [0.7, 1.0, 1.1]), g(0.6, [0.8, 0.4, -0.3], [0.9, 0.8, 1.0])],
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlancherelReport {
    pub function: String,
    pub grid: usize,
    #[serde(rename = "L")]
    pub l: f64,
    pub lmax: f64,
    pub nlambda: usize,
    /// `‖f‖²` over `M₁`.
    pub lhs: f64,
    /// `∫ ‖f̂(λ)‖²_HS 2|λ| dλ`.
    pub rhs: f64,
    pub ratio: f64,
    /// `lhs / ∫ ‖f̂(λ)‖²_HS |λ| dλ`.
    pub c_fit: f64,
    /// `ratio / 8π²`.
    pub normalized_ratio: f64,
}

/// Trapezoid weights on `n` equal intervals.
fn trapezoid(n: usize, h: f64) -> Vec<f64> {
    (0..=n).map(|k| if k == 0 || k == n { 0.5 * h } else { h }).collect()
}

/// `‖f̂(λ)‖²_HS` with `f̂(λ) = ∫ f(q,p,c) π_λ(q,p,c) dq dp dc` as a
/// `grid × grid` operator matrix.
fn hs_norm_sqr(f: &TestFunction, grid: usize, l: f64, lambda: f64) -> f64 {
    let h = 2.0 * l / grid as f64;
    let pts: Vec<f64> = (0..grid).map(|k| -l + k as f64 * h).collect();
    let mut kernel = vec![Complex64::new(0.0, 0.0); grid * grid];
    for t in &f.terms {
        // c-integral e^{iλc}
        let g3: Complex64 = pts.iter().map(|&c| Complex64::from_polar(t.factor(2, c), lambda * c)).sum::<Complex64>() * h;
        // p-integral e^{iλp(ξ+η)/2}, indexed by a + b with ξ_a + η_b = −2L + (a+b)h
        let g2: Vec<Complex64> = (0..2 * grid - 1)
            .map(|s| {
                let omega = lambda * 0.5 * (-2.0 * l + s as f64 * h);
                let step = Complex64::from_polar(1.0, omega * h);
                let mut phase = Complex64::from_polar(1.0, omega * pts[0]);
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, &p) in pts.iter().enumerate() {
                    if j % 64 == 0 {
                        phase = Complex64::from_polar(1.0, omega * p);
                    }
                    acc += phase * t.factor(1, p);
                    phase *= step;
                }
                acc * h
            })
            .collect();
        let g1: Vec<f64> = (0..2 * grid - 1).map(|s| t.factor(0, (s as f64 - (grid - 1) as f64) * h)).collect();
        for a in 0..grid {
            for b in 0..grid {
                kernel[a * grid + b] += g3 * g2[a + b] * (t.weight * g1[b + grid - 1 - a]);
            }
        }
    }
    kernel.iter().map(|z| z.norm_sqr()).sum::<f64>() * h * h
}

fn l2_norm_sqr(f: &TestFunction, grid: usize, l: f64) -> f64 {
    let h = 2.0 * l / grid as f64;
    let pts: Vec<f64> = (0..grid).map(|k| -l + k as f64 * h).collect();
    let inner = |s: &GaussianTerm, t: &GaussianTerm, axis: usize| -> f64 {
        pts.iter().map(|&x| s.factor(axis, x) * t.factor(axis, x)).sum::<f64>() * h
    };
    let mut total = 0.0;
    for s in &f.terms {
        for t in &f.terms {
            total += s.weight * t.weight * inner(s, t, 0) * inner(s, t, 1) * inner(s, t, 2);
        }
    }
    total
}

pub fn plancherel_isometry_demo(f: &TestFunction, grid: usize, l: f64, lmax: f64, nlambda: usize) -> Result<PlancherelReport> {
    check_grid(grid, l)?;
    if !(lmax > 0.0 && lmax.is_finite()) {
        return Err(Error::NotPositive(format!("λmax = {lmax}")));
    }
    if nlambda < 2 {
        return Err(Error::InvalidParameter(format!("nλ = {nlambda} is degenerate")));
    }
    let dl = 2.0 * lmax / nlambda as f64;
    let weights = trapezoid(nlambda, dl);
    let moment: f64 = (0..=nlambda)
        .into_par_iter()
        .map(|k| {
            let lambda = -lmax + k as f64 * dl;
            if lambda == 0.0 || k * 2 == nlambda {
                return 0.0;
            }
            weights[k] * lambda.abs() * hs_norm_sqr(f, grid, l, lambda)
        })
        .collect::<Vec<f64>>()
        .iter()
        .sum();
    let lhs = l2_norm_sqr(f, grid, l);
    let rhs = 2.0 * moment;
    let ratio = if lhs == 0.0 { f64::NAN } else { rhs / lhs };
    Ok(PlancherelReport {
        function: f.name.clone(),
        grid,
        l,
        lmax,
        nlambda,
        lhs,
        rhs,
        ratio,
        c_fit: if moment == 0.0 { f64::NAN } else { lhs / moment },
        normalized_ratio: ratio / (8.0 * PI * PI),
    })
}
