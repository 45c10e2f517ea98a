//! The Lie–Poisson bracket on `ε + b₋`, observables with exact gradient
//! representatives in `b₊`, Hamiltonian vector fields, and the full
//! Kostant–Toda flow.

use std::fmt;
use std::io::Write;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{Dual, Matrix, RatMatrix, Rational, Scalar};
use crate::chops::{self, casimir_levels, check_hessenberg, e_coeff, sample_generic};
use crate::error::{Error, Result};
use crate::liestruct::{epsilon, pi_b_minus, pi_b_plus, pi_strictly_lower};
use crate::random::par_trials;

/// A scalar function of the entries of a lower Hessenberg matrix.
#[derive(Debug, Clone, PartialEq)]
pub enum Observable {
    /// `Tr X^m`.
    TracePower(usize),
    /// `E_{m,r}`.
    Chop { m: usize, r: usize },
    /// `I_{m,r} = E_{m,r}/E_{0,r}`.
    Casimir { m: usize, r: usize },
    /// The entry `x_{ij}`, 1-based with `i ≥ j`.
    Coordinate { i: usize, j: usize },
    Scaled(Rational, Box<Observable>),
    Sum(Box<Observable>, Box<Observable>),
    Product(Box<Observable>, Box<Observable>),
}

impl Observable {
    pub fn coordinate(i: usize, j: usize) -> Result<Self> {
        if i < j || j == 0 {
            return Err(Error::InvalidParameter(format!("x{i}{j} is not a b₋ coordinate")));
        }
        Ok(Observable::Coordinate { i, j })
    }

    pub fn scaled(self, c: Rational) -> Self {
        Observable::Scaled(c, Box::new(self))
    }

    /// `½ Tr X²`, the Toda Hamiltonian.
    pub fn toda_hamiltonian() -> Self {
        Observable::TracePower(2).scaled(Rational::new(1, 2))
    }

    pub fn eval<T: Scalar>(&self, x: &Matrix<T>) -> Result<T> {
        match self {
            Observable::TracePower(m) => Ok(x.pow(*m).trace()),
            Observable::Chop { m, r } => e_coeff(x, *m, *r),
            Observable::Casimir { m, r } => chops::casimir(x, *m, *r),
            Observable::Coordinate { i, j } => {
                check_coordinate(x.rows(), *i, *j)?;
                Ok(x[(i - 1, j - 1)].clone())
            }
            Observable::Scaled(c, g) => Ok(T::from_rational(c) * g.eval(x)?),
            Observable::Sum(f, g) => Ok(f.eval(x)? + g.eval(x)?),
            Observable::Product(f, g) => Ok(f.eval(x)? * g.eval(x)?),
        }
    }

    /// The gradient representative `A_G = Σ_{i≥j} ∂G/∂x_{ij} e_{j,i}`.
    pub fn grad<T: Scalar>(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        let n = x.rows();
        match self {
            Observable::TracePower(0) => Ok(Matrix::zeros(n, n)),
            Observable::TracePower(m) => Ok(pi_b_plus(&x.pow(m - 1).scale(&T::from_i64(*m as i64)))),
            Observable::Coordinate { i, j } => {
                check_coordinate(n, *i, *j)?;
                Ok(Matrix::unit(n, j - 1, i - 1))
            }
            Observable::Scaled(c, g) => Ok(g.grad(x)?.scale(&T::from_rational(c))),
            Observable::Sum(f, g) => Ok(&f.grad(x)? + &g.grad(x)?),
            Observable::Product(f, g) => {
                let a = f.grad(x)?.scale(&g.eval(x)?);
                let b = g.grad(x)?.scale(&f.eval(x)?);
                Ok(&a + &b)
            }
            Observable::Chop { .. } | Observable::Casimir { .. } => self.grad_dual(x),
        }
    }

    /// The gradient representative computed purely in forward mode.
    pub fn grad_dual<T: Scalar>(&self, x: &Matrix<T>) -> Result<Matrix<T>> {
        grad_forward(x, |y| self.eval(y))
    }
}

fn check_coordinate(n: usize, i: usize, j: usize) -> Result<()> {
    if j == 0 || i < j || i > n {
        return Err(Error::InvalidParameter(format!("x{i}{j} is not a b₋ coordinate for n = {n}")));
    }
    Ok(())
}

/// Forward-mode gradient representative of any function of the matrix.
pub fn grad_forward<T: Scalar>(x: &Matrix<T>, f: impl Fn(&Matrix<Dual<T>>) -> Result<Dual<T>>) -> Result<Matrix<T>> {
    let n = x.rows();
    let base = x.map(|v| Dual::constant(v.clone()));
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut y = base.clone();
            y[(i, j)] = Dual::variable(x[(i, j)].clone());
            out[(j, i)] = f(&y)?.deriv;
        }
    }
    Ok(out)
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Observable::TracePower(m) => write!(f, "tr{m}"),
            Observable::Chop { m, r } => write!(f, "E({m},{r})"),
            Observable::Casimir { m, r } => write!(f, "I({m},{r})"),
            Observable::Coordinate { i, j } => write!(f, "x{i}_{j}"),
            Observable::Scaled(c, g) => write!(f, "{c}*{g}"),
            Observable::Sum(a, b) => write!(f, "({a}+{b})"),
            Observable::Product(a, b) => write!(f, "({a}*{b})"),
        }
    }
}

/// `(X, [A, B]) = Tr(X (AB − BA))`.
pub fn pairing_bracket<T: Scalar>(x: &Matrix<T>, a: &Matrix<T>, b: &Matrix<T>) -> T {
    x.trace_pairing(&a.commutator(b))
}

/// An exactly evaluable function together with its gradient representative.
pub trait Observe: Send + Sync {
    fn name(&self) -> String;
    fn value(&self, x: &RatMatrix) -> Result<Rational>;
    fn gradient(&self, x: &RatMatrix) -> Result<RatMatrix>;
}

impl Observe for Observable {
    fn name(&self) -> String {
        self.to_string()
    }

    fn value(&self, x: &RatMatrix) -> Result<Rational> {
        self.eval(x)
    }

    fn gradient(&self, x: &RatMatrix) -> Result<RatMatrix> {
        self.grad(x)
    }
}

/// The observable `{F, G}` built from two [`Observable`]s.
#[derive(Debug, Clone, PartialEq)]
pub struct BracketObservable(pub Observable, pub Observable);

impl BracketObservable {
    pub fn eval<T: Scalar>(&self, x: &Matrix<T>) -> Result<T> {
        Ok(pairing_bracket(x, &self.0.grad(x)?, &self.1.grad(x)?))
    }
}

impl Observe for BracketObservable {
    fn name(&self) -> String {
        format!("{{{},{}}}", self.0, self.1)
    }

    fn value(&self, x: &RatMatrix) -> Result<Rational> {
        self.eval(x)
    }

    fn gradient(&self, x: &RatMatrix) -> Result<RatMatrix> {
        grad_forward(x, |y| self.eval(y))
    }
}

pub fn grad_repr(g: &dyn Observe, x: &RatMatrix) -> Result<RatMatrix> {
    g.gradient(x)
}

/// The Lie–Poisson bracket `{F, G}(X) = (X, [A_F, A_G])`.
pub fn bracket(f: &dyn Observe, g: &dyn Observe, x: &RatMatrix) -> Result<Rational> {
    Ok(pairing_bracket(x, &f.gradient(x)?, &g.gradient(x)?))
}

/// `Ẋ = π_{b₋}([A_F, X])`, so that `dG/dt = {G, F}`.
pub fn hamiltonian_vf(f: &dyn Observe, x: &RatMatrix) -> Result<RatMatrix> {
    Ok(pi_b_minus(&f.gradient(x)?.commutator(x)))
}

/// `π_{b₋}([π_{b₊}X, X])`, the full Kostant–Toda vector field.
pub fn toda_field<T: Scalar>(x: &Matrix<T>) -> Matrix<T> {
    pi_b_minus(&pi_b_plus(x).commutator(x))
}

/// `[X, π_<X]`, the same field written as a Lax equation.
pub fn toda_field_lax<T: Scalar>(x: &Matrix<T>) -> Matrix<T> {
    x.commutator(&pi_strictly_lower(x))
}

/// `{Tr X^m : m = 1..n} ∪ {I(m,r) : 1 ≤ r ≤ ⌊(n−1)/2⌋, 1 ≤ m ≤ n−2r}`.
pub fn involutive_family(n: usize) -> Vec<Observable> {
    let mut fam: Vec<Observable> = (1..=n).map(Observable::TracePower).collect();
    for r in casimir_levels(n) {
        for m in 1..=n - 2 * r {
            fam.push(Observable::Casimir { m, r });
        }
    }
    fam
}

/// `{Tr X} ∪ {I(1,r)}`.
pub fn casimir_family(n: usize) -> Vec<Observable> {
    let mut fam = vec![Observable::TracePower(1)];
    fam.extend(casimir_levels(n).map(|r| Observable::Casimir { m: 1, r }));
    fam
}

pub fn coordinates(n: usize) -> Vec<Observable> {
    (1..=n)
        .flat_map(|i| (1..=i).map(move |j| Observable::Coordinate { i, j }))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairFailure {
    pub trial: usize,
    pub f: String,
    pub g: String,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BracketSuiteReport {
    pub n: usize,
    pub trials: usize,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub pairs_per_trial: usize,
    pub failures: Vec<PairFailure>,
}

impl BracketSuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn bracket_sweep(
    n: usize,
    trials: usize,
    seed: u64,
    left: &[Observable],
    right: &[Observable],
    pairs: &[(usize, usize)],
) -> Result<BracketSuiteReport> {
    if n < 2 {
        return Err(Error::SizeTooSmall(n));
    }
    let per_trial = par_trials(trials, seed, |trial, rng| -> Result<Vec<PairFailure>> {
        let x = sample_generic(n, rng)?.into_matrix();
        let gl: Vec<RatMatrix> = left.iter().map(|f| f.grad(&x)).collect::<Result<_>>()?;
        let gr: Vec<RatMatrix> = right.iter().map(|f| f.grad(&x)).collect::<Result<_>>()?;
        Ok(pairs
            .iter()
            .filter_map(|&(a, b)| {
                let value = pairing_bracket(&x, &gl[a], &gr[b]);
                (!value.is_zero()).then(|| PairFailure {
                    trial,
                    f: left[a].to_string(),
                    g: right[b].to_string(),
                    value,
                })
            })
            .collect())
    });
    let mut failures = Vec::new();
    for f in per_trial {
        failures.extend(f?);
    }
    Ok(BracketSuiteReport {
        n,
        trials,
        left: left.iter().map(ToString::to_string).collect(),
        right: right.iter().map(ToString::to_string).collect(),
        pairs_per_trial: pairs.len(),
        failures,
    })
}

/// Every pairwise bracket of [`involutive_family`] at random generic points.
pub fn involutivity_suite(n: usize, trials: usize, seed: u64) -> Result<BracketSuiteReport> {
    let fam = involutive_family(n);
    let pairs: Vec<(usize, usize)> = (0..fam.len())
        .flat_map(|a| (a + 1..fam.len()).map(move |b| (a, b)))
        .collect();
    bracket_sweep(n, trials, seed, &fam, &fam, &pairs)
}

/// `{C, x_{ij}}` for every Casimir `C` and every coordinate.
pub fn casimir_suite(n: usize, trials: usize, seed: u64) -> Result<BracketSuiteReport> {
    let cas = casimir_family(n);
    let coords = coordinates(n);
    let pairs: Vec<(usize, usize)> = (0..cas.len())
        .flat_map(|a| (0..coords.len()).map(move |b| (a, b)))
        .collect();
    bracket_sweep(n, trials, seed, &cas, &coords, &pairs)
}

/// A float point on the flow.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub t: f64,
    pub x: Matrix<f64>,
}

/// Tracked observables along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    pub names: Vec<String>,
    pub t: Vec<f64>,
    pub values: Vec<Vec<f64>>,
    /// `|G(t) − G(0)| / max(|G(0)|, 1)`.
    pub drift: Vec<Vec<f64>>,
    pub final_state: FlowState,
}

impl TimeSeries {
    pub fn max_drift_per_observable(&self) -> Vec<f64> {
        (0..self.names.len())
            .map(|k| self.drift.iter().map(|d| d[k]).fold(0.0, f64::max))
            .collect()
    }

    pub fn max_drift(&self) -> f64 {
        self.max_drift_per_observable().into_iter().fold(0.0, f64::max)
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        let mut header = vec!["t".to_string()];
        header.extend(self.names.iter().cloned());
        header.extend(self.names.iter().map(|n| format!("drift_{n}")));
        writeln!(w, "{}", header.join(","))?;
        for (k, t) in self.t.iter().enumerate() {
            let mut row = vec![format!("{t}")];
            row.extend(self.values[k].iter().map(|v| format!("{v:e}")));
            row.extend(self.drift[k].iter().map(|v| format!("{v:e}")));
            writeln!(w, "{}", row.join(","))?;
        }
        Ok(())
    }
}

fn rk4_step(x: &Matrix<f64>, dt: f64) -> Matrix<f64> {
    let k1 = toda_field(x);
    let k2 = toda_field(&(x + &k1.scale(&(dt / 2.0))));
    let k3 = toda_field(&(x + &k2.scale(&(dt / 2.0))));
    let k4 = toda_field(&(x + &k3.scale(&dt)));
    let incr = (&(&k1 + &k2.scale(&2.0)) + &(&k3.scale(&2.0) + &k4)).scale(&(dt / 6.0));
    // Only b₋ moves; the upper part is restored exactly.
    let n = x.rows();
    let eps = epsilon::<f64>(n);
    Matrix::from_fn(n, n, |i, j| if j > i { eps[(i, j)] } else { x[(i, j)] + incr[(i, j)] })
}

fn observe(observables: &[Observable], x: &Matrix<f64>, t: f64) -> Result<Vec<f64>> {
    observables
        .iter()
        .map(|g| {
            let v = g.eval(x).map_err(|e| Error::FlowGenericityLost { t, source: Box::new(e) })?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::FlowGenericityLost {
                    t,
                    source: Box::new(Error::InvalidParameter(format!("{g} is not finite"))),
                })
            }
        })
        .collect()
}

/// Fixed-step classical RK4 on the Toda field over `[0, t_end]`.
pub fn toda_integrate(x0: &Matrix<f64>, t_end: f64, dt: f64, observables: &[Observable]) -> Result<TimeSeries> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidParameter(format!("dt must be positive, got {dt}")));
    }
    if !(t_end >= 0.0 && t_end.is_finite()) {
        return Err(Error::InvalidParameter(format!("T must be nonnegative, got {t_end}")));
    }
    check_hessenberg(x0)?;
    let steps = (t_end / dt).round() as usize;
    let base = observe(observables, x0, 0.0)?;
    let mut series = TimeSeries {
        names: observables.iter().map(ToString::to_string).collect(),
        t: Vec::with_capacity(steps + 1),
        values: Vec::with_capacity(steps + 1),
        drift: Vec::with_capacity(steps + 1),
        final_state: FlowState { t: 0.0, x: x0.clone() },
    };
    let mut x = x0.clone();
    let mut record = |t: f64, vals: Vec<f64>| {
        let d = vals
            .iter()
            .zip(&base)
            .map(|(v, b)| (v - b).abs() / b.abs().max(1.0))
            .collect();
        series.t.push(t);
        series.values.push(vals);
        series.drift.push(d);
    };
    record(0.0, base.clone());
    for k in 1..=steps {
        x = rk4_step(&x, dt);
        let t = k as f64 * dt;
        record(t, observe(observables, &x, t)?);
    }
    series.final_state = FlowState {
        t: steps as f64 * dt,
        x,
    };
    Ok(series)
}

/// Random float start: a tridiagonal-like core with positive subdiagonal and
/// a small random fill further below.
pub fn sample_toda_initial<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix<f64> {
    let fill = 0.05;
    let eps = epsilon::<f64>(n);
    Matrix::from_fn(n, n, |i, j| {
        if j > i {
            eps[(i, j)]
        } else if i == j {
            rng.gen_range(-0.5..0.5)
        } else if i == j + 1 {
            rng.gen_range(0.5..1.0)
        } else {
            rng.gen_range(-fill..fill)
        }
    })
}
