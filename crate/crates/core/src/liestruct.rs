//! Index-level structure of the upper triangular algebras: the Heisenberg
//! layers of the nilradical, the split into `s ⊕ v⁺ ⊕ v⁻`, the roots
//! `β_r`, coordinate projections and the forms `b_λ`.
//!
//! All index pairs are 1-based `(i, j)` naming the elementary matrix `e_{i,j}`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{Matrix, RatMatrix, Rational, Scalar};
use crate::error::{Error, Result};

pub type Index = (usize, usize);

/// `⌊n/2⌋`.
pub fn half(n: usize) -> usize {
    n / 2
}

/// `e_{i,j}` in `gl(n)`, 1-based.
pub fn elementary<T: Scalar>(n: usize, i: usize, j: usize) -> Matrix<T> {
    Matrix::unit(n, i - 1, j - 1)
}

/// The functional `ξ ↦ ξ_r − ξ_{n−r+1}` on diagonal coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BetaRoot {
    pub r: usize,
    pub plus: usize,
    pub minus: usize,
}

impl BetaRoot {
    pub fn eval(&self, xi: &[Rational]) -> Rational {
        &xi[self.plus - 1] - &xi[self.minus - 1]
    }

    /// Coefficients against the diagonal coordinate functionals.
    pub fn coefficients(&self, n: usize) -> Vec<i64> {
        let mut c = vec![0; n];
        c[self.plus - 1] += 1;
        c[self.minus - 1] -= 1;
        c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub n: usize,
    #[serde(rename = "R")]
    pub big_r: usize,
    /// `d_r = n − 2r`, r = 1..R.
    pub d: Vec<usize>,
    /// Heisenberg layers `m_r`.
    pub m: Vec<Vec<Index>>,
    /// Centres `z_r`, one index each.
    pub z: Vec<Index>,
    /// `v_r = m_r ⊖ z_r`.
    pub v: Vec<Vec<Index>>,
    pub s: Vec<Index>,
    pub v_plus: Vec<Index>,
    pub v_minus: Vec<Index>,
    /// Each `a⋄` basis vector as the diagonal positions carrying a one.
    pub a_diamond: Vec<Vec<usize>>,
    pub beta: Vec<BetaRoot>,
}

impl Decomposition {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::SizeTooSmall(n));
        }
        let big_r = half(n);
        let d = (1..=big_r).map(|r| n - 2 * r).collect();
        let mut m = Vec::new();
        let mut z = Vec::new();
        let mut v = Vec::new();
        for r in 1..=big_r {
            let top = n - r + 1;
            let mut vr: Vec<Index> = (r + 1..top).map(|j| (r, j)).collect();
            vr.extend((r + 1..top).map(|i| (i, top)));
            let mut layer = vr.clone();
            layer.push((r, top));
            layer.sort_unstable();
            vr.sort_unstable();
            m.push(layer);
            z.push((r, top));
            v.push(vr);
        }
        let s = z.clone();
        let v_plus = strictly_upper(n).filter(|&(i, j)| i + j < n + 1).collect();
        let v_minus = strictly_upper(n).filter(|&(i, j)| i + j > n + 1).collect();
        let mut a_diamond: Vec<Vec<usize>> = (1..=big_r).map(|r| vec![r, n - r + 1]).collect();
        if n % 2 == 1 {
            a_diamond.push(vec![big_r + 1]);
        }
        let beta = (1..=big_r)
            .map(|r| BetaRoot {
                r,
                plus: r,
                minus: n - r + 1,
            })
            .collect();
        Ok(Decomposition {
            n,
            big_r,
            d,
            m,
            z,
            v,
            s,
            v_plus,
            v_minus,
            a_diamond,
            beta,
        })
    }

    pub fn dim_n(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    pub fn dim_b(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    /// `dim h = dim a⋄ + dim s + dim v⁺`.
    pub fn dim_h(&self) -> usize {
        self.a_diamond.len() + self.s.len() + self.v_plus.len()
    }

    /// All of `v`, layer by layer.
    pub fn v_all(&self) -> Vec<Index> {
        self.v.iter().flatten().copied().collect()
    }

    pub fn a_diamond_matrices<T: Scalar>(&self) -> Vec<Matrix<T>> {
        self.a_diamond
            .iter()
            .map(|pos| {
                let mut m = Matrix::zeros(self.n, self.n);
                for &p in pos {
                    m[(p - 1, p - 1)] = T::one();
                }
                m
            })
            .collect()
    }

    pub fn indices(&self, part: Part) -> Result<Vec<Index>> {
        let n = self.n;
        let all = (1..=n).flat_map(move |i| (1..=n).map(move |j| (i, j)));
        Ok(match part {
            Part::StrictlyLower => all.filter(|&(i, j)| i > j).collect(),
            Part::StrictlyUpper => all.filter(|&(i, j)| i < j).collect(),
            Part::BPlus => all.filter(|&(i, j)| i <= j).collect(),
            Part::BMinus => all.filter(|&(i, j)| i >= j).collect(),
            Part::Diagonal => (1..=n).map(|i| (i, i)).collect(),
            Part::Layer(r) => {
                if r == 0 || r > self.big_r {
                    return Err(Error::LevelOutOfRange {
                        n,
                        r,
                        max: self.big_r,
                    });
                }
                self.m[r - 1].clone()
            }
            Part::S => self.s.clone(),
            Part::VPlus => self.v_plus.clone(),
            Part::VMinus => self.v_minus.clone(),
        })
    }

    /// Zero every entry outside the selected index set.
    pub fn project<T: Scalar>(&self, x: &Matrix<T>, part: Part) -> Result<Matrix<T>> {
        if x.rows() != self.n || x.cols() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix for n = {}",
                x.rows(),
                x.cols(),
                self.n
            )));
        }
        let keep = self.indices(part)?;
        let mut out = Matrix::zeros(self.n, self.n);
        for (i, j) in keep {
            out[(i - 1, j - 1)] = x[(i - 1, j - 1)].clone();
        }
        Ok(out)
    }

    /// `b_λ(x, y) = Σ_r λ_r · [x, y]_{r, n−r+1}`.
    pub fn bilinear_b_lambda(&self, lambda: &[Rational], x: &RatMatrix, y: &RatMatrix) -> Result<Rational> {
        if lambda.len() != self.big_r {
            return Err(Error::LengthMismatch {
                expected: self.big_r,
                got: lambda.len(),
            });
        }
        for (name, w) in [("x", x), ("y", y)] {
            if w.rows() != self.n || w.cols() != self.n {
                return Err(Error::DimensionMismatch(format!("{name} has the wrong size")));
            }
            if !is_strictly_upper(w) {
                return Err(Error::NotInSubspace(format!("{name} is not strictly upper triangular")));
            }
        }
        let c = x.commutator(y);
        Ok(self
            .z
            .iter()
            .zip(lambda)
            .map(|(&(i, j), l)| l * &c[(i - 1, j - 1)])
            .sum())
    }

    /// Gram matrix of `b_λ` on the basis of `v`, in [`Decomposition::v_all`] order.
    pub fn b_lambda_gram(&self, lambda: &[Rational]) -> Result<RatMatrix> {
        let basis: Vec<RatMatrix> = self
            .v_all()
            .into_iter()
            .map(|(i, j)| elementary(self.n, i, j))
            .collect();
        let k = basis.len();
        let mut g = RatMatrix::zeros(k, k);
        for a in 0..k {
            for b in a + 1..k {
                let val = self.bilinear_b_lambda(lambda, &basis[a], &basis[b])?;
                g[(b, a)] = -&val;
                g[(a, b)] = val;
            }
        }
        Ok(g)
    }
}

fn strictly_upper(n: usize) -> impl Iterator<Item = Index> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

pub fn is_strictly_upper<T: Scalar>(x: &Matrix<T>) -> bool {
    (0..x.rows()).all(|i| (0..=i.min(x.cols().saturating_sub(1))).all(|j| x[(i, j)].is_zero()))
}

/// Part of `gl(n)` selected by [`Decomposition::project`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    StrictlyLower,
    StrictlyUpper,
    BPlus,
    BMinus,
    Diagonal,
    /// The Heisenberg layer `m_r`.
    Layer(usize),
    S,
    VPlus,
    VMinus,
}

impl FromStr for Part {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "strictly-lower" | "n-" => Part::StrictlyLower,
            "strictly-upper" | "n" => Part::StrictlyUpper,
            "b+" => Part::BPlus,
            "b-" => Part::BMinus,
            "diagonal" | "a" => Part::Diagonal,
            "s" => Part::S,
            "v+" => Part::VPlus,
            "v-" => Part::VMinus,
            other => match other.strip_prefix('m').map(str::parse::<usize>) {
                Some(Ok(r)) => Part::Layer(r),
                _ => return Err(Error::UnknownPart(other.to_string())),
            },
        })
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Part::StrictlyLower => write!(f, "strictly-lower"),
            Part::StrictlyUpper => write!(f, "strictly-upper"),
            Part::BPlus => write!(f, "b+"),
            Part::BMinus => write!(f, "b-"),
            Part::Diagonal => write!(f, "diagonal"),
            Part::Layer(r) => write!(f, "m{r}"),
            Part::S => write!(f, "s"),
            Part::VPlus => write!(f, "v+"),
            Part::VMinus => write!(f, "v-"),
        }
    }
}

/// Upper triangle including the diagonal.
pub fn pi_b_plus<T: Scalar>(x: &Matrix<T>) -> Matrix<T> {
    Matrix::from_fn(x.rows(), x.cols(), |i, j| if i <= j { x[(i, j)].clone() } else { T::zero() })
}

/// Lower triangle including the diagonal.
pub fn pi_b_minus<T: Scalar>(x: &Matrix<T>) -> Matrix<T> {
    Matrix::from_fn(x.rows(), x.cols(), |i, j| if i >= j { x[(i, j)].clone() } else { T::zero() })
}

pub fn pi_strictly_lower<T: Scalar>(x: &Matrix<T>) -> Matrix<T> {
    Matrix::from_fn(x.rows(), x.cols(), |i, j| if i > j { x[(i, j)].clone() } else { T::zero() })
}

/// The principal nilpotent `ε = Σ e_{i,i+1}`.
pub fn epsilon<T: Scalar>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, j| if j == i + 1 { T::one() } else { T::zero() })
}
