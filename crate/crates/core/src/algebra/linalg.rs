//! Exact rank, kernels and span comparisons over the rationals.

use super::matrix::RatMatrix;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Rank by fraction-free elimination.
pub fn rank(m: &RatMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut r = 0;
    let mut prev = Rational::one();
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let pivot = a[(r, c)].clone();
        for i in r + 1..rows {
            let lead = a[(i, c)].clone();
            for j in c + 1..cols {
                let t = &(&pivot * &a[(i, j)]) - &(&lead * &a[(r, j)]);
                a[(i, j)] = t / &prev;
            }
            a[(i, c)] = Rational::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Reduced row echelon form and the pivot column of each nonzero row.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip().expect("nonzero pivot");
        for j in c..cols {
            a[(r, j)] = &a[(r, j)] * &inv;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let t = &f * &a[(r, j)];
                a[(i, j)] = &a[(i, j)] - &t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// A basis of `{x : m·x = 0}`.
pub fn nullspace(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let (red, pivots) = rref(m);
    let cols = m.cols();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&red[(row, f)];
            }
            v
        })
        .collect()
}

fn common_dim(vectors: &[&[Vec<Rational>]]) -> Result<Option<usize>> {
    let mut dim = None;
    for v in vectors.iter().flat_map(|s| s.iter()) {
        match dim {
            None => dim = Some(v.len()),
            Some(d) if d != v.len() => {
                return Err(Error::DimensionMismatch(format!(
                    "vectors of length {d} and {}",
                    v.len()
                )))
            }
            _ => {}
        }
    }
    Ok(dim)
}

fn stack(vectors: &[&Vec<Rational>], dim: usize) -> RatMatrix {
    RatMatrix::from_fn(vectors.len(), dim, |i, j| vectors[i][j].clone())
}

/// Rank of a family of vectors.
pub fn span_rank(vectors: &[Vec<Rational>]) -> Result<usize> {
    let Some(dim) = common_dim(&[vectors])? else {
        return Ok(0);
    };
    Ok(rank(&stack(&vectors.iter().collect::<Vec<_>>(), dim)))
}

/// Whether the two families span the same subspace.
pub fn span_equal(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Result<bool> {
    let Some(dim) = common_dim(&[a, b])? else {
        return Ok(true);
    };
    let ra = rank(&stack(&a.iter().collect::<Vec<_>>(), dim));
    let rb = rank(&stack(&b.iter().collect::<Vec<_>>(), dim));
    let all: Vec<&Vec<Rational>> = a.iter().chain(b).collect();
    let rab = rank(&stack(&all, dim));
    Ok(ra == rb && rb == rab)
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(v: &[Rational], basis: &[Vec<Rational>]) -> Result<bool> {
    let v = v.to_vec();
    common_dim(&[basis, std::slice::from_ref(&v)])?;
    let r0 = span_rank(basis)?;
    let mut ext = basis.to_vec();
    ext.push(v);
    Ok(span_rank(&ext)? == r0)
}

/// Some solution of `a·x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &RatMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows() {
        return Err(Error::LengthMismatch {
            expected: a.rows(),
            got: b.len(),
        });
    }
    let n = a.cols();
    let aug = RatMatrix::from_fn(a.rows(), n + 1, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else {
            b[i].clone()
        }
    });
    let (red, pivots) = rref(&aug);
    if pivots.contains(&n) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = red[(row, n)].clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&RatMatrix::identity(3)), 3);
        assert_eq!(rank(&RatMatrix::from_i64_rows(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&RatMatrix::from_i64_rows(&[&[0, 1, 2], &[0, 2, 4], &[1, 0, 0]])), 2);
    }

    #[test]
    fn span_examples() {
        assert!(span_equal(&[v(&[1, 0])], &[v(&[2, 0])]).unwrap());
        assert!(!span_equal(&[v(&[1, 0])], &[v(&[0, 1])]).unwrap());
        assert!(span_equal(&[v(&[1, 0]), v(&[0, 1])], &[v(&[1, 1]), v(&[1, -1])]).unwrap());
        assert!(span_equal(&[v(&[1, 0])], &[v(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn kernel_and_solve() {
        let m = RatMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 0, 1]]);
        let ker = nullspace(&m);
        assert_eq!(ker, vec![v(&[-1, 1, 0])]);
        let x = solve(&m, &v(&[2, 3])).unwrap().unwrap();
        assert_eq!(x, v(&[2, 0, 3]));
        let bad = RatMatrix::from_i64_rows(&[&[1, 1], &[1, 1]]);
        assert_eq!(solve(&bad, &v(&[1, 2])).unwrap(), None);
    }
}
