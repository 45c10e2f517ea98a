//! Dense row-major matrices over any [`Scalar`].

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::Rational;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A dense matrix. Indices are zero-based `(row, col)`.
#[derive(Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RatMatrix = Matrix<Rational>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::LengthMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// The elementary matrix with a single one at zero-based `(i, j)`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m[(i, j)] = T::one();
        m
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i].clone() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<T> {
        self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// `Tr(self · other)`, the trace pairing, without forming the product.
    pub fn trace_pairing(&self, other: &Self) -> T {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.rows, other.cols);
        let mut acc = T::zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() || other[(k, i)].is_zero() {
                    continue;
                }
                acc = acc + self[(i, k)].clone() * other[(k, i)].clone();
            }
        }
        acc
    }

    /// The matrix commutator `[self, other] = self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(rows.len(), cols.len(), |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// Matrix with row `i` and column `j` deleted.
    pub fn minor_matrix(&self, i: usize, j: usize) -> Self {
        let rows: Vec<usize> = (0..self.rows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.cols).filter(|&c| c != j).collect();
        Self::from_fn(rows.len(), cols.len(), |a, b| self[(rows[a], cols[b])].clone())
    }

    pub fn pow(&self, exp: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn det(&self) -> Result<T> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(T::det(self))
    }

    /// Inverse by Gauss–Jordan elimination on unit pivots.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for k in 0..n {
            let pivot = (k..n)
                .find(|&i| a[(i, k)].recip().is_some())
                .ok_or(Error::Singular)?;
            a.swap_rows(k, pivot);
            inv.swap_rows(k, pivot);
            let p_inv = a[(k, k)].recip().ok_or(Error::Singular)?;
            for j in 0..n {
                a[(k, j)] = a[(k, j)].clone() * p_inv.clone();
                inv[(k, j)] = inv[(k, j)].clone() * p_inv.clone();
            }
            for i in 0..n {
                if i == k || a[(i, k)].is_zero() {
                    continue;
                }
                let factor = a[(i, k)].clone();
                for j in 0..n {
                    let t = a[(k, j)].clone() * factor.clone();
                    a[(i, j)] = a[(i, j)].clone() - t;
                    let t = inv[(k, j)].clone() * factor.clone();
                    inv[(i, j)] = inv[(i, j)].clone() - t;
                }
            }
        }
        Ok(inv)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl RatMatrix {
    /// Integer-entry convenience constructor for tests and examples.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from(v)).collect())
            .collect();
        Matrix::from_rows(rows).expect("rectangular rows")
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(Rational::to_f64)
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<'a, T: Scalar> Mul for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out: Matrix<T> = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.clone() * b.clone();
                    out[(i, j)] = out[(i, j)].clone() + t;
                }
            }
        }
        out
    }
}

impl<'a, T: Scalar> Add for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<'a, T: Scalar> Sub for &'a Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &'a Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            writeln!(f, "  {:?}", row)?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<T>>,
}

impl<T: Scalar + Serialize> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        MatrixRepr {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de, T: Scalar + Deserialize<'de>> Deserialize<'de> for Matrix<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixRepr::<T>::deserialize(deserializer)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom(format!(
                "entries do not form a {}x{} matrix",
                repr.rows, repr.cols
            )));
        }
        Matrix::new(
            repr.rows,
            repr.cols,
            repr.entries.into_iter().flatten().collect(),
        )
        .map_err(D::Error::custom)
    }
}

/// Fraction-free (Bareiss) elimination with row pivoting.
pub(crate) fn det_bareiss<T: Scalar>(m: &Matrix<T>) -> T {
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                Some(p) => {
                    a.swap_rows(k, p);
                    negate = !negate;
                }
                None => return T::zero(),
            }
        }
        let prev_inv = prev.recip().expect("Bareiss pivots are nonzero");
        for i in k + 1..n {
            for j in k + 1..n {
                let t = a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone();
                a[(i, j)] = t * prev_inv.clone();
            }
            a[(i, k)] = T::zero();
        }
        prev = a[(k, k)].clone();
    }
    let d = a[(n - 1, n - 1)].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// LU with partial pivoting, for floating-point determinants.
pub(crate) fn det_lu_f64(m: &Matrix<f64>) -> f64 {
    let n = m.rows;
    let mut a = m.clone();
    let mut det = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| a[(x, k)].abs().total_cmp(&a[(y, k)].abs()))
            .unwrap_or(k);
        if a[(p, k)] == 0.0 {
            return 0.0;
        }
        if p != k {
            a.swap_rows(k, p);
            det = -det;
        }
        let pivot = a[(k, k)];
        det *= pivot;
        for i in k + 1..n {
            let factor = a[(i, k)] / pivot;
            if factor == 0.0 {
                continue;
            }
            for j in k + 1..n {
                a[(i, j)] -= factor * a[(k, j)];
            }
        }
    }
    det
}

/// Berkowitz's division-free characteristic-polynomial algorithm; valid over
/// any commutative ring. Returns `det(m)`.
pub(crate) fn det_berkowitz<T: Scalar>(m: &Matrix<T>) -> T {
    let n = m.rows;
    if n == 0 {
        return T::one();
    }
    // Coefficients of det(xI − A_r) for the leading principal r×r block.
    let mut v = vec![T::one(), -m[(0, 0)].clone()];
    for r in 1..n {
        // C = [1, −a_rr, −R·S, −R·M·S, …, −R·M^{r−1}·S]
        let mut c = Vec::with_capacity(r + 2);
        c.push(T::one());
        c.push(-m[(r, r)].clone());
        let mut s: Vec<T> = (0..r).map(|i| m[(i, r)].clone()).collect();
        for _ in 0..r {
            let rs = (0..r).fold(T::zero(), |acc, j| acc + m[(r, j)].clone() * s[j].clone());
            c.push(-rs);
            s = (0..r)
                .map(|i| (0..r).fold(T::zero(), |acc, j| acc + m[(i, j)].clone() * s[j].clone()))
                .collect();
        }
        let next: Vec<T> = (0..r + 2)
            .map(|i| {
                (0..=i.min(r)).fold(T::zero(), |acc, j| acc + c[i - j].clone() * v[j].clone())
            })
            .collect();
        v = next;
    }
    let d = v[n].clone();
    if n % 2 == 1 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_routes_agree() {
        let m = RatMatrix::from_i64_rows(&[&[2, -1, 0, 3], &[1, 4, 2, 0], &[0, 0, 5, 1], &[3, 1, 1, 1]]);
        let bareiss = det_bareiss(&m);
        let berko = det_berkowitz(&m);
        assert_eq!(bareiss, berko);
        let f = det_lu_f64(&m.to_f64());
        assert!((f - bareiss.to_f64()).abs() < 1e-9);
    }

    #[test]
    fn determinant_needs_pivoting() {
        let m = RatMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det().unwrap(), Rational::from(-1));
        assert_eq!(det_berkowitz(&m), Rational::from(-1));
    }

    #[test]
    fn empty_determinant_is_one() {
        let m = RatMatrix::zeros(0, 0);
        assert_eq!(m.det().unwrap(), Rational::one());
        assert_eq!(det_berkowitz(&m), Rational::one());
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_i64_rows(&[&[0, 2, 1], &[1, 1, 0], &[3, 0, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, RatMatrix::identity(3));
        let singular = RatMatrix::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.inverse(), Err(Error::Singular));
    }

    #[test]
    fn json_schema() {
        let m = Matrix::from_rows(vec![
            vec![Rational::new(1, 2), Rational::from(0)],
            vec![Rational::from(-3), Rational::new(4, 6)],
        ])
        .unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":2,"cols":2,"entries":[["1/2","0"],["-3","2/3"]]}"#);
        let back: RatMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        assert!(serde_json::from_str::<RatMatrix>(r#"{"rows":2,"cols":2,"entries":[["1"]]}"#).is_err());
    }
}
