//! Dense exact linear algebra over the rationals.
//!
//! Everything here works on [`Rational`] entries, so ranks, kernels and
//! solvability verdicts are exact. Rank over the rationals equals rank over
//! any extension field, which is what lets the certificates computed
//! downstream speak about the algebraically closed case.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// A column (or, in row position, a covector) of rationals.
pub type Vector = Vec<Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` in lowest terms. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_vector(len: usize) -> Vector {
    vec![Rational::zero(); len]
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational string")]
    Empty,
    #[error("invalid integer `{0}`")]
    InvalidInteger(String),
    #[error("zero denominator")]
    ZeroDenominator,
}

/// Parses `"p/q"` or `"p"`. Surrounding whitespace is ignored; anything else
/// (including a zero denominator) is rejected.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let int = |part: &str| -> Result<BigInt, ParseRationalError> {
        let part = part.trim();
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(ParseRationalError::InvalidInteger(part.to_string()));
        }
        part.parse::<BigInt>()
            .map_err(|_| ParseRationalError::InvalidInteger(part.to_string()))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((p, q)) => {
            let num = int(p)?;
            let den = int(q)?;
            if den.is_zero() {
                return Err(ParseRationalError::ZeroDenominator);
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Canonical wire form: `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in Matrix::from_rows"
        );
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows));
        Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone())
    }

    /// `E_{row,col}` of the given shape.
    pub fn unit(rows: usize, cols: usize, row: usize, col: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m[(row, col)] = Rational::one();
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |r, c| {
            if r == c {
                entries[r].clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// `u · vᵀ` for a column `u` and a row `v`.
    pub fn outer(u: &[Rational], v: &[Rational]) -> Self {
        Self::from_fn(u.len(), v.len(), |r, c| &u[r] * &v[c])
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

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn trace(&self) -> Rational {
        assert!(self.is_square());
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// `self += s * other`, skipping the work when `s` is zero.
    pub fn add_scaled(&mut self, s: &Rational, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if s.is_zero() {
            return;
        }
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            if !y.is_zero() {
                *x += s * y;
            }
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(self.cols, v.len(), "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        Self::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Self {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// `self · other − other · self`.
    pub fn commutator(&self, other: &Matrix) -> Self {
        &(self * other) - &(other * self)
    }

    /// Upper triangular in the usual sense: every entry below the diagonal is zero.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols.min(r)).all(|c| self[(r, c)].is_zero()))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self[(r, c)].is_zero()))
    }

    pub fn rref(&self) -> Rref {
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(found, pivot_row);
            let inv = a[pivot_row][col].recip();
            if !inv.is_one() {
                for x in a[pivot_row][col..].iter_mut() {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
            }
            let pivot = a[pivot_row].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r == pivot_row || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    if !p.is_zero() {
                        *x -= &factor * p;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        Rref {
            reduced: Matrix::from_fn(self.rows, self.cols, |r, c| a[r][c].clone()),
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Canonical nullspace basis: one vector per free column, in increasing
    /// column order, with that free variable set to 1 and the others to 0.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Rref { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = zero_vector(self.cols);
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    /// A solution of `self · x = b` with every free variable set to zero, or
    /// `None` when `b` is outside the column space.
    pub fn solve_particular(&self, b: &[Rational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length mismatch");
        let augmented = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let Rref { reduced, pivots } = augmented.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vector(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = reduced[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let Rref { reduced, pivots } = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(n, n, |r, c| reduced[(r, n + c)].clone()))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in matrix product");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&Rational::one(), rhs);
        out
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        let mut out = self.clone();
        out.add_scaled(&-Rational::one(), rhs);
        out
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rref_identity_and_zero() {
        let id = Matrix::identity(2);
        let r = id.rref();
        assert_eq!(r.reduced, id);
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank(), 2);

        let z = Matrix::zeros(3, 3);
        let r = z.rref();
        assert_eq!(r.reduced, z);
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank(), 0);
    }

    #[test]
    fn rref_rank_one() {
        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.reduced, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.rank(), 1);
    }

    #[test]
    fn rref_normalizes_fractions() {
        let m = Matrix::from_i64(&[&[0, 3, 1], &[2, 0, 0]]);
        let r = m.rref();
        assert_eq!(
            r.reduced,
            Matrix::from_rows(vec![
                vec![rat(1), rat(0), rat(0)],
                vec![rat(0), rat(1), ratio(1, 3)],
            ])
        );
        assert_eq!(r.pivots, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(3).kernel_basis().is_empty());
        assert_eq!(
            Matrix::zeros(2, 2).kernel_basis(),
            vec![v(&[1, 0]), v(&[0, 1])]
        );
        assert_eq!(
            Matrix::from_i64(&[&[1, 2], &[2, 4]]).kernel_basis(),
            vec![v(&[-2, 1])]
        );
    }

    #[test]
    fn solve_examples() {
        let b = v(&[3, -7, 5]);
        assert_eq!(Matrix::identity(3).solve_particular(&b), Some(b));

        let m = Matrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.solve_particular(&v(&[1, 2])), Some(v(&[1, 0])));
        assert_eq!(m.solve_particular(&v(&[1, 3])), None);
    }

    #[test]
    fn inverse_and_singular() {
        let m = Matrix::from_i64(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert!(Matrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/6").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational(" -4 ").unwrap(), rat(-4));
        assert_eq!(parse_rational("2/-4").unwrap(), ratio(-1, 2));
        assert_eq!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator)
        );
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1/2/3").is_err());
        assert_eq!(format_rational(&ratio(-6, 4)), "-3/2");
        assert_eq!(format_rational(&rat(0)), "0");
        assert_eq!(format_rational(&ratio(8, 4)), "2");
    }

    #[test]
    fn triangular_shape_checks() {
        let m = Matrix::from_i64(&[&[1, 2], &[0, 3]]);
        assert!(m.is_upper_triangular());
        assert!(!m.is_diagonal());
        assert!(!m.transpose().is_upper_triangular());
    }
}
