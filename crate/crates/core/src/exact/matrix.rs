use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use super::scalar::{Rational, Scalar};
use crate::error::MatrixError;

/// Dense row-major matrix over an exact ring.
#[derive(Clone, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

pub type RationalMatrix = Matrix<Rational>;

impl<R: Scalar> Matrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, R::one())
    }

    pub fn scalar(n: usize, s: R) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = s.clone();
        }
        m
    }

    pub fn diagonal(diag: &[R]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    /// Builds from rows; panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
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

    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<R>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<S: Scalar>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, s: &R) -> Self {
        self.map(|x| x.clone() * s.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> R {
        (0..self.rows.min(self.cols)).fold(R::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    /// First `(i, j)` with `M[i][j] != -M[j][i]`, if any.
    pub fn skew_violation(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if self[(i, j)].clone() + self[(j, i)].clone() != R::zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_skew(&self) -> bool {
        self.skew_violation().is_none()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// `Some(s)` iff the matrix equals `s * Id` exactly.
    pub fn as_scalar_identity(&self) -> Option<R> {
        if !self.is_square() {
            return None;
        }
        if self.rows == 0 {
            return Some(R::zero());
        }
        let s = self[(0, 0)].clone();
        let ok = (0..self.rows).all(|i| {
            (0..self.cols).all(|j| {
                if i == j {
                    self[(i, j)] == s
                } else {
                    self[(i, j)].is_zero()
                }
            })
        });
        ok.then_some(s)
    }

    /// Column action `M x`.
    pub fn mul_vec(&self, x: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.cols, "mul_vec dimension");
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// Row action `x^T M`.
    pub fn vec_mul(&self, x: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.rows, "vec_mul dimension");
        let mut out = vec![R::zero(); self.cols];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let m = &self[(i, j)];
                if !m.is_zero() {
                    *o = o.clone() + xi.clone() * m.clone();
                }
            }
        }
        out
    }

    /// `x^T M y`.
    pub fn bilinear(&self, x: &[R], y: &[R]) -> R {
        dot(&self.vec_mul(x), y)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix commutator `AB - BA`.
    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    pub fn anticommutator(&self, rhs: &Self) -> Self {
        &(self * rhs) + &(rhs * self)
    }

    /// `M^k` for `k >= 0`.
    pub fn pow(&self, k: u32) -> Self {
        assert!(self.is_square());
        (0..k).fold(Self::identity(self.rows), |acc, _| &acc * self)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(R, R) -> R) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "matrix shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a.clone(), b.clone()))
                .collect(),
        }
    }
}

impl RationalMatrix {
    /// Lifts a rational matrix into any scalar ring.
    pub fn lift<S: Scalar>(&self) -> Matrix<S> {
        self.map(S::from_rational)
    }
}

/// Dot product.
pub fn dot<R: Scalar>(x: &[R], y: &[R]) -> R {
    assert_eq!(x.len(), y.len(), "dot dimension");
    x.iter()
        .zip(y)
        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
        .fold(R::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
}

impl<R> Index<(usize, usize)> for Matrix<R> {
    type Output = R;
    fn index(&self, (i, j): (usize, usize)) -> &R {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl<R> IndexMut<(usize, usize)> for Matrix<R> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut R {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

impl<R: Scalar> Mul for &Matrix<R> {
    type Output = Matrix<R>;
    fn mul(self, rhs: &Matrix<R>) -> Matrix<R> {
        self.try_mul(rhs).expect("matrix product dimension")
    }
}

impl<R: Scalar> Add for &Matrix<R> {
    type Output = Matrix<R>;
    fn add(self, rhs: &Matrix<R>) -> Matrix<R> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<R: Scalar> Sub for &Matrix<R> {
    type Output = Matrix<R>;
    fn sub(self, rhs: &Matrix<R>) -> Matrix<R> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<R: Scalar> Neg for &Matrix<R> {
    type Output = Matrix<R>;
    fn neg(self) -> Matrix<R> {
        self.map(|x| -x.clone())
    }
}

impl<R: Scalar> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows, self.cols)?;
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    #[test]
    fn products_and_commutators() {
        let a = m(&[&[0, 1], &[0, 0]]);
        let b = m(&[&[0, 0], &[1, 0]]);
        assert_eq!(a.commutator(&b), m(&[&[1, 0], &[0, -1]]));
        assert_eq!(a.anticommutator(&b), RationalMatrix::identity(2));
        assert!(a.try_mul(&m(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn row_and_column_actions() {
        let a = m(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.mul_vec(&[rat(1), rat(0)]), vec![rat(1), rat(3)]);
        assert_eq!(a.vec_mul(&[rat(1), rat(0)]), vec![rat(1), rat(2)]);
        assert_eq!(a.bilinear(&[rat(0), rat(1)], &[rat(1), rat(0)]), rat(3));
    }

    #[test]
    fn structure_predicates() {
        let s = m(&[&[0, 2], &[-2, 0]]);
        assert!(s.is_skew());
        assert!(!s.is_symmetric());
        assert_eq!((&s * &s).as_scalar_identity(), Some(rat(-4)));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).skew_violation(), Some((0, 1)));
        assert_eq!(m(&[&[1, 0], &[0, 2]]).as_scalar_identity(), None);
    }
}
