use std::fmt;

use super::matrix::Matrix;
use super::scalar::Scalar;
use crate::error::MatrixError;

/// Univariate polynomial in `λ`, coefficients ascending by degree, no trailing zeros.
#[derive(Clone, PartialEq)]
pub struct UniPoly<R> {
    coeffs: Vec<R>,
}

impl<R: Scalar> UniPoly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    /// The monomial `λ^k`.
    pub fn lambda_pow(k: usize) -> Self {
        let mut c = vec![R::zero(); k + 1];
        c[k] = R::one();
        UniPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| *c == R::one())
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return UniPoly::new(Vec::new());
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(UniPoly::new(vec![R::one()]), |acc, _| acc.mul(self))
    }
}

impl<R: Scalar> fmt::Display for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let lam = match k {
                    0 => String::new(),
                    1 => "λ".to_string(),
                    _ => format!("λ^{k}"),
                };
                if k == 0 {
                    format!("({c})")
                } else if *c == R::one() {
                    lam
                } else {
                    format!("({c})*{lam}")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl<R: Scalar> fmt::Debug for UniPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

/// Characteristic polynomial `det(λI - M)` by Faddeev-LeVerrier.
///
/// Only divides by the integers `1..=n`, so it works over any [`Scalar`] ring,
/// including polynomial entries.
pub fn charpoly<R: Scalar>(m: &Matrix<R>) -> Result<UniPoly<R>, MatrixError> {
    if !m.is_square() {
        return Err(MatrixError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut coeffs = vec![R::zero(); n + 1];
    coeffs[n] = R::one();
    // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k
    let mut mk = Matrix::<R>::zeros(n, n);
    for k in 1..=n {
        let mut next = m * &mk;
        for i in 0..n {
            next[(i, i)] = next[(i, i)].clone() + coeffs[n - k + 1].clone();
        }
        mk = next;
        let tr = (m * &mk).trace();
        coeffs[n - k] = -tr.div_int(k as i64);
    }
    Ok(UniPoly::new(coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{rat, Rational};

    #[test]
    fn zero_matrix_is_lambda_squared() {
        let p = charpoly(&Matrix::<Rational>::zeros(2, 2)).unwrap();
        assert_eq!(p, UniPoly::lambda_pow(2));
    }

    #[test]
    fn rotation() {
        let r = Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(-1), rat(0)]]);
        let p = charpoly(&r).unwrap();
        assert_eq!(p.coeffs(), &[rat(1), rat(0), rat(1)]);
        assert_eq!(p.to_string(), "λ^2 + (1)");
    }

    #[test]
    fn non_square_rejected() {
        let r = Matrix::<Rational>::zeros(2, 3);
        assert_eq!(charpoly(&r), Err(MatrixError::NotSquare { rows: 2, cols: 3 }));
    }
}
