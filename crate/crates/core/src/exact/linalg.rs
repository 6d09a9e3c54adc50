//! Exact elimination: reduced row echelon form, kernels, linear solves,
//! determinants and inverses.

use num_traits::{One, Zero};

use super::matrix::{Matrix, RationalMatrix};
use super::poly::Poly;
use super::scalar::{Rational, Scalar};

/// Result of Gauss-Jordan elimination.
#[derive(Debug, Clone, PartialEq)]
pub struct Echelon<R> {
    /// Reduced matrix: pivot entries are 1 and pivot columns are otherwise zero.
    pub reduced: Matrix<R>,
    /// Pivot column of each of the first `rank` rows, ascending.
    pub pivots: Vec<usize>,
    /// True if rows below the pivots still hold nonzero entries that could not be
    /// used as pivots (only possible when the ring has non-invertible nonzero elements).
    pub blocked: bool,
}

impl<R: Scalar> Echelon<R> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Null-space basis by the free-variable construction: for every non-pivot
    /// column `f`, the vector with `1` at `f` and `-reduced[i][f]` at pivot `i`.
    pub fn free_variable_kernel(&self) -> Vec<Vec<R>> {
        let cols = self.reduced.cols();
        (0..cols)
            .filter(|c| !self.pivots.contains(c))
            .map(|f| {
                let mut v = vec![R::zero(); cols];
                v[f] = R::one();
                for (i, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.reduced[(i, f)].clone();
                }
                v
            })
            .collect()
    }
}

/// Gauss-Jordan elimination where `invert` decides which entries may serve as pivots.
/// Columns without an invertible entry are skipped.
pub fn rref_with<R: Scalar>(m: &Matrix<R>, invert: impl Fn(&R) -> Option<R>) -> Echelon<R> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some((pr, inv)) = (r..rows).find_map(|i| invert(&a[(i, c)]).map(|inv| (i, inv))) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                let tmp = a[(pr, j)].clone();
                a[(pr, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        for j in 0..cols {
            a[(r, j)] = a[(r, j)].clone() * inv.clone();
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in 0..cols {
                if !a[(r, j)].is_zero() {
                    a[(i, j)] = a[(i, j)].clone() - f.clone() * a[(r, j)].clone();
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let blocked = (r..rows).any(|i| (0..cols).any(|j| !a[(i, j)].is_zero()));
    Echelon {
        reduced: a,
        pivots,
        blocked,
    }
}

pub fn rref(m: &RationalMatrix) -> Echelon<Rational> {
    rref_with(m, |x| (!x.is_zero()).then(|| x.recip()))
}

/// Elimination over Laurent polynomials on the stratum where the variables in
/// `nonzero_vars` are nonzero: only single-term pivots in those variables are used.
pub fn rref_on_stratum(m: &Matrix<Poly>, nonzero_vars: &[usize]) -> Echelon<Poly> {
    rref_with(m, |x| {
        if x.is_unit_on(nonzero_vars) {
            x.monomial_inverse()
        } else {
            None
        }
    })
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).rank()
}

/// Canonical basis of the row space spanned by `vectors`: the nonzero rows of its RREF.
pub fn canonical_basis(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let e = rref(&Matrix::from_rows(vectors.to_vec()));
    debug_assert_eq!(e.reduced.cols(), dim);
    (0..e.rank()).map(|i| e.reduced.row(i).to_vec()).collect()
}

/// Null-space basis of `m`, in RREF form (pivot columns ascending, pivots 1).
/// Empty for injective maps.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let raw = rref(m).free_variable_kernel();
    canonical_basis(&raw, m.cols())
}

/// Basis of the orthogonal complement of `span(vectors)` in `Q^dim`.
pub fn orthogonal_complement(vectors: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return (0..dim)
            .map(|i| (0..dim).map(|j| Rational::from_i64((i == j) as i64)).collect())
            .collect();
    }
    kernel_basis(&Matrix::from_rows(vectors.to_vec()))
}

/// Exact solution set of `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSolution {
    /// A particular solution (free variables set to zero), or `None` when inconsistent.
    pub particular: Option<Vec<Rational>>,
    /// Basis of `ker A`; the solution is unique iff this is empty.
    pub kernel: Vec<Vec<Rational>>,
    pub rank: usize,
    pub augmented_rank: usize,
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    pub fn is_unique(&self) -> bool {
        self.is_consistent() && self.kernel.is_empty()
    }
}

pub fn solve_linear(a: &RationalMatrix, b: &[Rational]) -> LinearSolution {
    assert_eq!(a.rows(), b.len(), "solve_linear: rhs length");
    let n = a.cols();
    let aug = Matrix::from_fn(
        a.rows(),
        n + 1,
        |i, j| {
            if j < n {
                a[(i, j)].clone()
            } else {
                b[i].clone()
            }
        },
    );
    let e = rref(&aug);
    let rank = e.pivots.iter().filter(|&&p| p < n).count();
    let augmented_rank = e.rank();
    let particular = (rank == augmented_rank).then(|| {
        let mut x = vec![Rational::zero(); n];
        for (i, &p) in e.pivots.iter().enumerate() {
            x[p] = e.reduced[(i, n)].clone();
        }
        x
    });
    LinearSolution {
        particular,
        kernel: kernel_basis(a),
        rank,
        augmented_rank,
    }
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant(m: &RationalMatrix) -> Rational {
    assert!(m.is_square(), "determinant of non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Rational::zero();
            };
            for j in 0..n {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(k, j)].clone();
                a[(k, j)] = tmp;
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a[(i, j)].clone() * a[(k, k)].clone() - a[(i, k)].clone() * a[(k, j)].clone()) / prev.clone();
                a[(i, j)] = v;
            }
            a[(i, k)] = Rational::zero();
        }
        prev = a[(k, k)].clone();
    }
    if n == 0 {
        return Rational::one();
    }
    sign * a[(n - 1, n - 1)].clone()
}

/// Inverse of a square rational matrix, or `None` if singular.
pub fn inverse(m: &RationalMatrix) -> Option<RationalMatrix> {
    assert!(m.is_square(), "inverse of non-square matrix");
    let n = m.rows();
    let aug = Matrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m[(i, j)].clone()
        } else {
            Rational::from_i64((j - n == i) as i64)
        }
    });
    let e = rref(&aug);
    if e.pivots.iter().take(n).copied().ne(0..n) {
        return None;
    }
    Some(Matrix::from_fn(n, n, |i, j| e.reduced[(i, n + j)].clone()))
}
