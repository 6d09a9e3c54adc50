//! Integer lattices with rational bases.
//!
//! Membership and subspace intersections go through the Hermite normal form of
//! an integer-scaled basis; length spectra are enumerated exactly with a
//! Fincke-Pohst style search on the Gram matrix.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{inverse, orthogonal_complement, rank};
use super::matrix::{dot, Matrix, RationalMatrix};
use super::scalar::{rat, Rational};
use crate::error::MatrixError;

/// Default squared-norm bound for [`IntegerLattice::length_spectrum`].
pub const DEFAULT_SPECTRUM_BOUND: i64 = 64;

/// Row-style Hermite normal form `H = U A` with `U` unimodular.
///
/// Nonzero rows of `H` come first, pivots are positive and strictly move right,
/// and entries above each pivot lie in `[0, pivot)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hnf {
    pub h: Vec<Vec<BigInt>>,
    pub u: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn row_axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

pub fn hermite_normal_form(a: &[Vec<BigInt>]) -> Hnf {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut h: Vec<Vec<BigInt>> = a.to_vec();
    let mut u: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| (0..rows).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid down the column until a single nonzero entry remains at row r.
        loop {
            let best = (r..rows).filter(|&i| !h[i][c].is_zero()).min_by_key(|&i| h[i][c].abs());
            let Some(best) = best else { break };
            h.swap(r, best);
            u.swap(r, best);
            let mut done = true;
            for i in r + 1..rows {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                let (hr, ur) = (h[r].clone(), u[r].clone());
                row_axpy(&mut h[i], &q, &hr);
                row_axpy(&mut u[i], &q, &ur);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            h[r].iter_mut().for_each(|x| *x = -x.clone());
            u[r].iter_mut().for_each(|x| *x = -x.clone());
        }
        for i in 0..r {
            let q = h[i][c].div_floor(&h[r][c]);
            if !q.is_zero() {
                let (hr, ur) = (h[r].clone(), u[r].clone());
                row_axpy(&mut h[i], &q, &hr);
                row_axpy(&mut u[i], &q, &ur);
            }
        }
        pivots.push(c);
        r += 1;
    }
    Hnf { h, u, pivots }
}

/// Basis of the integer kernel `{x in Z^k : A x = 0}` of a rational matrix.
pub fn integer_kernel(a: &RationalMatrix) -> Vec<Vec<BigInt>> {
    let k = a.cols();
    if a.rows() == 0 {
        return (0..k)
            .map(|i| (0..k).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
    }
    // Scale each constraint row to integers, then row-reduce A^T with transform.
    let scaled: Vec<Vec<BigInt>> = (0..a.rows()).map(|i| integer_row(a.row(i)).0).collect();
    let at: Vec<Vec<BigInt>> = (0..k)
        .map(|j| scaled.iter().map(|row| row[j].clone()).collect())
        .collect();
    let hnf = hermite_normal_form(&at);
    (hnf.rank()..k).map(|i| hnf.u[i].clone()).collect()
}

fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Multiplies a rational vector by the lcm of its denominators.
fn integer_row(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let d = common_denominator(v);
    let row = v
        .iter()
        .map(|q| (q * Rational::from_integer(d.clone())).to_integer())
        .collect();
    (row, d)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntegerLattice {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    gram: RationalMatrix,
}

impl IntegerLattice {
    /// Lattice spanned over Z by `basis`, which must be linearly independent.
    pub fn new(ambient_dim: usize, basis: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        if let Some(v) = basis.iter().find(|v| v.len() != ambient_dim) {
            return Err(MatrixError::Dimension(format!(
                "basis vector of length {} in ambient dimension {ambient_dim}",
                v.len()
            )));
        }
        if !basis.is_empty() && rank(&Matrix::from_rows(basis.clone())) != basis.len() {
            return Err(MatrixError::Dimension("lattice basis is linearly dependent".into()));
        }
        let k = basis.len();
        let gram = Matrix::from_fn(k, k, |i, j| dot(&basis[i], &basis[j]));
        Ok(IntegerLattice {
            ambient_dim,
            basis,
            gram,
        })
    }

    /// `Z^n` with the unit basis.
    pub fn standard(n: usize) -> Self {
        Self::diagonal(&vec![rat(1); n])
    }

    /// Lattice spanned by `scales[i] * e_i`; zero scales are not allowed.
    pub fn diagonal(scales: &[Rational]) -> Self {
        let n = scales.len();
        let basis = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { scales[i].clone() } else { rat(0) })
                    .collect()
            })
            .collect();
        Self::new(n, basis).expect("diagonal lattice needs nonzero scales")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn scaled(&self, s: &Rational) -> Self {
        let basis = self.basis.iter().map(|v| v.iter().map(|x| x * s).collect()).collect();
        Self::new(self.ambient_dim, basis).expect("nonzero scale")
    }

    /// Integer-scaled basis rows and the common denominator used.
    fn integer_basis(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let d = common_denominator(self.basis.iter().flatten());
        let dq = Rational::from_integer(d.clone());
        let rows = self
            .basis
            .iter()
            .map(|v| v.iter().map(|q| (q * &dq).to_integer()).collect())
            .collect();
        (rows, d)
    }

    /// Same lattice with its basis replaced by the Hermite normal form.
    pub fn canonical(&self) -> Self {
        if self.basis.is_empty() {
            return self.clone();
        }
        let (rows, d) = self.integer_basis();
        let hnf = hermite_normal_form(&rows);
        let dq = Rational::from_integer(d);
        let basis = hnf.h[..hnf.rank()]
            .iter()
            .map(|r| r.iter().map(|x| Rational::from_integer(x.clone()) / &dq).collect())
            .collect();
        Self::new(self.ambient_dim, basis).expect("hnf rows are independent")
    }

    /// True iff `v` is an integer combination of the basis, decided by reducing
    /// `v` against the Hermite normal form.
    pub fn contains(&self, v: &[Rational]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "membership: dimension");
        if self.basis.is_empty() {
            return v.iter().all(Zero::is_zero);
        }
        let (rows, d) = self.integer_basis();
        let scaled: Vec<Rational> = v.iter().map(|x| x * Rational::from_integer(d.clone())).collect();
        if scaled.iter().any(|x| !x.is_integer()) {
            return false;
        }
        let mut w: Vec<BigInt> = scaled.iter().map(|x| x.to_integer()).collect();
        let hnf = hermite_normal_form(&rows);
        let mut col = 0;
        for (i, &p) in hnf.pivots.iter().enumerate() {
            if w[col..p].iter().any(|x| !x.is_zero()) {
                return false;
            }
            let (q, r) = w[p].div_rem(&hnf.h[i][p]);
            if !r.is_zero() {
                return false;
            }
            row_axpy(&mut w, &q, &hnf.h[i]);
            col = p + 1;
        }
        w.iter().all(Zero::is_zero)
    }

    /// The sublattice of points lying in `span(subspace)`.
    pub fn intersect_subspace(&self, subspace: &[Vec<Rational>]) -> Self {
        let constraints = orthogonal_complement(subspace, self.ambient_dim);
        let a = Matrix::from_fn(constraints.len(), self.rank(), |r, i| {
            dot(&constraints[r], &self.basis[i])
        });
        let basis: Vec<Vec<Rational>> = integer_kernel(&a)
            .into_iter()
            .map(|x| {
                let mut v = vec![rat(0); self.ambient_dim];
                for (xi, b) in x.iter().zip(&self.basis) {
                    if xi.is_zero() {
                        continue;
                    }
                    let c = Rational::from_integer(xi.clone());
                    for (vj, bj) in v.iter_mut().zip(b) {
                        *vj += &c * bj;
                    }
                }
                v
            })
            .collect();
        Self::new(self.ambient_dim, basis)
            .expect("integer kernel basis is independent")
            .canonical()
    }

    /// Dual lattice `{w in span L : <w, L> ⊆ Z}` with basis `B G^{-1}`.
    pub fn dual(&self) -> Self {
        let ginv = inverse(&self.gram).expect("gram of an independent basis is invertible");
        let k = self.rank();
        let basis = (0..k)
            .map(|i| {
                let mut v = vec![rat(0); self.ambient_dim];
                for j in 0..k {
                    let c = &ginv[(j, i)];
                    if c.is_zero() {
                        continue;
                    }
                    for (vt, bt) in v.iter_mut().zip(&self.basis[j]) {
                        *vt += c * bt;
                    }
                }
                v
            })
            .collect();
        Self::new(self.ambient_dim, basis).expect("dual basis is independent")
    }

    /// Lattice point with the given integer coordinates in the current basis.
    pub fn point(&self, coords: &[i64]) -> Vec<Rational> {
        let mut v = vec![rat(0); self.ambient_dim];
        for (&c, b) in coords.iter().zip(&self.basis) {
            for (vt, bt) in v.iter_mut().zip(b) {
                *vt += rat(c) * bt;
            }
        }
        v
    }

    /// All squared lengths `<= bound` with multiplicities, ascending, including the zero vector.
    pub fn length_spectrum(&self, bound: &Rational) -> Vec<(Rational, usize)> {
        let mut counts = BTreeMap::new();
        if bound.is_negative() {
            return Vec::new();
        }
        let k = self.rank();
        if k == 0 {
            return vec![(rat(0), 1)];
        }
        let q = completed_squares(&self.gram);
        let mut x = vec![0i64; k];
        enumerate(&q, k, &mut x, bound.clone(), bound, &mut counts);
        counts.into_iter().collect()
    }
}

/// Fincke-Pohst coefficients: `Q(x) = Σ_i q_ii (x_i + Σ_{j>i} q_ij x_j)^2`.
fn completed_squares(g: &RationalMatrix) -> RationalMatrix {
    let k = g.rows();
    let mut q = g.clone();
    for i in 0..k {
        for j in i + 1..k {
            q[(j, i)] = q[(i, j)].clone();
            q[(i, j)] = &q[(i, j)] / &q[(i, i)];
        }
        for a in i + 1..k {
            for b in a..k {
                let v = &q[(a, b)] - &q[(a, i)] * &q[(i, b)];
                q[(a, b)] = v;
            }
        }
    }
    q
}

fn enumerate(
    q: &RationalMatrix,
    level: usize,
    x: &mut [i64],
    remaining: Rational,
    bound: &Rational,
    counts: &mut BTreeMap<Rational, usize>,
) {
    if level == 0 {
        *counts.entry(bound - &remaining).or_insert(0) += 1;
        return;
    }
    let i = level - 1;
    let k = x.len();
    let center: Rational = (i + 1..k).map(|j| &q[(i, j)] * rat(x[j])).sum();
    let qii = &q[(i, i)];
    // Integers t with qii (t + center)^2 <= remaining.
    let t2 = &remaining / qii;
    let r = t2.ceil().to_integer().sqrt() + BigInt::one();
    let lo = (-&center - Rational::from_integer(r.clone())).floor().to_integer();
    let hi = (-&center + Rational::from_integer(r)).ceil().to_integer();
    let (lo, hi) = (
        lo.to_i64().expect("coordinate range fits i64"),
        hi.to_i64().expect("coordinate range fits i64"),
    );
    for t in lo..=hi {
        let s = rat(t) + &center;
        let term = qii * &s * &s;
        if term <= remaining {
            x[i] = t;
            enumerate(q, i, x, &remaining - term, bound, counts);
        }
    }
    x[i] = 0;
}
