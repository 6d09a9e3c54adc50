use std::fmt;
use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::exact::{dot, rat, Rational};

/// An element `X = X^v + X^z` of `n = v ⊕ z` in standard coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementVector {
    pub v: Vec<Rational>,
    pub z: Vec<Rational>,
}

impl ElementVector {
    pub fn new(v: Vec<Rational>, z: Vec<Rational>) -> Self {
        ElementVector { v, z }
    }

    pub fn zero(dim_v: usize, dim_z: usize) -> Self {
        ElementVector::new(vec![rat(0); dim_v], vec![rat(0); dim_z])
    }

    pub fn basis(dim_v: usize, dim_z: usize, idx: usize) -> Self {
        assert!(idx < dim_v + dim_z, "basis index out of range");
        let mut e = Self::zero(dim_v, dim_z);
        if idx < dim_v {
            e.v[idx] = rat(1);
        } else {
            e.z[idx - dim_v] = rat(1);
        }
        e
    }

    pub fn from_v(v: Vec<Rational>, dim_z: usize) -> Self {
        ElementVector::new(v, vec![rat(0); dim_z])
    }

    pub fn from_z(dim_v: usize, z: Vec<Rational>) -> Self {
        ElementVector::new(vec![rat(0); dim_v], z)
    }

    /// Splits a full coordinate vector of length `n + m`.
    pub fn from_full(full: &[Rational], dim_v: usize) -> Self {
        ElementVector::new(full[..dim_v].to_vec(), full[dim_v..].to_vec())
    }

    pub fn to_full(&self) -> Vec<Rational> {
        self.v.iter().chain(&self.z).cloned().collect()
    }

    pub fn dim_v(&self) -> usize {
        self.v.len()
    }

    pub fn dim_z(&self) -> usize {
        self.z.len()
    }

    pub fn v_part(&self) -> Self {
        Self::from_v(self.v.clone(), self.z.len())
    }

    pub fn z_part(&self) -> Self {
        Self::from_z(self.v.len(), self.z.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().chain(&self.z).all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ElementVector::new(
            self.v.iter().map(|x| x * s).collect(),
            self.z.iter().map(|x| x * s).collect(),
        )
    }

    pub fn inner(&self, other: &Self) -> Rational {
        dot(&self.v, &other.v) + dot(&self.z, &other.z)
    }

    pub fn norm_squared(&self) -> Rational {
        self.inner(self)
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &Rational, other: &Self) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.v.iter_mut().zip(&other.v) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
        for (a, b) in self.z.iter_mut().zip(&other.z) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
    }
}

impl Add for &ElementVector {
    type Output = ElementVector;
    fn add(self, rhs: &ElementVector) -> ElementVector {
        let mut out = self.clone();
        out.add_scaled(&rat(1), rhs);
        out
    }
}

impl Sub for &ElementVector {
    type Output = ElementVector;
    fn sub(self, rhs: &ElementVector) -> ElementVector {
        let mut out = self.clone();
        out.add_scaled(&rat(-1), rhs);
        out
    }
}

impl fmt::Display for ElementVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.v.iter().map(ToString::to_string).collect();
        let z: Vec<String> = self.z.iter().map(ToString::to_string).collect();
        write!(f, "({} | {})", v.join(", "), z.join(", "))
    }
}
