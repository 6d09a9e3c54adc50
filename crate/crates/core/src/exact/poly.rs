//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are addressed by index and printed as `c1, c2, ...`. Exponents are
//! signed, so a monomial `a * c_k^e` is invertible; this is what lets symbolic
//! elimination divide by pivots that are known to be nonzero on a stratum
//! `c_k != 0`. Ordinary polynomial code never produces negative exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::scalar::{format_rational, rat, Rational, Scalar};

/// Exponent vector with trailing zeros trimmed, so constants are `[]`.
pub type Monomial = Vec<i32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

fn mono_mul(a: &[i32], b: &[i32]) -> Monomial {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect();
    trim(out)
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn constant(q: Rational) -> Self {
        let mut p = Poly::default();
        p.add_term(Monomial::new(), q);
        p
    }

    /// The variable `c_{k+1}` (zero-based index `k`).
    pub fn var(k: usize) -> Self {
        Self::monomial(rat(1), &unit_exponent(k, 1))
    }

    pub fn monomial(coef: Rational, exponents: &[i32]) -> Self {
        let mut p = Poly::default();
        p.add_term(trim(exponents.to_vec()), coef);
        p
    }

    /// The vector `(c_1, ..., c_m)` of the first `m` variables.
    pub fn vars(m: usize) -> Vec<Poly> {
        (0..m).map(Poly::var).collect()
    }

    fn add_term(&mut self, mono: Monomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    /// Constant value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(rat(0)),
            1 => self.terms.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }

    /// `Some((a, e))` when the polynomial is a single term `a * c^e`.
    pub fn as_monomial(&self) -> Option<(&Rational, &Monomial)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (c, m))
        } else {
            None
        }
    }

    /// True if the polynomial is a single term involving only the variables in `allowed`.
    /// Such a term is nonzero wherever those variables are nonzero.
    pub fn is_unit_on(&self, allowed: &[usize]) -> bool {
        match self.as_monomial() {
            Some((_, m)) => m.iter().enumerate().all(|(i, &e)| e == 0 || allowed.contains(&i)),
            None => false,
        }
    }

    /// Inverse of a single-term polynomial.
    pub fn monomial_inverse(&self) -> Option<Poly> {
        let (c, m) = self.as_monomial()?;
        let neg: Vec<i32> = m.iter().map(|e| -e).collect();
        Some(Poly::monomial(c.recip(), &neg))
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(|m| m.iter().any(|&e| e < 0))
    }

    pub fn total_degree(&self) -> i32 {
        self.terms.keys().map(|m| m.iter().sum::<i32>()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> i32 {
        self.terms
            .keys()
            .map(|m| m.get(var).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Number of variables actually present (one past the highest index used).
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(|m| m.len()).max().unwrap_or(0)
    }

    /// Evaluates at a rational point. Panics if a negative power meets a zero coordinate.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut acc = rat(0);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point.get(i).cloned().unwrap_or_else(|| rat(0));
                t *= pow_rational(&x, e);
            }
            acc += t;
        }
        acc
    }

    /// Substitutes `c_var := value`. Panics on a negative power of a zero value.
    pub fn substitute(&self, var: usize, value: &Rational) -> Poly {
        let mut out = Poly::default();
        for (m, c) in &self.terms {
            let e = m.get(var).copied().unwrap_or(0);
            let mut mono = m.clone();
            if var < mono.len() {
                mono[var] = 0;
            }
            let coef = if e == 0 { c.clone() } else { c * pow_rational(value, e) };
            out.add_term(trim(mono), coef);
        }
        out
    }
}

fn unit_exponent(k: usize, e: i32) -> Monomial {
    let mut m = vec![0; k + 1];
    m[k] = e;
    m
}

fn pow_rational(x: &Rational, e: i32) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        assert!(!x.is_zero(), "negative power of zero");
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly::default()
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(rat(1))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
        self
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
}

impl Scalar for Poly {
    fn from_rational(q: &Rational) -> Self {
        Poly::constant(q.clone())
    }

    fn div_int(&self, d: i64) -> Self {
        assert!(d != 0, "division by zero");
        self.scale(&rat(d).recip())
    }
}

impl From<Rational> for Poly {
    fn from(q: Rational) -> Self {
        Poly::constant(q)
    }
}

impl fmt::Display for Poly {
    /// Terms in descending graded order, e.g. `c1^2 - 2*c2*c3 + 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let da: i32 = a.iter().sum();
            let db: i32 = b.iter().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(k, &e)| {
                    if e == 1 {
                        format!("c{}", k + 1)
                    } else {
                        format!("c{}^{}", k + 1, e)
                    }
                })
                .collect();
            if factors.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::frac;

    fn c(k: usize) -> Poly {
        Poly::var(k)
    }

    #[test]
    fn arithmetic_cancels_to_zero() {
        let p = c(0) * c(1) - c(1) * c(0);
        assert!(p.is_zero());
        let sq = (c(0) + c(1)) * (c(0) - c(1));
        assert_eq!(sq, c(0) * c(0) - c(1) * c(1));
    }

    #[test]
    fn display() {
        let p = c(0) * c(0) - c(1) * c(2).scale(&rat(2)) + Poly::constant(frac(1, 2));
        assert_eq!(p.to_string(), "c1^2 - 2*c2*c3 + 1/2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!((-c(0)).to_string(), "-c1");
    }

    #[test]
    fn laurent_monomials() {
        let p = c(0).scale(&rat(3));
        let inv = p.monomial_inverse().unwrap();
        assert_eq!(&p * &inv, Poly::one());
        assert!(inv.has_negative_exponents());
        assert!(inv.is_unit_on(&[0]));
        assert!(!c(1).is_unit_on(&[0]));
        assert!((c(0) + c(1)).monomial_inverse().is_none());
    }

    #[test]
    fn eval_and_substitute() {
        let p = c(0) * c(0) + c(1).scale(&rat(3));
        assert_eq!(p.eval(&[rat(2), frac(1, 3)]), rat(5));
        let q = p.substitute(0, &rat(0));
        assert_eq!(q, c(1).scale(&rat(3)));
        assert_eq!(p.div_int(2).eval(&[rat(2), rat(0)]), rat(2));
    }
}
