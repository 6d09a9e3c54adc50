//! Definition-based geometry built only from the structure constants
//! `c_ab^c = <[e_a, e_b], e_c>` of `n` in its orthonormal basis.
//!
//! The connection comes from the Koszul formula for left-invariant fields,
//! `Γ_ab^c = ½ (c_ab^c - c_bc^a + c_ca^b)`, and everything else from the
//! textbook definitions of curvature, Jacobi operator, Ricci operator and
//! the covariant derivative of a tensor.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{ElementVector, MetricTwoStepAlgebra};
use crate::exact::{dot, frac, rat, Rational};

#[derive(Debug, Clone)]
pub struct DefinitionOracle {
    dim_v: usize,
    dim: usize,
    /// `c[a][b]` is `[e_a, e_b]` in full coordinates.
    c: Vec<Vec<Vec<Rational>>>,
    /// `gamma[a][b]` is `∇_{e_a} e_b` in full coordinates.
    gamma: Vec<Vec<Vec<Rational>>>,
}

impl DefinitionOracle {
    pub fn new(a: &MetricTwoStepAlgebra) -> Self {
        let (n, dim) = (a.dim_v(), a.dim());
        let table = a.structure_constants();
        let mut c = vec![vec![vec![rat(0); dim]; dim]; dim];
        for (p, row) in table.iter().enumerate() {
            for (q, z) in row.iter().enumerate() {
                for (k, val) in z.iter().enumerate() {
                    c[p][q][n + k] = val.clone();
                }
            }
        }
        let gamma = (0..dim)
            .map(|p| {
                (0..dim)
                    .map(|q| {
                        (0..dim)
                            .map(|r| (&c[p][q][r] - &c[q][r][p] + &c[r][p][q]) * frac(1, 2))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        DefinitionOracle {
            dim_v: n,
            dim,
            c,
            gamma,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn bilinear(t: &[Vec<Vec<Rational>>], x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![rat(0); x.len()];
        for (p, xp) in x.iter().enumerate() {
            if xp.is_zero() {
                continue;
            }
            for (q, yq) in y.iter().enumerate() {
                if yq.is_zero() {
                    continue;
                }
                let s = xp * yq;
                for (o, t) in out.iter_mut().zip(&t[p][q]) {
                    if !t.is_zero() {
                        *o += &s * t;
                    }
                }
            }
        }
        out
    }

    pub fn bracket_full(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        Self::bilinear(&self.c, x, y)
    }

    pub fn nabla_full(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        Self::bilinear(&self.gamma, x, y)
    }

    /// `R(X,Y)Z = ∇_X ∇_Y Z - ∇_Y ∇_X Z - ∇_{[X,Y]} Z`
    pub fn curvature_full(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        let a = self.nabla_full(x, &self.nabla_full(y, z));
        let b = self.nabla_full(y, &self.nabla_full(x, z));
        let c = self.nabla_full(&self.bracket_full(x, y), z);
        a.iter().zip(&b).zip(&c).map(|((a, b), c)| a - b - c).collect()
    }

    /// `ρ(X) = Σ_e R(X, e) e` over the orthonormal basis.
    pub fn ricci_operator_full(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![rat(0); self.dim];
        for i in 0..self.dim {
            let e = unit(self.dim, i);
            for (o, r) in out.iter_mut().zip(self.curvature_full(x, &e, &e)) {
                *o += r;
            }
        }
        out
    }

    fn split(&self, full: Vec<Rational>) -> ElementVector {
        ElementVector::from_full(&full, self.dim_v)
    }

    pub fn nabla(&self, v: &ElementVector, x: &ElementVector) -> ElementVector {
        self.split(self.nabla_full(&v.to_full(), &x.to_full()))
    }

    pub fn curvature(&self, x: &ElementVector, y: &ElementVector, z: &ElementVector) -> ElementVector {
        self.split(self.curvature_full(&x.to_full(), &y.to_full(), &z.to_full()))
    }

    /// `R_V(X) = R(X, V) V`
    pub fn jacobi_operator(&self, v: &ElementVector, x: &ElementVector) -> ElementVector {
        let v = v.to_full();
        self.split(self.curvature_full(&x.to_full(), &v, &v))
    }

    pub fn ricci_operator(&self, x: &ElementVector) -> ElementVector {
        self.split(self.ricci_operator_full(&x.to_full()))
    }

    pub fn ricci_tensor(&self, x: &ElementVector, y: &ElementVector) -> Rational {
        dot(&self.ricci_operator_full(&x.to_full()), &y.to_full())
    }

    /// `(∇_X ric)(Y,Z) = -ric(∇_X Y, Z) - ric(Y, ∇_X Z)`; the derivative of the
    /// constant function `ric(Y,Z)` vanishes for left-invariant fields.
    pub fn nabla_ric(&self, x: &ElementVector, y: &ElementVector, z: &ElementVector) -> Rational {
        let (x, y, z) = (x.to_full(), y.to_full(), z.to_full());
        let ric = |p: &[Rational], q: &[Rational]| dot(&self.ricci_operator_full(p), q);
        -ric(&self.nabla_full(&x, &y), &z) - ric(&y, &self.nabla_full(&x, &z))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleMismatch {
    pub quantity: String,
    pub indices: Vec<usize>,
}

/// Outcome of comparing every closed form with its definition on basis tuples.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub checks: usize,
    pub mismatches: Vec<OracleMismatch>,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn record(&mut self, ok: bool, quantity: &str, indices: &[usize]) {
        self.checks += 1;
        if !ok {
            self.mismatches.push(OracleMismatch {
                quantity: quantity.into(),
                indices: indices.to_vec(),
            });
        }
    }
}

/// Checks `∇`, `R`, `R_V`, `ρ`, `ric` and `∇ric` against [`DefinitionOracle`].
pub fn compare_with_oracle(a: &MetricTwoStepAlgebra) -> OracleComparison {
    let o = DefinitionOracle::new(a);
    let r = super::RicciData::new(a);
    let b: Vec<_> = (0..a.dim()).map(|i| a.basis(i)).collect();
    let mut out = OracleComparison::default();
    for (x, bx) in b.iter().enumerate() {
        out.record(o.ricci_operator(bx) == r.operator(bx), "ricci-operator", &[x]);
        for (y, by) in b.iter().enumerate() {
            out.record(o.nabla(bx, by) == super::nabla(a, bx, by), "nabla", &[x, y]);
            out.record(
                o.jacobi_operator(by, bx) == super::jacobi_operator(a, by, bx),
                "jacobi-operator",
                &[y, x],
            );
            out.record(o.ricci_tensor(bx, by) == r.tensor(bx, by), "ricci-tensor", &[x, y]);
            for (z, bz) in b.iter().enumerate() {
                out.record(
                    o.curvature(bx, by, bz) == super::curvature(a, bx, by, bz),
                    "curvature",
                    &[x, y, z],
                );
                out.record(
                    o.nabla_ric(bx, by, bz) == r.nabla_ric(a, bx, by, bz),
                    "nabla-ric",
                    &[x, y, z],
                );
            }
        }
    }
    out
}

fn unit(dim: usize, i: usize) -> Vec<Rational> {
    (0..dim).map(|j| rat((i == j) as i64)).collect()
}
