//! Left-invariant Riemannian geometry of a metric 2-step nilpotent group in
//! closed form: Levi-Civita connection, curvature, Jacobi and Ricci operators,
//! the endomorphisms `J` and `B`, and the covariant derivative of `ric`.
//!
//! Every closed form has an independent counterpart in [`oracle`] computed
//! from structure constants alone.

pub mod oracle;

use num_traits::Zero;

use crate::algebra::{ElementVector, MetricTwoStepAlgebra};
use crate::exact::{dot, frac, rat, Matrix, Rational, RationalMatrix};

pub use oracle::{compare_with_oracle, DefinitionOracle, OracleComparison, OracleMismatch};

/// `R(X,Y)Z` as an element of `n`.
pub type CurvatureValue = ElementVector;
/// `J = Σ_k j_k²` on `v` (symmetric).
pub type EndoJ = RationalMatrix;
/// `B` on `z` with `<B z_a, z_b> = Σ_i <j_a v_i, j_b v_i>` (symmetric).
pub type EndoB = RationalMatrix;

/// `j_Z x` for `Z ∈ z`, `x ∈ v`.
pub(crate) fn jz(a: &MetricTwoStepAlgebra, z: &[Rational], x: &[Rational]) -> Vec<Rational> {
    let n = a.dim_v();
    let mut out = vec![rat(0); n];
    for (zk, m) in z.iter().zip(a.j_maps()) {
        if zk.is_zero() {
            continue;
        }
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let s = zk * xi;
            for (b, o) in out.iter_mut().enumerate() {
                let e = &m[(i, b)];
                if !e.is_zero() {
                    *o += &s * e;
                }
            }
        }
    }
    out
}

/// `[x, y] ∈ z` for `x, y ∈ v`.
pub(crate) fn br(a: &MetricTwoStepAlgebra, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    a.j_maps()
        .iter()
        .map(|m| {
            let mut s = rat(0);
            for (i, xi) in x.iter().enumerate() {
                if xi.is_zero() {
                    continue;
                }
                for (j, yj) in y.iter().enumerate() {
                    let e = &m[(i, j)];
                    if !yj.is_zero() && !e.is_zero() {
                        s += xi * yj * e;
                    }
                }
            }
            s
        })
        .collect()
}

fn axpy(acc: &mut [Rational], s: &Rational, x: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a += s * b;
        }
    }
}

/// `∇_V X = -½ j_{V^z} X^v - ½ j_{X^z} V^v + ½ [V^v, X^v]`.
pub fn nabla(a: &MetricTwoStepAlgebra, v: &ElementVector, x: &ElementVector) -> ElementVector {
    let half = frac(1, 2);
    let mut out_v = vec![rat(0); a.dim_v()];
    axpy(&mut out_v, &-&half, &jz(a, &v.z, &x.v));
    axpy(&mut out_v, &-&half, &jz(a, &x.z, &v.v));
    let out_z = br(a, &v.v, &x.v).iter().map(|c| c * &half).collect();
    ElementVector::new(out_v, out_z)
}

/// `R(X,Y)Z` by the twelve-term expansion in `j` and the bracket.
pub fn curvature(a: &MetricTwoStepAlgebra, x: &ElementVector, y: &ElementVector, z: &ElementVector) -> CurvatureValue {
    let (q, h) = (frac(1, 4), frac(1, 2));
    let nq = -&q;
    let mut out_v = vec![rat(0); a.dim_v()];
    axpy(&mut out_v, &h, &jz(a, &br(a, &x.v, &y.v), &z.v));
    axpy(&mut out_v, &q, &jz(a, &br(a, &x.v, &z.v), &y.v));
    axpy(&mut out_v, &nq, &jz(a, &br(a, &y.v, &z.v), &x.v));
    axpy(&mut out_v, &q, &jz(a, &x.z, &jz(a, &z.z, &y.v)));
    axpy(&mut out_v, &nq, &jz(a, &y.z, &jz(a, &z.z, &x.v)));
    axpy(&mut out_v, &q, &jz(a, &x.z, &jz(a, &y.z, &z.v)));
    axpy(&mut out_v, &nq, &jz(a, &y.z, &jz(a, &x.z, &z.v)));

    let mut out_z = vec![rat(0); a.dim_z()];
    axpy(&mut out_z, &nq, &br(a, &x.v, &jz(a, &y.z, &z.v)));
    axpy(&mut out_z, &q, &br(a, &y.v, &jz(a, &x.z, &z.v)));
    axpy(&mut out_z, &nq, &br(a, &jz(a, &z.z, &x.v), &y.v));
    axpy(&mut out_z, &nq, &br(a, &x.v, &jz(a, &z.z, &y.v)));
    ElementVector::new(out_v, out_z)
}

/// Jacobi operator `R_V(X) = R(X,V)V` by its seven-term expansion.
pub fn jacobi_operator(a: &MetricTwoStepAlgebra, v: &ElementVector, x: &ElementVector) -> ElementVector {
    let (q, h) = (frac(1, 4), frac(1, 2));
    let nq = -&q;
    let jvv = jz(a, &v.z, &v.v);
    let mut out_v = vec![rat(0); a.dim_v()];
    axpy(&mut out_v, &frac(3, 4), &jz(a, &br(a, &x.v, &v.v), &v.v));
    axpy(&mut out_v, &h, &jz(a, &x.z, &jvv));
    axpy(&mut out_v, &nq, &jz(a, &v.z, &jz(a, &x.z, &v.v)));
    axpy(&mut out_v, &nq, &jz(a, &v.z, &jz(a, &v.z, &x.v)));

    let mut out_z = vec![rat(0); a.dim_z()];
    axpy(&mut out_z, &-&h, &br(a, &x.v, &jvv));
    axpy(&mut out_z, &q, &br(a, &v.v, &jz(a, &x.z, &v.v)));
    axpy(&mut out_z, &nq, &br(a, &jz(a, &v.z, &x.v), &v.v));
    ElementVector::new(out_v, out_z)
}

pub fn endo_j(a: &MetricTwoStepAlgebra) -> EndoJ {
    let n = a.dim_v();
    a.j_maps().iter().fold(Matrix::zeros(n, n), |acc, m| &acc + &(m * m))
}

pub fn endo_b(a: &MetricTwoStepAlgebra) -> EndoB {
    let maps = a.j_maps();
    Matrix::from_fn(a.dim_z(), a.dim_z(), |p, q| {
        let (mp, mq) = (&maps[p], &maps[q]);
        let mut s = rat(0);
        for i in 0..a.dim_v() {
            for c in 0..a.dim_v() {
                let (x, y) = (&mp[(i, c)], &mq[(i, c)]);
                if !x.is_zero() && !y.is_zero() {
                    s += x * y;
                }
            }
        }
        s
    })
}

/// `J` and `B` computed once, for repeated Ricci evaluations.
#[derive(Debug, Clone, PartialEq)]
pub struct RicciData {
    pub j: EndoJ,
    pub b: EndoB,
}

impl RicciData {
    pub fn new(a: &MetricTwoStepAlgebra) -> Self {
        RicciData {
            j: endo_j(a),
            b: endo_b(a),
        }
    }

    /// `ρ(X) = ½ J X^v + ¼ B X^z`
    pub fn operator(&self, x: &ElementVector) -> ElementVector {
        ElementVector::new(
            self.j.mul_vec(&x.v).iter().map(|c| c * frac(1, 2)).collect(),
            self.b.mul_vec(&x.z).iter().map(|c| c * frac(1, 4)).collect(),
        )
    }

    pub fn tensor(&self, x: &ElementVector, y: &ElementVector) -> Rational {
        self.operator(x).inner(y)
    }

    /// `(∇_X ric)(Y, Z)` by its six-term expansion.
    pub fn nabla_ric(
        &self,
        a: &MetricTwoStepAlgebra,
        x: &ElementVector,
        y: &ElementVector,
        z: &ElementVector,
    ) -> Rational {
        let (jy, jzv) = (self.j.mul_vec(&y.v), self.j.mul_vec(&z.v));
        let (by, bz) = (self.b.mul_vec(&y.z), self.b.mul_vec(&z.z));
        let quarter = dot(&jz(a, &x.z, &y.v), &jzv)
            + dot(&jz(a, &x.z, &z.v), &jy)
            + dot(&jz(a, &y.z, &x.v), &jzv)
            + dot(&jz(a, &z.z, &x.v), &jy);
        let eighth = dot(&br(a, &x.v, &z.v), &by) + dot(&br(a, &x.v, &y.v), &bz);
        quarter * frac(1, 4) - eighth * frac(1, 8)
    }
}

pub fn ricci_operator(a: &MetricTwoStepAlgebra, x: &ElementVector) -> ElementVector {
    RicciData::new(a).operator(x)
}

pub fn ricci_tensor(a: &MetricTwoStepAlgebra, x: &ElementVector, y: &ElementVector) -> Rational {
    RicciData::new(a).tensor(x, y)
}

pub fn nabla_ric(a: &MetricTwoStepAlgebra, x: &ElementVector, y: &ElementVector, z: &ElementVector) -> Rational {
    RicciData::new(a).nabla_ric(a, x, y, z)
}

/// `Σ_a ric(e_a, e_a) = ½ tr J + ¼ tr B`.
pub fn scalar_curvature(a: &MetricTwoStepAlgebra) -> Rational {
    let r = RicciData::new(a);
    r.j.trace() * frac(1, 2) + r.b.trace() * frac(1, 4)
}
