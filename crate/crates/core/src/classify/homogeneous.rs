//! Ambrose-Singer verification of a (2,1)-tensor `T` on a metric 2-step
//! nilpotent Lie algebra, evaluated exactly on every basis tuple.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::j_commutator;
use crate::algebra::MetricTwoStepAlgebra;
use crate::exact::serde_rational;
use crate::exact::{frac, rat, Poly, Rational};
use crate::geometry::{self, RicciData};

/// `T` stored on basis pairs: `t[a][b] = T_{e_a} e_b` in full coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousStructure {
    pub dim_v: usize,
    pub dim_z: usize,
    #[serde(with = "serde_rational::tensor")]
    pub t: Vec<Vec<Vec<Rational>>>,
}

impl HomogeneousStructure {
    pub fn zero(dim_v: usize, dim_z: usize) -> Self {
        let d = dim_v + dim_z;
        HomogeneousStructure {
            dim_v,
            dim_z,
            t: vec![vec![vec![rat(0); d]; d]; d],
        }
    }

    /// `T_X Y = -½ j_{Y^z} X^v + ½ j_{X^z} Y^v + ½ [X^v, Y^v] + T̃(X^z, Y^z)`,
    /// where `central[a][b] = T̃(z_a, z_b)`.
    pub fn from_central_bracket(a: &MetricTwoStepAlgebra, central: &[Vec<Vec<Rational>>]) -> Self {
        let (n, m) = (a.dim_v(), a.dim_z());
        let mut s = Self::zero(n, m);
        let half = frac(1, 2);
        for p in 0..n {
            for q in 0..n {
                for k in 0..m {
                    s.t[p][q][n + k] = &a.j_maps()[k][(p, q)] * &half;
                }
            }
        }
        for k in 0..m {
            for p in 0..n {
                for b in 0..n {
                    let jv = &a.j_maps()[k][(p, b)] * &half;
                    s.t[p][n + k][b] = -jv.clone();
                    s.t[n + k][p][b] = jv;
                }
            }
            for l in 0..m {
                for r in 0..m {
                    s.t[n + k][n + l][n + r] = central[k][l][r].clone();
                }
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim_v + self.dim_z
    }

    /// `T_X Y` for full coordinate vectors.
    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        bilinear(&self.t, x, y)
    }

    /// `T̃(z_a, z_b)` read off the central block.
    pub fn central_bracket(&self) -> Vec<Vec<Vec<Rational>>> {
        let n = self.dim_v;
        (0..self.dim_z)
            .map(|a| (0..self.dim_z).map(|b| self.t[n + a][n + b][n..].to_vec()).collect())
            .collect()
    }
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
            for (o, v) in out.iter_mut().zip(&t[p][q]) {
                if !v.is_zero() {
                    *o += &s * v;
                }
            }
        }
    }
    out
}

/// `Σ_c coeffs[c] · rows[c]`
fn combine(coeffs: &[Rational], rows: &[&Vec<Rational>]) -> Vec<Rational> {
    let mut out = vec![rat(0); rows.first().map_or(0, |r| r.len())];
    for (c, row) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, v) in out.iter_mut().zip(row.iter()) {
            if !v.is_zero() {
                *o += c * v;
            }
        }
    }
    out
}

fn sub_assign(acc: &mut [Rational], x: &[Rational]) {
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a -= b;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    /// `(∇_V R)(X,Y)Z = T_V(R(X,Y)Z) - R(T_V X,Y)Z - R(X,T_V Y)Z - R(X,Y)T_V Z`
    CurvatureParallel,
    /// `(∇_X T)_Y = [T_X, T_Y] - T_{T_X Y}`
    TorsionParallel,
    /// `<T_X Y, Z> + <Y, T_X Z> = 0`
    MetricParallel,
    /// `T_X Y + T_Y X = 0`
    NaturallyReductive,
    /// `(∇_X ric)(Y,Z) = -ric(T_X Y, Z) - ric(Y, T_X Z)`
    RicciContraction,
    /// `j_X j_Y - j_Y j_X = j_{T̃(X,Y)}` for central `X, Y`, as a polynomial identity
    CommutatorCompatibility,
    /// `T̃(X,Y) = -T̃(Y,X)`
    CentralAntisymmetry,
    /// `T̃_X ∈ so(z)`
    CentralSkew,
    /// Jacobi identity for `T̃`
    CentralJacobi,
}

impl Identity {
    pub const ALL: [Identity; 9] = [
        Identity::CurvatureParallel,
        Identity::TorsionParallel,
        Identity::MetricParallel,
        Identity::NaturallyReductive,
        Identity::RicciContraction,
        Identity::CommutatorCompatibility,
        Identity::CentralAntisymmetry,
        Identity::CentralSkew,
        Identity::CentralJacobi,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Identity::CurvatureParallel => "AS(1) curvature parallel",
            Identity::TorsionParallel => "AS(2) torsion parallel",
            Identity::MetricParallel => "AS(3) metric parallel",
            Identity::NaturallyReductive => "NR T_X X = 0",
            Identity::RicciContraction => "Ricci contraction",
            Identity::CommutatorCompatibility => "j-commutator compatibility",
            Identity::CentralAntisymmetry => "central bracket antisymmetric",
            Identity::CentralSkew => "central bracket skew",
            Identity::CentralJacobi => "central bracket Jacobi",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A basis tuple where an identity fails, with the nonzero difference of its two sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureInstance {
    pub indices: Vec<usize>,
    #[serde(with = "serde_rational::vec")]
    pub residual: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: Identity,
    pub instances: usize,
    pub failures: usize,
    pub first_failure: Option<FailureInstance>,
}

impl IdentityCheck {
    fn new(identity: Identity) -> Self {
        IdentityCheck {
            identity,
            instances: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn record(&mut self, indices: &[usize], residual: Vec<Rational>) {
        self.instances += 1;
        if residual.iter().any(|r| !r.is_zero()) {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(FailureInstance {
                    indices: indices.to_vec(),
                    residual,
                });
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomogeneousReport {
    pub checks: Vec<IdentityCheck>,
}

impl HomogeneousReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }

    pub fn get(&self, identity: Identity) -> &IdentityCheck {
        self.checks
            .iter()
            .find(|c| c.identity == identity)
            .expect("every identity is checked")
    }

    pub fn first_failed(&self) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| !c.passed())
    }

    /// The four Ambrose-Singer / naturally reductive equations.
    pub fn ambrose_singer_pass(&self) -> bool {
        [
            Identity::CurvatureParallel,
            Identity::TorsionParallel,
            Identity::MetricParallel,
            Identity::NaturallyReductive,
        ]
        .iter()
        .all(|&i| self.get(i).passed())
    }
}

/// Checks every identity of [`Identity`] for `t` on all basis tuples.
pub fn verify_homogeneous_structure(a: &MetricTwoStepAlgebra, t: &HomogeneousStructure) -> HomogeneousReport {
    assert_eq!((t.dim_v, t.dim_z), (a.dim_v(), a.dim_z()), "structure dimensions");
    let dim = a.dim();
    let basis: Vec<_> = (0..dim).map(|i| a.basis(i)).collect();
    let full = |i: usize| basis[i].to_full();
    let gamma: Vec<Vec<Vec<Rational>>> = (0..dim)
        .map(|p| {
            (0..dim)
                .map(|q| geometry::nabla(a, &basis[p], &basis[q]).to_full())
                .collect()
        })
        .collect();
    let curv: Vec<Vec<Vec<Vec<Rational>>>> = (0..dim)
        .map(|x| {
            (0..dim)
                .map(|y| {
                    (0..dim)
                        .map(|z| geometry::curvature(a, &basis[x], &basis[y], &basis[z]).to_full())
                        .collect()
                })
                .collect()
        })
        .collect();
    let tt = &t.t;

    let mut checks = Vec::new();

    // (∇_V R)(X,Y)Z against the T-expression, with D ∈ {∇, T} applied the same way.
    let derivation = |d: &Vec<Vec<Vec<Rational>>>, v: usize, x: usize, y: usize, z: usize| {
        let r = &curv[x][y][z];
        let dv: Vec<&Vec<Rational>> = d[v].iter().collect();
        let mut out = combine(r, &dv);
        let rx: Vec<&Vec<Rational>> = (0..dim).map(|p| &curv[p][y][z]).collect();
        sub_assign(&mut out, &combine(&d[v][x], &rx));
        let ry: Vec<&Vec<Rational>> = (0..dim).map(|p| &curv[x][p][z]).collect();
        sub_assign(&mut out, &combine(&d[v][y], &ry));
        let rz: Vec<&Vec<Rational>> = (0..dim).map(|p| &curv[x][y][p]).collect();
        sub_assign(&mut out, &combine(&d[v][z], &rz));
        out
    };
    let mut c1 = IdentityCheck::new(Identity::CurvatureParallel);
    for v in 0..dim {
        for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    let lhs = derivation(&gamma, v, x, y, z);
                    let rhs = derivation(tt, v, x, y, z);
                    let res = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
                    c1.record(&[v, x, y, z], res);
                }
            }
        }
    }
    checks.push(c1);

    let mut c2 = IdentityCheck::new(Identity::TorsionParallel);
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                // ∇_X(T_Y Z) - T_{∇_X Y} Z - T_Y(∇_X Z)
                let mut lhs = bilinear(&gamma, &full(x), &tt[y][z]);
                sub_assign(&mut lhs, &bilinear(tt, &gamma[x][y], &full(z)));
                sub_assign(&mut lhs, &bilinear(tt, &full(y), &gamma[x][z]));
                // T_X T_Y Z - T_Y T_X Z - T_{T_X Y} Z
                let mut rhs = bilinear(tt, &full(x), &tt[y][z]);
                sub_assign(&mut rhs, &bilinear(tt, &full(y), &tt[x][z]));
                sub_assign(&mut rhs, &bilinear(tt, &tt[x][y], &full(z)));
                let res = lhs.iter().zip(&rhs).map(|(l, r)| l - r).collect();
                c2.record(&[x, y, z], res);
            }
        }
    }
    checks.push(c2);

    let mut c3 = IdentityCheck::new(Identity::MetricParallel);
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                c3.record(&[x, y, z], vec![&tt[x][y][z] + &tt[x][z][y]]);
            }
        }
    }
    checks.push(c3);

    let mut c4 = IdentityCheck::new(Identity::NaturallyReductive);
    for x in 0..dim {
        for y in x..dim {
            let res = tt[x][y].iter().zip(&tt[y][x]).map(|(p, q)| p + q).collect();
            c4.record(&[x, y], res);
        }
    }
    checks.push(c4);

    let ric = RicciData::new(a);
    let mut c5 = IdentityCheck::new(Identity::RicciContraction);
    let elem = |v: &[Rational]| crate::algebra::ElementVector::from_full(v, a.dim_v());
    for x in 0..dim {
        for y in 0..dim {
            for z in 0..dim {
                let lhs = ric.nabla_ric(a, &basis[x], &basis[y], &basis[z]);
                let rhs = -ric.tensor(&elem(&tt[x][y]), &basis[z]) - ric.tensor(&basis[y], &elem(&tt[x][z]));
                c5.record(&[x, y, z], vec![lhs - rhs]);
            }
        }
    }
    checks.push(c5);

    let central = t.central_bracket();
    checks.push(commutator_compatibility(a, &central));

    let m = a.dim_z();
    let mut c7 = IdentityCheck::new(Identity::CentralAntisymmetry);
    let mut c8 = IdentityCheck::new(Identity::CentralSkew);
    let mut c9 = IdentityCheck::new(Identity::CentralJacobi);
    let tz = |p: &[Rational], q: &[Rational]| bilinear(&central, p, q);
    let ez = |i: usize| -> Vec<Rational> { (0..m).map(|j| rat((i == j) as i64)).collect() };
    for p in 0..m {
        for q in 0..m {
            let res = central[p][q].iter().zip(&central[q][p]).map(|(x, y)| x + y).collect();
            c7.record(&[p, q], res);
            for r in 0..m {
                c8.record(&[p, q, r], vec![&central[p][q][r] + &central[p][r][q]]);
                let mut jac = tz(&ez(p), &central[q][r]);
                for (o, v) in jac.iter_mut().zip(tz(&ez(q), &central[r][p])) {
                    *o += v;
                }
                for (o, v) in jac.iter_mut().zip(tz(&ez(r), &central[p][q])) {
                    *o += v;
                }
                c9.record(&[p, q, r], jac);
            }
        }
    }
    checks.extend([c7, c8, c9]);

    HomogeneousReport { checks }
}

/// Symbolic check in variables `x1..xm, y1..ym`; on failure the first basis pair
/// whose residual matrix is nonzero is reported with that matrix flattened.
fn commutator_compatibility(a: &MetricTwoStepAlgebra, central: &[Vec<Vec<Rational>>]) -> IdentityCheck {
    let m = a.dim_z();
    let mut check = IdentityCheck::new(Identity::CommutatorCompatibility);
    let vars = Poly::vars(2 * m);
    let (x, y) = vars.split_at(m);
    let lhs = j_commutator(a, x, y);
    let mut t = vec![Poly::zero(); m];
    for p in 0..m {
        for q in 0..m {
            let coeff = &x[p] * &y[q];
            for (o, c) in t.iter_mut().zip(&central[p][q]) {
                if !c.is_zero() {
                    *o = o.clone() + coeff.scale(c);
                }
            }
        }
    }
    let rhs = a.j_of(&t);
    check.instances = 1;
    if lhs == rhs {
        return check;
    }
    check.failures = 1;
    for p in 0..m {
        for q in 0..m {
            let (ep, eq) = (unit(m, p), unit(m, q));
            let res = &j_commutator(a, &ep, &eq) - &a.j_of(&central[p][q]);
            if !res.is_zero() {
                check.first_failure = Some(FailureInstance {
                    indices: vec![p, q],
                    residual: res.to_rows().concat(),
                });
                return check;
            }
        }
    }
    check
}

fn unit(m: usize, i: usize) -> Vec<Rational> {
    (0..m).map(|j| rat((i == j) as i64)).collect()
}
