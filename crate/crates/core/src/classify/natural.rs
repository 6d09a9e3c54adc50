//! Solver for the naturally reductive structure of a 2-step nilpotent Lie group
//! with `J = C·Id`, `B = D·Id` and `D ≠ 2C`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::homogeneous::{
    verify_homogeneous_structure, HomogeneousReport, HomogeneousStructure, Identity, IdentityCheck,
};
use super::{j_commutator, scalar_invariants};
use crate::algebra::MetricTwoStepAlgebra;
use crate::exact::serde_rational;
use crate::exact::{rat, solve_linear, Matrix, Rational, RationalMatrix};
use crate::geometry;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NRStructure {
    /// `central_bracket[a][b] = T̃(z_a, z_b)`
    #[serde(with = "serde_rational::tensor")]
    pub central_bracket: Vec<Vec<Vec<Rational>>>,
    /// Set when `Z ↦ j_Z` has a kernel, so `T̃` was chosen modulo that kernel.
    pub non_unique: bool,
    pub verification: HomogeneousReport,
}

impl NRStructure {
    pub fn tensor(&self, a: &MetricTwoStepAlgebra) -> HomogeneousStructure {
        HomogeneousStructure::from_central_bracket(a, &self.central_bracket)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionKind {
    CommutatorOutsideImage,
    CentralBracketNotSkew,
    CentralBracketNotJacobi,
    AsVerificationFailed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    /// Central basis pair `(a, b)` where the obstruction was found.
    pub pair: Option<(usize, usize)>,
    /// `[j_a, j_b] - j_W` for the orthogonal projection `j_W` onto the image of `j`.
    #[serde(with = "serde_rational::matrix")]
    pub residual: Vec<Vec<Rational>>,
    pub failed_identity: Option<IdentityCheck>,
}

impl Obstruction {
    /// Re-checks the witness independently of the solver.
    pub fn recheck(&self, a: &MetricTwoStepAlgebra) -> bool {
        match self.kind {
            ObstructionKind::CommutatorOutsideImage => {
                let Some((p, q)) = self.pair else { return false };
                let res = Matrix::from_rows(self.residual.clone());
                if res.is_zero() {
                    return false;
                }
                // The residual must be orthogonal to every j_k and differ from the
                // commutator by an element of the image.
                let k = commutator(a, p, q);
                let diff = &k - &res;
                let orth = a.j_maps().iter().all(|m| frobenius(m, &res).is_zero());
                orth && in_image(a, &diff)
            }
            _ => self.failed_identity.as_ref().is_some_and(|c| !c.passed()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum NaturallyReductive {
    Structure(NRStructure),
    Obstruction(Obstruction),
    Inapplicable { reason: String },
}

impl NaturallyReductive {
    pub fn structure(&self) -> Option<&NRStructure> {
        match self {
            NaturallyReductive::Structure(s) => Some(s),
            _ => None,
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match self {
            NaturallyReductive::Obstruction(o) => Some(o),
            _ => None,
        }
    }
}

fn commutator(a: &MetricTwoStepAlgebra, p: usize, q: usize) -> RationalMatrix {
    let m = a.dim_z();
    let e = |i: usize| -> Vec<Rational> { (0..m).map(|j| rat((i == j) as i64)).collect() };
    j_commutator(a, &e(p), &e(q))
}

fn frobenius(x: &RationalMatrix, y: &RationalMatrix) -> Rational {
    let mut s = rat(0);
    for i in 0..x.rows() {
        for j in 0..x.cols() {
            if !x[(i, j)].is_zero() && !y[(i, j)].is_zero() {
                s += &x[(i, j)] * &y[(i, j)];
            }
        }
    }
    s
}

/// Columns `vec(j_k)`.
fn image_system(a: &MetricTwoStepAlgebra) -> RationalMatrix {
    let n = a.dim_v();
    Matrix::from_fn(n * n, a.dim_z(), |r, k| a.j_maps()[k][(r / n, r % n)].clone())
}

fn in_image(a: &MetricTwoStepAlgebra, k: &RationalMatrix) -> bool {
    solve_linear(&image_system(a), &k.to_rows().concat()).is_consistent()
}

/// Applies the characterization of naturally reductive structures under scalar
/// `J` and `B`: `T̃` is forced by `j_{T̃(X,Y)} = j_X j_Y - j_Y j_X`, and the
/// assembled tensor is verified against every Ambrose-Singer equation.
pub fn naturally_reductive_structure(a: &MetricTwoStepAlgebra) -> NaturallyReductive {
    let s = scalar_invariants(a);
    let Some(c) = s.j_scalar else {
        return NaturallyReductive::Inapplicable {
            reason: "J is not a scalar multiple of the identity".into(),
        };
    };
    let Some(d) = s.b_scalar else {
        return NaturallyReductive::Inapplicable {
            reason: "B is not a scalar multiple of the identity".into(),
        };
    };
    if d == &c * rat(2) {
        return NaturallyReductive::Inapplicable {
            reason: format!("D = 2C (C = {c}, D = {d}): the Ricci tensor is parallel"),
        };
    }

    let m = a.dim_z();
    let system = image_system(a);
    let gram = geometry::endo_b(a);
    let mut central = vec![vec![vec![rat(0); m]; m]; m];
    let mut non_unique = false;
    for p in 0..m {
        for q in p + 1..m {
            let k = commutator(a, p, q);
            let sol = solve_linear(&system, &k.to_rows().concat());
            match sol.particular {
                Some(w) => {
                    non_unique |= !sol.kernel.is_empty();
                    central[q][p] = w.iter().map(|x| -x).collect();
                    central[p][q] = w;
                }
                None => {
                    let rhs: Vec<Rational> = a.j_maps().iter().map(|jm| frobenius(jm, &k)).collect();
                    let w = solve_linear(&gram, &rhs)
                        .particular
                        .expect("normal equations are consistent");
                    let residual = &k - &a.j_of(&w);
                    return NaturallyReductive::Obstruction(Obstruction {
                        kind: ObstructionKind::CommutatorOutsideImage,
                        pair: Some((p, q)),
                        residual: residual.to_rows(),
                        failed_identity: None,
                    });
                }
            }
        }
    }

    let t = HomogeneousStructure::from_central_bracket(a, &central);
    let report = verify_homogeneous_structure(a, &t);
    if report.all_pass() {
        return NaturallyReductive::Structure(NRStructure {
            central_bracket: central,
            non_unique,
            verification: report,
        });
    }
    let (kind, check) = if !report.get(Identity::CentralSkew).passed() {
        (
            ObstructionKind::CentralBracketNotSkew,
            report.get(Identity::CentralSkew),
        )
    } else if !report.get(Identity::CentralJacobi).passed() {
        (
            ObstructionKind::CentralBracketNotJacobi,
            report.get(Identity::CentralJacobi),
        )
    } else {
        (
            ObstructionKind::AsVerificationFailed,
            report.first_failed().expect("some identity failed"),
        )
    };
    let pair = check
        .first_failure
        .as_ref()
        .filter(|_| kind != ObstructionKind::AsVerificationFailed)
        .map(|f| (f.indices[0], f.indices[1]));
    NaturallyReductive::Obstruction(Obstruction {
        kind,
        pair,
        residual: Vec::new(),
        failed_identity: Some(check.clone()),
    })
}
