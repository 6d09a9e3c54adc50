//! Decision procedures: Type A, (modified) Heisenberg type, scalar `J`/`B`,
//! parallel Ricci tensor, and naturally reductive homogeneous structures.

mod homogeneous;
mod natural;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::MetricTwoStepAlgebra;
use crate::exact::serde_rational;
use crate::exact::{determinant, rat, Matrix, Poly, Rational, RationalMatrix, Scalar};
use crate::geometry::{self, RicciData};

pub use homogeneous::{
    verify_homogeneous_structure, FailureInstance, HomogeneousReport, HomogeneousStructure, Identity, IdentityCheck,
};
pub use natural::{naturally_reductive_structure, NRStructure, NaturallyReductive, Obstruction, ObstructionKind};

/// Matrix, in the stored row convention, of the operator `j_X ∘ j_Y - j_Y ∘ j_X`.
pub fn j_commutator<R: Scalar>(a: &MetricTwoStepAlgebra, x: &[R], y: &[R]) -> Matrix<R> {
    let (mx, my) = (a.j_of(x), a.j_of(y));
    &(&my * &mx) - &(&mx * &my)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarInvariants {
    #[serde(with = "serde_rational::option")]
    pub j_scalar: Option<Rational>,
    #[serde(with = "serde_rational::option")]
    pub b_scalar: Option<Rational>,
}

pub fn scalar_invariants(a: &MetricTwoStepAlgebra) -> ScalarInvariants {
    ScalarInvariants {
        j_scalar: geometry::endo_j(a).as_scalar_identity(),
        b_scalar: geometry::endo_b(a).as_scalar_identity(),
    }
}

/// Entry `(row, col)` of the matrix of `J ∘ j_k` that breaks skew-symmetry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeAWitness {
    pub index: usize,
    pub row: usize,
    pub col: usize,
}

pub fn type_a_witness(a: &MetricTwoStepAlgebra) -> Option<TypeAWitness> {
    let j = geometry::endo_j(a);
    a.j_maps().iter().enumerate().find_map(|(index, m)| {
        (m * &j)
            .skew_violation()
            .map(|(row, col)| TypeAWitness { index, row, col })
    })
}

/// Type A (cyclic parallel Ricci tensor) holds iff every `J ∘ j_{z_k}` is skew.
pub fn is_type_a(a: &MetricTwoStepAlgebra) -> bool {
    type_a_witness(a).is_none()
}

/// `λ(Z) = Σ q_ab Z_a Z_b` with `j_Z² = λ(Z)·Id`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaForm {
    #[serde(with = "serde_rational::matrix")]
    pub q: Vec<Vec<Rational>>,
}

impl LambdaForm {
    pub fn matrix(&self) -> RationalMatrix {
        Matrix::from_rows(self.q.clone())
    }

    pub fn eval(&self, z: &[Rational]) -> Rational {
        self.matrix().bilinear(z, z)
    }

    /// `λ` as a polynomial in `c1..cm`.
    pub fn polynomial(&self) -> Poly {
        let c = Poly::vars(self.q.len());
        self.matrix().lift::<Poly>().bilinear(&c, &c)
    }

    /// Sylvester's criterion on `-q`.
    pub fn is_negative_definite(&self) -> bool {
        let m = self.q.len();
        let neg = self.matrix().scale(&rat(-1));
        (1..=m).all(|k| determinant(&Matrix::from_fn(k, k, |i, j| neg[(i, j)].clone())).is_positive())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergClassification {
    /// `j_Z² = -|Z|²·Id` for all `Z`.
    pub heisenberg_type: bool,
    /// Present iff `j_Z² = λ(Z)·Id` with `λ(Z) < 0` for all `Z ≠ 0`.
    pub modified: Option<LambdaForm>,
    /// Present iff `j_Z²` is scalar for every `Z`, regardless of sign.
    pub scalar_square: Option<LambdaForm>,
}

/// Decides whether `j_Z²` is scalar for every `Z` from the finitely many
/// relations `j_a j_b + j_b j_a = 2 q_ab·Id`.
pub fn heisenberg_classification(a: &MetricTwoStepAlgebra) -> HeisenbergClassification {
    let m = a.dim_z();
    let maps = a.j_maps();
    let mut q = vec![vec![rat(0); m]; m];
    let mut scalar = m > 0;
    'outer: for p in 0..m {
        for r in p..m {
            let anti = maps[p].anticommutator(&maps[r]);
            match anti.as_scalar_identity() {
                Some(s) => {
                    let s = s.div_int(2);
                    q[p][r] = s.clone();
                    q[r][p] = s;
                }
                None => {
                    scalar = false;
                    break 'outer;
                }
            }
        }
    }
    let scalar_square = scalar.then_some(LambdaForm { q });
    let modified = scalar_square.as_ref().filter(|l| l.is_negative_definite()).cloned();
    let heisenberg_type = modified
        .as_ref()
        .is_some_and(|l| l.matrix() == RationalMatrix::scalar(m, rat(-1)));
    HeisenbergClassification {
        heisenberg_type,
        modified,
        scalar_square,
    }
}

/// Basis triple where `(∇_{e_x} ric)(e_y, e_z) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RicciWitness {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelRicciReport {
    pub parallel: bool,
    pub witness: Option<RicciWitness>,
    /// `D = 2C`, available when `J = C·Id` and `B = D·Id`.
    pub scalar_criterion: Option<bool>,
}

impl ParallelRicciReport {
    /// False only when both paths apply and disagree.
    pub fn paths_agree(&self) -> bool {
        self.scalar_criterion.is_none_or(|s| s == self.parallel)
    }
}

pub fn parallel_ricci_report(a: &MetricTwoStepAlgebra) -> ParallelRicciReport {
    let r = RicciData::new(a);
    let dim = a.dim();
    let basis: Vec<_> = (0..dim).map(|i| a.basis(i)).collect();
    let mut witness = None;
    'search: for x in 0..dim {
        for y in 0..dim {
            for z in y..dim {
                let value = r.nabla_ric(a, &basis[x], &basis[y], &basis[z]);
                if !value.is_zero() {
                    witness = Some(RicciWitness { x, y, z, value });
                    break 'search;
                }
            }
        }
    }
    let s = scalar_invariants(a);
    let scalar_criterion = match (s.j_scalar, s.b_scalar) {
        (Some(c), Some(d)) => Some(d == c * rat(2)),
        _ => None,
    };
    ParallelRicciReport {
        parallel: witness.is_none(),
        witness,
        scalar_criterion,
    }
}

pub fn has_parallel_ricci(a: &MetricTwoStepAlgebra) -> bool {
    parallel_ricci_report(a).parallel
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub type_a: bool,
    pub type_a_witness: Option<TypeAWitness>,
    pub heisenberg_type: bool,
    pub modified_heisenberg: Option<LambdaForm>,
    #[serde(with = "serde_rational::option")]
    pub scalar_j: Option<Rational>,
    #[serde(with = "serde_rational::option")]
    pub scalar_b: Option<Rational>,
    pub parallel_ricci: bool,
    pub parallel_ricci_witness: Option<RicciWitness>,
}

pub fn property_report(a: &MetricTwoStepAlgebra) -> PropertyReport {
    let h = heisenberg_classification(a);
    let s = scalar_invariants(a);
    let p = parallel_ricci_report(a);
    let w = type_a_witness(a);
    PropertyReport {
        type_a: w.is_none(),
        type_a_witness: w,
        heisenberg_type: h.heisenberg_type,
        modified_heisenberg: h.modified,
        scalar_j: s.j_scalar,
        scalar_b: s.b_scalar,
        parallel_ricci: p.parallel,
        parallel_ricci_witness: p.witness,
    }
}
