//! Sufficient lattice and eigenvalue criteria for two 2-step nilmanifolds
//! `(n, M ⊕ L)` and `(n', M' ⊕ L')` to be isospectral.
//!
//! 1. `j_Z` and `j'_Z` have the same eigenvalues for every `Z`.
//! 2. `[M, M] ⊆ 2L` for both.
//! 3. For every `Z ∈ L*`, `ker j_Z ∩ M` and `ker j'_Z ∩ M'` have equal length spectra.
//!
//! A pass on all three is reported as "isospectral by criterion"; a failure
//! only means the criteria do not establish isospectrality.

mod kernel;

use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use crate::algebra::io::AlgebraFile;
use crate::algebra::MetricTwoStepAlgebra;
use crate::error::AlgebraError;
use crate::exact::serde_rational;
use crate::exact::{charpoly, frac, rat, IntegerLattice, Poly, Rational, UniPoly};

pub use kernel::{criterion_kernel_lattices, KernelCheck, KernelMode, SampleRecord, StratumReport};

#[derive(Debug, Clone, PartialEq)]
pub struct NilmanifoldData {
    pub algebra: MetricTwoStepAlgebra,
    pub lattice_m: IntegerLattice,
    pub lattice_l: IntegerLattice,
}

impl NilmanifoldData {
    pub fn new(
        algebra: MetricTwoStepAlgebra,
        lattice_m: IntegerLattice,
        lattice_l: IntegerLattice,
    ) -> Result<Self, AlgebraError> {
        let (n, m) = (algebra.dim_v(), algebra.dim_z());
        if lattice_m.ambient_dim() != n || lattice_m.rank() != n {
            return Err(AlgebraError::InvalidLattice(format!(
                "M must be a full lattice in dimension {n}"
            )));
        }
        if lattice_l.ambient_dim() != m || lattice_l.rank() != m {
            return Err(AlgebraError::InvalidLattice(format!(
                "L must be a full lattice in dimension {m}"
            )));
        }
        Ok(NilmanifoldData {
            algebra,
            lattice_m,
            lattice_l,
        })
    }

    /// `M = Z^6`, `L = (½Z)^3` in dimensions `(6, 3)`; unit lattices otherwise.
    pub fn with_default_lattices(algebra: MetricTwoStepAlgebra) -> Self {
        Self::with_scales(algebra, None, None).expect("default scales are valid")
    }

    /// Diagonal lattices `⊕ Z·s_i e_i`; a missing side uses the default.
    pub fn with_scales(
        algebra: MetricTwoStepAlgebra,
        m_scale: Option<&[Rational]>,
        l_scale: Option<&[Rational]>,
    ) -> Result<Self, AlgebraError> {
        let (n, m) = (algebra.dim_v(), algebra.dim_z());
        let (dm, dl) = default_scales(n, m);
        let ms = m_scale.map(<[Rational]>::to_vec).unwrap_or(dm);
        let ls = l_scale.map(<[Rational]>::to_vec).unwrap_or(dl);
        let lattice_m = diagonal(&ms, n, "M")?;
        let lattice_l = diagonal(&ls, m, "L")?;
        Self::new(algebra, lattice_m, lattice_l)
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self, AlgebraError> {
        let spec = file.lattice.clone().unwrap_or_default();
        Self::with_scales(file.algebra.clone(), spec.m_scale.as_deref(), spec.l_scale.as_deref())
    }
}

fn default_scales(n: usize, m: usize) -> (Vec<Rational>, Vec<Rational>) {
    let half = if (n, m) == (6, 3) { frac(1, 2) } else { rat(1) };
    (vec![rat(1); n], vec![half; m])
}

fn diagonal(scales: &[Rational], dim: usize, name: &str) -> Result<IntegerLattice, AlgebraError> {
    if scales.len() != dim {
        return Err(AlgebraError::InvalidLattice(format!(
            "{name} needs {dim} scales, got {}",
            scales.len()
        )));
    }
    if scales.iter().any(|s| *s == rat(0)) {
        return Err(AlgebraError::InvalidLattice(format!("{name} scale is zero")));
    }
    Ok(IntegerLattice::diagonal(scales))
}

/// One `(squared length, count)` entry of a length spectrum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    #[serde(with = "serde_rational")]
    pub length_squared: Rational,
    pub count: usize,
}

pub(crate) fn spectrum_entries(s: Vec<(Rational, usize)>) -> Vec<SpectrumEntry> {
    s.into_iter()
        .map(|(length_squared, count)| SpectrumEntry { length_squared, count })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// A central vector where the characteristic polynomials differ.
    CentralVector {
        #[serde(with = "serde_rational::vec")]
        z: Vec<Rational>,
        charpoly_first: String,
        charpoly_second: String,
    },
    /// Generators `m_a`, `m_b` of side `side` (0 or 1) with `[m_a, m_b] ∉ 2L`.
    BracketOutsideLattice {
        side: usize,
        a: usize,
        b: usize,
        #[serde(with = "serde_rational::vec")]
        bracket: Vec<Rational>,
    },
    /// A dual-lattice vector whose kernel lattices have different length spectra.
    KernelSpectrum {
        #[serde(with = "serde_rational::vec")]
        z: Vec<Rational>,
        #[serde(with = "serde_rational")]
        bound: Rational,
        spectrum_first: Vec<SpectrumEntry>,
        spectrum_second: Vec<SpectrumEntry>,
    },
}

impl Witness {
    /// Recomputes the witness from scratch.
    pub fn recheck(&self, first: &NilmanifoldData, second: &NilmanifoldData) -> bool {
        match self {
            Witness::CentralVector { z, .. } => {
                let p = charpoly(&first.algebra.j_of(z));
                let q = charpoly(&second.algebra.j_of(z));
                matches!((p, q), (Ok(p), Ok(q)) if p != q)
            }
            Witness::BracketOutsideLattice { side, a, b, bracket } => {
                let d = if *side == 0 { first } else { second };
                let Some(pair) = bracket_of_generators(d, *a, *b) else {
                    return false;
                };
                pair == *bracket && !d.lattice_l.scaled(&rat(2)).contains(&pair)
            }
            Witness::KernelSpectrum { z, bound, .. } => {
                kernel::kernel_spectrum(first, z, bound) != kernel::kernel_spectrum(second, z, bound)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CriterionOutcome {
    Pass { evidence: String },
    Fail { witness: Witness },
    Inconclusive { reason: String },
}

impl CriterionOutcome {
    pub fn is_pass(&self) -> bool {
        matches!(self, CriterionOutcome::Pass { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            CriterionOutcome::Fail { witness } => Some(witness),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CriterionOutcome::Pass { .. } => "pass",
            CriterionOutcome::Fail { .. } => "fail",
            CriterionOutcome::Inconclusive { .. } => "inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct EigenvalueCheck {
    pub outcome: CriterionOutcome,
    pub charpoly_first: UniPoly<Poly>,
    pub charpoly_second: UniPoly<Poly>,
}

/// Integer points of `[-r, r]^m` ordered by max-norm, then 1-norm, then fewest
/// negative entries.
pub(crate) fn small_points(m: usize, r: i64, include_zero: bool) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..m {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    if !include_zero {
        pts.retain(|p| p.iter().any(|&x| x != 0));
    }
    pts.sort_by_key(|p| {
        let max = p.iter().map(|x| x.abs()).max().unwrap_or(0);
        let l1: i64 = p.iter().map(|x| x.abs()).sum();
        let neg = p.iter().filter(|&&x| x < 0).count();
        (max, l1, neg, Reverse(p.clone()))
    });
    pts
}

fn eval_charpoly(p: &UniPoly<Poly>, z: &[Rational]) -> UniPoly<Rational> {
    UniPoly::new(p.coeffs().iter().map(|c| c.eval(z)).collect())
}

/// Criterion (i): identity of `det(λ - j_Z)` and `det(λ - j'_Z)` as polynomials in
/// `λ` and the central coordinates. On failure a small integer `Z` separating
/// them is found; a grid with `n + 1` points per coordinate always contains one.
pub fn criterion_eigenvalues(
    a: &MetricTwoStepAlgebra,
    b: &MetricTwoStepAlgebra,
) -> Result<EigenvalueCheck, AlgebraError> {
    if (a.dim_v(), a.dim_z()) != (b.dim_v(), b.dim_z()) {
        return Err(AlgebraError::DimensionMismatch(format!(
            "({}, {}) vs ({}, {})",
            a.dim_v(),
            a.dim_z(),
            b.dim_v(),
            b.dim_z()
        )));
    }
    let c = Poly::vars(a.dim_z());
    let p = charpoly(&a.j_of(&c)).expect("j_Z is square");
    let q = charpoly(&b.j_of(&c)).expect("j_Z is square");
    let outcome = if p == q {
        CriterionOutcome::Pass {
            evidence: format!("det(λ - j_Z) = {p} for both"),
        }
    } else {
        let r = (a.dim_v() as i64 + 1) / 2;
        let witness = small_points(a.dim_z(), r, true)
            .into_iter()
            .map(|pt| pt.into_iter().map(rat).collect::<Vec<_>>())
            .find_map(|z| {
                let (pz, qz) = (eval_charpoly(&p, &z), eval_charpoly(&q, &z));
                (pz != qz).then(|| Witness::CentralVector {
                    z,
                    charpoly_first: pz.to_string(),
                    charpoly_second: qz.to_string(),
                })
            })
            .expect("distinct polynomials of degree <= n differ on the grid");
        CriterionOutcome::Fail { witness }
    };
    Ok(EigenvalueCheck {
        outcome,
        charpoly_first: p,
        charpoly_second: q,
    })
}

fn bracket_of_generators(d: &NilmanifoldData, a: usize, b: usize) -> Option<Vec<Rational>> {
    let basis = d.lattice_m.basis();
    Some(d.algebra.bracket_v(basis.get(a)?, basis.get(b)?))
}

/// Criterion (ii) for one nilmanifold: `[m_a, m_b] ∈ 2L` for all generators of `M`.
pub fn criterion_bracket_lattice(d: &NilmanifoldData) -> CriterionOutcome {
    bracket_lattice_side(d, 0)
}

fn bracket_lattice_side(d: &NilmanifoldData, side: usize) -> CriterionOutcome {
    let two_l = d.lattice_l.scaled(&rat(2));
    let n = d.lattice_m.rank();
    for a in 0..n {
        for b in a + 1..n {
            let bracket = bracket_of_generators(d, a, b).expect("generator indices in range");
            if !two_l.contains(&bracket) {
                return CriterionOutcome::Fail {
                    witness: Witness::BracketOutsideLattice { side, a, b, bracket },
                };
            }
        }
    }
    CriterionOutcome::Pass {
        evidence: format!("all {} generator brackets lie in 2L", n * n.saturating_sub(1) / 2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Overall {
    IsospectralByCriterion,
    NotEstablished,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsospectralVerdict {
    pub criterion_i: CriterionOutcome,
    pub criterion_ii: CriterionOutcome,
    pub criterion_iii: CriterionOutcome,
    pub overall: Overall,
    pub charpoly_first: String,
    pub charpoly_second: String,
    pub kernel_mode: KernelMode,
    pub strata: Vec<StratumReport>,
    pub sample: Option<SampleRecord>,
}

impl IsospectralVerdict {
    pub fn established(&self) -> bool {
        self.overall == Overall::IsospectralByCriterion
    }
}

pub fn gordon_wilson(
    first: &NilmanifoldData,
    second: &NilmanifoldData,
    mode: KernelMode,
    bound: &Rational,
) -> Result<IsospectralVerdict, AlgebraError> {
    let eig = criterion_eigenvalues(&first.algebra, &second.algebra)?;
    let criterion_ii = match bracket_lattice_side(first, 0) {
        CriterionOutcome::Pass { .. } => match bracket_lattice_side(second, 1) {
            CriterionOutcome::Pass { .. } => CriterionOutcome::Pass {
                evidence: "[M, M] ⊆ 2L and [M', M'] ⊆ 2L' on generators".into(),
            },
            other => other,
        },
        other => other,
    };
    let kernel = criterion_kernel_lattices(first, second, mode, bound);
    let all = eig.outcome.is_pass() && criterion_ii.is_pass() && kernel.outcome.is_pass();
    Ok(IsospectralVerdict {
        criterion_i: eig.outcome,
        criterion_ii,
        criterion_iii: kernel.outcome,
        overall: if all {
            Overall::IsospectralByCriterion
        } else {
            Overall::NotEstablished
        },
        charpoly_first: eig.charpoly_first.to_string(),
        charpoly_second: eig.charpoly_second.to_string(),
        kernel_mode: kernel.mode_used,
        strata: kernel.strata,
        sample: kernel.sample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::exact::DEFAULT_SPECTRUM_BOUND;

    fn quaternionic_pair() -> (NilmanifoldData, NilmanifoldData) {
        (
            NilmanifoldData::with_default_lattices(catalog::paper_nj()),
            NilmanifoldData::with_default_lattices(catalog::paper_njprime()),
        )
    }

    #[test]
    fn small_points_start_at_positive_unit_vectors() {
        let pts = small_points(2, 1, false);
        assert_eq!(pts.len(), 8);
        assert_eq!(pts[0], vec![1, 0]);
        assert_eq!(pts[1], vec![0, 1]);
        assert_eq!(small_points(1, 2, true)[..3], [vec![0], vec![1], vec![-1]]);
    }

    #[test]
    fn eigenvalue_witness_for_scaled_heisenberg() {
        let c = criterion_eigenvalues(&catalog::heisenberg(1), &catalog::heisenberg_scaled(2)).unwrap();
        let w = c.outcome.witness().expect("fail");
        match w {
            Witness::CentralVector { z, .. } => assert_eq!(z, &vec![rat(1)]),
            _ => panic!("wrong witness"),
        }
        let d1 = NilmanifoldData::with_default_lattices(catalog::heisenberg(1));
        let d2 = NilmanifoldData::with_default_lattices(catalog::heisenberg_scaled(2));
        assert!(w.recheck(&d1, &d2));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(criterion_eigenvalues(&catalog::heisenberg(1), &catalog::paper_nj()).is_err());
    }

    #[test]
    fn bracket_lattice_examples() {
        let (d, d2) = quaternionic_pair();
        assert!(criterion_bracket_lattice(&d).is_pass());
        assert!(criterion_bracket_lattice(&d2).is_pass());
        let quarter = vec![frac(1, 4); 3];
        let q = NilmanifoldData::with_scales(catalog::paper_nj(), None, Some(&quarter)).unwrap();
        assert!(criterion_bracket_lattice(&q).is_pass());
        let two = vec![rat(2); 3];
        let t = NilmanifoldData::with_scales(catalog::paper_nj(), None, Some(&two)).unwrap();
        let o = criterion_bracket_lattice(&t);
        assert!(o.witness().unwrap().recheck(&t, &t));
    }

    #[test]
    fn quaternionic_pair_is_isospectral_by_criterion() {
        let (d, d2) = quaternionic_pair();
        let v = gordon_wilson(&d, &d2, KernelMode::Symbolic, &rat(DEFAULT_SPECTRUM_BOUND)).unwrap();
        assert!(v.established(), "{v:?}");
        assert_eq!(v.strata.len(), 3);
        assert!(v.strata.iter().all(|s| s.verified));
    }

    #[test]
    fn coarse_central_lattice_is_not_established() {
        let two = vec![rat(2); 3];
        let d = NilmanifoldData::with_scales(catalog::paper_nj(), None, Some(&two)).unwrap();
        let d2 = NilmanifoldData::with_scales(catalog::paper_njprime(), None, Some(&two)).unwrap();
        let v = gordon_wilson(&d, &d2, KernelMode::Symbolic, &rat(16)).unwrap();
        assert_eq!(v.overall, Overall::NotEstablished);
        assert!(!v.criterion_ii.is_pass());
        assert!(v.criterion_i.is_pass());
    }

    #[test]
    fn invalid_lattices_are_rejected() {
        let a = catalog::paper_nj();
        assert!(NilmanifoldData::with_scales(a.clone(), Some(&[rat(1)]), None).is_err());
        assert!(NilmanifoldData::with_scales(a, None, Some(&[rat(0), rat(1), rat(1)])).is_err());
    }

    #[test]
    fn verdict_round_trips_through_json() {
        let (d, d2) = quaternionic_pair();
        let v = gordon_wilson(&d, &d2, KernelMode::Sampled, &rat(8)).unwrap();
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<IsospectralVerdict>(&s).unwrap(), v);
    }
}
