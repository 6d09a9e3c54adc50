//! Criterion (iii): kernel lattices `ker j_Z ∩ M` for `Z` in the dual of `L`.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{small_points, spectrum_entries, CriterionOutcome, NilmanifoldData, SpectrumEntry, Witness};
use crate::algebra::MetricTwoStepAlgebra;
use crate::exact::linalg::rref_on_stratum;
use crate::exact::serde_rational;
use crate::exact::{kernel_basis, Poly, Rational};

/// Coefficient range for sampled dual-lattice vectors.
pub const SAMPLE_RADIUS: i64 = 3;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KernelMode {
    /// Kernel equality on every stratum `c_1 = .. = c_{k-1} = 0, c_k ≠ 0`.
    #[default]
    Symbolic,
    /// Length spectra of kernel lattices at finitely many dual-lattice vectors.
    Sampled,
}

impl FromStr for KernelMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "symbolic" => Ok(KernelMode::Symbolic),
            "sampled" => Ok(KernelMode::Sampled),
            other => Err(format!("unknown mode {other:?} (expected symbolic or sampled)")),
        }
    }
}

impl fmt::Display for KernelMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KernelMode::Symbolic => "symbolic",
            KernelMode::Sampled => "sampled",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumReport {
    /// Zero-based index `k` of the first nonzero central coordinate.
    pub stratum: usize,
    pub condition: String,
    /// Kernel basis of `j_Z` over Laurent polynomials valid on the stratum.
    pub kernel_basis: Vec<Vec<String>>,
    pub rank_first: Option<usize>,
    pub rank_second: Option<usize>,
    /// `j'_Z` kills every kernel basis vector of `j_Z` identically.
    pub annihilated: bool,
    pub verified: bool,
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub coefficient_radius: i64,
    pub count: usize,
    #[serde(with = "serde_rational")]
    pub bound: Rational,
    /// Basis of `L*`; samples are integer combinations of these rows.
    #[serde(with = "serde_rational::matrix")]
    pub dual_basis: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelCheck {
    pub outcome: CriterionOutcome,
    pub mode_used: KernelMode,
    pub strata: Vec<StratumReport>,
    pub sample: Option<SampleRecord>,
}

fn condition(k: usize) -> String {
    let zeros: Vec<String> = (0..k).map(|i| format!("c{}", i + 1)).collect();
    let nonzero = format!("c{} != 0", k + 1);
    if zeros.is_empty() {
        nonzero
    } else {
        format!("{} = 0, {nonzero}", zeros.join(" = "))
    }
}

fn stratum_report(a: &MetricTwoStepAlgebra, b: &MetricTwoStepAlgebra, k: usize) -> StratumReport {
    let c: Vec<Poly> = (0..a.dim_z())
        .map(|i| if i < k { Poly::zero() } else { Poly::var(i) })
        .collect();
    let (ja, jb) = (a.j_of(&c), b.j_of(&c));
    let (ea, eb) = (rref_on_stratum(&ja, &[k]), rref_on_stratum(&jb, &[k]));
    let mut report = StratumReport {
        stratum: k,
        condition: condition(k),
        kernel_basis: Vec::new(),
        rank_first: (!ea.blocked).then(|| ea.rank()),
        rank_second: (!eb.blocked).then(|| eb.rank()),
        annihilated: false,
        verified: false,
        note: None,
    };
    if ea.blocked || eb.blocked {
        report.note = Some("elimination needs a pivot that may vanish on the stratum".into());
        return report;
    }
    let kernel = ea.free_variable_kernel();
    report.annihilated = kernel.iter().all(|v| jb.mul_vec(v).iter().all(Zero::is_zero));
    report.kernel_basis = kernel
        .iter()
        .map(|v| v.iter().map(ToString::to_string).collect())
        .collect();
    report.verified = report.annihilated && ea.rank() == eb.rank();
    if !report.verified {
        report.note = Some("kernels differ on the stratum".into());
    }
    report
}

/// `ker j_Z ∩ M` length spectrum up to squared length `bound`.
pub(crate) fn kernel_spectrum(d: &NilmanifoldData, z: &[Rational], bound: &Rational) -> Vec<SpectrumEntry> {
    let ker = kernel_basis(&d.algebra.j_of(z));
    spectrum_entries(d.lattice_m.intersect_subspace(&ker).length_spectrum(bound))
}

fn sampled(first: &NilmanifoldData, second: &NilmanifoldData, bound: &Rational) -> (CriterionOutcome, SampleRecord) {
    let dual = first.lattice_l.dual();
    let points = small_points(first.algebra.dim_z(), SAMPLE_RADIUS, false);
    let record = SampleRecord {
        coefficient_radius: SAMPLE_RADIUS,
        count: points.len(),
        bound: bound.clone(),
        dual_basis: dual.basis().to_vec(),
    };
    for coef in &points {
        let z = dual.point(coef);
        let s1 = kernel_spectrum(first, &z, bound);
        let s2 = kernel_spectrum(second, &z, bound);
        if s1 != s2 {
            let witness = Witness::KernelSpectrum {
                z,
                bound: bound.clone(),
                spectrum_first: s1,
                spectrum_second: s2,
            };
            return (CriterionOutcome::Fail { witness }, record);
        }
    }
    let evidence = format!(
        "length spectra agree at {} dual-lattice vectors (coefficients in [-{r}, {r}], squared length <= {bound})",
        points.len(),
        r = SAMPLE_RADIUS
    );
    (CriterionOutcome::Pass { evidence }, record)
}

/// Criterion (iii). Symbolic mode proves `ker j_Z = ker j'_Z` for every
/// `Z ≠ 0`, which with `M = M'` gives identical kernel lattices; when that
/// argument does not go through it falls back to sampling.
pub fn criterion_kernel_lattices(
    first: &NilmanifoldData,
    second: &NilmanifoldData,
    mode: KernelMode,
    bound: &Rational,
) -> KernelCheck {
    let (a, b) = (&first.algebra, &second.algebra);
    if (a.dim_v(), a.dim_z()) != (b.dim_v(), b.dim_z()) {
        return KernelCheck {
            outcome: CriterionOutcome::Inconclusive {
                reason: "the algebras have different dimensions".into(),
            },
            mode_used: mode,
            strata: Vec::new(),
            sample: None,
        };
    }
    if first.lattice_l.canonical() != second.lattice_l.canonical() {
        return KernelCheck {
            outcome: CriterionOutcome::Inconclusive {
                reason: "the central lattices differ, so there is no common dual lattice".into(),
            },
            mode_used: mode,
            strata: Vec::new(),
            sample: None,
        };
    }

    let mut strata = Vec::new();
    let mut fallback = None;
    if mode == KernelMode::Symbolic {
        strata = (0..a.dim_z()).map(|k| stratum_report(a, b, k)).collect();
        if let Some(s) = strata.iter().find(|s| !s.verified) {
            fallback = Some(format!("stratum {}: {}", s.condition, s.note.as_deref().unwrap_or("")));
        } else if first.lattice_m.canonical() != second.lattice_m.canonical() {
            fallback = Some("kernels agree but the lattices M differ".into());
        } else {
            return KernelCheck {
                outcome: CriterionOutcome::Pass {
                    evidence: format!("ker j_Z = ker j'_Z on all {} strata and M = M'", strata.len()),
                },
                mode_used: KernelMode::Symbolic,
                strata,
                sample: None,
            };
        }
    }

    let (outcome, record) = sampled(first, second, bound);
    let outcome = match (outcome, fallback) {
        (CriterionOutcome::Pass { evidence }, Some(why)) => CriterionOutcome::Pass {
            evidence: format!("{evidence}; sampled because {why}"),
        },
        (o, _) => o,
    };
    KernelCheck {
        outcome,
        mode_used: KernelMode::Sampled,
        strata,
        sample: Some(record),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use crate::exact::{frac, rat};
    use num_traits::One;

    fn data(a: MetricTwoStepAlgebra) -> NilmanifoldData {
        NilmanifoldData::with_default_lattices(a)
    }

    #[test]
    fn quaternionic_pair_strata() {
        let c = criterion_kernel_lattices(
            &data(catalog::paper_nj()),
            &data(catalog::paper_njprime()),
            KernelMode::Symbolic,
            &rat(16),
        );
        assert!(c.outcome.is_pass());
        assert_eq!(c.mode_used, KernelMode::Symbolic);
        let s0 = &c.strata[0];
        assert_eq!(s0.condition, "c1 != 0");
        assert_eq!(s0.rank_first, Some(4));
        assert_eq!(s0.kernel_basis.len(), 2);
        assert_eq!(c.strata[2].condition, "c1 = c2 = 0, c3 != 0");
    }

    #[test]
    fn first_stratum_kernel_is_the_expected_family() {
        let a = catalog::paper_nj();
        let c = Poly::vars(3);
        let e = rref_on_stratum(&a.j_of(&c), &[0]);
        assert!(!e.blocked);
        let ratio = |i: usize| Poly::var(i) * Poly::monomial(rat(1), &[-1]);
        let mut expected = vec![
            vec![
                Poly::one(),
                ratio(1),
                ratio(2),
                Poly::zero(),
                Poly::zero(),
                Poly::zero(),
            ],
            vec![
                Poly::zero(),
                Poly::zero(),
                Poly::zero(),
                Poly::one(),
                ratio(1),
                ratio(2),
            ],
        ];
        let mut got = e.free_variable_kernel();
        // Normalize each vector by its leading entry.
        for v in &mut got {
            let lead = v.iter().find(|x| !x.is_zero()).unwrap().monomial_inverse().unwrap();
            for x in v.iter_mut() {
                *x = &*x * &lead;
            }
        }
        got.sort_by_key(|v| v.iter().position(|x| !x.is_zero()));
        expected.sort_by_key(|v| v.iter().position(|x| !x.is_zero()));
        assert_eq!(got, expected);
    }

    #[test]
    fn sampled_mode_agrees_on_quaternionic_pair() {
        let c = criterion_kernel_lattices(
            &data(catalog::paper_nj()),
            &data(catalog::paper_njprime()),
            KernelMode::Sampled,
            &rat(16),
        );
        assert!(c.outcome.is_pass());
        let s = c.sample.unwrap();
        assert_eq!(s.count, 342);
        assert_eq!(s.dual_basis[0], vec![rat(2), rat(0), rat(0)]);
    }

    #[test]
    fn differing_kernels_fail_with_rechecked_witness() {
        let d = data(catalog::paper_nj());
        let r = data(catalog::random_algebra(11, 6, 3, 3));
        let c = criterion_kernel_lattices(&d, &r, KernelMode::Symbolic, &rat(16));
        let w = c.outcome.witness().expect("fail");
        assert!(w.recheck(&d, &r));
        assert_eq!(c.mode_used, KernelMode::Sampled);
    }

    #[test]
    fn different_central_lattices_are_inconclusive() {
        let d = data(catalog::paper_nj());
        let e = NilmanifoldData::with_scales(catalog::paper_nj(), None, Some(&[frac(1, 4), frac(1, 4), frac(1, 4)]))
            .unwrap();
        let c = criterion_kernel_lattices(&d, &e, KernelMode::Symbolic, &rat(16));
        assert!(matches!(c.outcome, CriterionOutcome::Inconclusive { .. }));
    }

    #[test]
    fn mode_parses() {
        assert_eq!("sampled".parse::<KernelMode>(), Ok(KernelMode::Sampled));
        assert!("other".parse::<KernelMode>().is_err());
    }
}
