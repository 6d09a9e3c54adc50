use serde::{Deserialize, Serialize};

use nilgeo_core::abelian::{coordinate_abelian_census, AbelianReport};
use nilgeo_core::classify::{
    naturally_reductive_structure, parallel_ricci_report, property_report, scalar_invariants, NaturallyReductive,
    ParallelRicciReport, PropertyReport, ScalarInvariants,
};
use nilgeo_core::geometry::{compare_with_oracle, OracleMismatch};
use nilgeo_core::isospectral::IsospectralVerdict;
use nilgeo_core::MetricTwoStepAlgebra;

/// Largest `dim v` for which the full abelian census is included.
pub const CENSUS_MAX_DIM: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraIdentity {
    pub name: Option<String>,
    pub source: String,
    pub dim_v: usize,
    pub dim_z: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub closed_form_checks: usize,
    pub closed_form_mismatches: Vec<OracleMismatch>,
    /// Identity instances checked while verifying a homogeneous structure.
    pub homogeneous_instances: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagnosticReport {
    pub identity: AlgebraIdentity,
    pub properties: PropertyReport,
    pub scalars: ScalarInvariants,
    pub parallel_ricci: ParallelRicciReport,
    pub naturally_reductive: NaturallyReductive,
    pub oracle: OracleSummary,
    pub isospectral: Option<IsospectralVerdict>,
    pub abelian_census: Option<Vec<AbelianReport>>,
}

pub fn build_report(name: Option<String>, source: String, a: &MetricTwoStepAlgebra) -> DiagnosticReport {
    let nr = naturally_reductive_structure(a);
    let homogeneous_instances = match &nr {
        NaturallyReductive::Structure(s) => s.verification.checks.iter().map(|c| c.instances).sum(),
        NaturallyReductive::Obstruction(o) => o.failed_identity.as_ref().map_or(0, |c| c.instances),
        NaturallyReductive::Inapplicable { .. } => 0,
    };
    let oracle = compare_with_oracle(a);
    DiagnosticReport {
        identity: AlgebraIdentity {
            name,
            source,
            dim_v: a.dim_v(),
            dim_z: a.dim_z(),
        },
        properties: property_report(a),
        scalars: scalar_invariants(a),
        parallel_ricci: parallel_ricci_report(a),
        naturally_reductive: nr,
        oracle: OracleSummary {
            closed_form_checks: oracle.checks,
            closed_form_mismatches: oracle.mismatches,
            homogeneous_instances,
        },
        isospectral: None,
        abelian_census: (a.dim_v() <= CENSUS_MAX_DIM)
            .then(|| (1..=a.dim_v()).map(|w| coordinate_abelian_census(a, w)).collect()),
    }
}
