//! Seeded random algebras checked against the definition oracles and the
//! algebraic symmetries of the curvature tensor.

use std::thread;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use nilgeo_core::algebra::catalog::random_algebra;
use nilgeo_core::algebra::io::algebra_to_json;
use nilgeo_core::exact::{rat, Rational};
use nilgeo_core::geometry::{self, compare_with_oracle};
use nilgeo_core::MetricTwoStepAlgebra;

/// Entry bound passed to the random generator.
pub const COEFF_BOUND: u32 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub case: usize,
    pub case_seed: u64,
    pub check: String,
    pub indices: Vec<usize>,
    /// The offending algebra in the input file format.
    pub algebra: Value,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzSummary {
    pub seed: u64,
    pub count: usize,
    pub n: usize,
    pub m: usize,
    pub checks: usize,
    pub discrepancies: Vec<Discrepancy>,
}

pub fn case_seed(seed: u64, case: usize) -> u64 {
    seed.wrapping_mul(1_000_003).wrapping_add(case as u64)
}

/// `⟨R(e_x, e_y) e_z, e_w⟩` for all basis quadruples.
fn curvature_tensor(a: &MetricTwoStepAlgebra) -> Vec<Vec<Vec<Vec<Rational>>>> {
    let d = a.dim();
    let b: Vec<_> = (0..d).map(|i| a.basis(i)).collect();
    (0..d)
        .map(|x| {
            (0..d)
                .map(|y| {
                    (0..d)
                        .map(|z| geometry::curvature(a, &b[x], &b[y], &b[z]).to_full())
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Returns `(checks, failures)` where a failure is `(check name, indices)`.
fn check_case(a: &MetricTwoStepAlgebra) -> (usize, Vec<(String, Vec<usize>)>) {
    let mut checks = 0;
    let mut failures = Vec::new();
    let oracle = compare_with_oracle(a);
    checks += oracle.checks;
    failures.extend(oracle.mismatches.into_iter().map(|m| (m.quantity, m.indices)));

    let r = curvature_tensor(a);
    let d = a.dim();
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let bianchi: Vec<Rational> = (0..d)
                    .map(|w| &r[x][y][z][w] + &r[y][z][x][w] + &r[z][x][y][w])
                    .collect();
                checks += 1;
                if bianchi.iter().any(|v| *v != rat(0)) {
                    failures.push(("first-bianchi".into(), vec![x, y, z]));
                }
                for w in 0..d {
                    let v = &r[x][y][z][w];
                    let tests = [
                        ("antisymmetry-xy", *v == -r[y][x][z][w].clone()),
                        ("antisymmetry-zw", *v == -r[x][y][w][z].clone()),
                        ("pair-symmetry", *v == r[z][w][x][y]),
                    ];
                    for (name, ok) in tests {
                        checks += 1;
                        if !ok {
                            failures.push((name.into(), vec![x, y, z, w]));
                        }
                    }
                }
            }
        }
    }
    let tr_j = geometry::endo_j(a).trace();
    let tr_b = geometry::endo_b(a).trace();
    checks += 2;
    if tr_j != -tr_b.clone() {
        failures.push(("trace-j-equals-minus-trace-b".into(), Vec::new()));
    }
    let ric_sum: Rational = (0..d)
        .map(|i| {
            let e = a.basis(i);
            geometry::ricci_tensor(a, &e, &e)
        })
        .sum();
    if ric_sum != -tr_b / rat(4) || ric_sum != geometry::scalar_curvature(a) {
        failures.push(("scalar-curvature".into(), Vec::new()));
    }
    (checks, failures)
}

/// Runs `count` cases on worker threads; results are merged by case index so
/// the summary does not depend on scheduling.
pub fn fuzz(seed: u64, count: usize, n: usize, m: usize) -> FuzzSummary {
    let workers = thread::available_parallelism().map_or(1, |p| p.get()).min(count.max(1));
    let mut results: Vec<(usize, usize, Vec<Discrepancy>)> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                s.spawn(move || {
                    (w..count)
                        .step_by(workers)
                        .map(|case| {
                            let cs = case_seed(seed, case);
                            let a = random_algebra(cs, n, m, COEFF_BOUND);
                            let (checks, failures) = check_case(&a);
                            let ds = failures
                                .into_iter()
                                .map(|(check, indices)| Discrepancy {
                                    case,
                                    case_seed: cs,
                                    check,
                                    indices,
                                    algebra: algebra_to_json(&a, Some(&format!("fuzz-{seed}-{case}"))),
                                })
                                .collect();
                            (case, checks, ds)
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("fuzz worker panicked"))
            .collect()
    });
    results.sort_by_key(|r| r.0);
    FuzzSummary {
        seed,
        count,
        n,
        m,
        checks: results.iter().map(|r| r.1).sum(),
        discrepancies: results.into_iter().flat_map(|r| r.2).collect(),
    }
}
