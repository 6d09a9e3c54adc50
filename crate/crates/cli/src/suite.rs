//! Replication suite for the 9-dimensional pair `n(j)`, `n(j')`. Every row
//! compares a hard-coded expectation with a fresh computation on the algebras
//! passed in, so a corrupted input shows up as a failing row.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use nilgeo_core::abelian::{coordinate_abelian_census, nonisomorphism_evidence};
use nilgeo_core::classify::{
    heisenberg_classification, is_type_a, naturally_reductive_structure, parallel_ricci_report, scalar_invariants,
    verify_homogeneous_structure, HomogeneousStructure, Identity, ObstructionKind,
};
use nilgeo_core::exact::linalg::rref_on_stratum;
use nilgeo_core::exact::DEFAULT_SPECTRUM_BOUND;
use nilgeo_core::exact::{charpoly, frac, rat, IntegerLattice, Matrix, Poly, Rational, UniPoly};
use nilgeo_core::geometry;
use nilgeo_core::isospectral::{gordon_wilson, KernelMode, NilmanifoldData};
use nilgeo_core::{MetricTwoStepAlgebra, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub id: String,
    /// The claim being checked, stated with the expected value.
    pub claim: String,
    pub observed: String,
    pub pass: bool,
}

/// `(row, col, sign, variable)`: nonzero entries of `j_C` for `C = (c1, c2, c3)`.
#[rustfmt::skip]
const NJ_ENTRIES: [(usize, usize, i64, usize); 12] = [
    (0, 1, 1, 2), (0, 2, -1, 1), (1, 0, -1, 2), (1, 2, 1, 0), (2, 0, 1, 1), (2, 1, -1, 0),
    (3, 4, 1, 2), (3, 5, -1, 1), (4, 3, -1, 2), (4, 5, 1, 0), (5, 3, 1, 1), (5, 4, -1, 0),
];
#[rustfmt::skip]
const NJP_ENTRIES: [(usize, usize, i64, usize); 12] = [
    (0, 4, -1, 2), (0, 5, 1, 1), (1, 3, 1, 2), (1, 5, -1, 0), (2, 3, -1, 1), (2, 4, 1, 0),
    (3, 1, -1, 2), (3, 2, 1, 1), (4, 0, 1, 2), (4, 2, -1, 0), (5, 0, -1, 1), (5, 1, 1, 0),
];

/// `(a, b, sign, k)`: `[v_a, v_b] = sign·z_k`; all other brackets of basis vectors vanish.
#[rustfmt::skip]
const NJ_BRACKETS: [(usize, usize, i64, usize); 6] =
    [(0, 1, 1, 2), (0, 2, -1, 1), (1, 2, 1, 0), (3, 4, 1, 2), (3, 5, -1, 1), (4, 5, 1, 0)];
#[rustfmt::skip]
const NJP_BRACKETS: [(usize, usize, i64, usize); 6] =
    [(0, 4, -1, 2), (3, 1, -1, 2), (0, 5, 1, 1), (3, 2, 1, 1), (1, 5, -1, 0), (4, 2, -1, 0)];

const V_NAMES: [&str; 6] = ["X_i", "X_j", "X_k", "Y_i", "Y_j", "Y_k"];
const Z_NAMES: [&str; 3] = ["Z_i", "Z_j", "Z_k"];

fn row(id: &str, claim: impl Into<String>, pass: bool, observed: impl Into<String>) -> SuiteRow {
    SuiteRow {
        id: id.into(),
        claim: claim.into(),
        observed: observed.into(),
        pass,
    }
}

fn expected_j(entries: &[(usize, usize, i64, usize)]) -> Matrix<Poly> {
    let c = Poly::vars(3);
    let mut m = Matrix::zeros(6, 6);
    for &(r, col, s, k) in entries {
        m[(r, col)] = c[k].scale(&rat(s));
    }
    m
}

fn expected_brackets(table: &[(usize, usize, i64, usize)]) -> Vec<Vec<Vec<Rational>>> {
    let mut t = vec![vec![vec![rat(0); 3]; 6]; 6];
    for &(a, b, s, k) in table {
        t[a][b][k] = rat(s);
        t[b][a][k] = rat(-s);
    }
    t
}

fn bracket_mismatch(a: &MetricTwoStepAlgebra, table: &[(usize, usize, i64, usize)]) -> Option<String> {
    let expected = expected_brackets(table);
    let got = a.structure_constants();
    for p in 0..6 {
        for q in p + 1..6 {
            if got[p][q] != expected[p][q] {
                return Some(format!("[{}, {}] differs", V_NAMES[p], V_NAMES[q]));
            }
        }
    }
    None
}

fn square_of_basis(k: usize) -> RationalMatrix {
    RationalMatrix::diagonal(&(0..6).map(|i| rat(if i % 3 == k { 0 } else { -1 })).collect::<Vec<_>>())
}

/// `j_C²` with entries `-(|C|² - c_a²)` on the diagonal and `c_a c_b` off it, in both blocks.
fn expected_square() -> Matrix<Poly> {
    let c = Poly::vars(3);
    let norm = &c[0] * &c[0] + &c[1] * &c[1] + &c[2] * &c[2];
    Matrix::from_fn(6, 6, |r, s| {
        if r / 3 != s / 3 {
            Poly::zero()
        } else if r == s {
            -(norm.clone() - &c[r % 3] * &c[r % 3])
        } else {
            &c[r % 3] * &c[s % 3]
        }
    })
}

/// `λ²(λ² + c1² + c2² + c3²)²`
fn expected_charpoly() -> UniPoly<Poly> {
    let c = Poly::vars(3);
    let s = &c[0] * &c[0] + &c[1] * &c[1] + &c[2] * &c[2];
    UniPoly::new(vec![
        Poly::zero(),
        Poly::zero(),
        &s * &s,
        Poly::zero(),
        s.scale(&rat(2)),
        Poly::zero(),
        Poly::one(),
    ])
}

/// Kernel family on the stratum `c_1 = .. = c_{k-1} = 0, c_k ≠ 0`: in each block,
/// `e_k + Σ_{i>k} (c_i / c_k) e_i`.
fn kernel_family(k: usize) -> Vec<Vec<Poly>> {
    let inv = Poly::monomial(
        rat(1),
        &(0..=k).map(|i| if i == k { -1 } else { 0 }).collect::<Vec<_>>(),
    );
    (0..2)
        .map(|block| {
            let mut v = vec![Poly::zero(); 6];
            v[3 * block + k] = Poly::one();
            for i in k + 1..3 {
                v[3 * block + i] = &Poly::var(i) * &inv;
            }
            v
        })
        .collect()
}

fn stratum_point(k: usize) -> Vec<Poly> {
    (0..3)
        .map(|i| if i < k { Poly::zero() } else { Poly::var(i) })
        .collect()
}

fn kernel_stratum_ok(nj: &MetricTwoStepAlgebra, njp: &MetricTwoStepAlgebra, k: usize) -> bool {
    let c = stratum_point(k);
    let family = kernel_family(k);
    [nj, njp].iter().all(|a| {
        let m = a.j_of(&c);
        let e = rref_on_stratum(&m, &[k]);
        !e.blocked && e.rank() == 4 && family.iter().all(|v| m.mul_vec(v).iter().all(Zero::is_zero))
    })
}

fn cross_product_table(sign: i64) -> Vec<Vec<Vec<Rational>>> {
    let mut t = vec![vec![vec![rat(0); 3]; 3]; 3];
    for (p, q, r) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        t[p][q][r] = rat(sign);
        t[q][p][r] = rat(-sign);
    }
    t
}

fn flag(ok: bool) -> &'static str {
    if ok {
        "as expected"
    } else {
        "mismatch"
    }
}

/// Runs every check on the given pair. The expected values are those of the
/// quaternionic pair with `M = Z^6` and `L = (½Z)^3`.
pub fn paper_suite(nj: &MetricTwoStepAlgebra, njp: &MetricTwoStepAlgebra) -> Vec<SuiteRow> {
    let mut rows = Vec::new();
    if (nj.dim_v(), nj.dim_z(), njp.dim_v(), njp.dim_z()) != (6, 3, 6, 3) {
        rows.push(row(
            "dimensions",
            "both algebras have dim v = 6, dim z = 3",
            false,
            "wrong dimensions",
        ));
        return rows;
    }
    let c = Poly::vars(3);

    let ok = nj.j_of(&c) == expected_j(&NJ_ENTRIES);
    rows.push(row(
        "j-matrix",
        "j_C of n(j) is the displayed 6x6 array in c1, c2, c3",
        ok,
        flag(ok),
    ));
    let ok = njp.j_of(&c) == expected_j(&NJP_ENTRIES);
    rows.push(row(
        "j'-matrix",
        "j'_C of n(j') is the displayed 6x6 array in c1, c2, c3",
        ok,
        flag(ok),
    ));

    let m = bracket_mismatch(nj, &NJ_BRACKETS);
    rows.push(row(
        "bracket-table",
        "n(j): [X_i,X_j] = [Y_i,Y_j] = Z_k, [X_i,X_k] = [Y_i,Y_k] = -Z_j, [X_j,X_k] = [Y_j,Y_k] = Z_i, others zero",
        m.is_none(),
        m.unwrap_or_else(|| "as expected".into()),
    ));
    let m = bracket_mismatch(njp, &NJP_BRACKETS);
    rows.push(row(
        "bracket-table'",
        "n(j'): [X_i,Y_j] = -Z_k, [X_i,Y_k] = Z_j, [X_j,Y_k] = -Z_i, [Y_a,X_b] = [X_a,Y_b] as forced by j'_C(L,R) = (Im(RC), Im(LC)), others zero",
        m.is_none(),
        m.unwrap_or_else(|| "as expected".into()),
    ));

    let bad: Vec<String> = (0..3)
        .filter(|&k| nj.j_squared(&unit(k)) != square_of_basis(k) || njp.j_squared(&unit(k)) != square_of_basis(k))
        .map(|k| Z_NAMES[k].to_string())
        .collect();
    rows.push(row(
        "j-squared-basis",
        "(j_Z_i)² = (j'_Z_i)² = diag(0,-1,-1,0,-1,-1) and cyclically",
        bad.is_empty(),
        if bad.is_empty() {
            "as expected".into()
        } else {
            format!("differs at {}", bad.join(", "))
        },
    ));
    let sq = expected_square();
    let ok = nj.j_squared(&c) == sq && njp.j_squared(&c) == sq;
    rows.push(row(
        "j-squared-symbolic",
        "(j_C)² = (j'_C)² with diagonal -(|C|² - c_a²) and off-diagonal c_a c_b, not -|C|² Id",
        ok,
        flag(ok),
    ));
    let (h, hp) = (heisenberg_classification(nj), heisenberg_classification(njp));
    let ok = !h.heisenberg_type && h.modified.is_none() && !hp.heisenberg_type && hp.modified.is_none();
    rows.push(row(
        "not-heisenberg",
        "neither algebra is of Heisenberg type or modified Heisenberg type",
        ok,
        format!(
            "H-type: {} / {}, modified: {} / {}",
            h.heisenberg_type,
            hp.heisenberg_type,
            h.modified.is_some(),
            hp.modified.is_some()
        ),
    ));

    let (s, sp) = (scalar_invariants(nj), scalar_invariants(njp));
    let show = |x: &Option<Rational>| x.as_ref().map_or("not scalar".to_string(), |q| q.to_string());
    let ok = s.j_scalar == Some(rat(-2)) && sp.j_scalar == Some(rat(-2));
    rows.push(row(
        "endo-J",
        "J = -2 Id on v for both",
        ok,
        format!("{} / {}", show(&s.j_scalar), show(&sp.j_scalar)),
    ));
    let ok = s.b_scalar == Some(rat(4)) && sp.b_scalar == Some(rat(4));
    rows.push(row(
        "endo-B",
        "B = 4 Id on z for both",
        ok,
        format!("{} / {}", show(&s.b_scalar), show(&sp.b_scalar)),
    ));
    let ok = is_type_a(nj) && is_type_a(njp);
    rows.push(row("type-A", "both are of Type A", ok, flag(ok)));
    let (r, rp) = (parallel_ricci_report(nj), parallel_ricci_report(njp));
    let ok = !r.parallel && !rp.parallel && r.paths_agree() && rp.paths_agree();
    rows.push(row(
        "parallel-ricci",
        "neither has parallel Ricci tensor (D = 4 != 2C = -4)",
        ok,
        format!("parallel: {} / {}", r.parallel, rp.parallel),
    ));
    let ok = geometry::scalar_curvature(nj) == rat(-3) && geometry::scalar_curvature(njp) == rat(-3);
    rows.push(row(
        "scalar-curvature",
        "scalar curvature -¼ tr B = -3 for both",
        ok,
        flag(ok),
    ));

    let nr = naturally_reductive_structure(nj);
    let (ok, observed) = match nr.structure() {
        Some(st) => {
            let cross = st.central_bracket == cross_product_table(1);
            (
                cross && st.verification.all_pass(),
                format!(
                    "structure found, central bracket {} the cross product, verification {}",
                    if cross { "equals" } else { "differs from" },
                    if st.verification.all_pass() { "passes" } else { "fails" }
                ),
            )
        }
        None => (false, "no structure".into()),
    };
    rows.push(row(
        "nr-structure",
        "n(j) is naturally reductive: T̃(Z_i,Z_j) = Z_k cyclically with T̄ = 0, all Ambrose-Singer identities hold",
        ok,
        observed,
    ));
    let opposite = HomogeneousStructure::from_central_bracket(nj, &cross_product_table(-1));
    let rep = verify_homogeneous_structure(nj, &opposite);
    let ok = !rep.get(Identity::TorsionParallel).passed() && !rep.get(Identity::CommutatorCompatibility).passed();
    rows.push(row(
        "nr-sign",
        "the opposite sign T̃(Z_i,Z_j) = -Z_k violates ∇̃T = 0 and the j-commutator relation",
        ok,
        flag(ok),
    ));
    let nrp = naturally_reductive_structure(njp);
    let (ok, observed) = match nrp.obstruction() {
        Some(o) => (
            o.kind == ObstructionKind::CommutatorOutsideImage && o.pair == Some((0, 1)) && o.recheck(njp),
            format!("{:?} at {:?}", o.kind, o.pair),
        ),
        None => (false, "no obstruction".into()),
    };
    rows.push(row(
        "nr-obstruction",
        "n(j') is not naturally reductive: j'_Z_i j'_Z_j - j'_Z_j j'_Z_i is not of the form j'_W",
        ok,
        observed,
    ));

    let pn = charpoly(&nj.j_of(&c)).ok();
    let pp = charpoly(&njp.j_of(&c)).ok();
    let target = expected_charpoly();
    let ok = pn.as_ref() == Some(&target) && pp.as_ref() == Some(&target);
    rows.push(row(
        "criterion-i",
        "det(λ - j_C) = det(λ - j'_C) = λ²(λ² + c1² + c2² + c3²)²",
        ok,
        pn.map_or("charpoly failed".into(), |p| p.to_string()),
    ));
    let l = IntegerLattice::diagonal(&[frac(1, 2), frac(1, 2), frac(1, 2)]);
    let ok = l.dual().canonical() == IntegerLattice::diagonal(&[rat(2), rat(2), rat(2)]).canonical();
    rows.push(row("dual-lattice", "the dual of L = (½Z)³ is (2Z)³", ok, flag(ok)));
    for k in 0..3 {
        let ok = kernel_stratum_ok(nj, njp, k);
        let cond = match k {
            0 => "c1 != 0",
            1 => "c1 = 0, c2 != 0",
            _ => "c1 = c2 = 0, c3 != 0",
        };
        rows.push(row(
            &format!("kernel-stratum-{}", k + 1),
            format!("for {cond}, ker j_C = ker j'_C is spanned by e_k + Σ (c_i/c_k) e_i in each block"),
            ok,
            flag(ok),
        ));
    }
    let d = NilmanifoldData::with_default_lattices(nj.clone());
    let dp = NilmanifoldData::with_default_lattices(njp.clone());
    match gordon_wilson(&d, &dp, KernelMode::Symbolic, &rat(DEFAULT_SPECTRUM_BOUND)) {
        Ok(v) => {
            rows.push(row(
                "criterion-ii",
                "[M, M] ⊆ 2L for both with M = Z^6, L = (½Z)³",
                v.criterion_ii.is_pass(),
                v.criterion_ii.label(),
            ));
            rows.push(row(
                "criterion-iii",
                "kernel lattices coincide for every Z in L*",
                v.criterion_iii.is_pass(),
                v.criterion_iii.label(),
            ));
            rows.push(row(
                "isospectral",
                "the nilmanifolds are isospectral by criterion",
                v.established(),
                format!("{:?}", v.overall),
            ));
        }
        Err(e) => rows.push(row(
            "isospectral",
            "the nilmanifolds are isospectral by criterion",
            false,
            e.to_string(),
        )),
    }

    let two = coordinate_abelian_census(nj, 2);
    let ok = two.count == 9 && two.subsets.iter().all(|s| s[0] < 3 && s[1] >= 3);
    rows.push(row(
        "abelian-nj",
        "n(j) has nine coordinate abelian subalgebras span{X_a, Y_b} ⊕ z",
        ok,
        format!("{} found", two.count),
    ));
    let three = coordinate_abelian_census(nj, 3);
    rows.push(row(
        "abelian-nj-3",
        "n(j) has no coordinate abelian subalgebra W ⊕ z with dim W = 3",
        three.count == 0,
        format!("{} found", three.count),
    ));
    let p3 = coordinate_abelian_census(njp, 3);
    let ok = p3.subsets == vec![vec![0, 1, 2], vec![3, 4, 5]];
    rows.push(row(
        "abelian-nj'",
        "n(j') has exactly two coordinate abelian subalgebras span{X} ⊕ z and span{Y} ⊕ z with dim W = 3",
        ok,
        format!("{} found", p3.count),
    ));
    let ev = nonisomorphism_evidence(nj, njp);
    let ok = ev.as_ref().is_ok_and(|e| e.distinguished_at == Some(3));
    rows.push(row(
        "non-isomorphic",
        "coordinate abelian censuses distinguish n(j) from n(j') at dim W = 3",
        ok,
        ev.map_or_else(|e| e.to_string(), |e| e.summary),
    ));
    rows
}

fn unit(k: usize) -> Vec<Rational> {
    (0..3).map(|i| rat((i == k) as i64)).collect()
}
