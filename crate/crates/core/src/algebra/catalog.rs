//! Named algebras: Heisenberg, quaternionic H-type, the isospectral 9-dimensional
//! pair `n(j)` / `n(j')`, abelian algebras, and seeded random algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MetricTwoStepAlgebra;
use crate::exact::{frac, rat, Matrix, RationalMatrix, Scalar};

/// Basis labels of `n(j)` and `n(j')` in index order.
pub const PAIR_V_LABELS: [&str; 6] = ["X_i", "X_j", "X_k", "Y_i", "Y_j", "Y_k"];
pub const PAIR_Z_LABELS: [&str; 3] = ["Z_i", "Z_j", "Z_k"];

/// Label of basis vector `idx` of a 9-dimensional pair algebra.
pub fn pair_label(idx: usize) -> &'static str {
    if idx < 6 {
        PAIR_V_LABELS[idx]
    } else {
        PAIR_Z_LABELS[idx - 6]
    }
}

/// Generic label `v1..vn, z1..zm` for basis vector `idx`.
pub fn generic_label(dim_v: usize, idx: usize) -> String {
    if idx < dim_v {
        format!("v{}", idx + 1)
    } else {
        format!("z{}", idx - dim_v + 1)
    }
}

/// `j_C` of `n(j)`: on `v = H* ⊕ H*`, `j_C(L, R) = (Im(C L), Im(C R))`.
pub fn nj_matrix<R: Scalar>(c: &[R]) -> Matrix<R> {
    let (c1, c2, c3) = (c[0].clone(), c[1].clone(), c[2].clone());
    let z = R::zero;
    let block = |o: usize, m: &mut Matrix<R>| {
        m[(o, o + 1)] = c3.clone();
        m[(o, o + 2)] = -c2.clone();
        m[(o + 1, o)] = -c3.clone();
        m[(o + 1, o + 2)] = c1.clone();
        m[(o + 2, o)] = c2.clone();
        m[(o + 2, o + 1)] = -c1.clone();
    };
    let mut m = Matrix::from_fn(6, 6, |_, _| z());
    block(0, &mut m);
    block(3, &mut m);
    m
}

/// `j'_C` of `n(j')`: `j'_C(L, R) = (Im(R C), Im(L C))`.
pub fn njprime_matrix<R: Scalar>(c: &[R]) -> Matrix<R> {
    let (c1, c2, c3) = (c[0].clone(), c[1].clone(), c[2].clone());
    let mut m = Matrix::from_fn(6, 6, |_, _| R::zero());
    m[(0, 4)] = -c3.clone();
    m[(0, 5)] = c2.clone();
    m[(1, 3)] = c3.clone();
    m[(1, 5)] = -c1.clone();
    m[(2, 3)] = -c2.clone();
    m[(2, 4)] = c1.clone();
    m[(3, 1)] = -c3.clone();
    m[(3, 2)] = c2.clone();
    m[(4, 0)] = c3.clone();
    m[(4, 2)] = -c1.clone();
    m[(5, 0)] = -c2.clone();
    m[(5, 1)] = c1;
    m
}

fn unit(k: usize, m: usize) -> Vec<crate::exact::Rational> {
    (0..m).map(|i| rat((i == k) as i64)).collect()
}

/// The algebra `n(j)` (6 + 3 dimensional).
pub fn paper_nj() -> MetricTwoStepAlgebra {
    let j = (0..3).map(|k| nj_matrix(&unit(k, 3))).collect();
    MetricTwoStepAlgebra::from_j_maps(6, 3, j).expect("n(j) matrices are skew")
}

/// The algebra `n(j')` (6 + 3 dimensional).
pub fn paper_njprime() -> MetricTwoStepAlgebra {
    let j = (0..3).map(|k| njprime_matrix(&unit(k, 3))).collect();
    MetricTwoStepAlgebra::from_j_maps(6, 3, j).expect("n(j') matrices are skew")
}

fn rotation_blocks(k: usize, scale: i64) -> RationalMatrix {
    let mut m = Matrix::zeros(2 * k, 2 * k);
    for b in 0..k {
        m[(2 * b, 2 * b + 1)] = rat(scale);
        m[(2 * b + 1, 2 * b)] = rat(-scale);
    }
    m
}

/// Heisenberg algebra `h_{2k+1}`: `n = 2k`, `m = 1`, `j = ⊕ rot`.
pub fn heisenberg(k: usize) -> MetricTwoStepAlgebra {
    MetricTwoStepAlgebra::from_j_maps(2 * k, 1, vec![rotation_blocks(k, 1)]).expect("rotation blocks are skew")
}

/// `h_3` with `j = s · rot`.
pub fn heisenberg_scaled(s: i64) -> MetricTwoStepAlgebra {
    MetricTwoStepAlgebra::from_j_maps(2, 1, vec![rotation_blocks(1, s)]).expect("rotation blocks are skew")
}

/// H-type algebra on `v = H`, `z = Im H` with `j_Z v = Z · v` (left quaternion multiplication).
pub fn quaternionic_heisenberg() -> MetricTwoStepAlgebra {
    // Basis (1, i, j, k); row a is the image of basis vector a.
    let left = |rows: [[i64; 4]; 4]| -> RationalMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    };
    let li = left([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]);
    let lj = left([[0, 0, 1, 0], [0, 0, 0, -1], [-1, 0, 0, 0], [0, 1, 0, 0]]);
    let lk = left([[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]);
    MetricTwoStepAlgebra::from_j_maps(4, 3, vec![li, lj, lk]).expect("quaternion maps are skew")
}

/// Deterministic random algebra: each `j_k = (R - R^T)/2` for a raw matrix with
/// entries `p/q`, `|p| <= coeff_bound`, `1 <= q <= coeff_bound`.
pub fn random_algebra(seed: u64, dim_v: usize, dim_z: usize, coeff_bound: u32) -> MetricTwoStepAlgebra {
    let bound = coeff_bound.max(1) as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let j = (0..dim_z)
        .map(|_| {
            let raw: RationalMatrix = Matrix::from_fn(dim_v, dim_v, |_, _| {
                let p = rng.gen_range(-bound..=bound);
                let q = rng.gen_range(1..=bound);
                frac(p, q)
            });
            (&raw - &raw.transpose()).map(|x| x.div_int(2))
        })
        .collect();
    MetricTwoStepAlgebra::from_j_maps(dim_v, dim_z, j).expect("skew by construction")
}

/// Names accepted by [`by_name`].
pub const CATALOG_NAMES: &[&str] = &[
    "paper-nj",
    "paper-njprime",
    "heisenberg",
    "heisenberg-<k>",
    "quaternionic",
    "abelian-<n>-<m>",
];

/// Looks up a catalog algebra by name.
pub fn by_name(name: &str) -> Option<MetricTwoStepAlgebra> {
    match name {
        "paper-nj" | "nj" => Some(paper_nj()),
        "paper-njprime" | "njprime" | "paper-nj-prime" => Some(paper_njprime()),
        "heisenberg" | "h3" => Some(heisenberg(1)),
        "quaternionic" | "quaternionic-heisenberg" => Some(quaternionic_heisenberg()),
        _ => {
            if let Some(k) = name.strip_prefix("heisenberg-") {
                let k: usize = k.parse().ok()?;
                return (k >= 1).then(|| heisenberg(k));
            }
            if let Some(rest) = name.strip_prefix("abelian-") {
                let (n, m) = rest.split_once('-')?;
                return Some(MetricTwoStepAlgebra::abelian(n.parse().ok()?, m.parse().ok()?));
            }
            None
        }
    }
}
