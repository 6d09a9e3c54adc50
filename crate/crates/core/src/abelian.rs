//! Abelian subalgebras of the form `W ⊕ z`, where `W` is spanned by a subset
//! of the `v`-basis. Counting them for each `|W|` gives an invariant of the
//! chosen basis only, so differing counts are evidence, not proof, that two
//! algebras are not isomorphic.

use serde::{Deserialize, Serialize};

use crate::algebra::{ElementVector, MetricTwoStepAlgebra};
use crate::error::AlgebraError;

/// First pair `(i, j)` of `vectors` that does not commute.
pub fn abelian_witness(a: &MetricTwoStepAlgebra, vectors: &[ElementVector]) -> Option<(usize, usize)> {
    (0..vectors.len()).find_map(|i| {
        (i + 1..vectors.len())
            .find(|&j| !a.bracket(&vectors[i], &vectors[j]).is_zero())
            .map(|j| (i, j))
    })
}

pub fn is_abelian_subspace(a: &MetricTwoStepAlgebra, vectors: &[ElementVector]) -> bool {
    abelian_witness(a, vectors).is_none()
}

/// A coordinate subset rejected because `[v_a, v_b] ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmittedSubset {
    pub subset: Vec<usize>,
    pub pair: (usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianReport {
    pub w_dim: usize,
    pub count: usize,
    /// Index sets of `v`-basis vectors spanning each abelian `W`.
    pub subsets: Vec<Vec<usize>>,
    pub omitted: Vec<OmittedSubset>,
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// Enumerates every `w_dim`-subset of the `v`-basis and keeps those with `W ⊕ z` abelian.
pub fn coordinate_abelian_census(a: &MetricTwoStepAlgebra, w_dim: usize) -> AbelianReport {
    let table = a.structure_constants();
    let commute = |p: usize, q: usize| table[p][q].iter().all(num_traits::Zero::is_zero);
    let mut subsets = Vec::new();
    let mut omitted = Vec::new();
    for s in combinations(a.dim_v(), w_dim) {
        let bad = s
            .iter()
            .enumerate()
            .find_map(|(i, &p)| s[i + 1..].iter().find(|&&q| !commute(p, q)).map(|&q| (p, q)));
        match bad {
            None => subsets.push(s),
            Some(pair) => omitted.push(OmittedSubset { subset: s, pair }),
        }
    }
    AbelianReport {
        w_dim,
        count: subsets.len(),
        subsets,
        omitted,
    }
}

/// The vectors `W ∪ z-basis` for a coordinate subset `W`.
pub fn subset_vectors(a: &MetricTwoStepAlgebra, subset: &[usize]) -> Vec<ElementVector> {
    subset
        .iter()
        .copied()
        .chain(a.dim_v()..a.dim())
        .map(|i| a.basis(i))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusComparison {
    pub w_dim: usize,
    pub count_first: usize,
    pub count_second: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonisomorphismEvidence {
    pub comparisons: Vec<CensusComparison>,
    /// Smallest `|W|` where the coordinate counts differ.
    pub distinguished_at: Option<usize>,
    pub summary: String,
}

impl NonisomorphismEvidence {
    pub fn distinguishes(&self) -> bool {
        self.distinguished_at.is_some()
    }
}

pub fn nonisomorphism_evidence(
    a: &MetricTwoStepAlgebra,
    b: &MetricTwoStepAlgebra,
) -> Result<NonisomorphismEvidence, AlgebraError> {
    if (a.dim_v(), a.dim_z()) != (b.dim_v(), b.dim_z()) {
        return Err(AlgebraError::DimensionMismatch(format!(
            "({}, {}) vs ({}, {})",
            a.dim_v(),
            a.dim_z(),
            b.dim_v(),
            b.dim_z()
        )));
    }
    let comparisons: Vec<CensusComparison> = (1..=a.dim_v())
        .map(|w_dim| CensusComparison {
            w_dim,
            count_first: coordinate_abelian_census(a, w_dim).count,
            count_second: coordinate_abelian_census(b, w_dim).count,
        })
        .collect();
    let diff = comparisons.iter().find(|c| c.count_first != c.count_second);
    let summary = match diff {
        Some(c) => format!(
            "evidence of non-isomorphism: coordinate abelian subalgebras W ⊕ z with dim W = {} number {} vs {}",
            c.w_dim, c.count_first, c.count_second
        ),
        None => "no coordinate-level distinction".into(),
    };
    Ok(NonisomorphismEvidence {
        distinguished_at: diff.map(|c| c.w_dim),
        comparisons,
        summary,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;

    #[test]
    fn center_is_abelian() {
        let a = catalog::paper_nj();
        assert!(is_abelian_subspace(&a, &subset_vectors(&a, &[])));
    }

    #[test]
    fn exhibited_subspaces() {
        let p = catalog::paper_njprime();
        assert!(is_abelian_subspace(&p, &subset_vectors(&p, &[0, 1, 2])));
        let a = catalog::paper_nj();
        let v = subset_vectors(&a, &[0, 1]);
        assert_eq!(abelian_witness(&a, &v), Some((0, 1)));
        assert_eq!(a.bracket(&v[0], &v[1]), a.basis(8));
    }

    #[test]
    fn censuses() {
        let a = catalog::paper_nj();
        let two = coordinate_abelian_census(&a, 2);
        assert_eq!(two.count, 9);
        assert!(two.subsets.iter().all(|s| s[0] < 3 && s[1] >= 3));
        assert_eq!(two.omitted.len(), 6);
        assert_eq!(coordinate_abelian_census(&a, 3).count, 0);
        let p = coordinate_abelian_census(&catalog::paper_njprime(), 3);
        assert_eq!(p.subsets, vec![vec![0, 1, 2], vec![3, 4, 5]]);
        assert_eq!(coordinate_abelian_census(&a, 7).count, 0);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(6, 2).len(), 15);
        assert_eq!(combinations(6, 3).len(), 20);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn evidence_for_quaternionic_pair() {
        let e = nonisomorphism_evidence(&catalog::paper_nj(), &catalog::paper_njprime()).unwrap();
        assert!(e.distinguishes());
        let c = e.comparisons.iter().find(|c| c.w_dim == 3).unwrap();
        assert_eq!((c.count_first, c.count_second), (0, 2));
        assert!(e.summary.contains("evidence"));
        let same = nonisomorphism_evidence(&catalog::paper_nj(), &catalog::paper_nj()).unwrap();
        assert!(!same.distinguishes());
    }
}
