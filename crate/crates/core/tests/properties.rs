//! Randomized invariants of the exact kernel, the algebra model, the geometry
//! and the classifiers.

mod common;

use common::{all_subsets, brute_force_abelian, rational_algebra, type_a_defect, unit, KoszulOracle};
use nilgeo_core::abelian::{coordinate_abelian_census, is_abelian_subspace};
use nilgeo_core::algebra::catalog::{heisenberg, paper_nj, paper_njprime, quaternionic_heisenberg};
use nilgeo_core::classify::{has_parallel_ricci, is_type_a, scalar_invariants};
use nilgeo_core::exact::{
    charpoly, determinant, dot, frac, kernel_basis, rank, rat, IntegerLattice, Matrix, Poly, Rational, RationalMatrix,
};
use nilgeo_core::geometry::{self, RicciData};
use nilgeo_core::isospectral::{criterion_eigenvalues, gordon_wilson, KernelMode, NilmanifoldData};
use nilgeo_core::{ElementVector, MetricTwoStepAlgebra};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(p, q)| frac(p, q))
}

fn rvec(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small_rational(), len)
}

fn rmatrix(n: usize) -> impl Strategy<Value = RationalMatrix> {
    rvec(n * n).prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec((small_rational(), prop::collection::vec(0i32..3, 3)), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(Poly::zero(), |acc, (c, e)| acc + Poly::monomial(c, &e))
    })
}

/// `(seed, n, m)` for a random algebra with `n <= 5`, `m <= 3`.
fn algebra() -> impl Strategy<Value = MetricTwoStepAlgebra> {
    (any::<u64>(), 2usize..=5, 1usize..=3).prop_map(|(s, n, m)| rational_algebra(s, n, m))
}

fn element(a: &MetricTwoStepAlgebra, full: &[Rational]) -> ElementVector {
    ElementVector::from_full(full, a.dim_v())
}

fn inner(x: &ElementVector, y: &ElementVector) -> Rational {
    x.inner(y)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn poly_ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!(&a * &(b.clone() + c.clone()), &a * &b + &a * &c);
        prop_assert!((a.clone() - a.clone()).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a);
    }

    #[test]
    fn charpoly_constant_term_is_signed_determinant(m in (1usize..=5).prop_flat_map(rmatrix)) {
        let p = charpoly(&m).unwrap();
        let n = m.rows();
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), Some(n));
        let sign = if n % 2 == 0 { rat(1) } else { rat(-1) };
        prop_assert_eq!(p.coeff(0), sign * determinant(&m));
        prop_assert_eq!(p.coeff(n - 1), -m.trace());
    }

    #[test]
    fn odd_skew_matrices_are_singular(k in 0usize..=2, v in rvec(25)) {
        let n = 2 * k + 1;
        let m = Matrix::from_fn(n, n, |i, j| {
            if i < j { v[i * 5 + j].clone() } else if i > j { -v[j * 5 + i].clone() } else { rat(0) }
        });
        prop_assert!(determinant(&m).is_zero());
        prop_assert!(!kernel_basis(&m).is_empty());
    }

    #[test]
    fn kernel_vectors_are_annihilated((rows, cols, v) in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| (Just(r), Just(c), rvec(r * c)))) {
        // Sparsify so that nontrivial kernels are common.
        let m = Matrix::from_fn(rows, cols, |i, j| if (i + 2 * j) % 3 == 0 { rat(0) } else { v[i * cols + j].clone() });
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len(), cols - rank(&m));
        for x in &k {
            prop_assert!(m.mul_vec(x).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn lattice_contains_its_basis(scales in prop::collection::vec((1i64..=4, 1i64..=4), 1..=4)) {
        let s: Vec<Rational> = scales.iter().map(|&(p, q)| frac(p, q)).collect();
        let l = IntegerLattice::diagonal(&s);
        for b in l.basis() {
            prop_assert!(l.contains(b));
        }
        let k = s.len();
        let z = IntegerLattice::standard(k);
        for i in 0..k {
            let half: Vec<Rational> = unit(k, i).into_iter().map(|x| x * frac(1, 2)).collect();
            prop_assert!(!z.contains(&half));
        }
    }

    #[test]
    fn length_spectrum_is_unimodular_invariant(
        raw in prop::collection::vec(-2i64..=2, 9),
        ops in prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6),
    ) {
        let mut basis: Vec<Vec<Rational>> = (0..3)
            .map(|i| (0..3).map(|j| rat(raw[i * 3 + j] + if i == j { 3 } else { 0 })).collect())
            .collect();
        prop_assume!(!determinant(&Matrix::from_rows(basis.clone())).is_zero());
        let l = IntegerLattice::new(3, basis.clone()).unwrap();
        for (i, j, t) in ops {
            if i != j {
                let row = basis[j].clone();
                for (x, y) in basis[i].iter_mut().zip(row) {
                    *x += y * rat(t);
                }
            }
        }
        let l2 = IntegerLattice::new(3, basis).unwrap();
        let bound = rat(20);
        prop_assert_eq!(l.length_spectrum(&bound), l2.length_spectrum(&bound));
    }

    #[test]
    fn structure_constants_round_trip(a in algebra()) {
        let back = MetricTwoStepAlgebra::from_structure_constants(a.dim_v(), a.dim_z(), a.structure_constants()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn bracket_duality_and_linearity(a in algebra(), seed in rvec(16)) {
        let (n, m) = (a.dim_v(), a.dim_z());
        let x = &seed[..n];
        let y = &seed[5..5 + n];
        let z = &seed[10..10 + m];
        let w = &seed[13..13 + m];
        prop_assert_eq!(dot(&a.bracket_v(x, y), z), dot(&a.apply_j(z, x), y));
        let zw: Vec<Rational> = z.iter().zip(w).map(|(p, q)| p + q).collect();
        prop_assert_eq!(a.j_of(&zw), &a.j_of(z) + &a.j_of(w));
        let ex = ElementVector::from_v(x.to_vec(), m);
        let ey = ElementVector::from_v(y.to_vec(), m);
        let ez = ElementVector::from_z(n, z.to_vec());
        prop_assert!(a.bracket(&ex, &ez).is_zero());
        prop_assert_eq!(a.bracket(&ex, &ey), a.bracket(&ey, &ex).scale(&rat(-1)));
        let jacobi = &(&a.bracket(&ex, &a.bracket(&ey, &ez)) + &a.bracket(&ey, &a.bracket(&ez, &ex))) + &a.bracket(&ez, &a.bracket(&ex, &ey));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn connection_identities_on_random_vectors(a in algebra(), seed in rvec(32)) {
        let d = a.dim();
        let x = element(&a, &seed[..d]);
        let y = element(&a, &seed[8..8 + d]);
        let z = element(&a, &seed[16..16 + d]);
        let w = element(&a, &seed[24..24 + d]);
        let torsion = &geometry::nabla(&a, &x, &y) - &geometry::nabla(&a, &y, &x);
        prop_assert_eq!(torsion, a.bracket(&x, &y));
        prop_assert!((inner(&geometry::nabla(&a, &x, &y), &z) + inner(&y, &geometry::nabla(&a, &x, &z))).is_zero());

        let r = |p: &ElementVector, q: &ElementVector, s: &ElementVector, t: &ElementVector| inner(&geometry::curvature(&a, p, q, s), t);
        let v = r(&x, &y, &z, &w);
        prop_assert_eq!(&v, &-r(&y, &x, &z, &w));
        prop_assert_eq!(&v, &-r(&x, &y, &w, &z));
        prop_assert_eq!(&v, &r(&z, &w, &x, &y));
        let bianchi = &(&geometry::curvature(&a, &x, &y, &z) + &geometry::curvature(&a, &y, &z, &x)) + &geometry::curvature(&a, &z, &x, &y);
        prop_assert!(bianchi.is_zero());
        prop_assert_eq!(geometry::jacobi_operator(&a, &y, &x), geometry::curvature(&a, &x, &y, &y));

        let o = KoszulOracle::new(&a);
        prop_assert_eq!(geometry::nabla(&a, &x, &y).to_full(), o.nabla(&x.to_full(), &y.to_full()));
        prop_assert_eq!(geometry::ricci_tensor(&a, &x, &y), o.ric(&x.to_full(), &y.to_full()));
    }

    #[test]
    fn type_a_matches_definition(a in algebra()) {
        prop_assert_eq!(is_type_a(&a), type_a_defect(&a).is_zero());
        if a.dim_z() == 1 {
            prop_assert!(is_type_a(&a));
        }
    }

    #[test]
    fn scaling_j_scales_j_and_b(a in algebra(), s in small_rational()) {
        prop_assume!(!s.is_zero());
        let b = a.scaled(&s);
        let s2 = &s * &s;
        prop_assert_eq!(geometry::endo_j(&b), geometry::endo_j(&a).scale(&s2));
        prop_assert_eq!(geometry::endo_b(&b), geometry::endo_b(&a).scale(&s2));
        prop_assert_eq!(is_type_a(&b), is_type_a(&a));
    }

    #[test]
    fn census_invariant_under_signed_permutations(seed in any::<u64>(), perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(), signs in prop::collection::vec(any::<bool>(), 5)) {
        let a = sparse_algebra(seed);
        let p = a.permute_v(&perm);
        let d = RationalMatrix::diagonal(&signs.iter().map(|&s| rat(if s { -1 } else { 1 })).collect::<Vec<_>>());
        let f = a.change_v_basis(&d);
        for k in 0..=5 {
            let c = coordinate_abelian_census(&a, k).count;
            prop_assert_eq!(c, coordinate_abelian_census(&p, k).count);
            prop_assert_eq!(c, coordinate_abelian_census(&f, k).count);
            let brute = all_subsets(5, k).iter().filter(|s| brute_force_abelian(&a, s)).count();
            prop_assert_eq!(c, brute);
        }
    }

    #[test]
    fn adjoining_center_preserves_abelianity(seed in any::<u64>(), subset in prop::collection::vec(0usize..5, 0..4)) {
        let a = sparse_algebra(seed);
        let vs: Vec<ElementVector> = subset.iter().map(|&i| a.basis(i)).collect();
        let mut with_z = vs.clone();
        with_z.extend((a.dim_v()..a.dim()).map(|i| a.basis(i)));
        prop_assert_eq!(is_abelian_subspace(&a, &vs), is_abelian_subspace(&a, &with_z));
    }

    #[test]
    fn eigenvalue_criterion_symmetric_and_basis_invariant(s1 in any::<u64>(), s2 in any::<u64>(), perm in Just((0..4).collect::<Vec<usize>>()).prop_shuffle(), signs in prop::collection::vec(any::<bool>(), 4)) {
        let (a, b) = (rational_algebra(s1, 4, 2), rational_algebra(s2, 4, 2));
        let ab = criterion_eigenvalues(&a, &b).unwrap().outcome.is_pass();
        prop_assert_eq!(ab, criterion_eigenvalues(&b, &a).unwrap().outcome.is_pass());
        let q = Matrix::from_fn(4, 4, |i, j| if perm[i] == j { rat(if signs[i] { -1 } else { 1 }) } else { rat(0) });
        let (qa, qb) = (a.change_v_basis(&q), b.change_v_basis(&q));
        let c = Poly::vars(2);
        prop_assert_eq!(charpoly(&qa.j_of(&c)).unwrap(), charpoly(&a.j_of(&c)).unwrap());
        prop_assert_eq!(ab, criterion_eigenvalues(&qa, &qb).unwrap().outcome.is_pass());
        prop_assert!(criterion_eigenvalues(&a, &qa).unwrap().outcome.is_pass());
    }
}

/// Random 5-dimensional `v` with few brackets so that abelian subsets exist.
fn sparse_algebra(seed: u64) -> MetricTwoStepAlgebra {
    let dense = rational_algebra(seed, 5, 2);
    let maps = dense
        .j_maps()
        .iter()
        .enumerate()
        .map(|(k, m)| {
            Matrix::from_fn(5, 5, |i, j| {
                let keep = (i * 7 + j * 7 + k + seed as usize % 5).is_multiple_of(4);
                if keep {
                    m[(i, j)].clone()
                } else {
                    rat(0)
                }
            })
        })
        .collect();
    MetricTwoStepAlgebra::from_j_maps(5, 2, maps).unwrap()
}

#[test]
fn parallel_ricci_implies_type_a_on_catalog() {
    let mut catalog = vec![
        paper_nj(),
        paper_njprime(),
        heisenberg(1),
        heisenberg(3),
        quaternionic_heisenberg(),
    ];
    catalog.push(MetricTwoStepAlgebra::abelian(3, 2));
    catalog.extend((0..10).map(|s| rational_algebra(s, 4, 2)));
    for a in &catalog {
        if has_parallel_ricci(a) {
            assert!(is_type_a(a));
        }
    }
}

#[test]
fn ricci_with_scalar_j_and_b() {
    for a in [paper_nj(), paper_njprime(), heisenberg(2), quaternionic_heisenberg()] {
        let s = scalar_invariants(&a);
        let (c, d) = (s.j_scalar.unwrap(), s.b_scalar.unwrap());
        let r = RicciData::new(&a);
        for x in 0..a.dim() {
            for y in 0..a.dim() {
                let (ex, ey) = (a.basis(x), a.basis(y));
                let want = &c * frac(1, 2) * dot(&ex.v, &ey.v) + &d * frac(1, 4) * dot(&ex.z, &ey.z);
                assert_eq!(r.tensor(&ex, &ey), want);
            }
        }
    }
}

#[test]
fn symbolic_kernel_pass_implies_sampled_pass() {
    let d = NilmanifoldData::with_default_lattices(paper_nj());
    let dp = NilmanifoldData::with_default_lattices(paper_njprime());
    let sym = gordon_wilson(&d, &dp, KernelMode::Symbolic, &rat(16)).unwrap();
    assert!(sym.criterion_iii.is_pass());
    let sampled = gordon_wilson(&d, &dp, KernelMode::Sampled, &rat(16)).unwrap();
    assert!(sampled.criterion_iii.is_pass());
    assert_eq!(sampled.sample.as_ref().map(|s| s.count), Some(342));
}

#[test]
fn dual_of_half_lattice() {
    let l = IntegerLattice::diagonal(&[frac(1, 2), frac(1, 2), frac(1, 2)]);
    let want = IntegerLattice::diagonal(&[rat(2), rat(2), rat(2)]);
    assert_eq!(l.dual().canonical(), want.canonical());
    assert_eq!(l.dual().dual().canonical(), l.canonical());
}
