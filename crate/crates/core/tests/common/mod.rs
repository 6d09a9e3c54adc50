//! Independent oracles shared by the integration tests. Nothing here calls
//! the closed-form geometry, the Faddeev-LeVerrier recursion or the census code.

#![allow(dead_code)]

use nilgeo_core::algebra::ElementVector;
use nilgeo_core::exact::{dot, frac, rat, Matrix, Poly, Rational, RationalMatrix, UniPoly};
use nilgeo_core::MetricTwoStepAlgebra;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random algebra with `j`-entries `p/q`, `q <= 4`, in `[-5, 5]`.
pub fn rational_algebra(seed: u64, n: usize, m: usize) -> MetricTwoStepAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps = (0..m)
        .map(|_| {
            let mut j = RationalMatrix::zeros(n, n);
            for a in 0..n {
                for b in a + 1..n {
                    let q = rng.gen_range(1..=4i64);
                    let v = frac(rng.gen_range(-5 * q..=5 * q), q);
                    j[(b, a)] = -v.clone();
                    j[(a, b)] = v;
                }
            }
            j
        })
        .collect();
    MetricTwoStepAlgebra::from_j_maps(n, m, maps).unwrap()
}

/// Random algebra with seed-dependent dimensions `2 <= n <= max_n`, `1 <= m <= max_m`.
pub fn random_shape_algebra(seed: u64, max_n: usize, max_m: usize) -> MetricTwoStepAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(1..=max_m);
    rational_algebra(seed, n, m)
}

/// `det(λ - M)` by cofactor expansion, as a polynomial in `c1..cm` and `λ = c_{m+1}`.
pub fn cofactor_charpoly(m: &Matrix<Poly>, lambda_var: usize) -> Poly {
    let n = m.rows();
    let lam = Poly::var(lambda_var);
    let a: Vec<Vec<Poly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = -m[(i, j)].clone();
                    if i == j {
                        e + lam.clone()
                    } else {
                        e
                    }
                })
                .collect()
        })
        .collect();
    cofactor_det(&a)
}

fn cofactor_det(a: &[Vec<Poly>]) -> Poly {
    let n = a.len();
    if n == 0 {
        return Poly::one();
    }
    let mut total = Poly::zero();
    for (j, entry) in a[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = entry * &cofactor_det(&minor);
        total = if j % 2 == 0 { total + term } else { total - term };
    }
    total
}

/// Folds `Σ p_k λ^k` into one polynomial with `λ = c_{lambda_var+1}`.
pub fn flatten_charpoly(p: &UniPoly<Poly>, lambda_var: usize) -> Poly {
    let lam = Poly::var(lambda_var);
    let mut pow = Poly::one();
    let mut out = Poly::zero();
    for c in p.coeffs() {
        out = out + c * &pow;
        pow = &pow * &lam;
    }
    out
}

/// `⟨J j_Z X, X⟩` with `X = (x_1..x_n)` and `Z = (x_{n+1}..x_{n+m})` symbolic;
/// Type A holds iff this polynomial vanishes.
pub fn type_a_defect(a: &MetricTwoStepAlgebra) -> Poly {
    let (n, m) = (a.dim_v(), a.dim_z());
    let vars = Poly::vars(n + m);
    let (x, z) = vars.split_at(n);
    let mut j_total = RationalMatrix::zeros(n, n);
    for jm in a.j_maps() {
        j_total = &j_total + &(jm * jm);
    }
    let jzx = a.apply_j(z, x);
    let jj = j_total.lift::<Poly>().mul_vec(&jzx);
    dot(&jj, x)
}

/// Levi-Civita data computed from the Koszul formula with the bracket of `n`
/// as the only input: `⟨∇_a e_b, e_c⟩ = ½(⟨[a,b],c⟩ - ⟨[b,c],a⟩ + ⟨[c,a],b⟩)`.
pub struct KoszulOracle {
    dim: usize,
    dim_v: usize,
    /// `br[a][b]` is `[e_a, e_b]` in full coordinates.
    br: Vec<Vec<Vec<Rational>>>,
    gamma: Vec<Vec<Vec<Rational>>>,
    ricci: Vec<Vec<Rational>>,
}

impl KoszulOracle {
    pub fn new(a: &MetricTwoStepAlgebra) -> Self {
        let dim = a.dim();
        let basis: Vec<ElementVector> = (0..dim).map(|i| a.basis(i)).collect();
        let br: Vec<Vec<Vec<Rational>>> = (0..dim)
            .map(|p| (0..dim).map(|q| a.bracket(&basis[p], &basis[q]).to_full()).collect())
            .collect();
        let gamma = (0..dim)
            .map(|p| {
                (0..dim)
                    .map(|q| {
                        (0..dim)
                            .map(|r| (&br[p][q][r] - &br[q][r][p] + &br[r][p][q]) * frac(1, 2))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let mut o = KoszulOracle {
            dim,
            dim_v: a.dim_v(),
            br,
            gamma,
            ricci: Vec::new(),
        };
        o.ricci = (0..dim)
            .map(|x| {
                let ex = unit(dim, x);
                let mut acc = vec![rat(0); dim];
                for e in 0..dim {
                    let ee = unit(dim, e);
                    for (s, t) in acc.iter_mut().zip(o.curvature(&ex, &ee, &ee)) {
                        *s += t;
                    }
                }
                acc
            })
            .collect();
        o
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn bilinear(t: &[Vec<Vec<Rational>>], x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![rat(0); x.len()];
        for (p, xp) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (q, yq) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let s = xp * yq;
                for (o, v) in out.iter_mut().zip(&t[p][q]) {
                    *o += &s * v;
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        Self::bilinear(&self.br, x, y)
    }

    pub fn nabla(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        Self::bilinear(&self.gamma, x, y)
    }

    pub fn curvature(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vec<Rational> {
        let p = self.nabla(x, &self.nabla(y, z));
        let q = self.nabla(y, &self.nabla(x, z));
        let r = self.nabla(&self.bracket(x, y), z);
        p.iter().zip(&q).zip(&r).map(|((p, q), r)| p - q - r).collect()
    }

    pub fn ricci_operator(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![rat(0); self.dim];
        for (xi, row) in x.iter().zip(&self.ricci) {
            for (o, v) in out.iter_mut().zip(row) {
                *o += xi * v;
            }
        }
        out
    }

    pub fn ric(&self, x: &[Rational], y: &[Rational]) -> Rational {
        dot(&self.ricci_operator(x), y)
    }

    pub fn nabla_ric(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Rational {
        -self.ric(&self.nabla(x, y), z) - self.ric(y, &self.nabla(x, z))
    }

    pub fn element(&self, full: Vec<Rational>) -> ElementVector {
        ElementVector::from_full(&full, self.dim_v)
    }
}

pub fn unit(dim: usize, i: usize) -> Vec<Rational> {
    (0..dim).map(|j| rat((i == j) as i64)).collect()
}

/// `J` as `Σ_k j_k²` and `B` from `⟨B z, w⟩ = Σ_i ⟨[v_i, ·]^* z, [v_i, ·]^* w⟩`
/// computed through the bracket: `j_z v_i = Σ_b ⟨[v_i, v_b], z⟩ v_b`.
pub fn endo_j_b_by_bracket(a: &MetricTwoStepAlgebra) -> (RationalMatrix, RationalMatrix) {
    let (n, m) = (a.dim_v(), a.dim_z());
    let jz = |k: usize, i: usize| -> Vec<Rational> {
        (0..n)
            .map(|b| a.bracket(&a.basis(i), &a.basis(b)).z[k].clone())
            .collect()
    };
    let apply = |k: usize, x: &[Rational]| -> Vec<Rational> {
        let mut out = vec![rat(0); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (o, v) in out.iter_mut().zip(jz(k, i)) {
                *o += xi * &v;
            }
        }
        out
    };
    let j = Matrix::from_fn(n, n, |r, c| {
        (0..m).map(|k| apply(k, &apply(k, &unit(n, c)))[r].clone()).sum()
    });
    let b = Matrix::from_fn(m, m, |p, q| (0..n).map(|i| dot(&jz(p, i), &jz(q, i))).sum());
    (j, b)
}

/// The 4-dimensional algebra with `J = diag(-2, -1, -5, -4)` which is not of Type A.
pub fn type_a_counterexample() -> MetricTwoStepAlgebra {
    let mut j1 = RationalMatrix::zeros(4, 4);
    j1[(0, 1)] = rat(1);
    j1[(1, 0)] = rat(-1);
    j1[(2, 3)] = rat(2);
    j1[(3, 2)] = rat(-2);
    let mut j2 = RationalMatrix::zeros(4, 4);
    j2[(0, 2)] = rat(1);
    j2[(2, 0)] = rat(-1);
    MetricTwoStepAlgebra::from_j_maps(4, 2, vec![j1, j2]).unwrap()
}

/// Brute-force abelian check of `span(W) ⊕ z` through every pair of vectors.
pub fn brute_force_abelian(a: &MetricTwoStepAlgebra, subset: &[usize]) -> bool {
    let mut vecs: Vec<ElementVector> = subset.iter().map(|&i| a.basis(i)).collect();
    vecs.extend((a.dim_v()..a.dim()).map(|i| a.basis(i)));
    vecs.iter().all(|x| vecs.iter().all(|y| a.bracket(x, y).is_zero()))
}

pub fn all_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << n))
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|i| mask & (1 << i) != 0).collect())
        .collect()
}
