//! Metric 2-step nilpotent Lie algebras `n = v ⊕ z` presented by their j-maps.
//!
//! The inner product is the standard dot product in the standard basis
//! `v_0..v_{n-1}, z_0..z_{m-1}`. Each `j_k` is stored as the skew matrix whose
//! row `a` is the image `j_{z_k}(v_a)`, so that
//!
//! ```text
//! (j_k)[a][b] = <j_{z_k} v_a, v_b> = <[v_a, v_b], z_k>.
//! ```
//!
//! With this convention the matrices, the bracket table and the duality
//! `<[X,Y], Z> = <j_Z X, Y>` all agree. Note that the operator `j_X ∘ j_Y` is
//! represented by the matrix product `M_Y · M_X`.

pub mod catalog;
pub mod element;
pub mod io;

use num_traits::Zero;

use crate::error::AlgebraError;
use crate::exact::{rat, Matrix, Rational, RationalMatrix, Scalar};

pub use element::ElementVector;

#[derive(Debug, Clone, PartialEq)]
pub struct MetricTwoStepAlgebra {
    dim_v: usize,
    dim_z: usize,
    j_maps: Vec<RationalMatrix>,
    /// `brackets[a][b][k] = <[v_a, v_b], z_k>`
    brackets: Vec<Vec<Vec<Rational>>>,
}

impl MetricTwoStepAlgebra {
    pub fn from_j_maps(dim_v: usize, dim_z: usize, j_maps: Vec<RationalMatrix>) -> Result<Self, AlgebraError> {
        if j_maps.len() != dim_z {
            return Err(AlgebraError::DimensionMismatch(format!(
                "expected {dim_z} j-matrices, got {}",
                j_maps.len()
            )));
        }
        for (index, j) in j_maps.iter().enumerate() {
            if j.rows() != dim_v || j.cols() != dim_v {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "j[{index}] is {}x{}, expected {dim_v}x{dim_v}",
                    j.rows(),
                    j.cols()
                )));
            }
            if let Some((row, col)) = j.skew_violation() {
                return Err(AlgebraError::NonSkew {
                    index,
                    row,
                    col,
                    value: j[(row, col)].to_string(),
                    mirror: j[(col, row)].to_string(),
                });
            }
        }
        let brackets = (0..dim_v)
            .map(|a| {
                (0..dim_v)
                    .map(|b| j_maps.iter().map(|j| j[(a, b)].clone()).collect())
                    .collect()
            })
            .collect();
        Ok(MetricTwoStepAlgebra {
            dim_v,
            dim_z,
            j_maps,
            brackets,
        })
    }

    /// Rebuilds the j-maps from a full table `table[a][b] = [v_a, v_b] ∈ R^m`.
    pub fn from_structure_constants(
        dim_v: usize,
        dim_z: usize,
        table: &[Vec<Vec<Rational>>],
    ) -> Result<Self, AlgebraError> {
        if table.len() != dim_v || table.iter().any(|row| row.len() != dim_v) {
            return Err(AlgebraError::DimensionMismatch(format!(
                "bracket table must be {dim_v}x{dim_v}"
            )));
        }
        for a in 0..dim_v {
            for b in 0..dim_v {
                if table[a][b].len() != dim_z {
                    return Err(AlgebraError::DimensionMismatch(format!(
                        "bracket ({a},{b}) has {} central components, expected {dim_z}",
                        table[a][b].len()
                    )));
                }
            }
        }
        for a in 0..dim_v {
            for b in a..dim_v {
                let sum_zero = table[a][b].iter().zip(&table[b][a]).all(|(x, y)| (x + y).is_zero());
                if !sum_zero {
                    return Err(AlgebraError::InconsistentAntisymmetry {
                        a,
                        b,
                        detail: format!(
                            "[v_{a},v_{b}] = {} but [v_{b},v_{a}] = {}",
                            fmt_vec(&table[a][b]),
                            fmt_vec(&table[b][a])
                        ),
                    });
                }
            }
        }
        let j_maps = (0..dim_z)
            .map(|k| Matrix::from_fn(dim_v, dim_v, |a, b| table[a][b][k].clone()))
            .collect();
        Self::from_j_maps(dim_v, dim_z, j_maps)
    }

    /// The abelian algebra `R^{n+m}` with all j-maps zero.
    pub fn abelian(dim_v: usize, dim_z: usize) -> Self {
        Self::from_j_maps(dim_v, dim_z, vec![Matrix::zeros(dim_v, dim_v); dim_z]).expect("zero maps are skew")
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn dim_z(&self) -> usize {
        self.dim_z
    }

    pub fn dim(&self) -> usize {
        self.dim_v + self.dim_z
    }

    pub fn j_maps(&self) -> &[RationalMatrix] {
        &self.j_maps
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.brackets
    }

    pub fn is_abelian(&self) -> bool {
        self.j_maps.iter().all(Matrix::is_zero)
    }

    /// Matrix of `j_Z = Σ_k Z_k j_k` (stored convention), for rational or symbolic `Z`.
    pub fn j_of<R: Scalar>(&self, z: &[R]) -> Matrix<R> {
        assert_eq!(z.len(), self.dim_z, "j_of: central dimension");
        let mut out = Matrix::zeros(self.dim_v, self.dim_v);
        for (zk, jk) in z.iter().zip(&self.j_maps) {
            if zk.is_zero() {
                continue;
            }
            out = &out + &jk.lift::<R>().scale(zk);
        }
        out
    }

    /// Matrix of `j_Z ∘ j_Z`. It is symmetric, so both matrix conventions agree.
    pub fn j_squared<R: Scalar>(&self, z: &[R]) -> Matrix<R> {
        let j = self.j_of(z);
        &j * &j
    }

    /// `j_Z x` for `x ∈ v`.
    pub fn apply_j<R: Scalar>(&self, z: &[R], x: &[R]) -> Vec<R> {
        self.j_of(z).vec_mul(x)
    }

    /// Central bracket `[x, y]` of two `v`-vectors: component `k` is `x^T j_k y`.
    pub fn bracket_v<R: Scalar>(&self, x: &[R], y: &[R]) -> Vec<R> {
        self.j_maps.iter().map(|j| j.lift::<R>().bilinear(x, y)).collect()
    }

    /// Lie bracket on `n`; it always lands in `z`.
    pub fn bracket(&self, x: &ElementVector, y: &ElementVector) -> ElementVector {
        ElementVector::new(vec![rat(0); self.dim_v], self.bracket_v(&x.v, &y.v))
    }

    /// Basis vector `e_idx` of `n` (`v`-basis first, then `z`-basis).
    pub fn basis(&self, idx: usize) -> ElementVector {
        ElementVector::basis(self.dim_v, self.dim_z, idx)
    }

    pub fn zero_vector(&self) -> ElementVector {
        ElementVector::zero(self.dim_v, self.dim_z)
    }

    /// Same algebra with every j-map multiplied by `s`.
    pub fn scaled(&self, s: &Rational) -> Self {
        let j = self.j_maps.iter().map(|m| m.scale(s)).collect();
        Self::from_j_maps(self.dim_v, self.dim_z, j).expect("scaling preserves skewness")
    }

    /// Applies a permutation of the `v`-basis: new basis vector `i` is old `perm[i]`.
    pub fn permute_v(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.dim_v);
        let j = self
            .j_maps
            .iter()
            .map(|m| Matrix::from_fn(self.dim_v, self.dim_v, |a, b| m[(perm[a], perm[b])].clone()))
            .collect();
        Self::from_j_maps(self.dim_v, self.dim_z, j).expect("permutation preserves skewness")
    }

    /// Conjugates every j-map by an orthogonal change of `v`-basis given by the
    /// rows of `q` (new basis vector `i` is `Σ_a q[i][a] v_a`).
    pub fn change_v_basis(&self, q: &RationalMatrix) -> Self {
        let qt = q.transpose();
        let j = self.j_maps.iter().map(|m| &(q * m) * &qt).collect();
        Self::from_j_maps(self.dim_v, self.dim_z, j).expect("congruence preserves skewness")
    }
}

fn fmt_vec(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::frac;

    fn rot() -> RationalMatrix {
        Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(-1), rat(0)]])
    }

    #[test]
    fn heisenberg_from_j() {
        let h = MetricTwoStepAlgebra::from_j_maps(2, 1, vec![rot()]).unwrap();
        let x = h.basis(0);
        let y = h.basis(1);
        assert_eq!(h.bracket(&x, &y), h.basis(2));
        assert_eq!(h.bracket(&y, &x), h.basis(2).scale(&rat(-1)));
        assert!(h.bracket(&x, &h.basis(2)).is_zero());
    }

    #[test]
    fn non_skew_is_rejected_with_location() {
        let bad = Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]);
        let err = MetricTwoStepAlgebra::from_j_maps(2, 1, vec![bad]).unwrap_err();
        assert!(matches!(
            err,
            AlgebraError::NonSkew {
                index: 0,
                row: 0,
                col: 1,
                ..
            }
        ));
        let diag = Matrix::from_rows(vec![vec![rat(1), rat(0)], vec![rat(0), rat(0)]]);
        let err = MetricTwoStepAlgebra::from_j_maps(2, 1, vec![diag]).unwrap_err();
        assert!(matches!(err, AlgebraError::NonSkew { row: 0, col: 0, .. }));
    }

    #[test]
    fn dimension_mismatch() {
        assert!(matches!(
            MetricTwoStepAlgebra::from_j_maps(2, 2, vec![rot()]),
            Err(AlgebraError::DimensionMismatch(_))
        ));
        assert!(matches!(
            MetricTwoStepAlgebra::from_j_maps(3, 1, vec![rot()]),
            Err(AlgebraError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn structure_constants_round_trip_and_antisymmetry() {
        let h = MetricTwoStepAlgebra::from_j_maps(2, 1, vec![rot().scale(&frac(3, 2))]).unwrap();
        let back = MetricTwoStepAlgebra::from_structure_constants(2, 1, h.structure_constants()).unwrap();
        assert_eq!(back, h);

        let mut table = vec![vec![vec![rat(0)]; 2]; 2];
        table[0][1] = vec![rat(1)];
        table[1][0] = vec![rat(1)];
        assert!(matches!(
            MetricTwoStepAlgebra::from_structure_constants(2, 1, &table),
            Err(AlgebraError::InconsistentAntisymmetry { a: 0, b: 1, .. })
        ));
    }

    #[test]
    fn empty_table_is_abelian() {
        let table = vec![vec![vec![rat(0); 2]; 3]; 3];
        let a = MetricTwoStepAlgebra::from_structure_constants(3, 2, &table).unwrap();
        assert!(a.is_abelian());
        assert_eq!(a, MetricTwoStepAlgebra::abelian(3, 2));
    }
}
