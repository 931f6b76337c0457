//! Twisting constructions and built-in algebras.

use num_traits::{One, Zero};
use rand::Rng;

use crate::algebra::HomAlgebra;
use crate::error::{AlgebraError, Result};
use crate::linalg::{int, ratio, Matrix, Scalar, Vector};
use crate::report::Witness;

/// Twists `a` by a weak self-morphism `beta`: product `beta·mu`, twisting
/// map `beta·alpha` (apply `alpha`, then `beta`).
pub fn yau_twist(a: &HomAlgebra, beta: &Matrix) -> Result<HomAlgebra> {
    if beta.rows() != a.dim() || beta.cols() != a.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.dim(),
            found: beta.rows(),
        });
    }
    let report = a.is_weak_morphism(beta);
    if let Some(Witness::Basis(w)) = report.witness {
        return Err(AlgebraError::NotWeakMorphism { i: w[0], j: w[1] });
    }
    let table = a
        .product_table()
        .iter()
        .map(|p| p.mul_matrix(beta))
        .collect::<Result<Vec<_>>>()?;
    HomAlgebra::new(a.basis_names().to_vec(), table, a.alpha().mul(beta)?)
}

/// The `n`th derived algebra: product `alpha^n mu`, twisting map
/// `alpha^{n+1}`. Requires `a` multiplicative.
pub fn derived_algebra(a: &HomAlgebra, n: u32) -> Result<HomAlgebra> {
    a.require_multiplicative()?;
    yau_twist(a, &a.alpha().pow(n)?)
}

/// The plus algebra with product `(xy + yx)/2` and the same twisting map.
pub fn plus_algebra(a: &HomAlgebra) -> HomAlgebra {
    let dim = a.dim();
    let half = ratio(1, 2);
    let table = (0..dim * dim)
        .map(|idx| {
            let (i, j) = (idx / dim, idx % dim);
            (a.basis_product(i, j) + a.basis_product(j, i)).scale(&half)
        })
        .collect();
    a.with_table(table).expect("same shape as input")
}

/// Parameters of the twisting maps on the five-dimensional Albert algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlbertParams {
    gamma: Scalar,
    delta: Scalar,
    epsilon: Scalar,
}

impl AlbertParams {
    /// `delta` must avoid 0 and 1.
    pub fn new(gamma: Scalar, delta: Scalar, epsilon: Scalar) -> Result<Self> {
        if delta.is_zero() || delta.is_one() {
            return Err(AlgebraError::InvalidParameter(format!(
                "delta must not be 0 or 1 (got {delta})"
            )));
        }
        Ok(AlbertParams {
            gamma,
            delta,
            epsilon,
        })
    }

    pub fn from_ints(gamma: i64, delta: i64, epsilon: i64) -> Result<Self> {
        Self::new(int(gamma), int(delta), int(epsilon))
    }

    pub fn gamma(&self) -> &Scalar {
        &self.gamma
    }

    pub fn delta(&self) -> &Scalar {
        &self.delta
    }

    pub fn epsilon(&self) -> &Scalar {
        &self.epsilon
    }

    /// Random parameters with numerators in `-4..=4` and denominators in
    /// `1..=3`, redrawing `delta` until it avoids 0 and 1.
    pub fn random(rng: &mut impl Rng) -> Self {
        let mut draw = || ratio(rng.gen_range(-4..=4), rng.gen_range(1..=3));
        let gamma = draw();
        let epsilon = draw();
        let delta = loop {
            let d = draw();
            if !d.is_zero() && !d.is_one() {
                break d;
            }
        };
        AlbertParams {
            gamma,
            delta,
            epsilon,
        }
    }
}

const ALBERT_BASIS: [&str; 5] = ["e", "u", "v", "w", "z"];

/// Albert's five-dimensional right alternative algebra with basis
/// `{e, u, v, w, z}`: `e² = e, eu = v, ue = u, ew = w - z, ez = z = ze`,
/// all other basis products zero, twisting map the identity.
pub fn albert5_base() -> HomAlgebra {
    let (e, u, v, w, z) = (0, 1, 2, 3, 4);
    let constants = vec![
        (e, e, e, int(1)),
        (e, u, v, int(1)),
        (u, e, u, int(1)),
        (e, w, w, int(1)),
        (e, w, z, int(-1)),
        (e, z, z, int(1)),
        (z, e, z, int(1)),
    ];
    HomAlgebra::from_constants(
        ALBERT_BASIS.iter().map(|s| s.to_string()).collect(),
        constants,
        Matrix::identity(5),
    )
    .expect("well-formed builtin")
}

/// The algebra morphism `e ↦ e + εu + εv, u ↦ δu, v ↦ δv, w ↦ γw, z ↦ γz`
/// of the base Albert algebra.
pub fn albert5_alpha(p: &AlbertParams) -> Matrix {
    let o = Scalar::zero;
    let rows = vec![
        Vector::new(vec![int(1), p.epsilon.clone(), p.epsilon.clone(), o(), o()]),
        Vector::new(vec![o(), p.delta.clone(), o(), o(), o()]),
        Vector::new(vec![o(), o(), p.delta.clone(), o(), o()]),
        Vector::new(vec![o(), o(), o(), p.gamma.clone(), o()]),
        Vector::new(vec![o(), o(), o(), o(), p.gamma.clone()]),
    ];
    Matrix::from_rows(rows).expect("5x5")
}

/// The multiplicative right Hom-alternative algebra obtained by twisting
/// the base Albert algebra by `albert5_alpha(p)`.
pub fn albert5_twisted(p: &AlbertParams) -> Result<HomAlgebra> {
    yau_twist(&albert5_base(), &albert5_alpha(p))
}

/// The full matrix algebra `M_n` (associative) with basis `E_ij` named
/// `m{i}{j}` and identity twisting map.
pub fn matrix_algebra(n: usize) -> HomAlgebra {
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("m{i}{j}")))
        .collect();
    let idx = |i: usize, j: usize| i * n + j;
    let mut constants = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                constants.push((idx(i, j), idx(j, l), idx(i, l), int(1)));
            }
        }
    }
    HomAlgebra::from_constants(names, constants, Matrix::identity(n * n))
        .expect("well-formed builtin")
}

/// One-sided certificate of non-isomorphism: `true` when the twisting maps
/// have different characteristic polynomials, so no Hom-module isomorphism
/// can exist. `false` means inconclusive.
pub fn hom_module_distinguish(a: &HomAlgebra, b: &HomAlgebra) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(a.alpha().char_poly()? != b.alpha().char_poly()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta_restrictions() {
        assert!(AlbertParams::from_ints(2, 0, 0).is_err());
        assert!(AlbertParams::from_ints(2, 1, 0).is_err());
        assert!(AlbertParams::from_ints(0, -1, 0).is_ok());
    }

    #[test]
    fn base_table_entries() {
        let a = albert5_base();
        let prod = |x: &str, y: &str| a.mul(&a.named(x), &a.named(y)).unwrap();
        assert_eq!(prod("e", "u"), a.named("v"));
        assert_eq!(prod("u", "e"), a.named("u"));
        assert!(prod("u", "u").is_zero());
        assert_eq!(prod("e", "w"), a.named("w").try_sub(&a.named("z")).unwrap());
        assert_eq!(prod("z", "e"), a.named("z"));
        assert!(prod("w", "e").is_zero());
    }

    #[test]
    fn twist_by_identity_is_noop() {
        let a = albert5_twisted(&AlbertParams::from_ints(2, 3, 5).unwrap()).unwrap();
        assert_eq!(yau_twist(&a, &Matrix::identity(5)).unwrap(), a);
        assert_eq!(derived_algebra(&a, 0).unwrap(), a);
    }

    #[test]
    fn twist_rejects_non_morphism() {
        // Swapping e and u: beta(e e) = u but beta(e) beta(e) = u u = 0.
        let a = albert5_base();
        let mut swap = Matrix::identity(5);
        swap.set(0, 0, int(0));
        swap.set(1, 1, int(0));
        swap.set(0, 1, int(1));
        swap.set(1, 0, int(1));
        assert_eq!(
            yau_twist(&a, &swap).unwrap_err(),
            AlgebraError::NotWeakMorphism { i: 0, j: 0 }
        );
    }

    #[test]
    fn plus_of_commutative_is_unchanged() {
        let p = plus_algebra(&albert5_base());
        assert_eq!(plus_algebra(&p), p);
    }

    #[test]
    fn distinguish_dimension_mismatch() {
        assert!(hom_module_distinguish(&albert5_base(), &matrix_algebra(2)).is_err());
    }
}
