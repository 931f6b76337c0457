//! Finite-dimensional Hom-algebras given by structure constants.
//!
//! Elements are coordinate vectors in a fixed basis. The twisting map is
//! stored as a matrix acting on row vectors from the right: row `i` of
//! `alpha` holds the coordinates of `alpha(e_i)`, and `alpha(x) = x · alpha`.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rayon::prelude::*;

use crate::error::{AlgebraError, Result};
use crate::linalg::{Matrix, Scalar, Vector};
use crate::report::{CheckReport, Witness};

/// Identifies the underlying vector space (basis) of an algebra. Algebras
/// built on the same basis, e.g. an algebra and its twists, share it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpaceId(u64);

impl SpaceId {
    fn of_basis(names: &[String]) -> Self {
        let mut h = DefaultHasher::new();
        names.hash(&mut h);
        SpaceId(h.finish())
    }
}

/// An element of a Hom-algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    space: SpaceId,
    coords: Vector,
}

impl Element {
    pub fn coords(&self) -> &Vector {
        &self.coords
    }

    pub fn into_coords(self) -> Vector {
        self.coords
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn scale(&self, k: &Scalar) -> Element {
        Element {
            space: self.space,
            coords: self.coords.scale(k),
        }
    }

    pub fn try_add(&self, other: &Element) -> Result<Element> {
        self.same_space(other)?;
        Ok(Element {
            space: self.space,
            coords: &self.coords + &other.coords,
        })
    }

    pub fn try_sub(&self, other: &Element) -> Result<Element> {
        self.same_space(other)?;
        Ok(Element {
            space: self.space,
            coords: &self.coords - &other.coords,
        })
    }

    fn same_space(&self, other: &Element) -> Result<()> {
        if self.space != other.space {
            return Err(AlgebraError::ForeignElement);
        }
        Ok(())
    }
}

/// A Hom-algebra `(A, mu, alpha)` over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomAlgebra {
    space: SpaceId,
    basis: Vec<String>,
    /// `table[i * dim + j]` holds the coordinates of `e_i e_j`.
    table: Vec<Vector>,
    alpha: Matrix,
}

impl HomAlgebra {
    /// Builds an algebra from basis names, the products of basis pairs in
    /// row-major order, and the twisting matrix.
    pub fn new(basis: Vec<String>, table: Vec<Vector>, alpha: Matrix) -> Result<Self> {
        let dim = basis.len();
        if dim == 0 {
            return Err(AlgebraError::InvalidAlgebra(
                "dimension must be positive".into(),
            ));
        }
        let mut sorted = basis.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != dim {
            return Err(AlgebraError::InvalidAlgebra(
                "basis names must be distinct".into(),
            ));
        }
        if table.len() != dim * dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim * dim,
                found: table.len(),
            });
        }
        if let Some(bad) = table.iter().find(|v| v.len() != dim) {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        if alpha.rows() != dim || alpha.cols() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                found: alpha.rows().max(alpha.cols()),
            });
        }
        Ok(HomAlgebra {
            space: SpaceId::of_basis(&basis),
            basis,
            table,
            alpha,
        })
    }

    /// Builds an algebra from sparse structure constants `(i, j, k, c)`
    /// meaning `e_i e_j` has coefficient `c` on `e_k`. Repeated entries add.
    pub fn from_constants(
        basis: Vec<String>,
        constants: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
        alpha: Matrix,
    ) -> Result<Self> {
        let dim = basis.len();
        let mut table = vec![Vector::zeros(dim); dim * dim];
        for (i, j, k, c) in constants {
            if i >= dim || j >= dim || k >= dim {
                return Err(AlgebraError::InvalidAlgebra(format!(
                    "structure constant index ({i}, {j}, {k}) out of range for dimension {dim}"
                )));
            }
            let mut coords = table[i * dim + j].clone().into_entries();
            coords[k] += c;
            table[i * dim + j] = Vector::new(coords);
        }
        Self::new(basis, table, alpha)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn space(&self) -> SpaceId {
        self.space
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    /// Coordinates of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim() + j]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        self.basis_product(i, j).get(k)
    }

    /// Products of basis pairs, row-major.
    pub fn product_table(&self) -> &[Vector] {
        &self.table
    }

    /// Same product, different twisting map.
    pub fn with_alpha(&self, alpha: Matrix) -> Result<HomAlgebra> {
        HomAlgebra::new(self.basis.clone(), self.table.clone(), alpha)
    }

    /// Same twisting map, different product table.
    pub fn with_table(&self, table: Vec<Vector>) -> Result<HomAlgebra> {
        HomAlgebra::new(self.basis.clone(), table, self.alpha.clone())
    }

    pub fn element(&self, coords: Vector) -> Result<Element> {
        if coords.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim(),
                found: coords.len(),
            });
        }
        Ok(Element {
            space: self.space,
            coords,
        })
    }

    pub fn element_from_ints(&self, coords: &[i64]) -> Result<Element> {
        self.element(Vector::from_ints(coords))
    }

    pub fn basis_element(&self, i: usize) -> Element {
        Element {
            space: self.space,
            coords: Vector::unit(self.dim(), i),
        }
    }

    /// Basis element by name. Panics if the name is unknown.
    pub fn named(&self, name: &str) -> Element {
        let i = self
            .basis_index(name)
            .unwrap_or_else(|| panic!("no basis element named {name:?}"));
        self.basis_element(i)
    }

    pub fn zero(&self) -> Element {
        Element {
            space: self.space,
            coords: Vector::zeros(self.dim()),
        }
    }

    fn owns(&self, x: &Element) -> Result<()> {
        if x.space != self.space {
            return Err(AlgebraError::ForeignElement);
        }
        Ok(())
    }

    // Coordinate-level operations. These skip ownership checks and are what
    // the checkers use in their inner loops.

    /// Bilinear product of coordinate vectors.
    pub fn mul_vec(&self, x: &Vector, y: &Vector) -> Vector {
        let dim = self.dim();
        let mut out = Vector::zeros(dim);
        let ys: Vec<usize> = y.support().collect();
        for i in x.support() {
            for &j in &ys {
                let prod = &self.table[i * dim + j];
                if prod.is_zero() {
                    continue;
                }
                out.add_scaled(&(x.get(i) * y.get(j)), prod);
            }
        }
        out
    }

    pub fn alpha_vec(&self, x: &Vector) -> Vector {
        x.mul_matrix(&self.alpha)
            .expect("dimension checked at construction")
    }

    pub fn alpha_pow_vec(&self, x: &Vector, k: u32) -> Vector {
        (0..k).fold(x.clone(), |acc, _| self.alpha_vec(&acc))
    }

    /// `(xy)alpha(z) - alpha(x)(yz)` on coordinates.
    pub fn associator_vec(&self, x: &Vector, y: &Vector, z: &Vector) -> Vector {
        let left = self.mul_vec(&self.mul_vec(x, y), &self.alpha_vec(z));
        let right = self.mul_vec(&self.alpha_vec(x), &self.mul_vec(y, z));
        &left - &right
    }

    pub fn commutator_vec(&self, x: &Vector, y: &Vector) -> Vector {
        &self.mul_vec(x, y) - &self.mul_vec(y, x)
    }

    // Element-level operations.

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.owns(x)?;
        self.owns(y)?;
        self.element(self.mul_vec(&x.coords, &y.coords))
    }

    pub fn apply_alpha(&self, x: &Element) -> Result<Element> {
        self.owns(x)?;
        self.element(self.alpha_vec(&x.coords))
    }

    pub fn apply_alpha_pow(&self, x: &Element, k: u32) -> Result<Element> {
        self.owns(x)?;
        self.element(self.alpha_pow_vec(&x.coords, k))
    }

    /// The Hom-associator `(xy)alpha(z) - alpha(x)(yz)`.
    pub fn hom_associator(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        self.owns(x)?;
        self.owns(y)?;
        self.owns(z)?;
        self.element(self.associator_vec(&x.coords, &y.coords, &z.coords))
    }

    /// `xy - yx`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        self.owns(x)?;
        self.owns(y)?;
        self.element(self.commutator_vec(&x.coords, &y.coords))
    }

    /// Whether the product is commutative; returns the first non-commuting
    /// basis pair otherwise.
    pub fn is_commutative(&self) -> CheckReport {
        let dim = self.dim();
        for i in 0..dim {
            for j in i + 1..dim {
                let (l, r) = (self.basis_product(i, j), self.basis_product(j, i));
                if l != r {
                    return CheckReport::fail(
                        "commutative",
                        Witness::Basis(vec![i, j]),
                        l.clone(),
                        r.clone(),
                    );
                }
            }
        }
        CheckReport::pass("commutative")
    }

    /// `alpha(e_i e_j) = alpha(e_i) alpha(e_j)` on every basis pair.
    pub fn is_multiplicative(&self) -> CheckReport {
        self.preserves_product(&self.alpha, "multiplicative")
    }

    /// Whether `f` (a self-map, same matrix convention as `alpha`) satisfies
    /// `f(xy) = f(x)f(y)`.
    pub fn is_weak_morphism(&self, f: &Matrix) -> CheckReport {
        self.preserves_product(f, "weak-morphism")
    }

    /// A weak morphism that also commutes with the twisting map.
    pub fn is_morphism(&self, f: &Matrix) -> Result<CheckReport> {
        let report = self.is_weak_morphism(f);
        if !report.passed {
            return Ok(report);
        }
        let fa = self.alpha.mul(f)?;
        let af = f.mul(&self.alpha)?;
        for i in 0..self.dim() {
            if fa.row(i) != af.row(i) {
                return Ok(CheckReport::fail(
                    "morphism",
                    Witness::Basis(vec![i]),
                    fa.row(i),
                    af.row(i),
                ));
            }
        }
        Ok(CheckReport::pass("morphism"))
    }

    fn preserves_product(&self, f: &Matrix, law: &str) -> CheckReport {
        let dim = self.dim();
        let images: Vec<Vector> = (0..dim).map(|i| f.row(i)).collect();
        let failure = (0..dim * dim).into_par_iter().find_map_first(|idx| {
            let (i, j) = (idx / dim, idx % dim);
            let lhs = self.basis_product(i, j).mul_matrix(f).expect("square");
            let rhs = self.mul_vec(&images[i], &images[j]);
            (lhs != rhs).then_some((i, j, lhs, rhs))
        });
        match failure {
            None => CheckReport::pass(law),
            Some((i, j, lhs, rhs)) => CheckReport::fail(law, Witness::Basis(vec![i, j]), lhs, rhs),
        }
    }

    /// Sweeps all basis triples in lexicographic order, comparing
    /// `as(perm_lhs)` with `-as(perm_rhs)`.
    fn associator_sweep(
        &self,
        law: &str,
        other: impl Fn(usize, usize, usize) -> (usize, usize, usize) + Sync,
    ) -> CheckReport {
        let dim = self.dim();
        let basis: Vec<Vector> = (0..dim).map(|i| Vector::unit(dim, i)).collect();
        let failure = (0..dim * dim * dim).into_par_iter().find_map_first(|idx| {
            let (i, j, k) = (idx / (dim * dim), (idx / dim) % dim, idx % dim);
            let lhs = self.associator_vec(&basis[i], &basis[j], &basis[k]);
            let (a, b, c) = other(i, j, k);
            let rhs = -&self.associator_vec(&basis[a], &basis[b], &basis[c]);
            (lhs != rhs).then(|| (vec![i, j, k], lhs, rhs))
        });
        match failure {
            None => CheckReport::pass(law),
            Some((w, lhs, rhs)) => CheckReport::fail(law, Witness::Basis(w), lhs, rhs),
        }
    }

    /// Right Hom-alternativity via its linearization
    /// `as(x,y,z) = -as(x,z,y)` on basis triples.
    pub fn is_right_hom_alternative(&self) -> CheckReport {
        self.associator_sweep("right-hom-alternative", |i, j, k| (i, k, j))
    }

    /// Left Hom-alternativity via `as(x,y,z) = -as(y,x,z)`.
    pub fn is_left_hom_alternative(&self) -> CheckReport {
        self.associator_sweep("left-hom-alternative", |i, j, k| (j, i, k))
    }

    /// Hom-flexibility via `as(x,y,z) = -as(z,y,x)`.
    pub fn is_hom_flexible(&self) -> CheckReport {
        self.associator_sweep("hom-flexible", |i, j, k| (k, j, i))
    }

    /// Returns an error naming the first failing pair unless multiplicative.
    pub fn require_multiplicative(&self) -> Result<()> {
        let report = self.is_multiplicative();
        match report.witness {
            Some(Witness::Basis(ref w)) if !report.passed => {
                Err(AlgebraError::NotMultiplicative { i: w[0], j: w[1] })
            }
            _ => Ok(()),
        }
    }

    pub fn require_right_hom_alternative(&self) -> Result<()> {
        if self.is_right_hom_alternative().passed {
            Ok(())
        } else {
            Err(AlgebraError::NotRightHomAlternative)
        }
    }
}
