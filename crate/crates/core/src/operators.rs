//! Multiplication operators `L_x : a -> xa`, `R_x : a -> ax` and the twisting
//! map as matrices acting on row vectors from the right.
//!
//! A row vector `a` is sent to `a·M`, so the composite "first `F`, then `G`",
//! written `FG`, has matrix `F.matrix · G.matrix`. For example
//! `a(L_x R_y) = (xa)y`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, HomAlgebra};
use crate::error::{AlgebraError, Result};
use crate::idempotents::is_idempotent;
use crate::linalg::{int, Matrix, Scalar, Vector};
use crate::polarize::sample_element;
use crate::report::{CheckReport, Witness};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    LeftMul(Vector),
    RightMul(Vector),
    Twist,
    Composite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulOperator {
    pub matrix: Matrix,
    pub kind: OperatorKind,
}

impl MulOperator {
    pub fn composite(matrix: Matrix) -> Self {
        MulOperator {
            matrix,
            kind: OperatorKind::Composite,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `a -> a·matrix`.
    pub fn apply(&self, a: &Vector) -> Result<Vector> {
        a.mul_matrix(&self.matrix)
    }

    /// `self` first, then `next`.
    pub fn then(&self, next: &MulOperator) -> Result<MulOperator> {
        Ok(Self::composite(self.matrix.mul(&next.matrix)?))
    }

    pub fn pow(&self, k: u32) -> Result<MulOperator> {
        Ok(Self::composite(self.matrix.pow(k)?))
    }

    pub fn plus(&self, other: &MulOperator) -> Result<MulOperator> {
        Ok(Self::composite(self.matrix.add(&other.matrix)?))
    }

    pub fn minus(&self, other: &MulOperator) -> Result<MulOperator> {
        Ok(Self::composite(self.matrix.sub(&other.matrix)?))
    }

    pub fn scale(&self, k: &Scalar) -> MulOperator {
        Self::composite(self.matrix.scale(k))
    }
}

fn operator_rows(a: &HomAlgebra, image: impl Fn(&Vector) -> Vector) -> Matrix {
    let rows = (0..a.dim())
        .map(|i| image(&Vector::unit(a.dim(), i)))
        .collect();
    Matrix::from_rows(rows).expect("square")
}

/// `L_x`: row `i` is `x e_i`.
pub fn left_op(a: &HomAlgebra, x: &Element) -> Result<MulOperator> {
    let x = a.apply_alpha_pow(x, 0)?.into_coords();
    Ok(MulOperator {
        matrix: operator_rows(a, |ei| a.mul_vec(&x, ei)),
        kind: OperatorKind::LeftMul(x),
    })
}

/// `R_x`: row `i` is `e_i x`.
pub fn right_op(a: &HomAlgebra, x: &Element) -> Result<MulOperator> {
    let x = a.apply_alpha_pow(x, 0)?.into_coords();
    Ok(MulOperator {
        matrix: operator_rows(a, |ei| a.mul_vec(ei, &x)),
        kind: OperatorKind::RightMul(x),
    })
}

pub fn twist_op(a: &HomAlgebra) -> MulOperator {
    MulOperator {
        matrix: a.alpha().clone(),
        kind: OperatorKind::Twist,
    }
}

/// `[f, g] = fg - gf`.
pub fn op_commutator(f: &MulOperator, g: &MulOperator) -> Result<MulOperator> {
    f.then(g)?.minus(&g.then(f)?)
}

/// First row where two matrices differ.
fn first_difference(lhs: &Matrix, rhs: &Matrix) -> Option<(usize, Vector, Vector)> {
    (0..lhs.rows()).find_map(|i| {
        let (l, r) = (lhs.row(i), rhs.row(i));
        (l != r).then_some((i, l, r))
    })
}

fn compare(law: &str, lhs: &MulOperator, rhs: &MulOperator) -> CheckReport {
    match first_difference(&lhs.matrix, &rhs.matrix) {
        None => CheckReport::pass(law),
        Some((row, l, r)) => CheckReport::fail(
            law,
            Witness::Operator {
                identity: law.to_string(),
                row,
            },
            l,
            r,
        ),
    }
}

fn left_matrix(a: &HomAlgebra, x: &Vector) -> Matrix {
    operator_rows(a, |ei| a.mul_vec(x, ei))
}

fn right_matrix(a: &HomAlgebra, x: &Vector) -> Matrix {
    operator_rows(a, |ei| a.mul_vec(ei, x))
}

/// Both sides of `R_x R_{α(x)} = α R_{xx}`.
fn right_square_sides(a: &HomAlgebra, x: &Vector) -> Result<(Matrix, Matrix)> {
    let lhs = right_matrix(a, x).mul(&right_matrix(a, &a.alpha_vec(x)))?;
    let rhs = a.alpha().mul(&right_matrix(a, &a.mul_vec(x, x)))?;
    Ok((lhs, rhs))
}

/// Both sides of `L_y L_{α(x)} - α L_{xy} = L_x R_{α(y)} - R_y L_{α(x)}`.
fn left_product_sides(a: &HomAlgebra, x: &Vector, y: &Vector) -> Result<(Matrix, Matrix)> {
    let (ax, ay) = (a.alpha_vec(x), a.alpha_vec(y));
    let lhs = left_matrix(a, y)
        .mul(&left_matrix(a, &ax))?
        .sub(&a.alpha().mul(&left_matrix(a, &a.mul_vec(x, y)))?)?;
    let rhs = left_matrix(a, x)
        .mul(&right_matrix(a, &ay))?
        .sub(&right_matrix(a, y).mul(&left_matrix(a, &ax))?)?;
    Ok((lhs, rhs))
}

fn element_failure(
    law: &str,
    xs: Vec<Vector>,
    sides: Result<(Matrix, Matrix)>,
) -> Option<CheckReport> {
    let (lhs, rhs) = sides.expect("square operators of equal size");
    first_difference(&lhs, &rhs)
        .map(|(_, l, r)| CheckReport::fail(law, Witness::Elements(xs), l, r))
}

/// The two operator identities of right Hom-alternative algebras:
/// `R_x R_{α(x)} = α R_{xx}` on sampled `x`, and
/// `L_y L_{α(x)} - α L_{xy} = L_x R_{α(y)} - R_y L_{α(x)}` on all basis pairs
/// and sampled pairs. A failure carries the elements and the first differing
/// matrix rows.
pub fn right_alternative_operator_reports(
    a: &HomAlgebra,
    samples: usize,
    seed: u64,
) -> Vec<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(Vector, Vector)> = (0..samples)
        .map(|_| {
            (
                sample_element(&mut rng, a.dim()),
                sample_element(&mut rng, a.dim()),
            )
        })
        .collect();

    let square_law = "right-square-operator";
    let square = pairs
        .iter()
        .find_map(|(x, _)| element_failure(square_law, vec![x.clone()], right_square_sides(a, x)))
        .unwrap_or_else(|| CheckReport::pass(square_law));

    let product_law = "left-product-operator";
    let dim = a.dim();
    let basis_pairs =
        (0..dim).flat_map(|i| (0..dim).map(move |j| (Vector::unit(dim, i), Vector::unit(dim, j))));
    let product = basis_pairs
        .chain(pairs.iter().cloned())
        .find_map(|(x, y)| {
            let sides = left_product_sides(a, &x, &y);
            element_failure(product_law, vec![x, y], sides)
        })
        .unwrap_or_else(|| CheckReport::pass(product_law));
    vec![square, product]
}

/// Folded form of [`right_alternative_operator_reports`].
pub fn check_right_alternative_operators(a: &HomAlgebra, samples: usize, seed: u64) -> CheckReport {
    CheckReport::all(
        "right-alternative-operators",
        &right_alternative_operator_reports(a, samples, seed),
    )
}

/// `T = 3α²L_e² - 2αL_e³`.
pub fn build_t(a: &HomAlgebra, e: &Element) -> Result<MulOperator> {
    let l = left_op(a, e)?;
    let alpha = twist_op(a);
    let first = alpha.pow(2)?.then(&l.pow(2)?)?.scale(&int(3));
    let second = alpha.then(&l.pow(3)?)?.scale(&int(2));
    first.minus(&second)
}

/// `f² = αⁿ f`. Negative `n` needs an invertible `α`.
pub fn is_alpha_n_idempotent(f: &MulOperator, alpha: &MulOperator, n: i64) -> Result<bool> {
    if !f.matrix.is_square() {
        return Err(AlgebraError::NotSquare {
            rows: f.matrix.rows(),
            cols: f.matrix.cols(),
        });
    }
    if !alpha.matrix.is_square() || alpha.dim() != f.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: f.dim(),
            found: alpha.dim(),
        });
    }
    let base = if n >= 0 {
        alpha.matrix.clone()
    } else {
        alpha.matrix.inverse()?.ok_or(AlgebraError::SingularTwist)?
    };
    let power = base.pow(n.unsigned_abs() as u32)?;
    Ok(f.matrix.mul(&f.matrix)? == power.mul(&f.matrix)?)
}

/// Operator identities of an idempotent `e` in a multiplicative right
/// Hom-alternative algebra, with `L = L_e`, `R = R_e`:
///
/// - `R^{n+1} = αⁿR` for `0 <= n <= nmax`
/// - `L² - αL = [L, R]`
/// - `[α, L] = 0 = [α, R]`
/// - `(L² - αL)² = 0` and `[L, R]² = 0`
/// - `LRL = αLR` and `L³ - αL² = αLR - RLR`
/// - `k(L^{k+1} - αL^k) = [L^k, R]` for `1 <= k <= 4`
/// - `T^{n+1} = α^{4n}T` for `1 <= n <= 4` and `[T, R] = 0`
pub fn idempotent_operator_reports(
    a: &HomAlgebra,
    e: &Element,
    nmax: u32,
) -> Result<Vec<CheckReport>> {
    if !is_idempotent(a, e)? {
        return Err(AlgebraError::NotIdempotent);
    }
    a.require_multiplicative()?;
    a.require_right_hom_alternative()?;
    let l = left_op(a, e)?;
    let r = right_op(a, e)?;
    let alpha = twist_op(a);
    let zero = MulOperator::composite(Matrix::zeros(a.dim(), a.dim()));
    let mut reports = Vec::new();

    for n in 0..=nmax {
        let rhs = alpha.pow(n)?.then(&r)?;
        reports.push(compare(
            &format!("right-power(n={n})"),
            &r.pow(n + 1)?,
            &rhs,
        ));
    }
    let lr = op_commutator(&l, &r)?;
    let defect = l.pow(2)?.minus(&alpha.then(&l)?)?;
    reports.push(compare("left-square-defect", &defect, &lr));
    reports.push(compare(
        "twist-commutes-left",
        &op_commutator(&alpha, &l)?,
        &zero,
    ));
    reports.push(compare(
        "twist-commutes-right",
        &op_commutator(&alpha, &r)?,
        &zero,
    ));
    reports.push(compare(
        "left-square-defect-nilpotent",
        &defect.pow(2)?,
        &zero,
    ));
    reports.push(compare(
        "left-right-commutator-nilpotent",
        &lr.pow(2)?,
        &zero,
    ));
    let alr = alpha.then(&l)?.then(&r)?;
    reports.push(compare("left-right-left", &l.then(&r)?.then(&l)?, &alr));
    let cube = l.pow(3)?.minus(&alpha.then(&l.pow(2)?)?)?;
    reports.push(compare(
        "left-cube",
        &cube,
        &alr.minus(&r.then(&l)?.then(&r)?)?,
    ));
    for k in 1..=4u32 {
        let lk = l.pow(k)?;
        let lhs = l
            .pow(k + 1)?
            .minus(&alpha.then(&lk)?)?
            .scale(&int(k as i64));
        reports.push(compare(
            &format!("left-power-commutator(k={k})"),
            &lhs,
            &op_commutator(&lk, &r)?,
        ));
    }
    let t = build_t(a, e)?;
    for n in 1..=4u32 {
        let rhs = alpha.pow(4 * n)?.then(&t)?;
        reports.push(compare(&format!("t-power(n={n})"), &t.pow(n + 1)?, &rhs));
    }
    reports.push(compare("t-commutes-right", &op_commutator(&t, &r)?, &zero));
    Ok(reports)
}

/// Folded form of [`idempotent_operator_reports`].
pub fn check_idempotent_operator_suite(
    a: &HomAlgebra,
    e: &Element,
    nmax: u32,
) -> Result<CheckReport> {
    Ok(CheckReport::all(
        "idempotent-operators",
        &idempotent_operator_reports(a, e, nmax)?,
    ))
}
