//! Idempotents `e^2 = e = alpha(e)` and the decomposition
//! `A = A_e(alpha) + A_e(0)`, where `A_e(i alpha) = {a : ae = i alpha(a)}`.

use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{Element, HomAlgebra};
use crate::error::{AlgebraError, Result};
use crate::linalg::{in_span, ratio, Matrix, Scalar, Vector};

/// `e^2 = e` and `alpha(e) = e`. The zero element qualifies.
pub fn is_idempotent(a: &HomAlgebra, e: &Element) -> Result<bool> {
    Ok(a.mul(e, e)? == *e && a.apply_alpha(e)? == *e)
}

/// Distinct nonzero rationals `p/q` with `|p| <= height`, `1 <= q <= height`,
/// ascending.
fn candidate_values(height: i64) -> Vec<Scalar> {
    let mut values: Vec<Scalar> = (1..=height)
        .flat_map(|q| {
            (-height..=height)
                .filter(|p| *p != 0)
                .map(move |p| ratio(p, q))
        })
        .collect();
    values.sort();
    values.dedup();
    values
}

/// All nonzero idempotents whose coordinates come from
/// `{p/q : |p| <= height, 1 <= q <= height}` and whose support has at most
/// two basis elements. Singletons come first, then pairs, in lexicographic
/// order of support and values.
pub fn idempotent_search(a: &HomAlgebra, height: u32) -> Vec<Element> {
    let dim = a.dim();
    let values = candidate_values(height as i64);
    let mut supports: Vec<Vec<usize>> = (0..dim).map(|i| vec![i]).collect();
    for i in 0..dim {
        for j in i + 1..dim {
            supports.push(vec![i, j]);
        }
    }
    let check = |coords: Vector| {
        let e = a.element(coords).expect("right length");
        is_idempotent(a, &e).expect("own element").then_some(e)
    };
    supports
        .par_iter()
        .flat_map_iter(|support| {
            let mut found = Vec::new();
            match support.as_slice() {
                [i] => {
                    for c in &values {
                        let mut v = vec![Scalar::zero(); dim];
                        v[*i] = c.clone();
                        found.extend(check(Vector::new(v)));
                    }
                }
                [i, j] => {
                    for ci in &values {
                        for cj in &values {
                            let mut v = vec![Scalar::zero(); dim];
                            v[*i] = ci.clone();
                            v[*j] = cj.clone();
                            found.extend(check(Vector::new(v)));
                        }
                    }
                }
                _ => unreachable!(),
            }
            found.into_iter()
        })
        .collect()
}

/// Bases of `A_e(alpha)` and `A_e(0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub idem: Element,
    pub part_alpha: Vec<Vector>,
    pub part_zero: Vec<Vector>,
    pub is_direct: bool,
    pub spans_all: bool,
}

impl Decomposition {
    /// Whether `alpha` maps the span of each part into itself.
    pub fn alpha_closed(&self, a: &HomAlgebra) -> Result<bool> {
        for part in [&self.part_alpha, &self.part_zero] {
            for v in part.iter() {
                if !in_span(part, &a.alpha_vec(v))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Matrix of `R_x : a -> ax`, rows are images of basis vectors.
pub(crate) fn right_mul_matrix(a: &HomAlgebra, x: &Vector) -> Matrix {
    let rows = (0..a.dim())
        .map(|i| a.mul_vec(&Vector::unit(a.dim(), i), x))
        .collect();
    Matrix::from_rows(rows).expect("square")
}

fn check_preconditions(a: &HomAlgebra, e: &Element) -> Result<()> {
    if !is_idempotent(a, e)? {
        return Err(AlgebraError::NotIdempotent);
    }
    let rank = a.alpha().rank();
    if rank < a.dim() {
        return Err(AlgebraError::AlphaNotSurjective { rank, dim: a.dim() });
    }
    Ok(())
}

/// Whether `v e = alpha(v)` (`scaled_by_alpha = true`) or `v e = 0`.
pub fn in_part(a: &HomAlgebra, e: &Element, v: &Vector, scaled_by_alpha: bool) -> bool {
    let ve = a.mul_vec(v, e.coords());
    if scaled_by_alpha {
        ve == a.alpha_vec(v)
    } else {
        ve.is_zero()
    }
}

/// Computes both parts as kernels of `R_e - alpha` and `R_e`.
pub fn albert_decomposition(a: &HomAlgebra, e: &Element) -> Result<Decomposition> {
    check_preconditions(a, e)?;
    let re = right_mul_matrix(a, e.coords());
    let part_alpha = re.sub(a.alpha())?.left_kernel_basis();
    let part_zero = re.left_kernel_basis();
    let combined: Vec<Vector> = part_alpha.iter().chain(&part_zero).cloned().collect();
    let rank = if combined.is_empty() {
        0
    } else {
        Matrix::from_rows(combined.clone())?.rank()
    };
    Ok(Decomposition {
        idem: e.clone(),
        is_direct: rank == combined.len(),
        spans_all: rank == a.dim(),
        part_alpha,
        part_zero,
    })
}

/// Splits `b` as `ae + (b - ae)` where `alpha(a) = b`, taking the canonical
/// echelon preimage `a`. The first part lies in `A_e(alpha)`, the second in
/// `A_e(0)`.
pub fn decompose_element(a: &HomAlgebra, e: &Element, b: &Element) -> Result<(Element, Element)> {
    check_preconditions(a, e)?;
    let b = a.apply_alpha_pow(b, 0)?;
    let pre = a
        .alpha()
        .transpose()
        .solve(b.coords())?
        .ok_or(AlgebraError::Inconsistent)?;
    let ae = a.element(a.mul_vec(&pre, e.coords()))?;
    let rest = b.try_sub(&ae)?;
    Ok((ae, rest))
}
