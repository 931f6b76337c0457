//! Hom-Jordan algebras and Hom-Jordan admissibility.
//!
//! A Hom-algebra is Hom-Jordan when it is commutative and satisfies
//! `as(x^2, alpha(y), alpha(x)) = 0`; it is Hom-Jordan admissible when its
//! plus algebra is Hom-Jordan. The identity has degree 3 in `x` and 1 in `y`
//! and is verified by polarization over basis tuples.

use crate::algebra::HomAlgebra;
use crate::constructions::plus_algebra;
use crate::linalg::{ratio, Vector};
use crate::polarize::polarized_sweep;
use crate::report::{CheckReport, Witness};

const DEGREES: [usize; 2] = [3, 1];

fn sweep(
    law: &str,
    dim: usize,
    eval: impl Fn(&Vector, &Vector) -> (Vector, Vector) + Sync,
) -> CheckReport {
    match polarized_sweep(dim, &DEGREES, |args| eval(&args[0], &args[1])) {
        None => CheckReport::pass(law),
        Some(f) => CheckReport::fail(law, Witness::Basis(f.slots), f.lhs, f.rhs),
    }
}

/// Commutativity, then the Hom-Jordan identity.
pub fn check_hom_jordan(a: &HomAlgebra) -> CheckReport {
    let commutative = a.is_commutative();
    if !commutative.passed {
        return commutative.named("hom-jordan(commutative)");
    }
    sweep("hom-jordan", a.dim(), |x, y| {
        let x2 = a.mul_vec(x, x);
        let lhs = a.associator_vec(&x2, &a.alpha_vec(y), &a.alpha_vec(x));
        (lhs, Vector::zeros(a.dim()))
    })
}

/// Verdicts of the two routes to Hom-Jordan admissibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Admissibility {
    /// `check_hom_jordan` on the plus algebra.
    pub via_plus: CheckReport,
    /// `(alpha(x)*alpha(y))*alpha(x^2) = alpha^2(x)*(alpha(y)*x^2)` on `a`.
    pub direct: CheckReport,
}

impl Admissibility {
    pub fn agree(&self) -> bool {
        self.via_plus.passed == self.direct.passed
    }

    pub fn into_report(self) -> CheckReport {
        let law = "hom-jordan-admissible";
        if !self.agree() {
            return CheckReport::fail_bare(
                law,
                Witness::Disagreement {
                    first: self.via_plus.passed,
                    second: self.direct.passed,
                },
            );
        }
        self.direct.named(law)
    }
}

pub fn hom_jordan_admissibility(a: &HomAlgebra) -> Admissibility {
    let plus = plus_algebra(a);
    let via_plus = check_hom_jordan(&plus).named("hom-jordan-admissible(plus)");
    let half = ratio(1, 2);
    let star = |p: &Vector, q: &Vector| (&a.mul_vec(p, q) + &a.mul_vec(q, p)).scale(&half);
    let direct = sweep("hom-jordan-admissible(direct)", a.dim(), |x, y| {
        let ax = a.alpha_vec(x);
        let ay = a.alpha_vec(y);
        let x2 = a.mul_vec(x, x);
        let lhs = star(&star(&ax, &ay), &a.alpha_vec(&x2));
        let rhs = star(&a.alpha_vec(&ax), &star(&ay, &x2));
        (lhs, rhs)
    });
    Admissibility { via_plus, direct }
}

/// Both routes must pass and agree.
pub fn check_hom_jordan_admissible(a: &HomAlgebra) -> CheckReport {
    hom_jordan_admissibility(a).into_report()
}
