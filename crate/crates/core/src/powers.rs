//! Hom-powers `x^n = x^{n-1} alpha^{n-2}(x)` and the two-index powers
//! `x^{i,j} = alpha^{j-1}(x^i) alpha^{i-1}(x^j)`.

use std::collections::HashMap;

use crate::algebra::{Element, HomAlgebra};
use crate::error::{AlgebraError, Result};
use crate::linalg::{int, Vector};
use crate::polarize::{polarized_sweep, sample_elements};
use crate::report::{CheckReport, Witness};

/// Memoized Hom-powers of a single element.
pub struct PowerTable<'a> {
    algebra: &'a HomAlgebra,
    /// `twisted[k]` is `alpha^k(x)`.
    twisted: Vec<Vector>,
    /// `powers[n - 1]` is `x^n`.
    powers: Vec<Vector>,
    pairs: HashMap<(u32, u32), Vector>,
}

impl<'a> PowerTable<'a> {
    pub fn new(algebra: &'a HomAlgebra, x: Vector) -> Self {
        PowerTable {
            algebra,
            twisted: vec![x.clone()],
            powers: vec![x],
            pairs: HashMap::new(),
        }
    }

    pub fn base(&self) -> &Vector {
        &self.powers[0]
    }

    fn twisted(&mut self, k: usize) -> &Vector {
        while self.twisted.len() <= k {
            let next = self
                .algebra
                .alpha_vec(self.twisted.last().expect("nonempty"));
            self.twisted.push(next);
        }
        &self.twisted[k]
    }

    /// `x^n` for `n >= 1`.
    pub fn power(&mut self, n: u32) -> Vector {
        assert!(n >= 1, "Hom-powers start at 1");
        while self.powers.len() < n as usize {
            let m = self.powers.len() + 1;
            let factor = self.twisted(m - 2).clone();
            let next = self.algebra.mul_vec(&self.powers[m - 2], &factor);
            self.powers.push(next);
        }
        self.powers[n as usize - 1].clone()
    }

    /// `x^{i,j}` for `i, j >= 1`.
    pub fn pair(&mut self, i: u32, j: u32) -> Vector {
        if let Some(v) = self.pairs.get(&(i, j)) {
            return v.clone();
        }
        let left = self.algebra.alpha_pow_vec(&self.power(i), j - 1);
        let right = self.algebra.alpha_pow_vec(&self.power(j), i - 1);
        let v = self.algebra.mul_vec(&left, &right);
        self.pairs.insert((i, j), v.clone());
        v
    }
}

/// The `n`th Hom-power of `x`; `n = 0` is rejected.
pub fn hom_power(a: &HomAlgebra, x: &Element, n: u32) -> Result<Element> {
    if n == 0 {
        return Err(AlgebraError::InvalidParameter(
            "Hom-power exponent must be at least 1".into(),
        ));
    }
    let x = a.apply_alpha_pow(x, 0)?;
    a.element(PowerTable::new(a, x.into_coords()).power(n))
}

/// `x^{i,j}` for `i, j >= 1`.
pub fn hom_power_pair(a: &HomAlgebra, x: &Element, i: u32, j: u32) -> Result<Element> {
    if i == 0 || j == 0 {
        return Err(AlgebraError::InvalidParameter(
            "power indices must be at least 1".into(),
        ));
    }
    let x = a.apply_alpha_pow(x, 0)?;
    a.element(PowerTable::new(a, x.into_coords()).pair(i, j))
}

fn require_degree(n: u32) -> Result<()> {
    if n < 2 {
        return Err(AlgebraError::InvalidParameter(format!(
            "power degree must be at least 2 (got {n})"
        )));
    }
    Ok(())
}

/// Checks `x^n = x^{n-i,i}` for every split `i` on `samples` seeded random
/// elements. Requires `a` multiplicative.
pub fn check_nth_hom_power_associative(
    a: &HomAlgebra,
    n: u32,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    require_degree(n)?;
    a.require_multiplicative()?;
    let law = format!("hom-power-associative(n={n})");
    for x in sample_elements(a.dim(), samples, seed) {
        let mut table = PowerTable::new(a, x.clone());
        let xn = table.power(n);
        for i in 1..n {
            let split = table.pair(n - i, i);
            if split != xn {
                return Ok(CheckReport::fail(
                    law,
                    Witness::Power { x, n, i },
                    xn,
                    split,
                ));
            }
        }
    }
    Ok(CheckReport::pass(law))
}

/// Deterministic variant: checks `x^n = x^{n-i,i}` by polarizing the
/// degree-`n` identity over basis multisets. Cost grows like `2^n · C(dim+n-1, n)`.
pub fn check_nth_hom_power_associative_polarized(a: &HomAlgebra, n: u32) -> Result<CheckReport> {
    require_degree(n)?;
    a.require_multiplicative()?;
    let law = format!("hom-power-associative-polarized(n={n})");
    for i in 1..n {
        let failure = polarized_sweep(a.dim(), &[n as usize], |args| {
            let mut table = PowerTable::new(a, args[0].clone());
            (table.power(n), table.pair(n - i, i))
        });
        if let Some(f) = failure {
            return Ok(CheckReport::fail(
                law,
                Witness::Basis(f.slots),
                f.lhs,
                f.rhs,
            ));
        }
    }
    Ok(CheckReport::pass(law))
}

/// The identities `x^2 alpha(x) = alpha(x) x^2` and
/// `x^4 = alpha(x^2) alpha(x^2)`, each checked on samples and by
/// polarization.
pub fn third_fourth_reports(a: &HomAlgebra, samples: usize, seed: u64) -> Result<Vec<CheckReport>> {
    a.require_multiplicative()?;
    let third = |x: &Vector| {
        let x2 = a.mul_vec(x, x);
        let ax = a.alpha_vec(x);
        (a.mul_vec(&x2, &ax), a.mul_vec(&ax, &x2))
    };
    let fourth = |x: &Vector| {
        let mut table = PowerTable::new(a, x.clone());
        let ax2 = a.alpha_vec(&table.power(2));
        (table.power(4), a.mul_vec(&ax2, &ax2))
    };
    let xs = sample_elements(a.dim(), samples, seed);
    let sampled = |law: &str, f: &dyn Fn(&Vector) -> (Vector, Vector)| {
        for x in &xs {
            let (l, r) = f(x);
            if l != r {
                return CheckReport::fail(law, Witness::Elements(vec![x.clone()]), l, r);
            }
        }
        CheckReport::pass(law)
    };
    let polarized = |law: &str, degree: usize, f: &(dyn Fn(&Vector) -> (Vector, Vector) + Sync)| {
        match polarized_sweep(a.dim(), &[degree], |args| f(&args[0])) {
            None => CheckReport::pass(law),
            Some(fail) => CheckReport::fail(law, Witness::Basis(fail.slots), fail.lhs, fail.rhs),
        }
    };
    Ok(vec![
        sampled("third-power-commutes(sampled)", &third),
        polarized("third-power-commutes(polarized)", 3, &third),
        sampled("fourth-power-square(sampled)", &fourth),
        polarized("fourth-power-square(polarized)", 4, &fourth),
    ])
}

/// Folded form of [`third_fourth_reports`].
pub fn check_third_fourth_criterion(
    a: &HomAlgebra,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    Ok(CheckReport::all(
        "third-fourth-criterion",
        &third_fourth_reports(a, samples, seed)?,
    ))
}

/// The induction step `2 x^{n-(i+1),i+1} = x^n + x^{n-i,i}` for
/// `3 <= n <= nmax` and `1 <= i <= n-2`, on samples.
pub fn check_power_induction_step(
    a: &HomAlgebra,
    nmax: u32,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    a.require_multiplicative()?;
    let law = "hom-power-induction-step";
    let two = int(2);
    for x in sample_elements(a.dim(), samples, seed) {
        let mut table = PowerTable::new(a, x.clone());
        for n in 3..=nmax {
            for i in 1..=n - 2 {
                let lhs = table.pair(n - (i + 1), i + 1).scale(&two);
                let rhs = &table.power(n) + &table.pair(n - i, i);
                if lhs != rhs {
                    return Ok(CheckReport::fail(law, Witness::Power { x, n, i }, lhs, rhs));
                }
            }
        }
    }
    Ok(CheckReport::pass(law))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{albert5_base, albert5_twisted, AlbertParams};

    #[test]
    fn low_powers() {
        let a = albert5_twisted(&AlbertParams::from_ints(2, 3, 5).unwrap()).unwrap();
        let x = a.element_from_ints(&[1, 2, -1, 1, 3]).unwrap();
        assert_eq!(hom_power(&a, &x, 1).unwrap(), x);
        assert_eq!(hom_power(&a, &x, 2).unwrap(), a.mul(&x, &x).unwrap());
        assert_eq!(
            hom_power_pair(&a, &x, 1, 1).unwrap(),
            a.mul(&x, &x).unwrap()
        );
        assert!(hom_power(&a, &x, 0).is_err());
        assert!(hom_power_pair(&a, &x, 0, 2).is_err());
    }

    #[test]
    fn identity_twist_pairs_are_plain_products() {
        let a = albert5_base();
        let x = a.element_from_ints(&[1, 1, 0, 2, -1]).unwrap();
        for i in 1..4 {
            for j in 1..4 {
                let xi = hom_power(&a, &x, i).unwrap();
                let xj = hom_power(&a, &x, j).unwrap();
                assert_eq!(
                    hom_power_pair(&a, &x, i, j).unwrap(),
                    a.mul(&xi, &xj).unwrap()
                );
            }
        }
    }

    #[test]
    fn zero_satisfies_criterion_trivially() {
        let a = albert5_twisted(&AlbertParams::from_ints(2, 3, 5).unwrap()).unwrap();
        let mut t = PowerTable::new(&a, Vector::zeros(5));
        assert!(t.power(4).is_zero());
        assert!(t.pair(2, 2).is_zero());
    }

    #[test]
    fn degree_must_be_at_least_two() {
        assert!(check_nth_hom_power_associative(&albert5_base(), 1, 1, 0).is_err());
    }
}
