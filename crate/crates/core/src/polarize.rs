//! Exhaustive verification of polynomial identities by polarization.
//!
//! A polynomial identity `P(x_1, ..., x_m) = 0` that is homogeneous of degree
//! `d_v` in each variable holds on a vector space over a field of
//! characteristic 0 iff its full multilinearization vanishes on all tuples of
//! basis vectors. For a variable of degree `d`, the multilinearization in
//! fresh slots `s_1..s_d` is
//!
//! ```text
//! sum over S ⊆ {1..d} of (-1)^(d - |S|) P(sum_{k in S} s_k)
//! ```
//!
//! which is symmetric in the slots, so only multisets of basis indices need to
//! be visited.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::linalg::{ratio, Vector};

/// First failing slot assignment of a polarized sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedFailure {
    /// Basis indices, variable by variable, slots in nondecreasing order.
    pub slots: Vec<usize>,
    pub lhs: Vector,
    pub rhs: Vector,
}

/// Nondecreasing sequences of length `len` over `0..dim`, lexicographic.
pub fn multisets(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn rec(dim: usize, len: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for i in start..dim {
            cur.push(i);
            rec(dim, len, i, cur, out);
            cur.pop();
        }
    }
    rec(dim, len, 0, &mut cur, &mut out);
    out
}

/// Signed subset sums `(sign, sum of unit vectors)` for one variable.
fn subset_sums(dim: usize, slots: &[usize]) -> Vec<(bool, Vector)> {
    let d = slots.len();
    (0..1usize << d)
        .map(|mask| {
            let mut v = Vector::zeros(dim);
            let one = ratio(1, 1);
            for (k, &s) in slots.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    v.add_scaled(&one, &Vector::unit(dim, s));
                }
            }
            let negative = (d - mask.count_ones() as usize) % 2 == 1;
            (negative, v)
        })
        .collect()
}

/// Polarized values of `lhs` and `rhs` at one slot assignment.
fn polarized_value<F>(dim: usize, per_var: &[&Vec<usize>], eval: &F) -> (Vector, Vector)
where
    F: Fn(&[Vector]) -> (Vector, Vector),
{
    let sums: Vec<Vec<(bool, Vector)>> = per_var.iter().map(|s| subset_sums(dim, s)).collect();
    let mut lhs = Vector::zeros(dim);
    let mut rhs = Vector::zeros(dim);
    let mut choice = vec![0usize; sums.len()];
    let minus = ratio(-1, 1);
    let plus = ratio(1, 1);
    loop {
        let mut negative = false;
        let args: Vec<Vector> = choice
            .iter()
            .zip(&sums)
            .map(|(&c, options)| {
                negative ^= options[c].0;
                options[c].1.clone()
            })
            .collect();
        let (l, r) = eval(&args);
        let sign = if negative { &minus } else { &plus };
        lhs.add_scaled(sign, &l);
        rhs.add_scaled(sign, &r);
        // odometer over subset choices
        let mut v = 0;
        loop {
            if v == choice.len() {
                return (lhs, rhs);
            }
            choice[v] += 1;
            if choice[v] < sums[v].len() {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
}

/// Checks `lhs(args) = rhs(args)` through full polarization, where
/// `degrees[v]` is the degree of variable `v`. `eval` receives one vector
/// per variable and returns both sides. Returns the lexicographically first
/// failing slot assignment, or `None` if the identity holds.
pub fn polarized_sweep<F>(dim: usize, degrees: &[usize], eval: F) -> Option<PolarizedFailure>
where
    F: Fn(&[Vector]) -> (Vector, Vector) + Sync,
{
    let choices: Vec<Vec<Vec<usize>>> = degrees.iter().map(|&d| multisets(dim, d)).collect();
    let total: usize = choices.iter().map(Vec::len).product();
    (0..total).into_par_iter().find_map_first(|mut idx| {
        let mut per_var = vec![&choices[0][0]; choices.len()];
        for v in (0..choices.len()).rev() {
            let n = choices[v].len();
            per_var[v] = &choices[v][idx % n];
            idx /= n;
        }
        let (lhs, rhs) = polarized_value(dim, &per_var, &eval);
        (lhs != rhs).then(|| PolarizedFailure {
            slots: per_var.iter().flat_map(|s| s.iter().copied()).collect(),
            lhs,
            rhs,
        })
    })
}

/// Random elements used by sampled checks: each coordinate is `p/q` with
/// `p` in `-3..=3` and `q` in `{1, 2, 3}`, drawn from ChaCha8 seeded with
/// `seed`.
pub fn sample_elements(dim: usize, count: usize, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_element(&mut rng, dim)).collect()
}

pub fn sample_element(rng: &mut impl Rng, dim: usize) -> Vector {
    Vector::new(
        (0..dim)
            .map(|_| ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_counts() {
        assert_eq!(multisets(5, 2).len(), 15);
        assert_eq!(multisets(5, 3).len(), 35);
        assert_eq!(multisets(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(multisets(2, 2), vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
    }

    #[test]
    fn polarization_of_square_is_twice_the_symmetric_product() {
        // P(x) = (x_0)^2 · e_0 in dimension 2: linearization is 2 s_0 t_0.
        let eval = |args: &[Vector]| {
            let c = args[0].get(0) * args[0].get(0);
            (Vector::new(vec![c, ratio(0, 1)]), Vector::zeros(2))
        };
        let fail = polarized_sweep(2, &[2], eval).unwrap();
        assert_eq!(fail.slots, vec![0, 0]);
        assert_eq!(fail.lhs, Vector::from_ints(&[2, 0]));
    }

    #[test]
    fn sampling_is_deterministic() {
        assert_eq!(sample_elements(4, 3, 7), sample_elements(4, 3, 7));
        assert_ne!(sample_elements(4, 3, 7), sample_elements(4, 3, 8));
    }
}
