#![allow(dead_code)]

use homalt::constructions::{albert5_twisted, AlbertParams};
use homalt::io::load_algebra;
use homalt::HomAlgebra;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PAPER_PARAMS: [(i64, i64, i64); 3] = [(2, 3, 5), (5, 2, 0), (-1, 4, 7)];

pub fn twisted(g: i64, d: i64, e: i64) -> HomAlgebra {
    albert5_twisted(&AlbertParams::from_ints(g, d, e).unwrap()).unwrap()
}

pub fn paper_twists() -> Vec<HomAlgebra> {
    PAPER_PARAMS
        .iter()
        .map(|&(g, d, e)| twisted(g, d, e))
        .collect()
}

/// Twists of the base Albert algebra by seeded random parameters.
pub fn random_twists(count: usize, seed: u64) -> Vec<HomAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| albert5_twisted(&AlbertParams::random(&mut rng)).unwrap())
        .collect()
}

/// The three fixed twists followed by ten random ones.
pub fn algebra_set() -> Vec<HomAlgebra> {
    let mut out = paper_twists();
    out.extend(random_twists(10, 2024));
    out
}

pub fn non_right_alt() -> HomAlgebra {
    load_algebra(include_str!("../fixtures/non_right_alt.json")).unwrap()
}
