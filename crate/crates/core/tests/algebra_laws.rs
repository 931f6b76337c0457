mod common;

use homalt::constructions::{
    albert5_alpha, albert5_base, derived_algebra, matrix_algebra, plus_algebra, yau_twist,
    AlbertParams,
};
use homalt::io::{load_algebra, save_algebra, AlgebraFile};
use homalt::linalg::{int, Matrix, Vector};
use homalt::{AlgebraError, CheckReport, Witness};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn params() -> impl Strategy<Value = AlbertParams> {
    (
        (-4i64..=4, 1i64..=3),
        (-4i64..=4, 1i64..=3),
        (-4i64..=4, 1i64..=3),
    )
        .prop_filter_map("delta avoids 0 and 1", |((g, gq), (d, dq), (e, eq))| {
            AlbertParams::new(
                homalt::linalg::ratio(g, gq),
                homalt::linalg::ratio(d, dq),
                homalt::linalg::ratio(e, eq),
            )
            .ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn twists_are_multiplicative_and_right_alternative(p in params()) {
        let a = homalt::constructions::albert5_twisted(&p).unwrap();
        prop_assert!(a.is_multiplicative().passed);
        prop_assert!(a.is_right_hom_alternative().passed);
        prop_assert!(!a.is_left_hom_alternative().passed);
    }

    #[test]
    fn twisting_by_a_morphism_preserves_right_alternativity(p in params(), q in params()) {
        let a = homalt::constructions::albert5_twisted(&p).unwrap();
        // alpha_q is a morphism of the base product; it is a weak morphism of
        // the twisted product exactly when it commutes with alpha_p there.
        if let Ok(b) = yau_twist(&a, &albert5_alpha(&q)) {
            prop_assert!(b.is_right_hom_alternative().passed);
        }
    }

    #[test]
    fn json_round_trip(p in params()) {
        let a = homalt::constructions::albert5_twisted(&p).unwrap();
        prop_assert_eq!(load_algebra(&save_algebra(&a)).unwrap(), a);
    }
}

#[test]
fn derived_algebras_stay_right_alternative() {
    let a = common::twisted(2, 3, 5);
    for n in 0..=4 {
        let d = derived_algebra(&a, n).unwrap();
        assert!(d.is_multiplicative().passed, "n = {n}");
        assert!(d.is_right_hom_alternative().passed, "n = {n}");
        assert_eq!(d.alpha(), &a.alpha().pow(n + 1).unwrap());
    }
}

#[test]
fn derived_needs_multiplicative() {
    let a = albert5_base()
        .with_alpha(Matrix::diagonal(&[int(2), int(1), int(1), int(1), int(1)]))
        .unwrap();
    assert!(matches!(
        derived_algebra(&a, 1),
        Err(AlgebraError::NotMultiplicative { .. })
    ));
}

#[test]
fn plus_algebra_is_commutative() {
    for a in common::paper_twists() {
        let p = plus_algebra(&a);
        assert!(p.is_commutative().passed);
        assert_eq!(p.alpha(), a.alpha());
    }
    assert!(!albert5_base().is_commutative().passed);
}

#[test]
fn matrix_algebra_is_alternative() {
    let m = matrix_algebra(2);
    assert!(m.is_right_hom_alternative().passed);
    assert!(m.is_left_hom_alternative().passed);
    assert!(m.is_hom_flexible().passed);
    assert!(!m.is_commutative().passed);
}

#[test]
fn twisted_albert_is_not_flexible_or_left_alternative() {
    let a = common::twisted(2, 3, 5);
    let report = a.is_left_hom_alternative();
    assert!(!report.passed);
    assert!(matches!(report.witness, Some(Witness::Basis(_))));
}

#[test]
fn fixture_witness_is_frozen() {
    let a = common::non_right_alt();
    let r = a.is_right_hom_alternative();
    assert_eq!(
        r,
        CheckReport::fail(
            "right-hom-alternative",
            Witness::Basis(vec![0, 0, 0]),
            Vector::from_ints(&[0, -1, 0]),
            Vector::from_ints(&[0, 1, 0]),
        )
    );
    assert!(a.is_multiplicative().passed);
}

#[test]
fn foreign_elements_are_rejected() {
    let a = albert5_base();
    let m = matrix_algebra(2);
    let x = m.basis_element(0);
    assert_eq!(a.mul(&x, &x).unwrap_err(), AlgebraError::ForeignElement);
    assert_eq!(a.apply_alpha(&x).unwrap_err(), AlgebraError::ForeignElement);
    // twists share the underlying space
    let t = common::twisted(2, 3, 5);
    assert!(t.mul(&a.named("e"), &a.named("u")).is_ok());
}

#[test]
fn twist_composition_matches_direct_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let a = common::twisted(2, 3, 0);
    let beta = albert5_alpha(&AlbertParams::from_ints(2, 3, 0).unwrap());
    let b = yau_twist(&a, &beta).unwrap();
    for _ in 0..10 {
        let x = homalt::polarize::sample_element(&mut rng, 5);
        let y = homalt::polarize::sample_element(&mut rng, 5);
        let direct = a.mul_vec(&x, &y).mul_matrix(&beta).unwrap();
        assert_eq!(b.mul_vec(&x, &y), direct);
    }
}

#[test]
fn load_rejects_bad_input() {
    let good = save_algebra(&albert5_base());
    assert!(load_algebra(&good[..good.len() / 2]).is_err());
    let mut file: AlgebraFile = serde_json::from_str(&good).unwrap();
    file.dim = 4;
    assert!(file.to_algebra().is_err());
    let unknown = good.replacen("\"dim\"", "\"extra\": 1, \"dim\"", 1);
    assert!(matches!(
        load_algebra(&unknown),
        Err(AlgebraError::Parse(_))
    ));
}

#[test]
fn reports_serialize_and_parse() {
    let a = common::non_right_alt();
    for r in [
        a.is_right_hom_alternative(),
        a.is_hom_flexible(),
        a.is_multiplicative(),
    ] {
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<CheckReport>(&json).unwrap(), r);
    }
}
