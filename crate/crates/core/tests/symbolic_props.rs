mod common;

use std::collections::BTreeMap;

use homalt::linalg::{int, ratio};
use homalt::polarize::sample_element;
use homalt::symbolic::{
    check_identity_on_algebra, evaluate_expr, evaluate_polynomial, identity_by_name,
    right_alternative_identities, shipped_certificates, teichmuller_expr, verify_certificate,
    verify_chain, AxiomRegistry, Certificate, Equation, Expr, HomPolynomial, Term,
};
use homalt::{AlgebraError, Element, HomAlgebra, Witness};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const VARS: [&str; 3] = ["x", "y", "z"];

fn random_tree(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let b = |e: Expr| Box::new(e);
    if depth == 0 || rng.gen_bool(0.25) {
        let v = Expr::Var(VARS[rng.gen_range(0..3)].to_string());
        return if rng.gen_bool(0.3) {
            Expr::Twist(rng.gen_range(0..3), b(v))
        } else {
            v
        };
    }
    let inner = match rng.gen_range(0..5) {
        0 => Expr::Assoc(
            b(random_tree(rng, depth - 1)),
            b(random_tree(rng, depth - 1)),
            b(random_tree(rng, depth - 1)),
        ),
        _ => Expr::Mul(
            b(random_tree(rng, depth - 1)),
            b(random_tree(rng, depth - 1)),
        ),
    };
    if rng.gen_bool(0.4) {
        Expr::Twist(rng.gen_range(0..3), b(inner))
    } else {
        inner
    }
}

fn random_linear(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let b = |e: Expr| Box::new(e);
    match rng.gen_range(0..6) {
        0 => Expr::Add(vec![random_tree(rng, depth), random_tree(rng, depth)]),
        1 => Expr::Scale(
            ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3)),
            b(random_tree(rng, depth)),
        ),
        2 => Expr::Com(b(random_tree(rng, depth)), b(random_tree(rng, depth))),
        3 => Expr::Twist(
            1,
            b(Expr::Sub(
                b(random_tree(rng, depth)),
                b(random_tree(rng, depth)),
            )),
        ),
        _ => random_tree(rng, depth),
    }
}

fn is_redex(e: &Expr) -> bool {
    matches!(e, Expr::Twist(_, inner) if !matches!(**inner, Expr::Var(_)))
        || matches!(e, Expr::Twist(0, _))
}

fn count_redexes(e: &Expr) -> usize {
    let own = usize::from(is_redex(e));
    own + match e {
        Expr::Twist(_, a) => count_redexes(a),
        Expr::Mul(a, b) => count_redexes(a) + count_redexes(b),
        Expr::Assoc(a, b, c) => count_redexes(a) + count_redexes(b) + count_redexes(c),
        _ => 0,
    }
}

fn push_once(e: Expr) -> Expr {
    match e {
        Expr::Twist(0, a) => *a,
        Expr::Twist(j, a) => match *a {
            Expr::Twist(k, inner) => Expr::Twist(j + k, inner),
            Expr::Mul(x, y) => Expr::Mul(Box::new(Expr::Twist(j, x)), Box::new(Expr::Twist(j, y))),
            Expr::Assoc(x, y, z) => Expr::Assoc(
                Box::new(Expr::Twist(j, x)),
                Box::new(Expr::Twist(j, y)),
                Box::new(Expr::Twist(j, z)),
            ),
            other => Expr::Twist(j, Box::new(other)),
        },
        other => other,
    }
}

/// Rewrites the `target`-th redex in preorder.
fn rewrite_at(e: Expr, target: &mut usize) -> Expr {
    if is_redex(&e) {
        if *target == 0 {
            *target = usize::MAX;
            return push_once(e);
        }
        *target -= 1;
    }
    let mut go = |x: Box<Expr>| Box::new(rewrite_at(*x, target));
    match e {
        Expr::Twist(k, a) => Expr::Twist(k, go(a)),
        Expr::Mul(a, b) => {
            let a = go(a);
            Expr::Mul(a, go(b))
        }
        Expr::Assoc(a, b, c) => {
            let a = go(a);
            let b = go(b);
            Expr::Assoc(a, b, go(c))
        }
        other => other,
    }
}

fn to_term(e: &Expr) -> Term {
    match e {
        Expr::Var(v) => Term::leaf(v, 0),
        Expr::Twist(k, v) => match &**v {
            Expr::Var(v) => Term::leaf(v, *k),
            _ => panic!("unnormalized"),
        },
        Expr::Mul(a, b) => Term::mul(to_term(a), to_term(b)),
        Expr::Assoc(a, b, c) => Term::Assoc(
            Box::new(to_term(a)),
            Box::new(to_term(b)),
            Box::new(to_term(c)),
        ),
        _ => panic!("not a tree"),
    }
}

#[test]
fn normalization_is_confluent() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..200 {
        let tree = random_tree(&mut rng, 4);
        let expected = tree.to_polynomial().unwrap();
        let mut e = tree;
        loop {
            let n = count_redexes(&e);
            if n == 0 {
                break;
            }
            let mut pick = rng.gen_range(0..n);
            e = rewrite_at(e, &mut pick);
        }
        assert_eq!(HomPolynomial::term(to_term(&e)), expected);
    }
}

fn assignment(a: &HomAlgebra, rng: &mut ChaCha8Rng) -> BTreeMap<String, Element> {
    VARS.iter()
        .map(|v| {
            (
                v.to_string(),
                a.element(sample_element(rng, a.dim())).unwrap(),
            )
        })
        .collect()
}

#[test]
fn normal_form_evaluation_matches_direct_evaluation() {
    let a = common::twisted(2, 3, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let e = random_linear(&mut rng, 3);
        let env = assignment(&a, &mut rng);
        let direct = evaluate_expr(&a, &e, &env).unwrap();
        assert_eq!(
            evaluate_polynomial(&a, &e.to_polynomial().unwrap(), &env).unwrap(),
            direct
        );
        assert_eq!(
            evaluate_polynomial(&a, &e.to_expanded().unwrap(), &env).unwrap(),
            direct
        );
    }
}

#[test]
fn evaluation_needs_multiplicative_algebra() {
    let a = homalt::constructions::albert5_base()
        .with_alpha(homalt::linalg::Matrix::diagonal(&[2, 1, 1, 1, 1].map(int)))
        .unwrap();
    let env = BTreeMap::from([("x".to_string(), a.named("e"))]);
    let p = Expr::parse("(mul x x)").unwrap().to_polynomial().unwrap();
    assert!(matches!(
        evaluate_polynomial(&a, &p, &env),
        Err(AlgebraError::NotMultiplicative { .. })
    ));
}

#[test]
fn certified_identities_hold_on_generated_algebras() {
    for a in common::random_twists(2, 404) {
        for id in right_alternative_identities() {
            assert!(id.check(&a).unwrap().passed, "{}", id.name);
        }
    }
}

#[test]
fn identities_fail_on_the_fixture() {
    let fixture = common::non_right_alt();
    let failures = right_alternative_identities()
        .iter()
        .filter(|id| !id.check(&fixture).unwrap().passed)
        .count();
    assert!(failures > 0);
}

#[test]
fn sign_flipped_identity_fails_with_frozen_witness() {
    let a = common::twisted(2, 3, 5);
    let eq = Equation::parse("(= (as (a 1 x) (a 1 y) (mul y z)) (neg (mul (as x y z) (a 2 y))))")
        .unwrap();
    let degrees = [
        ("x".to_string(), 1),
        ("y".to_string(), 2),
        ("z".to_string(), 1),
    ];
    let r = check_identity_on_algebra(
        &a,
        &eq.lhs.to_polynomial().unwrap(),
        &eq.rhs.to_polynomial().unwrap(),
        &degrees,
    )
    .unwrap();
    assert!(!r.passed);
    assert_eq!(r.witness, Some(Witness::Basis(vec![0, 0, 0, 3])));
    assert_eq!(
        r.lhs.unwrap(),
        homalt::linalg::Vector::from_ints(&[0, 0, 0, 0, 16])
    );
}

#[test]
fn linearized_shift_is_the_linear_identity() {
    let shift = identity_by_name("associator-shift")
        .unwrap()
        .equation
        .defect();
    let linear = identity_by_name("associator-shift-linear")
        .unwrap()
        .equation
        .defect();
    let env = |y: &str| -> BTreeMap<String, HomPolynomial> {
        [("x", "x"), ("y", y), ("z", "z")]
            .iter()
            .map(|(k, v)| {
                (
                    k.to_string(),
                    Expr::parse(v).unwrap().to_polynomial().unwrap(),
                )
            })
            .collect()
    };
    let at = |y: &str| shift.lower(Some(&env(y)), None).unwrap();
    let linearized = at("(add y w)").sub(&at("y")).sub(&at("w"));
    assert_eq!(linearized, linear.to_polynomial().unwrap());
}

#[test]
fn erasing_twists_leaves_classical_polynomials() {
    for id in right_alternative_identities() {
        let p = id.equation.defect().to_polynomial().unwrap().erase_twists();
        for (m, _) in p.terms() {
            assert!(m.term().leaves().iter().all(|(_, k)| *k == 0));
        }
    }
    assert!(teichmuller_expr()
        .to_expanded()
        .unwrap()
        .erase_twists()
        .is_zero());
}

#[test]
fn certificates_need_their_prerequisites() {
    let certs = shipped_certificates();
    let linear = certs
        .iter()
        .find(|c| c.name == "associator-shift-linear")
        .unwrap();
    assert!(matches!(
        verify_certificate(linear, &AxiomRegistry::new()),
        Err(AlgebraError::MalformedCertificate(_))
    ));
    let results = verify_chain(&certs).unwrap();
    assert!(results.iter().all(|(_, ok)| *ok));
    let names: Vec<_> = results.iter().map(|(n, _)| n.as_str()).collect();
    let identity_names: Vec<_> = right_alternative_identities()
        .into_iter()
        .map(|i| i.name)
        .collect();
    assert_eq!(names, identity_names);
}

#[test]
fn certificate_targets_match_the_identities() {
    for c in shipped_certificates() {
        let id = identity_by_name(&c.name).unwrap();
        assert_eq!(c.equation().unwrap(), id.equation);
        assert_eq!(Certificate::from_json(&c.to_json()).unwrap(), c);
    }
}

#[test]
fn dropping_a_step_breaks_a_certificate() {
    let certs = shipped_certificates();
    let mut registry = AxiomRegistry::new();
    for c in &certs {
        for i in 0..c.steps.len() {
            let mut shorter = c.clone();
            shorter.steps.remove(i);
            assert!(!verify_certificate(&shorter, &registry).unwrap());
        }
        registry.register(&c.name, &c.equation().unwrap());
    }
}
