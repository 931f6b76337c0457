//! The free multiplicative Hom-algebra on named variables.
//!
//! Monomials are binary product trees whose leaves carry an `α`-exponent;
//! `α` is always pushed to the leaves using `α(xy) = α(x)α(y)`. Hom-associators
//! can be kept as formal ternary atoms `(x, y, z)` (with
//! `α(x, y, z) = (α(x), α(y), α(z))`) or expanded to
//! `(xy)α(z) - α(x)(yz)`. Certificates are checked at the atom level, where
//! the right Hom-alternative axiom, the Hom-Teichmüller identity and the
//! definition of the associator are all visible as nonzero polynomials.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{Element, HomAlgebra};
use crate::error::{AlgebraError, Result};
use crate::linalg::{format_scalar, int, parse_scalar, Scalar, Vector};
use crate::polarize::polarized_sweep;
use crate::report::{CheckReport, Witness};

/// A product tree in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Leaf { var: String, exp: u32 },
    Mul(Box<Term>, Box<Term>),
    Assoc(Box<Term>, Box<Term>, Box<Term>),
}

impl Term {
    pub fn leaf(var: &str, exp: u32) -> Term {
        Term::Leaf {
            var: var.to_string(),
            exp,
        }
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn twist(&self, k: u32) -> Term {
        match self {
            Term::Leaf { var, exp } => Term::Leaf {
                var: var.clone(),
                exp: exp + k,
            },
            Term::Mul(a, b) => Term::mul(a.twist(k), b.twist(k)),
            Term::Assoc(a, b, c) => Term::Assoc(
                Box::new(a.twist(k)),
                Box::new(b.twist(k)),
                Box::new(c.twist(k)),
            ),
        }
    }

    pub fn leaves(&self) -> Vec<(&str, u32)> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<(&'a str, u32)>) {
        match self {
            Term::Leaf { var, exp } => out.push((var, *exp)),
            Term::Mul(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
            Term::Assoc(a, b, c) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
                c.collect_leaves(out);
            }
        }
    }

    fn shape(&self, out: &mut Vec<u8>) {
        match self {
            Term::Leaf { .. } => out.push(0),
            Term::Mul(a, b) => {
                out.push(1);
                a.shape(out);
                b.shape(out);
            }
            Term::Assoc(a, b, c) => {
                out.push(2);
                a.shape(out);
                b.shape(out);
                c.shape(out);
            }
        }
    }

    pub fn has_atoms(&self) -> bool {
        match self {
            Term::Leaf { .. } => false,
            Term::Mul(a, b) => a.has_atoms() || b.has_atoms(),
            Term::Assoc(..) => true,
        }
    }

    fn fmt_factor(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Mul(..) => write!(f, "({self})"),
            _ => write!(f, "{self}"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf { var, exp } if *exp <= 3 => write!(f, "{var}{}", "'".repeat(*exp as usize)),
            Term::Leaf { var, exp } => write!(f, "a{exp}({var})"),
            Term::Mul(a, b) => {
                a.fmt_factor(f)?;
                write!(f, "·")?;
                b.fmt_factor(f)
            }
            Term::Assoc(a, b, c) => write!(f, "({a}, {b}, {c})"),
        }
    }
}

/// A normal-form monomial, ordered by size, then shape in preorder, then
/// leaf names, then `α`-exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomMonomial(Term);

impl HomMonomial {
    pub fn new(term: Term) -> Self {
        HomMonomial(term)
    }

    pub fn term(&self) -> &Term {
        &self.0
    }

    fn key(&self) -> (usize, Vec<u8>, Vec<&str>, Vec<u32>) {
        let leaves = self.0.leaves();
        let mut shape = Vec::new();
        self.0.shape(&mut shape);
        (
            leaves.len(),
            shape,
            leaves.iter().map(|l| l.0).collect(),
            leaves.iter().map(|l| l.1).collect(),
        )
    }
}

impl Ord for HomMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl PartialOrd for HomMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HomMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Linear combination of monomials with no zero coefficients stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HomPolynomial {
    terms: BTreeMap<HomMonomial, Scalar>,
}

impl HomPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn var(name: &str) -> Self {
        Self::term(Term::leaf(name, 0))
    }

    pub fn term(t: Term) -> Self {
        let mut p = Self::zero();
        p.add_term(HomMonomial(t), Scalar::one());
        p
    }

    pub fn add_term(&mut self, m: HomMonomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HomMonomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &HomPolynomial) -> HomPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &HomPolynomial) -> HomPolynomial {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, k: &Scalar) -> HomPolynomial {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &HomPolynomial) -> HomPolynomial {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(HomMonomial(Term::mul(a.0.clone(), b.0.clone())), ca * cb);
            }
        }
        out
    }

    /// `αᵏ` applied to every term.
    pub fn twist(&self, k: u32) -> HomPolynomial {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(HomMonomial(m.0.twist(k)), c.clone());
        }
        out
    }

    /// The formal associator atom `(x, y, z)`, trilinear in its arguments.
    pub fn assoc(x: &HomPolynomial, y: &HomPolynomial, z: &HomPolynomial) -> HomPolynomial {
        let mut out = Self::zero();
        for (a, ca) in &x.terms {
            for (b, cb) in &y.terms {
                for (d, cd) in &z.terms {
                    let t = Term::Assoc(
                        Box::new(a.0.clone()),
                        Box::new(b.0.clone()),
                        Box::new(d.0.clone()),
                    );
                    out.add_term(HomMonomial(t), ca * cb * cd);
                }
            }
        }
        out
    }

    pub fn commutator(x: &HomPolynomial, y: &HomPolynomial) -> HomPolynomial {
        x.mul(y).sub(&y.mul(x))
    }

    /// Replaces every associator atom by `(xy)α(z) - α(x)(yz)`.
    pub fn expand_atoms(&self) -> HomPolynomial {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out = out.add(&expand_term(&m.0).scale(c));
        }
        out
    }

    pub fn has_atoms(&self) -> bool {
        self.terms.keys().any(|m| m.0.has_atoms())
    }

    /// Sets every `α`-exponent to zero.
    pub fn erase_twists(&self) -> HomPolynomial {
        fn erase(t: &Term) -> Term {
            match t {
                Term::Leaf { var, .. } => Term::leaf(var, 0),
                Term::Mul(a, b) => Term::mul(erase(a), erase(b)),
                Term::Assoc(a, b, c) => {
                    Term::Assoc(Box::new(erase(a)), Box::new(erase(b)), Box::new(erase(c)))
                }
            }
        }
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(HomMonomial(erase(&m.0)), c.clone());
        }
        out
    }

    /// Replaces each variable `v` by `env[v]`, so a leaf `αᵏ(v)` becomes
    /// `αᵏ(env[v])`.
    pub fn substitute(&self, env: &BTreeMap<String, HomPolynomial>) -> Result<HomPolynomial> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out = out.add(&substitute_term(&m.0, env)?.scale(c));
        }
        Ok(out)
    }

    /// Degree in each variable, if every term has the same one.
    pub fn multidegree(&self) -> Result<BTreeMap<String, usize>> {
        let mut found: Option<BTreeMap<String, usize>> = None;
        for m in self.terms.keys() {
            let mut deg = BTreeMap::new();
            for (v, _) in m.0.leaves() {
                *deg.entry(v.to_string()).or_insert(0) += 1;
            }
            match &found {
                None => found = Some(deg),
                Some(prev) if *prev != deg => {
                    return Err(AlgebraError::InvalidParameter(format!(
                        "polynomial is not homogeneous: {m} has degrees {deg:?}, expected {prev:?}"
                    )))
                }
                Some(_) => {}
            }
        }
        Ok(found.unwrap_or_default())
    }
}

impl fmt::Display for HomPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let negative = *c < Scalar::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (n, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !abs.is_one() {
                write!(f, "{abs}·")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

fn expand_term(t: &Term) -> HomPolynomial {
    match t {
        Term::Leaf { .. } => HomPolynomial::term(t.clone()),
        Term::Mul(a, b) => expand_term(a).mul(&expand_term(b)),
        Term::Assoc(a, b, c) => {
            expand_associator(&expand_term(a), &expand_term(b), &expand_term(c))
        }
    }
}

fn substitute_term(t: &Term, env: &BTreeMap<String, HomPolynomial>) -> Result<HomPolynomial> {
    Ok(match t {
        Term::Leaf { var, exp } => env
            .get(var)
            .ok_or_else(|| AlgebraError::UnassignedVariable(var.clone()))?
            .twist(*exp),
        Term::Mul(a, b) => substitute_term(a, env)?.mul(&substitute_term(b, env)?),
        Term::Assoc(a, b, c) => HomPolynomial::assoc(
            &substitute_term(a, env)?,
            &substitute_term(b, env)?,
            &substitute_term(c, env)?,
        ),
    })
}

/// `(xy)α(z) - α(x)(yz)`, fully expanded.
pub fn expand_associator(x: &HomPolynomial, y: &HomPolynomial, z: &HomPolynomial) -> HomPolynomial {
    x.mul(y).mul(&z.twist(1)).sub(&x.twist(1).mul(&y.mul(z)))
}

/// Expression syntax tree of the identity language:
///
/// ```text
/// x              variable
/// _              hole (certificate contexts only)
/// (a k e)        α^k(e)
/// (mul e f)      product
/// (as e f g)     Hom-associator
/// (com e f)      commutator
/// (add e ...)    sum
/// (sub e f)      difference
/// (neg e)        negation
/// (scale c e)    c·e with c rational
/// ```
///
/// An identity is written `(= lhs rhs)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    Hole,
    Twist(u32, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Assoc(Box<Expr>, Box<Expr>, Box<Expr>),
    Com(Box<Expr>, Box<Expr>),
    Add(Vec<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Scale(Scalar, Box<Expr>),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        let sexp = parse_sexp(text)?;
        Expr::from_sexp(&sexp)
    }

    fn from_sexp(s: &Sexp) -> Result<Expr> {
        let bad = |msg: String| Err(AlgebraError::Parse(msg));
        match s {
            Sexp::Atom(a) if a == "_" => Ok(Expr::Hole),
            Sexp::Atom(a) if is_symbol(a) => Ok(Expr::Var(a.clone())),
            Sexp::Atom(a) => bad(format!("expected a variable, found `{a}`")),
            Sexp::List(items) => {
                let (head, args) = match items.split_first() {
                    Some((Sexp::Atom(h), rest)) => (h.as_str(), rest),
                    _ => return bad("expected an operator name".into()),
                };
                let sub = |i: usize| Expr::from_sexp(&args[i]).map(Box::new);
                let arity = |n: usize| {
                    if args.len() == n {
                        Ok(())
                    } else {
                        Err(AlgebraError::Parse(format!(
                            "`{head}` takes {n} arguments, got {}",
                            args.len()
                        )))
                    }
                };
                match head {
                    "a" => {
                        arity(2)?;
                        let k = match &args[0] {
                            Sexp::Atom(k) => k
                                .parse::<u32>()
                                .map_err(|_| AlgebraError::Parse(format!("bad exponent `{k}`")))?,
                            _ => return bad("exponent must be a number".into()),
                        };
                        Ok(Expr::Twist(k, sub(1)?))
                    }
                    "mul" => arity(2).and_then(|_| Ok(Expr::Mul(sub(0)?, sub(1)?))),
                    "as" => arity(3).and_then(|_| Ok(Expr::Assoc(sub(0)?, sub(1)?, sub(2)?))),
                    "com" => arity(2).and_then(|_| Ok(Expr::Com(sub(0)?, sub(1)?))),
                    "sub" => arity(2).and_then(|_| Ok(Expr::Sub(sub(0)?, sub(1)?))),
                    "neg" => arity(1).and_then(|_| Ok(Expr::Neg(sub(0)?))),
                    "add" => args
                        .iter()
                        .map(Expr::from_sexp)
                        .collect::<Result<_>>()
                        .map(Expr::Add),
                    "scale" => {
                        arity(2)?;
                        let c = match &args[0] {
                            Sexp::Atom(c) => parse_scalar(c)?,
                            _ => return bad("scale factor must be a number".into()),
                        };
                        Ok(Expr::Scale(c, sub(1)?))
                    }
                    other => bad(format!("unknown operator `{other}`")),
                }
            }
        }
    }

    /// Variables in first-occurrence order.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Expr::Hole => {}
            Expr::Twist(_, e) | Expr::Neg(e) | Expr::Scale(_, e) => e.collect_vars(out),
            Expr::Mul(a, b) | Expr::Com(a, b) | Expr::Sub(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Expr::Assoc(a, b, c) => {
                a.collect_vars(out);
                b.collect_vars(out);
                c.collect_vars(out);
            }
            Expr::Add(es) => es.iter().for_each(|e| e.collect_vars(out)),
        }
    }

    pub fn hole_count(&self) -> usize {
        match self {
            Expr::Var(_) => 0,
            Expr::Hole => 1,
            Expr::Twist(_, e) | Expr::Neg(e) | Expr::Scale(_, e) => e.hole_count(),
            Expr::Mul(a, b) | Expr::Com(a, b) | Expr::Sub(a, b) => a.hole_count() + b.hole_count(),
            Expr::Assoc(a, b, c) => a.hole_count() + b.hole_count() + c.hole_count(),
            Expr::Add(es) => es.iter().map(Expr::hole_count).sum(),
        }
    }

    /// Normal form with associators kept as atoms.
    pub fn to_polynomial(&self) -> Result<HomPolynomial> {
        self.lower(None, None)
    }

    /// Normal form with associators expanded.
    pub fn to_expanded(&self) -> Result<HomPolynomial> {
        Ok(self.to_polynomial()?.expand_atoms())
    }

    /// Normal form where variables are looked up in `env` (when given) and
    /// the hole is replaced by `hole`.
    pub fn lower(
        &self,
        env: Option<&BTreeMap<String, HomPolynomial>>,
        hole: Option<&HomPolynomial>,
    ) -> Result<HomPolynomial> {
        let rec = |e: &Expr| e.lower(env, hole);
        Ok(match self {
            Expr::Var(v) => match env {
                None => HomPolynomial::var(v),
                Some(env) => env
                    .get(v)
                    .cloned()
                    .ok_or_else(|| AlgebraError::UnassignedVariable(v.clone()))?,
            },
            Expr::Hole => hole
                .cloned()
                .ok_or_else(|| AlgebraError::Parse("hole `_` outside a context".into()))?,
            Expr::Twist(k, e) => rec(e)?.twist(*k),
            Expr::Mul(a, b) => rec(a)?.mul(&rec(b)?),
            Expr::Assoc(a, b, c) => HomPolynomial::assoc(&rec(a)?, &rec(b)?, &rec(c)?),
            Expr::Com(a, b) => HomPolynomial::commutator(&rec(a)?, &rec(b)?),
            Expr::Add(es) => {
                let mut out = HomPolynomial::zero();
                for e in es {
                    out = out.add(&rec(e)?);
                }
                out
            }
            Expr::Sub(a, b) => rec(a)?.sub(&rec(b)?),
            Expr::Neg(e) => rec(e)?.scale(&int(-1)),
            Expr::Scale(c, e) => rec(e)?.scale(c),
        })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Hole => write!(f, "_"),
            Expr::Twist(k, e) => write!(f, "(a {k} {e})"),
            Expr::Mul(a, b) => write!(f, "(mul {a} {b})"),
            Expr::Assoc(a, b, c) => write!(f, "(as {a} {b} {c})"),
            Expr::Com(a, b) => write!(f, "(com {a} {b})"),
            Expr::Add(es) => {
                write!(f, "(add")?;
                for e in es {
                    write!(f, " {e}")?;
                }
                write!(f, ")")
            }
            Expr::Sub(a, b) => write!(f, "(sub {a} {b})"),
            Expr::Neg(e) => write!(f, "(neg {e})"),
            Expr::Scale(c, e) => write!(f, "(scale {} {e})", format_scalar(c)),
        }
    }
}

fn is_symbol(a: &str) -> bool {
    a.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn parse_sexp(text: &str) -> Result<Sexp> {
    let mut tokens = Vec::new();
    let mut cur = String::new();
    for c in text.chars() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if !cur.is_empty() {
                tokens.push(std::mem::take(&mut cur));
            }
            if !c.is_whitespace() {
                tokens.push(c.to_string());
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        tokens.push(cur);
    }
    let mut pos = 0;
    let s = read_sexp(&tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(AlgebraError::Parse(format!(
            "unexpected `{}` after expression",
            tokens[pos]
        )));
    }
    Ok(s)
}

fn read_sexp(tokens: &[String], pos: &mut usize) -> Result<Sexp> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| AlgebraError::Parse("unexpected end of expression".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(Sexp::List(items));
                    }
                    Some(_) => items.push(read_sexp(tokens, pos)?),
                    None => return Err(AlgebraError::Parse("missing `)`".into())),
                }
            }
        }
        ")" => Err(AlgebraError::Parse("unexpected `)`".into())),
        _ => Ok(Sexp::Atom(tok.clone())),
    }
}

/// `lhs = rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Expr,
    pub rhs: Expr,
}

impl Equation {
    pub fn parse(text: &str) -> Result<Equation> {
        match parse_sexp(text)? {
            Sexp::List(items)
                if items.len() == 3 && matches!(&items[0], Sexp::Atom(h) if h == "=") =>
            {
                Ok(Equation {
                    lhs: Expr::from_sexp(&items[1])?,
                    rhs: Expr::from_sexp(&items[2])?,
                })
            }
            _ => Err(AlgebraError::Parse(
                "an identity has the form (= lhs rhs)".into(),
            )),
        }
    }

    /// `lhs - rhs`.
    pub fn defect(&self) -> Expr {
        Expr::Sub(Box::new(self.lhs.clone()), Box::new(self.rhs.clone()))
    }

    pub fn variables(&self) -> Vec<String> {
        self.defect().variables()
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(= {} {})", self.lhs, self.rhs)
    }
}

fn vector_assignment(
    a: &HomAlgebra,
    assignment: &BTreeMap<String, Element>,
) -> Result<BTreeMap<String, Vector>> {
    assignment
        .iter()
        .map(|(k, v)| Ok((k.clone(), a.apply_alpha_pow(v, 0)?.into_coords())))
        .collect()
}

fn eval_term(a: &HomAlgebra, t: &Term, env: &BTreeMap<String, Vector>) -> Result<Vector> {
    Ok(match t {
        Term::Leaf { var, exp } => a.alpha_pow_vec(
            env.get(var)
                .ok_or_else(|| AlgebraError::UnassignedVariable(var.clone()))?,
            *exp,
        ),
        Term::Mul(x, y) => a.mul_vec(&eval_term(a, x, env)?, &eval_term(a, y, env)?),
        Term::Assoc(x, y, z) => a.associator_vec(
            &eval_term(a, x, env)?,
            &eval_term(a, y, env)?,
            &eval_term(a, z, env)?,
        ),
    })
}

fn eval_poly_vec(
    a: &HomAlgebra,
    p: &HomPolynomial,
    env: &BTreeMap<String, Vector>,
) -> Result<Vector> {
    let mut out = Vector::zeros(a.dim());
    for (m, c) in p.terms() {
        out.add_scaled(c, &eval_term(a, &m.0, env)?);
    }
    Ok(out)
}

/// Evaluates a normal-form polynomial. Pushing `α` to the leaves is only
/// sound when `A` is multiplicative, which is required.
pub fn evaluate_polynomial(
    a: &HomAlgebra,
    p: &HomPolynomial,
    assignment: &BTreeMap<String, Element>,
) -> Result<Element> {
    a.require_multiplicative()?;
    let env = vector_assignment(a, assignment)?;
    a.element(eval_poly_vec(a, p, &env)?)
}

fn eval_expr_vec(a: &HomAlgebra, e: &Expr, env: &BTreeMap<String, Vector>) -> Result<Vector> {
    let rec = |e: &Expr| eval_expr_vec(a, e, env);
    Ok(match e {
        Expr::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| AlgebraError::UnassignedVariable(v.clone()))?,
        Expr::Hole => return Err(AlgebraError::Parse("cannot evaluate a hole".into())),
        Expr::Twist(k, x) => a.alpha_pow_vec(&rec(x)?, *k),
        Expr::Mul(x, y) => a.mul_vec(&rec(x)?, &rec(y)?),
        Expr::Assoc(x, y, z) => a.associator_vec(&rec(x)?, &rec(y)?, &rec(z)?),
        Expr::Com(x, y) => a.commutator_vec(&rec(x)?, &rec(y)?),
        Expr::Add(es) => {
            let mut out = Vector::zeros(a.dim());
            for x in es {
                out.add_scaled(&Scalar::one(), &rec(x)?);
            }
            out
        }
        Expr::Sub(x, y) => &rec(x)? - &rec(y)?,
        Expr::Neg(x) => -&rec(x)?,
        Expr::Scale(c, x) => rec(x)?.scale(c),
    })
}

/// Evaluates an expression exactly as written, applying `α` where it
/// stands. Needs no multiplicativity.
pub fn evaluate_expr(
    a: &HomAlgebra,
    e: &Expr,
    assignment: &BTreeMap<String, Element>,
) -> Result<Element> {
    let env = vector_assignment(a, assignment)?;
    a.element(eval_expr_vec(a, e, &env)?)
}

/// Checks `lhs = rhs` on `A` exhaustively: each variable of degree `d` is
/// polarized into `d` basis slots. `degrees` lists the variables in sweep
/// order; a failing witness lists the slots in that order.
pub fn check_identity_on_algebra(
    a: &HomAlgebra,
    lhs: &HomPolynomial,
    rhs: &HomPolynomial,
    degrees: &[(String, usize)],
) -> Result<CheckReport> {
    a.require_multiplicative()?;
    let law = "identity";
    let ds: Vec<usize> = degrees.iter().map(|d| d.1).collect();
    let failure = polarized_sweep(a.dim(), &ds, |args| {
        let env: BTreeMap<String, Vector> = degrees
            .iter()
            .map(|d| d.0.clone())
            .zip(args.iter().cloned())
            .collect();
        let l = eval_poly_vec(a, lhs, &env).expect("all variables assigned");
        let r = eval_poly_vec(a, rhs, &env).expect("all variables assigned");
        (l, r)
    });
    Ok(match failure {
        None => CheckReport::pass(law),
        Some(f) => CheckReport::fail(law, Witness::Basis(f.slots), f.lhs, f.rhs),
    })
}

/// A named identity of multiplicative right Hom-alternative algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub equation: Equation,
}

impl Identity {
    pub fn new(name: &str, dsl: &str) -> Result<Identity> {
        Ok(Identity {
            name: name.to_string(),
            equation: Equation::parse(dsl)?,
        })
    }

    /// Degrees of `lhs - rhs` in each variable, in name order.
    pub fn degrees(&self) -> Result<Vec<(String, usize)>> {
        Ok(self
            .equation
            .defect()
            .to_polynomial()?
            .multidegree()?
            .into_iter()
            .collect())
    }

    pub fn check(&self, a: &HomAlgebra) -> Result<CheckReport> {
        let lhs = self.equation.lhs.to_polynomial()?;
        let rhs = self.equation.rhs.to_polynomial()?;
        Ok(check_identity_on_algebra(a, &lhs, &rhs, &self.degrees()?)?.named(self.name.clone()))
    }
}

const IDENTITIES: [(&str, &str); 6] = [
    (
        "associator-shift",
        "(= (as (a 1 x) (a 1 y) (mul y z)) (mul (as x y z) (a 2 y)))",
    ),
    (
        "associator-shift-linear",
        "(= (add (as (a 1 x) (a 1 w) (mul y z)) (as (a 1 x) (a 1 y) (mul w z))) \
            (add (mul (as x w z) (a 2 y)) (mul (as x y z) (a 2 w))))",
    ),
    (
        "teichmuller-commutator",
        "(= (add (as (mul w x) (a 1 y) (a 1 z)) (as (a 1 w) (a 1 x) (com y z))) \
            (add (mul (a 2 w) (as x y z)) (mul (as w y z) (a 2 x))))",
    ),
    (
        "square-middle",
        "(= (as (a 1 x) (mul y y) (a 1 z)) (as (a 1 x) (a 1 y) (add (mul y z) (mul z y))))",
    ),
    (
        "hom-moufang",
        "(= (mul (mul (mul x y) (a 1 z)) (a 2 y)) (mul (a 2 x) (mul (mul y z) (a 1 y))))",
    ),
    (
        "associator-product",
        "(= (mul (mul (as x y z) (a 2 y)) (a 3 z)) (a 1 (mul (as x y z) (a 1 (mul z y)))))",
    ),
];

/// The six identities satisfied by every multiplicative right
/// Hom-alternative algebra.
pub fn right_alternative_identities() -> Vec<Identity> {
    IDENTITIES
        .iter()
        .map(|(n, d)| Identity::new(n, d).expect("builtin identity parses"))
        .collect()
}

pub fn identity_by_name(name: &str) -> Option<Identity> {
    right_alternative_identities()
        .into_iter()
        .find(|i| i.name == name)
}

const TEICHMULLER: &str =
    "(add (as (mul w x) (a 1 y) (a 1 z)) (neg (as (a 1 w) (mul x y) (a 1 z))) \
    (as (a 1 w) (a 1 x) (mul y z)) (neg (mul (a 2 w) (as x y z))) (neg (mul (as w x y) (a 2 z))))";
const RIGHT_ALT: &str = "(add (as x y z) (as x z y))";
const ASSOC_DEF: &str = "(sub (as x y z) (sub (mul (mul x y) (a 1 z)) (mul (a 1 x) (mul y z))))";

/// The Hom-Teichmüller polynomial
/// `(wx,y',z') - (w',xy,z') + (w',x',yz) - w''(x,y,z) - (w,x,y)z''`.
pub fn teichmuller_expr() -> Expr {
    Expr::parse(TEICHMULLER).expect("builtin")
}

/// Its five signed associator terms.
pub fn teichmuller_terms() -> Vec<Expr> {
    match teichmuller_expr() {
        Expr::Add(es) => es,
        _ => unreachable!(),
    }
}

/// Expansion of a sum of terms before like terms are merged.
pub fn expanded_terms(terms: &[Expr]) -> Result<Vec<(Scalar, HomMonomial)>> {
    let mut out = Vec::new();
    for t in terms {
        for (m, c) in t.to_expanded()?.terms() {
            out.push((c.clone(), m.clone()));
        }
    }
    Ok(out)
}

/// Sum of an expansion, merging like terms.
pub fn collect_terms(terms: &[(Scalar, HomMonomial)]) -> HomPolynomial {
    let mut p = HomPolynomial::zero();
    for (c, m) in terms {
        p.add_term(m.clone(), c.clone());
    }
    p
}

/// Number of monomials in the expansion of the Hom-Teichmüller polynomial
/// and their sum.
pub fn teichmuller_expansion() -> (usize, HomPolynomial) {
    let terms = expanded_terms(&teichmuller_terms()).expect("builtin");
    (terms.len(), collect_terms(&terms))
}

pub fn verify_hom_teichmuller() -> bool {
    teichmuller_expansion().1.is_zero()
}

/// Axiom templates available to certificate steps.
#[derive(Clone, Debug)]
pub struct AxiomRegistry {
    axioms: BTreeMap<String, Expr>,
}

impl Default for AxiomRegistry {
    fn default() -> Self {
        Self::new()
    }
}

impl AxiomRegistry {
    /// `right-alt`: `(x,y,z) + (x,z,y)`; `teichmuller`: the Hom-Teichmüller
    /// polynomial in `w,x,y,z`; `assoc-def`: `(x,y,z) - (xy)z' + x'(yz)`.
    pub fn new() -> Self {
        let mut axioms = BTreeMap::new();
        for (name, dsl) in [
            ("right-alt", RIGHT_ALT),
            ("teichmuller", TEICHMULLER),
            ("assoc-def", ASSOC_DEF),
        ] {
            axioms.insert(name.to_string(), Expr::parse(dsl).expect("builtin"));
        }
        AxiomRegistry { axioms }
    }

    /// Makes an identity usable as an axiom through its `lhs - rhs`.
    pub fn register(&mut self, name: &str, equation: &Equation) {
        self.axioms.insert(name.to_string(), equation.defect());
    }

    pub fn get(&self, name: &str) -> Option<&Expr> {
        self.axioms.get(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.axioms.keys().map(String::as_str)
    }
}

/// One weighted axiom instance: `coeff · context[axiom(substitution)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Step {
    pub coeff: String,
    pub axiom: String,
    pub substitution: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
}

/// A proof that `target` follows from the axioms: `lhs - rhs` minus the
/// weighted sum of the steps is the zero polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub name: String,
    pub target: String,
    pub steps: Vec<Step>,
}

fn malformed(msg: String) -> AlgebraError {
    AlgebraError::MalformedCertificate(msg)
}

impl Step {
    /// The instance polynomial, with associators as atoms.
    pub fn instance(&self, registry: &AxiomRegistry) -> Result<HomPolynomial> {
        let template = registry
            .get(&self.axiom)
            .ok_or_else(|| malformed(format!("unknown axiom `{}`", self.axiom)))?;
        let mut expected = template.variables();
        expected.sort();
        let given: Vec<String> = self.substitution.keys().cloned().collect();
        if expected != given {
            return Err(malformed(format!(
                "axiom `{}` needs substitutions for {expected:?}, got {given:?}",
                self.axiom
            )));
        }
        let env = self
            .substitution
            .iter()
            .map(|(k, v)| {
                let e = Expr::parse(v)
                    .map_err(|e| malformed(format!("substitution for `{k}`: {e}")))?;
                if e.hole_count() > 0 {
                    return Err(malformed(format!("substitution for `{k}` contains a hole")));
                }
                Ok((k.clone(), e.to_polynomial()?))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        let inner = template.lower(Some(&env), None)?;
        match &self.context {
            None => Ok(inner),
            Some(ctx) => {
                let ctx = Expr::parse(ctx).map_err(|e| malformed(format!("context: {e}")))?;
                if ctx.hole_count() != 1 {
                    return Err(malformed("a context needs exactly one hole `_`".into()));
                }
                ctx.lower(None, Some(&inner))
            }
        }
    }
}

impl Certificate {
    pub fn from_json(text: &str) -> Result<Certificate> {
        serde_json::from_str(text).map_err(|e| AlgebraError::Parse(format!("certificate: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn equation(&self) -> Result<Equation> {
        Equation::parse(&self.target)
    }

    /// The weighted instances.
    pub fn combination(&self, registry: &AxiomRegistry) -> Result<Vec<(Scalar, HomPolynomial)>> {
        self.steps
            .iter()
            .map(|s| Ok((parse_scalar(&s.coeff)?, s.instance(registry)?)))
            .collect()
    }

    /// `lhs - rhs - Σ coeff·instance`.
    pub fn residue(&self, registry: &AxiomRegistry) -> Result<HomPolynomial> {
        let mut r = self.equation()?.defect().to_polynomial()?;
        for (c, p) in self.combination(registry)? {
            r = r.sub(&p.scale(&c));
        }
        Ok(r)
    }
}

/// Whether the certificate's residue vanishes.
pub fn verify_certificate(c: &Certificate, registry: &AxiomRegistry) -> Result<bool> {
    Ok(c.residue(registry)?.is_zero())
}

const SHIPPED: [&str; 6] = [
    include_str!("../certificates/associator-shift.json"),
    include_str!("../certificates/associator-shift-linear.json"),
    include_str!("../certificates/teichmuller-commutator.json"),
    include_str!("../certificates/square-middle.json"),
    include_str!("../certificates/hom-moufang.json"),
    include_str!("../certificates/associator-product.json"),
];

/// Certificates for the six identities, in dependency order.
pub fn shipped_certificates() -> Vec<Certificate> {
    SHIPPED
        .iter()
        .map(|s| Certificate::from_json(s).expect("shipped certificate parses"))
        .collect()
}

/// Verifies certificates in order; each verified one becomes an axiom for
/// the following ones.
pub fn verify_chain(certs: &[Certificate]) -> Result<Vec<(String, bool)>> {
    let mut registry = AxiomRegistry::new();
    let mut out = Vec::new();
    for c in certs {
        let ok = verify_certificate(c, &registry)?;
        if ok {
            registry.register(&c.name, &c.equation()?);
        }
        out.push((c.name.clone(), ok));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{albert5_twisted, AlbertParams};

    fn p(s: &str) -> HomPolynomial {
        Expr::parse(s).unwrap().to_polynomial().unwrap()
    }

    #[test]
    fn associator_expansion_shape() {
        let e = expand_associator(
            &HomPolynomial::var("x"),
            &HomPolynomial::var("y"),
            &HomPolynomial::var("z"),
        );
        let want = p("(sub (mul (mul x y) (a 1 z)) (mul (a 1 x) (mul y z)))");
        assert_eq!(e, want);
        assert_eq!(e.len(), 2);
        let yy = expand_associator(
            &HomPolynomial::var("x"),
            &HomPolynomial::var("y"),
            &HomPolynomial::var("y"),
        );
        assert_eq!(yy.len(), 2);
    }

    #[test]
    fn classical_specialization() {
        let e = p("(as x y z)").expand_atoms().erase_twists();
        assert_eq!(e, p("(sub (mul (mul x y) z) (mul x (mul y z)))"));
    }

    #[test]
    fn twist_pushes_to_leaves() {
        assert_eq!(p("(a 2 (mul x (a 1 y)))"), p("(mul (a 2 x) (a 3 y))"));
        assert_eq!(p("(a 1 (as x y z))"), p("(as (a 1 x) (a 1 y) (a 1 z))"));
    }

    #[test]
    fn teichmuller_has_ten_cancelling_terms() {
        let (n, residue) = teichmuller_expansion();
        assert_eq!(n, 10);
        assert!(residue.is_zero());
        assert!(verify_hom_teichmuller());
    }

    #[test]
    fn teichmuller_repeated_variables() {
        let same: BTreeMap<String, HomPolynomial> = ["w", "x", "y", "z"]
            .iter()
            .map(|v| (v.to_string(), HomPolynomial::var("x")))
            .collect();
        let f = teichmuller_expr().lower(Some(&same), None).unwrap();
        assert!(f.expand_atoms().is_zero());
    }

    #[test]
    fn dropping_last_teichmuller_term_leaves_two() {
        let mut terms = teichmuller_terms();
        terms.pop();
        let residue = collect_terms(&expanded_terms(&terms).unwrap());
        assert_eq!(residue.len(), 2);
        assert_eq!(residue, p("(mul (as w x y) (a 2 z))").expand_atoms());
    }

    #[test]
    fn dsl_round_trip() {
        for (_, dsl) in IDENTITIES {
            let eq = Equation::parse(dsl).unwrap();
            assert_eq!(Equation::parse(&eq.to_string()).unwrap(), eq);
        }
        assert!(Expr::parse("(mul x)").is_err());
        assert!(Expr::parse("(mul x y").is_err());
        assert!(Expr::parse("(frob x y)").is_err());
        assert!(Expr::parse("(a -1 x)").is_err());
    }

    #[test]
    fn identity_degrees() {
        let degrees = identity_by_name("associator-product")
            .unwrap()
            .degrees()
            .unwrap();
        assert_eq!(
            degrees,
            vec![("x".into(), 1), ("y".into(), 2), ("z".into(), 2)]
        );
    }

    #[test]
    fn associator_value_in_twisted_albert() {
        let a = albert5_twisted(&AlbertParams::from_ints(2, 3, 5).unwrap()).unwrap();
        let env: BTreeMap<String, Element> = [("x", "e"), ("y", "e"), ("z", "u")]
            .iter()
            .map(|(v, b)| (v.to_string(), a.named(b)))
            .collect();
        let got = evaluate_polynomial(&a, &p("(as x y z)"), &env).unwrap();
        assert_eq!(got, a.named("v").scale(&int(9)));
        assert!(evaluate_polynomial(&a, &HomPolynomial::zero(), &env)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn unassigned_variable() {
        let a = albert5_twisted(&AlbertParams::from_ints(2, 3, 5).unwrap()).unwrap();
        let err = evaluate_polynomial(
            &a,
            &p("(mul x q)"),
            &BTreeMap::from([("x".to_string(), a.named("e"))]),
        );
        assert_eq!(
            err.unwrap_err(),
            AlgebraError::UnassignedVariable("q".into())
        );
    }

    #[test]
    fn empty_certificate_for_trivial_target() {
        let c = Certificate {
            name: "trivial".into(),
            target: "(= (mul x y) (mul x y))".into(),
            steps: vec![],
        };
        assert!(verify_certificate(&c, &AxiomRegistry::new()).unwrap());
    }

    #[test]
    fn malformed_steps() {
        let reg = AxiomRegistry::new();
        let step = |axiom: &str, subs: &[(&str, &str)], context: Option<&str>| Step {
            coeff: "1".into(),
            axiom: axiom.into(),
            substitution: subs
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
            context: context.map(str::to_string),
        };
        assert!(step("nope", &[], None).instance(&reg).is_err());
        assert!(step("right-alt", &[("x", "x")], None)
            .instance(&reg)
            .is_err());
        let full = [("x", "x"), ("y", "y"), ("z", "z")];
        assert!(step("right-alt", &full, Some("(mul _ _)"))
            .instance(&reg)
            .is_err());
        assert!(step("right-alt", &full, Some("(mul x _)"))
            .instance(&reg)
            .is_ok());
    }
}
