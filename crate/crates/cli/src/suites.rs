//! Named check suites run by `homalt check`.

use std::str::FromStr;
use std::time::Instant;

use homalt::idempotents::{albert_decomposition, idempotent_search};
use homalt::jordan::hom_jordan_admissibility;
use homalt::operators::{idempotent_operator_reports, right_alternative_operator_reports};
use homalt::powers::{
    check_nth_hom_power_associative, check_power_induction_step, third_fourth_reports,
};
use homalt::symbolic::{
    right_alternative_identities, shipped_certificates, teichmuller_expansion, verify_chain,
};
use homalt::{AlgebraError, CheckReport, Element, HomAlgebra, Result, Witness};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Axioms,
    Powers,
    Jordan,
    Decompose,
    Operators,
    Identities,
    Symbolic,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Powers => "powers",
            Suite::Jordan => "jordan",
            Suite::Decompose => "decompose",
            Suite::Operators => "operators",
            Suite::Identities => "identities",
            Suite::Symbolic => "symbolic",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "axioms" => Suite::Axioms,
            "powers" => Suite::Powers,
            "jordan" => Suite::Jordan,
            "decompose" => Suite::Decompose,
            "operators" => Suite::Operators,
            "identities" => Suite::Identities,
            "symbolic" => Suite::Symbolic,
            other => return Err(format!("unknown suite `{other}`")),
        })
    }
}

/// Everything `check` needs besides the algebra.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub suites: Vec<Suite>,
    pub seed: u64,
    pub samples: usize,
    pub nmax: u32,
    pub idempotent: Option<Element>,
    pub timing: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    /// Reported but not required for the suite to pass.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub informational: Vec<CheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

fn result(suite: Suite, checks: Vec<CheckReport>, informational: Vec<CheckReport>) -> SuiteResult {
    SuiteResult {
        suite: suite.name(),
        passed: checks.iter().all(|c| c.passed),
        checks,
        informational,
        elapsed_ms: None,
    }
}

fn idempotent(a: &HomAlgebra, config: &SuiteConfig) -> Result<Element> {
    match &config.idempotent {
        Some(e) => Ok(e.clone()),
        None => idempotent_search(a, 1)
            .into_iter()
            .next()
            .ok_or(AlgebraError::NotIdempotent),
    }
}

fn run_one(a: &HomAlgebra, suite: Suite, config: &SuiteConfig) -> Result<SuiteResult> {
    Ok(match suite {
        Suite::Axioms => result(
            suite,
            vec![a.is_right_hom_alternative()],
            vec![
                a.is_multiplicative(),
                a.is_left_hom_alternative(),
                a.is_hom_flexible(),
            ],
        ),
        Suite::Powers => {
            let mut checks = Vec::new();
            for n in 2..=config.nmax {
                checks.push(check_nth_hom_power_associative(
                    a,
                    n,
                    config.samples,
                    config.seed,
                )?);
            }
            checks.extend(third_fourth_reports(a, config.samples, config.seed)?);
            checks.push(check_power_induction_step(
                a,
                config.nmax,
                config.samples,
                config.seed,
            )?);
            result(suite, checks, vec![])
        }
        Suite::Jordan => {
            let adm = hom_jordan_admissibility(a);
            let parts = vec![
                adm.via_plus.clone().named("hom-jordan-admissible(plus)"),
                adm.direct.clone().named("hom-jordan-admissible(direct)"),
            ];
            result(suite, vec![adm.into_report()], parts)
        }
        Suite::Decompose => {
            let e = idempotent(a, config)?;
            let d = albert_decomposition(a, &e)?;
            let flag = |law: &str, ok: bool| {
                if ok {
                    CheckReport::pass(law)
                } else {
                    CheckReport::fail_bare(law, Witness::Elements(vec![e.coords().clone()]))
                }
            };
            result(
                suite,
                vec![
                    flag("decomposition-spans", d.spans_all),
                    flag("decomposition-alpha-closed", d.alpha_closed(a)?),
                ],
                vec![flag("decomposition-direct", d.is_direct)],
            )
        }
        Suite::Operators => {
            let e = idempotent(a, config)?;
            let mut checks = right_alternative_operator_reports(a, config.samples, config.seed);
            checks.extend(idempotent_operator_reports(a, &e, config.nmax)?);
            result(suite, checks, vec![])
        }
        Suite::Identities => {
            let checks = right_alternative_identities()
                .iter()
                .map(|id| id.check(a))
                .collect::<Result<Vec<_>>>()?;
            result(suite, checks, vec![])
        }
        Suite::Symbolic => {
            let mut checks = vec![symbolic_teichmuller()];
            for (name, ok) in verify_chain(&shipped_certificates())? {
                let law = format!("certificate({name})");
                checks.push(verdict(law, ok));
            }
            result(suite, checks, vec![])
        }
    })
}

pub fn symbolic_teichmuller() -> CheckReport {
    let (n, residue) = teichmuller_expansion();
    verdict("hom-teichmuller", n == 10 && residue.is_zero())
}

fn verdict(law: impl Into<String>, passed: bool) -> CheckReport {
    CheckReport {
        passed,
        ..CheckReport::pass(law)
    }
}

/// Runs the selected suites concurrently; results keep the requested order.
pub fn run_suites(a: &HomAlgebra, config: &SuiteConfig) -> Result<Vec<SuiteResult>> {
    config
        .suites
        .par_iter()
        .map(|&s| {
            let start = Instant::now();
            let mut r = run_one(a, s, config)?;
            if config.timing {
                r.elapsed_ms = Some(start.elapsed().as_millis());
            }
            Ok(r)
        })
        .collect()
}
