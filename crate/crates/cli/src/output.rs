//! Text and JSON rendering of command results.

use homalt::idempotents::Decomposition;
use homalt::linalg::Vector;
use homalt::symbolic::HomPolynomial;
use homalt::{CheckReport, Element, Witness};
use serde::Serialize;
use serde_json::json;

use crate::suites::SuiteResult;

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub struct Printer {
    format: Format,
}

fn vectors(vs: &[Vector]) -> String {
    vs.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn witness_text(w: &Witness) -> String {
    match w {
        Witness::Basis(idx) => format!("basis indices {idx:?}"),
        Witness::Elements(vs) => format!("elements {}", vectors(vs)),
        Witness::Power { x, n, i } => format!("x = {x}, n = {n}, i = {i}"),
        Witness::Operator { identity, row } => format!("{identity} on basis row {row}"),
        Witness::Disagreement { first, second } => {
            format!("routes disagree (plus: {first}, direct: {second})")
        }
    }
}

fn report_lines(r: &CheckReport, indent: &str) -> Vec<String> {
    let mark = if r.passed { "ok  " } else { "FAIL" };
    let mut lines = vec![format!("{indent}{mark} {}", r.law)];
    if let Some(w) = &r.witness {
        lines.push(format!("{indent}     witness: {}", witness_text(w)));
    }
    if let (Some(l), Some(rr)) = (&r.lhs, &r.rhs) {
        lines.push(format!("{indent}     lhs {l}"));
        lines.push(format!("{indent}     rhs {rr}"));
    }
    lines
}

impl Printer {
    pub fn new(format: Format) -> Self {
        Printer { format }
    }

    fn json(&self, value: &impl Serialize) {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        );
    }

    pub fn suites(&mut self, algebra: &str, results: &[SuiteResult]) -> bool {
        let passed = results.iter().all(|r| r.passed);
        match self.format {
            Format::Json => {
                self.json(&json!({ "algebra": algebra, "suites": results, "passed": passed }))
            }
            Format::Text => {
                println!("algebra {algebra}");
                for s in results {
                    let timing = s
                        .elapsed_ms
                        .map(|ms| format!(" ({ms} ms)"))
                        .unwrap_or_default();
                    println!(
                        "{} {}{timing}",
                        if s.passed { "PASS" } else { "FAIL" },
                        s.suite
                    );
                    for r in &s.checks {
                        println!("{}", report_lines(r, "  ").join("\n"));
                    }
                    for r in &s.informational {
                        let mut lines = report_lines(r, "  ");
                        lines[0].push_str(" (informational)");
                        println!("{}", lines.join("\n"));
                    }
                }
                println!(
                    "{}",
                    if passed {
                        "all suites passed"
                    } else {
                        "some suites failed"
                    }
                );
            }
        }
        passed
    }

    pub fn reports(&mut self, reports: &[CheckReport]) -> bool {
        let passed = reports.iter().all(|r| r.passed);
        match self.format {
            Format::Json => self.json(&json!({ "checks": reports, "passed": passed })),
            Format::Text => {
                for r in reports {
                    println!("{}", report_lines(r, "").join("\n"));
                }
            }
        }
        passed
    }

    pub fn decomposition(
        &mut self,
        d: &Decomposition,
        split: Option<&(Element, Element)>,
        alpha_closed: bool,
    ) -> bool {
        let passed = d.spans_all && alpha_closed;
        match self.format {
            Format::Json => {
                let mut v = json!({
                    "idempotent": d.idem.coords(),
                    "part_alpha": d.part_alpha,
                    "part_zero": d.part_zero,
                    "direct": d.is_direct,
                    "spans": d.spans_all,
                    "alpha_closed": alpha_closed,
                    "passed": passed,
                });
                if let Some((p, q)) = split {
                    v["split"] = json!([p.coords(), q.coords()]);
                }
                self.json(&v);
            }
            Format::Text => {
                println!("idempotent {}", d.idem.coords());
                println!("A_e(alpha) basis: {}", vectors(&d.part_alpha));
                println!("A_e(0) basis:     {}", vectors(&d.part_zero));
                println!(
                    "direct {}  spans {}  alpha-closed {alpha_closed}",
                    d.is_direct, d.spans_all
                );
                if let Some((p, q)) = split {
                    println!("b = {} + {}", p.coords(), q.coords());
                }
            }
        }
        passed
    }

    pub fn teichmuller(&mut self, terms: usize, residue: &HomPolynomial) -> bool {
        let passed = residue.is_zero();
        match self.format {
            Format::Json => {
                self.json(&json!({ "teichmuller_terms": terms, "residue": residue.to_string(), "passed": passed }))
            }
            Format::Text => println!("hom-teichmuller: {terms} terms → {residue}"),
        }
        passed
    }

    pub fn certificates(&mut self, results: &[(String, bool)]) -> bool {
        let passed = results.iter().all(|(_, ok)| *ok);
        match self.format {
            Format::Json => {
                let list: Vec<_> = results
                    .iter()
                    .map(|(n, ok)| json!({ "name": n, "verified": ok }))
                    .collect();
                self.json(&json!({ "certificates": list, "passed": passed }));
            }
            Format::Text => {
                for (name, ok) in results {
                    println!("{} certificate {name}", if *ok { "ok  " } else { "FAIL" });
                }
            }
        }
        passed
    }

    pub fn distinguish(&mut self, distinct: bool) {
        match self.format {
            Format::Json => self.json(&json!({ "distinct": distinct })),
            Format::Text if distinct => {
                println!("not isomorphic: twisting maps have different characteristic polynomials")
            }
            Format::Text => println!("inconclusive"),
        }
    }
}
