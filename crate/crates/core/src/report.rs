//! Structured pass/fail results.

use serde::{Deserialize, Serialize};

use crate::linalg::Vector;

/// Where a law fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "data")]
pub enum Witness {
    /// Basis indices, one per argument slot (polarized slots flattened in
    /// variable order).
    Basis(Vec<usize>),
    /// Explicit coordinate vectors, one per argument.
    Elements(Vec<Vector>),
    /// A sampled element failing `x^n = x^{n-i,i}`.
    Power { x: Vector, n: u32, i: u32 },
    /// An operator identity failing on basis vector `row`; lhs and rhs of the
    /// report are the images of that basis vector.
    Operator { identity: String, row: usize },
    /// Two verification routes disagree.
    Disagreement { first: bool, second: bool },
}

/// The outcome of checking one law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub law: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<Vector>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<Vector>,
}

impl CheckReport {
    pub fn pass(law: impl Into<String>) -> Self {
        CheckReport {
            law: law.into(),
            passed: true,
            witness: None,
            lhs: None,
            rhs: None,
        }
    }

    pub fn fail(law: impl Into<String>, witness: Witness, lhs: Vector, rhs: Vector) -> Self {
        CheckReport {
            law: law.into(),
            passed: false,
            witness: Some(witness),
            lhs: Some(lhs),
            rhs: Some(rhs),
        }
    }

    /// A failure with no meaningful pair of values to show.
    pub fn fail_bare(law: impl Into<String>, witness: Witness) -> Self {
        CheckReport {
            law: law.into(),
            passed: false,
            witness: Some(witness),
            lhs: None,
            rhs: None,
        }
    }

    /// Folds several reports into one under `law`: passes iff all pass,
    /// otherwise carries the first failure's witness and values.
    pub fn all(law: impl Into<String>, reports: &[CheckReport]) -> Self {
        match reports.iter().find(|r| !r.passed) {
            None => CheckReport::pass(law),
            Some(first) => CheckReport {
                law: law.into(),
                ..first.clone()
            },
        }
    }

    /// Renames the law, keeping the verdict.
    pub fn named(mut self, law: impl Into<String>) -> Self {
        self.law = law.into();
        self
    }
}
