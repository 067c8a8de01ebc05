use serde::Serialize;

use crate::group::ElementRepr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn failed(self) -> bool {
        self == Status::Fail
    }
}

/// Outcome of an exhaustive check of one identity on one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub lemma: String,
    pub group: String,
    pub status: Status,
    pub pairs_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<ElementRepr>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl LemmaReport {
    pub fn pass(lemma: &str, group: &str, pairs_checked: u64) -> Self {
        LemmaReport {
            lemma: lemma.into(),
            group: group.into(),
            status: Status::Pass,
            pairs_checked,
            counterexample: None,
            detail: None,
        }
    }

    pub fn fail(lemma: &str, group: &str, pairs_checked: u64, witness: Vec<ElementRepr>, detail: String) -> Self {
        LemmaReport {
            lemma: lemma.into(),
            group: group.into(),
            status: Status::Fail,
            pairs_checked,
            counterexample: Some(witness),
            detail: Some(detail),
        }
    }

    pub fn not_applicable(lemma: &str, group: &str, detail: String) -> Self {
        LemmaReport {
            lemma: lemma.into(),
            group: group.into(),
            status: Status::NotApplicable,
            pairs_checked: 0,
            counterexample: None,
            detail: Some(detail),
        }
    }
}
