//! Verification suites over lists of groups, and their JSON and CSV reports.
//!
//! Reports carry no timing data, so that runs are byte-identical across
//! repetitions and thread counts.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::centralizer::{check_center_lemma, PointProfile, CENTER_LEMMAS};
use crate::error::{Error, Result};
use crate::group::{Group, Model};
use crate::maxabel::{bound_certificate, check_subgroup_lemma, enumerate_maximal_abelian, BoundCertificate, SUBGROUP_LEMMAS};
use crate::report::{LemmaReport, Status};
use crate::ses::{
    is_semi_extraspecial, open_question_check, ses_certificate, ses_via_quotients, OpenQuestionReport, SesCertificate,
    DEFAULT_MAX_TUPLES,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Largest bilinear group compared against its expanded table.
pub const ORACLE_MAX_ORDER: u64 = 729;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteId {
    Lemmas,
    Theorem,
    Ses,
    Openq,
    Oracle,
}

impl SuiteId {
    pub const ALL: [SuiteId; 5] = [SuiteId::Lemmas, SuiteId::Theorem, SuiteId::Ses, SuiteId::Openq, SuiteId::Oracle];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Lemmas => "lemmas",
            SuiteId::Theorem => "theorem",
            SuiteId::Ses => "ses",
            SuiteId::Openq => "openq",
            SuiteId::Oracle => "oracle",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Unsupported(format!("unknown suite {s}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteOptions {
    /// Groups above this order are skipped; the oracle suite defaults to
    /// [`ORACLE_MAX_ORDER`].
    pub max_order: Option<u64>,
    pub max_tuples: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_order: None, max_tuples: DEFAULT_MAX_TUPLES }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Skipped,
    /// Reported without pass/fail semantics.
    Evidence,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleCheck {
    pub check: &'static str,
    pub agree: bool,
    pub compared: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Details {
    Lemmas(Vec<LemmaReport>),
    Theorem(Vec<BoundCertificate>),
    Ses(Box<SesCertificate>),
    Openq(Box<OpenQuestionReport>),
    Oracle(Vec<OracleCheck>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupResult {
    pub group: String,
    pub order: u64,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Details>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub group: String,
    pub check: String,
    pub witness: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub suite: SuiteId,
    pub results: Vec<GroupResult>,
    pub counterexamples: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn new(suite: SuiteId, results: Vec<GroupResult>) -> Self {
        let counterexamples = results.iter().flat_map(counterexamples_of).collect();
        SuiteReport { schema_version: SCHEMA_VERSION, tool_version: TOOL_VERSION, suite, results, counterexamples }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn counterexamples_of(r: &GroupResult) -> Vec<Counterexample> {
    if r.outcome != Outcome::Fail {
        return Vec::new();
    }
    let ce = |check: &str, witness: Value| Counterexample { group: r.group.clone(), check: check.into(), witness };
    let found: Vec<Counterexample> = match &r.details {
        Some(Details::Lemmas(list)) => list
            .iter()
            .filter(|l| l.status.failed())
            .map(|l| ce(&l.lemma, json!({"elements": l.counterexample, "detail": l.detail})))
            .collect(),
        Some(Details::Theorem(list)) => list
            .iter()
            .filter(|c| !c.verified())
            .map(|c| ce("bound-certificate", serde_json::to_value(c).unwrap()))
            .collect(),
        Some(Details::Ses(c)) => vec![ce("ses-bounds", serde_json::to_value(c).unwrap())],
        Some(Details::Oracle(list)) => list.iter().filter(|c| !c.agree).map(|c| ce(c.check, json!(c))).collect(),
        Some(Details::Openq(_)) => Vec::new(),
        None => Vec::new(),
    };
    if found.is_empty() {
        vec![ce("error", json!(r.reason))]
    } else {
        found
    }
}

fn skipped(g: &Group, reason: impl fmt::Display) -> GroupResult {
    GroupResult { group: g.name().into(), order: g.order(), outcome: Outcome::Skipped, reason: Some(reason.to_string()), details: None }
}

fn finished(g: &Group, ok: bool, details: Details) -> GroupResult {
    GroupResult {
        group: g.name().into(),
        order: g.order(),
        outcome: if ok { Outcome::Pass } else { Outcome::Fail },
        reason: None,
        details: Some(details),
    }
}

fn failed(g: &Group, e: Error) -> GroupResult {
    GroupResult { group: g.name().into(), order: g.order(), outcome: Outcome::Fail, reason: Some(e.to_string()), details: None }
}

/// Every lemma on one group, given its point profile.
pub fn lemma_reports(g: &Group, prof: &PointProfile) -> Result<Vec<LemmaReport>> {
    let mut out = Vec::new();
    for id in CENTER_LEMMAS {
        out.push(check_center_lemma(g, prof, id)?);
    }
    match enumerate_maximal_abelian(g) {
        Ok(maxabs) => {
            for id in SUBGROUP_LEMMAS {
                out.push(check_subgroup_lemma(g, prof, &maxabs, id)?);
            }
        }
        Err(e @ Error::CapExceeded { .. }) => {
            out.push(check_subgroup_lemma(g, prof, &[], "threef")?);
            for id in &SUBGROUP_LEMMAS[1..] {
                out.push(LemmaReport::not_applicable(id, g.name(), e.to_string()));
            }
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

pub fn lemma_result(g: &Group, reports: Vec<LemmaReport>) -> GroupResult {
    let ok = !reports.iter().any(|r| r.status.failed());
    finished(g, ok, Details::Lemmas(reports))
}

fn run_lemmas(g: &Group) -> GroupResult {
    let prof = match PointProfile::new(g) {
        Ok(p) => p,
        Err(e) => return skipped(g, e),
    };
    match lemma_reports(g, &prof) {
        Ok(reports) => lemma_result(g, reports),
        Err(e) => failed(g, e),
    }
}

fn run_theorem(g: &Group) -> GroupResult {
    if g.prime().is_none() {
        return skipped(g, Error::NotPGroup);
    }
    if g.is_abelian() {
        return skipped(g, Error::AbelianGroup);
    }
    let maxabs = match enumerate_maximal_abelian(g) {
        Ok(list) => list,
        Err(e) => return skipped(g, e),
    };
    let certs: Result<Vec<BoundCertificate>> = maxabs.par_iter().map(|a| bound_certificate(g, a)).collect();
    match certs {
        Ok(certs) => {
            let ok = certs.iter().all(BoundCertificate::verified);
            finished(g, ok, Details::Theorem(certs))
        }
        Err(e) => failed(g, e),
    }
}

fn run_ses(g: &Group) -> GroupResult {
    if g.prime().is_none() {
        return skipped(g, Error::NotPGroup);
    }
    match is_semi_extraspecial(g) {
        Ok(true) => {}
        Ok(false) => return skipped(g, Error::NotSes),
        Err(e) => return skipped(g, e),
    }
    match ses_certificate(g) {
        Ok(c) => finished(g, c.all_hold(), Details::Ses(Box::new(c))),
        Err(e) => failed(g, e),
    }
}

fn run_openq(g: &Group, max_tuples: u64) -> GroupResult {
    if g.prime().is_none() {
        return skipped(g, Error::NotPGroup);
    }
    match is_semi_extraspecial(g) {
        Ok(true) => {}
        Ok(false) => return skipped(g, Error::NotSes),
        Err(e) => return skipped(g, e),
    }
    match open_question_check(g, max_tuples) {
        Ok(r) => GroupResult {
            group: g.name().into(),
            order: g.order(),
            outcome: Outcome::Evidence,
            reason: None,
            details: Some(Details::Openq(Box::new(r))),
        },
        Err(e) => skipped(g, e),
    }
}

fn sets(g: &Group, list: &[crate::group::Subgroup]) -> Vec<FixedBitSet> {
    let mut out: Vec<FixedBitSet> = list.iter().map(|s| g.subgroup_as_set(s)).collect();
    out.sort_by(|a, b| a.ones().cmp(b.ones()));
    out
}

/// Compares the bilinear fast path with brute force on the expanded table.
pub fn oracle_checks(g: &Group) -> Result<Vec<OracleCheck>> {
    let t = g.to_table()?;
    let n = g.len();
    let check = |check, agree, compared| OracleCheck { check, agree, compared };
    let mut out = vec![check("center", g.subgroup_as_set(&g.center()) == t.subgroup_as_set(&t.center()), 1)];
    let agree = (0..n).into_par_iter().all(|x| g.subgroup_as_set(&g.centralizer(x)) == t.subgroup_as_set(&t.centralizer(x)));
    out.push(check("centralizers", agree, n as u64));
    let noncentral: Vec<usize> = (0..n).filter(|&x| !g.is_central(x)).collect();
    let agree = noncentral.par_iter().all(|&x| match (g.element_center(x), t.element_center(x)) {
        (Ok(a), Ok(b)) => g.subgroup_as_set(&a) == t.subgroup_as_set(&b),
        _ => false,
    });
    out.push(check("element-centers", agree, noncentral.len() as u64));
    out.push(check("class-sizes", g.class_size_multiset() == t.class_size_multiset(), 1));
    let ours = sets(g, &enumerate_maximal_abelian(g)?);
    let theirs = sets(&t, &enumerate_maximal_abelian(&t)?);
    out.push(check("maximal-abelian", ours == theirs, ours.len() as u64));
    out.push(check("semi-extraspecial", is_semi_extraspecial(g)? == ses_via_quotients(&t)?, 1));
    Ok(out)
}

fn run_oracle(g: &Group) -> GroupResult {
    if !matches!(g.model(), Model::Bilinear(_)) {
        return skipped(g, "not a bilinear group");
    }
    match oracle_checks(g) {
        Ok(checks) => {
            let ok = checks.iter().all(|c| c.agree);
            finished(g, ok, Details::Oracle(checks))
        }
        Err(e) => skipped(g, e),
    }
}

pub fn run_group(suite: SuiteId, g: &Group, opts: &SuiteOptions) -> GroupResult {
    let cap = match suite {
        SuiteId::Oracle => Some(opts.max_order.unwrap_or(ORACLE_MAX_ORDER)),
        _ => opts.max_order,
    };
    if let Some(cap) = cap {
        if g.order() > cap {
            return skipped(g, format!("order {} exceeds --max-order {cap}", g.order()));
        }
    }
    match suite {
        SuiteId::Lemmas => run_lemmas(g),
        SuiteId::Theorem => run_theorem(g),
        SuiteId::Ses => run_ses(g),
        SuiteId::Openq => run_openq(g, opts.max_tuples),
        SuiteId::Oracle => run_oracle(g),
    }
}

/// Runs one suite over the groups; results keep the input order.
pub fn run_suite(suite: SuiteId, groups: &[Group], opts: &SuiteOptions) -> SuiteReport {
    let results = groups.par_iter().map(|g| run_group(suite, g, opts)).collect();
    SuiteReport::new(suite, results)
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports always serialize");
    s.push('\n');
    s
}

fn header(suite: SuiteId) -> &'static [&'static str] {
    match suite {
        SuiteId::Lemmas => &["group", "lemma", "status", "pairs_checked"],
        SuiteId::Theorem => &[
            "group",
            "subgroup",
            "n_total",
            "b",
            "l",
            "a",
            "t",
            "holds",
            "global_holds",
            "chain_increasing",
            "t_at_most_a",
            "product_equals_subgroup",
            "intersection_equals_subgroup",
        ],
        SuiteId::Ses => &[
            "group",
            "p",
            "n_ses",
            "m",
            "b",
            "l",
            "a_min",
            "a_min_exact",
            "n_over_m_holds",
            "two_n_over_m_plus_l_holds",
            "a_ge_2_when_n_ge_2_holds",
            "max_abelian_le_p_n_plus_m",
            "l_le_m",
            "all_class_sizes_p_m",
        ],
        SuiteId::Openq => &[
            "group",
            "distinct_centers",
            "exhaustive",
            "seed",
            "tuples_checked",
            "product_property",
            "centralizer_property",
            "conjectured_bound",
        ],
        SuiteId::Oracle => &["group", "check", "agree", "compared"],
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::NotApplicable => "not-applicable",
    }
}

fn rows(r: &GroupResult) -> Vec<Vec<String>> {
    let g = r.group.clone();
    let s = |x: &dyn ToString| x.to_string();
    match &r.details {
        Some(Details::Lemmas(list)) => list
            .iter()
            .map(|l| vec![g.clone(), l.lemma.clone(), status_str(l.status).into(), s(&l.pairs_checked)])
            .collect(),
        Some(Details::Theorem(list)) => list
            .iter()
            .enumerate()
            .map(|(i, c)| {
                vec![
                    g.clone(),
                    s(&i),
                    s(&c.n_total),
                    s(&c.b),
                    s(&c.l),
                    s(&c.a),
                    s(&c.t),
                    s(&c.holds),
                    s(&c.global_holds),
                    s(&c.chain_increasing),
                    s(&c.t_at_most_a),
                    s(&c.product_equals_subgroup),
                    s(&c.intersection_equals_subgroup),
                ]
            })
            .collect(),
        Some(Details::Ses(c)) => {
            let cb = &c.corollary_bounds;
            let v = &c.verardi;
            vec![vec![
                g,
                s(&c.p),
                s(&c.n_ses),
                s(&c.m),
                s(&c.b),
                s(&c.l),
                s(&cb.a_min_observed),
                s(&cb.a_min_exact),
                s(&cb.n_over_m_holds),
                s(&cb.two_n_over_m_plus_l_holds),
                s(&cb.a_ge_2_when_n_ge_2_holds),
                s(&v.max_abelian_le_p_n_plus_m),
                s(&v.l_le_m),
                s(&v.all_class_sizes_p_m),
            ]]
        }
        Some(Details::Openq(o)) => vec![vec![
            g,
            s(&o.distinct_centers),
            s(&o.exhaustive),
            o.seed.map(|x| x.to_string()).unwrap_or_default(),
            s(&o.tuples_checked),
            s(&o.product_property.holds),
            s(&o.centralizer_property.holds),
            o.conjectured_bound.as_ref().map(|b| b.holds.to_string()).unwrap_or_default(),
        ]],
        Some(Details::Oracle(list)) => {
            list.iter().map(|c| vec![g.clone(), c.check.into(), s(&c.agree), s(&c.compared)]).collect()
        }
        None => Vec::new(),
    }
}

/// One CSV row per record (lemma, maximal abelian subgroup, group or
/// check, by suite); skipped groups produce no rows.
pub fn to_csv(report: &SuiteReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header(report.suite)).unwrap();
    for r in &report.results {
        for row in rows(r) {
            w.write_record(&row).unwrap();
        }
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct;

    #[test]
    fn empty_suite_gives_header_only_csv() {
        for id in SuiteId::ALL {
            let r = run_suite(id, &[], &SuiteOptions::default());
            assert!(r.passed());
            assert_eq!(to_csv(&r).lines().count(), 1);
        }
    }

    #[test]
    fn suite_names_parse() {
        for id in SuiteId::ALL {
            assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), id);
        }
        assert!("everything".parse::<SuiteId>().is_err());
    }

    #[test]
    fn injected_fault_produces_a_counterexample() {
        let g = construct::extraspecial(3, 1).unwrap();
        let mut prof = PointProfile::new(&g).unwrap();
        // pretend some noncentral point commutes with nothing
        let x = prof.noncentral()[0];
        prof.centralizers[x].clear();
        let report = SuiteReport::new(SuiteId::Lemmas, vec![lemma_result(&g, lemma_reports(&g, &prof).unwrap())]);
        assert!(!report.passed());
        let doc: Value = serde_json::from_str(&to_json(&report)).unwrap();
        assert!(doc["counterexamples"][0]["witness"]["elements"].is_array());
    }

    #[test]
    fn theorem_rows_are_per_subgroup() {
        let r = run_suite(SuiteId::Theorem, &[construct::extraspecial(3, 1).unwrap()], &SuiteOptions::default());
        assert!(r.passed());
        assert_eq!(to_csv(&r).lines().count(), 5);
    }

    #[test]
    fn non_p_groups_are_skipped_by_the_theorem_suite() {
        let r = run_suite(SuiteId::Theorem, &[construct::symmetric3()], &SuiteOptions::default());
        assert_eq!(r.results[0].outcome, Outcome::Skipped);
        assert!(r.passed());
    }
}
