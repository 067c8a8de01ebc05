//! The built-in catalog of groups, each with the invariants it must
//! reproduce when built and measured.

use rayon::prelude::*;
use serde::Serialize;

use crate::centralizer::parameters;
use crate::construct::{build, BuildParams};
use crate::error::Result;
use crate::group::Group;
use crate::maxabel::enumerate_maximal_abelian;
use crate::suite::{run_suite, Outcome, SuiteId, SuiteOptions, SuiteReport, SCHEMA_VERSION, TOOL_VERSION};

/// Exact invariants of a catalog group; `None` fields are not checked.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub order: u64,
    pub center_order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n_total: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maximal_abelian_count: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub construction: &'static str,
    #[serde(skip)]
    pub params: BuildParams,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn build(&self) -> Result<Group> {
        Ok(build(self.construction, self.params)?.with_name(self.name.clone()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub field: &'static str,
    pub expected: u64,
    pub measured: u64,
}

/// Builds the entry and compares every expected value with its measurement.
pub fn check_entry(entry: &CatalogEntry) -> Result<Vec<Mismatch>> {
    let g = entry.build()?;
    let e = &entry.expected;
    let mut out = Vec::new();
    let mut cmp = |field, expected: u64, measured: u64| {
        if expected != measured {
            out.push(Mismatch { field, expected, measured });
        }
    };
    cmp("order", e.order, g.order());
    cmp("center_order", e.center_order, g.subgroup_order(&g.center()));
    if e.n_total.is_some() || e.m.is_some() || e.b.is_some() || e.l.is_some() {
        let params = parameters(&g)?;
        let pairs = [(e.n_total, params.n_total, "n_total"), (e.m, params.m, "m"), (e.b, params.b, "b"), (e.l, params.l, "l")];
        for (want, got, field) in pairs {
            if let Some(want) = want {
                cmp(field, want.into(), got.into());
            }
        }
    }
    if let Some(count) = e.maximal_abelian_count {
        cmp("maximal_abelian_count", count, enumerate_maximal_abelian(&g)?.len() as u64);
    }
    Ok(out)
}

fn entry(name: &str, construction: &'static str, p: u32, x: Option<usize>, expected: Expected) -> CatalogEntry {
    CatalogEntry {
        name: name.into(),
        construction,
        params: BuildParams { p: Some(p), a: x, n: x, k: x },
        expected,
    }
}

fn pgroup(order: u64, center_order: u64, n_total: u32, m: u32, b: u32, l: u32, count: Option<u64>) -> Expected {
    Expected {
        order,
        center_order,
        n_total: Some(n_total),
        m: Some(m),
        b: Some(b),
        l: Some(l),
        maximal_abelian_count: count,
    }
}

fn plain(order: u64, center_order: u64, count: u64) -> Expected {
    Expected { order, center_order, maximal_abelian_count: Some(count), ..Default::default() }
}

/// The seventeen default groups, covering every construction and both models.
pub fn default_catalog() -> Vec<CatalogEntry> {
    let three = |e: u32| 3u64.pow(e);
    vec![
        entry("S3", "S3", 2, None, plain(6, 1, 4)),
        entry("S4", "S4", 2, None, plain(24, 1, 11)),
        entry("A4", "A4", 2, None, plain(12, 1, 5)),
        entry("D4", "D4", 2, None, pgroup(8, 2, 2, 1, 1, 1, Some(3))),
        entry("Q8", "Q8", 2, None, pgroup(8, 2, 2, 1, 1, 1, Some(3))),
        entry("extraspecial-3-1", "extraspecial", 3, Some(1), pgroup(27, 3, 2, 1, 1, 1, Some(4))),
        entry("extraspecial-3-2", "extraspecial", 3, Some(2), pgroup(243, 3, 4, 1, 1, 1, Some(40))),
        entry("extraspecial-5-1", "extraspecial", 5, Some(1), pgroup(125, 5, 2, 1, 1, 1, Some(6))),
        entry("heisenberg-3-2", "heisenberg", 3, Some(2), pgroup(729, 9, 4, 2, 2, 2, Some(10))),
        entry("heisenberg-5-1", "heisenberg", 5, Some(1), pgroup(125, 5, 2, 1, 1, 1, Some(6))),
        entry("paperH-3-3", "paperH", 3, Some(3), pgroup(three(6), three(4), 2, 4, 1, 1, Some(4))),
        entry("paperH-3-4", "paperH", 3, Some(4), pgroup(three(8), three(5), 3, 5, 2, 2, None)),
        entry("sfheis-3-2", "sfheis", 3, Some(2), pgroup(729, 9, 4, 2, 2, 2, Some(10))),
        entry("sfheis-3-3", "sfheis", 3, Some(3), pgroup(three(9), 27, 6, 3, 3, 3, Some(28))),
        entry("gab-3-3", "gab", 3, Some(3), pgroup(three(9), 27, 6, 3, 3, 3, None)),
        entry("example-n4", "example-n4", 3, None, pgroup(three(7), three(4), 3, 4, 2, 1, None)),
        entry("example-n5", "example-n5", 3, None, pgroup(three(10), three(6), 4, 6, 3, 1, None)),
    ]
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    default_catalog().into_iter().find(|e| e.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryCheck {
    pub name: String,
    pub construction: &'static str,
    pub expected: Expected,
    pub mismatches: Vec<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.error.is_none()
    }
}

/// Expected-value checks for every entry and every suite over the catalog.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CatalogReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub entries: Vec<EntryCheck>,
    pub suites: Vec<SuiteReport>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryCheck::passed) && self.suites.iter().all(SuiteReport::passed)
    }
}

pub fn check_catalog(entries: &[CatalogEntry]) -> Vec<EntryCheck> {
    entries
        .par_iter()
        .map(|e| {
            let (mismatches, error) = match check_entry(e) {
                Ok(m) => (m, None),
                Err(err) => (Vec::new(), Some(err.to_string())),
            };
            EntryCheck { name: e.name.clone(), construction: e.construction, expected: e.expected, mismatches, error }
        })
        .collect()
}

/// Builds every entry and runs every suite over the built groups. Entries
/// that fail to build are reported in `entries` and left out of the suites.
pub fn run_catalog(entries: &[CatalogEntry], opts: &SuiteOptions) -> CatalogReport {
    let groups: Vec<Group> = entries.par_iter().filter_map(|e| e.build().ok()).collect();
    CatalogReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        entries: check_catalog(entries),
        suites: SuiteId::ALL.iter().map(|&s| run_suite(s, &groups, opts)).collect(),
    }
}

/// One row per entry: the expected values.
pub fn entries_csv(entries: &[CatalogEntry]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["name", "construction", "order", "center_order", "n_total", "m", "b", "l", "maximal_abelian_count"])
        .unwrap();
    let opt = |x: Option<u32>| x.map(|v| v.to_string()).unwrap_or_default();
    for e in entries {
        let x = &e.expected;
        w.write_record([
            e.name.clone(),
            e.construction.to_string(),
            x.order.to_string(),
            x.center_order.to_string(),
            opt(x.n_total),
            opt(x.m),
            opt(x.b),
            opt(x.l),
            x.maximal_abelian_count.map(|v| v.to_string()).unwrap_or_default(),
        ])
        .unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

fn outcome_str(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Skipped => "skipped",
        Outcome::Evidence => "evidence",
    }
}

/// One row per entry: expected values reproduced, then the outcome of each
/// suite.
pub fn catalog_report_csv(r: &CatalogReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["name", "expected_values"];
    header.extend(r.suites.iter().map(|s| s.suite.as_str()));
    w.write_record(&header).unwrap();
    for e in &r.entries {
        let mut row = vec![e.name.clone(), if e.passed() { "pass" } else { "fail" }.to_string()];
        for s in &r.suites {
            let outcome = s.results.iter().find(|g| g.group == e.name).map(|g| outcome_str(g.outcome)).unwrap_or("missing");
            row.push(outcome.into());
        }
        w.write_record(&row).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}
