use pgt_core::catalog::{check_catalog, default_catalog, find};
use pgt_core::io::{group_to_json, parse_group};
use pgt_core::suite::{run_suite, to_csv, to_json, SuiteId, SuiteOptions};

#[test]
fn catalog_has_seventeen_distinct_entries() {
    let entries = default_catalog();
    assert_eq!(entries.len(), 17);
    let names: std::collections::BTreeSet<_> = entries.iter().map(|e| e.name.as_str()).collect();
    assert_eq!(names.len(), 17);
    assert!(find("gab-3-3").is_some());
    assert!(find("gab-3-4").is_none());
}

#[test]
fn every_entry_reproduces_its_expected_values() {
    for check in check_catalog(&default_catalog()) {
        assert!(check.passed(), "{check:?}");
    }
}

#[test]
fn built_groups_carry_catalog_names() {
    for e in default_catalog() {
        assert_eq!(e.build().unwrap().name(), e.name);
    }
}

#[test]
fn file_round_trip_gives_identical_reports() {
    let groups: Vec<_> = default_catalog()
        .iter()
        .map(|e| e.build().unwrap())
        .filter(|g| g.order() <= 729)
        .collect();
    let reparsed: Vec<_> = groups.iter().map(|g| parse_group(&group_to_json(g)).unwrap()).collect();
    let opts = SuiteOptions::default();
    for suite in SuiteId::ALL {
        let a = run_suite(suite, &groups, &opts);
        let b = run_suite(suite, &reparsed, &opts);
        assert_eq!(to_json(&a), to_json(&b), "{suite}");
        assert_eq!(to_csv(&a), to_csv(&b));
    }
}
