//! Acceptance criteria, one line each: `criterion N <name>: PASS|FAIL`.

use std::process::Command;
use std::time::{Duration, Instant};

use pgt_core::catalog::default_catalog;
use pgt_core::construct;
use pgt_core::group::Model;
use pgt_core::io::write_group;
use pgt_core::maxabel::enumerate_maximal_abelian;
use pgt_core::report::Status;
use pgt_core::ses::is_ultraspecial;
use pgt_core::suite::{run_suite, Details, Outcome, SuiteId, SuiteOptions};
use pgt_core::Group;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalog_groups() -> Vec<Group> {
    default_catalog().iter().map(|e| e.build().unwrap()).collect()
}

fn lemma_suite(groups: &[Group]) -> Check {
    let start = Instant::now();
    let report = run_suite(SuiteId::Lemmas, groups, &SuiteOptions::default());
    let elapsed = start.elapsed();
    ensure(groups.len() == 17, || format!("{} groups", groups.len()))?;
    let mut pairs = 0;
    for r in &report.results {
        ensure(r.outcome == Outcome::Pass, || format!("{}: {:?} {:?}", r.group, r.outcome, r.reason))?;
        let Some(Details::Lemmas(list)) = &r.details else { return Err(format!("{}: no lemma reports", r.group)) };
        ensure(list.len() == 8, || format!("{}: {} lemmas", r.group, list.len()))?;
        for l in list {
            ensure(l.status == Status::Pass, || format!("{} {}: {:?}", r.group, l.lemma, l.status))?;
            pairs += l.pairs_checked;
        }
    }
    ensure(report.counterexamples.is_empty(), || "counterexamples reported".into())?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:.1?}"))?;
    Ok(format!("8 lemmas x 17 groups, {pairs} checks, {elapsed:.1?}"))
}

fn oracle(groups: &[Group]) -> Check {
    let small: Vec<Group> =
        groups.iter().filter(|g| matches!(g.model(), Model::Bilinear(_)) && g.order() <= 729).cloned().collect();
    ensure(small.len() == 7, || format!("{} bilinear groups of order <= 3^6", small.len()))?;
    let report = run_suite(SuiteId::Oracle, &small, &SuiteOptions::default());
    for r in &report.results {
        ensure(r.outcome == Outcome::Pass, || format!("{}: {:?} {:?}", r.group, r.outcome, r.reason))?;
        let Some(Details::Oracle(checks)) = &r.details else { return Err(format!("{}: no checks", r.group)) };
        ensure(checks.iter().any(|c| c.check == "maximal-abelian"), || format!("{}: maximal abelian list not compared", r.group))?;
    }
    Ok(format!("{} groups agree on center, centralizers, element centers, class sizes, maximal abelian lists", small.len()))
}

fn theorem(groups: &[Group]) -> Check {
    let report = run_suite(SuiteId::Theorem, groups, &SuiteOptions::default());
    let mut count = 0;
    for (g, r) in groups.iter().zip(&report.results) {
        if g.prime().is_none() {
            ensure(r.outcome == Outcome::Skipped, || format!("{}: non-p-group not skipped", r.group))?;
            continue;
        }
        ensure(r.outcome == Outcome::Pass, || format!("{}: {:?} {:?}", r.group, r.outcome, r.reason))?;
        let Some(Details::Theorem(certs)) = &r.details else { return Err(format!("{}: no certificates", r.group)) };
        ensure(!certs.is_empty(), || format!("{}: no maximal abelian subgroups", r.group))?;
        for c in certs {
            let ok = c.a * (c.b + c.l) >= c.n_total
                && c.product_chain.windows(2).all(|w| w[0] < w[1])
                && c.t <= c.a
                && c.product_equals_subgroup
                && c.intersection_equals_subgroup;
            ensure(ok, || format!("{}: {c:?}", r.group))?;
            count += 1;
        }
    }
    Ok(format!("{count} certificates over 14 p-groups"))
}

fn extraspecial_orders() -> Check {
    let mut out = Vec::new();
    for (p, k) in [(3u32, 1usize), (3, 2), (5, 1)] {
        let g = construct::extraspecial(p, k).unwrap();
        let list = enumerate_maximal_abelian(&g).unwrap();
        let want = (p as u64).pow(k as u32 + 1);
        ensure(list.iter().all(|a| g.subgroup_order(a) == want), || format!("{}: order other than {want}", g.name()))?;
        out.push(format!("{}: {} of order {want}", g.name(), list.len()));
        if (p, k) == (3, 1) {
            ensure(list.len() == 4, || format!("extraspecial-3-1 has {}", list.len()))?;
        }
    }
    Ok(out.join(", "))
}

fn centralizer_candidate() -> Check {
    let h = construct::centralizer_candidate(3, 3).unwrap();
    let b = h.as_bilinear().unwrap().embed_v(&[1, 0]);
    let c = h.centralizer(b);
    let (order, center, cb) = (h.order(), h.subgroup_order(&h.center()), h.subgroup_order(&c));
    ensure((order, center, cb) == (729, 81, 243), || format!("|H|={order} |Z(H)|={center} |C_H(b)|={cb}"))?;
    ensure(h.is_maximal_abelian(&c), || "C_H(b) is not maximal abelian".into())?;
    Ok("|H| = 3^6, |Z(H)| = 3^4, |C_H(b)| = 3^5, C_H(b) maximal abelian".into())
}

fn generalized_semifield() -> Check {
    let start = Instant::now();
    let g = construct::generalized_semifield_group_over_field(3, 3).map_err(|e| e.to_string())?;
    ensure(g.order() == 3u64.pow(9), || format!("order {}", g.order()))?;
    ensure(is_ultraspecial(&g).unwrap(), || "not ultraspecial".into())?;
    let orders: std::collections::BTreeSet<u64> =
        enumerate_maximal_abelian(&g).unwrap().iter().map(|a| g.subgroup_order(a)).collect();
    ensure(orders.contains(&243) && orders.contains(&729), || format!("orders {orders:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:.1?}"))?;
    Ok(format!("ultraspecial, order 3^9, maximal abelian orders {orders:?}, {elapsed:.1?}"))
}

fn ses_corollary(groups: &[Group]) -> Check {
    let report = run_suite(SuiteId::Ses, groups, &SuiteOptions::default());
    let mut names = Vec::new();
    for r in &report.results {
        match r.outcome {
            Outcome::Skipped => continue,
            Outcome::Pass => {}
            _ => return Err(format!("{}: {:?}", r.group, r.outcome)),
        }
        let Some(Details::Ses(c)) = &r.details else { return Err(format!("{}: no certificate", r.group)) };
        let cb = &c.corollary_bounds;
        let a = cb.a_min_observed;
        let ok = cb.a_min_exact
            && a * c.m >= c.n_ses
            && a * (c.m + c.l) >= 2 * c.n_ses
            && (c.n_ses < 2 || a >= 2)
            && c.verardi.all_class_sizes_p_m
            && c.l <= c.m
            && c.verardi.max_abelian_le_p_n_plus_m;
        ensure(ok, || format!("{}: {c:?}", r.group))?;
        names.push(r.group.clone());
    }
    ensure(names.len() == 10, || format!("{} s.e.s. groups", names.len()))?;
    Ok(format!("{} s.e.s. groups", names.len()))
}

fn heisenberg_spectrum() -> Check {
    let g = construct::heisenberg(3, 2).unwrap();
    let list = enumerate_maximal_abelian(&g).unwrap();
    ensure(list.iter().all(|a| g.subgroup_order(a) == 81), || "order other than 3^4".into())?;
    Ok(format!("{} maximal abelian subgroups, all of order 3^4", list.len()))
}

fn pgt() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pgt"))
}

fn open_question_cli(groups: &[Group]) -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut files = Vec::new();
    for g in groups.iter().filter(|g| g.order() <= 729 && pgt_core::ses::is_semi_extraspecial(g).unwrap_or(false)) {
        let path = dir.path().join(format!("{}.json", g.name()));
        write_group(g, &path).map_err(|e| e.to_string())?;
        files.push(path);
    }
    let start = Instant::now();
    let run = || pgt().args(["verify", "--suite", "openq"]).args(&files).output().unwrap();
    let (a, b) = (run(), run());
    let elapsed = start.elapsed();
    ensure(a.status.code() == Some(0), || format!("exit {:?}", a.status.code()))?;
    ensure(a.stdout == b.stdout, || "reports differ between runs".into())?;
    let doc: serde_json::Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    for r in doc["results"].as_array().unwrap() {
        ensure(r["outcome"] == "evidence", || format!("{}: {}", r["group"], r["outcome"]))?;
        ensure(r["details"]["exhaustive"] == true, || format!("{}: sampled", r["group"]))?;
    }
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:.1?}"))?;
    Ok(format!("{} groups, exhaustive, deterministic, {elapsed:.1?} for two runs", files.len()))
}

fn determinism() -> Check {
    let run = |threads: &str| pgt().args(["catalog", "--run-all"]).env("PGT_THREADS", threads).output().unwrap();
    let (a, b) = (run("1"), run("3"));
    ensure(a.status.code() == Some(0), || format!("exit {:?}", a.status.code()))?;
    ensure(!a.stdout.is_empty() && a.stdout == b.stdout, || "reports differ".into())?;
    Ok(format!("{} bytes identical with 1 and 3 threads", a.stdout.len()))
}

fn main() {
    let groups = catalog_groups();
    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("lemma suite", Box::new(|| lemma_suite(&groups))),
        ("oracle equivalence", Box::new(|| oracle(&groups))),
        ("bound theorem", Box::new(|| theorem(&groups))),
        ("extraspecial maximal abelian orders", Box::new(extraspecial_orders)),
        ("centralizer candidate H(3,3)", Box::new(centralizer_candidate)),
        ("generalized semifield group", Box::new(generalized_semifield)),
        ("semi-extraspecial corollary", Box::new(|| ses_corollary(&groups))),
        ("heisenberg order spectrum", Box::new(heisenberg_spectrum)),
        ("open-question evidence", Box::new(|| open_question_cli(&groups))),
        ("determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
