use std::collections::BTreeSet;

use pgt_core::centralizer::parameters;
use pgt_core::construct;
use pgt_core::ses::{
    fingerprint, fingerprint_compare, h_candidate_check, is_semi_extraspecial, is_ultraspecial, open_question_check,
    ses_certificate, ses_via_quotients, DEFAULT_MAX_TUPLES,
};
use pgt_core::{Error, Group};

type Set = BTreeSet<usize>;

fn closure(g: &Group, gens: &[usize]) -> Set {
    let mut s: Set = [g.identity()].into();
    let mut frontier = vec![g.identity()];
    while let Some(x) = frontier.pop() {
        for &y in gens {
            let z = g.mul(x, y);
            if s.insert(z) {
                frontier.push(z);
            }
        }
    }
    s
}

fn comm(g: &Group, x: usize, y: usize) -> usize {
    g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y))
}

// every G/N with N of index p in Z(G) is extraspecial
fn brute_ses(g: &Group, p: usize) -> bool {
    let all: Vec<usize> = g.elements().collect();
    let z: Vec<usize> = all.iter().copied().filter(|&x| all.iter().all(|&y| g.mul(x, y) == g.mul(y, x))).collect();
    let commutators: Vec<usize> = all.iter().flat_map(|&x| all.iter().map(move |&y| (x, y))).map(|(x, y)| comm(g, x, y)).collect();
    let derived = closure(g, &commutators.iter().copied().collect::<Set>().into_iter().collect::<Vec<_>>());
    let mut hyperplanes = BTreeSet::new();
    for &a in &z {
        for &b in &z {
            for &c in &z {
                let n = closure(g, &[a, b, c]);
                if n.len() * p == z.len() {
                    hyperplanes.insert(n);
                }
            }
        }
    }
    if z.len() == 1 {
        return false;
    }
    hyperplanes.iter().all(|n| {
        let central_mod_n: Vec<usize> =
            all.iter().copied().filter(|&x| all.iter().all(|&y| n.contains(&comm(g, x, y)))).collect();
        let mut dn: Vec<usize> = derived.iter().copied().collect();
        dn.extend(n.iter().copied());
        let dn = closure(g, &dn);
        central_mod_n.len() == p * n.len() && dn.len() == central_mod_n.len()
    })
}

#[test]
fn bilinear_criterion_matches_quotients_and_brute_force() {
    let cases: Vec<(Group, bool)> = vec![
        (construct::extraspecial(3, 1).unwrap(), true),
        (construct::extraspecial(3, 2).unwrap(), true),
        (construct::heisenberg(3, 2).unwrap(), true),
        (construct::centralizer_candidate(3, 3).unwrap(), false),
        (construct::dihedral8(), true),
        (construct::quaternion8(), true),
    ];
    for (g, expected) in cases {
        assert_eq!(is_semi_extraspecial(&g).unwrap(), expected, "{}", g.name());
        let t = g.to_table().unwrap();
        assert_eq!(ses_via_quotients(&t).unwrap(), expected, "{}", g.name());
        let p = g.prime().unwrap() as usize;
        if g.order() <= 243 {
            assert_eq!(brute_ses(&t, p), expected, "{}", g.name());
        }
    }
}

#[test]
fn ultraspecial_groups() {
    assert!(is_ultraspecial(&construct::heisenberg(3, 2).unwrap()).unwrap());
    assert!(is_ultraspecial(&construct::extraspecial(3, 1).unwrap()).unwrap());
    assert!(!is_ultraspecial(&construct::extraspecial(3, 2).unwrap()).unwrap());
}

#[test]
fn certificate_for_heisenberg_group() {
    let g = construct::heisenberg(3, 2).unwrap();
    let cert = ses_certificate(&g).unwrap();
    assert!(cert.is_ses && cert.is_ultraspecial && cert.all_hold());
    assert_eq!((cert.n_ses, cert.m, cert.l), (2, 2, 2));
    assert!(cert.corollary_bounds.a_min_exact);
    assert_eq!(parameters(&g).unwrap().k, None);
}

#[test]
fn certificate_for_generalized_semifield_group() {
    let g = construct::generalized_semifield_group_over_field(3, 3).unwrap();
    let cert = ses_certificate(&g).unwrap();
    assert!(cert.all_hold(), "{cert:?}");
    assert!(cert.maximal_abelian_index_exponents.contains_key(&2));
    assert!(cert.maximal_abelian_index_exponents.contains_key(&3));
    assert_eq!(cert.corollary_bounds.a_min_observed, 2);
}

#[test]
fn certificate_rejects_non_ses() {
    let h = construct::centralizer_candidate(3, 3).unwrap();
    assert!(matches!(ses_certificate(&h), Err(Error::NotSes)));
    assert!(matches!(open_question_check(&h, DEFAULT_MAX_TUPLES), Err(Error::NotSes)));
}

#[test]
fn open_question_evidence_on_small_groups() {
    for g in [construct::extraspecial(3, 1).unwrap(), construct::heisenberg(3, 2).unwrap()] {
        let r = open_question_check(&g, DEFAULT_MAX_TUPLES).unwrap();
        assert!(r.exhaustive);
        assert!(r.product_property.holds && r.centralizer_property.holds, "{r:?}");
        assert!(r.tuples_checked > 0);
    }
}

#[test]
fn h_candidate_properties() {
    let h = construct::centralizer_candidate(3, 3).unwrap();
    let r = h_candidate_check(&h, 3).unwrap();
    assert!(r.order_is_p_2n && r.center_is_p_n_plus_1 && r.derived_at_most_p_n);
    assert!(r.centralizers_minimal);
    // with two c_i, C_H(c_1) also contains c_2
    let r = h_candidate_check(&construct::centralizer_candidate(3, 4).unwrap(), 4).unwrap();
    assert!(r.order_is_p_2n && r.center_is_p_n_plus_1);
    assert!(!r.centralizers_minimal);
}

#[test]
fn fingerprints_separate_the_two_order_3_9_groups() {
    let a = construct::build("sfheis-3-3", Default::default()).unwrap();
    let b = construct::generalized_semifield_group_over_field(3, 3).unwrap();
    let fa = fingerprint(&a).unwrap();
    let fb = fingerprint(&b).unwrap();
    let cmp = fingerprint_compare(&fa, &fb);
    assert!(cmp.distinguishable);
    assert!(cmp.differing_fields.contains(&"maximal_abelian_order_multiset"));
    assert!(!fingerprint_compare(&fa, &fa).distinguishable);
}

#[test]
fn fingerprint_does_not_depend_on_model() {
    for g in [construct::extraspecial(3, 1).unwrap(), construct::heisenberg(3, 2).unwrap()] {
        assert_eq!(fingerprint(&g).unwrap(), fingerprint(&g.to_table().unwrap()).unwrap());
    }
}
