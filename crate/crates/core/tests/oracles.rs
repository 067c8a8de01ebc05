//! Structural routines against brute force over multiplication maps.

use std::collections::{BTreeMap, BTreeSet};

use pgt_core::centralizer::{self, PointProfile, CENTER_LEMMAS};
use pgt_core::construct;
use pgt_core::maxabel::{self, enumerate_maximal_abelian, SUBGROUP_LEMMAS};
use pgt_core::report::Status;
use pgt_core::Group;

type Set = BTreeSet<usize>;

fn centralizer_of(g: &Group, xs: &Set) -> Set {
    g.elements().filter(|&y| xs.iter().all(|&x| g.mul(x, y) == g.mul(y, x))).collect()
}

fn center(g: &Group) -> Set {
    centralizer_of(g, &g.elements().collect())
}

fn one(x: usize) -> Set {
    [x].into()
}

fn element_center(g: &Group, x: usize) -> Set {
    let c = centralizer_of(g, &one(x));
    centralizer_of(g, &c).intersection(&c).copied().collect()
}

fn closure(g: &Group, gens: &[usize]) -> Set {
    let mut s: Set = [g.identity()].into();
    let mut frontier: Vec<usize> = vec![g.identity()];
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

fn as_set(g: &Group, s: &pgt_core::Subgroup) -> Set {
    g.subgroup_elements(s).into_iter().collect()
}

// maximal abelian subgroups are exactly the abelian A with C_G(A) = A; the
// small groups used here have all abelian subgroups generated by at most
// three elements
fn brute_maximal_abelian(g: &Group) -> BTreeSet<Set> {
    let n = g.len();
    let mut out = BTreeSet::new();
    for x in 0..n {
        for y in x..n {
            for z in y..n {
                let a = closure(g, &[x, y, z]);
                if centralizer_of(g, &a) == a {
                    out.insert(a);
                }
            }
        }
    }
    out
}

fn small_groups() -> Vec<Group> {
    vec![
        construct::dihedral8(),
        construct::quaternion8(),
        construct::extraspecial(3, 1).unwrap(),
        construct::extraspecial(5, 1).unwrap(),
        construct::symmetric3(),
        construct::symmetric4(),
        construct::alternating4(),
    ]
}

#[test]
fn centralizers_and_centers_match_brute_force() {
    for g in small_groups() {
        let tables = [g.to_table().unwrap(), g.clone()];
        for h in &tables {
            assert_eq!(as_set(h, &h.center()), center(h), "{}", h.name());
            for x in h.elements() {
                assert_eq!(as_set(h, &h.centralizer(x)), centralizer_of(h, &one(x)));
                if !h.is_central(x) {
                    assert_eq!(as_set(h, &h.element_center(x).unwrap()), element_center(h, x));
                }
            }
        }
    }
}

#[test]
fn bilinear_model_agrees_with_its_table() {
    for g in [construct::extraspecial(3, 2).unwrap(), construct::heisenberg(3, 2).unwrap(), construct::centralizer_candidate(3, 3).unwrap()] {
        let t = g.to_table().unwrap();
        let z = center(&t);
        assert_eq!(as_set(&g, &g.center()), z);
        for x in (0..g.len()).step_by(7) {
            assert_eq!(as_set(&g, &g.centralizer(x)), centralizer_of(&t, &one(x)), "{} {x}", g.name());
            if !z.contains(&x) {
                assert_eq!(as_set(&g, &g.element_center(x).unwrap()), element_center(&t, x));
            }
        }
        assert_eq!(g.class_size_multiset(), t.class_size_multiset());
        assert_eq!(centralizer::parameters(&g).unwrap(), centralizer::parameters(&t).unwrap());
    }
}

#[test]
fn class_sizes() {
    let sizes = |g: &Group| -> BTreeMap<u64, u64> {
        let mut m = BTreeMap::new();
        for x in g.elements() {
            let c = g.len() / centralizer_of(g, &one(x)).len();
            *m.entry(c as u64).or_insert(0) += 1;
        }
        // per class, not per element
        m.into_iter().map(|(s, n)| (s, n / s)).collect()
    };
    let d4 = construct::dihedral8();
    assert_eq!(d4.class_size_multiset(), BTreeMap::from([(1, 2), (2, 3)]));
    let e = construct::extraspecial(3, 1).unwrap();
    assert_eq!(e.class_size_multiset(), BTreeMap::from([(1, 3), (3, 8)]));
    for g in small_groups() {
        assert_eq!(g.class_size_multiset(), sizes(&g), "{}", g.name());
        let total: usize = g.conjugacy_classes().iter().map(|c| c.members.len()).sum();
        assert_eq!(total, g.len());
    }
}

#[test]
fn dihedral_reflection_centralizer() {
    let d4 = construct::dihedral8();
    let s = 4;
    assert_eq!(d4.subgroup_order(&d4.centralizer(s)), 4);
    assert_eq!(d4.subgroup_elements(&d4.center()), vec![0, 2]);
}

#[test]
fn maximal_abelian_enumeration_matches_brute_force() {
    for g in small_groups() {
        let ours: BTreeSet<Set> = enumerate_maximal_abelian(&g).unwrap().iter().map(|a| as_set(&g, a)).collect();
        let t = g.to_table().unwrap();
        assert_eq!(ours, brute_maximal_abelian(&t), "{}", g.name());
        let via_table: BTreeSet<Set> = enumerate_maximal_abelian(&t).unwrap().iter().map(|a| as_set(&t, a)).collect();
        assert_eq!(ours, via_table);
    }
    let e = construct::extraspecial(3, 1).unwrap();
    let m = enumerate_maximal_abelian(&e).unwrap();
    assert_eq!(m.len(), 4);
    assert!(m.iter().all(|a| e.subgroup_order(a) == 9));
    assert_eq!(enumerate_maximal_abelian(&construct::dihedral8()).unwrap().len(), 3);
}

#[test]
fn center_family_of_extraspecial_27() {
    let e = construct::extraspecial(3, 1).unwrap();
    let fam = centralizer::center_family(&e, None).unwrap();
    assert_eq!(fam.entries.len(), 4);
    assert!(fam.entries.iter().all(|c| c.order == 9));
}

#[test]
fn identities_hold_on_small_groups() {
    let mut groups = small_groups();
    groups.push(construct::heisenberg(3, 2).unwrap());
    groups.push(construct::centralizer_candidate(3, 3).unwrap());
    for g in groups {
        if g.prime().is_none() || g.is_abelian() {
            continue;
        }
        let prof = PointProfile::new(&g).unwrap();
        for id in CENTER_LEMMAS {
            let r = centralizer::check_center_lemma(&g, &prof, id).unwrap();
            assert_eq!(r.status, Status::Pass, "{} {id}: {:?}", g.name(), r.detail);
        }
        let maxabs = enumerate_maximal_abelian(&g).unwrap();
        for id in SUBGROUP_LEMMAS {
            let r = maxabel::check_subgroup_lemma(&g, &prof, &maxabs, id).unwrap();
            assert_ne!(r.status, Status::Fail, "{} {id}: {:?}", g.name(), r.detail);
        }
    }
}

#[test]
fn bound_certificates_verify_for_every_maximal_abelian() {
    for g in [
        construct::dihedral8(),
        construct::quaternion8(),
        construct::extraspecial(3, 1).unwrap(),
        construct::heisenberg(3, 2).unwrap(),
        construct::centralizer_candidate(3, 3).unwrap(),
    ] {
        for a in enumerate_maximal_abelian(&g).unwrap() {
            let cert = maxabel::bound_certificate(&g, &a).unwrap();
            assert!(cert.verified(), "{}: {cert:?}", g.name());
            let ch = maxabel::characterize_maximal_abelian(&g, &a).unwrap();
            assert!(ch.agree && ch.maximal_abelian && ch.witness_found);
        }
    }
}

#[test]
fn quaternion_witness_is_a_single_element() {
    let q8 = construct::quaternion8();
    let a = q8.subgroup_from_generators(&[2]);
    let ch = maxabel::characterize_maximal_abelian(&q8, &a).unwrap();
    assert_eq!(ch.witness.len(), 1);
    let cert = maxabel::bound_certificate(&q8, &a).unwrap();
    assert_eq!((cert.a, cert.t), (1, 1));
}

#[test]
fn non_maximal_input_is_rejected() {
    let e = construct::extraspecial(3, 1).unwrap();
    assert!(maxabel::bound_certificate(&e, &e.center()).is_err());
    assert!(maxabel::bound_certificate(&construct::symmetric3(), &construct::symmetric3().center()).is_err());
}

#[test]
fn transposition_centers_do_not_multiply_to_a_subgroup() {
    let s3 = construct::symmetric3();
    let invs: Vec<usize> = s3.elements().filter(|&x| s3.element_order(x) == 2).collect();
    let r = maxabel::product_of_centers(&s3, &invs[..2]).unwrap();
    assert_eq!(r.size, 4);
    assert!(!r.is_subgroup);
}
