use pgt_core::centralizer::{parameters, GroupParameters};
use pgt_core::construct::{self, BuildParams, CommutatorPresentation, Relation};
use pgt_core::maxabel::enumerate_maximal_abelian;
use pgt_core::ses::{is_semi_extraspecial, is_special, is_ultraspecial};
use pgt_core::{Error, Group};

fn params(g: &Group) -> GroupParameters {
    parameters(g).unwrap()
}

fn check(g: &Group, order_exp: u32, n_total: u32, m: u32, b: u32, l: u32) {
    let got = params(g);
    assert_eq!(
        (got.order_exp, got.n_total, got.m, got.b, got.l),
        (order_exp, n_total, m, b, l),
        "{}",
        g.name()
    );
}

// brute-force center from the multiplication map
fn brute_center_order(g: &Group) -> usize {
    g.elements().filter(|&x| g.elements().all(|y| g.mul(x, y) == g.mul(y, x))).count()
}

#[test]
fn dihedral_and_quaternion_tables() {
    let d4 = construct::dihedral8();
    let q8 = construct::quaternion8();
    for g in [&d4, &q8] {
        assert_eq!(g.order(), 8);
        // associativity and inverses
        for x in g.elements() {
            assert_eq!(g.mul(x, g.inv(x)), g.identity());
            for y in g.elements() {
                for z in g.elements() {
                    assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
                }
            }
        }
        assert_eq!(brute_center_order(g), 2);
        check(g, 3, 2, 1, 1, 1);
    }
    // Q8 has a unique involution, D4 has five
    let involutions = |g: &Group| g.elements().filter(|&x| g.element_order(x) == 2).count();
    assert_eq!(involutions(&q8), 1);
    assert_eq!(involutions(&d4), 5);
}

#[test]
fn permutation_builtins_have_expected_orders() {
    assert_eq!(construct::symmetric3().order(), 6);
    assert_eq!(construct::symmetric4().order(), 24);
    assert_eq!(construct::alternating4().order(), 12);
    assert_eq!(brute_center_order(&construct::symmetric4()), 1);
    assert!(construct::symmetric3().require_p_group().is_err());
}

#[test]
fn extraspecial_groups() {
    let e = construct::extraspecial(3, 1).unwrap();
    assert_eq!(e.order(), 27);
    let t = e.to_table().unwrap();
    assert_eq!(brute_center_order(&t), 3);
    check(&e, 3, 2, 1, 1, 1);
    check(&construct::extraspecial(3, 2).unwrap(), 5, 4, 1, 1, 1);
    check(&construct::extraspecial(5, 1).unwrap(), 3, 2, 1, 1, 1);
    assert!(is_ultraspecial(&e).unwrap());
    assert_eq!(construct::extraspecial(2, 1).unwrap().name(), "D4");
    assert!(matches!(construct::extraspecial(2, 2), Err(Error::Unsupported(_))));
}

#[test]
fn heisenberg_matches_semifield_heisenberg() {
    let h = construct::heisenberg(3, 2).unwrap();
    assert_eq!(h.order(), 729);
    check(&h, 6, 4, 2, 2, 2);
    let s = construct::build("sfheis-3-2", BuildParams::default()).unwrap();
    assert_eq!(h.as_bilinear().unwrap(), s.as_bilinear().unwrap());
    check(&construct::heisenberg(5, 1).unwrap(), 3, 2, 1, 1, 1);
    assert!(is_ultraspecial(&h).unwrap());
}

#[test]
fn semifield_heisenberg_of_order_three_to_nine() {
    let g = construct::build("sfheis", BuildParams { p: Some(3), n: Some(3), ..Default::default() }).unwrap();
    check(&g, 9, 6, 3, 3, 3);
    let maxabs = enumerate_maximal_abelian(&g).unwrap();
    assert_eq!(maxabs.len(), 28);
    assert!(maxabs.iter().all(|a| g.subgroup_order(a) == 729));
}

#[test]
fn centralizer_candidate_h() {
    for n in [3, 4] {
        let h = construct::centralizer_candidate(3, n).unwrap();
        assert_eq!(h.order(), 3u64.pow(2 * n as u32));
        assert!(!is_special(&h));
    }
    check(&construct::centralizer_candidate(3, 3).unwrap(), 6, 2, 4, 1, 1);
    check(&construct::centralizer_candidate(3, 4).unwrap(), 8, 3, 5, 2, 2);
    assert!(matches!(construct::centralizer_candidate(3, 2), Err(Error::InvalidN { .. })));
}

#[test]
fn generalized_semifield_group_has_both_abelian_orders() {
    let g = construct::generalized_semifield_group_over_field(3, 3).unwrap();
    check(&g, 9, 6, 3, 3, 3);
    assert!(is_semi_extraspecial(&g).unwrap());
    let orders: std::collections::BTreeSet<u64> =
        enumerate_maximal_abelian(&g).unwrap().iter().map(|a| g.subgroup_order(a)).collect();
    assert!(orders.contains(&3u64.pow(5)));
    assert!(orders.contains(&3u64.pow(6)));
}

#[test]
fn worked_examples() {
    let n4 = construct::example_n4(3).unwrap();
    assert_eq!(n4.order(), 3u64.pow(7));
    check(&n4, 7, 3, 4, 2, 1);
    let n5 = construct::example_n5(3).unwrap();
    assert_eq!(n5.order(), 3u64.pow(10));
    check(&n5, 10, 4, 6, 3, 1);
}

#[test]
fn presentation_errors() {
    let pres = |rels| CommutatorPresentation::new(3, &["x", "y"], &["z"], rels);
    assert!(matches!(
        construct::from_commutator_relations(&pres(vec![Relation::new("x", "q", &[])]), "bad"),
        Err(Error::UnknownGenerator(_))
    ));
    assert!(matches!(
        construct::from_commutator_relations(
            &pres(vec![Relation::new("x", "y", &[("z", 1)]), Relation::new("y", "x", &[("z", 1)])]),
            "bad"
        ),
        Err(Error::InconsistentRelations { .. })
    ));
    // [y, x] = z^-1 is the same relation written backwards
    let ok = construct::from_commutator_relations(
        &pres(vec![Relation::new("x", "y", &[("z", 1)]), Relation::new("y", "x", &[("z", 2)])]),
        "ok",
    )
    .unwrap();
    assert_eq!(ok.order(), 27);
    let even = CommutatorPresentation::new(2, &["x"], &["z"], vec![]);
    assert!(matches!(construct::from_commutator_relations(&even, "e"), Err(Error::EvenPrime)));
}

#[test]
fn build_by_catalog_name() {
    for (name, order) in [("extraspecial-3-1", 27), ("heisenberg-5-1", 125), ("paperH-3-3", 729), ("gab-3-3", 19683)] {
        assert_eq!(construct::build(name, BuildParams::default()).unwrap().order(), order);
    }
    assert!(construct::build("nonsense", BuildParams::default()).is_err());
}
