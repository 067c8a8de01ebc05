use std::collections::BTreeSet;

use proptest::prelude::*;

use pgt_core::algebra::{rank_and_kernel, Fp, Matrix, PrimeField, Subspace};
use pgt_core::centralizer::{check_center_lemma, PointProfile, CENTER_LEMMAS};
use pgt_core::maxabel::{bound_certificate, check_subgroup_lemma, enumerate_maximal_abelian, SUBGROUP_LEMMAS};
use pgt_core::report::Status;
use pgt_core::ses::{fingerprint, is_semi_extraspecial, ses_via_quotients};
use pgt_core::Group;

const P: u32 = 3;

fn field() -> PrimeField {
    PrimeField::new(P).unwrap()
}

fn alternating(d: usize, m: usize, upper: &[Fp]) -> Vec<Vec<Vec<Fp>>> {
    let f = field();
    let mut b = vec![vec![vec![0; m]; d]; d];
    let mut it = upper.iter().copied();
    for i in 0..d {
        for j in i + 1..d {
            for k in 0..m {
                let c = it.next().unwrap();
                b[i][j][k] = c;
                b[j][i][k] = f.neg(c);
            }
        }
    }
    b
}

/// A bilinear group with `d <= 4`, `m <= 2` and random commutator map.
fn bilinear_group() -> impl Strategy<Value = Group> {
    (2usize..=4, 1usize..=2)
        .prop_flat_map(|(d, m)| {
            let len = d * (d - 1) / 2 * m;
            (Just(d), Just(m), prop::collection::vec(0..P, len))
        })
        .prop_map(|(d, m, upper)| Group::from_bilinear_map("random", P, d, m, &alternating(d, m, &upper)).unwrap())
}

fn invertible(n: usize) -> impl Strategy<Value = Vec<Vec<Fp>>> {
    prop::collection::vec(prop::collection::vec(0..P, n), n).prop_filter("singular", move |rows| {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        Matrix::from_rows(field(), n, &rows).unwrap().rank() == n
    })
}

fn set(g: &Group, s: &pgt_core::Subgroup) -> BTreeSet<usize> {
    g.subgroup_elements(s).into_iter().collect()
}

fn brute_centralizer(t: &Group, x: usize) -> BTreeSet<usize> {
    t.elements().filter(|&y| t.mul(x, y) == t.mul(y, x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn span_is_canonical(vs in prop::collection::vec(prop::collection::vec(0..P, 4), 1..5), mix in invertible(4)) {
        let f = field();
        let a = Subspace::span(f, 4, vs.iter().cloned());
        // replace the generators by invertible combinations of themselves
        let k = vs.len();
        let mixed: Vec<Vec<Fp>> = (0..k)
            .map(|i| {
                let mut out = vec![0; 4];
                for (j, v) in vs.iter().enumerate() {
                    let c = mix[i % 4][j % 4] + u32::from(i == j);
                    for (o, &x) in out.iter_mut().zip(v) {
                        *o = f.mul_add(*o, c % P, x);
                    }
                }
                out
            })
            .chain(vs.iter().cloned())
            .collect();
        let b = Subspace::span(f, 4, mixed.into_iter().rev());
        prop_assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in prop::collection::vec(prop::collection::vec(0i64..3, 5), 1..5)) {
        let m = Matrix::from_rows(field(), 5, &rows).unwrap();
        let (rank, kernel) = rank_and_kernel(&m);
        prop_assert_eq!(rank + kernel.dim(), 5);
        for k in kernel.basis() {
            prop_assert!(m.apply(k).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn bilinear_model_matches_table(g in bilinear_group()) {
        let t = g.to_table().unwrap();
        prop_assert_eq!(set(&g, &g.center()), set(&t, &t.center()));
        for x in g.elements().step_by(5) {
            prop_assert_eq!(set(&g, &g.centralizer(x)), brute_centralizer(&t, x));
            if !g.is_central(x) {
                prop_assert_eq!(set(&g, &g.element_center(x).unwrap()), set(&t, &t.element_center(x).unwrap()));
            }
        }
        prop_assert_eq!(g.class_size_multiset(), t.class_size_multiset());
        prop_assert_eq!(is_semi_extraspecial(&g).unwrap(), ses_via_quotients(&t).unwrap());
    }

    #[test]
    fn fingerprint_survives_basis_change((g, pd, qm) in bilinear_group().prop_flat_map(|g| {
        let (d, m) = (g.as_bilinear().unwrap().d(), g.as_bilinear().unwrap().m());
        (Just(g), invertible(d), invertible(m))
    })) {
        let b = g.as_bilinear().unwrap();
        let (d, m) = (b.d(), b.m());
        let f = field();
        // B'(e_i, e_j) = Q B(P e_i, P e_j)
        let mut nb = vec![vec![vec![0; m]; d]; d];
        for i in 0..d {
            for j in 0..d {
                let z = b.form(&pd[i], &pd[j]);
                for k in 0..m {
                    nb[i][j][k] = (0..m).fold(0, |acc, l| f.mul_add(acc, qm[k][l], z[l]));
                }
            }
        }
        let h = Group::from_bilinear_map("changed", P, d, m, &nb).unwrap();
        prop_assert_eq!(fingerprint(&g).unwrap(), fingerprint(&h).unwrap());
    }

    #[test]
    fn identities_and_bound_hold_on_random_groups(g in bilinear_group()) {
        prop_assume!(!g.is_abelian());
        let prof = PointProfile::new(&g).unwrap();
        for id in CENTER_LEMMAS {
            prop_assert_eq!(check_center_lemma(&g, &prof, id).unwrap().status, Status::Pass);
        }
        let maxabs = enumerate_maximal_abelian(&g).unwrap();
        for id in SUBGROUP_LEMMAS {
            prop_assert_ne!(check_subgroup_lemma(&g, &prof, &maxabs, id).unwrap().status, Status::Fail);
        }
        for a in &maxabs {
            prop_assert!(bound_certificate(&g, a).unwrap().verified());
        }
    }
}
