//! Maximal abelian subgroups, products of element centers, and the greedy
//! certificate for the lower bound `a >= n / (b + l)`.

use std::collections::{BTreeSet, HashSet};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::field::log_p;
use crate::algebra::{Fp, Subspace};
use crate::centralizer::{self, point_summary, radical, v_centralizer, PointProfile};
use crate::error::{Error, Result};
use crate::group::subgroup::SubgroupDescription;
use crate::group::{BilinearPGroup, ElementRepr, Group, Model, Subgroup};
use crate::report::{LemmaReport, Status};

/// Enumeration cap on `p^d` in the bilinear model.
pub const ENUM_POINT_CAP: u64 = 6561;
/// Enumeration cap on the order of a table group.
pub const ENUM_TABLE_CAP: u64 = 2000;
/// Largest order for which products of centers are formed as literal sets.
pub const PRODUCT_SET_CAP: u64 = 6561;

impl Group {
    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        match self.model() {
            Model::Table(_) => {
                let gens = self.subgroup_generators(h);
                gens.iter().enumerate().all(|(i, &x)| gens[i + 1..].iter().all(|&y| self.commute(x, y)))
            }
            Model::Bilinear(b) => {
                let d = b.d();
                let basis = h.as_subspace().unwrap().basis();
                basis.iter().enumerate().all(|(i, x)| basis[i + 1..].iter().all(|y| b.form_vanishes(&x[..d], &y[..d])))
            }
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.is_abelian_subgroup(&self.whole_group())
    }

    pub fn is_maximal_abelian(&self, a: &Subgroup) -> bool {
        self.is_abelian_subgroup(a) && self.centralizer_of(a) == *a
    }
}

/// Grows `H Z(G)` by repeatedly adjoining the least element that centralizes
/// the current subgroup but is not in it.
pub fn extend_to_maximal_abelian(g: &Group, h: &Subgroup) -> Result<Subgroup> {
    if !g.is_abelian_subgroup(h) {
        return Err(Error::NotAbelian);
    }
    let mut a = g.subgroup_join(h, &g.center());
    loop {
        let c = g.centralizer_of(&a);
        match g.least_element_outside(&c, &a) {
            None => return Ok(a),
            Some(x) => a = g.subgroup_adjoin(&a, x),
        }
    }
}

/// Lines of `space / sub`, one normalized representative each.
fn quotient_lines(space: &Subspace, sub: &Subspace) -> Vec<Vec<Fp>> {
    let comp = space.complement_basis(sub);
    let r = comp.len();
    let f = space.field();
    let p = f.p();
    let n = space.ambient_dim();
    let mut out = Vec::new();
    let total = (p as usize).pow(r as u32);
    for idx in 1..total {
        let c = crate::algebra::linalg::index_to_coords(idx, p, r);
        if c.iter().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0; n];
        for (&ci, b) in c.iter().zip(&comp) {
            if ci != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.mul_add(*x, ci, y);
                }
            }
        }
        out.push(v);
    }
    out
}

/// Maximal totally isotropic subspaces of `V` containing the radical: a
/// subspace `U` is maximal exactly when it equals its perp.
fn maximal_isotropic(b: &BilinearPGroup) -> Vec<Subspace> {
    let start = radical(b);
    let mut visited: HashSet<Subspace> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut found = BTreeSet::new();
    while !frontier.is_empty() {
        let expanded: Vec<(Option<Subspace>, Vec<Subspace>)> = frontier
            .par_iter()
            .map(|u| {
                let perp = v_centralizer(b, u.basis());
                if perp.dim() == u.dim() {
                    return (Some(u.clone()), Vec::new());
                }
                let children = quotient_lines(&perp, u)
                    .into_iter()
                    .map(|w| u.join(&Subspace::span(b.field(), b.d(), [w])))
                    .collect();
                (None, children)
            })
            .collect();
        let mut next = Vec::new();
        for (max, children) in expanded {
            if let Some(u) = max {
                found.insert(u);
            }
            for c in children {
                if visited.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        next.sort();
        frontier = next;
    }
    found.into_iter().collect()
}

/// `x` has prime order modulo `h`. Adjoining only such elements keeps every
/// step of prime index, so any element of a child generates it over `h`.
fn prime_order_modulo(g: &Group, h: &Subgroup, x: usize) -> bool {
    let mut k = 1;
    let mut y = x;
    while !g.subgroup_contains(h, y) {
        y = g.mul(y, x);
        k += 1;
    }
    (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)
}

/// Maximal abelian subgroups of a table group, by extending abelian
/// subgroups that contain the center one centralizing element at a time.
fn maximal_abelian_table(g: &Group) -> Vec<Subgroup> {
    let start = g.center();
    let mut visited: HashSet<Subgroup> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    let mut found = BTreeSet::new();
    while !frontier.is_empty() {
        let expanded: Vec<(Option<Subgroup>, Vec<Subgroup>)> = frontier
            .par_iter()
            .map(|h| {
                let c = g.centralizer_of(h);
                if c == *h {
                    return (Some(h.clone()), Vec::new());
                }
                let mut covered = g.subgroup_as_set(h);
                let mut children = Vec::new();
                for x in c.as_set().unwrap().ones() {
                    if covered.contains(x) || !prime_order_modulo(g, h, x) {
                        continue;
                    }
                    let child = g.subgroup_adjoin(h, x);
                    covered.union_with(child.as_set().unwrap());
                    children.push(child);
                }
                (None, children)
            })
            .collect();
        let mut next = Vec::new();
        for (max, children) in expanded {
            if let Some(h) = max {
                found.insert(h);
            }
            for c in children {
                if visited.insert(c.clone()) {
                    next.push(c);
                }
            }
        }
        next.sort();
        frontier = next;
    }
    found.into_iter().collect()
}

/// Every maximal abelian subgroup, without duplicates, in canonical order.
pub fn enumerate_maximal_abelian(g: &Group) -> Result<Vec<Subgroup>> {
    match g.model() {
        Model::Table(_) => {
            if g.order() > ENUM_TABLE_CAP {
                return Err(Error::CapExceeded { what: "maximal abelian enumeration", size: g.order(), cap: ENUM_TABLE_CAP });
            }
            Ok(maximal_abelian_table(g))
        }
        Model::Bilinear(b) => {
            let points = (b.p() as u64).checked_pow(b.d() as u32).unwrap_or(u64::MAX);
            if points > ENUM_POINT_CAP {
                return Err(Error::CapExceeded { what: "maximal abelian enumeration", size: points, cap: ENUM_POINT_CAP });
            }
            Ok(maximal_isotropic(b).into_iter().map(|u| Subgroup::Linear(u.extend_full(b.m()))).collect())
        }
    }
}

/// `X Y` as an element set.
fn product_set(g: &Group, x: &FixedBitSet, y: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.len());
    for a in x.ones() {
        for c in y.ones() {
            out.insert(g.mul(a, c));
        }
    }
    out
}

fn intersect_centralizers(g: &Group, elems: &[usize]) -> Subgroup {
    let mut acc = g.whole_group();
    for &a in elems {
        acc = g.subgroup_meet(&acc, &g.centralizer(a));
    }
    acc
}

/// What the product `Z(a_1) Z(a_2) ... Z(a_n)` turned out to be.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductReport {
    pub factors: usize,
    /// Number of elements in the product set.
    pub size: u64,
    pub is_subgroup: bool,
    /// The elements of the product pairwise commute.
    pub is_abelian: bool,
    pub equals_intersection: bool,
    /// The product is a subgroup contained in `Z(C_G(a_1) ∩ ... ∩ C_G(a_n))`.
    pub inside_center_of_intersection: bool,
    pub is_maximal_abelian: bool,
    #[serde(skip)]
    pub subgroup: Option<Subgroup>,
}

/// Forms the ordered product of the element centers of `elems`.
///
/// Up to [`PRODUCT_SET_CAP`] the product is built as a literal element set,
/// so a product that fails to be a subgroup is observed as such. Above it the
/// factors must centralize each other, in which case the product is their
/// join.
pub fn product_of_centers(g: &Group, elems: &[usize]) -> Result<ProductReport> {
    let centers: Vec<Subgroup> = elems.iter().map(|&a| g.element_center(a)).collect::<Result<_>>()?;
    let inter = intersect_centralizers(g, elems);
    let (size, subgroup, is_abelian) = if g.order() <= PRODUCT_SET_CAP {
        let mut set = FixedBitSet::with_capacity(g.len());
        set.insert(g.identity());
        for z in &centers {
            set = product_set(g, &set, &g.subgroup_as_set(z));
        }
        let size = set.count_ones(..) as u64;
        let generated = g.subgroup_from_generators(&set.ones().collect::<Vec<_>>());
        let abelian = g.is_abelian_subgroup(&generated);
        let sub = (g.subgroup_order(&generated) == size).then_some(generated);
        (size, sub, abelian)
    } else {
        let commuting = centers.iter().enumerate().all(|(i, x)| {
            centers[i + 1..].iter().all(|y| g.is_subgroup_of(y, &g.centralizer_of(x)))
        });
        if !commuting {
            return Err(Error::CapExceeded { what: "product set", size: g.order(), cap: PRODUCT_SET_CAP });
        }
        let mut acc = g.center();
        for z in &centers {
            acc = g.subgroup_join(&acc, z);
        }
        let abelian = g.is_abelian_subgroup(&acc);
        (g.subgroup_order(&acc), Some(acc), abelian)
    };
    let equals_intersection = subgroup.as_ref() == Some(&inter);
    let inside_center_of_intersection =
        subgroup.as_ref().is_some_and(|s| g.is_subgroup_of(s, &g.center_of(&inter)));
    let is_maximal_abelian = subgroup.as_ref().is_some_and(|s| g.is_maximal_abelian(s));
    Ok(ProductReport {
        factors: elems.len(),
        size,
        is_subgroup: subgroup.is_some(),
        is_abelian,
        equals_intersection,
        inside_center_of_intersection,
        is_maximal_abelian,
        subgroup,
    })
}

/// Greedy choice of `g_1, g_2, ...` in `A \ Z(G)`: each is the least element
/// of `A` outside the product of the previous element centers. Stops when the
/// product reaches `A` or leaves it. Returns the witnesses, the product
/// orders after each step, and the final product.
fn greedy_witnesses(g: &Group, a: &Subgroup) -> (Vec<usize>, Vec<u64>, Subgroup) {
    let mut product = g.center();
    let mut witnesses = Vec::new();
    let mut chain = Vec::new();
    while let Some(x) = g.least_element_outside(a, &product) {
        let z = g.element_center(x).expect("element outside the center");
        product = g.subgroup_join(&product, &z);
        witnesses.push(x);
        chain.push(g.subgroup_order(&product));
        if !g.is_subgroup_of(&product, a) {
            break;
        }
    }
    (witnesses, chain, product)
}

/// The three equivalent descriptions of a maximal abelian subgroup, each
/// evaluated independently.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharacterizationReport {
    pub maximal_abelian: bool,
    /// `A` equals the product of `Z(a)` and the intersection of `C_G(a)` over
    /// all `a` in `A \ Z(G)`.
    pub product_and_intersection: bool,
    /// A finite subset with the same property, found greedily.
    pub witness_found: bool,
    pub witness: Vec<ElementRepr>,
    pub agree: bool,
}

pub fn characterize_maximal_abelian(g: &Group, a: &Subgroup) -> Result<CharacterizationReport> {
    let maximal_abelian = g.is_maximal_abelian(a);
    let z = g.center();

    // the product over all of A \ Z(G): the distinct element centers suffice
    let noncentral: Vec<usize> = match centralizer::center_family(g, Some(a)) {
        Ok(fam) => fam.entries.iter().map(|e| e.representative).collect(),
        Err(Error::AllCentral) => Vec::new(),
        Err(e) => return Err(e),
    };
    let product_and_intersection = if noncentral.is_empty() {
        // empty product Z(G), empty intersection G
        *a == z && *a == g.whole_group()
    } else {
        let prod = product_of_centers(g, &noncentral)?;
        let all_inter = {
            let mut acc = g.whole_group();
            for x in g.subgroup_elements(a) {
                if !g.subgroup_contains(&z, x) {
                    acc = g.subgroup_meet(&acc, &g.centralizer(x));
                }
            }
            acc
        };
        prod.subgroup.as_ref() == Some(a) && all_inter == *a
    };

    let (witnesses, _, product) = greedy_witnesses(g, a);
    let witness_found = product == *a && intersect_centralizers(g, &witnesses) == *a;
    let agree = maximal_abelian == product_and_intersection && maximal_abelian == witness_found;
    Ok(CharacterizationReport {
        maximal_abelian,
        product_and_intersection,
        witness_found,
        witness: if witness_found { witnesses.iter().map(|&x| g.element_repr(x)).collect() } else { Vec::new() },
        agree,
    })
}

/// Witness record for the bound `a (b + l) >= n` on one maximal abelian
/// subgroup `A`, with `|A:Z(G)| = p^a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub group: String,
    pub subgroup: SubgroupDescription,
    pub a: u32,
    pub t: u32,
    pub witnesses: Vec<ElementRepr>,
    #[serde(skip)]
    pub witness_indices: Vec<usize>,
    pub n_total: u32,
    /// Largest class-size exponent over `A \ Z(G)`.
    pub b: u32,
    /// Largest `|Z(x):Z(G)|` exponent over `A \ Z(G)`.
    pub l: u32,
    pub holds: bool,
    pub global_b: u32,
    pub global_l: u32,
    pub global_holds: bool,
    pub product_chain: Vec<u64>,
    pub chain_increasing: bool,
    pub product_equals_subgroup: bool,
    pub intersection_equals_subgroup: bool,
    pub t_at_most_a: bool,
}

impl BoundCertificate {
    /// Every property guaranteed for a valid input holds.
    pub fn verified(&self) -> bool {
        self.holds
            && self.global_holds
            && self.chain_increasing
            && self.product_equals_subgroup
            && self.intersection_equals_subgroup
            && self.t_at_most_a
    }
}

pub fn bound_certificate(g: &Group, a: &Subgroup) -> Result<BoundCertificate> {
    let p = g.prime().ok_or(Error::NotPGroup)?;
    let summary = point_summary(g)?;
    if summary.noncentral.is_empty() {
        return Err(Error::AbelianGroup);
    }
    if !g.is_maximal_abelian(a) {
        return Err(Error::NotMaximalAbelian);
    }
    let z = g.center();
    let log = |x: u64| log_p(p, x).unwrap();
    let n_total = log(g.order() / g.subgroup_order(&z));
    let a_exp = log(g.subgroup_order(a) / g.subgroup_order(&z));
    let global_b = summary.noncentral.iter().map(|t| t.1).max().unwrap();
    let global_l = summary.noncentral.iter().map(|t| t.2).max().unwrap();
    let in_a: Vec<&(usize, u32, u32)> = summary.noncentral.iter().filter(|t| g.subgroup_contains(a, t.0)).collect();
    let b = in_a.iter().map(|t| t.1).max().unwrap_or(0);
    let l = in_a.iter().map(|t| t.2).max().unwrap_or(0);

    let (witnesses, chain, product) = greedy_witnesses(g, a);
    let t = witnesses.len() as u32;
    let z_order = g.subgroup_order(&z);
    let chain_increasing = std::iter::once(z_order).chain(chain.iter().copied()).collect::<Vec<_>>().windows(2).all(|w| w[0] < w[1]);
    Ok(BoundCertificate {
        group: g.name().to_string(),
        subgroup: g.subgroup_description(a),
        a: a_exp,
        t,
        witnesses: witnesses.iter().map(|&x| g.element_repr(x)).collect(),
        witness_indices: witnesses.clone(),
        n_total,
        b,
        l,
        holds: a_exp * (b + l) >= n_total,
        global_b,
        global_l,
        global_holds: a_exp * (global_b + global_l) >= n_total,
        product_chain: chain,
        chain_increasing,
        product_equals_subgroup: product == *a,
        intersection_equals_subgroup: intersect_centralizers(g, &witnesses) == *a,
        t_at_most_a: t <= a_exp,
    })
}

/// If `A / Z(G)` is generated by one coset (in particular if its order is
/// prime), `A = C_G(a)` for a generator `a`.
pub fn cyclic_case_check(g: &Group, a: &Subgroup) -> LemmaReport {
    const ID: &str = "cyclic";
    let z = g.center();
    let generator = match g.model() {
        // exponent p: A / Z(G) is cyclic iff it has order p
        Model::Bilinear(b) => {
            if g.subgroup_order(a) == g.subgroup_order(&z) * b.p() as u64 {
                g.least_element_outside(a, &z)
            } else {
                None
            }
        }
        Model::Table(_) => g
            .subgroup_elements(a)
            .into_iter()
            .find(|&x| !g.subgroup_contains(&z, x) && g.subgroup_adjoin(&z, x) == *a),
    };
    match generator {
        None => LemmaReport::not_applicable(ID, g.name(), "A / Z(G) is not cyclic".into()),
        Some(x) => {
            if g.centralizer(x) == *a {
                LemmaReport::pass(ID, g.name(), 1)
            } else {
                LemmaReport::fail(ID, g.name(), 1, vec![g.element_repr(x)], "A differs from C_G(a)".into())
            }
        }
    }
}

pub const SUBGROUP_LEMMAS: [&str; 4] = ["threef", "threeha", "centralizer-abelian", "cyclic"];

/// Subgroups `<x, y, Z(G)>` for all points `x, y`, deduplicated.
fn two_generated_above_center(g: &Group, prof: &PointProfile) -> Vec<Subgroup> {
    let z = g.center();
    let pts = &prof.points;
    let singles: Vec<Subgroup> = pts.par_iter().map(|&x| g.subgroup_adjoin(&z, x)).collect();
    let mut distinct_singles: Vec<(usize, Subgroup)> = Vec::new();
    let mut seen = HashSet::new();
    for (i, s) in singles.into_iter().enumerate() {
        if seen.insert(s.clone()) {
            distinct_singles.push((i, s));
        }
    }
    let pairs: Vec<BTreeSet<Subgroup>> = distinct_singles
        .par_iter()
        .enumerate()
        .map(|(k, (_, sx))| {
            distinct_singles[k..]
                .iter()
                .map(|(j, _)| g.subgroup_adjoin(sx, pts[*j]))
                .collect()
        })
        .collect();
    let mut all = BTreeSet::new();
    for s in pairs {
        all.extend(s);
    }
    all.into_iter().collect()
}

/// A subgroup is abelian iff `Z(a) <= C_G(b)` for all `a, b` in it outside
/// `Z(G)`; checked over every subgroup generated by two elements and the
/// center.
pub fn check_abelian_criterion(g: &Group, prof: &PointProfile) -> LemmaReport {
    const ID: &str = "threef";
    let subgroups = two_generated_above_center(g, prof);
    let results: Vec<(u64, Option<usize>)> = subgroups
        .par_iter()
        .map(|h| {
            let pts: Vec<usize> = prof.point_set(g, h).ones().filter(|&i| !prof.central.contains(i)).collect();
            let mut count = 0;
            let mut criterion = true;
            'outer: for &x in &pts {
                let zx = prof.element_centers[x].as_ref().unwrap();
                for &y in &pts {
                    count += 1;
                    if !zx.is_subset(&prof.centralizers[y]) {
                        criterion = false;
                        break 'outer;
                    }
                }
            }
            let abelian = g.is_abelian_subgroup(h);
            (count, (abelian != criterion).then(|| pts.first().copied().unwrap_or(0)))
        })
        .collect();
    let mut total = 0;
    for (h, (count, bad)) in subgroups.iter().zip(results) {
        total += count;
        if let Some(x) = bad {
            let gens = g.subgroup_generators(h);
            let mut witness = vec![g.element_repr(prof.points[x])];
            witness.extend(gens.iter().map(|&y| g.element_repr(y)));
            return LemmaReport::fail(ID, g.name(), total, witness, "abelian and criterion disagree".into());
        }
    }
    LemmaReport::pass(ID, g.name(), total)
}

/// A maximal abelian `A` contains `Z(G)` and `Z(a)` for every `a` in
/// `A \ Z(G)`.
pub fn check_maximal_abelian_absorbs_centers(g: &Group, prof: &PointProfile, maxabs: &[Subgroup]) -> LemmaReport {
    const ID: &str = "threeha";
    let z = g.center();
    let mut total = 0;
    for a in maxabs {
        if !g.is_subgroup_of(&z, a) {
            return LemmaReport::fail(ID, g.name(), total, Vec::new(), "Z(G) not contained in a maximal abelian subgroup".into());
        }
        let aset = prof.point_set(g, a);
        for x in aset.ones().filter(|&i| !prof.central.contains(i)) {
            total += 1;
            if !prof.element_centers[x].as_ref().unwrap().is_subset(&aset) {
                return LemmaReport::fail(ID, g.name(), total, vec![g.element_repr(prof.points[x])], "Z(a) not inside A".into());
            }
        }
    }
    LemmaReport::pass(ID, g.name(), total)
}

/// An abelian centralizer is maximal abelian, and appears in the
/// enumeration.
pub fn check_abelian_centralizers_are_maximal(g: &Group, prof: &PointProfile, maxabs: &[Subgroup]) -> LemmaReport {
    const ID: &str = "centralizer-abelian";
    let listed: HashSet<&Subgroup> = maxabs.iter().collect();
    let mut total = 0;
    for &x in &prof.points {
        let c = g.centralizer(x);
        total += 1;
        if g.is_abelian_subgroup(&c) && !(listed.contains(&c) && g.centralizer_of(&c) == c) {
            return LemmaReport::fail(ID, g.name(), total, vec![g.element_repr(x)], "abelian centralizer is not maximal abelian".into());
        }
    }
    LemmaReport::pass(ID, g.name(), total)
}

/// Runs [`cyclic_case_check`] on every maximal abelian subgroup.
pub fn check_cyclic_quotients(g: &Group, maxabs: &[Subgroup]) -> LemmaReport {
    const ID: &str = "cyclic";
    let mut applicable = 0;
    for a in maxabs {
        let r = cyclic_case_check(g, a);
        match r.status {
            Status::Fail => return LemmaReport { pairs_checked: applicable + 1, ..r },
            Status::Pass => applicable += 1,
            Status::NotApplicable => {}
        }
    }
    LemmaReport::pass(ID, g.name(), applicable)
}

pub fn check_subgroup_lemma(g: &Group, prof: &PointProfile, maxabs: &[Subgroup], id: &str) -> Result<LemmaReport> {
    Ok(match id {
        "threef" => check_abelian_criterion(g, prof),
        "threeha" => check_maximal_abelian_absorbs_centers(g, prof, maxabs),
        "centralizer-abelian" => check_abelian_centralizers_are_maximal(g, prof, maxabs),
        "cyclic" => check_cyclic_quotients(g, maxabs),
        other => return Err(Error::Unsupported(format!("unknown lemma id {other}"))),
    })
}
