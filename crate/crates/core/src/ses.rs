//! Special, semi-extraspecial and ultraspecial groups; the bounds that hold
//! for them; evidence for two open properties; and isoclinism-invariant
//! fingerprints.

use std::collections::{BTreeMap, HashMap};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::field::log_p;
use crate::algebra::linalg::index_to_coords;
use crate::centralizer::{center_family, parameters, point_summary};
use crate::error::{Error, Result};
use crate::group::{ElementRepr, Group, GroupTable, Model, Subgroup};
use crate::maxabel::{enumerate_maximal_abelian, extend_to_maximal_abelian};

/// `G' = Z(G)` for a nontrivial p-group.
pub fn is_special(g: &Group) -> bool {
    g.prime().is_some() && g.commutator_subgroup() == g.center()
}

/// Normalized nonzero vectors of `GF(p)^m` (first nonzero entry 1), one per
/// line.
fn projective_points(p: u32, m: usize) -> impl Iterator<Item = Vec<u32>> {
    (1..(p as usize).pow(m as u32))
        .map(move |i| index_to_coords(i, p, m))
        .filter(|c| c.iter().find(|&&x| x != 0) == Some(&1))
}

/// Every quotient by a maximal subgroup of `Z(G)` is extraspecial.
///
/// In the bilinear model this is: the group is special and `lambda . B` is
/// nondegenerate for every nonzero functional `lambda` on the central
/// coordinates. Table groups are checked through the quotients directly.
pub fn is_semi_extraspecial(g: &Group) -> Result<bool> {
    g.prime().ok_or(Error::NotPGroup)?;
    match g.model() {
        Model::Bilinear(b) => {
            if !is_special(g) {
                return Ok(false);
            }
            let d = b.d();
            Ok(projective_points(b.p(), b.m()).all(|lambda| b.functional_form(&lambda).rank() == d))
        }
        Model::Table(_) => ses_via_quotients(g),
    }
}

pub fn is_ultraspecial(g: &Group) -> Result<bool> {
    if !is_semi_extraspecial(g)? {
        return Ok(false);
    }
    let p = g.prime().unwrap();
    let z = g.subgroup_order(&g.center());
    let n2 = log_p(p, g.order() / z).unwrap();
    Ok(n2 == 2 * log_p(p, z).unwrap())
}

/// `G / N` for a normal subgroup `N`, with cosets numbered by their least
/// element.
fn quotient(g: &Group, n: &FixedBitSet) -> Group {
    let mut coset = vec![usize::MAX; g.len()];
    let mut reps = Vec::new();
    let members: Vec<usize> = n.ones().collect();
    for x in g.elements() {
        if coset[x] != usize::MAX {
            continue;
        }
        for &y in &members {
            coset[g.mul(x, y)] = reps.len();
        }
        reps.push(x);
    }
    let k = reps.len();
    let mut mul = Vec::with_capacity(k * k);
    for &x in &reps {
        for &y in &reps {
            mul.push(coset[g.mul(x, y)] as u32);
        }
    }
    Group::from_table("quotient", GroupTable::from_flat_trusted(k, mul, None))
}

/// The quotient route: enumerate the maximal subgroups of `Z(G)` as the
/// hyperplanes of `Z(G) / Phi(Z(G))`, form each quotient, and test it for
/// being extraspecial. Bilinear groups are expanded to tables first.
pub fn ses_via_quotients(g: &Group) -> Result<bool> {
    let p = g.prime().ok_or(Error::NotPGroup)?;
    let g = g.to_table()?;
    let z = g.center();
    let zset = g.subgroup_as_set(&z);
    if zset.count_ones(..) == 1 {
        return Ok(false);
    }
    let zelems: Vec<usize> = zset.ones().collect();
    let pow_p = |x: usize| (1..p).fold(x, |acc, _| g.mul(acc, x));
    let frattini = g.subgroup_from_generators(&zelems.iter().map(|&x| pow_p(x)).collect::<Vec<_>>());

    // a basis of Z / Phi(Z) and the coordinates of every central element
    let mut basis = Vec::new();
    let mut span = frattini.clone();
    for &x in &zelems {
        if !g.subgroup_contains(&span, x) {
            basis.push(x);
            span = g.subgroup_adjoin(&span, x);
        }
    }
    let r = basis.len();
    let phi: Vec<usize> = g.subgroup_elements(&frattini);
    let mut coords: HashMap<usize, Vec<u32>> = HashMap::new();
    for idx in 0..(p as usize).pow(r as u32) {
        let c = index_to_coords(idx, p, r);
        let mut rep = g.identity();
        for (&ci, &e) in c.iter().zip(&basis) {
            for _ in 0..ci {
                rep = g.mul(rep, e);
            }
        }
        for &f in &phi {
            coords.insert(g.mul(rep, f), c.clone());
        }
    }

    let hyperplanes: Vec<Vec<u32>> = projective_points(p, r).collect();
    let all = hyperplanes.par_iter().all(|lambda| {
        let mut n = FixedBitSet::with_capacity(g.len());
        for &x in &zelems {
            let dot = coords[&x].iter().zip(lambda).map(|(&a, &b)| a * b).sum::<u32>() % p;
            if dot == 0 {
                n.insert(x);
            }
        }
        let q = quotient(&g, &n);
        let zq = q.center();
        q.subgroup_order(&zq) == p as u64 && q.commutator_subgroup() == zq
    });
    Ok(all)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryBounds {
    /// Least `|A:Z(G)|` exponent over the maximal abelian subgroups seen.
    pub a_min_observed: u32,
    /// False when the enumeration was capped and `a_min_observed` is only
    /// an upper bound from sampled extensions.
    pub a_min_exact: bool,
    pub n_over_m_holds: bool,
    pub two_n_over_m_plus_l_holds: bool,
    pub a_ge_2_when_n_ge_2_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KnownBounds {
    pub max_abelian_le_p_n_plus_m: bool,
    pub l_le_m: bool,
    pub all_class_sizes_p_m: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SesCertificate {
    pub group: String,
    pub p: u32,
    /// `|G:Z(G)| = p^(2 n_ses)`.
    pub n_ses: u32,
    pub m: u32,
    pub b: u32,
    pub l: u32,
    pub k: Option<u32>,
    pub is_special: bool,
    pub is_ses: bool,
    pub is_ultraspecial: bool,
    /// `|A:Z(G)|` exponent -> number of maximal abelian subgroups.
    pub maximal_abelian_index_exponents: BTreeMap<u32, u64>,
    pub corollary_bounds: CorollaryBounds,
    pub verardi: KnownBounds,
}

impl SesCertificate {
    pub fn all_hold(&self) -> bool {
        let c = &self.corollary_bounds;
        let v = &self.verardi;
        c.n_over_m_holds
            && c.two_n_over_m_plus_l_holds
            && c.a_ge_2_when_n_ge_2_holds
            && v.max_abelian_le_p_n_plus_m
            && v.l_le_m
            && v.all_class_sizes_p_m
    }
}

/// Number of sampled extensions used when full enumeration is out of reach.
pub const SAMPLED_EXTENSIONS: usize = 256;
const EXTENSION_SEED: u64 = 0x00ab_e11a;

/// `|A:Z(G)|` exponents of the maximal abelian subgroups, and whether the
/// list is complete.
pub fn maximal_abelian_index_exponents(g: &Group) -> Result<(BTreeMap<u32, u64>, bool)> {
    let p = g.require_p_group()?;
    let z = g.subgroup_order(&g.center());
    let (subgroups, exact) = match enumerate_maximal_abelian(g) {
        Ok(list) => (list, true),
        Err(Error::CapExceeded { .. }) => {
            let mut rng = ChaCha8Rng::seed_from_u64(EXTENSION_SEED);
            let center = g.center();
            let starts: Vec<usize> = (0..SAMPLED_EXTENSIONS).map(|_| rng.gen_range(0..g.len())).collect();
            let list = starts
                .par_iter()
                .map(|&x| extend_to_maximal_abelian(g, &g.subgroup_adjoin(&center, x)))
                .collect::<Result<Vec<_>>>()?;
            (list, false)
        }
        Err(e) => return Err(e),
    };
    let mut out = BTreeMap::new();
    for a in &subgroups {
        *out.entry(log_p(p, g.subgroup_order(a) / z).unwrap()).or_insert(0) += 1;
    }
    Ok((out, exact))
}

pub fn ses_certificate(g: &Group) -> Result<SesCertificate> {
    if !is_semi_extraspecial(g)? {
        return Err(Error::NotSes);
    }
    let params = parameters(g)?;
    let (p, m, l) = (params.p, params.m, params.l);
    let n = params.n_total / 2;
    let (exps, exact) = maximal_abelian_index_exponents(g)?;
    let a_min = *exps.keys().next().unwrap();
    let a_max = *exps.keys().last().unwrap();
    let pm = (p as u64).pow(m);
    let classes = g.class_size_multiset();
    let all_class_sizes_p_m = classes.keys().all(|&s| s == 1 || s == pm);
    Ok(SesCertificate {
        group: g.name().to_string(),
        p,
        n_ses: n,
        m,
        b: params.b,
        l,
        k: params.k,
        is_special: true,
        is_ses: true,
        is_ultraspecial: n == m,
        maximal_abelian_index_exponents: exps,
        corollary_bounds: CorollaryBounds {
            a_min_observed: a_min,
            a_min_exact: exact,
            n_over_m_holds: a_min * m >= n,
            two_n_over_m_plus_l_holds: a_min * (m + l) >= 2 * n,
            a_ge_2_when_n_ge_2_holds: n < 2 || a_min >= 2,
        },
        verardi: KnownBounds {
            // |A| <= p^(n+m) means |A:Z(G)| <= p^n
            max_abelian_le_p_n_plus_m: a_max <= n,
            l_le_m: l <= m,
            all_class_sizes_p_m,
        },
    })
}

/// Default number of tuples examined per group before switching to sampling.
pub const DEFAULT_MAX_TUPLES: u64 = 200_000;
/// Groups up to this order are always examined exhaustively.
pub const EXHAUSTIVE_ORDER: u64 = 729;
pub const OPEN_QUESTION_SEED: u64 = 0x0dd_5eed;
pub const MAX_TUPLE_LEN: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TupleWitness {
    pub a: ElementRepr,
    pub b: Vec<ElementRepr>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertyEvidence {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<TupleWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjecturedBound {
    pub k: Option<u32>,
    pub subgroups_checked: u64,
    pub holds: bool,
    /// `|A:Z(G)|` exponent of the first subgroup violating the bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_index_exponent: Option<u32>,
}

/// Evidence only: nothing here is asserted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpenQuestionReport {
    pub group: String,
    pub distinct_centers: usize,
    pub max_tuple_len: usize,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub tuples_checked: u64,
    /// `Z(a) <= prod Z(b_i)` or `Z(a) ∩ prod Z(b_i) = G'`.
    pub product_property: PropertyEvidence,
    /// `Z(a) <= Z(∩ C_G(b_i))` or `Z(a) ∩ Z(∩ C_G(b_i)) = G'`.
    pub centralizer_property: PropertyEvidence,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conjectured_bound: Option<ConjecturedBound>,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Subsets of `0..f` of size `1..=max_len` in lexicographic order.
fn subsets(f: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, f: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for i in start..f {
            cur.push(i);
            out.push(cur.clone());
            if left > 1 {
                rec(i + 1, f, left - 1, cur, out);
            }
            cur.pop();
        }
    }
    rec(0, f, max_len, &mut Vec::new(), &mut out);
    out
}

/// Checks the two properties on tuples `(a, b_1, ..., b_j)`, `j <= 3`.
///
/// Both properties depend on the elements only through their centers
/// (`C_G(b) = C_G(Z(b))`), so tuples range over distinct centers and the
/// `b_i` over sets rather than sequences. Every element center contains
/// `G' = Z(G)` here, so products of centers are subgroups (joins).
pub fn open_question_check(g: &Group, max_tuples: u64) -> Result<OpenQuestionReport> {
    if !is_semi_extraspecial(g)? {
        return Err(Error::NotSes);
    }
    let fam = center_family(g, None)?;
    let f = fam.entries.len();
    let derived = g.commutator_subgroup();
    let centralizers: Vec<Subgroup> = fam.entries.iter().map(|e| g.centralizer(e.representative)).collect();

    let subset_count: u64 = (1..=MAX_TUPLE_LEN as u64).map(|k| binomial(f as u64, k)).sum();
    let total = (f as u64).saturating_mul(subset_count);
    let exhaustive = g.order() <= EXHAUSTIVE_ORDER || total <= max_tuples;
    let tuples: Vec<(usize, Vec<usize>)> = if exhaustive {
        let subs = subsets(f, MAX_TUPLE_LEN);
        (0..f).flat_map(|a| subs.iter().map(move |s| (a, s.clone()))).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(OPEN_QUESTION_SEED);
        (0..max_tuples)
            .map(|_| {
                let a = rng.gen_range(0..f);
                let len = rng.gen_range(1..=MAX_TUPLE_LEN.min(f));
                let mut s: Vec<usize> = rand::seq::index::sample(&mut rng, f, len).into_vec();
                s.sort_unstable();
                (a, s)
            })
            .collect()
    };

    let outcomes: Vec<(bool, bool)> = tuples
        .par_iter()
        .map(|(a, bs)| {
            let za = &fam.entries[*a].subgroup;
            let mut prod = fam.entries[bs[0]].subgroup.clone();
            let mut inter = centralizers[bs[0]].clone();
            for &b in &bs[1..] {
                prod = g.subgroup_join(&prod, &fam.entries[b].subgroup);
                inter = g.subgroup_meet(&inter, &centralizers[b]);
            }
            let zi = g.center_of(&inter);
            let dichotomy = |s: &Subgroup| g.is_subgroup_of(za, s) || g.subgroup_meet(za, s) == derived;
            (dichotomy(&prod), dichotomy(&zi))
        })
        .collect();
    let witness = |i: usize| {
        let (a, bs) = &tuples[i];
        TupleWitness {
            a: g.element_repr(fam.entries[*a].representative),
            b: bs.iter().map(|&b| g.element_repr(fam.entries[b].representative)).collect(),
        }
    };
    let evidence = |pick: fn(&(bool, bool)) -> bool| {
        let first = outcomes.iter().position(|o| !pick(o));
        PropertyEvidence { holds: first.is_none(), counterexample: first.map(witness) }
    };
    let product_property = evidence(|o| o.0);
    let centralizer_property = evidence(|o| o.1);

    let conjectured_bound = conjectured_bound(g)?;
    Ok(OpenQuestionReport {
        group: g.name().to_string(),
        distinct_centers: f,
        max_tuple_len: MAX_TUPLE_LEN,
        exhaustive,
        seed: (!exhaustive).then_some(OPEN_QUESTION_SEED),
        tuples_checked: tuples.len() as u64,
        product_property,
        centralizer_property,
        conjectured_bound,
    })
}

/// `a (m + l) >= 2 k n` for every maximal abelian `A` with `|A:Z(G)| < p^n`.
/// Skipped (None) when the enumeration is out of reach.
fn conjectured_bound(g: &Group) -> Result<Option<ConjecturedBound>> {
    let params = parameters(g)?;
    let (exps, exact) = maximal_abelian_index_exponents(g)?;
    if !exact {
        return Ok(None);
    }
    let n = params.n_total / 2;
    let (m, l) = (params.m, params.l);
    let small: Vec<(u32, u64)> = exps.into_iter().filter(|&(a, _)| a < n).collect();
    let checked = small.iter().map(|t| t.1).sum();
    let violating = match params.k {
        Some(k) => small.iter().map(|t| t.0).find(|&a| a * (m + l) < 2 * k * n),
        None => None,
    };
    Ok(Some(ConjecturedBound { k: params.k, subgroups_checked: checked, holds: violating.is_none(), violating_index_exponent: violating }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HCandidateReport {
    pub group: String,
    pub n: u32,
    pub order_is_p_2n: bool,
    pub center_is_p_n_plus_1: bool,
    pub derived_at_most_p_n: bool,
    pub centralizers_minimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centralizer_counterexample: Option<ElementRepr>,
    pub order_exp: u32,
    pub center_exp: u32,
    pub derived_exp: u32,
}

/// The profile asked of a centralizer `H` in the construction of
/// ultraspecial groups with small maximal abelian subgroups: `|H| = p^(2n)`,
/// `|Z(H)| = p^(n+1)`, `|H'| <= p^n`, and `C_H(h) = <h, Z(H)>` for every
/// noncentral `h`. Each property is reported separately.
pub fn h_candidate_check(h: &Group, n: u32) -> Result<HCandidateReport> {
    let p = h.prime().ok_or(Error::NotPGroup)?;
    let z = h.center();
    let order_exp = log_p(p, h.order()).unwrap();
    let center_exp = log_p(p, h.subgroup_order(&z)).unwrap();
    let derived_exp = log_p(p, h.subgroup_order(&h.commutator_subgroup())).unwrap();
    let candidates: Vec<usize> = match h.model() {
        // centralizers and <h, Z(H)> depend only on the V-coordinate
        Model::Bilinear(b) => (0..(b.p() as usize).pow(b.d() as u32))
            .map(|i| b.embed_v(&index_to_coords(i, b.p(), b.d())))
            .collect(),
        Model::Table(_) => h.elements().collect(),
    };
    let bad = candidates
        .par_iter()
        .filter(|&&x| !h.subgroup_contains(&z, x))
        .find_first(|&&x| h.centralizer(x) != h.subgroup_adjoin(&z, x))
        .copied();
    Ok(HCandidateReport {
        group: h.name().to_string(),
        n,
        order_is_p_2n: order_exp == 2 * n,
        center_is_p_n_plus_1: center_exp == n + 1,
        derived_at_most_p_n: derived_exp <= n,
        centralizers_minimal: bad.is_none(),
        centralizer_counterexample: bad.map(|x| h.element_repr(x)),
        order_exp,
        center_exp,
        derived_exp,
    })
}

/// Invariants of `G / Z(G)`, `G'` and the commutator map, so equal for
/// isoclinic groups of equal order; different fingerprints rule out
/// isomorphism and (given equal order) isoclinism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub p: u32,
    pub n_total: u32,
    pub m: u32,
    /// class size -> number of classes
    pub class_size_multiset: BTreeMap<u64, u64>,
    /// `|Z(g):Z(G)|` exponent -> number of noncentral elements
    pub element_center_index_multiset: BTreeMap<u32, u64>,
    /// maximal abelian order -> count; None when enumeration is capped
    pub maximal_abelian_order_multiset: Option<BTreeMap<u64, u64>>,
}

pub fn fingerprint(g: &Group) -> Result<Fingerprint> {
    let summary = point_summary(g)?;
    let p = summary.p;
    let z = g.subgroup_order(&g.center());
    let mut ecm = BTreeMap::new();
    for t in &summary.noncentral {
        *ecm.entry(t.2).or_insert(0) += summary.weight;
    }
    let maxab = match enumerate_maximal_abelian(g) {
        Ok(list) => {
            let mut out = BTreeMap::new();
            for a in list {
                *out.entry(g.subgroup_order(&a)).or_insert(0) += 1;
            }
            Some(out)
        }
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(Fingerprint {
        p,
        n_total: log_p(p, g.order() / z).unwrap(),
        m: log_p(p, z).unwrap(),
        class_size_multiset: g.class_size_multiset(),
        element_center_index_multiset: ecm,
        maximal_abelian_order_multiset: maxab,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FingerprintComparison {
    pub distinguishable: bool,
    pub differing_fields: Vec<&'static str>,
}

pub fn fingerprint_compare(a: &Fingerprint, b: &Fingerprint) -> FingerprintComparison {
    let mut diff = Vec::new();
    if a.p != b.p {
        diff.push("p");
    }
    if a.n_total != b.n_total {
        diff.push("n_total");
    }
    if a.m != b.m {
        diff.push("m");
    }
    if a.class_size_multiset != b.class_size_multiset {
        diff.push("class_size_multiset");
    }
    if a.element_center_index_multiset != b.element_center_index_multiset {
        diff.push("element_center_index_multiset");
    }
    if let (Some(x), Some(y)) = (&a.maximal_abelian_order_multiset, &b.maximal_abelian_order_multiset) {
        if x != y {
            diff.push("maximal_abelian_order_multiset");
        }
    }
    FingerprintComparison { distinguishable: !diff.is_empty(), differing_fields: diff }
}
