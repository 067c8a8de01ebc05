//! Centers, centralizers, element centers `Z(g) = Z(C_G(g))`, conjugacy
//! classes and the global parameters derived from them.
//!
//! In the bilinear model every centralizer and element center contains the
//! whole central coordinate space, so these are computed as subspaces of
//! `V = GF(p)^d` and then lifted.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::field::log_p;
use crate::algebra::linalg::index_to_coords;
use crate::algebra::{rank_and_kernel, Fp, Matrix, Subspace};
use crate::error::{Error, Result};
use crate::group::{BilinearPGroup, ElementRepr, Group, Model, Subgroup};
use crate::report::LemmaReport;

fn unit_vectors(d: usize) -> Vec<Vec<Fp>> {
    (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = 1;
            e
        })
        .collect()
}

/// `{w in V : B(w, V) = 0}`.
pub(crate) fn radical(b: &BilinearPGroup) -> Subspace {
    rank_and_kernel(&b.contraction_stack(&unit_vectors(b.d()))).1
}

/// `{w in V : B(v, w) = 0 for all v in vs}`.
pub(crate) fn v_centralizer(b: &BilinearPGroup, vs: &[Vec<Fp>]) -> Subspace {
    if vs.is_empty() {
        return Subspace::full(b.field(), b.d());
    }
    rank_and_kernel(&b.contraction_stack(vs)).1
}

/// Vectors of `space` whose first `d` coordinates pair to zero with the first
/// `d` coordinates of every vector of `space`. Works for subspaces of `V` and
/// of the full coordinate space alike.
pub(crate) fn commuting_part(b: &BilinearPGroup, space: &Subspace) -> Subspace {
    let d = b.d();
    let m = b.m();
    let basis = space.basis();
    let r = basis.len();
    let f = b.field();
    let mut mat = Matrix::zeros(f, r * m, r);
    for j in 0..r {
        for i in 0..r {
            let c = b.form(&basis[i][..d], &basis[j][..d]);
            for (k, x) in c.into_iter().enumerate() {
                mat.set(j * m + k, i, x);
            }
        }
    }
    let (_, coeffs) = rank_and_kernel(&mat);
    space.combine(&coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjugacyClass {
    pub representative: usize,
    pub size: u64,
    pub members: Vec<usize>,
}

impl Group {
    pub fn center(&self) -> Subgroup {
        match self.model() {
            Model::Table(_) => {
                let gens = self.subgroup_generators(&self.whole_group());
                let mut set = FixedBitSet::with_capacity(self.len());
                set.extend(self.elements().filter(|&x| gens.iter().all(|&g| self.commute(x, g))));
                Subgroup::Set(set)
            }
            Model::Bilinear(b) => Subgroup::Linear(radical(b).extend_full(b.m())),
        }
    }

    pub fn is_central(&self, x: usize) -> bool {
        match self.model() {
            Model::Table(_) => self.elements().all(|y| self.commute(x, y)),
            Model::Bilinear(b) => {
                let v = b.v_part(x);
                unit_vectors(b.d()).iter().all(|e| b.form_vanishes(&v, e))
            }
        }
    }

    pub fn centralizer(&self, g: usize) -> Subgroup {
        match self.model() {
            Model::Table(_) => {
                let mut set = FixedBitSet::with_capacity(self.len());
                set.extend(self.elements().filter(|&x| self.commute(x, g)));
                Subgroup::Set(set)
            }
            Model::Bilinear(b) => Subgroup::Linear(v_centralizer(b, &[b.v_part(g)]).extend_full(b.m())),
        }
    }

    /// `C_G(H)`.
    pub fn centralizer_of(&self, h: &Subgroup) -> Subgroup {
        match self.model() {
            Model::Table(_) => {
                let gens = self.subgroup_generators(h);
                let mut set = FixedBitSet::with_capacity(self.len());
                set.extend(self.elements().filter(|&x| gens.iter().all(|&g| self.commute(x, g))));
                Subgroup::Set(set)
            }
            Model::Bilinear(b) => {
                let d = b.d();
                let vs: Vec<Vec<Fp>> = h.as_subspace().unwrap().basis().iter().map(|r| r[..d].to_vec()).collect();
                Subgroup::Linear(v_centralizer(b, &vs).extend_full(b.m()))
            }
        }
    }

    /// `Z(H)`.
    pub fn center_of(&self, h: &Subgroup) -> Subgroup {
        match self.model() {
            Model::Table(_) => {
                let gens = self.subgroup_generators(h);
                let set = h.as_set().unwrap();
                let mut out = FixedBitSet::with_capacity(self.len());
                out.extend(set.ones().filter(|&x| gens.iter().all(|&g| self.commute(x, g))));
                Subgroup::Set(out)
            }
            Model::Bilinear(b) => Subgroup::Linear(commuting_part(b, h.as_subspace().unwrap())),
        }
    }

    /// `Z(g) = Z(C_G(g))`, defined for noncentral `g`.
    pub fn element_center(&self, g: usize) -> Result<Subgroup> {
        if self.is_central(g) {
            return Err(Error::CentralElement(g));
        }
        Ok(match self.model() {
            Model::Table(_) => self.center_of(&self.centralizer(g)),
            Model::Bilinear(b) => {
                let k = v_centralizer(b, &[b.v_part(g)]);
                Subgroup::Linear(commuting_part(b, &k).extend_full(b.m()))
            }
        })
    }

    pub fn class_size(&self, g: usize) -> u64 {
        self.order() / self.subgroup_order(&self.centralizer(g))
    }

    /// Classes ordered by their least member, which is the representative.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let mut assigned = FixedBitSet::with_capacity(self.len());
        let mut out = Vec::new();
        match self.model() {
            Model::Table(_) => {
                for x in self.elements() {
                    if assigned.contains(x) {
                        continue;
                    }
                    let mut members: Vec<usize> =
                        self.elements().map(|y| self.mul(self.mul(self.inv(y), x), y)).collect();
                    members.sort_unstable();
                    members.dedup();
                    for &c in &members {
                        assigned.insert(c);
                    }
                    out.push(ConjugacyClass { representative: x, size: members.len() as u64, members });
                }
            }
            Model::Bilinear(b) => {
                let (d, m, p) = (b.d(), b.m(), b.p());
                let f = b.field();
                let vcount = (p as usize).pow(d as u32);
                for vi in 0..vcount {
                    let v = index_to_coords(vi, p, d);
                    let image = Subspace::span(f, m, unit_vectors(d).iter().map(|e| b.form(&v, e)));
                    let offsets: Vec<Vec<Fp>> = image.vectors().collect();
                    for zi in 0..(p as usize).pow(m as u32) {
                        let x = b.encode(&[v.clone(), index_to_coords(zi, p, m)].concat());
                        if assigned.contains(x) {
                            continue;
                        }
                        let z = index_to_coords(zi, p, m);
                        let mut members: Vec<usize> = offsets
                            .iter()
                            .map(|u| {
                                let zz: Vec<Fp> = z.iter().zip(u).map(|(&a, &c)| f.add(a, c)).collect();
                                b.encode(&[v.clone(), zz].concat())
                            })
                            .collect();
                        members.sort_unstable();
                        for &c in &members {
                            assigned.insert(c);
                        }
                        out.push(ConjugacyClass { representative: x, size: members.len() as u64, members });
                    }
                }
            }
        }
        out
    }

    /// Class size -> number of classes of that size.
    pub fn class_size_multiset(&self) -> BTreeMap<u64, u64> {
        let mut out = BTreeMap::new();
        match self.model() {
            Model::Table(_) => {
                for c in self.conjugacy_classes() {
                    *out.entry(c.size).or_insert(0) += 1;
                }
            }
            Model::Bilinear(b) => {
                let (d, m, p) = (b.d(), b.m(), b.p());
                let vcount = (p as usize).pow(d as u32);
                let ranks: Vec<usize> =
                    (0..vcount).into_par_iter().map(|vi| b.contraction(&index_to_coords(vi, p, d)).rank()).collect();
                for r in ranks {
                    let size = (p as u64).pow(r as u32);
                    *out.entry(size).or_insert(0) += (p as u64).pow((m - r) as u32);
                }
            }
        }
        out
    }

    /// `G'`, the subgroup generated by all commutators.
    pub fn commutator_subgroup(&self) -> Subgroup {
        match self.model() {
            Model::Table(_) => {
                let gens = self.subgroup_generators(&self.whole_group());
                let mut comms = Vec::new();
                for &x in &gens {
                    for &y in &gens {
                        comms.push(self.commutator(x, y));
                    }
                }
                // normal closure under conjugation by the generators
                let mut s = self.subgroup_from_generators(&comms);
                loop {
                    let sg = self.subgroup_generators(&s);
                    let outside = gens.iter().flat_map(|&g| sg.iter().map(move |&y| (g, y))).find_map(|(g, y)| {
                        let c = self.mul(self.mul(self.inv(g), y), g);
                        (!self.subgroup_contains(&s, c)).then_some(c)
                    });
                    match outside {
                        Some(c) => s = self.subgroup_adjoin(&s, c),
                        None => return s,
                    }
                }
            }
            Model::Bilinear(b) => {
                let d = b.d();
                let mut vectors = Vec::new();
                for i in 0..d {
                    for j in i + 1..d {
                        let mut v = vec![0; d];
                        v.extend_from_slice(b.entry(i, j));
                        vectors.push(v);
                    }
                }
                Subgroup::Linear(Subspace::span(b.field(), d + b.m(), vectors))
            }
        }
    }
}

/// Exponents describing a p-group, as in `|G:Z(G)| = p^n_total`,
/// `|Z(G)| = p^m`, `p^b = max |cl(g)|`, `p^l = max |Z(g):Z(G)|` (over
/// noncentral g). `k` is reported for semi-extraspecial groups only: the
/// least `|Z(g):Z(G)|` exponent below `n_total / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupParameters {
    pub p: u32,
    pub order_exp: u32,
    pub n_total: u32,
    pub m: u32,
    pub b: u32,
    pub l: u32,
    pub k: Option<u32>,
}

/// Per noncentral element data, with one entry per point (see
/// [`PointProfile`]); `weight` is the number of elements a point stands for.
#[derive(Debug, Clone)]
pub struct PointSummary {
    pub p: u32,
    pub weight: u64,
    /// `(point element, class-size exponent, |Z(g):Z(G)| exponent)` for
    /// every noncentral point, in point order.
    pub noncentral: Vec<(usize, u32, u32)>,
}

pub fn point_summary(g: &Group) -> Result<PointSummary> {
    let p = g.require_p_group()?;
    let log = |x: u64| log_p(p, x).expect("subgroup order of a p-group");
    match g.model() {
        Model::Table(_) => {
            let z = g.subgroup_order(&g.center());
            let noncentral = g
                .elements()
                .collect::<Vec<_>>()
                .into_par_iter()
                .filter_map(|x| {
                    let c = g.centralizer(x);
                    let co = g.subgroup_order(&c);
                    if co == g.order() {
                        return None;
                    }
                    let zc = g.subgroup_order(&g.center_of(&c));
                    Some((x, log(g.order() / co), log(zc / z)))
                })
                .collect();
            Ok(PointSummary { p, weight: 1, noncentral })
        }
        Model::Bilinear(b) => {
            let (d, m) = (b.d(), b.m());
            let rad = radical(b).dim() as u32;
            let vcount = (p as usize).pow(d as u32);
            let noncentral = (0..vcount)
                .into_par_iter()
                .filter_map(|vi| {
                    let v = index_to_coords(vi, p, d);
                    let k = v_centralizer(b, std::slice::from_ref(&v));
                    if k.dim() == d {
                        return None;
                    }
                    let zv = commuting_part(b, &k);
                    Some((b.embed_v(&v), (d - k.dim()) as u32, zv.dim() as u32 - rad))
                })
                .collect();
            Ok(PointSummary { p, weight: (p as u64).pow(m as u32), noncentral })
        }
    }
}

pub fn parameters(g: &Group) -> Result<GroupParameters> {
    let summary = point_summary(g)?;
    let p = summary.p;
    let order_exp = log_p(p, g.order()).unwrap();
    let m = log_p(p, g.subgroup_order(&g.center())).unwrap();
    if summary.noncentral.is_empty() {
        return Err(Error::AbelianGroup);
    }
    let b = summary.noncentral.iter().map(|t| t.1).max().unwrap();
    let l = summary.noncentral.iter().map(|t| t.2).max().unwrap();
    let n_total = order_exp - m;
    let mut k = None;
    if crate::ses::is_semi_extraspecial(g)? {
        if b != m {
            return Err(Error::VerificationFailed {
                predicate: "class sizes of a semi-extraspecial group equal |Z(G)|".into(),
                detail: format!("b = {b}, m = {m}"),
            });
        }
        let half = n_total / 2;
        k = summary.noncentral.iter().map(|t| t.2).filter(|&e| e < half).min();
    }
    Ok(GroupParameters { p, order_exp, n_total, m, b, l, k })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CenterEntry {
    pub representative: usize,
    #[serde(skip)]
    pub subgroup: Subgroup,
    pub order: u64,
}

/// The distinct element centers `Z(a)` for noncentral `a` (optionally only
/// `a` in `A`), each with the least element producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterFamily {
    pub entries: Vec<CenterEntry>,
    pub restricted_to: Option<Subgroup>,
}

pub fn center_family(g: &Group, restrict: Option<&Subgroup>) -> Result<CenterFamily> {
    let candidates: Vec<usize> = match (g.model(), restrict) {
        (Model::Table(_), None) => g.elements().collect(),
        (Model::Table(_), Some(a)) => g.subgroup_elements(a),
        (Model::Bilinear(b), _) => {
            let all_central = match restrict {
                None => true,
                Some(a) => g.is_subgroup_of(&g.center(), a),
            };
            if all_central {
                // one candidate per V-coordinate; (v, 0) is the least element above v
                let space = match restrict {
                    None => Subspace::full(b.field(), b.d()),
                    Some(a) => a.as_subspace().unwrap().truncate_leading(b.d()),
                };
                space.vectors().map(|v| b.embed_v(&v)).collect()
            } else {
                let mut seen = std::collections::HashSet::new();
                g.subgroup_elements(restrict.unwrap()).into_iter().filter(|&x| seen.insert(b.v_part(x))).collect()
            }
        }
    };
    let centers: Vec<Option<Subgroup>> =
        candidates.par_iter().map(|&x| g.element_center(x).ok()).collect();
    let mut seen = std::collections::HashSet::new();
    let mut entries = Vec::new();
    for (&x, z) in candidates.iter().zip(centers) {
        if let Some(z) = z {
            if seen.insert(z.clone()) {
                entries.push(CenterEntry { representative: x, order: g.subgroup_order(&z), subgroup: z });
            }
        }
    }
    if entries.is_empty() {
        return Err(Error::AllCentral);
    }
    Ok(CenterFamily { entries, restricted_to: restrict.cloned() })
}

/// Largest number of points for which per-point bitsets are built.
pub const PROFILE_POINT_CAP: usize = 20_000;

/// Per-point centralizers (by brute force) and element centers (by the
/// structural routine) as bitsets over points.
///
/// Points are the elements of a table group, and the vectors `v` of `V`
/// (standing for the elements `(v, 0)`) in the bilinear model. Every
/// centralizer and element center of a bilinear group contains the central
/// coordinates, and depends only on `v`, so a point set describes it fully.
#[derive(Debug, Clone)]
pub struct PointProfile {
    pub points: Vec<usize>,
    pub central: FixedBitSet,
    pub centralizers: Vec<FixedBitSet>,
    pub element_centers: Vec<Option<FixedBitSet>>,
}

impl PointProfile {
    pub fn new(g: &Group) -> Result<Self> {
        let points: Vec<usize> = match g.model() {
            Model::Table(_) => g.elements().collect(),
            Model::Bilinear(b) => {
                let count = (b.p() as u64).checked_pow(b.d() as u32).unwrap_or(u64::MAX);
                if count > PROFILE_POINT_CAP as u64 {
                    return Err(Error::CapExceeded { what: "point profile", size: count, cap: PROFILE_POINT_CAP as u64 });
                }
                (0..count as usize).map(|i| b.embed_v(&index_to_coords(i, b.p(), b.d()))).collect()
            }
        };
        if points.len() > PROFILE_POINT_CAP {
            return Err(Error::CapExceeded {
                what: "point profile",
                size: points.len() as u64,
                cap: PROFILE_POINT_CAP as u64,
            });
        }
        let n = points.len();
        let centralizers: Vec<FixedBitSet> = points
            .par_iter()
            .map(|&x| {
                let mut s = FixedBitSet::with_capacity(n);
                s.extend((0..n).filter(|&j| g.commute(x, points[j])));
                s
            })
            .collect();
        let mut profile = PointProfile { points, central: FixedBitSet::with_capacity(n), centralizers, element_centers: Vec::new() };
        profile.central = profile.point_set(g, &g.center());
        let element_centers = profile
            .points
            .par_iter()
            .map(|&x| g.element_center(x).ok().map(|z| profile.point_set(g, &z)))
            .collect();
        profile.element_centers = element_centers;
        Ok(profile)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points lying in `s`.
    pub fn point_set(&self, g: &Group, s: &Subgroup) -> FixedBitSet {
        match s {
            Subgroup::Set(set) => set.clone(),
            Subgroup::Linear(_) => {
                let mut out = FixedBitSet::with_capacity(self.len());
                out.extend((0..self.len()).filter(|&i| g.subgroup_contains(s, self.points[i])));
                out
            }
        }
    }

    pub fn noncentral(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.central.contains(i)).collect()
    }
}

fn reprs(g: &Group, prof: &PointProfile, pts: &[usize]) -> Vec<ElementRepr> {
    pts.iter().map(|&i| g.element_repr(prof.points[i])).collect()
}

/// Scans `rows x cols` in order; `bad(a, b)` flags a counterexample. Rows run
/// in parallel and the first failure in row-major order is kept.
fn scan_pairs<F>(rows: &[usize], cols: &[usize], bad: F) -> (u64, Option<(usize, usize)>)
where
    F: Fn(usize, usize) -> bool + Sync,
{
    let per_row: Vec<(u64, Option<usize>)> = rows
        .par_iter()
        .map(|&a| match cols.iter().position(|&b| bad(a, b)) {
            Some(k) => (k as u64 + 1, Some(cols[k])),
            None => (cols.len() as u64, None),
        })
        .collect();
    let mut total = 0;
    for (&a, (count, fail)) in rows.iter().zip(per_row) {
        total += count;
        if let Some(b) = fail {
            return (total, Some((a, b)));
        }
    }
    (total, None)
}

pub const CENTER_LEMMAS: [&str; 4] = ["well", "threee", "three1", "three2"];

/// The center is the intersection of all centralizers.
pub fn check_center_is_intersection(g: &Group, prof: &PointProfile) -> LemmaReport {
    const ID: &str = "well";
    let mut acc = FixedBitSet::with_capacity(prof.len());
    acc.insert_range(..);
    for c in &prof.centralizers {
        acc.intersect_with(c);
    }
    match (0..prof.len()).find(|&i| acc.contains(i) != prof.central.contains(i)) {
        None => LemmaReport::pass(ID, g.name(), prof.len() as u64),
        Some(i) => LemmaReport::fail(
            ID,
            g.name(),
            prof.len() as u64,
            reprs(g, prof, &[i]),
            format!("in center: {}, in every centralizer: {}", prof.central.contains(i), acc.contains(i)),
        ),
    }
}

/// `Z(a)` equals the intersection of `C_G(b)` over `b` in `C_G(a)`.
pub fn check_element_center_is_intersection(g: &Group, prof: &PointProfile) -> LemmaReport {
    const ID: &str = "threee";
    let rows = prof.noncentral();
    let results: Vec<(u64, bool)> = rows
        .par_iter()
        .map(|&a| {
            let mut acc = FixedBitSet::with_capacity(prof.len());
            acc.insert_range(..);
            let mut count = 0;
            for b in prof.centralizers[a].ones() {
                acc.intersect_with(&prof.centralizers[b]);
                count += 1;
            }
            (count, prof.element_centers[a].as_ref() == Some(&acc))
        })
        .collect();
    let mut total = 0;
    for (&a, (count, ok)) in rows.iter().zip(results) {
        total += count;
        if !ok {
            return LemmaReport::fail(ID, g.name(), total, reprs(g, prof, &[a]), "Z(a) differs from the intersection".into());
        }
    }
    LemmaReport::pass(ID, g.name(), total)
}

fn element_center_inside(prof: &PointProfile, a: usize, b: usize) -> bool {
    prof.element_centers[a].as_ref().unwrap().is_subset(&prof.centralizers[b])
}

/// `a` centralizes `b` iff `Z(a) <= C_G(b)`, for noncentral `a, b`.
pub fn check_commuting_iff_center_inside(g: &Group, prof: &PointProfile) -> LemmaReport {
    const ID: &str = "three1";
    let nc = prof.noncentral();
    let (count, fail) =
        scan_pairs(&nc, &nc, |a, b| prof.centralizers[b].contains(a) != element_center_inside(prof, a, b));
    match fail {
        None => LemmaReport::pass(ID, g.name(), count),
        Some((a, b)) => LemmaReport::fail(ID, g.name(), count, reprs(g, prof, &[a, b]), "membership and containment disagree".into()),
    }
}

/// `Z(a) <= C_G(b)` iff `Z(b) <= C_G(a)`, for noncentral `a, b`.
pub fn check_center_containment_symmetric(g: &Group, prof: &PointProfile) -> LemmaReport {
    const ID: &str = "three2";
    let nc = prof.noncentral();
    let (count, fail) =
        scan_pairs(&nc, &nc, |a, b| element_center_inside(prof, a, b) != element_center_inside(prof, b, a));
    match fail {
        None => LemmaReport::pass(ID, g.name(), count),
        Some((a, b)) => LemmaReport::fail(ID, g.name(), count, reprs(g, prof, &[a, b]), "containment is not symmetric".into()),
    }
}

/// Runs one of [`CENTER_LEMMAS`] by id.
pub fn check_center_lemma(g: &Group, prof: &PointProfile, id: &str) -> Result<LemmaReport> {
    Ok(match id {
        "well" => check_center_is_intersection(g, prof),
        "threee" => check_element_center_is_intersection(g, prof),
        "three1" => check_commuting_iff_center_inside(g, prof),
        "three2" => check_center_containment_symmetric(g, prof),
        other => return Err(Error::Unsupported(format!("unknown lemma id {other}"))),
    })
}
