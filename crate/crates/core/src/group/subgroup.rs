//! Subgroups in canonical form.
//!
//! In the table model a subgroup is its element set. In the bilinear model
//! (p odd, class two, exponent p) a subset is a subgroup exactly when its
//! coordinate vectors form a subspace `S` of `GF(p)^{d+m}` that contains
//! `(0, B(v, w))` for all `(v, .), (w, .)` in `S`, so a subgroup is stored as
//! that subspace in reduced echelon form. Equal subgroups therefore have
//! equal representations in either model.

use fixedbitset::FixedBitSet;

use super::{BilinearPGroup, Group, Model};
use crate::algebra::{Fp, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Subgroup {
    Set(FixedBitSet),
    Linear(Subspace),
}

impl Subgroup {
    pub fn as_set(&self) -> Option<&FixedBitSet> {
        match self {
            Subgroup::Set(s) => Some(s),
            Subgroup::Linear(_) => None,
        }
    }

    pub fn as_subspace(&self) -> Option<&Subspace> {
        match self {
            Subgroup::Linear(s) => Some(s),
            Subgroup::Set(_) => None,
        }
    }
}

/// Adds every commutator `(0, B(v_i, v_j))` of basis vectors; one pass
/// suffices because commutators are central.
pub(crate) fn bracket_closure(b: &BilinearPGroup, s: Subspace) -> Subspace {
    let d = b.d();
    let basis = s.basis();
    let mut extra = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let c = b.form(&basis[i][..d], &basis[j][..d]);
            if c.iter().any(|&x| x != 0) {
                let mut v = vec![0; d];
                v.extend(c);
                extra.push(v);
            }
        }
    }
    if extra.is_empty() {
        s
    } else {
        let e = Subspace::span(b.field(), d + b.m(), extra);
        s.join(&e)
    }
}

fn table_closure(g: &Group, start: &[usize], gens: &[usize]) -> FixedBitSet {
    let n = g.len();
    let mut set = FixedBitSet::with_capacity(n);
    let e = g.identity();
    set.insert(e);
    let mut queue = vec![e];
    for &s in start {
        if !set.put(s) {
            queue.push(s);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head];
        head += 1;
        for &x in gens {
            let k = g.mul(h, x);
            if !set.put(k) {
                queue.push(k);
            }
        }
    }
    set
}

impl Group {
    fn linear_model(&self) -> &BilinearPGroup {
        self.as_bilinear().expect("linear subgroup used with a table group")
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        match &self.model {
            Model::Table(_) => {
                let mut s = FixedBitSet::with_capacity(self.len());
                s.insert(self.identity());
                Subgroup::Set(s)
            }
            Model::Bilinear(b) => Subgroup::Linear(Subspace::zero(b.field(), b.d() + b.m())),
        }
    }

    pub fn whole_group(&self) -> Subgroup {
        match &self.model {
            Model::Table(_) => {
                let mut s = FixedBitSet::with_capacity(self.len());
                s.insert_range(..);
                Subgroup::Set(s)
            }
            Model::Bilinear(b) => Subgroup::Linear(Subspace::full(b.field(), b.d() + b.m())),
        }
    }

    /// The smallest subgroup containing `gens`.
    pub fn subgroup_from_generators(&self, gens: &[usize]) -> Subgroup {
        match &self.model {
            Model::Table(_) => Subgroup::Set(table_closure(self, &[], gens)),
            Model::Bilinear(b) => {
                let s = Subspace::span(b.field(), b.d() + b.m(), gens.iter().map(|&x| b.decode(x)));
                Subgroup::Linear(bracket_closure(b, s))
            }
        }
    }

    pub(crate) fn linear_subgroup(&self, s: Subspace) -> Subgroup {
        Subgroup::Linear(bracket_closure(self.linear_model(), s))
    }

    pub fn subgroup_order(&self, s: &Subgroup) -> u64 {
        match s {
            Subgroup::Set(set) => set.count_ones(..) as u64,
            Subgroup::Linear(sp) => sp.size(),
        }
    }

    pub fn subgroup_contains(&self, s: &Subgroup, x: usize) -> bool {
        match s {
            Subgroup::Set(set) => set.contains(x),
            Subgroup::Linear(sp) => sp.contains(&self.linear_model().decode(x)),
        }
    }

    /// Elements in increasing index order.
    pub fn subgroup_elements(&self, s: &Subgroup) -> Vec<usize> {
        match s {
            Subgroup::Set(set) => set.ones().collect(),
            Subgroup::Linear(sp) => {
                let b = self.linear_model();
                sp.vectors().map(|v| b.encode(&v)).collect()
            }
        }
    }

    pub fn subgroup_as_set(&self, s: &Subgroup) -> FixedBitSet {
        match s {
            Subgroup::Set(set) => set.clone(),
            Subgroup::Linear(_) => {
                let mut out = FixedBitSet::with_capacity(self.len());
                out.extend(self.subgroup_elements(s));
                out
            }
        }
    }

    pub fn is_subgroup_of(&self, a: &Subgroup, b: &Subgroup) -> bool {
        match (a, b) {
            (Subgroup::Set(x), Subgroup::Set(y)) => x.is_subset(y),
            (Subgroup::Linear(x), Subgroup::Linear(y)) => x.is_subspace_of(y),
            _ => panic!("subgroups from different models"),
        }
    }

    pub fn subgroup_meet(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        match (a, b) {
            (Subgroup::Set(x), Subgroup::Set(y)) => {
                let mut z = x.clone();
                z.intersect_with(y);
                Subgroup::Set(z)
            }
            (Subgroup::Linear(x), Subgroup::Linear(y)) => Subgroup::Linear(x.meet(y)),
            _ => panic!("subgroups from different models"),
        }
    }

    /// The subgroup generated by `a` and `b`.
    pub fn subgroup_join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        match (a, b) {
            (Subgroup::Set(x), Subgroup::Set(y)) => {
                if y.is_subset(x) {
                    return a.clone();
                }
                let mut gens = self.subgroup_generators(a);
                gens.extend(self.subgroup_generators(b));
                let start: Vec<usize> = x.ones().collect();
                Subgroup::Set(table_closure(self, &start, &gens))
            }
            (Subgroup::Linear(x), Subgroup::Linear(y)) => self.linear_subgroup(x.join(y)),
            _ => panic!("subgroups from different models"),
        }
    }

    /// `<s, x>`.
    pub fn subgroup_adjoin(&self, s: &Subgroup, x: usize) -> Subgroup {
        if self.subgroup_contains(s, x) {
            return s.clone();
        }
        let cyc = self.subgroup_from_generators(&[x]);
        self.subgroup_join(s, &cyc)
    }

    /// A small generating set: scanning elements in order, keep each one not
    /// already generated by the previous picks.
    pub fn subgroup_generators(&self, s: &Subgroup) -> Vec<usize> {
        match s {
            Subgroup::Set(set) => {
                let mut gens = Vec::new();
                let mut cur = table_closure(self, &[], &[]);
                for x in set.ones() {
                    if !cur.contains(x) {
                        gens.push(x);
                        let start: Vec<usize> = cur.ones().collect();
                        cur = table_closure(self, &start, &gens);
                    }
                }
                gens
            }
            Subgroup::Linear(sp) => {
                let b = self.linear_model();
                sp.basis().iter().map(|v| b.encode(v)).collect()
            }
        }
    }

    /// Least element of `a` (in index order) that is not in `b`.
    pub fn least_element_outside(&self, a: &Subgroup, b: &Subgroup) -> Option<usize> {
        match (a, b) {
            (Subgroup::Set(x), Subgroup::Set(y)) => x.difference(y).next(),
            (Subgroup::Linear(x), Subgroup::Linear(y)) => {
                if x.is_subspace_of(y) {
                    return None;
                }
                let bl = self.linear_model();
                x.vectors().find(|v| !y.contains(v)).map(|v| bl.encode(&v))
            }
            _ => panic!("subgroups from different models"),
        }
    }

    /// Interprets an element set as a subgroup if it is one.
    pub fn subgroup_from_set(&self, set: &FixedBitSet) -> Option<Subgroup> {
        let elems: Vec<usize> = set.ones().collect();
        let generated = self.subgroup_from_generators(&elems);
        if self.subgroup_order(&generated) == elems.len() as u64 {
            Some(generated)
        } else {
            None
        }
    }

    /// Coordinates of the subgroup's basis (bilinear) or its sorted elements
    /// (table), for reports.
    pub fn subgroup_description(&self, s: &Subgroup) -> SubgroupDescription {
        match s {
            Subgroup::Set(set) => SubgroupDescription::Elements(set.ones().collect()),
            Subgroup::Linear(sp) => SubgroupDescription::Basis(sp.basis().to_vec()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupDescription {
    Elements(Vec<usize>),
    Basis(Vec<Vec<Fp>>),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::perm::{group_from_permutations, PERM_CLOSURE_CAP};

    fn heisenberg31() -> Group {
        Group::from_bilinear_map("h31", 3, 2, 1, &[vec![vec![0], vec![1]], vec![vec![2], vec![0]]]).unwrap()
    }

    #[test]
    fn empty_generators_give_trivial_subgroup() {
        let g = heisenberg31();
        assert_eq!(g.subgroup_from_generators(&[]), g.trivial_subgroup());
        assert_eq!(g.subgroup_order(&g.trivial_subgroup()), 1);
    }

    #[test]
    fn cyclic_subgroup_in_d4() {
        let g = group_from_permutations(4, &[vec![1, 2, 3, 0], vec![0, 3, 2, 1]], PERM_CLOSURE_CAP).unwrap();
        let r = 1; // first generator
        let s = g.subgroup_from_generators(&[r]);
        assert_eq!(g.subgroup_order(&s), 4);
    }

    #[test]
    fn linear_closure_matches_table_closure() {
        let g = heisenberg31();
        let t = g.to_table().unwrap();
        let x = g.as_bilinear().unwrap().encode(&[1, 0, 0]);
        let z = g.as_bilinear().unwrap().encode(&[0, 0, 1]);
        for gens in [vec![x], vec![x, z], vec![x, g.as_bilinear().unwrap().encode(&[0, 1, 0])]] {
            let lin = g.subgroup_from_generators(&gens);
            let tab = t.subgroup_from_generators(&gens);
            assert_eq!(g.subgroup_as_set(&lin), g.subgroup_as_set(&tab));
        }
        let xz = g.subgroup_from_generators(&[x, z]);
        assert_eq!(g.subgroup_order(&xz), 9);
        // <x> alone is not of the form U x W
        assert_eq!(g.subgroup_order(&g.subgroup_from_generators(&[x])), 3);
    }

    #[test]
    fn join_meet_and_least_outside() {
        let g = heisenberg31();
        let b = g.as_bilinear().unwrap();
        let x = g.subgroup_from_generators(&[b.encode(&[1, 0, 0])]);
        let y = g.subgroup_from_generators(&[b.encode(&[0, 1, 0])]);
        let j = g.subgroup_join(&x, &y);
        assert_eq!(g.subgroup_order(&j), 27);
        assert_eq!(g.subgroup_order(&g.subgroup_meet(&x, &y)), 1);
        assert_eq!(g.least_element_outside(&j, &x), Some(1));
        assert_eq!(g.least_element_outside(&x, &j), None);
        let set = g.subgroup_as_set(&x);
        assert_eq!(g.subgroup_from_set(&set), Some(x));
    }
}
