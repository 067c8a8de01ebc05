//! Named groups: extraspecial and Heisenberg groups, semifield Heisenberg
//! groups, groups given by exponent-p commutator relations, the centralizer
//! candidate `H` with `[b, c_i] = z_i`, the generalized semifield group built
//! from a semifield and `H`, and small permutation and table groups.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{ExtField, Fp, PrimeField, Semifield, Subspace};
use crate::error::{Error, Result};
use crate::group::{group_from_permutations, BilinearPGroup, Group, GroupTable, Subgroup};
use crate::group::perm::PERM_CLOSURE_CAP;
use crate::ses::{fingerprint, is_ultraspecial};

/// `[left, right] = prod z^c` over the listed central generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub left: String,
    pub right: String,
    pub value: Vec<(String, u32)>,
}

impl Relation {
    pub fn new(left: &str, right: &str, value: &[(&str, u32)]) -> Self {
        Relation {
            left: left.into(),
            right: right.into(),
            value: value.iter().map(|&(z, c)| (z.to_string(), c)).collect(),
        }
    }
}

/// A class-two exponent-p group by generators and commutator relations;
/// commutators not listed are trivial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutatorPresentation {
    pub p: u32,
    pub v_generators: Vec<String>,
    pub z_generators: Vec<String>,
    pub relations: Vec<Relation>,
}

impl CommutatorPresentation {
    pub fn new(p: u32, v: &[&str], z: &[&str], relations: Vec<Relation>) -> Self {
        CommutatorPresentation {
            p,
            v_generators: v.iter().map(|s| s.to_string()).collect(),
            z_generators: z.iter().map(|s| s.to_string()).collect(),
            relations,
        }
    }
}

pub fn from_commutator_relations(pres: &CommutatorPresentation, name: &str) -> Result<Group> {
    if pres.p == 2 {
        return Err(Error::EvenPrime);
    }
    let field = PrimeField::new(pres.p)?;
    let d = pres.v_generators.len();
    let m = pres.z_generators.len();
    let vpos: HashMap<&str, usize> = pres.v_generators.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let zpos: HashMap<&str, usize> = pres.z_generators.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let find = |map: &HashMap<&str, usize>, s: &str| map.get(s).copied().ok_or_else(|| Error::UnknownGenerator(s.into()));

    let mut upper: HashMap<(usize, usize), Vec<Fp>> = HashMap::new();
    for r in &pres.relations {
        let (i, j) = (find(&vpos, &r.left)?, find(&vpos, &r.right)?);
        let mut value = vec![0; m];
        for (zname, c) in &r.value {
            let k = find(&zpos, zname)?;
            value[k] = field.add(value[k], field.reduce(*c as i64));
        }
        if i == j {
            if value.iter().any(|&c| c != 0) {
                return Err(Error::NotAlternating { i, j });
            }
            continue;
        }
        // store as [min, max], negating when written the other way round
        let (key, value) = if i < j { ((i, j), value) } else { ((j, i), value.into_iter().map(|c| field.neg(c)).collect()) };
        if let Some(prev) = upper.get(&key) {
            if *prev != value {
                return Err(Error::InconsistentRelations { left: r.left.clone(), right: r.right.clone() });
            }
        }
        upper.insert(key, value);
    }
    let b = BilinearPGroup::from_upper(field, d, m, |i, j| upper.get(&(i, j)).cloned().unwrap_or_else(|| vec![0; m]))?;
    Ok(Group::from_bilinear(name, b))
}

fn verify(ok: bool, predicate: &str, detail: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::VerificationFailed { predicate: predicate.into(), detail: detail() })
    }
}

/// Generators `b, c_1, ..., c_{n-2}` and central `a, z_1, ..., z_n` with
/// `[b, c_i] = z_i`.
pub fn centralizer_candidate_presentation(p: u32, n: usize) -> Result<CommutatorPresentation> {
    if n < 3 {
        return Err(Error::InvalidN { n, reason: "n must be at least 3" });
    }
    let mut v = vec!["b".to_string()];
    v.extend((1..=n - 2).map(|i| format!("c{i}")));
    let mut z = vec!["a".to_string()];
    z.extend((1..=n).map(|i| format!("z{i}")));
    let relations = (1..=n - 2)
        .map(|i| Relation { left: "b".into(), right: format!("c{i}"), value: vec![(format!("z{i}"), 1)] })
        .collect();
    Ok(CommutatorPresentation { p, v_generators: v, z_generators: z, relations })
}

/// The group `H` of order `p^(2n)` with `[b, c_i] = z_i`, checked to have
/// `|Z(H)| = p^(n+1)` and `C_H(b)` maximal abelian of order `p^(n+2)`.
pub fn centralizer_candidate(p: u32, n: usize) -> Result<Group> {
    let pres = centralizer_candidate_presentation(p, n)?;
    let h = from_commutator_relations(&pres, &format!("paperH-{p}-{n}"))?;
    let pn = |e: usize| (p as u64).pow(e as u32);
    verify(h.order() == pn(2 * n), "|H| = p^(2n)", || format!("|H| = {}", h.order()))?;
    let z = h.subgroup_order(&h.center());
    verify(z == pn(n + 1), "|Z(H)| = p^(n+1)", || format!("|Z(H)| = {z}"))?;
    let c = h.centralizer(h.as_bilinear().unwrap().embed_v(&unit(n - 1, 0)));
    verify(h.subgroup_order(&c) == pn(n + 2), "|C_H(b)| = p^(n+2)", || format!("|C_H(b)| = {}", h.subgroup_order(&c)))?;
    verify(h.is_maximal_abelian(&c), "C_H(b) is maximal abelian", String::new)?;
    Ok(h)
}

fn unit(d: usize, i: usize) -> Vec<Fp> {
    let mut e = vec![0; d];
    e[i] = 1;
    e
}

/// Extraspecial group of order `p^(2k+1)` and exponent p (p odd), with the
/// standard symplectic form `B(e_i, e_{k+i}) = 1`. For `p = 2, k = 1` the
/// dihedral group of order 8 is returned as a table.
pub fn extraspecial(p: u32, k: usize) -> Result<Group> {
    if p == 2 {
        if k == 1 {
            return Ok(dihedral8());
        }
        return Err(Error::Unsupported("extraspecial 2-groups other than D4 are not built in".into()));
    }
    if k == 0 {
        return Err(Error::InvalidN { n: k, reason: "k must be positive" });
    }
    let field = PrimeField::new(p)?;
    let b = BilinearPGroup::from_upper(field, 2 * k, 1, |i, j| vec![u32::from(j == i + k)])?;
    Ok(Group::from_bilinear(format!("extraspecial-{p}-{k}"), b))
}

/// `B((x1, y1), (x2, y2)) = x1 * y2 - x2 * y1` for a bilinear product `*` on
/// `GF(p)^n` given by structure constants.
fn heisenberg_type(field: PrimeField, n: usize, constants: &[Vec<Vec<Fp>>]) -> Result<BilinearPGroup> {
    BilinearPGroup::from_upper(field, 2 * n, n, |i, j| {
        if i < n && j >= n {
            constants[i][j - n].clone()
        } else {
            vec![0; n]
        }
    })
}

/// Upper unitriangular 3x3 matrices over `GF(p^a)`: order `p^(3a)`.
pub fn heisenberg(p: u32, a: usize) -> Result<Group> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if a == 0 {
        return Err(Error::InvalidN { n: a, reason: "degree must be positive" });
    }
    let k = ExtField::with_default_modulus(p, a)?;
    let s = Semifield::from_field(&k);
    Ok(Group::from_bilinear(format!("heisenberg-{p}-{a}"), heisenberg_type(k.base(), a, s.constants())?))
}

/// The Heisenberg-type group of a semifield, verified to be ultraspecial of
/// order `p^(3n)` with the abelian subgroup `{(x, 0)} Z(G)` of order
/// `p^(2n)`.
pub fn semifield_heisenberg(s: &Semifield) -> Result<Group> {
    if s.p() == 2 {
        return Err(Error::EvenPrime);
    }
    let n = s.n();
    if s.order() <= crate::algebra::semifield::SEMIFIELD_CHECK_CAP {
        let report = s.validate()?;
        verify(report.passed(), "structure constants define a semifield", || format!("{report:?}"))?;
    }
    let b = heisenberg_type(s.field(), n, s.constants())?;
    let g = Group::from_bilinear(format!("sfheis-{}-{}", s.p(), n), b);
    verify(g.order() == (s.p() as u64).pow(3 * n as u32), "|G| = p^(3n)", || g.order().to_string())?;
    verify(is_ultraspecial(&g)?, "ultraspecial", String::new)?;
    let xs = Subgroup::Linear(Subspace::span(s.field(), 2 * n, (0..n).map(|i| unit(2 * n, i))).extend_full(n));
    verify(g.is_abelian_subgroup(&xs), "abelian subgroup of order p^(2n)", String::new)?;
    Ok(g)
}

/// Generalized semifield group on `V (+) V` with central `V`.
///
/// `V` is identified with `H / Z` for `Z = <z_1, ..., z_n>`: the first
/// central generator of the presentation (`a`) followed by its
/// noncentral generators. With `alpha` the semifield product and `beta` the
/// commutator map of `H` in these coordinates, the commutator map of `G` is
///
/// `B((u1, v1), (u2, v2)) = alpha(u2, v1) - alpha(u1, v2) + beta(v1, v2)`.
///
/// The element `g = (0, a)` has `C_G(g) = {(0, v)} Z(G)`, a copy of `H`.
/// The construction is checked against the properties it must have: order
/// `p^(3n)`, ultraspecial, `C_G(g)` isomorphic-in-profile to `H`, and
/// maximal abelian subgroups of orders `p^(n+2)` and `p^(2n)`.
pub fn generalized_semifield_group(s: &Semifield, h: &CommutatorPresentation) -> Result<Group> {
    let n = s.n();
    if n < 3 {
        return Err(Error::InvalidN { n, reason: "n must be at least 3" });
    }
    if h.p != s.p() || h.v_generators.len() + 1 != n || h.z_generators.len() != n + 1 {
        return Err(Error::Shape(format!(
            "H must have p = {}, {} noncentral and {} central generators",
            s.p(),
            n - 1,
            n + 1
        )));
    }
    let p = s.p();
    let field = s.field();
    let hg = from_commutator_relations(h, "H")?;
    let hb = hg.as_bilinear().unwrap();
    // beta on V = <a, v_1, ..., v_{n-1}>, valued in <z_1, ..., z_n>
    let beta = |i: usize, j: usize| -> Vec<Fp> {
        if i == 0 || j == 0 {
            vec![0; n]
        } else {
            hb.entry(i - 1, j - 1)[1..].to_vec()
        }
    };
    let alpha = s.constants();
    let b = BilinearPGroup::from_upper(field, 2 * n, n, |i, j| {
        if j < n {
            vec![0; n]
        } else if i < n {
            // B((u_i, 0), (0, v_j)) = -alpha(u_i, v_j)
            alpha[i][j - n].iter().map(|&c| field.neg(c)).collect()
        } else {
            beta(i - n, j - n)
        }
    })?;
    let g = Group::from_bilinear(format!("gab-{p}-{n}"), b);
    let gb = g.as_bilinear().unwrap();
    let pn = |e: usize| (p as u64).pow(e as u32);

    verify(g.order() == pn(3 * n), "|G| = p^(3n)", || g.order().to_string())?;
    verify(is_ultraspecial(&g)?, "ultraspecial", String::new)?;

    let a_elem = gb.embed_v(&unit(2 * n, n));
    let c = g.centralizer(a_elem);
    verify(g.subgroup_order(&c) == pn(2 * n), "|C_G(a)| = p^(2n)", || g.subgroup_order(&c).to_string())?;
    let expected_c = Subspace::span(field, 2 * n, (n..2 * n).map(|i| unit(2 * n, i))).extend_full(n);
    verify(c == Subgroup::Linear(expected_c), "C_G(a) = {(0, v)} Z(G)", String::new)?;
    // the commutator map restricted to C_G(a) is beta, so C_G(a) is H with a
    // moved from the central to the noncentral coordinates
    let restricted = BilinearPGroup::from_upper(field, n, n, &beta)?;
    let ca = Group::from_bilinear("C_G(a)", restricted);
    verify(fingerprint(&ca)? == fingerprint(&hg)?, "C_G(a) has the profile of H", String::new)?;

    let small = Subgroup::Linear(Subspace::span(field, 2 * n, [unit(2 * n, n), unit(2 * n, n + 1)]).extend_full(n));
    verify(
        g.subgroup_order(&small) == pn(n + 2) && g.is_maximal_abelian(&small),
        "maximal abelian subgroup of order p^(n+2)",
        String::new,
    )?;
    let large = Subgroup::Linear(Subspace::span(field, 2 * n, (0..n).map(|i| unit(2 * n, i))).extend_full(n));
    verify(
        g.subgroup_order(&large) == pn(2 * n) && g.is_maximal_abelian(&large),
        "maximal abelian subgroup of order p^(2n)",
        String::new,
    )?;
    Ok(g)
}

/// `gab-p-n` with the field of order `p^n` as semifield.
pub fn generalized_semifield_group_over_field(p: u32, n: usize) -> Result<Group> {
    if n < 3 {
        return Err(Error::InvalidN { n, reason: "n must be at least 3" });
    }
    let k = ExtField::with_default_modulus(p, n)?;
    generalized_semifield_group(&Semifield::from_field(&k), &centralizer_candidate_presentation(p, n)?)
}

/// Generators `a_1, a_2, a_3` and central `z` with three independent
/// commutators: order `p^7`.
pub fn example_n4_presentation(p: u32) -> CommutatorPresentation {
    CommutatorPresentation::new(
        p,
        &["a1", "a2", "a3"],
        &["z", "w12", "w13", "w23"],
        vec![
            Relation::new("a1", "a2", &[("w12", 1)]),
            Relation::new("a1", "a3", &[("w13", 1)]),
            Relation::new("a2", "a3", &[("w23", 1)]),
        ],
    )
}

/// Generators `a_1, ..., a_4` and central `z` with `[a_1, a_4] = [a_2, a_3]`
/// and five independent commutators: order `p^10`.
pub fn example_n5_presentation(p: u32) -> CommutatorPresentation {
    CommutatorPresentation::new(
        p,
        &["a1", "a2", "a3", "a4"],
        &["z", "w12", "w34", "w13", "w24", "w14"],
        vec![
            Relation::new("a1", "a2", &[("w12", 1)]),
            Relation::new("a3", "a4", &[("w34", 1)]),
            Relation::new("a1", "a3", &[("w13", 1)]),
            Relation::new("a2", "a4", &[("w24", 1)]),
            Relation::new("a1", "a4", &[("w14", 1)]),
            Relation::new("a2", "a3", &[("w14", 1)]),
        ],
    )
}

pub fn example_n4(p: u32) -> Result<Group> {
    from_commutator_relations(&example_n4_presentation(p), "example-n4")
}

pub fn example_n5(p: u32) -> Result<Group> {
    from_commutator_relations(&example_n5_presentation(p), "example-n5")
}

/// Dihedral group of order 8 with elements `r^i s^j` at index `i + 4j`.
pub fn dihedral8() -> Group {
    let mut mul = Vec::with_capacity(64);
    for x in 0..8u32 {
        let (i, j) = (x % 4, x / 4);
        for y in 0..8u32 {
            let (k, l) = (y % 4, y / 4);
            // s r^k = r^{-k} s
            let rot = if j == 0 { (i + k) % 4 } else { (i + 4 - k) % 4 };
            mul.push(rot + 4 * ((j + l) % 2));
        }
    }
    let labels = ["e", "r", "r2", "r3", "s", "rs", "r2s", "r3s"].map(String::from).to_vec();
    Group::from_table("D4", GroupTable::from_flat_trusted(8, mul, Some(labels)))
}

/// Quaternion group with elements `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8() -> Group {
    // unit products: (unit, sign) for 1, i, j, k
    const UNIT: [[(u32, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    let mut mul = Vec::with_capacity(64);
    for x in 0..8u32 {
        for y in 0..8u32 {
            let (u, neg) = UNIT[(x / 2) as usize][(y / 2) as usize];
            let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
            mul.push(2 * u + u32::from(sign));
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
    Group::from_table("Q8", GroupTable::from_flat_trusted(8, mul, Some(labels)))
}

pub fn symmetric3() -> Group {
    group_from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]], PERM_CLOSURE_CAP).unwrap().with_name("S3")
}

pub fn symmetric4() -> Group {
    group_from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], PERM_CLOSURE_CAP).unwrap().with_name("S4")
}

pub fn alternating4() -> Group {
    group_from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], PERM_CLOSURE_CAP).unwrap().with_name("A4")
}

/// Parameters accepted by [`build`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildParams {
    pub p: Option<u32>,
    pub a: Option<usize>,
    pub n: Option<usize>,
    pub k: Option<usize>,
}

/// Builds a group by construction name (`extraspecial`, `heisenberg`,
/// `paperH`, `sfheis`, `gab`, `example-n4`, `example-n5`, `D4`, `Q8`, `S3`,
/// `S4`, `A4`), or by a full catalog name such as `heisenberg-3-2`.
pub fn build(name: &str, params: BuildParams) -> Result<Group> {
    let need = |x: Option<usize>, what: &str| x.ok_or_else(|| Error::Unsupported(format!("{name} needs --{what}")));
    let p = params.p.unwrap_or(3);
    if let Some((base, rest)) = split_catalog_name(name) {
        let nums: Vec<u64> = rest.iter().map(|s| s.parse().map_err(|_| Error::Unsupported(format!("bad name {name}")))).collect::<Result<_>>()?;
        if nums.len() != 2 {
            return Err(Error::Unsupported(format!("bad name {name}")));
        }
        let (p, x) = (nums[0] as u32, Some(nums[1] as usize));
        let params = BuildParams { p: Some(p), a: x, n: x, k: x };
        return build(base, params);
    }
    match name {
        "extraspecial" => extraspecial(p, need(params.k, "k")?),
        "heisenberg" => heisenberg(p, need(params.a, "a")?),
        "paperH" => centralizer_candidate(p, need(params.n, "n")?),
        "sfheis" => {
            let n = need(params.n, "n")?;
            semifield_heisenberg(&Semifield::from_field(&ExtField::with_default_modulus(p, n)?))
        }
        "gab" => generalized_semifield_group_over_field(p, need(params.n, "n")?),
        "example-n4" => example_n4(p),
        "example-n5" => example_n5(p),
        "D4" => Ok(dihedral8()),
        "Q8" => Ok(quaternion8()),
        "S3" => Ok(symmetric3()),
        "S4" => Ok(symmetric4()),
        "A4" => Ok(alternating4()),
        other => Err(Error::Unsupported(format!("unknown construction {other}"))),
    }
}

fn split_catalog_name(name: &str) -> Option<(&str, Vec<&str>)> {
    for base in ["extraspecial", "heisenberg", "paperH", "sfheis", "gab"] {
        if let Some(rest) = name.strip_prefix(base).and_then(|r| r.strip_prefix('-')) {
            return Some((base, rest.split('-').collect()));
        }
    }
    None
}
