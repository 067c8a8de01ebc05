use std::collections::HashMap;

use super::{Group, GroupTable};
use crate::error::{Error, Result};

/// Default cap on the order of a permutation group closure.
pub const PERM_CLOSURE_CAP: usize = 20_000;

/// Breadth-first closure of `generators` under composition.
///
/// The product `x * y` applies `x` first, then `y`. Elements are numbered in
/// discovery order, starting from the identity and trying generators in the
/// given order.
pub fn group_from_permutations(degree: usize, generators: &[Vec<usize>], cap: usize) -> Result<Group> {
    for (index, g) in generators.iter().enumerate() {
        let mut seen = vec![false; degree];
        let ok = g.len() == degree && g.iter().all(|&i| i < degree && !std::mem::replace(&mut seen[i], true));
        if !ok {
            return Err(Error::NotPermutation { index, degree });
        }
    }
    let compose = |x: &[usize], y: &[usize]| -> Vec<usize> { x.iter().map(|&i| y[i]).collect() };

    let identity: Vec<usize> = (0..degree).collect();
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
    let mut head = 0;
    while head < elems.len() {
        for g in generators {
            let next = compose(&elems[head], g);
            if !index.contains_key(&next) {
                if elems.len() == cap {
                    return Err(Error::CapExceeded { what: "permutation closure", size: cap as u64 + 1, cap: cap as u64 });
                }
                index.insert(next.clone(), elems.len());
                elems.push(next);
            }
        }
        head += 1;
    }

    let n = elems.len();
    let mut mul = Vec::with_capacity(n * n);
    for x in &elems {
        for y in &elems {
            mul.push(index[&compose(x, y)] as u32);
        }
    }
    let labels = elems.iter().map(|e| cycle_notation(e)).collect();
    Ok(Group::from_table("perm", GroupTable::from_flat_trusted(n, mul, Some(labels))))
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut i = perm[start];
        while i != start {
            seen[i] = true;
            cycle.push(i);
            i = perm[i];
        }
        let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}
