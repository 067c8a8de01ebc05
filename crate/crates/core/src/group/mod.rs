//! Finite groups in two interchangeable models.
//!
//! Elements are `usize` indices in both models. For a table group they are
//! rows of the Cayley table; for a bilinear group they are the big-endian
//! base-p encodings of `(v, z)`. Expanding a bilinear group to a table keeps
//! the indices, which is the bijection every oracle comparison relies on.

pub mod bilinear;
pub mod perm;
pub mod subgroup;
pub mod table;

use serde::Serialize;

pub use bilinear::BilinearPGroup;
pub use perm::group_from_permutations;
pub use subgroup::Subgroup;
pub use table::GroupTable;

use crate::algebra::field::prime_power;
use crate::algebra::Fp;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Model {
    Table(GroupTable),
    Bilinear(BilinearPGroup),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    name: String,
    model: Model,
}

/// How an element is written in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ElementRepr {
    Coords { v: Vec<Fp>, z: Vec<Fp> },
    Index { index: usize, #[serde(skip_serializing_if = "Option::is_none")] label: Option<String> },
}

impl Group {
    pub fn new(name: impl Into<String>, model: Model) -> Self {
        Group { name: name.into(), model }
    }

    pub fn from_table(name: impl Into<String>, t: GroupTable) -> Self {
        Self::new(name, Model::Table(t))
    }

    pub fn from_bilinear(name: impl Into<String>, b: BilinearPGroup) -> Self {
        Self::new(name, Model::Bilinear(b))
    }

    /// Validates a Cayley table given as index rows.
    pub fn from_rows(name: impl Into<String>, rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        Ok(Self::from_table(name, GroupTable::from_rows(rows, labels)?))
    }

    /// Validates `B` and wraps it: `b[i][j]` is the m-vector `B(e_i, e_j)`.
    pub fn from_bilinear_map(name: impl Into<String>, p: u32, d: usize, m: usize, b: &[Vec<Vec<Fp>>]) -> Result<Self> {
        Ok(Self::from_bilinear(name, BilinearPGroup::new(p, d, m, b)?))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn model(&self) -> &Model {
        &self.model
    }

    pub fn model_name(&self) -> &'static str {
        match self.model {
            Model::Table(_) => "table",
            Model::Bilinear(_) => "bilinear",
        }
    }

    pub fn as_bilinear(&self) -> Option<&BilinearPGroup> {
        match &self.model {
            Model::Bilinear(b) => Some(b),
            Model::Table(_) => None,
        }
    }

    pub fn as_table(&self) -> Option<&GroupTable> {
        match &self.model {
            Model::Table(t) => Some(t),
            Model::Bilinear(_) => None,
        }
    }

    pub fn order(&self) -> u64 {
        match &self.model {
            Model::Table(t) => t.order() as u64,
            Model::Bilinear(b) => b.order(),
        }
    }

    pub fn len(&self) -> usize {
        self.order() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        match &self.model {
            Model::Table(t) => t.mul(x, y),
            Model::Bilinear(b) => b.mul(x, y),
        }
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        match &self.model {
            Model::Table(t) => t.inv(x),
            Model::Bilinear(b) => b.inv(x),
        }
    }

    pub fn identity(&self) -> usize {
        match &self.model {
            Model::Table(t) => t.identity(),
            Model::Bilinear(_) => 0,
        }
    }

    #[inline]
    pub fn commute(&self, x: usize, y: usize) -> bool {
        match &self.model {
            Model::Table(t) => t.mul(x, y) == t.mul(y, x),
            Model::Bilinear(b) => b.commute(x, y),
        }
    }

    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// The prime `p` if the order is `p^k` with `k >= 1`.
    pub fn prime(&self) -> Option<u32> {
        match &self.model {
            Model::Bilinear(b) if b.d() + b.m() > 0 => Some(b.p()),
            _ => prime_power(self.order()).map(|(p, _)| p),
        }
    }

    pub fn require_p_group(&self) -> Result<u32> {
        self.prime().ok_or(Error::NotPrimePower(self.order()))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let e = self.identity();
        let mut k = 1;
        let mut y = x;
        while y != e {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn element_repr(&self, x: usize) -> ElementRepr {
        match &self.model {
            Model::Table(t) => ElementRepr::Index { index: x, label: t.labels().map(|l| l[x].clone()) },
            Model::Bilinear(b) => {
                let mut v = b.decode(x);
                let z = v.split_off(b.d());
                ElementRepr::Coords { v, z }
            }
        }
    }

    pub fn element_label(&self, x: usize) -> String {
        match self.element_repr(x) {
            ElementRepr::Index { label: Some(l), .. } => l,
            ElementRepr::Index { index, label: None } => index.to_string(),
            ElementRepr::Coords { v, z } => format!("{v:?}|{z:?}"),
        }
    }

    /// The same group as an explicit Cayley table, with identical element
    /// indices.
    pub fn to_table(&self) -> Result<Group> {
        match &self.model {
            Model::Table(_) => Ok(self.clone()),
            Model::Bilinear(b) => Ok(Group::new(self.name.clone(), Model::Table(expand_bilinear_to_table(b)?))),
        }
    }
}

/// Expands a bilinear group into its multiplication table.
pub fn expand_bilinear_to_table(b: &BilinearPGroup) -> Result<GroupTable> {
    let n = b.order();
    if n > table::TABLE_ORDER_CAP as u64 {
        return Err(Error::CapExceeded { what: "table expansion", size: n, cap: table::TABLE_ORDER_CAP as u64 });
    }
    let n = n as usize;
    let coords: Vec<Vec<Fp>> = (0..n).map(|x| b.decode(x)).collect();
    let mut mul = Vec::with_capacity(n * n);
    for x in &coords {
        for y in &coords {
            mul.push(b.encode(&b.mul_coords(x, y)) as u32);
        }
    }
    Ok(GroupTable::from_flat_trusted(n, mul, None))
}
