//! JSON group files and semifield files.
//!
//! ```json
//! {"model":"bilinear","p":3,"d":2,"m":1,"B":[[[0],[1]],[[2],[0]]],"name":"extraspecial-3-1"}
//! {"model":"table","order":2,"mul":[[0,1],[1,0]],"labels":["e","x"]}
//! {"model":"perm","degree":3,"generators":[[1,0,2],[1,2,0]]}
//! ```

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algebra::{Fp, Semifield};
use crate::error::{Error, Result};
use crate::group::perm::PERM_CLOSURE_CAP;
use crate::group::{group_from_permutations, BilinearPGroup, Group, GroupTable, Model};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum GroupFile {
    Bilinear {
        p: u32,
        d: usize,
        m: usize,
        #[serde(rename = "B")]
        b: Vec<Vec<Vec<Fp>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Table {
        order: usize,
        mul: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Perm {
        degree: usize,
        generators: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
}

fn field_error(field: &str, e: impl std::fmt::Display) -> Error {
    Error::Format(format!("field `{field}`: {e}"))
}

impl GroupFile {
    pub fn from_group(g: &Group) -> Self {
        match g.model() {
            Model::Bilinear(b) => GroupFile::Bilinear {
                p: b.p(),
                d: b.d(),
                m: b.m(),
                b: (0..b.d()).map(|i| (0..b.d()).map(|j| b.entry(i, j).to_vec()).collect()).collect(),
                name: Some(g.name().to_string()),
            },
            Model::Table(t) => GroupFile::Table {
                order: t.order(),
                mul: t.rows(),
                labels: t.labels().map(|l| l.to_vec()),
                name: Some(g.name().to_string()),
            },
        }
    }

    /// Validates the document and builds the group.
    pub fn into_group(self) -> Result<Group> {
        match self {
            GroupFile::Bilinear { p, d, m, b, name } => {
                let bg = BilinearPGroup::new(p, d, m, &b).map_err(|e| field_error("B", e))?;
                Ok(Group::from_bilinear(name.unwrap_or_else(|| "bilinear".into()), bg))
            }
            GroupFile::Table { order, mul, labels, name } => {
                if mul.len() != order {
                    return Err(field_error("mul", format!("{} rows for order {order}", mul.len())));
                }
                let t = GroupTable::from_rows(&mul, labels).map_err(|e| field_error("mul", e))?;
                Ok(Group::from_table(name.unwrap_or_else(|| "table".into()), t))
            }
            GroupFile::Perm { degree, generators, name } => {
                let g = group_from_permutations(degree, &generators, PERM_CLOSURE_CAP)
                    .map_err(|e| field_error("generators", e))?;
                Ok(match name {
                    Some(n) => g.with_name(n),
                    None => g,
                })
            }
        }
    }
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

pub fn parse_group(text: &str) -> Result<Group> {
    serde_json::from_str::<GroupFile>(text).map_err(json_error)?.into_group()
}

pub fn group_to_json(g: &Group) -> String {
    let mut s = serde_json::to_string(&GroupFile::from_group(g)).expect("group files always serialize");
    s.push('\n');
    s
}

pub fn read_group(path: &Path) -> Result<Group> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_group(&text).map_err(|e| match e {
        Error::Format(msg) => Error::Format(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn write_group(g: &Group, path: &Path) -> Result<()> {
    std::fs::write(path, group_to_json(g)).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// `{"p":3,"n":3,"mul":[[[...]]]}` with `mul[i][j]` the coordinates of
/// `e_i * e_j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemifieldFile {
    pub p: u32,
    pub n: usize,
    pub mul: Vec<Vec<Vec<Fp>>>,
}

pub fn parse_semifield(text: &str) -> Result<Semifield> {
    let f: SemifieldFile = serde_json::from_str(text).map_err(json_error)?;
    Semifield::from_constants(f.p, f.n, f.mul).map_err(|e| field_error("mul", e))
}

pub fn semifield_to_json(s: &Semifield) -> String {
    let f = SemifieldFile { p: s.p(), n: s.n(), mul: s.constants().to_vec() };
    serde_json::to_string(&f).expect("semifield files always serialize")
}
