//! Centers of centralizers, maximal abelian subgroups, and certified lower
//! bounds on their size for finite groups, with a fast linear-algebra path
//! for class-two groups of exponent p.

pub mod algebra;
pub mod catalog;
pub mod centralizer;
pub mod construct;
pub mod error;
pub mod group;
pub mod io;
pub mod maxabel;
pub mod report;
pub mod ses;
pub mod suite;

pub use error::{Error, Result};
pub use group::{Group, Subgroup};
