//! Exact arithmetic over GF(p) and GF(p^a), linear algebra, and semifields.

pub mod field;
pub mod linalg;
pub mod semifield;

pub use field::{ExtField, Fp, PrimeField};
pub use linalg::{rank_and_kernel, Matrix, Subspace};
pub use semifield::{Semifield, ValidationReport};

/// Little-endian coordinates of `idx` in base `p`.
pub fn index_to_coords_le(mut idx: u64, p: u32, len: usize) -> Vec<Fp> {
    let mut v = Vec::with_capacity(len);
    for _ in 0..len {
        v.push((idx % p as u64) as Fp);
        idx /= p as u64;
    }
    v
}
