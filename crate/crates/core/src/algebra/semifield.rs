//! Finite semifields given by structure constants over GF(p).
//!
//! `mul[i][j][k]` is the coefficient of `e_k` in `e_i * e_j`. Bilinearity of
//! the product is built into this representation, so both distributive laws
//! hold for any well-shaped table; the remaining axioms (no zero divisors, a
//! two-sided identity) are checked exhaustively by [`Semifield::validate`].

use serde::{Deserialize, Serialize};

use super::field::{ExtField, Fp, PrimeField};
use super::linalg::{rank_and_kernel, Matrix};
use crate::algebra::index_to_coords_le;
use crate::error::{Error, Result};

/// Largest semifield order that [`Semifield::validate`] will scan.
pub const SEMIFIELD_CHECK_CAP: u64 = 2187;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Semifield {
    p: u32,
    n: usize,
    mul: Vec<Vec<Vec<Fp>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub identity: Option<Vec<Fp>>,
    /// First pair `(x, y)` of nonzero elements with `x * y = 0`, scanning `x`
    /// and then `y` by little-endian index.
    pub zero_divisor: Option<(Vec<Fp>, Vec<Fp>)>,
    /// Number of ordered pairs of nonzero elements with zero product.
    pub zero_divisor_pairs: u64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.identity.is_some() && self.zero_divisor_pairs == 0
    }
}

impl Semifield {
    /// Checks shape and entry range; does not check the semifield axioms.
    pub fn from_constants(p: u32, n: usize, mul: Vec<Vec<Vec<Fp>>>) -> Result<Self> {
        PrimeField::new(p)?;
        if n == 0 {
            return Err(Error::Shape("semifield degree must be positive".into()));
        }
        let ok_shape = mul.len() == n && mul.iter().all(|r| r.len() == n && r.iter().all(|c| c.len() == n));
        if !ok_shape {
            return Err(Error::Shape(format!("structure constants must be {n}x{n}x{n}")));
        }
        if mul.iter().flatten().flatten().any(|&c| c >= p) {
            return Err(Error::Shape(format!("structure constants must lie in 0..{p}")));
        }
        Ok(Semifield { p, n, mul })
    }

    /// The structure constants of a field in the power basis `1, x, ..., x^{a-1}`.
    pub fn from_field(k: &ExtField) -> Self {
        let n = k.degree();
        let basis: Vec<Vec<Fp>> = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        let mul = (0..n).map(|i| (0..n).map(|j| k.mul(&basis[i], &basis[j])).collect()).collect();
        Semifield { p: k.p(), n, mul }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn constants(&self) -> &[Vec<Vec<Fp>>] {
        &self.mul
    }

    pub fn field(&self) -> PrimeField {
        PrimeField::new(self.p).expect("validated at construction")
    }

    pub fn order(&self) -> u64 {
        (self.p as u64).pow(self.n as u32)
    }

    pub fn mul(&self, x: &[Fp], y: &[Fp]) -> Vec<Fp> {
        let f = self.field();
        let mut out = vec![0; self.n];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 {
                    continue;
                }
                let ab = f.mul(a, b);
                for (o, &c) in out.iter_mut().zip(&self.mul[i][j]) {
                    *o = f.mul_add(*o, ab, c);
                }
            }
        }
        out
    }

    /// Matrix of `y -> x * y`.
    fn left_mult(&self, x: &[Fp]) -> Matrix {
        let f = self.field();
        let mut m = Matrix::zeros(f, self.n, self.n);
        for j in 0..self.n {
            let mut e = vec![0; self.n];
            e[j] = 1;
            for (k, c) in self.mul(x, &e).into_iter().enumerate() {
                m.set(k, j, c);
            }
        }
        m
    }

    /// Exhaustive identity search and zero-divisor count.
    pub fn validate(&self) -> Result<ValidationReport> {
        let q = self.order();
        if q > SEMIFIELD_CHECK_CAP {
            return Err(Error::SizeCapExceeded { what: "semifield order", size: q, cap: SEMIFIELD_CHECK_CAP });
        }
        let elems: Vec<Vec<Fp>> = (0..q).map(|i| index_to_coords_le(i, self.p, self.n)).collect();
        let units: Vec<Vec<Fp>> = (0..self.n)
            .map(|j| {
                let mut e = vec![0; self.n];
                e[j] = 1;
                e
            })
            .collect();
        let identity = elems
            .iter()
            .find(|e| units.iter().all(|u| self.mul(e, u) == *u && self.mul(u, e) == *u))
            .cloned();

        let mut zero_divisor = None;
        let mut pairs = 0u64;
        for x in elems.iter().skip(1) {
            let (_, ker) = rank_and_kernel(&self.left_mult(x));
            if ker.dim() == 0 {
                continue;
            }
            pairs += ker.size() - 1;
            if zero_divisor.is_none() {
                let y = elems.iter().skip(1).find(|y| ker.contains(y)).cloned().unwrap();
                zero_divisor = Some((x.clone(), y));
            }
        }
        Ok(ValidationReport { identity, zero_divisor, zero_divisor_pairs: pairs })
    }
}
