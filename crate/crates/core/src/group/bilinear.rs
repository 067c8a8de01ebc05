//! Class-two groups of exponent p (p odd) encoded by an alternating
//! bilinear map `B: V x V -> W` with `V = GF(p)^d`, `W = GF(p)^m`.
//!
//! Elements are pairs `(v, z)` with product
//! `(v1, z1)(v2, z2) = (v1 + v2, z1 + z2 + B(v1, v2) / 2)`, so that
//! `[(v1, z1), (v2, z2)] = (0, B(v1, v2))` and `(v, z)^k = (kv, kz)`.
//! The element index is the big-endian base-p number of `(v, z)`, which
//! makes index order equal lex order on coordinates.

use super::super::algebra::linalg::{coords_to_index, index_to_coords};
use crate::algebra::{Fp, Matrix, PrimeField};
use crate::error::{Error, Result};

/// Largest group order accepted by the bilinear model.
pub const BILINEAR_ORDER_CAP: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearPGroup {
    field: PrimeField,
    d: usize,
    m: usize,
    /// `B(e_i, e_j)` stored at `(i * d + j) * m ..`
    forms: Vec<Fp>,
    half: Fp,
}

impl BilinearPGroup {
    /// `b[i][j]` is the m-vector `B(e_i, e_j)`, entries in `0..p`.
    pub fn new(p: u32, d: usize, m: usize, b: &[Vec<Vec<Fp>>]) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenPrime);
        }
        let field = PrimeField::new(p)?;
        if b.len() != d || b.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != m)) {
            return Err(Error::Shape(format!("B must be a {d}x{d} array of {m}-vectors")));
        }
        if b.iter().flatten().flatten().any(|&c| c >= p) {
            return Err(Error::Shape(format!("B entries must lie in 0..{p}")));
        }
        let mut forms = Vec::with_capacity(d * d * m);
        for row in b {
            for cell in row {
                forms.extend_from_slice(cell);
            }
        }
        Self::from_flat(field, d, m, forms)
    }

    pub(crate) fn from_flat(field: PrimeField, d: usize, m: usize, forms: Vec<Fp>) -> Result<Self> {
        if field.p() == 2 {
            return Err(Error::EvenPrime);
        }
        let order = (field.p() as u64).checked_pow((d + m) as u32).unwrap_or(u64::MAX);
        if order > BILINEAR_ORDER_CAP {
            return Err(Error::CapExceeded { what: "bilinear group order", size: order, cap: BILINEAR_ORDER_CAP });
        }
        let g = BilinearPGroup { field, d, m, forms, half: field.inv(2) };
        for i in 0..d {
            if g.entry(i, i).iter().any(|&c| c != 0) {
                return Err(Error::NotAlternating { i, j: i });
            }
            for j in i + 1..d {
                let (a, b) = (g.entry(i, j), g.entry(j, i));
                if a.iter().zip(b).any(|(&x, &y)| field.add(x, y) != 0) {
                    return Err(Error::NotAlternating { i, j });
                }
            }
        }
        Ok(g)
    }

    /// Builds a group from a function giving `B(e_i, e_j)` for `i < j`; the
    /// rest of the table is filled in by antisymmetry.
    pub(crate) fn from_upper<F>(field: PrimeField, d: usize, m: usize, mut upper: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Vec<Fp>,
    {
        let mut forms = vec![0; d * d * m];
        for i in 0..d {
            for j in i + 1..d {
                let v = upper(i, j);
                debug_assert_eq!(v.len(), m);
                for k in 0..m {
                    forms[(i * d + j) * m + k] = v[k];
                    forms[(j * d + i) * m + k] = field.neg(v[k]);
                }
            }
        }
        Self::from_flat(field, d, m, forms)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        (self.p() as u64).pow((self.d + self.m) as u32)
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &[Fp] {
        let s = (i * self.d + j) * self.m;
        &self.forms[s..s + self.m]
    }

    /// The full table `B[i][j]` as nested vectors.
    pub fn table(&self) -> Vec<Vec<Vec<Fp>>> {
        (0..self.d).map(|i| (0..self.d).map(|j| self.entry(i, j).to_vec()).collect()).collect()
    }

    /// `B(v, w)` for `v, w` in `GF(p)^d`.
    pub fn form(&self, v: &[Fp], w: &[Fp]) -> Vec<Fp> {
        let f = self.field;
        let mut out = vec![0; self.m];
        for (i, &a) in v.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in w.iter().enumerate() {
                if b == 0 || i == j {
                    continue;
                }
                let ab = f.mul(a, b);
                for (o, &c) in out.iter_mut().zip(self.entry(i, j)) {
                    *o = f.mul_add(*o, ab, c);
                }
            }
        }
        out
    }

    pub fn form_vanishes(&self, v: &[Fp], w: &[Fp]) -> bool {
        self.form(v, w).iter().all(|&c| c == 0)
    }

    /// The m x d matrix of `w -> B(v, w)`.
    pub fn contraction(&self, v: &[Fp]) -> Matrix {
        let mut mat = Matrix::zeros(self.field, self.m, self.d);
        for j in 0..self.d {
            let mut e = vec![0; self.d];
            e[j] = 1;
            for (k, c) in self.form(v, &e).into_iter().enumerate() {
                mat.set(k, j, c);
            }
        }
        mat
    }

    /// Stacks the contractions of several vectors: the kernel is their
    /// common orthogonal complement.
    pub fn contraction_stack<'a, I>(&self, vs: I) -> Matrix
    where
        I: IntoIterator<Item = &'a Vec<Fp>>,
    {
        let mut rows: Vec<Vec<Fp>> = Vec::new();
        for v in vs {
            let c = self.contraction(v);
            for k in 0..self.m {
                rows.push(c.row(k).to_vec());
            }
        }
        Matrix::from_fp_rows(self.field, self.d, &rows)
    }

    /// The d x d Gram matrix of the scalar form `lambda . B`.
    pub fn functional_form(&self, lambda: &[Fp]) -> Matrix {
        let f = self.field;
        let mut mat = Matrix::zeros(f, self.d, self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                let e = self.entry(i, j);
                let x = lambda.iter().zip(e).fold(0, |acc, (&l, &c)| f.mul_add(acc, l, c));
                mat.set(i, j, x);
            }
        }
        mat
    }

    #[inline]
    pub fn decode(&self, x: usize) -> Vec<Fp> {
        index_to_coords(x, self.p(), self.d + self.m)
    }

    #[inline]
    pub fn encode(&self, coords: &[Fp]) -> usize {
        coords_to_index(coords, self.p())
    }

    pub fn mul_coords(&self, x: &[Fp], y: &[Fp]) -> Vec<Fp> {
        let f = self.field;
        let d = self.d;
        let phi = self.form(&x[..d], &y[..d]);
        let mut out: Vec<Fp> = x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect();
        for (o, c) in out[d..].iter_mut().zip(phi) {
            *o = f.mul_add(*o, self.half, c);
        }
        out
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.encode(&self.mul_coords(&self.decode(x), &self.decode(y)))
    }

    pub fn inv(&self, x: usize) -> usize {
        let f = self.field;
        let c: Vec<Fp> = self.decode(x).into_iter().map(|a| f.neg(a)).collect();
        self.encode(&c)
    }

    pub fn commute(&self, x: usize, y: usize) -> bool {
        let (a, b) = (self.decode(x), self.decode(y));
        self.form_vanishes(&a[..self.d], &b[..self.d])
    }

    /// `V`-coordinate of an element.
    pub fn v_part(&self, x: usize) -> Vec<Fp> {
        let mut c = self.decode(x);
        c.truncate(self.d);
        c
    }

    /// Element `(v, 0)`.
    pub fn embed_v(&self, v: &[Fp]) -> usize {
        let mut c = v.to_vec();
        c.resize(self.d + self.m, 0);
        self.encode(&c)
    }
}
