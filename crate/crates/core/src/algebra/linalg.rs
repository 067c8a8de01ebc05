//! Dense linear algebra over GF(p): row reduction, kernels, and subspaces
//! held in reduced row echelon form.

use super::field::{Fp, PrimeField};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Fp>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows of integers, reducing every entry mod p.
    pub fn from_rows<R: AsRef<[i64]>>(field: PrimeField, cols: usize, rows: &[R]) -> Result<Self> {
        let mut m = Self::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::Shape(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, field.reduce(x));
            }
        }
        Ok(m)
    }

    pub(crate) fn from_fp_rows(field: PrimeField, cols: usize, rows: &[Vec<Fp>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fp {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Fp) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Fp] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn apply(&self, v: &[Fp]) -> Vec<Fp> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| self.field.mul_add(acc, a, b)))
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c));
            if inv != 1 {
                for j in c..cols {
                    let x = self.get(r, j);
                    self.set(r, j, f.mul(x, inv));
                }
            }
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                let neg = f.neg(factor);
                for j in c..cols {
                    let x = f.mul_add(self.get(i, j), neg, self.get(r, j));
                    self.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// Rank of `m` and its right kernel `{v : m v = 0}`.
pub fn rank_and_kernel(m: &Matrix) -> (usize, Subspace) {
    let mut r = m.clone();
    let pivots = r.rref();
    let f = m.field;
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut kernel = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; m.cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(r.get(row, free));
        }
        kernel.push(v);
    }
    (pivots.len(), Subspace::span(f, m.cols, kernel))
}

/// A subspace of GF(p)^n stored by its unique reduced row echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: PrimeField,
    ambient_dim: usize,
    basis: Vec<Vec<Fp>>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, basis: Vec::new() }
    }

    pub fn full(field: PrimeField, ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![0; ambient_dim];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { field, ambient_dim, basis }
    }

    /// Span of arbitrary vectors (entries already reduced mod p).
    pub fn span<I>(field: PrimeField, ambient_dim: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Fp>>,
    {
        let rows: Vec<Vec<Fp>> = vectors.into_iter().collect();
        if rows.is_empty() {
            return Self::zero(field, ambient_dim);
        }
        let mut m = Matrix::from_fp_rows(field, ambient_dim, &rows);
        let rank = m.rref().len();
        let basis = (0..rank).map(|i| m.row(i).to_vec()).collect();
        Subspace { field, ambient_dim, basis }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Fp>] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r.iter().position(|&x| x != 0).unwrap()).collect()
    }

    /// Number of vectors, `p^dim`.
    pub fn size(&self) -> u64 {
        (self.field.p() as u64).pow(self.dim() as u32)
    }

    /// Reduces `v` modulo the subspace; the result is zero iff `v` lies in it.
    pub fn reduce(&self, v: &mut [Fp]) {
        let f = self.field;
        for row in &self.basis {
            let pc = row.iter().position(|&x| x != 0).unwrap();
            let c = v[pc];
            if c != 0 {
                let neg = f.neg(c);
                for (x, &r) in v.iter_mut().zip(row).skip(pc) {
                    *x = f.mul_add(*x, neg, r);
                }
            }
        }
    }

    pub fn contains(&self, v: &[Fp]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    fn check_dims(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            Err(Error::DimensionMismatch { left: self.ambient_dim, right: other.ambient_dim })
        } else {
            Ok(())
        }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_dims(other)?;
        Ok(self.join(other))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_dims(other)?;
        Ok(self.meet(other))
    }

    pub(crate) fn join(&self, other: &Subspace) -> Subspace {
        debug_assert_eq!(self.ambient_dim, other.ambient_dim);
        if other.basis.iter().all(|b| self.contains(b)) {
            return self.clone();
        }
        Subspace::span(self.field, self.ambient_dim, self.basis.iter().chain(&other.basis).cloned())
    }

    pub(crate) fn meet(&self, other: &Subspace) -> Subspace {
        debug_assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_subspace_of(other) {
            return self.clone();
        }
        if other.is_subspace_of(self) {
            return other.clone();
        }
        // x = sum c_i u_i lies in W iff it is orthogonal to every annihilator vector of W
        let ann = other.annihilator();
        let f = self.field;
        let mut m = Matrix::zeros(f, ann.dim(), self.dim());
        for (k, a) in ann.basis.iter().enumerate() {
            for (i, u) in self.basis.iter().enumerate() {
                let dot = a.iter().zip(u).fold(0, |acc, (&x, &y)| f.mul_add(acc, x, y));
                m.set(k, i, dot);
            }
        }
        let (_, coeffs) = rank_and_kernel(&m);
        self.combine(&coeffs)
    }

    /// Vectors `sum c_i b_i` for each coefficient vector `c` in `coeffs`.
    pub(crate) fn combine(&self, coeffs: &Subspace) -> Subspace {
        let f = self.field;
        let vectors = coeffs.basis.iter().map(|c| {
            let mut v = vec![0; self.ambient_dim];
            for (&ci, b) in c.iter().zip(&self.basis) {
                if ci != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = f.mul_add(*x, ci, y);
                    }
                }
            }
            v
        });
        Subspace::span(f, self.ambient_dim, vectors)
    }

    /// `{y : b . y = 0 for every basis vector b}` under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        let m = Matrix::from_fp_rows(self.field, self.ambient_dim, &self.basis);
        rank_and_kernel(&m).1
    }

    /// Basis of a complement of `sub` inside `self`, chosen canonically.
    pub fn complement_basis(&self, sub: &Subspace) -> Vec<Vec<Fp>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for b in &self.basis {
            if !acc.contains(b) {
                out.push(b.clone());
                acc = acc.join(&Subspace::span(self.field, self.ambient_dim, [b.clone()]));
            }
        }
        out
    }

    /// All `p^dim` vectors in lexicographic order of their coordinates.
    ///
    /// With an RREF basis, the coordinate at the i-th pivot equals the i-th
    /// coefficient, so counting through coefficient tuples in lex order
    /// yields the vectors in lex order.
    pub fn vectors(&self) -> SubspaceVectors<'_> {
        SubspaceVectors { space: self, coeffs: vec![0; self.dim()], current: vec![0; self.ambient_dim], done: false }
    }

    /// Restricts a subspace of GF(p)^n to its first `k` coordinates, assuming
    /// the last `n - k` unit vectors all lie in it.
    pub(crate) fn truncate_leading(&self, k: usize) -> Subspace {
        let basis: Vec<Vec<Fp>> = self
            .basis
            .iter()
            .filter(|r| r[..k].iter().any(|&x| x != 0))
            .map(|r| r[..k].to_vec())
            .collect();
        Subspace { field: self.field, ambient_dim: k, basis }
    }

    /// `U (+) GF(p)^extra`: pads each basis row with zeros and appends the new
    /// unit vectors. The result is still in RREF.
    pub(crate) fn extend_full(&self, extra: usize) -> Subspace {
        let n = self.ambient_dim + extra;
        let mut basis: Vec<Vec<Fp>> = self
            .basis
            .iter()
            .map(|r| {
                let mut v = r.clone();
                v.resize(n, 0);
                v
            })
            .collect();
        for k in 0..extra {
            let mut v = vec![0; n];
            v[self.ambient_dim + k] = 1;
            basis.push(v);
        }
        Subspace { field: self.field, ambient_dim: n, basis }
    }
}

pub struct SubspaceVectors<'a> {
    space: &'a Subspace,
    coeffs: Vec<Fp>,
    current: Vec<Fp>,
    done: bool,
}

impl Iterator for SubspaceVectors<'_> {
    type Item = Vec<Fp>;

    fn next(&mut self) -> Option<Vec<Fp>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let f = self.space.field;
        let p = f.p();
        // odometer on the last coefficient; incrementing coefficient i adds basis row i
        let mut i = self.coeffs.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            let row = &self.space.basis[i];
            for (x, &r) in self.current.iter_mut().zip(row) {
                *x = f.add(*x, r);
            }
            self.coeffs[i] += 1;
            if self.coeffs[i] < p {
                break;
            }
            self.coeffs[i] = 0;
        }
        Some(out)
    }
}

/// Big-endian index of a coordinate vector: lex order on vectors equals
/// numeric order on indices.
pub fn coords_to_index(v: &[Fp], p: u32) -> usize {
    v.iter().fold(0usize, |acc, &c| acc * p as usize + c as usize)
}

pub fn index_to_coords(mut idx: usize, p: u32, len: usize) -> Vec<Fp> {
    let mut v = vec![0; len];
    for x in v.iter_mut().rev() {
        *x = (idx % p as usize) as Fp;
        idx /= p as usize;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn unit(n: usize, i: usize) -> Vec<Fp> {
        let mut v = vec![0; n];
        v[i] = 1;
        v
    }

    #[test]
    fn zero_matrix_kernel_is_ambient() {
        let m = Matrix::zeros(gf(3), 2, 2);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!((r, k.dim()), (0, 2));
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let m = Matrix::identity(gf(5), 3);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!((r, k.dim()), (3, 0));
    }

    #[test]
    fn rank_one_kernel_matches_exhaustive_scan() {
        let f = gf(5);
        let m = Matrix::from_rows(f, 2, &[[1, 2], [2, 4]]).unwrap();
        let (r, k) = rank_and_kernel(&m);
        assert_eq!(r, 1);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[3, 1]));
        // oracle: all 25 vectors
        let brute: Vec<Vec<Fp>> = (0..25)
            .map(|i| index_to_coords(i, 5, 2))
            .filter(|v| m.apply(v).iter().all(|&x| x == 0))
            .collect();
        assert_eq!(brute, vec![vec![0, 0], vec![1, 2], vec![2, 4], vec![3, 1], vec![4, 3]]);
        assert_eq!(k.vectors().collect::<Vec<_>>(), brute);
    }

    #[test]
    fn empty_matrix() {
        let m = Matrix::zeros(gf(3), 0, 4);
        let (r, k) = rank_and_kernel(&m);
        assert_eq!((r, k.dim()), (0, 4));
    }

    #[test]
    fn sum_and_intersection_basics() {
        let f = gf(3);
        let u = Subspace::span(f, 2, [vec![1, 0]]);
        let w = Subspace::span(f, 2, [vec![1, 1]]);
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersection(&u).unwrap(), u);
        assert_eq!(u.sum(&w).unwrap().dim(), 2);
        assert_eq!(u.intersection(&w).unwrap().dim(), 0);
        let other = Subspace::zero(f, 3);
        assert!(matches!(u.sum(&other), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(u.intersection(&other), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn intersection_of_coordinate_planes_matches_pair_enumeration() {
        let f = gf(3);
        let u = Subspace::span(f, 4, [unit(4, 0), unit(4, 1)]);
        let w = Subspace::span(f, 4, [unit(4, 1), unit(4, 2)]);
        let mut common = Vec::new();
        for x in u.vectors() {
            for y in w.vectors() {
                if x == y {
                    common.push(x.clone());
                }
            }
        }
        let expected = Subspace::span(f, 4, [unit(4, 1)]);
        assert_eq!(u.intersection(&w).unwrap(), expected);
        assert_eq!(common, expected.vectors().collect::<Vec<_>>());
    }

    #[test]
    fn vectors_are_in_lex_order() {
        let f = gf(3);
        let s = Subspace::span(f, 3, [vec![1, 2, 0], vec![0, 1, 1]]);
        let vs: Vec<Vec<Fp>> = s.vectors().collect();
        assert_eq!(vs.len(), 9);
        let idx: Vec<usize> = vs.iter().map(|v| coords_to_index(v, 3)).collect();
        let mut sorted = idx.clone();
        sorted.sort();
        assert_eq!(idx, sorted);
        assert!(vs.iter().all(|v| s.contains(v)));
    }

    #[test]
    fn complement_and_extension() {
        let f = gf(3);
        let big = Subspace::full(f, 3);
        let small = Subspace::span(f, 3, [vec![1, 1, 0]]);
        let comp = big.complement_basis(&small);
        assert_eq!(comp.len(), 2);
        let back = small.join(&Subspace::span(f, 3, comp));
        assert_eq!(back, big);
        let ext = small.extend_full(2);
        assert_eq!(ext.dim(), 3);
        assert_eq!(ext, Subspace::span(f, 5, ext.basis().to_vec()));
        assert_eq!(ext.truncate_leading(3), small);
    }
}
