//! Prime fields GF(p) and extension fields GF(p^a) given by a reduction
//! polynomial. Extension elements are coefficient vectors `c_0 + c_1 x + ...`.

use crate::error::{Error, Result};

/// A residue mod p, always kept in `0..p`.
pub type Fp = u32;

/// Largest extension degree accepted by [`ExtField::new`].
pub const MAX_EXTENSION_DEGREE: usize = 8;
/// Largest field order accepted by [`ExtField::new`].
pub const MAX_FIELD_ORDER: u64 = 6561;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// If `n = p^k` with `p` prime and `k >= 1`, returns `(p, k)`.
pub fn prime_power(n: u64) -> Option<(u32, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let mut rest = n;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

/// Exact base-`p` logarithm of `n`, if `n` is a power of `p`.
pub fn log_p(p: u32, n: u64) -> Option<u32> {
    let p = p as u64;
    let mut rest = n;
    let mut k = 0;
    while rest > 1 {
        if rest % p != 0 {
            return None;
        }
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some(k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if is_prime(p as u64) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p as u64))
        }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, x: i64) -> Fp {
        x.rem_euclid(self.p as i64) as Fp
    }

    #[inline]
    pub fn add(&self, a: Fp, b: Fp) -> Fp {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Fp, b: Fp) -> Fp {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Fp) -> Fp {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Fp, b: Fp) -> Fp {
        ((a as u64 * b as u64) % self.p as u64) as Fp
    }

    pub fn pow(&self, mut a: Fp, mut e: u64) -> Fp {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: Fp) -> Fp {
        assert!(a % self.p != 0, "inverse of zero in GF({})", self.p);
        self.pow(a, self.p as u64 - 2)
    }

    /// `a + c*b`, the row-operation kernel.
    #[inline]
    pub fn mul_add(&self, a: Fp, c: Fp, b: Fp) -> Fp {
        ((a as u64 + c as u64 * b as u64) % self.p as u64) as Fp
    }
}

/// Polynomial remainder of `num` by a monic `den` over GF(p), little-endian.
fn poly_rem(f: &PrimeField, num: &[Fp], den: &[Fp]) -> Vec<Fp> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    debug_assert_eq!(den[dd], 1);
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in den.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(lead, c));
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(f: &PrimeField, poly: &[Fp]) -> bool {
    let deg = poly.len() - 1;
    if deg == 0 {
        return false;
    }
    let p = f.p() as u64;
    for k in 1..=deg / 2 {
        let count = p.pow(k as u32);
        for idx in 0..count {
            let mut cand = Vec::with_capacity(k + 1);
            let mut rest = idx;
            for _ in 0..k {
                cand.push((rest % p) as Fp);
                rest /= p;
            }
            cand.push(1);
            if poly_rem(f, poly, &cand).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// GF(p^a) as GF(p)[x]/(f) for a monic irreducible `f` of degree `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    degree: usize,
    modulus: Vec<Fp>,
}

impl ExtField {
    /// `modulus` lists coefficients `c_0..c_a` (little-endian); it must be monic.
    pub fn new(p: u32, modulus: Vec<i64>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let modulus: Vec<Fp> = modulus.into_iter().map(|c| base.reduce(c)).collect();
        if modulus.len() < 2 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidPolynomial("reduction polynomial must be monic".into()));
        }
        let degree = modulus.len() - 1;
        if degree > MAX_EXTENSION_DEGREE {
            return Err(Error::SizeCapExceeded {
                what: "extension degree",
                size: degree as u64,
                cap: MAX_EXTENSION_DEGREE as u64,
            });
        }
        let order = (p as u64).pow(degree as u32);
        if order > MAX_FIELD_ORDER {
            return Err(Error::SizeCapExceeded { what: "field order", size: order, cap: MAX_FIELD_ORDER });
        }
        if !is_irreducible(&base, &modulus) {
            return Err(Error::Reducible { p, poly: modulus });
        }
        Ok(ExtField { base, degree, modulus })
    }

    /// The irreducible monic polynomial of degree `a` whose coefficient
    /// vector `c_0 + c_1 p + ... + c_{a-1} p^{a-1}` is smallest.
    pub fn default_modulus(p: u32, a: usize) -> Result<Vec<Fp>> {
        let base = PrimeField::new(p)?;
        if a == 0 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        let q = (p as u64).checked_pow(a as u32).unwrap_or(u64::MAX);
        if a > MAX_EXTENSION_DEGREE || q > MAX_FIELD_ORDER {
            return Err(Error::SizeCapExceeded { what: "field order", size: q, cap: MAX_FIELD_ORDER });
        }
        for idx in 0..q {
            let mut poly = crate::algebra::index_to_coords_le(idx, p, a);
            poly.push(1);
            if is_irreducible(&base, &poly) {
                return Ok(poly);
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn with_default_modulus(p: u32, a: usize) -> Result<Self> {
        let m = Self::default_modulus(p, a)?;
        Self::new(p, m.into_iter().map(i64::from).collect())
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn p(&self) -> u32 {
        self.base.p()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[Fp] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        (self.p() as u64).pow(self.degree as u32)
    }

    pub fn zero(&self) -> Vec<Fp> {
        vec![0; self.degree]
    }

    pub fn one(&self) -> Vec<Fp> {
        let mut v = self.zero();
        v[0] = 1;
        v
    }

    /// Element with little-endian index `idx` in `0..order()`.
    pub fn element(&self, idx: u64) -> Vec<Fp> {
        crate::algebra::index_to_coords_le(idx, self.p(), self.degree)
    }

    pub fn add(&self, x: &[Fp], y: &[Fp]) -> Vec<Fp> {
        x.iter().zip(y).map(|(&a, &b)| self.base.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[Fp], y: &[Fp]) -> Vec<Fp> {
        x.iter().zip(y).map(|(&a, &b)| self.base.sub(a, b)).collect()
    }

    pub fn mul(&self, x: &[Fp], y: &[Fp]) -> Vec<Fp> {
        let f = &self.base;
        let mut prod = vec![0; 2 * self.degree - 1];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                prod[i + j] = f.mul_add(prod[i + j], a, b);
            }
        }
        let mut r = poly_rem(f, &prod, &self.modulus);
        r.resize(self.degree, 0);
        r
    }

    pub fn pow(&self, x: &[Fp], mut e: u64) -> Vec<Fp> {
        let mut acc = self.one();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: &[Fp]) -> Option<Vec<Fp>> {
        if x.iter().all(|&c| c == 0) {
            None
        } else {
            Some(self.pow(x, self.order() - 2))
        }
    }

    /// Exhaustive check of the field axioms. Associativity is cubic in the
    /// field order, so it only runs for orders up to `assoc_cap`.
    pub fn verify_axioms(&self, assoc_cap: u64) -> bool {
        let q = self.order();
        let elems: Vec<Vec<Fp>> = (0..q).map(|i| self.element(i)).collect();
        let one = self.one();
        for x in &elems {
            if self.mul(x, &one) != *x {
                return false;
            }
            if x.iter().any(|&c| c != 0) {
                match self.inv(x) {
                    Some(y) if self.mul(x, &y) == one => {}
                    _ => return false,
                }
            }
            for y in &elems {
                if self.mul(x, y) != self.mul(y, x) {
                    return false;
                }
            }
        }
        if q <= assoc_cap {
            for x in &elems {
                for y in &elems {
                    let xy = self.mul(x, y);
                    for z in &elems {
                        if self.mul(&xy, z) != self.mul(x, &self.mul(y, z)) {
                            return false;
                        }
                        if self.mul(x, &self.add(y, z)) != self.add(&xy, &self.mul(x, z)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_and_prime_powers() {
        assert!(is_prime(2) && is_prime(3) && is_prime(7919));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(0));
        assert_eq!(prime_power(729), Some((3, 6)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(24), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(log_p(3, 243), Some(5));
        assert_eq!(log_p(3, 1), Some(0));
        assert_eq!(log_p(3, 12), None);
        assert_eq!(PrimeField::new(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.add(5, 4), 2);
        assert_eq!(f.sub(2, 5), 4);
        assert_eq!(f.neg(3), 4);
        for a in 1..7 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.reduce(-1), 6);
    }

    #[test]
    fn gf9_with_x2_plus_1() {
        let k = ExtField::new(3, vec![1, 0, 1]).unwrap();
        // x * x = -1
        assert_eq!(k.mul(&[0, 1], &[0, 1]), vec![2, 0]);
        assert!(k.verify_axioms(81));
    }

    #[test]
    fn gf27_with_x3_minus_x_minus_1() {
        let k = ExtField::new(3, vec![-1, -1, 0, 1]).unwrap();
        // x^3 = x + 1
        assert_eq!(k.mul(&[0, 0, 1], &[0, 1, 0]), vec![1, 1, 0]);
        assert!(k.verify_axioms(27));
    }

    #[test]
    fn reducible_moduli_are_rejected() {
        // x^2 - 1 = (x - 1)(x + 1)
        assert!(matches!(ExtField::new(3, vec![-1, 0, 1]), Err(Error::Reducible { .. })));
        // x^2 + 1 over GF(5) has roots 2, 3
        assert!(matches!(ExtField::new(5, vec![1, 0, 1]), Err(Error::Reducible { .. })));
        // x^4 + 2x^2 + 1 = (x^2 + 1)^2 over GF(3): no roots, still reducible
        assert!(matches!(ExtField::new(3, vec![1, 0, 2, 0, 1]), Err(Error::Reducible { .. })));
        assert!(ExtField::new(3, vec![1, 0, 2]).is_err());
    }

    #[test]
    fn default_moduli() {
        assert_eq!(ExtField::default_modulus(3, 2).unwrap(), vec![1, 0, 1]);
        assert_eq!(ExtField::default_modulus(3, 3).unwrap(), vec![1, 2, 0, 1]);
        for (p, a) in [(3, 4), (5, 2), (7, 2), (2, 8)] {
            let k = ExtField::with_default_modulus(p, a).unwrap();
            assert_eq!(k.order(), (p as u64).pow(a as u32));
        }
        assert!(ExtField::with_default_modulus(3, 4).unwrap().verify_axioms(0));
        assert!(ExtField::with_default_modulus(3, 9).is_err());
    }
}
