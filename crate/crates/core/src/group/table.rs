use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, LatinViolation, Result};

/// Largest order accepted for the multiplication-table model.
pub const TABLE_ORDER_CAP: usize = 20_000;
/// Associativity is checked on every triple up to this order.
pub const EXHAUSTIVE_ASSOC_CAP: usize = 512;
/// Number of random triples checked above [`EXHAUSTIVE_ASSOC_CAP`].
pub const ASSOC_SAMPLES: usize = 1_000_000;
const ASSOC_SEED: u64 = 0x5eed_a550c;

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mul: Vec<u32>,
    inverse: Vec<u32>,
    identity: u32,
    labels: Option<Vec<String>>,
}

impl GroupTable {
    /// Validates a Cayley table: square shape, Latin square, two-sided
    /// identity and inverses, associativity.
    pub fn from_rows(rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        if n > TABLE_ORDER_CAP {
            return Err(Error::CapExceeded { what: "table order", size: n as u64, cap: TABLE_ORDER_CAP as u64 });
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::MalformedTable(format!("{} labels for order {n}", l.len())));
            }
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::MalformedTable(format!("row {i} has length {}, expected {n}", r.len())));
            }
            if let Some(&bad) = r.iter().find(|&&x| x >= n) {
                return Err(Error::MalformedTable(format!("row {i} has entry {bad} out of range")));
            }
            mul.extend(r.iter().map(|&x| x as u32));
        }

        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let x = mul[i * n + j] as usize;
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotLatinSquare(LatinViolation::Row(i)));
                }
            }
        }
        for j in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for i in 0..n {
                let x = mul[i * n + j] as usize;
                if std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NotLatinSquare(LatinViolation::Column(j)));
                }
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] as usize == x && mul[x * n + e] as usize == x))
            .ok_or(Error::NoIdentity)?;
        let mut inverse = Vec::with_capacity(n);
        for i in 0..n {
            // the Latin property gives exactly one right inverse
            let j = (0..n).find(|&j| mul[i * n + j] as usize == identity).unwrap();
            if mul[j * n + i] as usize != identity {
                return Err(Error::NoInverse(i));
            }
            inverse.push(j as u32);
        }

        let t = GroupTable { order: n, mul, inverse, identity: identity as u32, labels };
        t.check_associative()?;
        Ok(t)
    }

    /// Builds a table already known to be a group (e.g. generated from a
    /// permutation group or a bilinear model).
    pub(crate) fn from_flat_trusted(order: usize, mul: Vec<u32>, labels: Option<Vec<String>>) -> Self {
        debug_assert_eq!(mul.len(), order * order);
        let identity = (0..order).find(|&e| (0..order).all(|x| mul[e * order + x] as usize == x)).unwrap();
        let mut inverse = vec![0u32; order];
        for i in 0..order {
            for j in 0..order {
                if mul[i * order + j] as usize == identity {
                    inverse[i] = j as u32;
                    break;
                }
            }
        }
        GroupTable { order, mul, inverse, identity: identity as u32, labels }
    }

    fn check_associative(&self) -> Result<()> {
        let n = self.order;
        let check = |a: usize, b: usize, c: usize| -> Result<()> {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(Error::NotAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOC_CAP {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(ASSOC_SEED);
            for _ in 0..ASSOC_SAMPLES {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }
}
