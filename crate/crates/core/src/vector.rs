//! Indexing of vectors in `R^k` by big-endian mixed radix, so index order is
//! lexicographic order under element-index order.

use crate::error::{Error, Result};
use crate::ring::{Elem, FiniteRing};

/// Default cap on the number of vectors any enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VectorIndexer {
    base: usize,
    len: usize,
    count: usize,
}

impl VectorIndexer {
    pub fn new(ring: &FiniteRing, len: usize, budget: u128) -> Result<Self> {
        let requested = (ring.order() as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
        if requested > budget || requested > u128::from(u32::MAX) {
            return Err(Error::BudgetExceeded { requested, budget });
        }
        Ok(VectorIndexer { base: ring.order(), len, count: requested as usize })
    }

    /// Number of vectors, `|R|^len`.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn decode_into(&self, mut index: usize, out: &mut [Elem]) {
        for slot in out.iter_mut().rev() {
            *slot = (index % self.base) as Elem;
            index /= self.base;
        }
    }

    pub fn decode(&self, index: usize) -> Vec<Elem> {
        let mut v = vec![0; self.len];
        self.decode_into(index, &mut v);
        v
    }

    #[inline]
    pub fn encode(&self, v: &[Elem]) -> usize {
        v.iter().fold(0usize, |acc, &x| acc * self.base + x as usize)
    }

    /// Index of `a + b`.
    #[inline]
    pub fn add(&self, ring: &FiniteRing, mut a: usize, mut b: usize) -> usize {
        let (mut out, mut scale) = (0usize, 1usize);
        for _ in 0..self.len {
            let s = ring.add((a % self.base) as Elem, (b % self.base) as Elem);
            out += s as usize * scale;
            scale *= self.base;
            a /= self.base;
            b /= self.base;
        }
        out
    }

    /// Index of `a - b`.
    #[inline]
    pub fn sub(&self, ring: &FiniteRing, mut a: usize, mut b: usize) -> usize {
        let (mut out, mut scale) = (0usize, 1usize);
        for _ in 0..self.len {
            let s = ring.sub((a % self.base) as Elem, (b % self.base) as Elem);
            out += s as usize * scale;
            scale *= self.base;
            a /= self.base;
            b /= self.base;
        }
        out
    }
}
