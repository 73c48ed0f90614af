//! Fully materialized small finite rings.
//!
//! Every ring element is a canonical index `0..order`. The index is the
//! little-endian mixed-radix encoding of the element's additive coordinates,
//! so addition is coordinatewise and `0` is always the zero element.
//! Multiplication is a precomputed table, verified exhaustively when the ring
//! is built.

mod build;
pub mod character;
pub mod encoding;
pub mod field;
pub mod ideal;
pub mod spec;

pub use build::{build_ring, build_ring_with_cap, DEFAULT_ORDER_CAP};
pub use character::{characters, generating_character, Character};
pub use ideal::{is_frobenius, principal_ideal, radical, socle, FrobeniusVerdict, Ideal, Side};
pub use spec::{RingSpec, TableRing};

use crate::error::{Error, Result};

/// Canonical element index.
pub type Elem = u16;

#[derive(Debug, Clone)]
pub struct FiniteRing {
    spec: RingSpec,
    order: usize,
    moduli: Vec<u32>,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    neg: Vec<Elem>,
    one: Elem,
    units: Vec<Elem>,
    inverse: Vec<Option<Elem>>,
    exponent: u32,
}

impl FiniteRing {
    /// Materializes a ring from its additive coordinate structure and a
    /// multiplication rule, then checks the ring axioms on every triple.
    pub(crate) fn from_parts(
        spec: RingSpec,
        moduli: Vec<u32>,
        one: Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Result<Self> {
        let order: usize = moduli.iter().map(|&m| m as usize).product();
        let coords: Vec<Vec<u32>> = (0..order).map(|x| split_coords(&moduli, x)).collect();
        let join = |c: &[u32]| join_coords(&moduli, c) as Elem;

        let mut add = vec![0; order * order];
        let mut neg = vec![0; order];
        let mut sum = vec![0u32; moduli.len()];
        for a in 0..order {
            for b in 0..order {
                for (j, m) in moduli.iter().enumerate() {
                    sum[j] = (coords[a][j] + coords[b][j]) % m;
                }
                add[a * order + b] = join(&sum);
            }
            for (j, m) in moduli.iter().enumerate() {
                sum[j] = (m - coords[a][j]) % m;
            }
            neg[a] = join(&sum);
        }

        let mut table = vec![0; order * order];
        for a in 0..order {
            for b in 0..order {
                table[a * order + b] = mul(a as Elem, b as Elem);
            }
        }

        let exponent = moduli
            .iter()
            .fold(1u32, |acc, &m| num_integer::lcm(acc, m));
        let mut ring = FiniteRing {
            spec,
            order,
            moduli,
            add,
            mul: table,
            neg,
            one,
            units: Vec::new(),
            inverse: vec![None; order],
            exponent,
        };
        ring.check_axioms()?;
        ring.find_units();
        Ok(ring)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.order;
        for a in 0..n as Elem {
            if self.mul(a, self.one) != a || self.mul(self.one, a) != a {
                return Err(Error::NotARing(format!("{} is not a two-sided identity", self.one)));
            }
            for b in 0..n as Elem {
                let ab = self.mul(a, b);
                for c in 0..n as Elem {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotARing(format!("associativity fails at ({a},{b},{c})")));
                    }
                    let bc = self.add(b, c);
                    if self.mul(a, bc) != self.add(ab, self.mul(a, c)) {
                        return Err(Error::NotARing(format!("left distributivity fails at ({a},{b},{c})")));
                    }
                    if self.mul(bc, a) != self.add(self.mul(b, a), self.mul(c, a)) {
                        return Err(Error::NotARing(format!("right distributivity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    fn find_units(&mut self) {
        for u in 0..self.order as Elem {
            let inv = (0..self.order as Elem)
                .find(|&v| self.mul(u, v) == self.one && self.mul(v, u) == self.one);
            if let Some(v) = inv {
                self.units.push(u);
                self.inverse[u as usize] = Some(v);
            }
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        0..self.order as Elem
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a as usize * self.order + b as usize]
    }

    pub fn units(&self) -> &[Elem] {
        &self.units
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse[a as usize].is_some()
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.inverse[a as usize]
    }

    /// Exponent of the additive group (equal to the characteristic).
    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Moduli of the additive coordinates.
    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn coords(&self, x: Elem) -> Vec<u32> {
        split_coords(&self.moduli, x as usize)
    }

    /// Dot product `sum_i a_i b_i` of two equally long vectors.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// True when every element commutes with every other.
    pub fn is_commutative(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Human-readable element name (compact JSON encoding).
    pub fn name(&self, x: Elem) -> String {
        encoding::encode(self, x).to_string()
    }
}

pub(crate) fn split_coords(moduli: &[u32], mut x: usize) -> Vec<u32> {
    moduli
        .iter()
        .map(|&m| {
            let c = (x % m as usize) as u32;
            x /= m as usize;
            c
        })
        .collect()
}

pub(crate) fn join_coords(moduli: &[u32], coords: &[u32]) -> usize {
    coords
        .iter()
        .zip(moduli)
        .rev()
        .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
}
