//! Finite posets, their Möbius function, and Möbius inversion.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ring::{principal_ideal, Elem, FiniteRing, Ideal, Side};
use crate::Rational;

/// A finite poset on `0..len` given by its order relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    len: usize,
    leq: Vec<bool>,
}

impl FinitePoset {
    /// Builds a poset from `leq(i, j)`, rejecting relations that are not
    /// reflexive, antisymmetric and transitive.
    pub fn new(len: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let table: Vec<bool> = (0..len * len).map(|t| leq(t / len, t % len)).collect();
        let poset = FinitePoset { len, leq: table };
        poset.validate()?;
        Ok(poset)
    }

    fn validate(&self) -> Result<()> {
        for a in 0..self.len {
            if !self.leq(a, a) {
                return Err(Error::NotAPartialOrder(format!("{a} is not <= itself")));
            }
            for b in 0..self.len {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(Error::NotAPartialOrder(format!("{a} <= {b} <= {a}")));
                }
                for c in 0..self.len {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        return Err(Error::NotAPartialOrder(format!("{a} <= {b} <= {c} but not {a} <= {c}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.len + b]
    }

    /// Elements sorted so that `a < b` implies `a` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len).collect();
        let below = |x: usize| (0..self.len).filter(|&y| self.leq(y, x)).count();
        order.sort_by_key(|&x| (below(x), x));
        order
    }

    /// `g(x) = sum_{y <= x} f(y)`.
    pub fn cumulative(&self, f: &[Rational]) -> Vec<Rational> {
        (0..self.len)
            .map(|x| (0..self.len).filter(|&y| self.leq(y, x)).map(|y| f[y]).sum())
            .collect()
    }
}

/// Values `mu(y, x)` for every pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoebiusTable {
    len: usize,
    values: Vec<i64>,
}

impl MoebiusTable {
    #[inline]
    pub fn get(&self, y: usize, x: usize) -> i64 {
        self.values[y * self.len + x]
    }
}

/// Möbius function by the recursion `mu(x,x) = 1`,
/// `mu(y,x) = -sum_{y < t <= x} mu(t,x)` for `y < x`, and 0 otherwise.
pub fn moebius(poset: &FinitePoset) -> MoebiusTable {
    let n = poset.len();
    let mut values = vec![0i64; n * n];
    let order = poset.linear_extension();
    for &x in &order {
        // Walk downwards so every t with y < t <= x is already done.
        for &y in order.iter().rev() {
            if !poset.leq(y, x) {
                continue;
            }
            values[y * n + x] = if y == x {
                1
            } else {
                -(0..n)
                    .filter(|&t| t != y && poset.leq(y, t) && poset.leq(t, x))
                    .map(|t| values[t * n + x])
                    .sum::<i64>()
            };
        }
    }
    MoebiusTable { len: n, values }
}

/// Recovers `f` from `g(x) = sum_{y <= x} f(y)` as
/// `f(x) = sum_{y <= x} g(y) mu(y, x)`.
pub fn moebius_invert(poset: &FinitePoset, g: &[Rational]) -> Vec<Rational> {
    let mu = moebius(poset);
    (0..poset.len())
        .map(|x| {
            (0..poset.len())
                .filter(|&y| poset.leq(y, x))
                .map(|y| g[y] * mu.get(y, x))
                .sum()
        })
        .collect()
}

/// The poset of principal left ideals `Rx` ordered by inclusion.
#[derive(Debug, Clone)]
pub struct IdealPoset {
    pub poset: FinitePoset,
    /// Distinct principal left ideals, sorted by size and then contents.
    pub ideals: Vec<Ideal>,
    /// Index into `ideals` of `Rx` for every element `x`.
    pub ideal_of: Vec<usize>,
}

impl IdealPoset {
    /// Index of the zero ideal.
    pub fn bottom(&self) -> usize {
        self.ideal_of[0]
    }
}

pub fn principal_ideal_poset(ring: &FiniteRing) -> IdealPoset {
    let all: Vec<Ideal> = ring
        .elements()
        .map(|x| principal_ideal(ring, x, Side::Left))
        .collect();
    let mut ideals: Vec<Ideal> = Vec::new();
    for i in &all {
        if !ideals.iter().any(|j| j.elements() == i.elements()) {
            ideals.push(i.clone());
        }
    }
    ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements().cmp(b.elements())));
    let lookup: HashMap<&[Elem], usize> = ideals
        .iter()
        .enumerate()
        .map(|(k, i)| (i.elements(), k))
        .collect();
    let ideal_of = all.iter().map(|i| lookup[i.elements()]).collect();
    let poset = FinitePoset::new(ideals.len(), |a, b| ideals[a].is_subset_of(&ideals[b]))
        .expect("inclusion is a partial order");
    IdealPoset { poset, ideals, ideal_of }
}
