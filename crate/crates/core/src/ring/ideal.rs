use std::collections::HashSet;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::ring::{Elem, FiniteRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
    TwoSided,
}

/// A one- or two-sided ideal, stored as its sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ideal {
    side: Side,
    elements: Vec<Elem>,
    generator: Option<Elem>,
}

impl Ideal {
    fn from_set(side: Side, set: &FixedBitSet, generator: Option<Elem>) -> Self {
        Ideal { side, elements: set.ones().map(|x| x as Elem).collect(), generator }
    }

    /// Wraps a sorted element list already known to be an ideal.
    pub(crate) fn from_elements(side: Side, elements: Vec<Elem>) -> Self {
        Ideal { side, elements, generator: None }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True for the zero ideal.
    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn generator(&self) -> Option<Elem> {
        self.generator
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub(crate) fn to_bitset(&self, order: usize) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(order);
        for &x in &self.elements {
            set.insert(x as usize);
        }
        set
    }
}

fn principal_set(ring: &FiniteRing, x: Elem, side: Side) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(ring.order());
    match side {
        Side::Left => ring.elements().for_each(|r| set.insert(ring.mul(r, x) as usize)),
        Side::Right => ring.elements().for_each(|r| set.insert(ring.mul(x, r) as usize)),
        Side::TwoSided => {
            let products: Vec<Elem> = ring
                .elements()
                .flat_map(|r| ring.elements().map(move |s| (r, s)))
                .map(|(r, s)| ring.mul(ring.mul(r, x), s))
                .collect();
            let mut gens = FixedBitSet::with_capacity(ring.order());
            products.iter().for_each(|&p| gens.insert(p as usize));
            set = additive_closure(ring, &gens);
        }
    }
    set
}

/// Smallest additive subgroup containing `gens`.
fn additive_closure(ring: &FiniteRing, gens: &FixedBitSet) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(ring.order());
    set.insert(0);
    let mut frontier = vec![0 as Elem];
    let gens: Vec<Elem> = gens.ones().map(|g| g as Elem).collect();
    while let Some(a) = frontier.pop() {
        for &g in &gens {
            let b = ring.add(a, g);
            if !set.put(b as usize) {
                frontier.push(b);
            }
        }
    }
    set
}

/// Elementwise sum `{a + b}` of two additive subgroups.
fn subgroup_sum(ring: &FiniteRing, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut set = FixedBitSet::with_capacity(ring.order());
    for x in a.ones() {
        for y in b.ones() {
            set.insert(ring.add(x as Elem, y as Elem) as usize);
        }
    }
    set
}

/// `Rx` (left), `xR` (right) or `RxR` (two-sided) with generator `x`.
pub fn principal_ideal(ring: &FiniteRing, x: Elem, side: Side) -> Ideal {
    Ideal::from_set(side, &principal_set(ring, x, side), Some(x))
}

/// Sum of two ideals of the same side.
pub fn ideal_sum(ring: &FiniteRing, a: &Ideal, b: &Ideal) -> Ideal {
    let set = subgroup_sum(ring, &a.to_bitset(ring.order()), &b.to_bitset(ring.order()));
    Ideal::from_set(a.side, &set, None)
}

fn absorbs(ring: &FiniteRing, set: &FixedBitSet, side: Side) -> bool {
    set.ones().all(|x| {
        ring.elements().all(|r| {
            let left = set.contains(ring.mul(r, x as Elem) as usize);
            let right = set.contains(ring.mul(x as Elem, r) as usize);
            match side {
                Side::Left => left,
                Side::Right => right,
                Side::TwoSided => left && right,
            }
        })
    })
}

/// Every left (or right) ideal, as sums of principal ones, ordered by size
/// and then by element list.
fn one_sided_ideals(ring: &FiniteRing, side: Side) -> Vec<Ideal> {
    let principals: Vec<FixedBitSet> = {
        let mut seen = HashSet::new();
        ring.elements()
            .map(|x| principal_set(ring, x, side))
            .filter(|s| seen.insert(s.clone()))
            .collect()
    };
    let mut zero = FixedBitSet::with_capacity(ring.order());
    zero.insert(0);
    let mut found: HashSet<FixedBitSet> = HashSet::from([zero.clone()]);
    let mut queue = vec![zero];
    while let Some(ideal) = queue.pop() {
        for p in &principals {
            if p.is_subset(&ideal) {
                continue;
            }
            let sum = subgroup_sum(ring, &ideal, p);
            if found.insert(sum.clone()) {
                queue.push(sum);
            }
        }
    }
    let mut ideals: Vec<Ideal> = found
        .iter()
        .map(|s| {
            let generator = (0..ring.order())
                .find(|&g| s.contains(g) && principal_set(ring, g as Elem, side) == *s)
                .map(|g| g as Elem);
            Ideal::from_set(side, s, generator)
        })
        .collect();
    ideals.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements.cmp(&b.elements)));
    ideals
}

pub fn left_ideals(ring: &FiniteRing) -> Vec<Ideal> {
    one_sided_ideals(ring, Side::Left)
}

pub fn right_ideals(ring: &FiniteRing) -> Vec<Ideal> {
    one_sided_ideals(ring, Side::Right)
}

pub fn two_sided_ideals(ring: &FiniteRing) -> Vec<Ideal> {
    left_ideals(ring)
        .into_iter()
        .filter(|i| absorbs(ring, &i.to_bitset(ring.order()), Side::TwoSided))
        .map(|i| Ideal { side: Side::TwoSided, generator: None, ..i })
        .collect()
}

/// Jacobson radical: all `x` with `1 + rx` a unit for every `r`.
pub fn radical(ring: &FiniteRing) -> Ideal {
    let elements: Vec<Elem> = ring
        .elements()
        .filter(|&x| {
            ring.elements()
                .all(|r| ring.is_unit(ring.add(ring.one(), ring.mul(r, x))))
        })
        .collect();
    let generator = elements.iter().copied().find(|&g| {
        principal_ideal(ring, g, Side::TwoSided).elements == elements
    });
    Ideal { side: Side::TwoSided, elements, generator }
}

/// Sum of the minimal left (or right) ideals. The generator is set when the
/// socle is principal on that side.
pub fn socle(ring: &FiniteRing, side: Side) -> Ideal {
    let side = if side == Side::TwoSided { Side::Left } else { side };
    let mut principals: Vec<FixedBitSet> = Vec::new();
    for x in ring.elements().skip(1) {
        let s = principal_set(ring, x, side);
        if !principals.contains(&s) {
            principals.push(s);
        }
    }
    // A nonzero left ideal contains a nonzero principal one, so minimality
    // among principal ideals is minimality among all ideals.
    let minimal: Vec<&FixedBitSet> = principals
        .iter()
        .filter(|s| !principals.iter().any(|t| t != *s && t.is_subset(s)))
        .collect();
    let mut soc = FixedBitSet::with_capacity(ring.order());
    soc.insert(0);
    for m in minimal {
        soc = subgroup_sum(ring, &soc, m);
    }
    let generator = soc
        .ones()
        .find(|&g| principal_set(ring, g as Elem, side) == soc)
        .map(|g| g as Elem);
    Ideal::from_set(side, &soc, generator)
}

/// Outcome of the socle-based Frobenius test.
#[derive(Debug, Clone)]
pub struct FrobeniusVerdict {
    pub frobenius: bool,
    pub left_socle: Ideal,
    pub right_socle: Ideal,
}

impl FrobeniusVerdict {
    /// Generators of the left and right socle when both are principal.
    pub fn generators(&self) -> Option<(Elem, Elem)> {
        Some((self.left_socle.generator()?, self.right_socle.generator()?))
    }
}

/// Frobenius iff the left socle is a principal left ideal and the right
/// socle is a principal right ideal.
pub fn is_frobenius(ring: &FiniteRing) -> FrobeniusVerdict {
    let left_socle = socle(ring, Side::Left);
    let right_socle = socle(ring, Side::Right);
    let frobenius = left_socle.generator().is_some() && right_socle.generator().is_some();
    FrobeniusVerdict { frobenius, left_socle, right_socle }
}

/// Length of the ring as a chain ring, or `None` if its left ideals are not
/// totally ordered by inclusion.
pub fn chain_length(ring: &FiniteRing) -> Option<usize> {
    let ideals = left_ideals(ring);
    ideals
        .windows(2)
        .all(|w| w[0].is_subset_of(&w[1]))
        .then(|| ideals.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    fn ring(s: &str) -> FiniteRing {
        build_ring(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn principal_ideals() {
        assert_eq!(principal_ideal(&ring("Z/4"), 2, Side::Left).elements(), &[0, 2]);
        assert_eq!(principal_ideal(&ring("Z/9"), 3, Side::Left).elements(), &[0, 3, 6]);
        // X is index 2 in F2XY; RX = {0, X}.
        let i = principal_ideal(&ring("T:F2XY"), 2, Side::Left);
        assert_eq!(i.elements(), &[0, 2]);
        assert_eq!(i.generator(), Some(2));
    }

    #[test]
    fn radicals_and_socles() {
        assert_eq!(radical(&ring("Z/9")).elements(), &[0, 3, 6]);
        let f2xy = ring("T:F2XY");
        assert_eq!(radical(&f2xy).elements(), &[0, 2, 4, 6]);
        let soc = socle(&f2xy, Side::Left);
        assert_eq!(soc.elements(), &[0, 2, 4, 6]);
        assert_eq!(soc.generator(), None);
        assert_eq!(socle(&ring("F/4"), Side::Left).len(), 4);
    }

    #[test]
    fn frobenius_verdicts() {
        assert!(is_frobenius(&ring("Z/4")).frobenius);
        assert!(!is_frobenius(&ring("T:F2XY")).frobenius);
        let v = is_frobenius(&ring("F/2xF/2"));
        assert!(v.frobenius);
        assert_eq!(v.generators(), Some((3, 3)));
    }

    #[test]
    fn ideal_census() {
        assert_eq!(left_ideals(&ring("Z/4")).len(), 3);
        assert_eq!(left_ideals(&ring("F/2xF/2")).len(), 4);
        assert_eq!(left_ideals(&ring("T:F2XY")).len(), 6);
        let two_sided_of_size_2 = |s: &str| {
            two_sided_ideals(&ring(s)).iter().filter(|i| i.len() == 2).count()
        };
        assert_eq!(two_sided_of_size_2("Z/4"), 1);
        assert_eq!(two_sided_of_size_2("F/2xF/2"), 2);
    }

    #[test]
    fn chain_lengths() {
        assert_eq!(chain_length(&ring("Z/9")), Some(2));
        assert_eq!(chain_length(&ring("F/4[u;frob^1]")), Some(2));
        assert_eq!(chain_length(&ring("Z/8")), Some(3));
        assert_eq!(chain_length(&ring("F/5")), Some(1));
        assert_eq!(chain_length(&ring("F/2xF/2")), None);
    }
}
