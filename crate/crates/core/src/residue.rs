//! The residue field `R / rad(R)` of a local ring, as a small table field.

use crate::error::{Error, Result};
use crate::ring::{radical, Elem, FiniteRing};

/// Index of a residue class; classes are numbered in increasing order of
/// their smallest ring element, so `0` is the zero class.
pub type Residue = u16;

#[derive(Debug, Clone)]
pub struct ResidueField {
    reps: Vec<Elem>,
    class_of: Vec<Residue>,
    add: Vec<Residue>,
    mul: Vec<Residue>,
    neg: Vec<Residue>,
    inv: Vec<Residue>,
    one: Residue,
}

impl ResidueField {
    /// Fails with `NotChainRing` when `R / rad(R)` is not a field.
    pub fn of(ring: &FiniteRing) -> Result<Self> {
        let rad = radical(ring);
        let mut rep_of = vec![Elem::MAX; ring.order()];
        for x in ring.elements() {
            if rep_of[x as usize] != Elem::MAX {
                continue;
            }
            for &r in rad.elements() {
                rep_of[ring.add(x, r) as usize] = x;
            }
        }
        let mut reps: Vec<Elem> = rep_of.clone();
        reps.sort_unstable();
        reps.dedup();
        let q = reps.len();
        let mut class_of = vec![0 as Residue; ring.order()];
        for x in ring.elements() {
            class_of[x as usize] = reps.binary_search(&rep_of[x as usize]).unwrap() as Residue;
        }
        let op = |f: &dyn Fn(Elem, Elem) -> Elem| -> Vec<Residue> {
            (0..q * q)
                .map(|t| class_of[f(reps[t / q], reps[t % q]) as usize])
                .collect()
        };
        let add = op(&|a, b| ring.add(a, b));
        let mul = op(&|a, b| ring.mul(a, b));
        let neg = reps.iter().map(|&a| class_of[ring.neg(a) as usize]).collect();
        let one = class_of[ring.one() as usize];
        let not_field = || Error::NotChainRing(ring.spec().to_string());
        let mut inv = vec![0; q];
        for a in 1..q {
            inv[a] = (1..q)
                .find(|&b| mul[a * q + b] == one)
                .ok_or_else(not_field)? as Residue;
        }
        if (0..q).any(|a| (0..q).any(|b| mul[a * q + b] != mul[b * q + a])) {
            return Err(not_field());
        }
        Ok(ResidueField { reps, class_of, add, mul, neg, inv, one })
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn one(&self) -> Residue {
        self.one
    }

    #[inline]
    pub fn residue(&self, x: Elem) -> Residue {
        self.class_of[x as usize]
    }

    /// Smallest ring element of the class.
    pub fn lift(&self, a: Residue) -> Elem {
        self.reps[a as usize]
    }

    #[inline]
    pub fn add(&self, a: Residue, b: Residue) -> Residue {
        self.add[a as usize * self.order() + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: Residue, b: Residue) -> Residue {
        self.mul[a as usize * self.order() + b as usize]
    }

    pub fn neg(&self, a: Residue) -> Residue {
        self.neg[a as usize]
    }

    pub fn sub(&self, a: Residue, b: Residue) -> Residue {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: Residue) -> Residue {
        self.inv[a as usize]
    }

    pub fn dot(&self, a: &[Residue], b: &[Residue]) -> Residue {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    pub fn residues(&self, v: &[Elem]) -> Vec<Residue> {
        v.iter().map(|&x| self.residue(x)).collect()
    }

    /// Canonical representative of the projective point `vF`: the
    /// lexicographically smallest nonzero scalar multiple.
    pub fn normalize(&self, v: &[Residue]) -> Vec<Residue> {
        (1..self.order() as Residue)
            .map(|c| v.iter().map(|&x| self.mul(x, c)).collect::<Vec<_>>())
            .min()
            .unwrap_or_else(|| v.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    #[test]
    fn residue_fields() {
        let z9 = build_ring(&"Z/9".parse().unwrap()).unwrap();
        let f = ResidueField::of(&z9).unwrap();
        assert_eq!(f.order(), 3);
        assert_eq!(f.residue(4), 1);
        assert_eq!(f.lift(2), 2);
        assert_eq!(f.mul(2, 2), 1);

        let chain = build_ring(&"F/4[u;frob^1]".parse().unwrap()).unwrap();
        let f = ResidueField::of(&chain).unwrap();
        assert_eq!(f.order(), 4);
        // Lifts are the constant polynomials a0 + 0u.
        assert_eq!((0..4).map(|a| f.lift(a)).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn non_local_ring_is_rejected() {
        let r = build_ring(&"F/2xF/2".parse().unwrap()).unwrap();
        assert!(ResidueField::of(&r).is_err());
    }

    #[test]
    fn normalization_picks_smallest_multiple() {
        let f7 = build_ring(&"F/7".parse().unwrap()).unwrap();
        let f = ResidueField::of(&f7).unwrap();
        assert_eq!(f.normalize(&[0, 3, 5]), vec![0, 1, 4]);
    }
}
