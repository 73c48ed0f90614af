//! Homogeneous weights on finite Frobenius rings.
//!
//! Two independent constructions are provided: the character-sum formula
//! `w(x) = gamma (1 - |R^x|^-1 sum_{u unit} chi(ux))` with the sum evaluated
//! exactly, and a Möbius-inversion formula over the poset of principal left
//! ideals, `w(x) = gamma (1 - mu(0, Rx) / |R^x x|)`.

use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{moebius, principal_ideal_poset};
use crate::ring::character::generating_character;
use crate::ring::field::moebius_number;
use crate::ring::ideal::{left_ideals, two_sided_ideals};
use crate::ring::{is_frobenius, radical, Character, Elem, FiniteRing, Ideal};
use crate::Rational;

/// Exact rational weight table, extended additively to tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    gamma: Rational,
    table: Vec<Rational>,
    scaled: Vec<i64>,
    denominator: i64,
}

impl WeightFunction {
    pub fn from_table(gamma: Rational, table: Vec<Rational>) -> Self {
        let denominator = table.iter().fold(1i64, |acc, w| acc.lcm(w.denom()));
        let scaled = table
            .iter()
            .map(|w| (w * denominator).to_integer())
            .collect();
        WeightFunction { gamma, table, scaled, denominator }
    }

    pub fn gamma(&self) -> Rational {
        self.gamma
    }

    #[inline]
    pub fn weight(&self, x: Elem) -> Rational {
        self.table[x as usize]
    }

    pub fn table(&self) -> &[Rational] {
        &self.table
    }

    /// Common denominator of all table values.
    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    /// `w(x) * denominator()`, always an integer.
    #[inline]
    pub fn scaled(&self, x: Elem) -> i64 {
        self.scaled[x as usize]
    }

    pub fn word_scaled(&self, word: &[Elem]) -> i64 {
        word.iter().map(|&x| self.scaled[x as usize]).sum()
    }

    pub fn word_weight(&self, word: &[Elem]) -> Rational {
        Rational::new(self.word_scaled(word), self.denominator)
    }

    pub fn from_scaled(&self, scaled: i64) -> Rational {
        Rational::new(scaled, self.denominator)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.table.iter().skip(1).all(|w| *w > Rational::from(0))
    }
}

/// Exact value of `sum_e counts[e] zeta_n^e`, provided it is rational.
///
/// Exponents are grouped by their order `d | n`. When every primitive
/// `d`-th root carries the same coefficient, the class contributes
/// `coefficient * mu(d)`; otherwise the grouping does not certify a rational
/// value and `None` is returned.
pub fn reduce_root_sum(counts: &[u64], n: u32) -> Option<i64> {
    let mut total = 0i64;
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let mut coefficient = None;
        for e in (0..n).filter(|&e| n / e.gcd(&n) == d) {
            match coefficient {
                None => coefficient = Some(counts[e as usize]),
                Some(c) if c != counts[e as usize] => return None,
                _ => {}
            }
        }
        total += coefficient.unwrap_or(0) as i64 * moebius_number(d);
    }
    Some(total)
}

fn exponent_counts(chi: &Character, values: impl Iterator<Item = Elem>) -> Vec<u64> {
    let mut counts = vec![0u64; chi.modulus() as usize];
    for y in values {
        counts[chi.exponent(y) as usize] += 1;
    }
    counts
}

/// `sum_{u unit} chi(ux)`, exactly.
pub fn left_unit_sum(ring: &FiniteRing, chi: &Character, x: Elem) -> Result<i64> {
    let counts = exponent_counts(chi, ring.units().iter().map(|&u| ring.mul(u, x)));
    reduce_root_sum(&counts, chi.modulus()).ok_or(Error::NonRationalSum { element: x as usize })
}

/// `sum_{u unit} chi(xu)`, exactly.
pub fn right_unit_sum(ring: &FiniteRing, chi: &Character, x: Elem) -> Result<i64> {
    let counts = exponent_counts(chi, ring.units().iter().map(|&u| ring.mul(x, u)));
    reduce_root_sum(&counts, chi.modulus()).ok_or(Error::NonRationalSum { element: x as usize })
}

/// Homogeneous weight of average value `gamma` via the first generating
/// character.
pub fn homogeneous_weight(ring: &FiniteRing, gamma: Rational) -> Result<WeightFunction> {
    let chi = generating_character(ring).ok_or_else(|| Error::NotFrobenius(ring.spec().to_string()))?;
    homogeneous_weight_with(ring, &chi, gamma)
}

/// Normalized homogeneous weight (`gamma = 1`).
pub fn normalized_weight(ring: &FiniteRing) -> Result<WeightFunction> {
    homogeneous_weight(ring, Rational::from(1))
}

/// Character-sum weight for a given generating character.
pub fn homogeneous_weight_with(ring: &FiniteRing, chi: &Character, gamma: Rational) -> Result<WeightFunction> {
    let units = ring.units().len() as i64;
    let table = ring
        .elements()
        .map(|x| {
            let s = left_unit_sum(ring, chi, x)?;
            Ok(gamma * (Rational::from(1) - Rational::new(s, units)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WeightFunction::from_table(gamma, table))
}

/// Möbius-inversion weight `gamma (1 - mu(0, Rx) / |R^x x|)`.
pub fn homogeneous_weight_oracle(ring: &FiniteRing, gamma: Rational) -> Result<WeightFunction> {
    if !is_frobenius(ring).frobenius {
        return Err(Error::NotFrobenius(ring.spec().to_string()));
    }
    let ip = principal_ideal_poset(ring);
    let mu = moebius(&ip.poset);
    let bottom = ip.bottom();
    let table = ring
        .elements()
        .map(|x| {
            if x == 0 {
                return Rational::from(0);
            }
            let generators: HashSet<Elem> = ring.units().iter().map(|&u| ring.mul(u, x)).collect();
            let m = mu.get(bottom, ip.ideal_of[x as usize]);
            gamma * (Rational::from(1) - Rational::new(m, generators.len() as i64))
        })
        .collect();
    Ok(WeightFunction::from_table(gamma, table))
}

/// The hand-given weight on F2[X,Y]/(X^2,Y^2,XY): 0 at zero, 2 on the
/// nonzero radical, 1/2 elsewhere. The ring is not Frobenius, so this is a
/// fixture rather than something computed.
pub fn f2xy_fixture(ring: &FiniteRing) -> WeightFunction {
    let rad = radical(ring);
    let table = ring
        .elements()
        .map(|x| match x {
            0 => Rational::from(0),
            _ if rad.contains(x) => Rational::from(2),
            _ => Rational::new(1, 2),
        })
        .collect();
    WeightFunction::from_table(Rational::from(1), table)
}

/// H1: `Rx = Ry` implies `w(x) = w(y)`.
pub fn check_h1(ring: &FiniteRing, w: &WeightFunction) -> bool {
    let ip = principal_ideal_poset(ring);
    ring.elements().all(|x| {
        ring.elements()
            .all(|y| ip.ideal_of[x as usize] != ip.ideal_of[y as usize] || w.weight(x) == w.weight(y))
    })
}

fn ideal_sum_of_weights(w: &WeightFunction, ideal: &Ideal) -> Rational {
    ideal.elements().iter().map(|&y| w.weight(y)).sum()
}

/// H2: the average weight is `gamma` on every nonzero principal left ideal.
pub fn check_h2(ring: &FiniteRing, w: &WeightFunction) -> bool {
    principal_ideal_poset(ring)
        .ideals
        .iter()
        .filter(|i| !i.is_zero())
        .all(|i| ideal_sum_of_weights(w, i) == w.gamma() * i.len() as i64)
}

/// A nonzero left ideal whose weights do not average to `gamma`.
#[derive(Debug, Clone)]
pub struct H2StarViolation {
    pub ideal: Ideal,
    pub sum: Rational,
    pub expected: Rational,
}

/// H2*: the average weight is `gamma` on every nonzero left ideal, principal
/// or not. Returns the first violation in ideal enumeration order.
pub fn verify_h2_star(ring: &FiniteRing, w: &WeightFunction) -> Result<(), H2StarViolation> {
    for ideal in left_ideals(ring).into_iter().filter(|i| !i.is_zero()) {
        let sum = ideal_sum_of_weights(w, &ideal);
        let expected = w.gamma() * ideal.len() as i64;
        if sum != expected {
            return Err(H2StarViolation { ideal, sum, expected });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PositiveDefiniteness {
    pub positive_definite: bool,
    pub two_sided_ideals_of_order_two: usize,
}

/// Whether `w` vanishes only at zero, cross-checked against the count of
/// two-sided ideals of order 2 (positive definite iff at most one).
pub fn positive_definiteness(ring: &FiniteRing, w: &WeightFunction) -> PositiveDefiniteness {
    let census = two_sided_ideals(ring).iter().filter(|i| i.len() == 2).count();
    let positive_definite = w.is_positive_definite();
    assert_eq!(
        positive_definite,
        census <= 1,
        "positive definiteness disagrees with the ideal census for {}",
        ring.spec()
    );
    PositiveDefiniteness { positive_definite, two_sided_ideals_of_order_two: census }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    fn ring(s: &str) -> FiniteRing {
        build_ring(&s.parse().unwrap()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn root_sums() {
        // 1 + zeta_4 + zeta_4^2 + zeta_4^3 = 0
        assert_eq!(reduce_root_sum(&[1, 1, 1, 1], 4), Some(0));
        // zeta_4 + zeta_4^3 = 0
        assert_eq!(reduce_root_sum(&[0, 1, 0, 1], 4), Some(0));
        // primitive 9th roots sum to mu(9) = 0, the two cube roots to -1.
        assert_eq!(reduce_root_sum(&[0, 1, 1, 1, 1, 1, 1, 1, 1], 9), Some(-1));
        assert_eq!(reduce_root_sum(&[0, 1, 0, 0], 4), None);
    }

    #[test]
    fn lee_weight_on_z4() {
        let w = normalized_weight(&ring("Z/4")).unwrap();
        assert_eq!(w.table(), &[r(0, 1), r(1, 1), r(2, 1), r(1, 1)]);
    }

    #[test]
    fn z9_weight() {
        let w = normalized_weight(&ring("Z/9")).unwrap();
        for x in 0..9u16 {
            let expected = match x {
                0 => r(0, 1),
                3 | 6 => r(3, 2),
                _ => r(1, 1),
            };
            assert_eq!(w.weight(x), expected, "x = {x}");
        }
    }

    #[test]
    fn f2xf2_weight() {
        let w = normalized_weight(&ring("F/2xF/2")).unwrap();
        // indices: (1,0) = 1, (0,1) = 2, (1,1) = 3
        assert_eq!(w.table(), &[r(0, 1), r(2, 1), r(2, 1), r(0, 1)]);
    }

    #[test]
    fn not_frobenius_is_an_error() {
        let f2xy = ring("T:F2XY");
        assert!(matches!(normalized_weight(&f2xy), Err(Error::NotFrobenius(_))));
        assert!(matches!(homogeneous_weight_oracle(&f2xy, r(1, 1)), Err(Error::NotFrobenius(_))));
    }

    #[test]
    fn oracle_on_z4() {
        let w = homogeneous_weight_oracle(&ring("Z/4"), r(3, 1)).unwrap();
        assert_eq!(w.weight(2), r(6, 1));
        assert_eq!(w.weight(1), r(3, 1));
        assert_eq!(w.weight(0), r(0, 1));
    }

    #[test]
    fn h2_star() {
        let z4 = ring("Z/4");
        let lee = normalized_weight(&z4).unwrap();
        assert!(verify_h2_star(&z4, &lee).is_ok());

        let f2xy = ring("T:F2XY");
        let fixture = f2xy_fixture(&f2xy);
        assert!(check_h1(&f2xy, &fixture));
        assert!(check_h2(&f2xy, &fixture));
        let violation = verify_h2_star(&f2xy, &fixture).unwrap_err();
        assert_eq!(violation.ideal.elements(), radical(&f2xy).elements());
        assert_eq!((violation.sum, violation.expected), (r(6, 1), r(4, 1)));
    }

    #[test]
    fn whole_ring_sums_to_gamma_times_order() {
        for s in ["Z/8", "F/2xF/3", "GR(4,2)"] {
            let rg = ring(s);
            let w = homogeneous_weight(&rg, r(5, 2)).unwrap();
            let total: Rational = w.table().iter().sum();
            assert_eq!(total, r(5, 2) * rg.order() as i64, "{s}");
        }
    }

    #[test]
    fn positive_definiteness_census() {
        let check = |s: &str| {
            let rg = ring(s);
            positive_definiteness(&rg, &normalized_weight(&rg).unwrap())
        };
        assert_eq!(check("Z/4"), PositiveDefiniteness { positive_definite: true, two_sided_ideals_of_order_two: 1 });
        assert_eq!(check("F/2xF/2"), PositiveDefiniteness { positive_definite: false, two_sided_ideals_of_order_two: 2 });
        assert!(check("F/9").positive_definite);
    }

    #[test]
    fn hamming_like_on_fields() {
        let w = normalized_weight(&ring("F/9")).unwrap();
        assert!(w.table().iter().skip(1).all(|v| *v == r(9, 8)));
    }
}
