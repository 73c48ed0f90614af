use crate::ring::{split_coords, Elem, FiniteRing};

/// Additive character `x -> exp(2 pi i m(x) / N)`, stored as the exponent
/// map `m` into `Z/N` with `N` the additive exponent of the ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    exponents: Vec<u32>,
    modulus: u32,
}

impl Character {
    /// Character with coefficient `c_j` on the `j`-th additive coordinate.
    pub fn from_coefficients(ring: &FiniteRing, coeffs: &[u32]) -> Self {
        let n = ring.exponent();
        let scale: Vec<u32> = ring.moduli().iter().map(|&m| n / m).collect();
        let exponents = ring
            .elements()
            .map(|x| {
                let xs = ring.coords(x);
                let total: u64 = xs
                    .iter()
                    .zip(coeffs)
                    .zip(&scale)
                    .map(|((&xj, &cj), &s)| u64::from(xj) * u64::from(cj) * u64::from(s))
                    .sum();
                (total % u64::from(n)) as u32
            })
            .collect();
        Character { exponents, modulus: n }
    }

    #[inline]
    pub fn exponent(&self, x: Elem) -> u32 {
        self.exponents[x as usize]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// `x -> chi(x r)`.
    pub fn left_translate(&self, ring: &FiniteRing, r: Elem) -> Character {
        let exponents = ring.elements().map(|x| self.exponent(ring.mul(x, r))).collect();
        Character { exponents, modulus: self.modulus }
    }

    /// `x -> chi(r x)`.
    pub fn right_translate(&self, ring: &FiniteRing, r: Elem) -> Character {
        let exponents = ring.elements().map(|x| self.exponent(ring.mul(r, x))).collect();
        Character { exponents, modulus: self.modulus }
    }

    fn is_additive(&self, ring: &FiniteRing) -> bool {
        self.exponent(0) == 0
            && ring.elements().all(|x| {
                ring.elements().all(|y| {
                    self.exponent(ring.add(x, y)) == (self.exponent(x) + self.exponent(y)) % self.modulus
                })
            })
    }
}

/// All `|R|` additive characters, in mixed-radix order of their coefficients.
pub fn characters(ring: &FiniteRing) -> Vec<Character> {
    let moduli = ring.moduli();
    (0..ring.order())
        .map(|t| {
            let chi = Character::from_coefficients(ring, &split_coords(moduli, t));
            debug_assert!(chi.is_additive(ring));
            chi
        })
        .collect()
}

/// `{x -> chi(x r)}` exhausts all characters, i.e. no nonzero `r` has
/// `chi(R r) = 1`.
pub fn is_left_generating(ring: &FiniteRing, chi: &Character) -> bool {
    ring.elements()
        .skip(1)
        .all(|r| ring.elements().any(|x| chi.exponent(ring.mul(x, r)) != 0))
}

/// `{x -> chi(r x)}` exhausts all characters.
pub fn is_right_generating(ring: &FiniteRing, chi: &Character) -> bool {
    ring.elements()
        .skip(1)
        .all(|r| ring.elements().any(|x| chi.exponent(ring.mul(r, x)) != 0))
}

/// Every generating character. Left and right generation coincide; this is
/// asserted rather than assumed.
pub fn generating_characters(ring: &FiniteRing) -> Vec<Character> {
    characters(ring)
        .into_iter()
        .filter(|chi| {
            let left = is_left_generating(ring, chi);
            assert_eq!(left, is_right_generating(ring, chi), "left/right generation disagree");
            left
        })
        .collect()
}

/// First generating character in enumeration order, if any exists.
pub fn generating_character(ring: &FiniteRing) -> Option<Character> {
    characters(ring).into_iter().find(|chi| {
        let left = is_left_generating(ring, chi);
        assert_eq!(left, is_right_generating(ring, chi), "left/right generation disagree");
        left
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;

    fn ring(s: &str) -> FiniteRing {
        build_ring(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn all_characters_are_additive_and_distinct() {
        for s in ["Z/4", "F/4", "F/2xF/3", "F/2[u]", "GR(4,2)"] {
            let r = ring(s);
            let chars = characters(&r);
            assert_eq!(chars.len(), r.order());
            assert!(chars.iter().all(|c| c.is_additive(&r)), "{s}");
            let distinct: std::collections::HashSet<_> = chars.iter().collect();
            assert_eq!(distinct.len(), r.order(), "{s}");
        }
    }

    #[test]
    fn z4_generating_character_is_i_to_the_x() {
        let r = ring("Z/4");
        let chi = generating_character(&r).unwrap();
        assert_eq!(chi.exponents(), &[0, 1, 2, 3]);
        let orbit: std::collections::HashSet<_> =
            r.elements().map(|s| chi.left_translate(&r, s)).collect();
        assert_eq!(orbit.len(), 4);
    }

    #[test]
    fn f2xf2_generating_character_is_sum_parity() {
        let r = ring("F/2xF/2");
        let chi = generating_character(&r).unwrap();
        // Elements (a,b) at index a + 2b: exponents a + b mod 2.
        assert_eq!(chi.exponents(), &[0, 1, 1, 0]);
    }

    #[test]
    fn f2xy_has_no_generating_character() {
        assert!(generating_character(&ring("T:F2XY")).is_none());
    }
}
