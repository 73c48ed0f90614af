//! Singer cycles of the projective plane PG(2, q) and the point-to-line
//! bijection obtained from the orbit of a single flag.

use crate::error::{Error, Result};
use crate::residue::{Residue, ResidueField};
use crate::ring::{build_ring, RingSpec};
use crate::ring::field::prime_power;

pub type Vec3 = [Residue; 3];

#[derive(Debug, Clone)]
pub struct SingerData {
    pub q: usize,
    /// `(c0, c1, c2)` of the primitive polynomial `x^3 + c2 x^2 + c1 x + c0`.
    pub polynomial: Vec3,
    /// Companion matrix of multiplication by `x` in the basis `1, x, x^2`,
    /// acting on column vectors.
    pub matrix: [Vec3; 3],
    /// Normalized points `g^i p0`, `p0 = (1, 0, 0)`.
    pub points: Vec<Vec3>,
    /// Normalized line functionals with `lines[i] = g^i l0`, where `l0` joins
    /// `p0` and `g p0`. The flag bijection maps `points[i]` to `lines[i]`.
    pub lines: Vec<Vec3>,
}

fn apply(field: &ResidueField, m: &[Vec3; 3], v: &Vec3) -> Vec3 {
    let mut out = [0; 3];
    for (r, row) in m.iter().enumerate() {
        out[r] = field.dot(row, v);
    }
    out
}

fn cross(f: &ResidueField, a: &Vec3, b: &Vec3) -> Vec3 {
    let term = |i: usize, j: usize| f.sub(f.mul(a[i], b[j]), f.mul(a[j], b[i]));
    [term(1, 2), term(2, 0), term(0, 1)]
}

fn normalized(f: &ResidueField, v: &Vec3) -> Vec3 {
    let n = f.normalize(v);
    [n[0], n[1], n[2]]
}

fn companion(field: &ResidueField, c: &Vec3) -> [Vec3; 3] {
    let (z, one) = (0, field.one());
    [
        [z, z, field.neg(c[0])],
        [one, z, field.neg(c[1])],
        [z, one, field.neg(c[2])],
    ]
}

/// Multiplicative order of `x` modulo the polynomial, if `x` is invertible.
fn order_of_x(field: &ResidueField, m: &[Vec3; 3]) -> Option<usize> {
    let start: Vec3 = [field.one(), 0, 0];
    let limit = field.order().pow(3);
    let mut v = apply(field, m, &start);
    for steps in 1..limit {
        if v == start {
            return Some(steps);
        }
        v = apply(field, m, &v);
    }
    None
}

/// Singer data over the given field. The primitive polynomial is the first
/// one found when `(c0, c1, c2)` runs through residues in lexicographic order.
pub fn singer(field: &ResidueField) -> Result<SingerData> {
    let q = field.order();
    let target = q * q * q - 1;
    let candidates = (0..q * q * q).map(|t| [(t / (q * q)) as Residue, (t / q % q) as Residue, (t % q) as Residue]);
    let (polynomial, matrix) = candidates
        .filter(|c| c[0] != 0)
        .map(|c| (c, companion(field, &c)))
        .find(|(_, m)| order_of_x(field, m) == Some(target))
        .ok_or(Error::NoPrimitivePolynomial { q })?;

    let count = q * q + q + 1;
    let mut raw: Vec<Vec3> = Vec::with_capacity(count + 1);
    let mut v: Vec3 = [field.one(), 0, 0];
    for _ in 0..=count {
        raw.push(v);
        v = apply(field, &matrix, &v);
    }
    let points: Vec<Vec3> = raw[..count].iter().map(|p| normalized(field, p)).collect();
    let lines: Vec<Vec3> = (0..count)
        .map(|i| normalized(field, &cross(field, &raw[i], &raw[i + 1])))
        .collect();
    Ok(SingerData { q, polynomial, matrix, points, lines })
}

/// Singer data over GF(q).
pub fn singer_q(q: u32) -> Result<SingerData> {
    let (p, r) = prime_power(q).ok_or(Error::NoPrimitivePolynomial { q: q as usize })?;
    let field = build_ring(&RingSpec::Field { p, r })?;
    singer(&ResidueField::of(&field)?)
}

impl SingerData {
    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn point_index(&self, point: &[Residue]) -> Option<usize> {
        self.points.iter().position(|p| p == point)
    }

    /// The line assigned to a normalized point.
    pub fn sigma(&self, point: &[Residue]) -> Option<Vec3> {
        self.point_index(point).map(|i| self.lines[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn orbit_sizes() {
        for (q, n) in [(2u32, 7usize), (3, 13), (4, 21), (5, 31), (8, 73)] {
            let s = singer_q(q).unwrap();
            assert_eq!(s.points.len(), n);
            assert_eq!(s.points.iter().collect::<HashSet<_>>().len(), n, "points q={q}");
            assert_eq!(s.lines.iter().collect::<HashSet<_>>().len(), n, "lines q={q}");
        }
    }

    #[test]
    fn flags_are_incident() {
        for q in [2u32, 3, 4, 7, 8, 9] {
            let (p, r) = prime_power(q).unwrap();
            let field = ResidueField::of(&build_ring(&RingSpec::Field { p, r }).unwrap()).unwrap();
            let s = singer(&field).unwrap();
            for (p, l) in s.points.iter().zip(&s.lines) {
                assert_eq!(field.dot(l, p), 0, "q={q}");
            }
            // Every line holds q + 1 points.
            for l in &s.lines {
                assert_eq!(s.points.iter().filter(|p| field.dot(l, *p) == 0).count(), q as usize + 1);
            }
        }
    }
}
