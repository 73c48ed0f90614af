//! Barbilian spaces `Barb(R^k_R)`: points `xR` of unimodular vectors,
//! hyperplanes `R a` of unimodular functionals, incidence `a . x = 0` and
//! the distant relation `a . x = 1`. Over chain rings of length 2 the points
//! fall into neighbour classes by their image in the residual space.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::residue::{Residue, ResidueField};
use crate::ring::ideal::chain_length;
use crate::ring::{Elem, FiniteRing};
use crate::vector::VectorIndexer;

const NONE: u32 = u32::MAX;

fn contains_one(ring: &FiniteRing, generators: &[Elem], left: bool) -> bool {
    if generators.iter().any(|&g| ring.is_unit(g)) {
        return true;
    }
    // Sum of the one-sided principal ideals generated by the entries.
    let mut set = FixedBitSet::with_capacity(ring.order());
    set.insert(0);
    for &g in generators {
        let principal: Vec<Elem> = ring
            .elements()
            .map(|r| if left { ring.mul(r, g) } else { ring.mul(g, r) })
            .collect();
        let current: Vec<usize> = set.ones().collect();
        for a in current {
            for &p in &principal {
                set.insert(ring.add(a as Elem, p) as usize);
            }
        }
    }
    set.contains(ring.one() as usize)
}

/// `xR` is a point: some functional `a` has `a . x = 1`, i.e. the left ideal
/// generated by the coordinates of `x` is the whole ring.
pub fn is_unimodular_column(ring: &FiniteRing, x: &[Elem]) -> bool {
    contains_one(ring, x, true)
}

/// `Ra` is a hyperplane: some vector `x` has `a . x = 1`.
pub fn is_unimodular_row(ring: &FiniteRing, a: &[Elem]) -> bool {
    contains_one(ring, a, false)
}

#[derive(Debug, Clone)]
pub struct Geometry {
    ring: Arc<FiniteRing>,
    indexer: VectorIndexer,
    points: Vec<u32>,
    point_of: Vec<u32>,
    hyperplanes: Vec<u32>,
    hyperplane_of: Vec<u32>,
}

impl Geometry {
    /// Enumerates points and hyperplanes of `Barb(R^dim)`. Each is listed by
    /// its lexicographically smallest representative, in increasing order.
    pub fn new(ring: Arc<FiniteRing>, dim: usize, budget: u128) -> Result<Self> {
        let indexer = VectorIndexer::new(&ring, dim, budget)?;
        let (points, point_of) = orbits(&ring, &indexer, true);
        let (hyperplanes, hyperplane_of) = orbits(&ring, &indexer, false);
        Ok(Geometry { ring, indexer, points, point_of, hyperplanes, hyperplane_of })
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.indexer.len()
    }

    pub fn indexer(&self) -> &VectorIndexer {
        &self.indexer
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn hyperplane_count(&self) -> usize {
        self.hyperplanes.len()
    }

    /// Canonical representative of point `id`.
    pub fn point(&self, id: usize) -> Vec<Elem> {
        self.indexer.decode(self.points[id] as usize)
    }

    pub fn hyperplane(&self, id: usize) -> Vec<Elem> {
        self.indexer.decode(self.hyperplanes[id] as usize)
    }

    /// Point generated by `x`, if `x` is unimodular.
    pub fn point_id(&self, x: &[Elem]) -> Option<usize> {
        match self.point_of[self.indexer.encode(x)] {
            NONE => None,
            id => Some(id as usize),
        }
    }

    pub fn hyperplane_id(&self, a: &[Elem]) -> Option<usize> {
        match self.hyperplane_of[self.indexer.encode(a)] {
            NONE => None,
            id => Some(id as usize),
        }
    }

    fn pairing(&self, h: usize, p: usize) -> Elem {
        self.ring.dot(&self.hyperplane(h), &self.point(p))
    }

    pub fn incident(&self, h: usize, p: usize) -> bool {
        self.pairing(h, p) == 0
    }

    /// Some representatives pair to 1, i.e. the pairing is a unit.
    pub fn distant(&self, h: usize, p: usize) -> bool {
        self.ring.is_unit(self.pairing(h, p))
    }

    /// Points incident with hyperplane `h`.
    pub fn points_on(&self, h: usize) -> Vec<usize> {
        let a = self.hyperplane(h);
        (0..self.point_count())
            .filter(|&p| self.ring.dot(&a, &self.point(p)) == 0)
            .collect()
    }

    /// `|K ∩ h|` for every hyperplane `h`.
    pub fn intersection_sizes(&self, set: &[usize]) -> Vec<usize> {
        let reps: Vec<Vec<Elem>> = set.iter().map(|&p| self.point(p)).collect();
        (0..self.hyperplane_count())
            .map(|h| {
                let a = self.hyperplane(h);
                reps.iter().filter(|x| self.ring.dot(&a, x) == 0).count()
            })
            .collect()
    }

    /// Incidence does not depend on the chosen representatives: checked over
    /// every pair of unit multiples.
    pub fn incidence_is_well_defined(&self) -> bool {
        let r = &self.ring;
        (0..self.hyperplane_count()).all(|h| {
            let a = self.hyperplane(h);
            (0..self.point_count()).all(|p| {
                let x = self.point(p);
                let incident = r.dot(&a, &x) == 0;
                r.units().iter().all(|&u| {
                    let ua: Vec<Elem> = a.iter().map(|&c| r.mul(u, c)).collect();
                    r.units().iter().all(|&v| {
                        let xv: Vec<Elem> = x.iter().map(|&c| r.mul(c, v)).collect();
                        (r.dot(&ua, &xv) == 0) == incident
                    })
                })
            })
        })
    }
}

/// Unit orbits `xR^x` (points) or `R^x a` (hyperplanes) of unimodular
/// vectors. Scanning in index order meets each orbit first at its
/// lexicographically smallest member.
fn orbits(ring: &FiniteRing, indexer: &VectorIndexer, columns: bool) -> (Vec<u32>, Vec<u32>) {
    let mut reps = Vec::new();
    let mut id_of = vec![NONE; indexer.count()];
    let mut v = vec![0 as Elem; indexer.len()];
    let mut w = vec![0 as Elem; indexer.len()];
    for index in 0..indexer.count() {
        if id_of[index] != NONE {
            continue;
        }
        indexer.decode_into(index, &mut v);
        let unimodular = if columns { is_unimodular_column(ring, &v) } else { is_unimodular_row(ring, &v) };
        if !unimodular {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(index as u32);
        for &u in ring.units() {
            for (dst, &c) in w.iter_mut().zip(&v) {
                *dst = if columns { ring.mul(c, u) } else { ring.mul(u, c) };
            }
            id_of[indexer.encode(&w)] = id;
        }
    }
    (reps, id_of)
}

/// Neighbour classes of points over a chain ring of length 2.
#[derive(Debug, Clone)]
pub struct NeighbourClassMap {
    residue: ResidueField,
    keys: Vec<Vec<Residue>>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl NeighbourClassMap {
    pub fn residue_field(&self) -> &ResidueField {
        &self.residue
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Residual projective point of each class, normalized.
    pub fn key(&self, class: usize) -> &[Residue] {
        &self.keys[class]
    }

    pub fn class_by_key(&self, key: &[Residue]) -> Option<usize> {
        self.keys.binary_search_by(|k| k.as_slice().cmp(key)).ok()
    }

    /// Point ids of a class, ascending.
    pub fn class(&self, class: usize) -> &[usize] {
        &self.classes[class]
    }

    pub fn class_of(&self, point: usize) -> usize {
        self.class_of[point]
    }
}

/// Groups the points of the geometry by `nu(xR)`. Classes are ordered by
/// their residual key.
pub fn neighbour_classes(geometry: &Geometry) -> Result<NeighbourClassMap> {
    let ring = geometry.ring();
    if chain_length(ring) != Some(2) {
        return Err(Error::NotChainRing(ring.spec().to_string()));
    }
    let residue = ResidueField::of(ring)?;
    let point_keys: Vec<Vec<Residue>> = (0..geometry.point_count())
        .map(|p| residue.normalize(&residue.residues(&geometry.point(p))))
        .collect();
    let mut keys = point_keys.clone();
    keys.sort();
    keys.dedup();
    let mut classes = vec![Vec::new(); keys.len()];
    let class_of: Vec<usize> = point_keys
        .iter()
        .enumerate()
        .map(|(p, k)| {
            let c = keys.binary_search(k).unwrap();
            classes[c].push(p);
            c
        })
        .collect();
    Ok(NeighbourClassMap { residue, keys, classes, class_of })
}

/// Direction `nu(h)` of a hyperplane, as a normalized residual functional.
pub fn direction(classes: &NeighbourClassMap, geometry: &Geometry, h: usize) -> Vec<Residue> {
    let f = classes.residue_field();
    f.normalize(&f.residues(&geometry.hyperplane(h)))
}

/// `[p]_h`: points of class `p` incident with `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LineSegment {
    pub class: usize,
    pub hyperplane: usize,
    pub points: Vec<usize>,
    pub direction: Vec<Residue>,
}

pub fn line_segment(
    geometry: &Geometry,
    classes: &NeighbourClassMap,
    class: usize,
    hyperplane: usize,
) -> Result<LineSegment> {
    let a = geometry.hyperplane(hyperplane);
    let ring = geometry.ring();
    let points: Vec<usize> = classes
        .class(class)
        .iter()
        .copied()
        .filter(|&p| ring.dot(&a, &geometry.point(p)) == 0)
        .collect();
    if points.is_empty() {
        return Err(Error::EmptySegment);
    }
    Ok(LineSegment { class, hyperplane, points, direction: direction(classes, geometry, hyperplane) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::build_ring;
    use crate::vector::DEFAULT_BUDGET;

    fn geometry(spec: &str, dim: usize) -> Geometry {
        Geometry::new(Arc::new(build_ring(&spec.parse().unwrap()).unwrap()), dim, DEFAULT_BUDGET).unwrap()
    }

    fn brute_force_point(ring: &FiniteRing, x: &[Elem]) -> bool {
        let idx = VectorIndexer::new(ring, x.len(), DEFAULT_BUDGET).unwrap();
        (0..idx.count()).any(|t| ring.dot(&idx.decode(t), x) == ring.one())
    }

    #[test]
    fn predicate_matches_brute_force() {
        for spec in ["Z/4", "F/2xF/2", "F/2xF/3", "T:F2XY", "F/4[u;frob^1]"] {
            let ring = build_ring(&spec.parse().unwrap()).unwrap();
            let idx = VectorIndexer::new(&ring, 2, DEFAULT_BUDGET).unwrap();
            for t in 0..idx.count() {
                let x = idx.decode(t);
                assert_eq!(is_unimodular_column(&ring, &x), brute_force_point(&ring, &x), "{spec} {x:?}");
            }
        }
    }

    #[test]
    fn point_counts() {
        assert_eq!(geometry("Z/4", 2).point_count(), 6);
        assert_eq!(geometry("F/2[u]", 3).point_count(), 28);
        assert_eq!(geometry("F/3", 2).point_count(), 4);
        let z4 = geometry("Z/4", 2);
        assert_eq!(z4.hyperplane_count(), 6);
    }

    #[test]
    fn chain_ring_counts_match_formula() {
        for spec in ["Z/4", "Z/9", "F/2[u]", "F/3[u]", "F/4[u;frob^1]", "GR(4,2)"] {
            for dim in [2, 3] {
                let g = geometry(spec, dim);
                let ring = g.ring();
                let rad = ring.order() - ring.units().len();
                let expected = (ring.order().pow(dim as u32) - rad.pow(dim as u32)) / ring.units().len();
                assert_eq!(g.point_count(), expected, "{spec} dim {dim}");
                assert_eq!(g.hyperplane_count(), expected, "{spec} dim {dim}");
            }
        }
    }

    #[test]
    fn incidence_and_distance() {
        let g = geometry("Z/4", 2);
        let p = g.point_id(&[1, 0]).unwrap();
        let h = g.hyperplane_id(&[0, 1]).unwrap();
        assert!(g.incident(h, p));
        let h10 = g.hyperplane_id(&[1, 0]).unwrap();
        assert!(g.distant(h10, p));
        assert!(!g.incident(h10, p));
        assert!(g.incidence_is_well_defined());
        assert!(geometry("F/4[u;frob^1]", 2).incidence_is_well_defined());
        assert!(geometry("F/2xF/2", 2).incidence_is_well_defined());
    }

    #[test]
    fn canonical_representatives_are_smallest() {
        let g = geometry("Z/9", 2);
        for p in 0..g.point_count() {
            let x = g.point(p);
            for &u in g.ring().units() {
                let xu: Vec<Elem> = x.iter().map(|&c| g.ring().mul(c, u)).collect();
                assert!(x <= xu);
                assert_eq!(g.point_id(&xu), Some(p));
            }
        }
    }

    #[test]
    fn neighbour_class_counts() {
        let check = |spec: &str, dim: usize, classes: usize, size: usize| {
            let g = geometry(spec, dim);
            let n = neighbour_classes(&g).unwrap();
            assert_eq!(n.class_count(), classes, "{spec}");
            assert!((0..classes).all(|c| n.class(c).len() == size), "{spec}");
        };
        check("Z/4", 2, 3, 2);
        check("Z/9", 2, 4, 3);
        check("F/3[u]", 2, 4, 3);
        check("Z/4", 3, 7, 4);
        assert!(matches!(neighbour_classes(&geometry("Z/8", 2)), Err(Error::NotChainRing(_))));
    }

    #[test]
    fn line_segments() {
        for (spec, size) in [("F/2[u]", 2), ("Z/9", 3)] {
            let g = geometry(spec, 3);
            let n = neighbour_classes(&g).unwrap();
            let f = n.residue_field();
            for h in 0..g.hyperplane_count() {
                let dir = direction(&n, &g, h);
                for c in 0..n.class_count() {
                    let through = f.dot(&dir, n.key(c)) == 0;
                    match line_segment(&g, &n, c, h) {
                        Ok(seg) => {
                            assert!(through);
                            assert_eq!(seg.points.len(), size, "{spec}");
                        }
                        Err(Error::EmptySegment) => assert!(!through),
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }
}
