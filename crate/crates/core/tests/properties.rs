use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use twoweight::code::*;
use twoweight::constructions::construct_p61;
use twoweight::geometry::{is_unimodular_column, Geometry};
use twoweight::ring::{build_ring, Elem, FiniteRing};
use twoweight::vector::{VectorIndexer, DEFAULT_BUDGET};
use twoweight::weight::{homogeneous_weight_oracle, normalized_weight};

const RINGS: [&str; 6] = ["Z/4", "F/4", "F/2[u]", "Z/9", "F/2xF/2", "F/4[u;frob^1]"];

fn ring(spec: &str) -> Arc<FiniteRing> {
    Arc::new(build_ring(&spec.parse().unwrap()).unwrap())
}

fn invertible(ring: &FiniteRing, a: &[Vec<Elem>]) -> bool {
    let k = a.len();
    let idx = VectorIndexer::new(ring, k, DEFAULT_BUDGET).unwrap();
    let mut images = BTreeSet::new();
    for m in 0..idx.count() {
        let x = idx.decode(m);
        let image: Vec<Elem> = (0..k).map(|j| (0..k).fold(0, |acc, i| ring.add(acc, ring.mul(x[i], a[i][j])))).collect();
        images.insert(image);
    }
    images.len() == idx.count()
}

fn reduce(ring: &FiniteRing, raw: &[u16]) -> Vec<Elem> {
    raw.iter().map(|&x| x % ring.order() as u16).collect()
}

fn word_set(code: &LinearCode) -> BTreeSet<Vec<Elem>> {
    code.words().map(<[Elem]>::to_vec).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn presentation_does_not_change_the_code(
        which in 0usize..3,
        s in 1usize..=3,
        raw in proptest::collection::vec(any::<u16>(), 4),
    ) {
        let spec = ["Z/9", "F/3[u]", "Z/4"][which];
        let s = s.min(if spec == "Z/4" { 2 } else { 3 });
        let report = construct_p61(ring(spec), s).unwrap();
        let r = report.matrix.ring().clone();
        let raw = reduce(&r, &raw);
        let a = vec![raw[..2].to_vec(), raw[2..].to_vec()];
        prop_assume!(invertible(&r, &a));
        let original = span(&report.matrix, DEFAULT_BUDGET).unwrap();
        let moved = span(&report.matrix.left_multiply(&a).unwrap(), DEFAULT_BUDGET).unwrap();
        let w = normalized_weight(&r).unwrap();
        prop_assert_eq!(classify(&original, &w), classify(&moved, &w));
        prop_assert_eq!(word_set(&original), word_set(&moved));
        prop_assert_eq!(weight_distribution(&original, &w), weight_distribution(&moved, &w));
    }

    #[test]
    fn counting_identities_hold_for_any_code(
        which in 0usize..RINGS.len(),
        k in 1usize..=2,
        n in 1usize..=4,
        raw in proptest::collection::vec(any::<u16>(), 8),
    ) {
        let r = ring(RINGS[which]);
        let entries = reduce(&r, &raw);
        let rows: Vec<Vec<Elem>> = (0..k).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        let code = span(&GeneratorMatrix::new(r.clone(), rows).unwrap(), DEFAULT_BUDGET).unwrap();
        let w = normalized_weight(&r).unwrap();
        prop_assert!(check_column_weights(&code, &w));
        prop_assert!(check_subcode_sizes(&code));
        let words = word_set(&code);
        prop_assert!(words.contains(&vec![0; n]));
        for a in 0..code.len() {
            for b in 0..code.len() {
                let sum: Vec<Elem> = code.word(a).iter().zip(code.word(b)).map(|(&x, &y)| r.add(x, y)).collect();
                prop_assert_eq!(code.word(code.add(a, b)), sum.as_slice());
            }
            for &u in r.elements().collect::<Vec<_>>().iter() {
                let scaled: Vec<Elem> = code.word(a).iter().map(|&x| r.mul(u, x)).collect();
                prop_assert!(words.contains(&scaled));
            }
        }
        let total: usize = weight_distribution(&code, &w).iter().map(|&(_, c)| c).sum();
        prop_assert_eq!(total, code.len());
    }

    #[test]
    fn weight_is_constant_on_unit_orbits(which in 0usize..RINGS.len(), x in any::<u16>()) {
        let r = ring(RINGS[which]);
        let x = x % r.order() as u16;
        let w = normalized_weight(&r).unwrap();
        let oracle = homogeneous_weight_oracle(&r, 1.into()).unwrap();
        prop_assert_eq!(w.weight(x), oracle.weight(x));
        for &u in r.units() {
            prop_assert_eq!(w.weight(r.mul(u, x)), w.weight(x));
        }
    }
}

#[test]
fn geometry_examples() {
    let z4 = Geometry::new(ring("Z/4"), 2, DEFAULT_BUDGET).unwrap();
    assert_eq!((z4.point_count(), z4.hyperplane_count()), (6, 6));
    let f2u = Geometry::new(ring("F/2[u]"), 3, DEFAULT_BUDGET).unwrap();
    assert_eq!(f2u.point_count(), 28);
    for p in 0..f2u.point_count() {
        assert!(is_unimodular_column(f2u.ring(), &f2u.point(p)));
    }
}

#[test]
fn singer_orbit_meets_hyperplanes_in_one_or_three_points() {
    let report = twoweight::constructions::construct_p62(2, 0).unwrap();
    let g = Geometry::new(report.matrix.ring().clone(), 3, DEFAULT_BUDGET).unwrap();
    let orbit: Vec<usize> = report.matrix.columns().iter().map(|c| g.point_id(c).unwrap()).collect();
    let sizes: BTreeSet<usize> = g.intersection_sizes(&orbit).into_iter().collect();
    assert_eq!(sizes, BTreeSet::from([1, 3]));
}

#[test]
fn segment_sets_meet_hyperplanes_in_two_sizes() {
    // q = 3: s line segments per class meet each hyperplane in sq or sq + q
    // points. At s = q the set is every point, so only sq + q occurs.
    for s in 1..=3 {
        let report = twoweight::constructions::construct_segments(ring("Z/9"), s).unwrap();
        let g = Geometry::new(report.matrix.ring().clone(), 3, DEFAULT_BUDGET).unwrap();
        let set: Vec<usize> = report.matrix.columns().iter().map(|c| g.point_id(c).unwrap()).collect();
        let sizes: BTreeSet<usize> = g.intersection_sizes(&set).into_iter().collect();
        let expected = if s < 3 { BTreeSet::from([3 * s, 3 * s + 3]) } else { BTreeSet::from([12]) };
        assert_eq!(sizes, expected, "s={s}");
    }
}
