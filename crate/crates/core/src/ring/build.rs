use crate::error::{Error, Result};
use crate::ring::field::{irreducible_poly, poly_mulmod};
use crate::ring::{join_coords, split_coords, Elem, FiniteRing, RingSpec, TableRing};

pub const DEFAULT_ORDER_CAP: usize = 512;

/// Builds a ring with the default order cap.
pub fn build_ring(spec: &RingSpec) -> Result<FiniteRing> {
    build_ring_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn build_ring_with_cap(spec: &RingSpec, cap: usize) -> Result<FiniteRing> {
    spec.validate()?;
    let order = spec.order();
    if order > cap as u128 || order > u128::from(Elem::MAX) {
        return Err(Error::CapExceeded { order: order.min(usize::MAX as u128) as usize, cap });
    }
    match spec {
        RingSpec::Integers(m) => {
            let m = *m;
            FiniteRing::from_parts(spec.clone(), vec![m], 1, move |a, b| {
                ((u32::from(a) * u32::from(b)) % m) as Elem
            })
        }
        RingSpec::Field { p, r } => {
            let (p, r) = (*p, *r);
            let f = irreducible_poly(p, r);
            polynomial_ring(spec.clone(), vec![p; r as usize], f, p)
        }
        RingSpec::Galois { p, r } => {
            let (p, r) = (*p, *r);
            let f = irreducible_poly(p, r);
            polynomial_ring(spec.clone(), vec![p * p; r as usize], f, p * p)
        }
        RingSpec::Chain { p, r, frob } => {
            let field = build_ring(&RingSpec::Field { p: *p, r: *r })?;
            chain_ring(spec.clone(), &field, *p, *frob)
        }
        RingSpec::Product(factors) => {
            let rings = factors
                .iter()
                .map(|f| build_ring_with_cap(f, cap))
                .collect::<Result<Vec<_>>>()?;
            product_ring(spec.clone(), &rings)
        }
        RingSpec::Table(TableRing::F2XY) => {
            // Basis 1, X, Y with X^2 = Y^2 = XY = YX = 0.
            let moduli = vec![2, 2, 2];
            let m2 = moduli.clone();
            FiniteRing::from_parts(spec.clone(), moduli, 1, move |a, b| {
                let x = split_coords(&m2, a as usize);
                let y = split_coords(&m2, b as usize);
                let c = [
                    x[0] * y[0] % 2,
                    (x[0] * y[1] + x[1] * y[0]) % 2,
                    (x[0] * y[2] + x[2] * y[0]) % 2,
                ];
                join_coords(&m2, &c) as Elem
            })
        }
    }
}

/// (Z/modulus)[x]/(f) with f monic.
fn polynomial_ring(spec: RingSpec, moduli: Vec<u32>, f: Vec<u32>, modulus: u32) -> Result<FiniteRing> {
    let m2 = moduli.clone();
    FiniteRing::from_parts(spec, moduli, 1, move |a, b| {
        let x = split_coords(&m2, a as usize);
        let y = split_coords(&m2, b as usize);
        join_coords(&m2, &poly_mulmod(&x, &y, &f, modulus)) as Elem
    })
}

/// Pairs (a0, a1) = a0 + a1 u over a field with u^2 = 0 and u c = sigma(c) u.
fn chain_ring(spec: RingSpec, field: &FiniteRing, p: u32, frob: u32) -> Result<FiniteRing> {
    let q = field.order();
    let power = p.pow(frob);
    let sigma: Vec<Elem> = field
        .elements()
        .map(|c| (0..power).fold(field.one(), |acc, _| field.mul(acc, c)))
        .collect();
    let mut moduli = field.moduli().to_vec();
    moduli.extend_from_slice(field.moduli());
    FiniteRing::from_parts(spec, moduli, field.one(), |a, b| {
        let (a0, a1) = (a as usize % q, a as usize / q);
        let (b0, b1) = (b as usize % q, b as usize / q);
        let lo = field.mul(a0 as Elem, b0 as Elem);
        let hi = field.add(
            field.mul(a0 as Elem, b1 as Elem),
            field.mul(a1 as Elem, sigma[b0]),
        );
        (lo as usize + q * hi as usize) as Elem
    })
}

fn product_ring(spec: RingSpec, rings: &[FiniteRing]) -> Result<FiniteRing> {
    let orders: Vec<u32> = rings.iter().map(|r| r.order() as u32).collect();
    let moduli: Vec<u32> = rings.iter().flat_map(|r| r.moduli().iter().copied()).collect();
    let ones: Vec<u32> = rings.iter().map(|r| u32::from(r.one())).collect();
    let one = join_coords(&orders, &ones) as Elem;
    FiniteRing::from_parts(spec, moduli, one, |a, b| {
        let x = split_coords(&orders, a as usize);
        let y = split_coords(&orders, b as usize);
        let z: Vec<u32> = rings
            .iter()
            .enumerate()
            .map(|(i, r)| u32::from(r.mul(x[i] as Elem, y[i] as Elem)))
            .collect();
        join_coords(&orders, &z) as Elem
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(s: &str) -> FiniteRing {
        build_ring(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn z4_units() {
        let r = ring("Z/4");
        assert_eq!(r.order(), 4);
        assert_eq!(r.units(), &[1, 3]);
    }

    #[test]
    fn product_units() {
        let r = ring("F/2xF/2");
        assert_eq!(r.order(), 4);
        // (1,1) is index 1 + 2*1 = 3.
        assert_eq!(r.units(), &[3]);
        assert_eq!(r.one(), 3);
    }

    #[test]
    fn fields_have_all_nonzero_units() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let r = ring(&format!("F/{q}"));
            assert_eq!(r.units().len(), q - 1, "F/{q}");
            assert!(r.is_commutative());
        }
    }

    #[test]
    fn skew_chain_ring_is_noncommutative() {
        let r = ring("F/4[u;frob^1]");
        assert_eq!(r.order(), 16);
        assert!(!r.is_commutative());
        assert_eq!(r.units().len(), 12);
        assert!(ring("F/4[u]").is_commutative());
    }

    #[test]
    fn galois_ring_gr4_2() {
        let r = ring("GR(4,2)");
        assert_eq!(r.order(), 16);
        assert_eq!(r.units().len(), 12);
        assert_eq!(r.exponent(), 4);
    }

    #[test]
    fn f2xy_is_local_of_order_8() {
        let r = ring("T:F2XY");
        assert_eq!(r.order(), 8);
        assert_eq!(r.units().len(), 4);
    }

    #[test]
    fn cap_is_enforced() {
        let spec: RingSpec = "Z/600".parse().unwrap();
        assert!(matches!(build_ring(&spec), Err(Error::CapExceeded { order: 600, cap: 512 })));
        assert!(build_ring_with_cap(&spec, 1000).is_ok());
    }
}
