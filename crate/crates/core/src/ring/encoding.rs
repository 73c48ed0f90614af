//! JSON encoding of ring elements.
//!
//! * `Z/m`: an integer (any integer is accepted and reduced mod m);
//! * `F/q`: a little-endian coefficient array in the field generator, or a
//!   bare integer when q is prime;
//! * `F/q[u...]`: the pair `[a0, a1]` meaning `a0 + a1 u`;
//! * `GR(p^2,r)`: a coefficient array over Z/p^2;
//! * products: an array of component encodings;
//! * `T:F2XY`: coefficients of `[1, X, Y]`.

use serde_json::Value;

use crate::error::{Error, Result};
use crate::ring::{join_coords, split_coords, Elem, FiniteRing, RingSpec};

pub fn encode(ring: &FiniteRing, x: Elem) -> Value {
    encode_index(ring.spec(), x as usize)
}

pub fn decode(ring: &FiniteRing, value: &Value) -> Result<Elem> {
    decode_index(ring.spec(), value).map(|i| i as Elem)
}

fn coefficient_array(moduli: &[u32], index: usize) -> Value {
    Value::from(split_coords(moduli, index))
}

fn encode_field(p: u32, r: u32, index: usize) -> Value {
    if r == 1 {
        Value::from(index)
    } else {
        coefficient_array(&vec![p; r as usize], index)
    }
}

pub fn encode_index(spec: &RingSpec, index: usize) -> Value {
    match spec {
        RingSpec::Integers(_) => Value::from(index),
        RingSpec::Field { p, r } => encode_field(*p, *r, index),
        RingSpec::Chain { p, r, .. } => {
            let q = p.pow(*r) as usize;
            Value::Array(vec![encode_field(*p, *r, index % q), encode_field(*p, *r, index / q)])
        }
        RingSpec::Galois { p, r } => coefficient_array(&vec![p * p; *r as usize], index),
        RingSpec::Product(factors) => {
            let orders: Vec<u32> = factors.iter().map(|f| f.order() as u32).collect();
            let parts = split_coords(&orders, index);
            Value::Array(
                factors
                    .iter()
                    .zip(parts)
                    .map(|(f, i)| encode_index(f, i as usize))
                    .collect(),
            )
        }
        RingSpec::Table(_) => coefficient_array(&[2, 2, 2], index),
    }
}

fn reduce(value: &Value, modulus: u32) -> Result<u32> {
    let n = value
        .as_i64()
        .ok_or_else(|| Error::BadEncoding(format!("expected an integer, found {value}")))?;
    Ok(n.rem_euclid(i64::from(modulus)) as u32)
}

fn decode_coefficients(value: &Value, moduli: &[u32]) -> Result<usize> {
    let items = value
        .as_array()
        .ok_or_else(|| Error::BadEncoding(format!("expected a coefficient array, found {value}")))?;
    if items.len() > moduli.len() {
        return Err(Error::BadEncoding(format!(
            "expected at most {} coefficients, found {}",
            moduli.len(),
            items.len()
        )));
    }
    let mut coords = vec![0u32; moduli.len()];
    for (c, (item, &m)) in coords.iter_mut().zip(items.iter().zip(moduli)) {
        *c = reduce(item, m)?;
    }
    Ok(join_coords(moduli, &coords))
}

fn decode_field(p: u32, r: u32, value: &Value) -> Result<usize> {
    match value {
        Value::Number(_) if r == 1 => reduce(value, p).map(|c| c as usize),
        _ => decode_coefficients(value, &vec![p; r as usize]),
    }
}

pub fn decode_index(spec: &RingSpec, value: &Value) -> Result<usize> {
    match spec {
        RingSpec::Integers(m) => reduce(value, *m).map(|c| c as usize),
        RingSpec::Field { p, r } => decode_field(*p, *r, value),
        RingSpec::Chain { p, r, .. } => {
            let pair = value
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::BadEncoding(format!("expected a pair [a0, a1], found {value}")))?;
            let q = p.pow(*r) as usize;
            Ok(decode_field(*p, *r, &pair[0])? + q * decode_field(*p, *r, &pair[1])?)
        }
        RingSpec::Galois { p, r } => decode_coefficients(value, &vec![p * p; *r as usize]),
        RingSpec::Product(factors) => {
            let items = value
                .as_array()
                .filter(|a| a.len() == factors.len())
                .ok_or_else(|| {
                    Error::BadEncoding(format!("expected {} components, found {value}", factors.len()))
                })?;
            let orders: Vec<u32> = factors.iter().map(|f| f.order() as u32).collect();
            let parts = factors
                .iter()
                .zip(items)
                .map(|(f, v)| decode_index(f, v).map(|i| i as u32))
                .collect::<Result<Vec<_>>>()?;
            Ok(join_coords(&orders, &parts))
        }
        RingSpec::Table(_) => decode_coefficients(value, &[2, 2, 2]),
    }
}
