use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::field::{is_prime, prime_power};

/// Named rings given by explicit multiplication rules rather than a family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TableRing {
    /// F2[X,Y]/(X^2, Y^2, XY), the local ring of order 8 with non-cyclic socle.
    F2XY,
}

impl TableRing {
    pub fn name(self) -> &'static str {
        match self {
            TableRing::F2XY => "F2XY",
        }
    }
}

/// Description of a small finite ring.
///
/// Grammar: `Z/<m>`, `F/<q>`, `F/<q>[u]`, `F/<q>[u;frob^<a>]`, `GR(<p^2>,<r>)`,
/// `<spec>x<spec>` and `T:<name>`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    /// Z/m.
    Integers(u32),
    /// GF(p^r).
    Field { p: u32, r: u32 },
    /// GF(q)[u; sigma]/(u^2) with sigma = Frobenius^frob and u c = sigma(c) u.
    Chain { p: u32, r: u32, frob: u32 },
    /// Galois ring GR(p^2, r).
    Galois { p: u32, r: u32 },
    Product(Vec<RingSpec>),
    Table(TableRing),
}

impl RingSpec {
    /// Ring order, computed without materializing anything.
    pub fn order(&self) -> u128 {
        match self {
            RingSpec::Integers(m) => u128::from(*m),
            RingSpec::Field { p, r } => u128::from(*p).pow(*r),
            RingSpec::Chain { p, r, .. } | RingSpec::Galois { p, r } => {
                u128::from(*p).pow(2 * *r)
            }
            RingSpec::Product(factors) => factors
                .iter()
                .map(RingSpec::order)
                .fold(1u128, |acc, o| acc.saturating_mul(o)),
            RingSpec::Table(TableRing::F2XY) => 8,
        }
    }

    /// Size of the residue field for the local families, `None` otherwise.
    pub fn residue_order(&self) -> Option<u32> {
        match self {
            RingSpec::Field { p, r } | RingSpec::Chain { p, r, .. } | RingSpec::Galois { p, r } => {
                Some(p.pow(*r))
            }
            RingSpec::Integers(m) => prime_power(*m).map(|(p, _)| p),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::Integers(m) => {
                if *m < 2 {
                    return Err(Error::InvalidSpec(format!("Z/{m}: modulus must be at least 2")));
                }
            }
            RingSpec::Field { p, r } | RingSpec::Galois { p, r } => {
                if !is_prime(*p) || *r == 0 {
                    return Err(Error::InvalidSpec(format!("bad prime power {p}^{r}")));
                }
            }
            RingSpec::Chain { p, r, frob } => {
                if !is_prime(*p) || *r == 0 {
                    return Err(Error::InvalidSpec(format!("bad prime power {p}^{r}")));
                }
                if frob >= r {
                    return Err(Error::InvalidSpec(format!(
                        "automorphism exponent {frob} must lie in [0, {r})"
                    )));
                }
            }
            RingSpec::Product(factors) => {
                if factors.len() < 2 {
                    return Err(Error::InvalidSpec("a product needs at least two factors".into()));
                }
                for f in factors {
                    f.validate()?;
                }
            }
            RingSpec::Table(_) => {}
        }
        Ok(())
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers(m) => write!(f, "Z/{m}"),
            RingSpec::Field { p, r } => write!(f, "F/{}", p.pow(*r)),
            RingSpec::Chain { p, r, frob: 0 } => write!(f, "F/{}[u]", p.pow(*r)),
            RingSpec::Chain { p, r, frob } => write!(f, "F/{}[u;frob^{frob}]", p.pow(*r)),
            RingSpec::Galois { p, r } => write!(f, "GR({},{r})", p * p),
            RingSpec::Product(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str("x")?;
                    }
                    write!(f, "{factor}")?;
                }
                Ok(())
            }
            RingSpec::Table(t) => write!(f, "T:{}", t.name()),
        }
    }
}

fn parse_u32(s: &str, what: &str) -> Result<u32> {
    s.trim()
        .parse::<u32>()
        .map_err(|_| Error::InvalidSpec(format!("expected {what}, found {s:?}")))
}

fn parse_factor(s: &str) -> Result<RingSpec> {
    let s = s.trim();
    if let Some(m) = s.strip_prefix("Z/") {
        return Ok(RingSpec::Integers(parse_u32(m, "a modulus")?));
    }
    if let Some(rest) = s.strip_prefix("F/") {
        let (q, suffix) = match rest.find('[') {
            Some(at) => (&rest[..at], Some(&rest[at..])),
            None => (rest, None),
        };
        let q = parse_u32(q, "a field order")?;
        let (p, r) = prime_power(q)
            .ok_or_else(|| Error::InvalidSpec(format!("F/{q}: {q} is not a prime power")))?;
        return match suffix {
            None => Ok(RingSpec::Field { p, r }),
            Some("[u]") => Ok(RingSpec::Chain { p, r, frob: 0 }),
            Some(other) => {
                let a = other
                    .strip_prefix("[u;frob^")
                    .and_then(|t| t.strip_suffix(']'))
                    .ok_or_else(|| Error::InvalidSpec(format!("bad chain ring suffix {other:?}")))?;
                Ok(RingSpec::Chain { p, r, frob: parse_u32(a, "an automorphism exponent")? })
            }
        };
    }
    if let Some(rest) = s.strip_prefix("GR(") {
        let inner = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::InvalidSpec(format!("unterminated {s:?}")))?;
        let (pp, r) = inner
            .split_once(',')
            .ok_or_else(|| Error::InvalidSpec(format!("expected GR(<p^2>,<r>), found {s:?}")))?;
        let pp = parse_u32(pp, "p^2")?;
        let r = parse_u32(r, "a degree")?;
        return match prime_power(pp) {
            Some((p, 2)) => Ok(RingSpec::Galois { p, r }),
            _ => Err(Error::InvalidSpec(format!("GR: {pp} is not the square of a prime"))),
        };
    }
    if let Some(name) = s.strip_prefix("T:") {
        return match name {
            "F2XY" => Ok(RingSpec::Table(TableRing::F2XY)),
            _ => Err(Error::InvalidSpec(format!("unknown table ring {name:?}"))),
        };
    }
    Err(Error::InvalidSpec(format!("unrecognized ring {s:?}")))
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let factors = s
            .split('x')
            .map(parse_factor)
            .collect::<Result<Vec<_>>>()?;
        let spec = if factors.len() == 1 {
            factors.into_iter().next().unwrap()
        } else {
            RingSpec::Product(factors)
        };
        spec.validate()?;
        Ok(spec)
    }
}
