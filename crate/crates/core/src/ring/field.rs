//! Small number-theory and polynomial helpers for building prime-power fields
//! and Galois rings.

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^r` with `p` prime.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut r) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

/// Number-theoretic Möbius function.
pub fn moebius_number(mut n: u32) -> i64 {
    let mut result = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Product of two polynomials (little-endian coefficients) over Z/modulus,
/// reduced modulo the monic polynomial `f`.
pub fn poly_mulmod(a: &[u32], b: &[u32], f: &[u32], modulus: u32) -> Vec<u32> {
    let deg = f.len() - 1;
    let m = u64::from(modulus);
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + u64::from(x) * u64::from(y)) % m;
        }
    }
    for top in (deg..prod.len()).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &fi) in f[..deg].iter().enumerate() {
            let idx = top - deg + i;
            prod[idx] = (prod[idx] + (m - c) * u64::from(fi)) % m;
        }
    }
    prod.truncate(deg);
    prod.resize(deg, 0);
    prod.into_iter().map(|c| c as u32).collect()
}

fn poly_rem_is_zero(num: &[u32], den: &[u32], p: u32) -> bool {
    // den is monic.
    let mut r: Vec<u64> = num.iter().map(|&c| u64::from(c)).collect();
    let p = u64::from(p);
    let dd = den.len() - 1;
    while r.len() > dd {
        let top = r.len() - 1;
        let c = r[top];
        if c != 0 {
            for (i, &di) in den.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = (r[idx] + (p - c) * u64::from(di)) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

/// Monic polynomials of degree `deg` over F_p, little-endian, in increasing
/// order of their low coefficients read as a base-p number.
fn monic_polys(p: u32, deg: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = p.pow(deg);
    (0..count).map(move |mut t| {
        let mut coeffs = Vec::with_capacity(deg as usize + 1);
        for _ in 0..deg {
            coeffs.push(t % p);
            t /= p;
        }
        coeffs.push(1);
        coeffs
    })
}

pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() as u32 - 1;
    (1..=deg / 2).all(|d| monic_polys(p, d).all(|g| !poly_rem_is_zero(f, &g, p)))
}

/// First monic irreducible polynomial of degree `r` over F_p in the
/// deterministic order of [`monic_polys`].
pub fn irreducible_poly(p: u32, r: u32) -> Vec<u32> {
    monic_polys(p, r)
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
