//! Dense polynomial arithmetic over a prime field F_p.
//!
//! Polynomials are coefficient vectors `[c_0, c_1, ..]` (low degree first)
//! with entries already reduced mod p. These helpers back the field
//! construction (irreducibility tests, modular reduction) and element
//! inversion; they are not a general-purpose polynomial library.

/// Removes trailing zero coefficients in place.
pub fn trim(v: &mut Vec<u64>) {
    while let Some(&last) = v.last() {
        if last != 0 {
            break;
        }
        v.pop();
    }
}

/// Degree of `a`, or `None` for the zero polynomial.
pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

pub fn add(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + y) % p;
    }
    trim(&mut out);
    out
}

pub fn sub(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

pub fn mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] += (x as u128) * (y as u128);
        }
    }
    let mut out: Vec<u64> = acc.iter().map(|&c| (c % p as u128) as u64).collect();
    trim(&mut out);
    out
}

pub fn scale(p: u64, a: &[u64], s: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&c| c * s % p).collect();
    trim(&mut out);
    out
}

/// Remainder of `a` modulo a monic polynomial `m`.
pub fn rem_monic(p: u64, a: &[u64], m: &[u64]) -> Vec<u64> {
    let md = degree(m).expect("zero modulus");
    debug_assert_eq!(m[md], 1, "modulus must be monic");
    let mut r: Vec<u64> = a.to_vec();
    trim(&mut r);
    while let Some(rd) = degree(&r) {
        if rd < md {
            break;
        }
        let lead = r[rd];
        let shift = rd - md;
        for (i, &mc) in m.iter().enumerate().take(md + 1) {
            let idx = shift + i;
            r[idx] = (r[idx] + p - lead * mc % p) % p;
        }
        trim(&mut r);
    }
    r
}

/// Monic gcd of `a` and `b`.
pub fn gcd(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !is_zero(&r1) {
        let monic = make_monic(p, &r1);
        let r2 = rem_monic(p, &r0, &monic);
        r0 = monic;
        r1 = r2;
    }
    if is_zero(&r0) {
        r0
    } else {
        make_monic(p, &r0)
    }
}

pub fn make_monic(p: u64, a: &[u64]) -> Vec<u64> {
    let d = degree(a).expect("zero polynomial has no monic form");
    let inv = inv_mod(a[d], p);
    scale(p, a, inv)
}

/// Inverse of `x` modulo the prime `p`.
pub fn inv_mod(x: u64, p: u64) -> u64 {
    // Extended Euclid on (x, p); p prime and x != 0 mod p.
    let (mut r0, mut r1) = (x as i128 % p as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let quot = r0 / r1;
        let r2 = r0 - quot * r1;
        let s2 = s0 - quot * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    assert_eq!(r0.abs(), 1, "{x} not invertible mod {p}");
    let s = s0 * r0.signum();
    s.rem_euclid(p as i128) as u64
}

/// `base^exp` modulo the monic polynomial `m`.
pub fn powmod(p: u64, base: &[u64], mut exp: u64, m: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = rem_monic(p, base, m);
    while exp > 0 {
        if exp & 1 == 1 {
            result = rem_monic(p, &mul(p, &result, &b), m);
        }
        b = rem_monic(p, &mul(p, &b, &b), m);
        exp >>= 1;
    }
    result
}

/// `base^exp` modulo the monic polynomial `m`, for big exponents.
pub fn powmod_big(p: u64, base: &[u64], exp: &num_bigint::BigUint, m: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = rem_monic(p, base, m);
    let bits = exp.bits();
    for i in 0..bits {
        if exp.bit(i) {
            result = rem_monic(p, &mul(p, &result, &b), m);
        }
        if i + 1 < bits {
            b = rem_monic(p, &mul(p, &b, &b), m);
        }
    }
    result
}

/// Extended gcd: returns (g, s) with g = gcd(a, m) monic and s*a = g mod m.
/// Used for inverting field elements against the defining modulus.
pub fn ext_gcd_coeff(p: u64, a: &[u64], m: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut r0 = a.to_vec();
    let mut r1 = m.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![1u64];
    let mut s1 = Vec::new();
    while !is_zero(&r1) {
        let (q, r2) = div_rem(p, &r0, &r1);
        let s2 = sub(p, &s0, &mul(p, &q, &s1));
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if is_zero(&r0) {
        return (r0, s0);
    }
    let d = degree(&r0).unwrap();
    let inv = inv_mod(r0[d], p);
    (scale(p, &r0, inv), scale(p, &s0, inv))
}

/// Quotient and remainder of `a` by nonzero `b`.
pub fn div_rem(p: u64, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let bd = degree(b).expect("division by zero polynomial");
    let lead_inv = inv_mod(b[bd], p);
    let mut r = a.to_vec();
    trim(&mut r);
    let mut q = Vec::new();
    while let Some(rd) = degree(&r) {
        if rd < bd {
            break;
        }
        let coeff = r[rd] * lead_inv % p;
        let shift = rd - bd;
        if q.len() < shift + 1 {
            q.resize(shift + 1, 0);
        }
        q[shift] = coeff;
        for (i, &bc) in b.iter().enumerate().take(bd + 1) {
            let idx = shift + i;
            r[idx] = (r[idx] + p - coeff * bc % p) % p;
        }
        trim(&mut r);
    }
    (q, r)
}

pub fn eval(p: u64, a: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in a.iter().rev() {
        acc = (acc * x + c) % p;
    }
    acc
}

/// Irreducibility over F_p of a monic polynomial of degree e >= 1: no
/// irreducible factor of degree <= e/2 may divide it, which is detected
/// through gcds with X^{p^i} - X.
pub fn is_irreducible(p: u64, f: &[u64]) -> bool {
    let e = match degree(f) {
        Some(0) | None => return false,
        Some(d) => d,
    };
    if e == 1 {
        return true;
    }
    // Any nontrivial factorisation has a factor of degree <= e/2, and every
    // irreducible of degree d divides X^{p^d} - X, so the gcd sieve below
    // is a complete test.
    let x = vec![0u64, 1];
    let mut frob = powmod(p, &x, p, f); // X^p mod f
    for _ in 1..=e / 2 {
        let g = gcd(p, f, &sub(p, &frob, &x));
        if degree(&g) != Some(0) && !is_zero(&g) {
            return false;
        }
        if is_zero(&g) {
            return false;
        }
        // next Frobenius power
        frob = powmod(p, &frob, p, f);
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mul_and_rem() {
        // (X+1)^2 = X^2 + 2X + 1 over F_5
        assert_eq!(mul(5, &[1, 1], &[1, 1]), vec![1, 2, 1]);
        // X^2 mod (X^2 + X + 1) = -X - 1 = 4X + 4 over F_5
        assert_eq!(rem_monic(5, &[0, 0, 1], &[1, 1, 1]), vec![4, 4]);
    }

    #[test]
    fn irreducibility_small() {
        // X^2 + X + 1 irreducible over F_5 (no root: 1+1+1=3, 4+2+1=2, ...)
        assert!(is_irreducible(5, &[1, 1, 1]));
        // X^2 + 1 reducible over F_5 (roots 2, 3)
        assert!(!is_irreducible(5, &[1, 0, 1]));
        // X^2 + 1 irreducible over F_11
        assert!(is_irreducible(11, &[1, 0, 1]));
        // X^3 + X + 1 over F_2 irreducible
        assert!(is_irreducible(2, &[1, 1, 0, 1]));
        // X^4 + X^2 + 1 = (X^2+X+1)^2 over F_2
        assert!(!is_irreducible(2, &[1, 0, 1, 0, 1]));
    }

    #[test]
    fn ext_gcd_inverts() {
        // invert X against X^2 + X + 1 over F_5: X * s = 1 mod m
        let (g, s) = ext_gcd_coeff(5, &[0, 1], &[1, 1, 1]);
        assert_eq!(g, vec![1]);
        let prod = rem_monic(5, &mul(5, &[0, 1], &s), &[1, 1, 1]);
        assert_eq!(prod, vec![1]);
    }
}
