//! Integer helpers: primality, factoring, totients, divisors.
//!
//! Field orders reach ~11^24, so factoring and order computations work on
//! `BigUint`; everything else stays in u64.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for u64 (base set valid for all 64-bit inputs).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho_u64(n: u64) -> u64 {
    // Brent's cycle variant; n odd composite.
    let mut c = 1u64;
    loop {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = (mulmod_u64(x, x, n) + c) % n;
            y = (mulmod_u64(y, y, n) + c) % n;
            y = (mulmod_u64(y, y, n) + c) % n;
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorisation of `n` as sorted (prime, exponent) pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    let push = |p: u64, out: &mut Vec<(u64, u32)>| {
        if let Some(last) = out.iter_mut().find(|(q, _)| *q == p) {
            last.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    for p in [2u64, 3, 5] {
        while n % p == 0 {
            push(p, &mut out);
            n /= p;
        }
    }
    let mut d = 7u64;
    while d * d <= n && d < 100_000 {
        while n % d == 0 {
            push(d, &mut out);
            n /= d;
        }
        d += 2;
    }
    // whatever is left is prime, or cracked by rho
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u64(m) {
            push(m, &mut out);
            continue;
        }
        let f = pollard_rho_u64(m);
        stack.push(f);
        stack.push(m / f);
    }
    out.sort_unstable();
    out
}

pub fn euler_phi_u64(n: u64) -> u64 {
    let mut acc = n;
    for (p, _) in factor_u64(n) {
        acc = acc / p * (p - 1);
    }
    acc
}

pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, k) in factor_u64(n) {
        let snapshot = divs.clone();
        let mut q = 1u64;
        for _ in 0..k {
            q *= p;
            divs.extend(snapshot.iter().map(|d| d * q));
        }
    }
    divs.sort_unstable();
    divs
}

/// Miller-Rabin on BigUint with a fixed witness set. Probabilistic above
/// the u64 range, with error probability far below anything that matters
/// at the field sizes used here.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let witnesses: [u64; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    'witness: for &a in &witnesses {
        let a = BigUint::from(a);
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho_big(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let mut c = BigUint::one();
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = BigUint::from(2u32);
        let mut d = BigUint::one();
        while d == one {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
        }
        if d != one && &d != n {
            return d;
        }
        c += 1u32;
    }
}

/// Prime factorisation of a BigUint as sorted (prime, exponent) pairs.
pub fn factor_big(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let push = |p: BigUint, out: &mut Vec<(BigUint, u32)>| {
        if let Some(entry) = out.iter_mut().find(|(q, _)| *q == p) {
            entry.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    let mut rest = n.clone();
    // strip small primes first
    let mut d = 2u64;
    while d < 100_000 {
        let big_d = BigUint::from(d);
        if (&big_d * &big_d) > rest {
            break;
        }
        while (&rest % &big_d).is_zero() {
            push(big_d.clone(), &mut out);
            rest /= &big_d;
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_big(&m) {
            push(m, &mut out);
            continue;
        }
        let f = pollard_rho_big(&m);
        stack.push(&m / &f);
        stack.push(f);
    }
    out.sort_unstable();
    out
}
