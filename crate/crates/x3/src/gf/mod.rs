//! Exact arithmetic in prime fields F_p and their extensions F_{p^e}.
//!
//! A [`FieldCtx`] pins down one concrete field: the characteristic, the
//! extension degree and a deterministically chosen defining modulus (the
//! lexicographically smallest monic irreducible, coefficients compared
//! low degree first). Elements are dense coordinate vectors over F_p with
//! respect to the power basis of the modulus. Contexts are immutable and
//! shared behind `Arc`, so elements are freely `Send + Sync`.
//!
//! Besides ring/field arithmetic the module provides the number-theoretic
//! operations the curve work needs: n-th roots (via the structure of the
//! cyclic unit group), multiplicative orders, subfield embeddings and the
//! F_{q^2}-Frobenius.

pub mod arith;
pub mod epoly;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Errors from field construction and element-level operations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GfError {
    NotPrime(u64),
    DegreeTooLarge(usize),
    ZeroElement,
    ContextMismatch,
    NoEmbedding { src: String, dst: String },
}

impl fmt::Display for GfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GfError::NotPrime(p) => write!(f, "{p} is not prime"),
            GfError::DegreeTooLarge(e) => write!(f, "extension degree {e} out of range"),
            GfError::ZeroElement => write!(f, "operation undefined for the zero element"),
            GfError::ContextMismatch => write!(f, "field contexts do not match"),
            GfError::NoEmbedding { src, dst } => {
                write!(f, "no embedding of {src} into {dst}")
            }
        }
    }
}

impl std::error::Error for GfError {}

/// An immutable finite-field context F_{p^e}.
#[derive(Debug)]
pub struct FieldCtx {
    p: u64,
    e: usize,
    /// Monic defining polynomial, length e+1, low degree first.
    modulus: Vec<u64>,
    /// Cached primitive cube root of unity; present iff 3 | p^e - 1.
    zeta3: Option<Vec<u64>>,
    order: BigUint,
    unit_order: BigUint,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FieldCtx {}

/// Builds F_{p^e} with the deterministic modulus choice. For e = 1 the
/// modulus is X itself (prime-field convention).
pub fn make_field(p: u64, e: usize) -> Result<Arc<FieldCtx>, GfError> {
    if !arith::is_prime_u64(p) {
        return Err(GfError::NotPrime(p));
    }
    if e == 0 || e > 64 {
        return Err(GfError::DegreeTooLarge(e));
    }
    let modulus = smallest_irreducible(p, e);
    let order = BigUint::from(p).pow(e as u32);
    let unit_order = &order - 1u32;
    let zeta3 = if (&unit_order % 3u32).is_zero() {
        Some(find_zeta3(p, e, &modulus, &unit_order))
    } else {
        None
    };
    Ok(Arc::new(FieldCtx {
        p,
        e,
        modulus,
        zeta3,
        order,
        unit_order,
    }))
}

fn smallest_irreducible(p: u64, e: usize) -> Vec<u64> {
    if e == 1 {
        return vec![0, 1]; // X
    }
    // Scan monic degree-e polynomials in lexicographic order of
    // (c_0, ..., c_{e-1}). Constant term zero means divisibility by X,
    // so the scan starts at (1, 0, ..., 0).
    let mut c = vec![0u64; e];
    c[0] = 1;
    loop {
        let mut f = c.clone();
        f.push(1);
        if poly::is_irreducible(p, &f) {
            return f;
        }
        if !incr_odometer(&mut c, p) {
            unreachable!("no monic irreducible of degree {e} over F_{p}");
        }
    }
}

/// Increments the coefficient vector with the last coordinate moving
/// fastest (so vectors are visited in ascending lexicographic order).
fn incr_odometer(c: &mut [u64], p: u64) -> bool {
    for i in (0..c.len()).rev() {
        c[i] += 1;
        if c[i] < p {
            return true;
        }
        c[i] = 0;
    }
    false
}

fn find_zeta3(p: u64, e: usize, modulus: &[u64], unit_order: &BigUint) -> Vec<u64> {
    let exp = unit_order / 3u32;
    let mut idx = 2u64;
    loop {
        let h = index_to_coeffs(p, e, idx);
        let w = poly::powmod_big(p, &h, &exp, modulus);
        if poly::degree(&w) != Some(0) || w.first() != Some(&1) {
            if poly::is_zero(&w) {
                idx += 1;
                continue;
            }
            // w has order exactly 3; canonicalise to the lexicographically
            // smaller of the two primitive cube roots.
            let w2 = poly::rem_monic(p, &poly::mul(p, &w, &w), modulus);
            let mut a = w.clone();
            let mut b = w2.clone();
            a.resize(e, 0);
            b.resize(e, 0);
            let chosen = if a <= b { a } else { b };
            // zeta^2 + zeta + 1 = 0 must hold
            let sq = poly::rem_monic(p, &poly::mul(p, &chosen, &chosen), modulus);
            let mut check = poly::add(p, &sq, &chosen);
            check = poly::add(p, &check, &[1]);
            assert!(poly::is_zero(&check), "cube root of unity search failed");
            return chosen;
        }
        idx += 1;
    }
}

fn index_to_coeffs(p: u64, e: usize, mut idx: u64) -> Vec<u64> {
    let mut c = vec![0u64; e];
    for slot in c.iter_mut() {
        *slot = idx % p;
        idx /= p;
        if idx == 0 {
            break;
        }
    }
    c
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ext_degree(&self) -> usize {
        self.e
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// p^e as a big integer.
    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// p^e - 1, the order of the unit group.
    pub fn unit_order(&self) -> &BigUint {
        &self.unit_order
    }

    /// p^e when it fits in u64 (used to decide enumerability).
    pub fn size_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn describe(&self) -> String {
        format!("F_{}^{}", self.p, self.e)
    }
}

/// Element-level API is on `Arc<FieldCtx>` so results can share the context.
pub trait CtxOps {
    fn zero(&self) -> FieldElement;
    fn one(&self) -> FieldElement;
    fn from_u64(&self, v: u64) -> FieldElement;
    fn from_i64(&self, v: i64) -> FieldElement;
    fn element(&self, coeffs: Vec<u64>) -> FieldElement;
    fn element_from_index(&self, idx: u64) -> FieldElement;
    fn zeta3(&self) -> Option<FieldElement>;
    fn parse_element(&self, s: &str) -> Result<FieldElement, String>;
    fn iter_elements(&self) -> ElementIter;
}

impl CtxOps for Arc<FieldCtx> {
    fn zero(&self) -> FieldElement {
        FieldElement {
            ctx: Arc::clone(self),
            coeffs: vec![0; self.e],
        }
    }

    fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    fn from_u64(&self, v: u64) -> FieldElement {
        let mut coeffs = vec![0; self.e];
        coeffs[0] = v % self.p;
        FieldElement {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    fn from_i64(&self, v: i64) -> FieldElement {
        let r = v.rem_euclid(self.p as i64) as u64;
        self.from_u64(r)
    }

    /// Builds an element from explicit coordinates (short vectors are
    /// padded, all values reduced mod p).
    fn element(&self, mut coeffs: Vec<u64>) -> FieldElement {
        assert!(coeffs.len() <= self.e, "coordinate vector too long");
        coeffs.resize(self.e, 0);
        for c in coeffs.iter_mut() {
            *c %= self.p;
        }
        FieldElement {
            ctx: Arc::clone(self),
            coeffs,
        }
    }

    /// The idx-th element in base-p coordinate order; the canonical
    /// deterministic enumeration used by scans and samplers.
    fn element_from_index(&self, idx: u64) -> FieldElement {
        FieldElement {
            ctx: Arc::clone(self),
            coeffs: index_to_coeffs(self.p, self.e, idx),
        }
    }

    fn zeta3(&self) -> Option<FieldElement> {
        self.zeta3.as_ref().map(|c| FieldElement {
            ctx: Arc::clone(self),
            coeffs: c.clone(),
        })
    }

    /// Parses the textual encoding: comma-separated F_p coordinates, low
    /// degree first, e.g. "3,1" = 3 + X.
    fn parse_element(&self, s: &str) -> Result<FieldElement, String> {
        let coeffs: Result<Vec<u64>, _> = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|e| e.to_string()))
            .collect();
        let coeffs = coeffs?;
        if coeffs.len() > self.e {
            return Err(format!(
                "{} coordinates given but field has degree {}",
                coeffs.len(),
                self.e
            ));
        }
        Ok(self.element(coeffs))
    }

    fn iter_elements(&self) -> ElementIter {
        let size = self
            .size_u64()
            .expect("field too large for exhaustive enumeration");
        ElementIter {
            ctx: Arc::clone(self),
            next: 0,
            size,
        }
    }
}

pub struct ElementIter {
    ctx: Arc<FieldCtx>,
    next: u64,
    size: u64,
}

impl Iterator for ElementIter {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.next >= self.size {
            return None;
        }
        let el = self.ctx.element_from_index(self.next);
        self.next += 1;
        Some(el)
    }
}

/// An element of F_{p^e}: a length-e coordinate vector over F_p.
#[derive(Clone)]
pub struct FieldElement {
    ctx: Arc<FieldCtx>,
    coeffs: Vec<u64>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.compatible(other), "comparing across field contexts");
        self.coeffs == other.coeffs
    }
}
impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic order on coordinates, low degree first.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert!(self.compatible(other));
        self.coeffs.cmp(&other.coeffs)
    }
}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FieldElement {
    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn compatible(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ctx, &other.ctx) || *self.ctx == *other.ctx
    }

    fn reduce(ctx: &Arc<FieldCtx>, raw: Vec<u64>) -> FieldElement {
        let mut r = poly::rem_monic(ctx.p, &raw, &ctx.modulus);
        r.resize(ctx.e, 0);
        FieldElement {
            ctx: Arc::clone(ctx),
            coeffs: r,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.compatible(other), "field context mismatch");
        let p = self.ctx.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % p)
            .collect();
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.compatible(other), "field context mismatch");
        let p = self.ctx.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + p - b) % p)
            .collect();
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.ctx.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.compatible(other), "field context mismatch");
        let raw = poly::mul(self.ctx.p, &self.coeffs, &other.coeffs);
        FieldElement::reduce(&self.ctx, raw)
    }

    pub fn scale_u64(&self, s: u64) -> Self {
        let p = self.ctx.p;
        let s = s % p;
        let coeffs = self.coeffs.iter().map(|&a| a * s % p).collect();
        FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let (g, s) = poly::ext_gcd_coeff(self.ctx.p, &self.coeffs, &self.ctx.modulus);
        debug_assert_eq!(poly::degree(&g), Some(0));
        debug_assert_eq!(g.first(), Some(&1));
        let mut coeffs = s;
        coeffs.resize(self.ctx.e, 0);
        Some(FieldElement {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        })
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inverse().expect("division by zero field element"))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, exp: &BigUint) -> Self {
        let mut acc = self.ctx.one();
        let mut base = self.clone();
        let bits = exp.bits();
        for i in 0..bits {
            if exp.bit(i) {
                acc = acc.mul(&base);
            }
            if i + 1 < bits {
                base = base.square();
            }
        }
        acc
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::add(self, rhs)
    }
}
impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::sub(self, rhs)
    }
}
impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        FieldElement::mul(self, rhs)
    }
}
impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// Smallest t >= 1 with x^t = 1; divides p^e - 1.
pub fn mult_order(x: &FieldElement) -> Result<BigUint, GfError> {
    if x.is_zero() {
        return Err(GfError::ZeroElement);
    }
    let n = x.ctx().unit_order().clone();
    let mut order = n.clone();
    for (ell, k) in arith::factor_big(&n) {
        // strip ell from the order as long as the power still fixes x
        let mut reduced = order.clone();
        for _ in 0..k {
            if (&reduced % &ell).is_zero() {
                let cand = &reduced / &ell;
                if x.pow_big(&cand).is_one() {
                    reduced = cand;
                    continue;
                }
            }
            break;
        }
        order = reduced;
    }
    Ok(order)
}

/// A generator of the group of d-th roots of unity, or `None` when
/// d does not divide p^e - 1.
pub fn unity_root_generator(ctx: &Arc<FieldCtx>, d: u64) -> Option<FieldElement> {
    if d == 0 {
        return None;
    }
    let n = ctx.unit_order();
    if !(n % d).is_zero() {
        return None;
    }
    if d == 1 {
        return Some(ctx.one());
    }
    let exp = n / d;
    let prime_divs: Vec<u64> = arith::factor_u64(d).into_iter().map(|(p, _)| p).collect();
    let mut idx = 2u64;
    loop {
        let h = ctx.element_from_index(idx);
        idx += 1;
        if h.is_zero() {
            continue;
        }
        let w = h.pow_big(&exp);
        if w.is_one() {
            continue;
        }
        // order of w divides d; it is exactly d iff no maximal proper
        // divisor power collapses to 1
        if prime_divs.iter().all(|&r| !w.pow(d / r).is_one()) {
            return Some(w);
        }
    }
}

/// All solutions z of z^n = c, sorted by coordinate vector. The zero input
/// yields {0}; an empty result means c is not an n-th power.
pub fn nth_roots(c: &FieldElement, n: u64) -> Vec<FieldElement> {
    assert!(n >= 1, "root index must be positive");
    let ctx = c.ctx();
    if c.is_zero() {
        return vec![ctx.zero()];
    }
    let group = ctx.unit_order();
    let d = gcd_with_group(n, group);
    // solvability: c must lie in the image of the n-th power map, the
    // index-d subgroup
    if !c.pow_big(&(group / d)).is_one() {
        return Vec::new();
    }
    let z0 = any_nth_root(c, n).expect("solvable root search failed");
    debug_assert!(z0.pow(n) == *c);
    let omega = unity_root_generator(ctx, d).expect("d divides the group order");
    let mut roots = Vec::with_capacity(d as usize);
    let mut w = ctx.one();
    for _ in 0..d {
        roots.push(z0.mul(&w));
        w = w.mul(&omega);
    }
    roots.sort();
    roots.dedup();
    debug_assert_eq!(roots.len(), d as usize);
    roots
}

fn gcd_with_group(n: u64, group: &BigUint) -> u64 {
    let rem = (group % n).to_u64().unwrap();
    if rem == 0 {
        n
    } else {
        arith::gcd_u64(n, rem)
    }
}

/// One n-th root of c, assuming solvability was checked. Peels one prime
/// at a time; among the ell-th roots at each stage at least one stays
/// solvable for the remaining index, so the search always succeeds.
fn any_nth_root(c: &FieldElement, n: u64) -> Option<FieldElement> {
    if n == 1 {
        return Some(c.clone());
    }
    let ell = arith::factor_u64(n)[0].0;
    let rest = n / ell;
    let group = c.ctx().unit_order().clone();
    for r in prime_roots(c, ell) {
        let d_rest = gcd_with_group(rest, &group);
        if r.pow_big(&(&group / d_rest)).is_one() {
            if let Some(z) = any_nth_root(&r, rest) {
                return Some(z);
            }
        }
    }
    None
}

/// All ell-th roots of c for prime ell (possibly empty).
fn prime_roots(c: &FieldElement, ell: u64) -> Vec<FieldElement> {
    let ctx = c.ctx();
    let group = ctx.unit_order().clone();
    if !(&group % ell).is_zero() {
        // the power map is a bijection: single root c^{ell^{-1} mod group}
        let inv = modinv_big(ell, &group);
        return vec![c.pow_big(&inv)];
    }
    // group = ell^s * t with ell not dividing t
    let mut t = group.clone();
    let mut s = 0u32;
    while (&t % ell).is_zero() {
        t /= ell;
        s += 1;
    }
    // solvable iff c^(group/ell) = 1
    if !c.pow_big(&(&group / ell)).is_one() {
        return Vec::new();
    }
    // eta generates the Sylow ell-subgroup
    let eta = {
        let mut idx = 2u64;
        loop {
            let h = ctx.element_from_index(idx);
            idx += 1;
            if h.is_zero() {
                continue;
            }
            if !h.pow_big(&(&group / ell)).is_one() {
                break h.pow_big(&t);
            }
        }
    };
    // discrete log of c^t in <eta> by base-ell digits
    let a = c.pow_big(&t);
    let k = sylow_dlog(&a, &eta, ell, s);
    debug_assert!((&k % ell).is_zero());
    let ell_big = BigUint::from(ell);
    let ell_pow_s = ell_big.pow(s);
    // beta = ell^{-1} mod t taken in [1, t], so beta*ell - 1 = t*mu
    let (beta, mu) = if t.is_one() {
        (BigUint::one(), BigUint::from(ell - 1))
    } else {
        let beta = modinv_big(ell, &t);
        let beta = if beta.is_zero() { t.clone() } else { beta };
        let mu = (&beta * ell - 1u32) / &t;
        (beta, mu)
    };
    let k_over_ell = &k / ell;
    let delta = {
        let v = (&k_over_ell * &mu) % &ell_pow_s;
        (&ell_pow_s - v) % &ell_pow_s
    };
    let z = c.pow_big(&beta).mul(&eta.pow_big(&delta));
    debug_assert!(z.pow(ell) == *c, "prime root construction failed");
    let unity = eta.pow_big(&ell_big.pow(s - 1));
    let mut roots = Vec::with_capacity(ell as usize);
    let mut w = ctx.one();
    for _ in 0..ell {
        roots.push(z.mul(&w));
        w = w.mul(&unity);
    }
    roots.sort();
    roots
}

/// Digits of the discrete log of a in the cyclic group <eta> of order ell^s.
fn sylow_dlog(a: &FieldElement, eta: &FieldElement, ell: u64, s: u32) -> BigUint {
    let ctx = a.ctx();
    let ell_big = BigUint::from(ell);
    let gamma = eta.pow_big(&ell_big.pow(s - 1)); // order ell
    // table of gamma^d for digit lookup
    let mut table = Vec::with_capacity(ell as usize);
    let mut g = ctx.one();
    for _ in 0..ell {
        table.push(g.clone());
        g = g.mul(&gamma);
    }
    let eta_inv = eta.inverse().expect("eta nonzero");
    let mut k = BigUint::zero();
    for j in 0..s {
        let shifted = a.mul(&eta_inv.pow_big(&k));
        let probe = shifted.pow_big(&ell_big.pow(s - 1 - j));
        let digit = table
            .iter()
            .position(|t| *t == probe)
            .expect("dlog digit not found") as u64;
        k += BigUint::from(digit) * ell_big.pow(j);
    }
    k
}

fn modinv_big(a: u64, m: &BigUint) -> BigUint {
    let a = BigInt::from(a);
    let m_int = BigInt::from(m.clone());
    let ext = a.extended_gcd(&m_int);
    assert!(ext.gcd.is_one(), "not invertible");
    let r = ext.x.mod_floor(&m_int);
    r.to_biguint().expect("mod_floor of positive modulus")
}

/// The F_{q^2}-Frobenius x -> x^{q^2}. Requires that x lives in an
/// extension of F_{q^2}, i.e. 2n | e where q = p^n.
pub fn frobenius_q2(x: &FieldElement, q: u64) -> Result<FieldElement, GfError> {
    let ctx = x.ctx();
    let p = ctx.p();
    let mut n = 0usize;
    let mut qq = q;
    while qq > 1 {
        if qq % p != 0 {
            return Err(GfError::ContextMismatch);
        }
        qq /= p;
        n += 1;
    }
    if n == 0 || ctx.ext_degree() % (2 * n) != 0 {
        return Err(GfError::ContextMismatch);
    }
    Ok(x.pow(q * q))
}

/// A ring homomorphism F_{p^e} -> F_{p^E} with e | E, determined by sending
/// the source generator to the lexicographically smallest root of the
/// source modulus in the target.
pub struct Embedding {
    src: Arc<FieldCtx>,
    dst: Arc<FieldCtx>,
    /// powers 1, w, w^2, ..., w^{e-1} of the chosen generator image
    powers: Vec<FieldElement>,
}

impl Embedding {
    pub fn new(src: &Arc<FieldCtx>, dst: &Arc<FieldCtx>) -> Result<Embedding, GfError> {
        let err = || GfError::NoEmbedding {
            src: src.describe(),
            dst: dst.describe(),
        };
        if src.p() != dst.p() || dst.ext_degree() % src.ext_degree() != 0 {
            return Err(err());
        }
        let e = src.ext_degree();
        let mut powers = Vec::with_capacity(e);
        if e == 1 {
            powers.push(dst.one());
        } else {
            let f: Vec<FieldElement> = src
                .modulus()
                .iter()
                .map(|&c| dst.from_u64(c))
                .collect();
            let root = find_one_root(dst, &f);
            // all roots are Frobenius conjugates of any one of them
            let mut conj = Vec::with_capacity(e);
            let mut r = root;
            for _ in 0..e {
                debug_assert!(epoly::eval(dst, &f, &r).is_zero());
                conj.push(r.clone());
                r = r.pow(dst.p());
            }
            conj.sort();
            conj.dedup();
            assert_eq!(conj.len(), e, "source modulus must split simply");
            let w = conj[0].clone();
            let mut acc = dst.one();
            for _ in 0..e {
                powers.push(acc.clone());
                acc = acc.mul(&w);
            }
        }
        Ok(Embedding {
            src: Arc::clone(src),
            dst: Arc::clone(dst),
            powers,
        })
    }

    pub fn src(&self) -> &Arc<FieldCtx> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FieldCtx> {
        &self.dst
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        assert!(
            Arc::ptr_eq(x.ctx(), &self.src) || **x.ctx() == *self.src,
            "element not from the embedding source"
        );
        let mut acc = self.dst.zero();
        for (c, w) in x.coeffs().iter().zip(&self.powers) {
            if *c != 0 {
                acc = acc.add(&w.scale_u64(*c));
            }
        }
        acc
    }
}

/// One-shot embedding of a single element.
pub fn embed(x: &FieldElement, target: &Arc<FieldCtx>) -> Result<FieldElement, GfError> {
    Embedding::new(x.ctx(), target).map(|m| m.apply(x))
}

/// Finds one root in `ctx` of a monic polynomial that splits into distinct
/// linear factors there (Cantor-Zassenhaus, deterministic seeding).
fn find_one_root(ctx: &Arc<FieldCtx>, f: &[FieldElement]) -> FieldElement {
    let seed = ctx.p() ^ ((f.len() as u64) << 32) ^ ((ctx.ext_degree() as u64) << 16);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut work = f.to_vec();
    loop {
        let d = epoly::degree(&work).expect("nonzero polynomial");
        if d == 1 {
            // monic X + c -> root -c
            return work[0].neg();
        }
        let u: Vec<FieldElement> = (0..d)
            .map(|_| {
                let coeffs: Vec<u64> = (0..ctx.ext_degree())
                    .map(|_| rng.gen_range(0..ctx.p()))
                    .collect();
                ctx.element(coeffs)
            })
            .collect();
        let probe = if ctx.p() == 2 {
            // additive trace splits roots in characteristic two
            let mut acc = epoly::rem(ctx, &u, &work);
            let mut pw = acc.clone();
            for _ in 1..ctx.ext_degree() {
                pw = epoly::rem(ctx, &epoly::mul(ctx, &pw, &pw), &work);
                acc = epoly::add(ctx, &acc, &pw);
            }
            acc
        } else {
            let exp = ctx.unit_order() / 2u32;
            let pw = epoly::powmod_big(ctx, &u, &exp, &work);
            epoly::sub(ctx, &pw, &[ctx.one()])
        };
        let g = epoly::gcd(ctx, &work, &probe);
        if let Some(gd) = epoly::degree(&g) {
            if gd > 0 && gd < d {
                // recurse into the smaller factor
                let other = epoly::divexact(ctx, &work, &g);
                work = if gd <= epoly::degree(&other).unwrap_or(0) {
                    g
                } else {
                    other
                };
            }
        }
    }
}

#[cfg(test)]
mod tests;
