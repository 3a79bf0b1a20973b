//! Dense univariate polynomials with coefficients in an extension field.
//!
//! Same conventions as [`super::poly`]: vectors are low degree first and a
//! possibly empty vector is the zero polynomial. Only what the embedding
//! search and the curve-side constructions need.

use std::sync::Arc;

use num_bigint::BigUint;

use super::{CtxOps, FieldCtx, FieldElement};

pub fn trim(v: &mut Vec<FieldElement>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

pub fn degree(a: &[FieldElement]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

pub fn is_zero(a: &[FieldElement]) -> bool {
    a.iter().all(|c| c.is_zero())
}

pub fn add(ctx: &Arc<FieldCtx>, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let zero = ctx.zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x.add(y));
    }
    trim(&mut out);
    out
}

pub fn sub(ctx: &Arc<FieldCtx>, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let zero = ctx.zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x.sub(y));
    }
    trim(&mut out);
    out
}

pub fn mul(ctx: &Arc<FieldCtx>, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![ctx.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

pub fn scale(a: &[FieldElement], s: &FieldElement) -> Vec<FieldElement> {
    let mut out: Vec<FieldElement> = a.iter().map(|c| c.mul(s)).collect();
    trim(&mut out);
    out
}

pub fn eval(ctx: &Arc<FieldCtx>, a: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = ctx.zero();
    for c in a.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}

/// Quotient and remainder by a nonzero divisor.
pub fn div_rem(
    ctx: &Arc<FieldCtx>,
    a: &[FieldElement],
    b: &[FieldElement],
) -> (Vec<FieldElement>, Vec<FieldElement>) {
    let bd = degree(b).expect("division by zero polynomial");
    let lead_inv = b[bd].inverse().expect("nonzero leading coefficient");
    let mut r = a.to_vec();
    trim(&mut r);
    let mut q: Vec<FieldElement> = Vec::new();
    while let Some(rd) = degree(&r) {
        if rd < bd {
            break;
        }
        let coeff = r[rd].mul(&lead_inv);
        let shift = rd - bd;
        if q.len() < shift + 1 {
            q.resize(shift + 1, ctx.zero());
        }
        q[shift] = coeff.clone();
        for (i, bc) in b.iter().enumerate().take(bd + 1) {
            let delta = coeff.mul(bc);
            r[shift + i] = r[shift + i].sub(&delta);
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn rem(ctx: &Arc<FieldCtx>, a: &[FieldElement], m: &[FieldElement]) -> Vec<FieldElement> {
    div_rem(ctx, a, m).1
}

/// Exact division; panics if the remainder is nonzero.
pub fn divexact(
    ctx: &Arc<FieldCtx>,
    a: &[FieldElement],
    b: &[FieldElement],
) -> Vec<FieldElement> {
    let (q, r) = div_rem(ctx, a, b);
    assert!(is_zero(&r), "inexact polynomial division");
    q
}

pub fn make_monic(a: &[FieldElement]) -> Vec<FieldElement> {
    let d = degree(a).expect("zero polynomial");
    let inv = a[d].inverse().expect("leading coefficient invertible");
    scale(a, &inv)
}

pub fn gcd(ctx: &Arc<FieldCtx>, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    while !is_zero(&r1) {
        let monic = make_monic(&r1);
        let r2 = rem(ctx, &r0, &monic);
        r0 = monic;
        r1 = r2;
    }
    if is_zero(&r0) {
        r0
    } else {
        make_monic(&r0)
    }
}

pub fn powmod_big(
    ctx: &Arc<FieldCtx>,
    base: &[FieldElement],
    exp: &BigUint,
    m: &[FieldElement],
) -> Vec<FieldElement> {
    let mut result = vec![ctx.one()];
    let mut b = rem(ctx, base, m);
    let bits = exp.bits();
    for i in 0..bits {
        if exp.bit(i) {
            result = rem(ctx, &mul(ctx, &result, &b), m);
        }
        if i + 1 < bits {
            b = rem(ctx, &mul(ctx, &b, &b), m);
        }
    }
    result
}
