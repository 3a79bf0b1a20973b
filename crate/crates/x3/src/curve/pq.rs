//! The auxiliary rational-function families P_i(s), Q_i(s).
//!
//! Over any field containing a primitive cube root of unity z, with
//! w(s) := s^2 - s + 1 = (s + z)(s + z^2):
//!
//!   P_i(s) = ((s + z)^{3i} - (s + z^2)^{3i}) / (3 (z - z^2) s (s - 1))
//!   Q_i(s) = (((1-z)/3)(s + z)^{3i-1} + ((1-z^2)/3)(s + z^2)^{3i-1}) / (s - 1)
//!
//! For i >= 1 both are polynomials; the removable singularities at
//! s in {0, 1} are eliminated by expanding the numerator and dividing
//! exactly, never by evaluating the quotient. Negative indices reduce to
//! positive ones with a power of w in the denominator:
//!
//!   P_{-k} = -P_k / w^{3k}
//!   Q_{-k} = R_k / w^{3k+1},   R_k := numerator with conjugate exponents
//!                                     3k+1 divided exactly by (s - 1)
//!
//! (R_0 = 1, matching Q_0 = 1/w.) The P-order of a scalar alpha is the
//! smallest i >= 1 with P_{i+1}(alpha) = 0, equivalently one less than the
//! multiplicative order of ((alpha + z)/(alpha + z^2))^3.

use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::gf::{epoly, mult_order, CtxOps, FieldCtx, FieldElement};

use super::CurveError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PqKind {
    P,
    Q,
}

/// Constructor of P_i / Q_i polynomials over one field context.
pub struct PqFamily {
    ctx: Arc<FieldCtx>,
    zeta: FieldElement,
}

impl PqFamily {
    pub fn new(ctx: &Arc<FieldCtx>) -> Result<Self, CurveError> {
        let zeta = ctx.zeta3().ok_or(CurveError::NoCubeRoot)?;
        Ok(PqFamily {
            ctx: Arc::clone(ctx),
            zeta,
        })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    fn linear(&self, c: &FieldElement) -> Vec<FieldElement> {
        vec![c.clone(), self.ctx.one()]
    }

    /// s^2 - s + 1
    fn w_poly(&self) -> Vec<FieldElement> {
        vec![self.ctx.one(), self.ctx.one().neg(), self.ctx.one()]
    }

    /// The polynomial part and the w-denominator exponent of P_i or Q_i,
    /// so that the function equals poly / w^exp.
    pub fn poly(&self, kind: PqKind, i: i64) -> (Vec<FieldElement>, u32) {
        let ctx = &self.ctx;
        let z = &self.zeta;
        let z2 = z.square();
        match kind {
            PqKind::P => {
                if i == 0 {
                    return (Vec::new(), 0);
                }
                let k = i.unsigned_abs() as u32;
                let s_plus_z = self.linear(z);
                let s_plus_z2 = self.linear(&z2);
                let num = epoly::sub(
                    ctx,
                    &epoly_pow(ctx, &s_plus_z, 3 * k),
                    &epoly_pow(ctx, &s_plus_z2, 3 * k),
                );
                // divide by 3 (z - z^2) s (s - 1)
                let scal = ctx.from_u64(3).mul(&z.sub(&z2));
                let step1 = epoly::scale(&num, &scal.inverse().expect("p != 3 and z != z^2"));
                let step2 = divexact_by_s(ctx, &step1);
                let p_abs = epoly::divexact(ctx, &step2, &[ctx.one().neg(), ctx.one()]);
                if i > 0 {
                    (p_abs, 0)
                } else {
                    (epoly::scale(&p_abs, &ctx.one().neg()), 3 * k)
                }
            }
            PqKind::Q => {
                let c1 = ctx.one().sub(z).mul(&ctx.from_u64(3).inverse().unwrap());
                let c2 = ctx.one().sub(&z2).mul(&ctx.from_u64(3).inverse().unwrap());
                if i >= 1 {
                    let e = (3 * i - 1) as u32;
                    let num = epoly::add(
                        ctx,
                        &epoly::scale(&epoly_pow(ctx, &self.linear(z), e), &c1),
                        &epoly::scale(&epoly_pow(ctx, &self.linear(&z2), e), &c2),
                    );
                    let q = epoly::divexact(ctx, &num, &[ctx.one().neg(), ctx.one()]);
                    (q, 0)
                } else {
                    let k = (-i) as u32;
                    // conjugate exponents: (s+z)^{-(3k+1)} = (s+z^2)^{3k+1}/w^{3k+1}
                    let e = 3 * k + 1;
                    let num = epoly::add(
                        ctx,
                        &epoly::scale(&epoly_pow(ctx, &self.linear(&z2), e), &c1),
                        &epoly::scale(&epoly_pow(ctx, &self.linear(z), e), &c2),
                    );
                    let r = epoly::divexact(ctx, &num, &[ctx.one().neg(), ctx.one()]);
                    (r, 3 * k + 1)
                }
            }
        }
    }

    /// Exact value of P_i(s) or Q_i(s).
    pub fn eval(&self, kind: PqKind, i: i64, s: &FieldElement) -> Result<FieldElement, CurveError> {
        let (poly, wexp) = self.poly(kind, i);
        let num = epoly::eval(&self.ctx, &poly, s);
        if wexp == 0 {
            return Ok(num);
        }
        let w = epoly::eval(&self.ctx, &self.w_poly(), s);
        let winv = w.inverse().ok_or_else(|| CurveError::PoleAt(format!("{kind:?}_{i} at s={s}")))?;
        Ok(num.mul(&winv.pow(wexp as u64)))
    }

    /// Checks both product identities
    ///   P_i P_{l+j} - P_j P_{l+i} = w^{3j} P_{i-j} P_l
    ///   P_i Q_{l+j} - P_j Q_{l+i} = w^{3j} P_{i-j} Q_l
    /// at the given arguments (poles excluded by the caller's choice of s).
    pub fn identity_check(
        &self,
        i: i64,
        j: i64,
        l: i64,
        s: &FieldElement,
    ) -> Result<bool, CurveError> {
        let w = epoly::eval(&self.ctx, &self.w_poly(), s);
        let w3j = if 3 * j >= 0 {
            w.pow((3 * j) as u64)
        } else {
            w.inverse()
                .ok_or_else(|| CurveError::PoleAt(format!("w^(3*{j}) at s={s}")))?
                .pow((-3 * j) as u64)
        };
        let p = |idx: i64| self.eval(PqKind::P, idx, s);
        let q = |idx: i64| self.eval(PqKind::Q, idx, s);
        let lhs1 = p(i)?.mul(&p(l + j)?).sub(&p(j)?.mul(&p(l + i)?));
        let rhs1 = w3j.mul(&p(i - j)?).mul(&p(l)?);
        let lhs2 = p(i)?.mul(&q(l + j)?).sub(&p(j)?.mul(&q(l + i)?));
        let rhs2 = w3j.mul(&p(i - j)?).mul(&q(l)?);
        Ok(lhs1 == rhs1 && lhs2 == rhs2)
    }

    /// P-order of alpha: one less than the multiplicative order of
    /// ((alpha + z)/(alpha + z^2))^3. Excluded inputs: 0, 1 and the roots
    /// of s^2 - s + 1 (where the ratio degenerates or has order <= 3).
    pub fn p_order(&self, alpha: &FieldElement) -> Result<u64, CurveError> {
        self.check_not_excluded(alpha)?;
        let z = &self.zeta;
        let z2 = z.square();
        let den = alpha.add(&z2);
        let sigma = alpha.add(z).mul(&den.inverse().expect("alpha != -z^2"));
        let rho = sigma.pow(3);
        let ord = mult_order(&rho).expect("sigma nonzero");
        let ord = ord.to_u64().expect("order fits u64 at desk scale");
        assert!(ord >= 2, "excluded alpha slipped through");
        Ok(ord - 1)
    }

    pub fn check_not_excluded(&self, alpha: &FieldElement) -> Result<(), CurveError> {
        let ctx = &self.ctx;
        if alpha.is_zero() || alpha.is_one() {
            return Err(CurveError::ExcludedAlpha);
        }
        let w = epoly::eval(ctx, &self.w_poly(), alpha);
        if w.is_zero() {
            return Err(CurveError::ExcludedAlpha);
        }
        Ok(())
    }

    /// True iff alpha^2 - alpha + 1 = 0.
    pub fn is_alpha_special(&self, alpha: &FieldElement) -> bool {
        epoly::eval(&self.ctx, &self.w_poly(), alpha).is_zero()
    }

    /// Smallest i in [1, bound] with P_{i+1}(alpha) = 0, scanning the
    /// polynomial family directly (no order computation needed).
    pub fn p_order_up_to(&self, alpha: &FieldElement, bound: u64) -> Option<u64> {
        for i in 1..=bound {
            let v = self
                .eval(PqKind::P, (i + 1) as i64, alpha)
                .expect("positive index evaluation has no poles");
            if v.is_zero() {
                return Some(i);
            }
        }
        None
    }
}

fn epoly_pow(ctx: &Arc<FieldCtx>, base: &[FieldElement], mut k: u32) -> Vec<FieldElement> {
    let mut acc = vec![ctx.one()];
    let mut b = base.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = epoly::mul(ctx, &acc, &b);
        }
        k >>= 1;
        if k > 0 {
            b = epoly::mul(ctx, &b, &b);
        }
    }
    acc
}

/// Exact division by the monomial s.
fn divexact_by_s(ctx: &Arc<FieldCtx>, a: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() {
        return Vec::new();
    }
    assert!(a[0].is_zero(), "inexact division by s");
    let _ = ctx;
    a[1..].to_vec()
}
