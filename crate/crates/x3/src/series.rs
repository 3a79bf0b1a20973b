//! Truncated power series over a finite field context.
//!
//! A series carries its truncation order `prec`: coefficients are known
//! exactly for t^0 .. t^{prec-1} and nothing is claimed beyond that.
//! Arithmetic takes the conservative min-precision rule. Newton lifting
//! and reversion validate their output with a residual check at full
//! precision, so a truncation bug cannot silently produce a wrong series.

use std::fmt;
use std::sync::Arc;

use crate::gf::{CtxOps, FieldCtx, FieldElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    NonUnitDivisor,
    ContextMismatch,
    SingularStart,
    NoConvergence,
    NotReversible,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            SeriesError::NonUnitDivisor => "division by a series with zero constant term",
            SeriesError::ContextMismatch => "series over different field contexts",
            SeriesError::SingularStart => "derivative vanishes at the starting value",
            SeriesError::NoConvergence => "lifted series does not satisfy the equation",
            SeriesError::NotReversible => "series has no compositional inverse",
        };
        write!(f, "{msg}")
    }
}

impl std::error::Error for SeriesError {}

/// Result of reading off the leading exponent of a truncated series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Exact(usize),
    /// All stored coefficients vanish: valuation is at least the precision.
    AtLeast(usize),
}

impl Valuation {
    pub fn exact(self) -> Option<usize> {
        match self {
            Valuation::Exact(v) => Some(v),
            Valuation::AtLeast(_) => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    ctx: Arc<FieldCtx>,
    /// Exactly `prec` stored coefficients, low order first.
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})t^{i}"))
            .collect();
        write!(f, "{} + O(t^{})", terms.join(" + "), self.prec())
    }
}

impl TruncatedSeries {
    pub fn new(ctx: &Arc<FieldCtx>, mut coeffs: Vec<FieldElement>, prec: usize) -> Self {
        assert!(prec >= 1, "precision must be positive");
        coeffs.truncate(prec);
        while coeffs.len() < prec {
            coeffs.push(ctx.zero());
        }
        TruncatedSeries {
            ctx: Arc::clone(ctx),
            coeffs,
        }
    }

    pub fn zero(ctx: &Arc<FieldCtx>, prec: usize) -> Self {
        Self::new(ctx, Vec::new(), prec)
    }

    pub fn constant(c: &FieldElement, prec: usize) -> Self {
        Self::new(c.ctx(), vec![c.clone()], prec)
    }

    /// The series `t`.
    pub fn identity(ctx: &Arc<FieldCtx>, prec: usize) -> Self {
        Self::new(ctx, vec![ctx.zero(), ctx.one()], prec)
    }

    pub fn monomial(c: &FieldElement, k: usize, prec: usize) -> Self {
        let ctx = c.ctx();
        let mut coeffs = vec![ctx.zero(); k + 1];
        coeffs[k] = c.clone();
        Self::new(ctx, coeffs, prec)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Valuation {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(v) => Valuation::Exact(v),
            None => Valuation::AtLeast(self.prec()),
        }
    }

    pub fn is_zero_to_prec(&self) -> bool {
        matches!(self.valuation(), Valuation::AtLeast(_))
    }

    /// Keeps the same coefficients under a new truncation order. Raising
    /// the order asserts knowledge the series does not have; only lifting
    /// loops that re-derive high coefficients (Newton) may do that.
    fn with_prec(&self, prec: usize) -> Self {
        Self::new(&self.ctx, self.coeffs.clone(), prec)
    }

    pub fn truncated(&self, prec: usize) -> Self {
        assert!(prec <= self.prec(), "cannot raise precision");
        self.with_prec(prec)
    }

    fn join_prec(&self, other: &Self) -> usize {
        self.prec().min(other.prec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.join_prec(other);
        let coeffs = (0..n)
            .map(|i| self.coeffs[i].add(&other.coeffs[i]))
            .collect();
        Self::new(&self.ctx, coeffs, n)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.join_prec(other);
        let coeffs = (0..n)
            .map(|i| self.coeffs[i].sub(&other.coeffs[i]))
            .collect();
        Self::new(&self.ctx, coeffs, n)
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.neg()).collect();
        Self::new(&self.ctx, coeffs, self.prec())
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.mul(s)).collect();
        Self::new(&self.ctx, coeffs, self.prec())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.join_prec(other);
        let zero = self.ctx.zero();
        let mut out = vec![zero; n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(&self.ctx, out, n)
    }

    /// Multiplies by t^k, shifting coefficients up (same precision).
    pub fn shift_up(&self, k: usize) -> Self {
        let n = self.prec();
        let mut coeffs = vec![self.ctx.zero(); n];
        for i in 0..n.saturating_sub(k) {
            coeffs[i + k] = self.coeffs[i].clone();
        }
        Self::new(&self.ctx, coeffs, n)
    }

    /// Inverse of a unit series (nonzero constant term).
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let c0 = &self.coeffs[0];
        let c0_inv = c0.inverse().ok_or(SeriesError::NonUnitDivisor)?;
        let n = self.prec();
        let mut out = Vec::with_capacity(n);
        out.push(c0_inv.clone());
        for k in 1..n {
            let mut acc = self.ctx.zero();
            for i in 1..=k {
                acc = acc.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out.push(acc.neg().mul(&c0_inv));
        }
        Ok(Self::new(&self.ctx, out, n))
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        let n = self.join_prec(other);
        let inv = other.truncated(n).inverse()?;
        Ok(self.truncated(n).mul(&inv))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut acc = Self::constant(&self.ctx.one(), self.prec());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Integer powers; negative exponents require a unit series.
    pub fn pow_i64(&self, k: i64) -> Result<Self, SeriesError> {
        if k >= 0 {
            Ok(self.pow(k as u64))
        } else {
            Ok(self.inverse()?.pow((-k) as u64))
        }
    }

    /// Formal derivative; knowledge shrinks by one order.
    pub fn derivative(&self) -> Self {
        let n = self.prec();
        if n == 1 {
            return Self::zero(&self.ctx, 1);
        }
        let coeffs = (1..n)
            .map(|i| self.coeffs[i].scale_u64(i as u64 % self.ctx.p()))
            .collect();
        Self::new(&self.ctx, coeffs, n - 1)
    }

    /// Composition self(inner); inner must have positive valuation.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(
            inner.coeffs[0].is_zero(),
            "composition requires positive valuation"
        );
        let n = self.prec().min(inner.prec());
        let mut acc = Self::zero(&self.ctx, n);
        for c in self.coeffs.iter().take(n).rev() {
            acc = acc.mul(&inner.truncated(n));
            acc.coeffs[0] = acc.coeffs[0].add(c);
        }
        acc
    }
}

/// Evaluates a polynomial in y with series coefficients at a series value.
fn eval_poly(f: &[TruncatedSeries], y: &TruncatedSeries, prec: usize) -> TruncatedSeries {
    let ctx = y.ctx();
    let mut acc = TruncatedSeries::zero(ctx, prec);
    let yt = y.with_prec(prec);
    for c in f.iter().rev() {
        debug_assert!(c.prec() >= prec, "polynomial coefficient too short");
        acc = acc.mul(&yt).add(&c.truncated(prec.min(c.prec())));
    }
    acc
}

fn derivative_poly(f: &[TruncatedSeries]) -> Vec<TruncatedSeries> {
    f.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.scale(&c.ctx().from_u64(i as u64)))
        .collect()
}

/// Solves F(y(t)) = 0 mod t^n for the unique series with y(0) = y0, given
/// F as a polynomial in y with truncated-series coefficients. Requires
/// F(y0) = 0 mod t and that the y-derivative at y0 is a unit.
pub fn newton_root(
    f: &[TruncatedSeries],
    y0: &FieldElement,
    n: usize,
) -> Result<TruncatedSeries, SeriesError> {
    assert!(n >= 1);
    let ctx = y0.ctx();
    let start = TruncatedSeries::constant(y0, 1);
    let f0 = eval_poly(f, &start, 1);
    if !f0.coeff(0).is_zero() {
        return Err(SeriesError::NoConvergence);
    }
    let fp = derivative_poly(f);
    let fp0 = eval_poly(&fp, &start, 1);
    if fp0.coeff(0).is_zero() {
        return Err(SeriesError::SingularStart);
    }

    let mut y = start;
    let mut prec = 1usize;
    while prec < n {
        prec = (prec * 2).min(n);
        // quadratic lifting: the unknown upper half starts at the current
        // estimate and is corrected by the update
        let lifted = y.with_prec(prec);
        let num = eval_poly(f, &lifted, prec);
        let den = eval_poly(&fp, &lifted, prec);
        let update = num.div(&den)?;
        y = lifted.sub(&update);
    }
    // residual must vanish identically to the requested precision
    let residual = eval_poly(f, &y, n);
    if !residual.is_zero_to_prec() {
        return Err(SeriesError::NoConvergence);
    }
    let _ = ctx;
    Ok(y)
}

/// Compositional inverse: returns r with s(r(t)) = t mod t^prec. Requires
/// valuation exactly one with an invertible linear coefficient.
pub fn reversion(s: &TruncatedSeries) -> Result<TruncatedSeries, SeriesError> {
    let n = s.prec();
    if s.valuation() != Valuation::Exact(1) {
        return Err(SeriesError::NotReversible);
    }
    let c1_inv = s.coeff(1).inverse().ok_or(SeriesError::NotReversible)?;
    let ctx = s.ctx();
    let id = TruncatedSeries::identity(ctx, n);
    let mut r = TruncatedSeries::new(ctx, vec![ctx.zero(), c1_inv], 2.min(n));
    let mut prec = r.prec();
    let s_der = s.derivative().with_prec(n);
    while prec < n {
        prec = (prec * 2).min(n);
        let lifted = r.with_prec(prec);
        let num = s.with_prec(prec).compose(&lifted).sub(&id.truncated(prec));
        let den = s_der.with_prec(prec).compose(&lifted);
        let update = num.div(&den)?;
        r = lifted.sub(&update);
    }
    // composition residual check at full precision
    let residual = s.compose(&r).sub(&id);
    if !residual.is_zero_to_prec() {
        return Err(SeriesError::NoConvergence);
    }
    Ok(r)
}
