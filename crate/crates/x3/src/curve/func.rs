//! Function-field elements and their local behaviour.
//!
//! Elements are fractions of bivariate polynomials in x, y with y-degree
//! at most q; the curve relation y^{q+1} = -(x^{2m} + x^m) is applied
//! eagerly, which makes the representation canonical and the zero test
//! exact. Local expansions substitute power series for x and y:
//!
//!   - at a point with b != 0 the parameter is x_a = (x - a)/a, so
//!     x(t) = a(1 + t) and y(t) is lifted from the curve equation;
//!   - at a point (a, 0) of the special orbit the parameter is y itself
//!     and x(t) is lifted instead (the x-derivative m a^{m-1}(2a^m + 1)
//!     is a unit there since p does not divide m).

use std::sync::Arc;

use crate::gf::{epoly, CtxOps, FieldCtx, FieldElement};
use crate::series::{newton_root, TruncatedSeries, Valuation};

use super::{alpha_of, CurveError, CurveParams, CurvePoint, PointKind, PqFamily, PqKind};

/// Polynomial in x and y over a field context, stored per y-degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivarPoly {
    ctx: Arc<FieldCtx>,
    /// rows[j] is the x-polynomial multiplying y^j.
    rows: Vec<Vec<FieldElement>>,
}

impl BivarPoly {
    pub fn zero(ctx: &Arc<FieldCtx>) -> Self {
        BivarPoly {
            ctx: Arc::clone(ctx),
            rows: Vec::new(),
        }
    }

    pub fn constant(c: &FieldElement) -> Self {
        BivarPoly {
            ctx: Arc::clone(c.ctx()),
            rows: vec![vec![c.clone()]],
        }
    }

    pub fn x(ctx: &Arc<FieldCtx>) -> Self {
        BivarPoly {
            ctx: Arc::clone(ctx),
            rows: vec![vec![ctx.zero(), ctx.one()]],
        }
    }

    pub fn y(ctx: &Arc<FieldCtx>) -> Self {
        BivarPoly {
            ctx: Arc::clone(ctx),
            rows: vec![Vec::new(), vec![ctx.one()]],
        }
    }

    pub fn x_pow(ctx: &Arc<FieldCtx>, k: u64) -> Self {
        let mut row = vec![ctx.zero(); k as usize + 1];
        row[k as usize] = ctx.one();
        BivarPoly {
            ctx: Arc::clone(ctx),
            rows: vec![row],
        }
    }

    pub fn from_rows(ctx: &Arc<FieldCtx>, rows: Vec<Vec<FieldElement>>) -> Self {
        let mut p = BivarPoly {
            ctx: Arc::clone(ctx),
            rows,
        };
        p.trim();
        p
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    fn trim(&mut self) {
        for row in self.rows.iter_mut() {
            epoly::trim(row);
        }
        while self.rows.last().map(|r| r.is_empty()).unwrap_or(false) {
            self.rows.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| epoly::is_zero(r))
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.rows.iter().rposition(|r| !epoly::is_zero(r))
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.rows.iter().filter_map(|r| epoly::degree(r)).max()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let empty: Vec<FieldElement> = Vec::new();
        let rows = (0..n)
            .map(|j| {
                epoly::add(
                    &self.ctx,
                    self.rows.get(j).unwrap_or(&empty),
                    other.rows.get(j).unwrap_or(&empty),
                )
            })
            .collect();
        BivarPoly::from_rows(&self.ctx, rows)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.neg()).collect())
            .collect();
        BivarPoly::from_rows(&self.ctx, rows)
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        let rows = self.rows.iter().map(|r| epoly::scale(r, s)).collect();
        BivarPoly::from_rows(&self.ctx, rows)
    }

    /// Product, reduced to y-degree <= q via the curve relation.
    pub fn mul(&self, other: &Self, params: &CurveParams) -> Self {
        if self.is_zero() || other.is_zero() {
            return BivarPoly::zero(&self.ctx);
        }
        let n = self.rows.len() + other.rows.len() - 1;
        let mut rows: Vec<Vec<FieldElement>> = vec![Vec::new(); n];
        for (i, r) in self.rows.iter().enumerate() {
            if epoly::is_zero(r) {
                continue;
            }
            for (j, s) in other.rows.iter().enumerate() {
                if epoly::is_zero(s) {
                    continue;
                }
                let prod = epoly::mul(&self.ctx, r, s);
                rows[i + j] = epoly::add(&self.ctx, &rows[i + j], &prod);
            }
        }
        let mut out = BivarPoly::from_rows(&self.ctx, rows);
        out.reduce(params);
        out
    }

    /// Applies y^{q+1} -> -(x^{2m} + x^m) until the y-degree is <= q.
    pub fn reduce(&mut self, params: &CurveParams) {
        let q = params.q() as usize;
        let m = params.m() as usize;
        while self.rows.len() > q + 1 {
            let top = self.rows.pop().unwrap();
            if epoly::is_zero(&top) {
                continue;
            }
            let target = self.rows.len() - 1 - q; // index (len-1) - (q+1)
            // -(x^{2m} + x^m) * top
            let mut shifted = vec![self.ctx.zero(); top.len() + 2 * m];
            for (i, c) in top.iter().enumerate() {
                let neg = c.neg();
                shifted[i + 2 * m] = shifted[i + 2 * m].add(&neg);
                shifted[i + m] = shifted[i + m].add(&neg);
            }
            self.rows[target] = epoly::add(&self.ctx, &self.rows[target], &shifted);
        }
        self.trim();
    }

    pub fn pow(&self, mut k: u64, params: &CurveParams) -> Self {
        let mut acc = BivarPoly::constant(&self.ctx.one());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, params);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, params);
            }
        }
        acc
    }

    /// Substitutes local series for x and y.
    pub fn eval_series(&self, local: &LocalCoords) -> TruncatedSeries {
        let prec = local.x.prec();
        let mut acc = TruncatedSeries::zero(&self.ctx, prec);
        for row in self.rows.iter().rev() {
            acc = acc.mul(&local.y);
            // Horner in x for this row
            let mut row_val = TruncatedSeries::zero(&self.ctx, prec);
            for c in row.iter().rev() {
                row_val = row_val.mul(&local.x);
                if !c.is_zero() {
                    row_val = row_val.add(&TruncatedSeries::constant(c, prec));
                }
            }
            acc = acc.add(&row_val);
        }
        acc
    }

    /// Substitutes function elements for x and y (rational-map composition).
    pub fn eval_functions(
        &self,
        fx: &FunctionElement,
        fy: &FunctionElement,
        params: &CurveParams,
    ) -> FunctionElement {
        let mut acc = FunctionElement::constant(&self.ctx.zero());
        for row in self.rows.iter().rev() {
            acc = acc.mul(fy, params);
            let mut row_val = FunctionElement::constant(&self.ctx.zero());
            for c in row.iter().rev() {
                row_val = row_val.mul(fx, params);
                if !c.is_zero() {
                    row_val = row_val.add(&FunctionElement::from_poly(BivarPoly::constant(c)), params);
                }
            }
            acc = acc.add(&row_val, params);
        }
        acc
    }
}

/// A fraction of bivariate polynomials, the general function-field element.
#[derive(Debug, Clone)]
pub struct FunctionElement {
    num: BivarPoly,
    den: BivarPoly,
}

impl FunctionElement {
    pub fn from_poly(num: BivarPoly) -> Self {
        let one = BivarPoly::constant(&num.ctx().one());
        FunctionElement { num, den: one }
    }

    pub fn constant(c: &FieldElement) -> Self {
        FunctionElement::from_poly(BivarPoly::constant(c))
    }

    pub fn fraction(num: BivarPoly, den: BivarPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        FunctionElement { num, den }
    }

    pub fn x(ctx: &Arc<FieldCtx>) -> Self {
        FunctionElement::from_poly(BivarPoly::x(ctx))
    }

    pub fn y(ctx: &Arc<FieldCtx>) -> Self {
        FunctionElement::from_poly(BivarPoly::y(ctx))
    }

    pub fn num(&self) -> &BivarPoly {
        &self.num
    }

    pub fn den(&self) -> &BivarPoly {
        &self.den
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.num.ctx()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self, params: &CurveParams) -> Self {
        FunctionElement {
            num: self
                .num
                .mul(&other.den, params)
                .add(&other.num.mul(&self.den, params)),
            den: self.den.mul(&other.den, params),
        }
    }

    pub fn sub(&self, other: &Self, params: &CurveParams) -> Self {
        self.add(&other.neg(), params)
    }

    pub fn neg(&self) -> Self {
        FunctionElement {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self, params: &CurveParams) -> Self {
        FunctionElement {
            num: self.num.mul(&other.num, params),
            den: self.den.mul(&other.den, params),
        }
    }

    pub fn div(&self, other: &Self, params: &CurveParams) -> Self {
        assert!(!other.is_zero(), "division by the zero function");
        FunctionElement {
            num: self.num.mul(&other.den, params),
            den: self.den.mul(&other.num, params),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Self {
        FunctionElement {
            num: self.num.scale(s),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, k: u64, params: &CurveParams) -> Self {
        FunctionElement {
            num: self.num.pow(k, params),
            den: self.den.pow(k, params),
        }
    }

    /// Equality as rational functions on the curve: cross-multiplied
    /// difference reduces to zero in the canonical representation.
    pub fn equals(&self, other: &Self, params: &CurveParams) -> bool {
        self.num
            .mul(&other.den, params)
            .sub(&other.num.mul(&self.den, params))
            .is_zero()
    }

    /// Numerator and denominator series at a point.
    pub fn expand(&self, local: &LocalCoords) -> (TruncatedSeries, TruncatedSeries) {
        (self.num.eval_series(local), self.den.eval_series(local))
    }
}

/// Local series for x and y at an affine point, to a given precision.
pub struct LocalCoords {
    pub x: TruncatedSeries,
    pub y: TruncatedSeries,
}

impl LocalCoords {
    pub fn at(
        point: &CurvePoint,
        params: &CurveParams,
        prec: usize,
    ) -> Result<LocalCoords, CurveError> {
        let (a, b) = match point.kind() {
            PointKind::Affine { a, b } => (a, b),
            _ => return Err(CurveError::UnsupportedPlace),
        };
        let ctx = a.ctx();
        let q = params.q();
        let m = params.m();
        if !b.is_zero() {
            // parameter t = x_a: x = a(1 + t)
            let x = TruncatedSeries::new(ctx, vec![a.clone(), a.clone()], prec);
            let rhs = x.pow(2 * m).add(&x.pow(m)).neg();
            // F(Y) = Y^{q+1} - rhs
            let mut f = vec![rhs.neg()];
            for _ in 0..q {
                f.push(TruncatedSeries::zero(ctx, prec));
            }
            f.push(TruncatedSeries::constant(&ctx.one(), prec));
            let y = newton_root(&f, b, prec)?;
            Ok(LocalCoords { x, y })
        } else {
            // parameter t = y: lift x from x^{2m} + x^m + t^{q+1} = 0
            let y = TruncatedSeries::identity(ctx, prec);
            let tq1 = y.pow(q + 1);
            let mut f = vec![tq1];
            for j in 1..=2 * m as usize {
                let c = if j == m as usize || j == 2 * m as usize {
                    TruncatedSeries::constant(&ctx.one(), prec)
                } else {
                    TruncatedSeries::zero(ctx, prec)
                };
                f.push(c);
            }
            let x = newton_root(&f, a, prec)?;
            Ok(LocalCoords { x, y })
        }
    }
}

/// Exact valuation of a nonzero function element at an affine point, with
/// automatic precision escalation.
pub fn fn_valuation(
    f: &FunctionElement,
    point: &CurvePoint,
    params: &CurveParams,
) -> Result<i64, CurveError> {
    if f.is_zero() {
        return Err(CurveError::InternalInconsistency(
            "valuation of the zero function".into(),
        ));
    }
    let mut prec = params.default_prec();
    for _ in 0..4 {
        let local = LocalCoords::at(point, params, prec)?;
        let (num, den) = f.expand(&local);
        match (num.valuation(), den.valuation()) {
            (Valuation::Exact(vn), Valuation::Exact(vd)) => {
                return Ok(vn as i64 - vd as i64);
            }
            _ => prec *= 2,
        }
    }
    Err(CurveError::PrecisionExhausted)
}

/// The special function families with prescribed vanishing behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialFn {
    /// (x - a)/a, a local parameter off the special orbit.
    Xa,
    /// The tangent-line function at the point.
    Tangent,
    /// Vanishing order 2, poles only over infinity.
    F0,
    /// f_j with vanishing order 3j+2 below the P-order, 3i+3 at j = i.
    FSeq(u64),
    /// g_i with vanishing order 3i+2 at alpha-special points.
    GSeq(u64),
}

pub fn build_special_fn(
    kind: SpecialFn,
    point: &CurvePoint,
    params: &CurveParams,
) -> Result<FunctionElement, CurveError> {
    let (a, b) = point
        .coords()
        .ok_or(CurveError::UnsupportedPlace)?;
    let ctx = a.ctx();
    match kind {
        SpecialFn::Xa => {
            let a_inv = a.inverse().expect("a != 0");
            let rows = vec![vec![ctx.one().neg(), a_inv]];
            Ok(FunctionElement::from_poly(BivarPoly::from_rows(ctx, rows)))
        }
        SpecialFn::Tangent => {
            // m a^{m-1} (2 a^m + 1) (x - a) + b^q (y - b)
            let am = a.pow(params.m());
            let s1 = ctx
                .from_u64(params.m())
                .mul(&a.pow(params.m() - 1))
                .mul(&ctx.from_u64(2).mul(&am).add(&ctx.one()));
            let bq = b.pow(params.q());
            let c0 = s1.mul(a).add(&bq.mul(b)).neg();
            let rows = vec![vec![c0, s1], vec![bq]];
            Ok(FunctionElement::from_poly(BivarPoly::from_rows(ctx, rows)))
        }
        SpecialFn::F0 => Ok(FunctionElement::from_poly(f0_poly(point, params)?)),
        SpecialFn::FSeq(j) => {
            let fs = f_family(point, params, j)?;
            Ok(FunctionElement::from_poly(fs[j as usize].clone()))
        }
        SpecialFn::GSeq(i) => {
            let gs = g_family(point, params, i)?;
            Ok(FunctionElement::from_poly(gs[i as usize].clone()))
        }
    }
}

/// f_0 = (1 - alpha) ( ((2 a^m + 1)/a)(x - a) + (3 b^q / a^m)(y - b) ),
/// which has vanishing order 2 at the point and pole divisor within
/// three times the infinity divisor.
fn f0_poly(point: &CurvePoint, params: &CurveParams) -> Result<BivarPoly, CurveError> {
    let (a, b) = point.coords().ok_or(CurveError::UnsupportedPlace)?;
    let alpha = alpha_of(point)?;
    let ctx = a.ctx();
    let am = a.pow(params.m());
    let one_minus = ctx.one().sub(&alpha);
    let c1 = one_minus
        .mul(&ctx.from_u64(2).mul(&am).add(&ctx.one()))
        .mul(&a.inverse().expect("a != 0"));
    let c2 = one_minus
        .mul(&ctx.from_u64(3))
        .mul(&b.pow(params.q()))
        .mul(&am.inverse().expect("a^m != 0"));
    let c0 = c1.mul(a).add(&c2.mul(b)).neg();
    Ok(BivarPoly::from_rows(ctx, vec![vec![c0, c1], vec![c2]]))
}

/// The family f_0, ..., f_top at a point whose alpha is not a root of
/// s^2 - s + 1. Below the P-order i, f_j vanishes to order 3j+2; at j = i
/// the order jumps to 3i+3.
pub fn f_family(
    point: &CurvePoint,
    params: &CurveParams,
    top: u64,
) -> Result<Vec<BivarPoly>, CurveError> {
    let (a, _b) = point.coords().ok_or(CurveError::UnsupportedPlace)?;
    let ctx = a.ctx();
    let alpha = alpha_of(point)?;
    let fam = PqFamily::new(ctx)?;
    if fam.is_alpha_special(&alpha) {
        return Err(CurveError::WrongClass(
            "f-family requires alpha^2 - alpha + 1 != 0".into(),
        ));
    }
    let mut fs = vec![f0_poly(point, params)?];
    if top == 0 {
        return Ok(fs);
    }
    let xa = build_special_fn(SpecialFn::Xa, point, params)?.num().clone();
    // f_1 = -9 x_a^2 + 27 f_0 - 3(alpha - 5) x_a f_0 + (alpha^2 - alpha - 5) f_0^2
    let f0 = fs[0].clone();
    let c_m9 = ctx.from_i64(-9);
    let c_27 = ctx.from_i64(27);
    let c_lin = alpha.sub(&ctx.from_i64(5)).scale_u64(3).neg();
    let c_quad = alpha.square().sub(&alpha).sub(&ctx.from_i64(5));
    let f1 = xa
        .mul(&xa, params)
        .scale(&c_m9)
        .add(&f0.scale(&c_27))
        .add(&xa.mul(&f0, params).scale(&c_lin))
        .add(&f0.mul(&f0, params).scale(&c_quad));
    fs.push(f1);
    if top == 1 {
        return Ok(fs);
    }
    // the closed step for f_2 divides by (alpha + 1)^3
    let alpha_plus_1 = alpha.add(&ctx.one());
    if alpha_plus_1.is_zero() {
        return Err(CurveError::RecursionPole(
            "alpha = -1: the f_2 step divides by (alpha+1)^3; use the canonical-space fallback"
                .into(),
        ));
    }
    let p2 = fam.eval(PqKind::P, 2, &alpha)?;
    if p2.is_zero() {
        return Err(CurveError::RecursionPole(
            "P-order is 1: f_2 and beyond are not defined for this point".into(),
        ));
    }
    let f0 = fs[0].clone();
    let f1 = fs[1].clone();
    let f0_sq = f0.mul(&f0, params);
    let f0_cube = f0_sq.mul(&f0, params);
    // alpha^4 + alpha^3 - 4 alpha^2 - 4 alpha + 3
    let a2 = alpha.square();
    let a3 = a2.mul(&alpha);
    let a4 = a2.square();
    let quart = a4
        .add(&a3)
        .sub(&a2.scale_u64(4))
        .sub(&alpha.scale_u64(4))
        .add(&ctx.from_i64(3));
    let inv_ap1_cubed = alpha_plus_1.pow(3).inverse().expect("alpha != -1");
    let inner = f1
        .scale(&p2.scale_u64(27).neg())
        .add(&f0_sq.mul(&xa, params).scale(&p2.square().scale_u64(3)))
        .add(&f0_cube.scale(&p2.mul(&quart).scale_u64(3).neg()));
    // 7 alpha^2 - 16 alpha + 7
    let c_outer = a2
        .scale_u64(7)
        .sub(&alpha.scale_u64(16))
        .add(&ctx.from_i64(7));
    let f2 = inner
        .scale(&inv_ap1_cubed)
        .add(&f1.mul(&f0, params).scale(&c_outer));
    fs.push(f2);
    // inductive step: f_j built from f_{j-1} and f_{j-2}
    let w = alpha.square().sub(&alpha).add(&ctx.one());
    let w_sq_inv = w.square().inverse().expect("alpha not special");
    for j in 3..=top {
        let pj = fam.eval(PqKind::P, j as i64, &alpha)?;
        let pjm1 = fam.eval(PqKind::P, j as i64 - 1, &alpha)?;
        let pjm2 = fam.eval(PqKind::P, j as i64 - 2, &alpha)?;
        if pjm2.is_zero() {
            return Err(CurveError::RecursionPole(format!(
                "P_{}(alpha) = 0 before the requested index",
                j - 2
            )));
        }
        let t1 = fs[j as usize - 2].mul(&fs[1], params).scale(&pj);
        let t2 = fs[j as usize - 1]
            .mul(&fs[0], params)
            .scale(&p2.mul(&pjm1));
        let num = t1.sub(&t2);
        let denom_inv = w_sq_inv.mul(&pjm2.inverse().unwrap());
        fs.push(num.scale(&denom_inv).neg());
    }
    Ok(fs)
}

/// The family g_0, ..., g_top at an alpha-special point; g_i vanishes to
/// order 3i+2 and has poles only over infinity, within (3i+3) D_inf.
pub fn g_family(
    point: &CurvePoint,
    params: &CurveParams,
    top: u64,
) -> Result<Vec<BivarPoly>, CurveError> {
    let (a, _b) = point.coords().ok_or(CurveError::UnsupportedPlace)?;
    let ctx = a.ctx();
    let alpha = alpha_of(point)?;
    let fam = PqFamily::new(ctx)?;
    if !fam.is_alpha_special(&alpha) {
        return Err(CurveError::WrongClass(
            "g-family requires alpha^2 - alpha + 1 = 0".into(),
        ));
    }
    let mut gs = vec![f0_poly(point, params)?];
    if top == 0 {
        return Ok(gs);
    }
    let xa = build_special_fn(SpecialFn::Xa, point, params)?.num().clone();
    // g_1 = (2 alpha - 1)/9 f_1 with f_1 as in the f-family
    let f0 = gs[0].clone();
    let c_lin = alpha.sub(&ctx.from_i64(5)).scale_u64(3).neg();
    let c_quad = alpha.square().sub(&alpha).sub(&ctx.from_i64(5));
    let f1 = xa
        .mul(&xa, params)
        .scale(&ctx.from_i64(-9))
        .add(&f0.scale(&ctx.from_i64(27)))
        .add(&xa.mul(&f0, params).scale(&c_lin))
        .add(&f0.mul(&f0, params).scale(&c_quad));
    let two_alpha_m1 = alpha.scale_u64(2).sub(&ctx.one());
    let ninth = ctx.from_u64(9).inverse().expect("p != 3");
    gs.push(f1.scale(&two_alpha_m1.mul(&ninth)));
    // g_i = (6a-3) g_{i-1} - (2a-1)/3 g_{i-2} g_0 x_a
    //       + (3a-2)/3 g_{i-2} g_0^2 - (a-2) g_{i-1} g_0
    let third = ctx.from_u64(3).inverse().expect("p != 3");
    let c1 = alpha.scale_u64(6).sub(&ctx.from_i64(3));
    let c2 = two_alpha_m1.mul(&third).neg();
    let c3 = alpha.scale_u64(3).sub(&ctx.from_i64(2)).mul(&third);
    let c4 = alpha.sub(&ctx.from_i64(2)).neg();
    let g0 = gs[0].clone();
    let g0_sq = g0.mul(&g0, params);
    let g0_xa = g0.mul(&xa, params);
    for i in 2..=top {
        let gi = gs[i as usize - 1]
            .scale(&c1)
            .add(&gs[i as usize - 2].mul(&g0_xa, params).scale(&c2))
            .add(&gs[i as usize - 2].mul(&g0_sq, params).scale(&c3))
            .add(&gs[i as usize - 1].mul(&g0, params).scale(&c4));
        gs.push(gi);
    }
    Ok(gs)
}
