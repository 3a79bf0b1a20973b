//! The curve y^{q+1} + x^{2m} + x^m = 0 over F_{q^2}: parameters, points
//! and symbolic places, the alpha invariant and point classification, the
//! P/Q family, special functions as function-field elements, valuations
//! and principal divisors.

pub mod divisor;
pub mod func;
pub mod pq;
pub mod sample;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::gf::{
    self, arith, frobenius_q2, make_field, CtxOps, FieldCtx, FieldElement, GfError,
};
use crate::series::SeriesError;

pub use pq::{PqFamily, PqKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveError {
    BadCongruence(u64),
    NotPrimePower(u64),
    TooSmall(u64),
    OffCurve(String),
    AlphaUndefined,
    ExcludedAlpha,
    NoCubeRoot,
    PoleAt(String),
    WrongClass(String),
    RecursionPole(String),
    UnsupportedPlace,
    UnsupportedFunction(String),
    ClassInfeasible(String),
    ExtensionBoundTooSmall(u32),
    PrecisionExhausted,
    DimensionMismatch { expected: u64, got: u64 },
    InternalInconsistency(String),
    Gf(GfError),
    Series(SeriesError),
}

impl fmt::Display for CurveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveError::BadCongruence(q) => write!(f, "q = {q} is not 2 mod 3"),
            CurveError::NotPrimePower(q) => write!(f, "q = {q} is not a prime power"),
            CurveError::TooSmall(q) => write!(f, "q = {q} below the supported range (q >= 5)"),
            CurveError::OffCurve(s) => write!(f, "point does not satisfy the curve equation: {s}"),
            CurveError::AlphaUndefined => write!(f, "alpha undefined on the special orbit"),
            CurveError::ExcludedAlpha => write!(f, "alpha outside the classified domain"),
            CurveError::NoCubeRoot => write!(f, "field has no primitive cube root of unity"),
            CurveError::PoleAt(s) => write!(f, "pole at {s}"),
            CurveError::WrongClass(s) => write!(f, "wrong point class: {s}"),
            CurveError::RecursionPole(s) => write!(f, "construction degenerates: {s}"),
            CurveError::UnsupportedPlace => write!(f, "place not supported for expansion"),
            CurveError::UnsupportedFunction(s) => write!(f, "no closed-form divisor for {s}"),
            CurveError::ClassInfeasible(s) => write!(f, "class not realisable: {s}"),
            CurveError::ExtensionBoundTooSmall(k) => {
                write!(f, "no sample found within extension bound k <= {k}")
            }
            CurveError::PrecisionExhausted => write!(f, "series precision exhausted"),
            CurveError::DimensionMismatch { expected, got } => {
                write!(f, "space dimension {got} differs from the expected {expected}")
            }
            CurveError::InternalInconsistency(s) => write!(f, "internal inconsistency: {s}"),
            CurveError::Gf(e) => write!(f, "{e}"),
            CurveError::Series(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CurveError {}

impl From<GfError> for CurveError {
    fn from(e: GfError) -> Self {
        CurveError::Gf(e)
    }
}

impl From<SeriesError> for CurveError {
    fn from(e: SeriesError) -> Self {
        CurveError::Series(e)
    }
}

/// Parameters of the curve for one prime power q = 2 mod 3.
#[derive(Clone)]
pub struct CurveParams {
    q: u64,
    p: u64,
    n: u32,
    m: u64,
    genus: u64,
    base: Arc<FieldCtx>,
    ext_cache: Arc<Mutex<BTreeMap<u32, Arc<FieldCtx>>>>,
}

impl fmt::Debug for CurveParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CurveParams {{ q: {}, p: {}, n: {}, m: {}, genus: {} }}",
            self.q, self.p, self.n, self.m, self.genus
        )
    }
}

/// Validates q and derives all constants. q = 2 is rejected (genus one,
/// outside the supported family).
pub fn curve_params(q: u64) -> Result<CurveParams, CurveError> {
    let factors = arith::factor_u64(q);
    if factors.len() != 1 {
        return Err(CurveError::NotPrimePower(q));
    }
    if q % 3 != 2 {
        return Err(CurveError::BadCongruence(q));
    }
    if q < 5 {
        return Err(CurveError::TooSmall(q));
    }
    let (p, n) = factors[0];
    let m = (q + 1) / 3;
    let genus = (q * q - q + 4) / 6;
    debug_assert_eq!(genus, 1 + 3 * m * (m - 1) / 2);
    let base = make_field(p, 2 * n as usize)?;
    let ext_cache = Arc::new(Mutex::new(BTreeMap::from([(1u32, Arc::clone(&base))])));
    Ok(CurveParams {
        q,
        p,
        n,
        m,
        genus,
        base,
        ext_cache,
    })
}

impl CurveParams {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    /// F_{q^2}.
    pub fn base_field(&self) -> &Arc<FieldCtx> {
        &self.base
    }

    /// F_{q^{2k}}, built as a degree-2nk extension of F_p.
    pub fn ext_field(&self, k: u32) -> Result<Arc<FieldCtx>, CurveError> {
        assert!(k >= 1);
        if let Some(ctx) = self.ext_cache.lock().unwrap().get(&k) {
            return Ok(Arc::clone(ctx));
        }
        let ctx = make_field(self.p, 2 * self.n as usize * k as usize)?;
        self.ext_cache
            .lock()
            .unwrap()
            .insert(k, Arc::clone(&ctx));
        Ok(ctx)
    }

    /// Working precision for gap computations: the largest relevant
    /// vanishing order is 2g - 2, with margin.
    pub fn default_prec(&self) -> usize {
        (2 * self.genus + 8) as usize
    }

    /// Extension index k of a context (ctx = F_{q^{2k}}), if it is one.
    pub fn ext_index(&self, ctx: &Arc<FieldCtx>) -> Result<u32, CurveError> {
        if ctx.p() != self.p {
            return Err(CurveError::Gf(GfError::ContextMismatch));
        }
        let step = 2 * self.n as usize;
        if ctx.ext_degree() % step != 0 {
            return Err(CurveError::Gf(GfError::ContextMismatch));
        }
        Ok((ctx.ext_degree() / step) as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointKind {
    Affine { a: FieldElement, b: FieldElement },
    /// j-th place over the singular point (0,0), 1-based.
    PlaceO0(u64),
    /// j-th place over infinity, 1-based.
    PlaceOInf(u64),
}

/// A point of the curve: an affine point over F_{q^{2k}} or one of the
/// symbolic places over x = 0 / x = infinity.
#[derive(Debug, Clone)]
pub struct CurvePoint {
    kind: PointKind,
    ext: u32,
    alpha: Option<FieldElement>,
}

impl PartialEq for CurvePoint {
    fn eq(&self, other: &Self) -> bool {
        self.ext == other.ext && self.kind == other.kind
    }
}
impl Eq for CurvePoint {}

impl PartialOrd for CurvePoint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for CurvePoint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ext, &self.kind).cmp(&(other.ext, &other.kind))
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PointKind::Affine { a, b } => write!(f, "a={a};b={b};ext={}", self.ext),
            PointKind::PlaceO0(j) => write!(f, "O0^{j}"),
            PointKind::PlaceOInf(j) => write!(f, "Oinf^{j}"),
        }
    }
}

impl CurvePoint {
    /// Affine point constructor; checks the curve equation exactly.
    pub fn affine(
        params: &CurveParams,
        a: FieldElement,
        b: FieldElement,
    ) -> Result<CurvePoint, CurveError> {
        if a.ctx() != b.ctx() && !Arc::ptr_eq(a.ctx(), b.ctx()) {
            return Err(CurveError::Gf(GfError::ContextMismatch));
        }
        if a.is_zero() {
            return Err(CurveError::OffCurve(
                "affine points have nonzero x-coordinate; places over x = 0 are symbolic".into(),
            ));
        }
        let ext = params.ext_index(a.ctx())?;
        let am = a.pow(params.m);
        let lhs = b.pow(params.q + 1).add(&am.square()).add(&am);
        if !lhs.is_zero() {
            return Err(CurveError::OffCurve(format!("a={a}, b={b}")));
        }
        let one = a.ctx().one();
        let denom = one.add(&am);
        let alpha = if denom.is_zero() {
            None
        } else {
            Some(am.mul(&denom.inverse().expect("nonzero denominator")))
        };
        Ok(CurvePoint {
            kind: PointKind::Affine { a, b },
            ext,
            alpha,
        })
    }

    pub fn place_o0(j: u64) -> CurvePoint {
        CurvePoint {
            kind: PointKind::PlaceO0(j),
            ext: 1,
            alpha: None,
        }
    }

    pub fn place_oinf(j: u64) -> CurvePoint {
        CurvePoint {
            kind: PointKind::PlaceOInf(j),
            ext: 1,
            alpha: None,
        }
    }

    pub fn kind(&self) -> &PointKind {
        &self.kind
    }

    pub fn is_affine(&self) -> bool {
        matches!(self.kind, PointKind::Affine { .. })
    }

    pub fn coords(&self) -> Option<(&FieldElement, &FieldElement)> {
        match &self.kind {
            PointKind::Affine { a, b } => Some((a, b)),
            _ => None,
        }
    }

    /// Extension index: coordinates live in F_{q^{2k}}.
    pub fn ext(&self) -> u32 {
        self.ext
    }

    /// Cached alpha invariant (None on the special orbit).
    pub fn alpha(&self) -> Option<&FieldElement> {
        self.alpha.as_ref()
    }

    /// True when both coordinates are fixed by the F_{q^2}-Frobenius.
    pub fn is_rational(&self, params: &CurveParams) -> bool {
        match &self.kind {
            PointKind::Affine { a, b } => {
                let fa = frobenius_q2(a, params.q()).expect("affine coords in a valid extension");
                let fb = frobenius_q2(b, params.q()).expect("affine coords in a valid extension");
                fa == *a && fb == *b
            }
            // the symbolic places are F_{q^2}-rational by construction
            _ => true,
        }
    }

    /// Parses "a=<coords>;b=<coords>;ext=k".
    pub fn parse(params: &CurveParams, s: &str) -> Result<CurvePoint, CurveError> {
        let mut a_txt = None;
        let mut b_txt = None;
        let mut ext = 1u32;
        for part in s.split(';') {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| CurveError::OffCurve(format!("bad point syntax: {part}")))?;
            match key.trim() {
                "a" => a_txt = Some(val.trim().to_string()),
                "b" => b_txt = Some(val.trim().to_string()),
                "ext" => {
                    ext = val
                        .trim()
                        .parse()
                        .map_err(|_| CurveError::OffCurve(format!("bad ext: {val}")))?
                }
                other => return Err(CurveError::OffCurve(format!("unknown field {other}"))),
            }
        }
        let (a_txt, b_txt) = match (a_txt, b_txt) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(CurveError::OffCurve("point needs a= and b=".into())),
        };
        let ctx = params.ext_field(ext)?;
        let a = ctx
            .parse_element(&a_txt)
            .map_err(CurveError::OffCurve)?;
        let b = ctx
            .parse_element(&b_txt)
            .map_err(CurveError::OffCurve)?;
        CurvePoint::affine(params, a, b)
    }
}

/// Point classification: the orbit of the special points, rational points
/// with alpha^2 - alpha + 1 = 0, points classified by their P-order, and
/// the generic (non-Weierstrass) remainder.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PointClass {
    InOrbitO,
    RationalAlphaSpecial,
    POrder { i: u64, rational: bool },
    GenericNonRational,
}

impl fmt::Display for PointClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointClass::InOrbitO => write!(f, "orbit-O"),
            PointClass::RationalAlphaSpecial => write!(f, "rational-alpha-special"),
            PointClass::POrder { i, rational } => {
                let r = if *rational { "rational" } else { "non-rational" };
                write!(f, "P-order-{i}-{r}")
            }
            PointClass::GenericNonRational => write!(f, "generic-non-rational"),
        }
    }
}

/// The alpha invariant a^m / (1 + a^m); undefined on the special orbit.
pub fn alpha_of(point: &CurvePoint) -> Result<FieldElement, CurveError> {
    match (&point.kind, &point.alpha) {
        (PointKind::Affine { .. }, Some(alpha)) => {
            let one_minus = alpha.ctx().one().sub(alpha);
            assert!(!one_minus.is_zero(), "1 - alpha is never zero");
            Ok(alpha.clone())
        }
        _ => Err(CurveError::AlphaUndefined),
    }
}

/// All points of the curve with the given nonzero x-coordinate, over the
/// coordinate's own field. May be empty when b^{q+1} = -a^{2m} - a^m has
/// no roots there; the caller widens the field in that case.
pub fn point_from_x(a: &FieldElement, params: &CurveParams) -> Result<Vec<CurvePoint>, CurveError> {
    if a.is_zero() {
        return Err(CurveError::OffCurve(
            "x = 0 corresponds to the symbolic places".into(),
        ));
    }
    let am = a.pow(params.m);
    let c = am.square().add(&am).neg();
    let roots = gf::nth_roots(&c, params.q + 1);
    roots
        .into_iter()
        .map(|b| CurvePoint::affine(params, a.clone(), b))
        .collect()
}

/// Classifies a point, cross-checking the coordinate-level rationality
/// against the arithmetic criterion (alpha special or P-order i with
/// i + 1 dividing m); a disagreement is an internal error.
pub fn classify(point: &CurvePoint, params: &CurveParams) -> Result<PointClass, CurveError> {
    let (a, b) = match &point.kind {
        PointKind::PlaceO0(_) | PointKind::PlaceOInf(_) => return Ok(PointClass::InOrbitO),
        PointKind::Affine { a, b } => (a, b),
    };
    if b.is_zero() {
        // on the curve with a != 0 this forces a^m = -1
        let am = a.pow(params.m);
        debug_assert!(am.add(&a.ctx().one()).is_zero());
        return Ok(PointClass::InOrbitO);
    }
    let alpha = alpha_of(point)?;
    let fam = PqFamily::new(a.ctx())?;
    let rational = point.is_rational(params);
    if fam.is_alpha_special(&alpha) {
        if !rational {
            return Err(CurveError::InternalInconsistency(format!(
                "alpha-special point {point} must be rational"
            )));
        }
        return Ok(PointClass::RationalAlphaSpecial);
    }
    match fam.p_order_up_to(&alpha, params.m.saturating_sub(1)) {
        Some(i) => {
            let divides = params.m % (i + 1) == 0;
            if divides != rational {
                return Err(CurveError::InternalInconsistency(format!(
                    "P-order {i} of {point}: divisibility says rational={divides}, coordinates say rational={rational}"
                )));
            }
            Ok(PointClass::POrder { i, rational })
        }
        None => {
            if rational {
                return Err(CurveError::InternalInconsistency(format!(
                    "rational point {point} has no P-order below m"
                )));
            }
            Ok(PointClass::GenericNonRational)
        }
    }
}

#[cfg(test)]
mod tests;
