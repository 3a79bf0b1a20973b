//! Deterministic, seeded construction of points in a requested class.
//!
//! Orbit and rational classes are enumerated directly in F_{q^2}. For a
//! prescribed P-order i the sampler builds alpha backwards from an element
//! sigma of order 3(i+1) (so that sigma^3 has order i+1), then solves
//! a^m = alpha/(1-alpha) and the curve equation for b, widening the
//! coordinate field F_{q^{2k}} for k = 1..k_max until roots exist. The
//! generic class scans seeded random x-coordinates over a requested
//! extension.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::gf::{self, CtxOps, Embedding};

use super::{classify, CurveError, CurveParams, CurvePoint, PointClass, PqFamily};

/// Which class of points to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassRequest {
    InOrbitO,
    RationalAlphaSpecial,
    POrder { i: u64 },
    Generic { ext: u32 },
}

impl ClassRequest {
    fn matches(&self, class: &PointClass) -> bool {
        match (self, class) {
            (ClassRequest::InOrbitO, PointClass::InOrbitO) => true,
            (ClassRequest::RationalAlphaSpecial, PointClass::RationalAlphaSpecial) => true,
            (ClassRequest::POrder { i }, PointClass::POrder { i: j, .. }) => i == j,
            (ClassRequest::Generic { .. }, PointClass::GenericNonRational) => true,
            _ => false,
        }
    }
}

/// Deterministic sample of up to `count` points of the requested class.
pub fn sample_points(
    request: ClassRequest,
    params: &CurveParams,
    k_max: u32,
    seed: u64,
    count: usize,
) -> Result<Vec<CurvePoint>, CurveError> {
    match request {
        ClassRequest::InOrbitO => orbit_points(params).map(|v| truncate(v, count)),
        ClassRequest::RationalAlphaSpecial => {
            alpha_special_points(params, count)
        }
        ClassRequest::POrder { i } => p_order_points(params, i, k_max, count),
        ClassRequest::Generic { ext } => generic_points(params, ext, seed, count),
    }
}

fn truncate(mut v: Vec<CurvePoint>, count: usize) -> Vec<CurvePoint> {
    v.truncate(count);
    v
}

/// The m affine points (a, 0) with a^m = -1, all in F_{q^2}.
pub fn orbit_points(params: &CurveParams) -> Result<Vec<CurvePoint>, CurveError> {
    let ctx = params.base_field();
    let minus_one = ctx.one().neg();
    let roots = gf::nth_roots(&minus_one, params.m());
    assert_eq!(roots.len(), params.m() as usize);
    roots
        .into_iter()
        .map(|a| CurvePoint::affine(params, a, ctx.zero()))
        .collect()
}

/// Points with a^{2m} + a^m + 1 = 0 (then b^{q+1} = 1); there are
/// 2m(q+1) of them, all rational.
fn alpha_special_points(
    params: &CurveParams,
    count: usize,
) -> Result<Vec<CurvePoint>, CurveError> {
    let ctx = params.base_field();
    let zeta = ctx.zeta3().expect("3 divides q^2 - 1");
    let mut out = Vec::new();
    for target in [zeta.clone(), zeta.square()] {
        for a in gf::nth_roots(&target, params.m()) {
            for b in gf::nth_roots(&ctx.one(), params.q() + 1) {
                out.push(CurvePoint::affine(params, a.clone(), b)?);
                if out.len() >= count {
                    return Ok(out);
                }
            }
        }
    }
    if out.is_empty() {
        return Err(CurveError::ClassInfeasible(
            "no alpha-special points found".into(),
        ));
    }
    Ok(out)
}

/// Builds points whose alpha has P-order exactly i. Feasibility requires
/// gcd(i+1, p) = 1; rationality of the resulting points is forced by
/// whether i+1 divides m.
fn p_order_points(
    params: &CurveParams,
    i: u64,
    k_max: u32,
    count: usize,
) -> Result<Vec<CurvePoint>, CurveError> {
    if i == 0 {
        return Err(CurveError::ClassInfeasible("P-order starts at 1".into()));
    }
    if gf::arith::gcd_u64(i + 1, params.p()) != 1 {
        return Err(CurveError::ClassInfeasible(format!(
            "P-order {i} impossible: p divides i+1"
        )));
    }
    let d = 3 * (i + 1);
    // smallest extension of F_{q^2} whose unit group has order divisible by d
    let k_sigma = (1..=k_max)
        .find(|&k| {
            let e = 2 * params.n() as u32 * k;
            powmod_u64(params.p() % d, e as u64, d) == 1 % d
        })
        .ok_or(CurveError::ExtensionBoundTooSmall(k_max))?;
    let sigma_ctx = params.ext_field(k_sigma)?;
    let gen = gf::unity_root_generator(&sigma_ctx, d).expect("d divides the unit order");
    let zeta = sigma_ctx.zeta3().expect("cube roots available");
    let zeta2 = zeta.square();
    let fam = PqFamily::new(&sigma_ctx)?;
    let mut out = Vec::new();
    // sigma runs over the elements of order exactly d
    for t in 1..d {
        if gf::arith::gcd_u64(t, d) != 1 {
            continue;
        }
        let sigma = gen.pow(t);
        // alpha = (zeta - sigma zeta^2) / (sigma - 1)
        let num = zeta.sub(&sigma.mul(&zeta2));
        let den = sigma.sub(&sigma_ctx.one());
        let alpha = num.mul(&den.inverse().expect("sigma != 1"));
        debug_assert_eq!(fam.p_order_up_to(&alpha, i + 1), Some(i));
        let one_minus = sigma_ctx.one().sub(&alpha);
        let beta = alpha.mul(&one_minus.inverse().expect("alpha != 1"));
        // search upward for a coordinate field where both roots exist
        for k in k_sigma..=k_max {
            let e_sigma = sigma_ctx.ext_degree();
            let e_k = 2 * params.n() as usize * k as usize;
            if e_k % e_sigma != 0 {
                continue;
            }
            let ctx_k = params.ext_field(k)?;
            let map = Embedding::new(&sigma_ctx, &ctx_k)?;
            let beta_k = map.apply(&beta);
            for a in gf::nth_roots(&beta_k, params.m()) {
                let am = a.pow(params.m());
                let c = am.square().add(&am).neg();
                for b in gf::nth_roots(&c, params.q() + 1) {
                    let point = CurvePoint::affine(params, a.clone(), b)?;
                    let class = classify(&point, params)?;
                    if !(ClassRequest::POrder { i }).matches(&class) {
                        return Err(CurveError::InternalInconsistency(format!(
                            "constructed point {point} classified as {class}"
                        )));
                    }
                    out.push(point);
                    if out.len() >= count {
                        return Ok(out);
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(CurveError::ExtensionBoundTooSmall(k_max));
    }
    Ok(out)
}

/// Seeded scan for generic (non-Weierstrass, non-rational) points over
/// F_{q^{2k}} for the requested k.
fn generic_points(
    params: &CurveParams,
    ext: u32,
    seed: u64,
    count: usize,
) -> Result<Vec<CurvePoint>, CurveError> {
    if ext < 2 {
        return Err(CurveError::ClassInfeasible(
            "generic points are never F_{q^2}-rational; request ext >= 2".into(),
        ));
    }
    let ctx = params.ext_field(ext)?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let fam = PqFamily::new(&ctx)?;
    let mut out = Vec::new();
    let mut attempts = 0u64;
    while out.len() < count {
        attempts += 1;
        if attempts > 200_000 {
            return Err(CurveError::ClassInfeasible(
                "generic scan exhausted its attempt budget".into(),
            ));
        }
        let coeffs: Vec<u64> = (0..ctx.ext_degree())
            .map(|_| rng.gen_range(0..ctx.p()))
            .collect();
        let a = ctx.element(coeffs);
        if a.is_zero() {
            continue;
        }
        let am = a.pow(params.m());
        let denom = ctx.one().add(&am);
        if denom.is_zero() {
            continue;
        }
        let alpha = am.mul(&denom.inverse().unwrap());
        if alpha.is_zero() || fam.is_alpha_special(&alpha) {
            continue;
        }
        if fam.p_order_up_to(&alpha, params.m().saturating_sub(1)).is_some() {
            continue;
        }
        let c = am.square().add(&am).neg();
        for b in gf::nth_roots(&c, params.q() + 1) {
            let point = CurvePoint::affine(params, a.clone(), b)?;
            let class = classify(&point, params)?;
            if class == PointClass::GenericNonRational {
                out.push(point);
                if out.len() >= count {
                    break;
                }
            }
        }
    }
    Ok(out)
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}
