use super::func::{build_special_fn, fn_valuation, LocalCoords, SpecialFn};
use super::divisor::{divisor_check, DivisorInput, PlaceKey};
use super::sample::{sample_points, ClassRequest};
use super::*;
use crate::gf::CtxOps;
use crate::series::TruncatedSeries;

fn q5() -> CurveParams {
    curve_params(5).unwrap()
}

fn q11() -> CurveParams {
    curve_params(11).unwrap()
}

#[test]
fn params_examples() {
    let p5 = q5();
    assert_eq!((p5.p(), p5.n(), p5.m(), p5.genus()), (5, 1, 2, 4));
    let p11 = q11();
    assert_eq!((p11.m(), p11.genus()), (4, 19));
    assert_eq!(curve_params(7).unwrap_err(), CurveError::BadCongruence(7));
    assert_eq!(curve_params(2).unwrap_err(), CurveError::TooSmall(2));
    assert_eq!(curve_params(6).unwrap_err(), CurveError::NotPrimePower(6));
    let p8 = curve_params(8).unwrap();
    assert_eq!((p8.p(), p8.n(), p8.m(), p8.genus()), (2, 3, 3, 10));
}

#[test]
fn point_from_x_examples() {
    let params = q5();
    let ctx = params.base_field();
    // a^m = -1: single point (a, 0)
    let minus_one = ctx.one().neg();
    let a0 = gf::nth_roots(&minus_one, 2)[0].clone();
    let pts = point_from_x(&a0, &params).unwrap();
    assert_eq!(pts.len(), 1);
    assert!(pts[0].coords().unwrap().1.is_zero());
    assert_eq!(classify(&pts[0], &params).unwrap(), PointClass::InOrbitO);
    // a = 1: count agrees with the exhaustive scan of b^6 = -2
    let one = ctx.one();
    let pts = point_from_x(&one, &params).unwrap();
    let expect = ctx
        .iter_elements()
        .filter(|b| b.pow(6) == ctx.from_i64(-2))
        .count();
    assert_eq!(pts.len(), expect);
    // a = 0 is rejected
    assert!(point_from_x(&ctx.zero(), &params).is_err());
}

#[test]
fn alpha_examples() {
    let params = q11();
    let ctx = params.base_field();
    // a^m = 1 gives alpha = 1/2
    let a = gf::nth_roots(&ctx.one(), params.m())[1].clone();
    assert_eq!(a.pow(params.m()), ctx.one());
    for pt in point_from_x(&a, &params).unwrap() {
        let alpha = alpha_of(&pt).unwrap();
        assert_eq!(alpha, ctx.from_u64(2).inverse().unwrap());
    }
    // orbit points have no alpha
    let orbit = sample_points(ClassRequest::InOrbitO, &params, 1, 0, 99).unwrap();
    assert_eq!(orbit.len(), params.m() as usize);
    assert_eq!(alpha_of(&orbit[0]).unwrap_err(), CurveError::AlphaUndefined);
    // alpha-special points satisfy alpha^2 - alpha + 1 = 0
    let sp = sample_points(ClassRequest::RationalAlphaSpecial, &params, 1, 0, 5).unwrap();
    let alpha = alpha_of(&sp[0]).unwrap();
    assert!(alpha.square().sub(&alpha).add(&ctx.one()).is_zero());
}

#[test]
fn pq_small_values() {
    let params = q11();
    let fam = PqFamily::new(params.base_field()).unwrap();
    let ctx = params.base_field();
    // P_1 = 1 everywhere
    for idx in [0u64, 3, 50] {
        let s = ctx.element_from_index(idx);
        assert!(fam.eval(PqKind::P, 1, &s).unwrap().is_one());
    }
    // P_2(2) = 0 in characteristic != 2, 3
    assert!(fam.eval(PqKind::P, 2, &ctx.from_u64(2)).unwrap().is_zero());
    // Q_1(s) = s + 1
    assert_eq!(
        fam.eval(PqKind::Q, 1, &ctx.from_u64(3)).unwrap(),
        ctx.from_u64(4)
    );
    // Q_0 has poles exactly at the roots of s^2 - s + 1
    let z = ctx.zeta3().unwrap();
    let pole = z.neg();
    assert!(matches!(
        fam.eval(PqKind::Q, 0, &pole),
        Err(CurveError::PoleAt(_))
    ));
    let fine = fam.eval(PqKind::Q, 0, &ctx.from_u64(2)).unwrap();
    assert_eq!(fine, ctx.from_u64(3).inverse().unwrap());
}

#[test]
fn pq_polynomials_match_integer_forms() {
    // F_43 has 3 | 42, so the cube root lives in the prime field and the
    // integer coefficient polynomials reduce directly
    let ctx = gf::make_field(43, 1).unwrap();
    let fam = PqFamily::new(&ctx).unwrap();
    let to_vec = |ints: &[i64]| -> Vec<crate::gf::FieldElement> {
        ints.iter().map(|&c| ctx.from_i64(c)).collect()
    };
    let (p2, e) = fam.poly(PqKind::P, 2);
    assert_eq!(e, 0);
    assert_eq!(p2, to_vec(&[2, -3, -3, 2]));
    let (p3, _) = fam.poly(PqKind::P, 3);
    assert_eq!(p3, to_vec(&[3, -9, -9, 33, -9, -9, 3]));
    let (q2, _) = fam.poly(PqKind::Q, 2);
    assert_eq!(q2, to_vec(&[1, 1, -9, 1, 1]));
    let (q3, _) = fam.poly(PqKind::Q, 3);
    assert_eq!(q3, to_vec(&[1, 1, -27, 29, 29, -27, 1, 1]));
    let (q0, e0) = fam.poly(PqKind::Q, 0);
    assert_eq!((q0, e0), (to_vec(&[1]), 1));
    let (p0, _) = fam.poly(PqKind::P, 0);
    assert!(p0.is_empty());
    // degree bounds: deg P_i <= 3i-3 (equality when p does not divide i),
    // deg Q_i = 3i-2, for 1 <= i <= 12
    for i in 1..=12i64 {
        let (p, _) = fam.poly(PqKind::P, i);
        let (q, _) = fam.poly(PqKind::Q, i);
        let dp = crate::gf::epoly::degree(&p).map(|d| d as i64).unwrap_or(-1);
        assert_eq!(dp, 3 * i - 3);
        assert_eq!(crate::gf::epoly::degree(&q), Some((3 * i - 2) as usize));
    }
}

#[test]
fn pq_identity_spot_checks() {
    let params = q11();
    let fam = PqFamily::new(params.base_field()).unwrap();
    let ctx = params.base_field();
    // antisymmetry: i = j makes the left side vanish along with P_0
    assert!(fam.identity_check(2, 2, 5, &ctx.from_u64(7)).unwrap());
    // the worked instance (i=2, j=1, l=0): P_2 Q_1 - P_1 Q_2 = w^3 P_1 Q_0
    assert!(fam.identity_check(2, 1, 0, &ctx.from_u64(4)).unwrap());
    // negative indices
    assert!(fam.identity_check(-1, 2, 3, &ctx.from_u64(5)).unwrap());
    assert!(fam.identity_check(3, -2, -1, &ctx.from_u64(8)).unwrap());
}

#[test]
fn p_order_examples() {
    let params = q11();
    let ctx = params.base_field();
    let fam = PqFamily::new(ctx).unwrap();
    // alpha = -1: the cubed ratio is -1, of order two
    assert_eq!(fam.p_order(&ctx.one().neg()).unwrap(), 1);
    // alpha = 2 has P-order 1, consistent with P_2(2) = 0
    assert_eq!(fam.p_order(&ctx.from_u64(2)).unwrap(), 1);
    assert_eq!(fam.p_order_up_to(&ctx.from_u64(2), 3), Some(1));
    // excluded inputs
    let z = ctx.zeta3().unwrap();
    assert_eq!(
        fam.p_order(&z.neg()).unwrap_err(),
        CurveError::ExcludedAlpha
    );
    assert_eq!(fam.p_order(&ctx.one()).unwrap_err(), CurveError::ExcludedAlpha);
    // gcd(i+1, p) = 1 for every realised order
    for idx in 0..121u64 {
        let alpha = ctx.element_from_index(idx);
        if alpha.is_zero() || alpha.is_one() || fam.is_alpha_special(&alpha) {
            continue;
        }
        let i = fam.p_order(&alpha).unwrap();
        assert_eq!(gf::arith::gcd_u64(i + 1, params.p()), 1);
        // the two routes agree
        assert_eq!(fam.p_order_up_to(&alpha, i + 2), Some(i));
    }
}

#[test]
fn classify_census_over_f25() {
    let params = q5();
    let ctx = params.base_field();
    let mut orbit = 0;
    let mut special = 0;
    let mut p_order_1 = 0;
    for a in ctx.iter_elements() {
        if a.is_zero() {
            continue;
        }
        for pt in point_from_x(&a, &params).unwrap() {
            match classify(&pt, &params).unwrap() {
                PointClass::InOrbitO => orbit += 1,
                PointClass::RationalAlphaSpecial => special += 1,
                PointClass::POrder { i: 1, rational: true } => p_order_1 += 1,
                other => panic!("unexpected class over F_25: {other}"),
            }
        }
    }
    // 2 affine orbit points, 2m(q+1) = 24 alpha-special, 36 of P-order 1
    assert_eq!((orbit, special, p_order_1), (2, 24, 36));
}

#[test]
fn classify_nonrational() {
    let params = q5();
    let pts = sample_points(ClassRequest::Generic { ext: 2 }, &params, 2, 0, 3).unwrap();
    assert_eq!(pts.len(), 3);
    for pt in &pts {
        assert!(!pt.is_rational(&params));
        assert_eq!(classify(&pt, &params).unwrap(), PointClass::GenericNonRational);
    }
    // q = 11 admits non-rational P-order 2 (3 does not divide m = 4)
    let params = q11();
    let pts = sample_points(ClassRequest::POrder { i: 2 }, &params, 12, 0, 2).unwrap();
    assert!(!pts.is_empty());
    for pt in &pts {
        assert!(!pt.is_rational(&params));
        assert_eq!(
            classify(&pt, &params).unwrap(),
            PointClass::POrder { i: 2, rational: false }
        );
        assert!(pt.ext() <= 12);
    }
    // and rational P-order 3 (4 divides 4)
    let pts = sample_points(ClassRequest::POrder { i: 3 }, &params, 2, 0, 2).unwrap();
    for pt in &pts {
        assert_eq!(pt.ext(), 1);
        assert_eq!(
            classify(&pt, &params).unwrap(),
            PointClass::POrder { i: 3, rational: true }
        );
    }
}

#[test]
fn point_text_round_trip() {
    let params = q5();
    let pts = sample_points(ClassRequest::RationalAlphaSpecial, &params, 1, 0, 1).unwrap();
    let txt = pts[0].to_string();
    let back = CurvePoint::parse(&params, &txt).unwrap();
    assert_eq!(back, pts[0]);
    // off-curve coordinates rejected: 1 + 1 + 1 != 0 over F_5
    assert!(matches!(
        CurvePoint::parse(&params, "a=1,0;b=1,0;ext=1"),
        Err(CurveError::OffCurve(_))
    ));
}

#[test]
fn local_coords_satisfy_curve() {
    for params in [q5(), q11()] {
        let prec = 24;
        let mut pts = sample_points(ClassRequest::RationalAlphaSpecial, &params, 1, 0, 1).unwrap();
        pts.extend(sample_points(ClassRequest::InOrbitO, &params, 1, 0, 1).unwrap());
        for pt in &pts {
            let local = LocalCoords::at(pt, &params, prec).unwrap();
            let lhs = local
                .y
                .pow(params.q() + 1)
                .add(&local.x.pow(2 * params.m()))
                .add(&local.x.pow(params.m()));
            assert!(lhs.is_zero_to_prec(), "curve equation fails at {pt}");
        }
    }
}

#[test]
fn special_function_valuations() {
    let params = q11();
    // rational P-order 1 point: f_0 vanishes to order 2, f_1 jumps to 6
    let pts = sample_points(ClassRequest::POrder { i: 1 }, &params, 1, 0, 1).unwrap();
    let pt = &pts[0];
    let xa = build_special_fn(SpecialFn::Xa, pt, &params).unwrap();
    assert_eq!(fn_valuation(&xa, pt, &params).unwrap(), 1);
    let f0 = build_special_fn(SpecialFn::F0, pt, &params).unwrap();
    assert_eq!(fn_valuation(&f0, pt, &params).unwrap(), 2);
    let f1 = build_special_fn(SpecialFn::FSeq(1), pt, &params).unwrap();
    assert_eq!(fn_valuation(&f1, pt, &params).unwrap(), 6);
    // y - b vanishes to order exactly 1 when alpha != -1
    let alpha = alpha_of(pt).unwrap();
    if alpha.add(&alpha.ctx().one()).is_zero() {
        // this seeded point happens to have alpha = -1; skip the y-b check
    } else {
        let (a, b) = pt.coords().unwrap();
        let ctx = a.ctx();
        let ymb = super::func::FunctionElement::from_poly(super::func::BivarPoly::from_rows(
            ctx,
            vec![vec![b.neg()], vec![ctx.one()]],
        ));
        assert_eq!(fn_valuation(&ymb, pt, &params).unwrap(), 1);
    }
    // alpha-special point: g_i vanishes to order 3i+2 for i <= m-2
    let pts = sample_points(ClassRequest::RationalAlphaSpecial, &params, 1, 0, 1).unwrap();
    let pt = &pts[0];
    for i in 0..=params.m() - 2 {
        let gi = build_special_fn(SpecialFn::GSeq(i), pt, &params).unwrap();
        assert_eq!(fn_valuation(&gi, pt, &params).unwrap(), (3 * i + 2) as i64);
    }
    // wrong-class requests fail loudly
    assert!(matches!(
        build_special_fn(SpecialFn::GSeq(1), &pts[0], &params),
        Ok(_)
    ));
    let generic = sample_points(ClassRequest::Generic { ext: 2 }, &params, 2, 0, 1).unwrap();
    assert!(matches!(
        build_special_fn(SpecialFn::GSeq(1), &generic[0], &params),
        Err(CurveError::WrongClass(_))
    ));
}

#[test]
fn orbit_point_parameter_is_y() {
    let params = q11();
    let pts = sample_points(ClassRequest::InOrbitO, &params, 1, 0, 1).unwrap();
    let pt = &pts[0];
    // x_a has valuation q+1 at (a, 0) with a^m = -1
    let xa = build_special_fn(SpecialFn::Xa, pt, &params).unwrap();
    assert_eq!(fn_valuation(&xa, pt, &params).unwrap(), (params.q() + 1) as i64);
}

#[test]
fn leading_coefficients_in_cover_parameter() {
    // expanding f_j in t = x_a and substituting t = 3T + 3T^2 + T^3 gives
    // the T-expansion; its leading coefficients are 3 P_{j+1}(alpha) and
    // Q_{j+1}(alpha)
    let params = q11();
    let pts = sample_points(ClassRequest::POrder { i: 1 }, &params, 1, 0, 1).unwrap();
    let pt = &pts[0];
    let ctx = pt.coords().unwrap().0.ctx();
    let fam = PqFamily::new(ctx).unwrap();
    let alpha = alpha_of(pt).unwrap();
    let prec = params.default_prec();
    let local = LocalCoords::at(pt, &params, prec).unwrap();
    let subst = TruncatedSeries::new(
        ctx,
        vec![ctx.zero(), ctx.from_u64(3), ctx.from_u64(3), ctx.one()],
        prec,
    );
    for j in 0..=1u64 {
        let fj = build_special_fn(SpecialFn::FSeq(j), pt, &params).unwrap();
        let (num, den) = fj.expand(&local);
        let series_t = num.div(&den).unwrap();
        let series_cover = series_t.compose(&subst);
        let lead = series_cover.coeff((3 * j + 2) as usize);
        let next = series_cover.coeff((3 * j + 3) as usize);
        let p_j1 = fam.eval(PqKind::P, (j + 1) as i64, &alpha).unwrap();
        let q_j1 = fam.eval(PqKind::Q, (j + 1) as i64, &alpha).unwrap();
        assert_eq!(lead, &p_j1.scale_u64(3));
        assert_eq!(next, &q_j1);
    }
}

#[test]
fn divisor_table() {
    let params = q5();
    // (x) = 3 sum(O0) - 3 D_inf, degree 0
    let dx = divisor_check(&DivisorInput::X, &params).unwrap();
    assert_eq!(dx.multiplicity(&PlaceKey::AllO0), 3);
    assert_eq!(dx.multiplicity(&PlaceKey::AllOInf), -3);
    assert_eq!(dx.degree(), 0);
    // (y) has the m orbit points with multiplicity 1
    let dy = divisor_check(&DivisorInput::Y, &params).unwrap();
    assert_eq!(dy.multiplicity(&PlaceKey::AllO0), 1);
    assert_eq!(dy.multiplicity(&PlaceKey::AllOInf), -2);
    let affine: i64 = dy
        .entries()
        .filter(|(k, _)| matches!(k, PlaceKey::Affine(_)))
        .map(|(_, &v)| v)
        .sum();
    assert_eq!(affine, params.m() as i64);
    // monomial y^3/x from the canonical basis
    let d = divisor_check(&DivisorInput::Monomial { i: -1, j: 3 }, &params).unwrap();
    assert_eq!(d.multiplicity(&PlaceKey::AllO0), 0);
    assert_eq!(d.multiplicity(&PlaceKey::AllOInf), -3);
    // x_a in both regimes
    let orbit = sample_points(ClassRequest::InOrbitO, &params, 1, 0, 1).unwrap();
    let d = divisor_check(&DivisorInput::Xa(orbit[0].clone()), &params).unwrap();
    assert_eq!(
        d.multiplicity(&PlaceKey::Affine(orbit[0].clone())),
        (params.q() + 1) as i64
    );
    let sp = sample_points(ClassRequest::RationalAlphaSpecial, &params, 1, 0, 1).unwrap();
    let d = divisor_check(&DivisorInput::Xa(sp[0].clone()), &params).unwrap();
    assert_eq!(d.degree(), 0);
    let affine_count = d
        .entries()
        .filter(|(k, _)| matches!(k, PlaceKey::Affine(_)))
        .count();
    assert_eq!(affine_count, (params.q() + 1) as usize);
    // y - b and f_0 carry their residual degrees
    let d = divisor_check(&DivisorInput::YMinusB(sp[0].clone()), &params).unwrap();
    assert_eq!(d.degree(), 0);
    let d = divisor_check(&DivisorInput::F0(sp[0].clone()), &params).unwrap();
    assert_eq!(d.multiplicity(&PlaceKey::Affine(sp[0].clone())), 2);
    assert_eq!(d.degree(), 0);
}
