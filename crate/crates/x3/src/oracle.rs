//! Ground-truth gap computation at a point.
//!
//! The space of functions h with (h) >= -(q-2) D_inf is canonical of
//! dimension g, and v_P(h) + 1 is then a gap at P for every h in it. A
//! monomial basis x^i y^j is enumerated from the divisor table
//! (3i + j >= 0, 0 <= j <= q, pole order 3i + 2j <= q - 2), each monomial
//! is expanded as a truncated series at P, and exact row reduction over
//! the coordinate field reads off the g distinct pivot orders. The gap
//! set is {pivot + 1}: complete because a g-dimensional space attains
//! exactly g vanishing orders and every gap arises from some h.

use serde::Serialize;

use crate::curve::func::{FunctionElement, LocalCoords};
use crate::curve::sample::orbit_points;
use crate::curve::{CurveError, CurveParams, CurvePoint, PointKind};
use crate::gf::{CtxOps, FieldElement};
use crate::numsg::NumericalSemigroup;
use crate::par;
use crate::series::{TruncatedSeries, Valuation};

/// Monomial exponent lattice of the space cut out by n D_inf.
pub fn monomial_lattice(params: &CurveParams, n: u64) -> Vec<(i64, u64)> {
    let q = params.q();
    let mut out = Vec::new();
    // 3i >= -j forces the pole order 3i + 2j to be at least j, so j <= n
    for j in 0..=q.min(n) {
        let lower = -((j as i64) / 3) - 1;
        let upper = ((n as i64) - 2 * j as i64).div_euclid(3);
        for i in lower..=upper {
            if 3 * i + j as i64 >= 0 && 3 * i + 2 * j as i64 <= n as i64 {
                out.push((i, j));
            }
        }
    }
    out.sort_unstable_by_key(|&(i, j)| (j, i));
    out
}

/// The monomial basis of the canonical space, with the dimension pinned
/// to the genus at construction.
#[derive(Debug, Clone)]
pub struct CanonicalBasis {
    monomials: Vec<(i64, u64)>,
    bound: u64,
}

impl CanonicalBasis {
    pub fn monomials(&self) -> &[(i64, u64)] {
        &self.monomials
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }
}

pub fn canonical_basis(params: &CurveParams) -> Result<CanonicalBasis, CurveError> {
    let monomials = monomial_lattice(params, params.q() - 2);
    let got = monomials.len() as u64;
    if got != params.genus() {
        return Err(CurveError::DimensionMismatch {
            expected: params.genus(),
            got,
        });
    }
    Ok(CanonicalBasis {
        monomials,
        bound: params.q() - 2,
    })
}

/// The oracle's verdict at one point.
#[derive(Debug, Clone, Serialize)]
pub struct GapReport {
    pub point: String,
    pub gaps: Vec<u64>,
    pub pivots: Vec<u64>,
    pub precision: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matched_closed_form: Option<bool>,
}

/// Gap set at a point by exact echelonisation of the canonical space.
/// Symbolic places are resolved through an orbit representative (a, 0),
/// which shares its gap set with every point of the special orbit.
pub fn oracle_gaps(
    point: &CurvePoint,
    basis: &CanonicalBasis,
    params: &CurveParams,
) -> Result<GapReport, CurveError> {
    let (expand_point, label) = match point.kind() {
        PointKind::Affine { .. } => (point.clone(), point.to_string()),
        PointKind::PlaceO0(_) | PointKind::PlaceOInf(_) => {
            let rep = orbit_points(params)?
                .into_iter()
                .next()
                .expect("orbit is nonempty");
            (rep, format!("{point} (via orbit representative)"))
        }
    };
    let mut prec = params.default_prec();
    for attempt in 0..2 {
        match oracle_gaps_at_precision(&expand_point, basis, params, prec) {
            Ok((gaps, pivots)) => {
                let genus = params.genus();
                if gaps.len() as u64 != genus {
                    return Err(CurveError::DimensionMismatch {
                        expected: genus,
                        got: gaps.len() as u64,
                    });
                }
                let max_pivot = *pivots.last().expect("genus >= 1");
                if max_pivot > 2 * genus - 2 {
                    return Err(CurveError::InternalInconsistency(format!(
                        "pivot order {max_pivot} exceeds the canonical degree {}",
                        2 * genus - 2
                    )));
                }
                return Ok(GapReport {
                    point: label,
                    gaps,
                    pivots,
                    precision: prec,
                    matched_closed_form: None,
                });
            }
            Err(CurveError::PrecisionExhausted) if attempt == 0 => {
                prec *= 2;
            }
            Err(e) => return Err(e),
        }
    }
    Err(CurveError::PrecisionExhausted)
}

fn oracle_gaps_at_precision(
    point: &CurvePoint,
    basis: &CanonicalBasis,
    params: &CurveParams,
    prec: usize,
) -> Result<(Vec<u64>, Vec<u64>), CurveError> {
    let rows = expand_monomials(point, basis.monomials(), params, prec)?;
    let matrix: Vec<Vec<FieldElement>> = rows
        .into_iter()
        .map(|s| s.coeffs().to_vec())
        .collect();
    let pivots = echelon_pivots(matrix, prec)?;
    let gaps: Vec<u64> = pivots.iter().map(|&p| p as u64 + 1).collect();
    Ok((gaps, pivots.into_iter().map(|p| p as u64).collect()))
}

/// Series of every monomial x^i y^j at the point, sharing the power
/// computations across the batch.
fn expand_monomials(
    point: &CurvePoint,
    monomials: &[(i64, u64)],
    params: &CurveParams,
    prec: usize,
) -> Result<Vec<TruncatedSeries>, CurveError> {
    let local = LocalCoords::at(point, params, prec)?;
    let min_i = monomials.iter().map(|&(i, _)| i).min().unwrap_or(0);
    let max_i = monomials.iter().map(|&(i, _)| i).max().unwrap_or(0);
    let max_j = monomials.iter().map(|&(_, j)| j).max().unwrap_or(0);
    // positive and negative powers of x, powers of y
    let ctx = local.x.ctx().clone();
    let one = TruncatedSeries::constant(&ctx.one(), prec);
    let mut x_pows = vec![one.clone()];
    for _ in 1..=max_i.max(0) {
        let last = x_pows.last().unwrap();
        x_pows.push(last.mul(&local.x));
    }
    let mut x_neg_pows = vec![one.clone()];
    if min_i < 0 {
        let x_inv = local.x.inverse()?;
        for _ in 1..=(-min_i) {
            let last = x_neg_pows.last().unwrap();
            x_neg_pows.push(last.mul(&x_inv));
        }
    }
    let mut y_pows = vec![one];
    for _ in 1..=max_j {
        let last = y_pows.last().unwrap();
        y_pows.push(last.mul(&local.y));
    }
    Ok(monomials
        .iter()
        .map(|&(i, j)| {
            let xp = if i >= 0 {
                &x_pows[i as usize]
            } else {
                &x_neg_pows[(-i) as usize]
            };
            xp.mul(&y_pows[j as usize])
        })
        .collect())
}

/// Pivot columns of the row space under exact Gaussian elimination:
/// leftmost-nonzero column order, first available row. Pivot columns are
/// an invariant of the row space, which is all that is read off. A pivot
/// in the last column (or a dependent row) signals insufficient precision.
fn echelon_pivots(
    mut matrix: Vec<Vec<FieldElement>>,
    prec: usize,
) -> Result<Vec<usize>, CurveError> {
    let rows = matrix.len();
    let mut pivots = Vec::with_capacity(rows);
    let mut next_row = 0usize;
    for col in 0..prec {
        if next_row == rows {
            break;
        }
        let Some(found) = (next_row..rows).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(next_row, found);
        let inv = matrix[next_row][col].inverse().expect("pivot nonzero");
        for r in next_row + 1..rows {
            if matrix[r][col].is_zero() {
                continue;
            }
            let factor = matrix[r][col].mul(&inv);
            for c in col..prec {
                let delta = factor.mul(&matrix[next_row][c]);
                matrix[r][c] = matrix[r][c].sub(&delta);
            }
        }
        pivots.push(col);
        next_row += 1;
    }
    // a dependent row or a pivot at the precision edge would let
    // truncation masquerade as a valuation
    if next_row < rows || pivots.last().map(|&p| p + 1 >= prec).unwrap_or(false) {
        return Err(CurveError::PrecisionExhausted);
    }
    Ok(pivots)
}

/// Gap report turned into a semigroup (round-trips through the closure
/// validation of the gap list).
pub fn oracle_semigroup(
    point: &CurvePoint,
    basis: &CanonicalBasis,
    params: &CurveParams,
) -> Result<NumericalSemigroup, CurveError> {
    let report = oracle_gaps(point, basis, params)?;
    NumericalSemigroup::from_gaps(&report.gaps).map_err(|e| {
        CurveError::InternalInconsistency(format!("oracle gaps fail closure: {e}"))
    })
}

/// Searches L(n D_inf) for an explicit function with prescribed vanishing
/// order at the point; `None` when the order is not attained.
pub fn find_with_valuation(
    point: &CurvePoint,
    params: &CurveParams,
    n: u64,
    target_v: u64,
) -> Result<Option<FunctionElement>, CurveError> {
    assert!(n <= params.q() - 2, "pole bound beyond the canonical space");
    let monomials = monomial_lattice(params, n);
    let prec = params.default_prec();
    let rows = expand_monomials(point, &monomials, params, prec)?;
    // eliminate with an attached transformation so pivot rows stay
    // expressible in the original monomials
    let ctx = rows[0].ctx().clone();
    let k = rows.len();
    let mut matrix: Vec<Vec<FieldElement>> =
        rows.into_iter().map(|s| s.coeffs().to_vec()).collect();
    let mut combo: Vec<Vec<FieldElement>> = (0..k)
        .map(|r| {
            (0..k)
                .map(|c| if r == c { ctx.one() } else { ctx.zero() })
                .collect()
        })
        .collect();
    let mut next_row = 0usize;
    for col in 0..prec {
        if next_row == k {
            break;
        }
        let Some(found) = (next_row..k).find(|&r| !matrix[r][col].is_zero()) else {
            continue;
        };
        matrix.swap(next_row, found);
        combo.swap(next_row, found);
        let inv = matrix[next_row][col].inverse().expect("pivot nonzero");
        for r in next_row + 1..k {
            if matrix[r][col].is_zero() {
                continue;
            }
            let factor = matrix[r][col].mul(&inv);
            for c in col..prec {
                let delta = factor.mul(&matrix[next_row][c]);
                matrix[r][c] = matrix[r][c].sub(&delta);
            }
            for c in 0..k {
                let delta = factor.mul(&combo[next_row][c]);
                combo[r][c] = combo[r][c].sub(&delta);
            }
        }
        if col as u64 == target_v {
            let fun = assemble_combination(&ctx, &combo[next_row], &monomials, params);
            return Ok(Some(fun));
        }
        next_row += 1;
    }
    Ok(None)
}

fn assemble_combination(
    ctx: &std::sync::Arc<crate::gf::FieldCtx>,
    coeffs: &[FieldElement],
    monomials: &[(i64, u64)],
    params: &CurveParams,
) -> FunctionElement {
    use crate::curve::func::BivarPoly;
    let mut acc = FunctionElement::constant(&ctx.zero());
    for (c, &(i, j)) in coeffs.iter().zip(monomials) {
        if c.is_zero() {
            continue;
        }
        let mut num = BivarPoly::from_rows(
            ctx,
            {
                let mut rows = vec![Vec::new(); j as usize + 1];
                rows[j as usize] = vec![c.clone()];
                rows
            },
        );
        let term = if i >= 0 {
            num = num.mul(&BivarPoly::x_pow(ctx, i as u64), params);
            FunctionElement::from_poly(num)
        } else {
            FunctionElement::fraction(num, BivarPoly::x_pow(ctx, (-i) as u64))
        };
        acc = acc.add(&term, params);
    }
    acc
}

/// Batch oracle over many points, parallel when the feature is enabled.
pub fn oracle_gaps_batch(
    points: Vec<CurvePoint>,
    basis: &CanonicalBasis,
    params: &CurveParams,
) -> Vec<Result<GapReport, CurveError>> {
    par::map_collect(points, |p| oracle_gaps(p, basis, params))
}

/// Sequential batch path (benchmark reference).
pub fn oracle_gaps_batch_seq(
    points: Vec<CurvePoint>,
    basis: &CanonicalBasis,
    params: &CurveParams,
) -> Vec<Result<GapReport, CurveError>> {
    par::map_collect_seq(points, |p| oracle_gaps(p, basis, params))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::sample::{sample_points, ClassRequest};
    use crate::curve::{classify, curve_params, PointClass};
    use crate::curve::func::fn_valuation;

    #[test]
    fn lattice_counts() {
        // canonical dimensions for the supported q values
        for (q, g) in [(5u64, 4u64), (8, 10), (11, 19), (17, 46), (23, 85)] {
            let params = curve_params(q).unwrap();
            assert_eq!(params.genus(), g);
            let basis = canonical_basis(&params).unwrap();
            assert_eq!(basis.monomials().len() as u64, g);
        }
        // the q = 5 basis is exactly {1, y, x, y^3/x}
        let params = curve_params(5).unwrap();
        let basis = canonical_basis(&params).unwrap();
        assert_eq!(basis.monomials(), &[(0, 0), (1, 0), (0, 1), (-1, 3)]);
    }

    #[test]
    fn riemann_roch_dimension_above_canonical_bound() {
        // bounds n with nm >= 2g - 1 satisfy |lattice| = nm - g + 1; such
        // n start just above the canonical bound q - 2
        for q in [5u64, 11, 17] {
            let params = curve_params(q).unwrap();
            let g = params.genus();
            let m = params.m();
            let start = (2 * g - 1).div_ceil(m);
            for n in start..=params.q() + 4 {
                let count = monomial_lattice(&params, n).len() as u64;
                assert_eq!(count, n * m - g + 1, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn oracle_gap_sets_q5() {
        let params = curve_params(5).unwrap();
        let basis = canonical_basis(&params).unwrap();
        // orbit point: gaps {1,2,4,7}
        let orbit = sample_points(ClassRequest::InOrbitO, &params, 1, 0, 1).unwrap();
        let rep = oracle_gaps(&orbit[0], &basis, &params).unwrap();
        assert_eq!(rep.gaps, vec![1, 2, 4, 7]);
        // alpha-special rational point: gaps {1,2,3,7}
        let sp = sample_points(ClassRequest::RationalAlphaSpecial, &params, 1, 0, 1).unwrap();
        let rep = oracle_gaps(&sp[0], &basis, &params).unwrap();
        assert_eq!(rep.gaps, vec![1, 2, 3, 7]);
        // generic non-rational point over F_{5^4}: gaps {1,2,3,6}
        let gen = sample_points(ClassRequest::Generic { ext: 2 }, &params, 2, 0, 1).unwrap();
        let rep = oracle_gaps(&gen[0], &basis, &params).unwrap();
        assert_eq!(rep.gaps, vec![1, 2, 3, 6]);
        // symbolic places resolve through the orbit
        let rep = oracle_gaps(&crate::curve::CurvePoint::place_o0(1), &basis, &params).unwrap();
        assert_eq!(rep.gaps, vec![1, 2, 4, 7]);
    }

    #[test]
    fn oracle_semigroups_q11() {
        let params = curve_params(11).unwrap();
        let basis = canonical_basis(&params).unwrap();
        let orbit = sample_points(ClassRequest::InOrbitO, &params, 1, 0, 1).unwrap();
        let sg = oracle_semigroup(&orbit[0], &basis, &params).unwrap();
        assert_eq!(sg.generators(), &[9, 11, 12]);
        let p1 = sample_points(ClassRequest::POrder { i: 1 }, &params, 1, 0, 1).unwrap();
        let sg = oracle_semigroup(&p1[0], &basis, &params).unwrap();
        assert_eq!(sg.generators(), &[10, 11, 12, 18]);
    }

    #[test]
    fn pivot_search_finds_prescribed_valuations() {
        let params = curve_params(5).unwrap();
        let gen = sample_points(ClassRequest::Generic { ext: 2 }, &params, 2, 0, 1).unwrap();
        let pt = &gen[0];
        // a function with vanishing order 2 in L(3 D_inf) exists
        let f = find_with_valuation(pt, &params, 3, 2).unwrap().unwrap();
        assert_eq!(fn_valuation(&f, pt, &params).unwrap(), 2);
        // order 5 is not attained there
        assert!(find_with_valuation(pt, &params, 3, 5).unwrap().is_none());
        let class = classify(pt, &params).unwrap();
        assert_eq!(class, PointClass::GenericNonRational);
    }
}
