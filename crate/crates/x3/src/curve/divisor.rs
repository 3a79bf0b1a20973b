//! Closed-form principal divisors of the supported functions.
//!
//! Valuation table (per place):
//!   x:     3 at each place over (0,0), -3 at each place over infinity
//!   y:     1 at each place over (0,0) and at each (a,0) with a^m = -1,
//!          -2 at each place over infinity
//!   x_a:   1 at each point (a, xi b), or q+1 at (a,0) when a^m = -1;
//!          -3 at each place over infinity
//!   y - b: 1 at the point plus an effective part of degree 2m-1
//!   f_0:   2 at the point plus an effective part of degree 3m-2
//!
//! The places over (0,0) and infinity enter as formal aggregates of m
//! places each; the effective parts of (y-b) and (f_0) are carried as
//! unresolved residuals with only their degree recorded.

use std::collections::BTreeMap;
use std::fmt;

use crate::gf::{self, CtxOps};

use super::{CurveError, CurveParams, CurvePoint, PointKind};

/// Keys of a divisor: explicit affine points, the two symbolic aggregates
/// (each spanning m places) and a degree-only residual.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum PlaceKey {
    Affine(CurvePoint),
    /// all m places over (0,0), multiplicity applied to each
    AllO0,
    /// all m places over infinity (the infinity divisor), per place
    AllOInf,
    /// effective divisor known only by degree
    Residual(u64),
}

impl fmt::Display for PlaceKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceKey::Affine(p) => write!(f, "P({p})"),
            PlaceKey::AllO0 => write!(f, "sum of places over (0,0)"),
            PlaceKey::AllOInf => write!(f, "D_inf"),
            PlaceKey::Residual(d) => write!(f, "effective residual of degree {d}"),
        }
    }
}

/// A divisor with integer multiplicities on the representable places.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Divisor {
    entries: BTreeMap<PlaceKey, i64>,
    m: u64,
}

impl Divisor {
    pub fn new(params: &CurveParams) -> Self {
        Divisor {
            entries: BTreeMap::new(),
            m: params.m(),
        }
    }

    pub fn insert(&mut self, key: PlaceKey, mult: i64) {
        let slot = self.entries.entry(key).or_insert(0);
        *slot += mult;
        if *slot == 0 {
            self.entries.retain(|_, v| *v != 0);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&PlaceKey, &i64)> {
        self.entries.iter()
    }

    pub fn multiplicity(&self, key: &PlaceKey) -> i64 {
        self.entries.get(key).copied().unwrap_or(0)
    }

    /// Total degree, aggregates counting m places each and residuals
    /// their recorded degree.
    pub fn degree(&self) -> i64 {
        self.entries
            .iter()
            .map(|(k, &mult)| match k {
                PlaceKey::Affine(_) => mult,
                PlaceKey::AllO0 | PlaceKey::AllOInf => mult * self.m as i64,
                PlaceKey::Residual(d) => mult * *d as i64,
            })
            .sum()
    }

    pub fn scaled(&self, s: i64) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|(k, &v)| (k.clone(), v * s))
            .collect();
        Divisor {
            entries,
            m: self.m,
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, &v) in other.entries.iter() {
            out.insert(k.clone(), v);
        }
        out
    }
}

/// Functions with a closed-form divisor.
#[derive(Debug, Clone)]
pub enum DivisorInput {
    X,
    Y,
    /// x^i y^j extended multiplicatively (j >= 0; i may be negative).
    Monomial { i: i64, j: u64 },
    Xa(CurvePoint),
    YMinusB(CurvePoint),
    F0(CurvePoint),
}

/// The principal divisor of a supported function; the degree-zero
/// assertion runs on every fully or residually known divisor.
pub fn divisor_check(input: &DivisorInput, params: &CurveParams) -> Result<Divisor, CurveError> {
    let div = match input {
        DivisorInput::X => divisor_of_x(params),
        DivisorInput::Y => divisor_of_y(params)?,
        DivisorInput::Monomial { i, j } => {
            let dx = divisor_of_x(params).scaled(*i);
            let dy = divisor_of_y(params)?.scaled(*j as i64);
            dx.plus(&dy)
        }
        DivisorInput::Xa(point) => divisor_of_xa(point, params)?,
        DivisorInput::YMinusB(point) => {
            let (_, b) = point.coords().ok_or(CurveError::UnsupportedFunction(
                "y - b needs an affine point".into(),
            ))?;
            if b.is_zero() {
                // y - 0 is just y
                divisor_of_y(params)?
            } else {
                let mut d = Divisor::new(params);
                d.insert(PlaceKey::Affine(point.clone()), 1);
                d.insert(PlaceKey::Residual(2 * params.m() - 1), 1);
                d.insert(PlaceKey::AllOInf, -2);
                d
            }
        }
        DivisorInput::F0(point) => {
            match point.kind() {
                PointKind::Affine { .. } if point.alpha().is_some() => {}
                _ => {
                    return Err(CurveError::UnsupportedFunction(
                        "f_0 needs a point off the special orbit".into(),
                    ))
                }
            }
            let mut d = Divisor::new(params);
            d.insert(PlaceKey::Affine(point.clone()), 2);
            d.insert(PlaceKey::Residual(3 * params.m() - 2), 1);
            d.insert(PlaceKey::AllOInf, -3);
            d
        }
    };
    let deg = div.degree();
    if deg != 0 {
        return Err(CurveError::InternalInconsistency(format!(
            "principal divisor has degree {deg}"
        )));
    }
    Ok(div)
}

fn divisor_of_x(params: &CurveParams) -> Divisor {
    let mut d = Divisor::new(params);
    d.insert(PlaceKey::AllO0, 3);
    d.insert(PlaceKey::AllOInf, -3);
    d
}

fn divisor_of_y(params: &CurveParams) -> Result<Divisor, CurveError> {
    let mut d = Divisor::new(params);
    d.insert(PlaceKey::AllO0, 1);
    for p in super::sample::orbit_points(params)? {
        d.insert(PlaceKey::Affine(p), 1);
    }
    d.insert(PlaceKey::AllOInf, -2);
    Ok(d)
}

fn divisor_of_xa(point: &CurvePoint, params: &CurveParams) -> Result<Divisor, CurveError> {
    let (a, b) = point.coords().ok_or(CurveError::UnsupportedFunction(
        "x_a needs an affine point".into(),
    ))?;
    let mut d = Divisor::new(params);
    let am = a.pow(params.m());
    if am.add(&a.ctx().one()).is_zero() {
        d.insert(PlaceKey::Affine(point.clone()), (params.q() + 1) as i64);
    } else {
        // the q+1 points sharing the x-coordinate: (a, xi b)
        let xi = gf::unity_root_generator(a.ctx(), params.q() + 1)
            .expect("q+1 divides the unit order of every coordinate field");
        let mut cur = b.clone();
        for _ in 0..params.q() + 1 {
            let pt = CurvePoint::affine(params, a.clone(), cur.clone())?;
            d.insert(PlaceKey::Affine(pt), 1);
            cur = cur.mul(&xi);
        }
    }
    d.insert(PlaceKey::AllOInf, -3);
    Ok(d)
}
