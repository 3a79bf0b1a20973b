//! Exact-arithmetic toolkit for the maximal curve y^{q+1} + x^{2m} + x^m = 0
//! over F_{q^2} (q = 2 mod 3, m = (q+1)/3): Weierstrass semigroups and gap
//! sets at every point, the point census, the explicit automorphism group,
//! and an independent canonical-space oracle that cross-checks every
//! closed-form result.

pub mod gf;
pub mod curve;
pub mod numsg;
pub mod oracle;
pub mod series;

pub mod par;
