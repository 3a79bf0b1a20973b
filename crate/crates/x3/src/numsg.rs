//! Numerical semigroup algebra: generators <-> gaps, genus, conductor,
//! multiplicity, telescopic genus and symmetry.
//!
//! The canonical representation is the sorted gap list; membership above
//! the conductor is implicit. All semigroups handled here have at most a
//! few hundred gaps, so dense sieves are the right tool.

use std::fmt;

use serde::Serialize;

use crate::gf::arith::gcd_u64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NumsgError {
    /// gcd of the generators exceeds 1: infinitely many gaps.
    InfiniteGaps,
    /// Complement of the gap list is not closed under addition.
    NotASemigroup { witness: (u64, u64) },
    NotTelescopic,
}

impl fmt::Display for NumsgError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NumsgError::InfiniteGaps => write!(f, "generators have gcd > 1"),
            NumsgError::NotASemigroup { witness: (x, y) } => {
                write!(f, "members {x} and {y} sum to a gap")
            }
            NumsgError::NotTelescopic => write!(f, "sequence is not telescopic"),
        }
    }
}

impl std::error::Error for NumsgError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    gaps: Vec<u64>,
    gens: Vec<u64>,
    genus: u64,
    conductor: u64,
    multiplicity: u64,
}

/// JSON rendering in the wire layout used by the CLI.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SemigroupJson {
    pub gaps: Vec<u64>,
    pub generators: Vec<u64>,
    pub genus: u64,
    pub conductor: u64,
    pub multiplicity: u64,
    pub symmetric: bool,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens` through an additive sieve.
    /// The sieve bound min*max is a crude Frobenius bound; stability over
    /// one further window of length max(gens) is asserted.
    pub fn from_generators(gens: &[u64]) -> Result<Self, NumsgError> {
        let mut gens: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
        gens.sort_unstable();
        gens.dedup();
        assert!(!gens.is_empty(), "empty generator list");
        let g = gens.iter().fold(0u64, |acc, &x| gcd_u64(acc, x));
        if g != 1 {
            return Err(NumsgError::InfiniteGaps);
        }
        let lo = gens[0];
        let hi = *gens.last().unwrap();
        let bound = (lo * hi) as usize;
        let window = hi as usize;
        let mut member = vec![false; bound + window + 1];
        member[0] = true;
        for n in 1..member.len() {
            member[n] = gens
                .iter()
                .any(|&g| n >= g as usize && member[n - g as usize]);
        }
        // stabilisation: the window past the bound must be gap-free
        assert!(
            member[bound + 1..].iter().all(|&m| m),
            "sieve bound too small for generators {gens:?}"
        );
        let gaps: Vec<u64> = (1..=bound as u64)
            .filter(|&n| !member[n as usize])
            .collect();
        Ok(Self::from_parts(gaps))
    }

    /// Builds the semigroup whose gap set is exactly `gaps`, verifying
    /// additive closure of the complement.
    pub fn from_gaps(gaps: &[u64]) -> Result<Self, NumsgError> {
        let mut gaps: Vec<u64> = gaps.to_vec();
        gaps.sort_unstable();
        gaps.dedup();
        assert!(gaps.iter().all(|&g| g > 0), "0 can never be a gap");
        let top = gaps.last().copied().unwrap_or(0);
        let is_gap = |n: u64| gaps.binary_search(&n).is_ok();
        for &g in &gaps {
            for x in 1..=g / 2 {
                let y = g - x;
                if !is_gap(x) && !is_gap(y) {
                    return Err(NumsgError::NotASemigroup { witness: (x, y) });
                }
            }
        }
        let _ = top;
        Ok(Self::from_parts(gaps))
    }

    fn from_parts(gaps: Vec<u64>) -> Self {
        let genus = gaps.len() as u64;
        let conductor = gaps.last().map(|&g| g + 1).unwrap_or(0);
        let multiplicity = (1..).find(|&n| gaps.binary_search(&n).is_err()).unwrap();
        let mut sg = NumericalSemigroup {
            gaps,
            gens: Vec::new(),
            genus,
            conductor,
            multiplicity,
        };
        sg.gens = sg.minimal_generators();
        sg
    }

    /// Members that are not a sum of two positive members. Every member
    /// at or above conductor + multiplicity splits off a multiplicity, so
    /// only the range below needs inspection.
    fn minimal_generators(&self) -> Vec<u64> {
        let mut gens = Vec::new();
        for n in 1..self.conductor + self.multiplicity {
            if !self.contains(n) {
                continue;
            }
            let decomposable = (self.multiplicity..=n / 2)
                .any(|x| self.contains(x) && self.contains(n - x));
            if !decomposable {
                gens.push(n);
            }
        }
        gens
    }

    pub fn contains(&self, n: u64) -> bool {
        if n >= self.conductor {
            return true;
        }
        n == 0 || self.gaps.binary_search(&n).is_err()
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    /// t is a member iff 2*genus - 1 - t is a gap, for all t in [0, 2g-1].
    pub fn is_symmetric(&self) -> bool {
        if self.genus == 0 {
            return true;
        }
        let top = 2 * self.genus - 1;
        (0..=top).all(|t| self.contains(t) != self.contains(top - t))
    }

    pub fn to_json(&self) -> SemigroupJson {
        SemigroupJson {
            gaps: self.gaps.clone(),
            generators: self.gens.clone(),
            genus: self.genus,
            conductor: self.conductor,
            multiplicity: self.multiplicity,
            symmetric: self.is_symmetric(),
        }
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(","))
    }
}

/// Genus of the semigroup generated by a telescopic triple, via the gcd
/// chain d_1 = a_1, d_i = gcd(d_{i-1}, a_i):
/// (1 + sum_i (d_{i-1}/d_i - 1) a_i) / 2, the i = 1 term contributing -a_1.
pub fn telescopic_genus(seq: (u64, u64, u64)) -> Result<u64, NumsgError> {
    let (a1, a2, a3) = seq;
    assert!(a1 > 0 && a2 > 0 && a3 > 0);
    let d1 = a1;
    let d2 = gcd_u64(d1, a2);
    let d3 = gcd_u64(d2, a3);
    if d3 != 1 {
        return Err(NumsgError::NotTelescopic);
    }
    // telescopic condition: a_i/d_i lies in the semigroup generated by
    // a_1/d_{i-1}, ..., a_{i-1}/d_{i-1}
    if !in_semigroup(a2 / d2, &[a1 / d1]) {
        return Err(NumsgError::NotTelescopic);
    }
    if !in_semigroup(a3 / d3, &[a1 / d2, a2 / d2]) {
        return Err(NumsgError::NotTelescopic);
    }
    let total: i64 = 1 - a1 as i64
        + ((d1 / d2 - 1) * a2) as i64
        + ((d2 / d3 - 1) * a3) as i64;
    assert!(total >= 0 && total % 2 == 0, "telescopic genus must be a nonnegative integer");
    Ok(total as u64 / 2)
}

fn in_semigroup(target: u64, gens: &[u64]) -> bool {
    let mut member = vec![false; target as usize + 1];
    member[0] = true;
    for n in 1..member.len() {
        member[n] = gens
            .iter()
            .any(|&g| g > 0 && n >= g as usize && member[n - g as usize]);
    }
    member[target as usize]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn from_generators_examples() {
        let s = NumericalSemigroup::from_generators(&[2, 3]).unwrap();
        assert_eq!(s.gaps(), &[1]);
        let s = NumericalSemigroup::from_generators(&[3, 5, 6]).unwrap();
        assert_eq!(s.gaps(), &[1, 2, 4, 7]);
        assert_eq!(s.genus(), 4);
        let s = NumericalSemigroup::from_generators(&[10, 11, 12, 18]).unwrap();
        assert_eq!(s.genus(), 19);
        assert_eq!(
            NumericalSemigroup::from_generators(&[2, 4]).unwrap_err(),
            NumsgError::InfiniteGaps
        );
    }

    #[test]
    fn from_gaps_examples() {
        let s = NumericalSemigroup::from_gaps(&[1]).unwrap();
        assert_eq!(s.generators(), &[2, 3]);
        let s = NumericalSemigroup::from_gaps(&[1, 2, 3, 6]).unwrap();
        assert_eq!(s.multiplicity(), 4);
        assert_eq!(s.conductor(), 7);
        let s = NumericalSemigroup::from_gaps(&[1, 2, 4, 7]).unwrap();
        // 6 = 3 + 3, so the minimal generating set drops it
        assert_eq!(s.generators(), &[3, 5]);
        assert_eq!(s, NumericalSemigroup::from_generators(&[3, 5, 6]).unwrap());
        assert_eq!(
            NumericalSemigroup::from_gaps(&[2, 3]).unwrap_err(),
            NumsgError::NotASemigroup { witness: (1, 1) }
        );
    }

    #[test]
    fn telescopic_examples() {
        assert_eq!(telescopic_genus((3, 6, 5)).unwrap(), 4);
        assert_eq!(telescopic_genus((9, 12, 11)).unwrap(), 19);
        assert_eq!(telescopic_genus((15, 18, 17)).unwrap(), 46);
        // (4, 6, 9): d2 = 2, d3 = 1, but 9/1 = 9 not in <4/2, 6/2> = <2, 3>?
        // 9 = 3*3 so that one IS telescopic; use gcd failure instead
        assert_eq!(
            telescopic_genus((2, 4, 6)).unwrap_err(),
            NumsgError::NotTelescopic
        );
    }

    #[test]
    fn symmetry_examples() {
        assert!(NumericalSemigroup::from_generators(&[3, 5, 6])
            .unwrap()
            .is_symmetric());
        assert!(!NumericalSemigroup::from_gaps(&[1, 2, 3, 6])
            .unwrap()
            .is_symmetric());
        assert!(NumericalSemigroup::from_generators(&[2, 3])
            .unwrap()
            .is_symmetric());
    }

    #[test]
    fn genus_formula_for_curve_orbit_semigroups() {
        for q in [5u64, 11, 17, 23, 29] {
            let g = (q * q - q + 4) / 6;
            let s = NumericalSemigroup::from_generators(&[q - 2, q, q + 1]).unwrap();
            assert_eq!(s.genus(), g);
            assert_eq!(telescopic_genus((q - 2, q + 1, q)).unwrap(), g);
        }
    }

    #[test]
    fn json_layout() {
        let s = NumericalSemigroup::from_generators(&[3, 5, 6]).unwrap();
        let j = serde_json::to_string(&s.to_json()).unwrap();
        assert_eq!(
            j,
            r#"{"gaps":[1,2,4,7],"generators":[3,5],"genus":4,"conductor":8,"multiplicity":3,"symmetric":true}"#
        );
    }

    proptest! {
        #[test]
        fn round_trip_generators_gaps(gens in proptest::collection::vec(2u64..40, 1..5)) {
            prop_assume!(gens.iter().fold(0u64, |a, &b| gcd_u64(a, b)) == 1);
            let s = NumericalSemigroup::from_generators(&gens).unwrap();
            let back = NumericalSemigroup::from_gaps(s.gaps()).unwrap();
            prop_assert_eq!(s, back);
        }

        #[test]
        fn members_closed_under_addition(gens in proptest::collection::vec(2u64..30, 1..4)) {
            prop_assume!(gens.iter().fold(0u64, |a, &b| gcd_u64(a, b)) == 1);
            let s = NumericalSemigroup::from_generators(&gens).unwrap();
            let top = s.conductor() + 10;
            for x in 0..top {
                for y in x..top {
                    if s.contains(x) && s.contains(y) {
                        prop_assert!(s.contains(x + y));
                    }
                }
            }
        }
    }
}
