//! Orbifold curves: a genus together with marked points carrying
//! multiplicities, and the degree-driven classification.
//!
//! Positions of marked points never matter; every invariant here depends
//! only on the genus and the multiset of multiplicities.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Signed, Zero};

use crate::divisor::Label;
use crate::error::{Error, Result};
use crate::multiplicity::ExtMult;

/// Trichotomy by the sign of the canonical degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveClass {
    Rational,
    Elliptic,
    GeneralType,
}

impl std::fmt::Display for CurveClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CurveClass::Rational => "rational",
            CurveClass::Elliptic => "elliptic",
            CurveClass::GeneralType => "general-type",
        };
        write!(f, "{}", s)
    }
}

/// A curve of some genus with finitely many marked points. Points with
/// multiplicity 1 are unmarked and normalized away.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldCurve {
    genus: u32,
    points: BTreeMap<Label, ExtMult>,
}

impl OrbifoldCurve {
    pub fn new(
        genus: u32,
        points: impl IntoIterator<Item = (impl Into<String>, ExtMult)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (label, m) in points {
            let label = label.into();
            if m.is_one() {
                continue;
            }
            if map.insert(label.clone(), m).is_some() {
                return Err(Error::InvalidModel(format!(
                    "point {:?} listed twice",
                    label
                )));
            }
        }
        Ok(OrbifoldCurve {
            genus,
            points: map,
        })
    }

    /// Curve with anonymous marked points labeled p1, p2, ...
    pub fn from_multiplicities(
        genus: u32,
        mults: impl IntoIterator<Item = ExtMult>,
    ) -> Self {
        let points = mults
            .into_iter()
            .enumerate()
            .map(|(i, m)| (format!("p{}", i + 1), m));
        OrbifoldCurve::new(genus, points).expect("generated labels are unique")
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn points(&self) -> impl Iterator<Item = (&Label, &ExtMult)> {
        self.points.iter()
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// The multiplicity at a label; unmarked points carry 1.
    pub fn multiplicity(&self, label: &str) -> ExtMult {
        self.points
            .get(label)
            .cloned()
            .unwrap_or_else(ExtMult::one)
    }

    /// Multiplicities in ascending order, infinities last.
    pub fn sorted_multiplicities(&self) -> Vec<ExtMult> {
        let mut v: Vec<ExtMult> = self.points.values().cloned().collect();
        v.sort();
        v
    }

    /// All multiplicities integral or infinite.
    pub fn is_entire(&self) -> bool {
        self.points.values().all(ExtMult::is_integral)
    }

    fn check_entire(&self) -> Result<()> {
        for (label, m) in &self.points {
            if !m.is_integral() {
                return Err(Error::NonIntegralMultiplicity(format!(
                    "{} at {:?}",
                    m, label
                )));
            }
        }
        Ok(())
    }

    /// 2*genus - 2 + sum of coefficients of the marked points.
    pub fn canonical_degree(&self) -> BigRational {
        let mut total = BigRational::from_integer(BigInt::from(
            2 * i64::from(self.genus) - 2,
        ));
        for m in self.points.values() {
            total += m.coefficient();
        }
        total
    }

    pub fn classify(&self) -> CurveClass {
        let deg = self.canonical_degree();
        if deg.is_negative() {
            // 2g - 2 >= 0 for g >= 1 and coefficients are nonnegative.
            debug_assert_eq!(self.genus, 0);
            CurveClass::Rational
        } else if deg.is_zero() {
            CurveClass::Elliptic
        } else {
            CurveClass::GeneralType
        }
    }

    /// Canonical degree at most 0.
    pub fn is_special(&self) -> bool {
        !self.canonical_degree().is_positive()
    }

    /// Membership in the closed list of genus-0 integral-or-infinite
    /// multiplicity multisets with negative degree: at most two points
    /// except (inf, inf), or one of the triples (2,2,m) with m finite,
    /// (2,3,3), (2,3,4), (2,3,5).
    pub fn is_integer_rational_list(&self) -> Result<bool> {
        if self.genus != 0 {
            return Err(Error::GenusNotZero(self.genus));
        }
        self.check_entire()?;
        let mults = self.sorted_multiplicities();
        Ok(match mults.len() {
            0 | 1 => true,
            2 => !(mults[0].is_infinite() && mults[1].is_infinite()),
            3 => {
                let ints: Vec<Option<BigInt>> =
                    mults.iter().map(ExtMult::as_integer).collect();
                match (&ints[0], &ints[1], &ints[2]) {
                    (Some(a), Some(b), Some(_)) => {
                        let (a, b) = (u64::try_from(a), u64::try_from(b));
                        match (a, b) {
                            (Ok(2), Ok(2)) => true,
                            (Ok(2), Ok(3)) => {
                                let c = ints[2].as_ref().unwrap();
                                (3..=5).any(|k| *c == BigInt::from(k))
                            }
                            _ => false,
                        }
                    }
                    _ => false,
                }
            }
            _ => false,
        })
    }

    /// Finiteness of the orbifold fundamental group. Infinite
    /// multiplicities are punctures: their loops satisfy no power
    /// relation.
    pub fn is_pi1_finite(&self) -> Result<bool> {
        self.check_entire()?;
        if self.genus >= 1 {
            // The abelianization surjects onto Z^{2g}.
            return Ok(false);
        }
        let punctures = self
            .points
            .values()
            .filter(|m| m.is_infinite())
            .count();
        let finite_points = self.points.len() - punctures;
        Ok(match punctures {
            // One puncture frees one generator: the group is trivial or
            // cyclic when at most one power relation remains.
            1 => finite_points <= 1,
            0 => {
                if finite_points <= 2 {
                    // Empty, cyclic, or the quotient Z_gcd(m, m').
                    true
                } else if finite_points == 3 {
                    let curve = OrbifoldCurve {
                        genus: 0,
                        points: self.points.clone(),
                    };
                    curve.is_integer_rational_list()?
                } else {
                    false
                }
            }
            _ => false,
        })
    }
}
