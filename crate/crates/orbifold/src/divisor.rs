//! Orbifold divisors over abstract varieties with named prime divisors.
//!
//! A divisor stores only multiplicities strictly greater than 1; every other
//! prime of the variety implicitly carries multiplicity 1. Degree data, when
//! present, is the only geometry the module knows: a canonical degree for the
//! variety and a positive degree per prime.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Signed;

use crate::error::{Error, Result};
use crate::multiplicity::ExtMult;

/// A prime-divisor or point label.
pub type Label = String;

/// Degree pairing on a variety: the degree of the canonical divisor and the
/// degree of each declared prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeData {
    pub canonical: BigRational,
    pub prime_degrees: BTreeMap<Label, BigRational>,
}

/// An abstract variety: a name, a dimension, and the finite set of prime
/// divisors in play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Variety {
    name: String,
    dim: u32,
    primes: Vec<Label>,
    degree_data: Option<DegreeData>,
}

impl Variety {
    pub fn new(
        name: impl Into<String>,
        dim: u32,
        primes: impl IntoIterator<Item = impl Into<String>>,
    ) -> Result<Self> {
        let name = name.into();
        let primes: Vec<Label> = primes.into_iter().map(Into::into).collect();
        let mut seen = std::collections::BTreeSet::new();
        for p in &primes {
            if !seen.insert(p) {
                return Err(Error::InvalidModel(format!(
                    "duplicate prime {:?} on variety {}",
                    p, name
                )));
            }
        }
        Ok(Variety {
            name,
            dim,
            primes,
            degree_data: None,
        })
    }

    /// Attach degree data; every declared prime must receive a positive
    /// degree.
    pub fn with_degree_data(
        mut self,
        canonical: BigRational,
        prime_degrees: impl IntoIterator<Item = (impl Into<String>, BigRational)>,
    ) -> Result<Self> {
        let prime_degrees: BTreeMap<Label, BigRational> = prime_degrees
            .into_iter()
            .map(|(k, v)| (k.into(), v))
            .collect();
        for p in &self.primes {
            match prime_degrees.get(p) {
                None => {
                    return Err(Error::InvalidModel(format!(
                        "prime {:?} on variety {} has no degree",
                        p, self.name
                    )))
                }
                Some(d) if !d.is_positive() => {
                    return Err(Error::InvalidModel(format!(
                        "prime {:?} on variety {} has non-positive degree {}",
                        p, self.name, d
                    )))
                }
                Some(_) => {}
            }
        }
        for label in prime_degrees.keys() {
            if !self.has_prime(label) {
                return Err(Error::UnknownPrime {
                    variety: self.name.clone(),
                    label: label.clone(),
                });
            }
        }
        self.degree_data = Some(DegreeData {
            canonical,
            prime_degrees,
        });
        Ok(self)
    }

    /// The projective plane with the given lines as primes: dimension 2,
    /// canonical degree -3, every line of degree 1.
    pub fn plane_with_lines(lines: &[&str]) -> Arc<Variety> {
        let one = BigRational::from_integer(BigInt::from(1));
        let v = Variety::new("P2", 2, lines.iter().copied())
            .expect("line labels are distinct")
            .with_degree_data(
                BigRational::from_integer(BigInt::from(-3)),
                lines.iter().map(|l| (*l, one.clone())),
            )
            .expect("every line has degree 1");
        Arc::new(v)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn primes(&self) -> &[Label] {
        &self.primes
    }

    pub fn has_prime(&self, label: &str) -> bool {
        self.primes.iter().any(|p| p == label)
    }

    pub fn degree_data(&self) -> Option<&DegreeData> {
        self.degree_data.as_ref()
    }
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

/// A finitely supported assignment of multiplicities to the primes of a
/// variety. Entries equal to 1 are normalized away, so the key set is the
/// support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldDivisor {
    variety: Arc<Variety>,
    mult: BTreeMap<Label, ExtMult>,
}

impl OrbifoldDivisor {
    /// The zero orbifold divisor (all multiplicities 1).
    pub fn trivial(variety: Arc<Variety>) -> Self {
        OrbifoldDivisor {
            variety,
            mult: BTreeMap::new(),
        }
    }

    pub fn new(
        variety: Arc<Variety>,
        mult: impl IntoIterator<Item = (impl Into<String>, ExtMult)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (label, m) in mult {
            let label = label.into();
            if !variety.has_prime(&label) {
                return Err(Error::UnknownPrime {
                    variety: variety.name().to_string(),
                    label,
                });
            }
            if m.is_one() {
                continue;
            }
            if map.insert(label.clone(), m).is_some() {
                return Err(Error::InvalidModel(format!(
                    "prime {:?} listed twice",
                    label
                )));
            }
        }
        Ok(OrbifoldDivisor {
            variety,
            mult: map,
        })
    }

    pub fn variety(&self) -> &Arc<Variety> {
        &self.variety
    }

    /// The multiplicity at a label; primes outside the support carry 1.
    pub fn multiplicity(&self, label: &str) -> ExtMult {
        self.mult.get(label).cloned().unwrap_or_else(ExtMult::one)
    }

    pub fn support(&self) -> impl Iterator<Item = &Label> {
        self.mult.keys()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Label, &ExtMult)> {
        self.mult.iter()
    }

    pub fn is_trivial(&self) -> bool {
        self.mult.is_empty()
    }

    /// All multiplicities integral or infinite.
    pub fn is_entire(&self) -> bool {
        self.mult.values().all(ExtMult::is_integral)
    }

    /// All multiplicities finite.
    pub fn is_finite(&self) -> bool {
        !self.mult.values().any(ExtMult::is_infinite)
    }

    fn check_same_variety(&self, other: &OrbifoldDivisor) -> Result<()> {
        if self.variety == other.variety {
            Ok(())
        } else {
            Err(Error::VarietyMismatch {
                expected: self.variety.name().to_string(),
                found: other.variety.name().to_string(),
            })
        }
    }

    fn check_entire(&self) -> Result<()> {
        for (label, m) in &self.mult {
            if !m.is_integral() {
                return Err(Error::NonIntegralMultiplicity(format!(
                    "{} at {:?}",
                    m, label
                )));
            }
        }
        Ok(())
    }

    /// Pointwise order: true iff every multiplicity of `self` is at most the
    /// corresponding multiplicity of `other`.
    pub fn leq(&self, other: &OrbifoldDivisor) -> Result<bool> {
        self.check_same_variety(other)?;
        Ok(self
            .mult
            .iter()
            .all(|(label, m)| *m <= other.multiplicity(label)))
    }

    /// Pointwise divisibility; both divisors must be entire.
    pub fn divides(&self, other: &OrbifoldDivisor) -> Result<bool> {
        self.check_same_variety(other)?;
        self.check_entire()?;
        other.check_entire()?;
        for (label, m) in &self.mult {
            if !m.divides(&other.multiplicity(label))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Pointwise maximum of multiplicities.
    pub fn sup(&self, other: &OrbifoldDivisor) -> Result<OrbifoldDivisor> {
        self.check_same_variety(other)?;
        let mut map = self.mult.clone();
        for (label, m) in &other.mult {
            map.entry(label.clone())
                .and_modify(|cur| {
                    if *m > *cur {
                        *cur = m.clone();
                    }
                })
                .or_insert_with(|| m.clone());
        }
        Ok(OrbifoldDivisor {
            variety: self.variety.clone(),
            mult: map,
        })
    }

    /// Pointwise minimum of multiplicities. Primes outside either support
    /// drop to 1 and disappear.
    pub fn inf(&self, other: &OrbifoldDivisor) -> Result<OrbifoldDivisor> {
        self.check_same_variety(other)?;
        let mut map = BTreeMap::new();
        for (label, m) in &self.mult {
            if let Some(o) = other.mult.get(label) {
                map.insert(label.clone(), m.clone().min(o.clone()));
            }
        }
        Ok(OrbifoldDivisor {
            variety: self.variety.clone(),
            mult: map,
        })
    }

    /// deg(K_X) + sum over the support of coefficient(m(D)) * deg(D).
    pub fn canonical_degree(&self) -> Result<BigRational> {
        let data = self.variety.degree_data().ok_or_else(|| {
            Error::MissingDegreeData(self.variety.name().to_string())
        })?;
        let mut total = data.canonical.clone();
        for (label, m) in &self.mult {
            let deg = data
                .prime_degrees
                .get(label)
                .expect("degree data covers every prime");
            total += m.coefficient() * deg;
        }
        Ok(total)
    }

    /// Degree model of ampleness of the anticanonical divisor.
    pub fn is_fano(&self) -> Result<bool> {
        Ok(self.canonical_degree()?.is_negative())
    }
}

/// Naive parameter count for degree-d rational plane curves with contact
/// orders divisible by the multiplicities of a line arrangement:
/// (3d - 1) - d * sum of coefficients, which equals
/// -canonical_degree * d - 1. Requires degree data with all support primes
/// of degree 1 and finite multiplicities.
pub fn plane_rational_expected_dim(
    delta: &OrbifoldDivisor,
    d: u64,
) -> Result<BigRational> {
    let data = delta.variety().degree_data().ok_or_else(|| {
        Error::MissingDegreeData(delta.variety().name().to_string())
    })?;
    let one = BigRational::from_integer(BigInt::from(1));
    let mut coeff_sum = BigRational::from_integer(BigInt::from(0));
    for (label, m) in delta.entries() {
        if data.prime_degrees[label] != one {
            return Err(Error::InvalidModel(format!(
                "prime {:?} is not a line (degree != 1)",
                label
            )));
        }
        if m.is_infinite() {
            return Err(Error::InfiniteMultiplicity(label.clone()));
        }
        coeff_sum += m.coefficient();
    }
    let d = BigRational::from_integer(BigInt::from(d));
    Ok(BigRational::from_integer(BigInt::from(3)) * &d
        - BigRational::from_integer(BigInt::from(1))
        - d * coeff_sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiplicity::ExtMult;

    fn m(n: u64) -> ExtMult {
        ExtMult::integer(n).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn lines4() -> Arc<Variety> {
        Variety::plane_with_lines(&["D1", "D2", "D3", "D4"])
    }

    fn lines_div(mults: [u64; 4]) -> OrbifoldDivisor {
        let v = lines4();
        OrbifoldDivisor::new(
            v,
            [
                ("D1", m(mults[0])),
                ("D2", m(mults[1])),
                ("D3", m(mults[2])),
                ("D4", m(mults[3])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn unit_multiplicities_are_normalized_away() {
        let v = lines4();
        let d = OrbifoldDivisor::new(v, [("D1", m(1)), ("D2", m(5))]).unwrap();
        assert_eq!(d.support().collect::<Vec<_>>(), vec!["D2"]);
        assert_eq!(d.multiplicity("D1"), m(1));
    }

    #[test]
    fn unknown_primes_are_rejected() {
        let v = lines4();
        let err = OrbifoldDivisor::new(v, [("E", m(2))]).unwrap_err();
        assert!(matches!(err, Error::UnknownPrime { .. }));
    }

    #[test]
    fn trivial_divisor_is_minimum() {
        let v = lines4();
        let zero = OrbifoldDivisor::trivial(v.clone());
        let d = lines_div([2, 3, 5, 7]);
        assert!(zero.leq(&d).unwrap());
        assert!(!d.leq(&zero).unwrap());
    }

    #[test]
    fn incomparable_divisors() {
        let v = lines4();
        let a = OrbifoldDivisor::new(v.clone(), [("D1", m(2))]).unwrap();
        let b = OrbifoldDivisor::new(v, [("D2", m(3))]).unwrap();
        assert!(!a.leq(&b).unwrap());
        assert!(!b.leq(&a).unwrap());
    }

    #[test]
    fn divisibility_is_pointwise() {
        let v = lines4();
        let a = OrbifoldDivisor::new(v.clone(), [("D1", m(2))]).unwrap();
        let b = OrbifoldDivisor::new(v.clone(), [("D1", m(6))]).unwrap();
        let c = OrbifoldDivisor::new(v.clone(), [("D1", m(4))]).unwrap();
        let inf = OrbifoldDivisor::new(v, [("D1", ExtMult::Infinity)]).unwrap();
        assert!(a.divides(&b).unwrap());
        assert!(!c.divides(&b).unwrap());
        assert!(a.divides(&inf).unwrap());
        assert!(!inf.divides(&b).unwrap());
    }

    #[test]
    fn sup_of_disjoint_supports_is_the_union() {
        let v = Arc::new(
            Variety::new("X'", 2, ["A'", "B'", "C'", "E", "F", "G"]).unwrap(),
        );
        let log_exc = OrbifoldDivisor::new(
            v.clone(),
            [("E", ExtMult::Infinity), ("F", ExtMult::Infinity), ("G", ExtMult::Infinity)],
        )
        .unwrap();
        let log_lines = OrbifoldDivisor::new(
            v.clone(),
            [("A'", ExtMult::Infinity), ("B'", ExtMult::Infinity), ("C'", ExtMult::Infinity)],
        )
        .unwrap();
        let sup = log_exc.sup(&log_lines).unwrap();
        assert_eq!(
            sup.support().collect::<Vec<_>>(),
            vec!["A'", "B'", "C'", "E", "F", "G"]
        );
        let inf = log_exc.inf(&log_lines).unwrap();
        assert!(inf.is_trivial());
        assert_eq!(log_exc.sup(&log_exc).unwrap(), log_exc);
    }

    #[test]
    fn fano_degree_of_the_3_3_5_7_line_arrangement() {
        let d = lines_div([3, 3, 5, 7]);
        assert_eq!(d.canonical_degree().unwrap(), q(-1, 105));
        assert!(d.is_fano().unwrap());
    }

    #[test]
    fn fano_degree_of_the_2_3_7_41_line_arrangement() {
        let d = lines_div([2, 3, 7, 41]);
        assert_eq!(d.canonical_degree().unwrap(), q(-1, 1722));
    }

    #[test]
    fn bare_plane_has_canonical_degree_minus_three() {
        let v = lines4();
        let zero = OrbifoldDivisor::trivial(v);
        assert_eq!(zero.canonical_degree().unwrap(), q(-3, 1));
    }

    #[test]
    fn three_line_degree_formula() {
        let v = Variety::plane_with_lines(&["A", "B", "C"]);
        let d = OrbifoldDivisor::new(v, [("A", m(2)), ("B", m(3)), ("C", m(9))])
            .unwrap();
        // -(1/a + 1/b + 1/c)
        assert_eq!(
            d.canonical_degree().unwrap(),
            -(q(1, 2) + q(1, 3) + q(1, 9))
        );
    }

    #[test]
    fn degree_requires_degree_data() {
        let v = Arc::new(Variety::new("Y", 2, ["D"]).unwrap());
        let d = OrbifoldDivisor::trivial(v);
        assert_eq!(
            d.canonical_degree().unwrap_err(),
            Error::MissingDegreeData("Y".into())
        );
    }

    #[test]
    fn expected_dim_of_the_3_3_5_7_pencil() {
        let d = lines_div([3, 3, 5, 7]);
        assert_eq!(plane_rational_expected_dim(&d, 105).unwrap(), q(0, 1));
        assert_eq!(plane_rational_expected_dim(&d, 210).unwrap(), q(1, 1));
    }

    #[test]
    fn expected_dim_of_lines_through_two_points() {
        let v = lines4();
        let zero = OrbifoldDivisor::trivial(v);
        assert_eq!(plane_rational_expected_dim(&zero, 1).unwrap(), q(2, 1));
    }

    #[test]
    fn expected_dim_rejects_infinite_multiplicities() {
        let v = lines4();
        let d = OrbifoldDivisor::new(v, [("D1", ExtMult::Infinity)]).unwrap();
        assert!(matches!(
            plane_rational_expected_dim(&d, 3),
            Err(Error::InfiniteMultiplicity(_))
        ));
    }
}
