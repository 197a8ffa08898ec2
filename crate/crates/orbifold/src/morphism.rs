//! Combinatorial models of maps between varieties and the three morphism
//! categories.
//!
//! A map f: Y -> X is modeled by its pullback coefficients t_{E,D}: the
//! multiplicity of the source prime E in f^*(D). The categories differ in
//! the condition imposed on marked divisors: Q and Z require
//! t·m_Y(E) >= m_X(D), the divisible category requires m_X(D) | t·m_Y(E).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed};

use crate::curve::OrbifoldCurve;
use crate::divisor::{Label, OrbifoldDivisor, Variety};
use crate::error::{Error, Result};
use crate::multiplicity::{ext_lcm, ExtMult, ExtRational};

/// The three morphism categories.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Category {
    Q,
    Z,
    Div,
}

impl Category {
    pub const ALL: [Category; 3] = [Category::Q, Category::Z, Category::Div];

    /// Z and Div are defined on entire (integral-or-infinite) divisors only.
    pub fn requires_entire(self) -> bool {
        !matches!(self, Category::Q)
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Category::Q => "q",
            Category::Z => "z",
            Category::Div => "div",
        };
        write!(f, "{}", s)
    }
}

/// Pullback coefficients of a map f: source -> target. Absent pairs have
/// coefficient 0; stored coefficients are strictly positive rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PullbackTable {
    source: Arc<Variety>,
    target: Arc<Variety>,
    coeff: BTreeMap<(Label, Label), BigRational>,
}

impl PullbackTable {
    pub fn new<E: Into<String>, D: Into<String>>(
        source: Arc<Variety>,
        target: Arc<Variety>,
        coeff: impl IntoIterator<Item = (E, D, BigRational)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (e, d, t) in coeff {
            let e = e.into();
            let d = d.into();
            if !source.has_prime(&e) {
                return Err(Error::UnknownPrime {
                    variety: source.name().to_string(),
                    label: e,
                });
            }
            if !target.has_prime(&d) {
                return Err(Error::UnknownPrime {
                    variety: target.name().to_string(),
                    label: d,
                });
            }
            if !t.is_positive() {
                return Err(Error::InvalidModel(format!(
                    "coefficient {} of ({:?}, {:?}) is not positive",
                    t, e, d
                )));
            }
            if map.insert((e.clone(), d.clone()), t).is_some() {
                return Err(Error::InvalidModel(format!(
                    "pair ({:?}, {:?}) listed twice",
                    e, d
                )));
            }
        }
        Ok(PullbackTable {
            source,
            target,
            coeff: map,
        })
    }

    /// The identity map: coefficient 1 on (D, D) for every prime.
    pub fn identity(variety: Arc<Variety>) -> Self {
        let one = BigRational::from_integer(BigInt::from(1));
        let coeff = variety
            .primes()
            .iter()
            .map(|p| ((p.clone(), p.clone()), one.clone()))
            .collect();
        PullbackTable {
            source: variety.clone(),
            target: variety,
            coeff,
        }
    }

    pub fn source(&self) -> &Arc<Variety> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Variety> {
        &self.target
    }

    pub fn coefficient(&self, e: &str, d: &str) -> Option<&BigRational> {
        self.coeff.get(&(e.to_string(), d.to_string()))
    }

    pub fn entries(
        &self,
    ) -> impl Iterator<Item = (&Label, &Label, &BigRational)> {
        self.coeff.iter().map(|((e, d), t)| (e, d, t))
    }

    pub fn is_empty(&self) -> bool {
        self.coeff.is_empty()
    }
}

/// Outcome of a morphism check with the failing pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismCheck {
    pub holds: bool,
    pub violations: Vec<(Label, Label)>,
}

fn check_divisors_entire(
    cat: Category,
    divisors: &[&OrbifoldDivisor],
) -> Result<()> {
    if !cat.requires_entire() {
        return Ok(());
    }
    for d in divisors {
        if !d.is_entire() {
            return Err(Error::NonIntegralMultiplicity(format!(
                "category {} needs an entire divisor on {}",
                cat,
                d.variety().name()
            )));
        }
    }
    Ok(())
}

fn integral_product(
    m: &ExtMult,
    t: &BigRational,
    e: &str,
    d: &str,
) -> Result<ExtMult> {
    match m.scaled(t) {
        ExtRational::Infinity => Ok(ExtMult::Infinity),
        ExtRational::Finite(r) => {
            if !r.is_integer() {
                return Err(Error::NonIntegralMultiplicity(format!(
                    "product {} at ({:?}, {:?})",
                    r, e, d
                )));
            }
            // Positive and integral, hence >= 1.
            ExtMult::finite(r)
        }
    }
}

/// Check whether f carries (source | Δ_Y) to (target | Δ_X) as a morphism of
/// the given category, reporting every failing pair.
pub fn check_morphism(
    delta_y: &OrbifoldDivisor,
    delta_x: &OrbifoldDivisor,
    f: &PullbackTable,
    cat: Category,
) -> Result<MorphismCheck> {
    if delta_y.variety() != f.source() {
        return Err(Error::VarietyMismatch {
            expected: f.source().name().to_string(),
            found: delta_y.variety().name().to_string(),
        });
    }
    if delta_x.variety() != f.target() {
        return Err(Error::VarietyMismatch {
            expected: f.target().name().to_string(),
            found: delta_x.variety().name().to_string(),
        });
    }
    check_divisors_entire(cat, &[delta_y, delta_x])?;
    let mut violations = Vec::new();
    for (e, d, t) in f.entries() {
        let m_y = delta_y.multiplicity(e);
        let m_x = delta_x.multiplicity(d);
        let ok = match cat {
            Category::Q | Category::Z => {
                m_y.scaled(t) >= ExtRational::from(m_x)
            }
            Category::Div => {
                let product = integral_product(&m_y, t, e, d)?;
                m_x.divides(&product)?
            }
        };
        if !ok {
            violations.push((e.clone(), d.clone()));
        }
    }
    Ok(MorphismCheck {
        holds: violations.is_empty(),
        violations,
    })
}

/// The least divisor on the source making f a morphism of the category:
/// per source prime E, Q takes max{1, sup_D m(D)/t}, Z the ceiling variant,
/// Div the lcm of m(D)/gcd(m(D), t).
pub fn minimal_lift(
    delta_x: &OrbifoldDivisor,
    f: &PullbackTable,
    cat: Category,
) -> Result<OrbifoldDivisor> {
    if delta_x.variety() != f.target() {
        return Err(Error::VarietyMismatch {
            expected: f.target().name().to_string(),
            found: delta_x.variety().name().to_string(),
        });
    }
    check_divisors_entire(cat, &[delta_x])?;
    let mut acc: BTreeMap<Label, Vec<(ExtMult, BigRational)>> = BTreeMap::new();
    for (e, d, t) in f.entries() {
        acc.entry(e.clone())
            .or_default()
            .push((delta_x.multiplicity(d), t.clone()));
    }
    let mut lifted: Vec<(Label, ExtMult)> = Vec::new();
    for (e, pairs) in acc {
        let m_e = match cat {
            Category::Q => {
                let sup = pairs
                    .iter()
                    .map(|(m, t)| m.scaled(&t.recip()))
                    .max()
                    .expect("source prime has at least one coefficient");
                sup.clamped_mult()
            }
            Category::Z => pairs
                .iter()
                .map(|(m, t)| m.scaled(&t.recip()).ceil_clamped_mult())
                .max()
                .expect("source prime has at least one coefficient"),
            Category::Div => {
                let mut terms = Vec::with_capacity(pairs.len());
                for (m, t) in &pairs {
                    if !t.is_integer() {
                        return Err(Error::NonIntegralCoefficient(format!(
                            "{} at source prime {:?}",
                            t, e
                        )));
                    }
                    terms.push(match m.as_integer() {
                        Some(n) => {
                            let g = n.gcd(&t.to_integer());
                            ExtMult::finite(BigRational::from_integer(n / g))?
                        }
                        None => ExtMult::Infinity,
                    });
                }
                ext_lcm(&terms)?
            }
        };
        lifted.push((e, m_e));
    }
    OrbifoldDivisor::new(f.source().clone(), lifted)
}

/// The table of f∘g from the tables of g: Z -> Y and f: Y -> X; the
/// coefficient of (F, D) is the sum over E of g(F,E)·f(E,D).
pub fn compose_tables(
    g: &PullbackTable,
    f: &PullbackTable,
) -> Result<PullbackTable> {
    if g.target() != f.source() {
        return Err(Error::VarietyMismatch {
            expected: f.source().name().to_string(),
            found: g.target().name().to_string(),
        });
    }
    let mut coeff: BTreeMap<(Label, Label), BigRational> = BTreeMap::new();
    for (fz, e, tg) in g.entries() {
        for (e2, d, tf) in f.entries() {
            if e == e2 {
                let term = tg * tf;
                coeff
                    .entry((fz.clone(), d.clone()))
                    .and_modify(|c| *c += &term)
                    .or_insert(term);
            }
        }
    }
    Ok(PullbackTable {
        source: g.source().clone(),
        target: f.target().clone(),
        coeff,
    })
}

/// Contact data of a curve mapped into a variety: per curve point, the
/// contacted target primes with their positive integral contact orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveContactData {
    genus: u32,
    contacts: BTreeMap<Label, BTreeMap<Label, u64>>,
}

impl CurveContactData {
    pub fn new<P, D, I>(
        genus: u32,
        contacts: impl IntoIterator<Item = (P, I)>,
    ) -> Result<Self>
    where
        P: Into<String>,
        D: Into<String>,
        I: IntoIterator<Item = (D, u64)>,
    {
        let mut map = BTreeMap::new();
        for (point, with) in contacts {
            let point = point.into();
            let mut orders = BTreeMap::new();
            for (d, t) in with {
                let d = d.into();
                if t == 0 {
                    return Err(Error::InvalidModel(format!(
                        "contact order 0 at point {:?} with {:?}",
                        point, d
                    )));
                }
                if orders.insert(d.clone(), t).is_some() {
                    return Err(Error::InvalidModel(format!(
                        "contact with {:?} listed twice at point {:?}",
                        d, point
                    )));
                }
            }
            if map.insert(point.clone(), orders).is_some() {
                return Err(Error::InvalidModel(format!(
                    "point {:?} listed twice",
                    point
                )));
            }
        }
        Ok(CurveContactData {
            genus,
            contacts: map,
        })
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn points(
        &self,
    ) -> impl Iterator<Item = (&Label, &BTreeMap<Label, u64>)> {
        self.contacts.iter()
    }
}

/// Pull a divisor back to a curve through its contact data: per point a,
/// Q takes max{1, sup_j m_j/t_j}, Z the ceiling variant, Div the lcm of
/// m_j/gcd(t_j, m_j). Points landing at multiplicity 1 are dropped.
pub fn restrict_to_curve(
    delta_x: &OrbifoldDivisor,
    c: &CurveContactData,
    cat: Category,
) -> Result<OrbifoldCurve> {
    check_divisors_entire(cat, &[delta_x])?;
    let mut points: Vec<(Label, ExtMult)> = Vec::new();
    for (a, with) in c.points() {
        if with.is_empty() {
            continue;
        }
        let mut mults = Vec::with_capacity(with.len());
        for (d, order) in with {
            if !delta_x.variety().has_prime(d) {
                return Err(Error::UnknownPrime {
                    variety: delta_x.variety().name().to_string(),
                    label: d.clone(),
                });
            }
            let t = BigInt::from(*order);
            let m = delta_x.multiplicity(d);
            mults.push(match cat {
                Category::Q | Category::Z => {
                    let ratio = m.scaled(&BigRational::new(
                        BigInt::one(),
                        t.clone(),
                    ));
                    if cat == Category::Q {
                        ratio.clamped_mult()
                    } else {
                        ratio.ceil_clamped_mult()
                    }
                }
                Category::Div => match m.as_integer() {
                    Some(n) => {
                        let g = n.gcd(&t);
                        ExtMult::finite(BigRational::from_integer(n / g))?
                    }
                    None => ExtMult::Infinity,
                },
            });
        }
        let mu = match cat {
            Category::Q | Category::Z => {
                mults.into_iter().max().expect("contact set is nonempty")
            }
            Category::Div => ext_lcm(&mults)?,
        };
        points.push((a.clone(), mu));
    }
    OrbifoldCurve::new(c.genus(), points)
}

/// Genus 0 and negative degree of the restricted curve.
pub fn is_delta_rational(
    delta_x: &OrbifoldDivisor,
    c: &CurveContactData,
    cat: Category,
) -> Result<bool> {
    let curve = restrict_to_curve(delta_x, c, cat)?;
    Ok(c.genus() == 0 && curve.canonical_degree().is_negative())
}

/// Ramification profile of a degree-d covering of curves, with optional
/// orbifold multiplicities on both sides. Points absent from `fibers` are
/// unramified (d preimages of order 1); multiplicities default to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringRamification {
    degree: u64,
    source_genus: u32,
    target_genus: u32,
    fibers: BTreeMap<Label, Vec<u64>>,
    source_mults: Option<BTreeMap<Label, Vec<ExtMult>>>,
    target_mults: Option<BTreeMap<Label, ExtMult>>,
}

impl CoveringRamification {
    pub fn new<B: Into<String>>(
        degree: u64,
        source_genus: u32,
        target_genus: u32,
        fibers: impl IntoIterator<Item = (B, Vec<u64>)>,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidModel(
                "covering degree must be positive".into(),
            ));
        }
        let mut map = BTreeMap::new();
        for (b, orders) in fibers {
            let b = b.into();
            if orders.contains(&0) {
                return Err(Error::InvalidModel(format!(
                    "ramification order 0 over {:?}",
                    b
                )));
            }
            let sum: u64 = orders.iter().sum();
            if sum != degree {
                return Err(Error::FiberSumMismatch {
                    point: b,
                    sum,
                    degree,
                });
            }
            if map.insert(b.clone(), orders).is_some() {
                return Err(Error::InvalidModel(format!(
                    "fiber over {:?} listed twice",
                    b
                )));
            }
        }
        Ok(CoveringRamification {
            degree,
            source_genus,
            target_genus,
            fibers: map,
            source_mults: None,
            target_mults: None,
        })
    }

    /// Attach source-side multiplicities: per target point, one multiplicity
    /// per fiber entry (in fiber order); for points without listed fibers,
    /// one per unramified preimage (degree many).
    pub fn with_source_multiplicities<B: Into<String>>(
        mut self,
        mults: impl IntoIterator<Item = (B, Vec<ExtMult>)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (b, ms) in mults {
            let b = b.into();
            let expected = self
                .fibers
                .get(&b)
                .map(Vec::len)
                .unwrap_or(self.degree as usize);
            if ms.len() != expected {
                return Err(Error::InvalidModel(format!(
                    "fiber over {:?} has {} points but {} multiplicities",
                    b,
                    expected,
                    ms.len()
                )));
            }
            map.insert(b, ms);
        }
        self.source_mults = Some(map);
        Ok(self)
    }

    pub fn with_target_multiplicities<B: Into<String>>(
        mut self,
        mults: impl IntoIterator<Item = (B, ExtMult)>,
    ) -> Self {
        self.target_mults =
            Some(mults.into_iter().map(|(b, m)| (b.into(), m)).collect());
        self
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn source_genus(&self) -> u32 {
        self.source_genus
    }

    pub fn target_genus(&self) -> u32 {
        self.target_genus
    }

    pub fn fibers(&self) -> impl Iterator<Item = (&Label, &Vec<u64>)> {
        self.fibers.iter()
    }

    fn marked_points(&self) -> BTreeSet<Label> {
        let mut points: BTreeSet<Label> = self.fibers.keys().cloned().collect();
        if let Some(sm) = &self.source_mults {
            points.extend(sm.keys().cloned());
        }
        if let Some(tm) = &self.target_mults {
            points.extend(tm.keys().cloned());
        }
        points
    }

    fn fiber_profile(&self, b: &str) -> Vec<u64> {
        self.fibers
            .get(b)
            .cloned()
            .unwrap_or_else(|| vec![1; self.degree as usize])
    }

    /// The marked target curve, when target multiplicities are attached.
    pub fn target_curve(&self) -> Result<OrbifoldCurve> {
        let tm = self
            .target_mults
            .as_ref()
            .ok_or(Error::MissingMultiplicity("target multiplicities"))?;
        OrbifoldCurve::new(
            self.target_genus,
            tm.iter().map(|(b, m)| (b.clone(), m.clone())),
        )
    }

    /// The marked source curve, when source multiplicities are attached.
    /// Point labels are fiber-indexed as `b#i`.
    pub fn source_curve(&self) -> Result<OrbifoldCurve> {
        let sm = self
            .source_mults
            .as_ref()
            .ok_or(Error::MissingMultiplicity("source multiplicities"))?;
        let points = sm.iter().flat_map(|(b, ms)| {
            ms.iter()
                .enumerate()
                .map(move |(i, m)| (format!("{}#{}", b, i + 1), m.clone()))
        });
        OrbifoldCurve::new(self.source_genus, points)
    }
}

/// Exact-ramification (etale) test: e(b')·m'(b') = m(b) for every source
/// point b' over every marked target point b.
pub fn check_etale_covering(r: &CoveringRamification) -> Result<bool> {
    let sm = r
        .source_mults
        .as_ref()
        .ok_or(Error::MissingMultiplicity("source multiplicities"))?;
    let tm = r
        .target_mults
        .as_ref()
        .ok_or(Error::MissingMultiplicity("target multiplicities"))?;
    for b in r.marked_points() {
        let m_b = tm.get(&b).cloned().unwrap_or_else(ExtMult::one);
        let profile = r.fiber_profile(&b);
        let default_sources = vec![ExtMult::one(); profile.len()];
        let sources = sm.get(&b).unwrap_or(&default_sources);
        for (e, m_src) in profile.iter().zip(sources) {
            let product =
                m_src.scaled(&BigRational::from_integer(BigInt::from(*e)));
            if product != ExtRational::from(m_b.clone()) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The Riemann-Hurwitz identity and its two lower bounds, all scaled by
/// 1/d: lhs = 2(g'-1)/d, identity_rhs = 2(g-1) + Σ_b (1 - #fiber_b/d),
/// bound_min and bound_gcd replace #fiber_b/d by 1/min e and 1/gcd e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RiemannHurwitz {
    pub lhs: BigRational,
    pub identity_rhs: BigRational,
    pub bound_min: BigRational,
    pub bound_gcd: BigRational,
    pub identity_holds: bool,
}

pub fn riemann_hurwitz(r: &CoveringRamification) -> RiemannHurwitz {
    let d = BigRational::from_integer(BigInt::from(r.degree));
    let two = |g: u32| {
        BigRational::from_integer(BigInt::from(2 * i64::from(g) - 2))
    };
    let lhs = two(r.source_genus) / &d;
    let base = two(r.target_genus);
    let one = BigRational::from_integer(BigInt::from(1));
    let mut identity_rhs = base.clone();
    let mut bound_min = base.clone();
    let mut bound_gcd = base;
    for (_, orders) in r.fibers() {
        let count = BigRational::from_integer(BigInt::from(orders.len()));
        identity_rhs += &one - count / &d;
        let min = orders.iter().min().expect("fiber is nonempty");
        let gcd = orders.iter().fold(0u64, |a, &e| a.gcd(&e));
        bound_min += &one
            - BigRational::new(BigInt::one(), BigInt::from(*min));
        bound_gcd +=
            &one - BigRational::new(BigInt::one(), BigInt::from(gcd));
    }
    let identity_holds = lhs == identity_rhs;
    RiemannHurwitz {
        lhs,
        identity_rhs,
        bound_min,
        bound_gcd,
        identity_holds,
    }
}
