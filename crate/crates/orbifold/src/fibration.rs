//! Fibration models and base orbifolds.
//!
//! A fibration f: Y -> X is modeled by the components of its marked fibers:
//! over a base prime D, the entries record each component E_j of f^*(D)
//! with its coefficient m_j and whether it is f-exceptional (image of
//! codimension at least 2). The base orbifold takes, per base prime, the
//! inf (Q, Z) or gcd (Div) of m_j times the divisor multiplicity over the
//! non-exceptional components.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;

use crate::divisor::{Label, OrbifoldDivisor, Variety};
use crate::error::{Error, Result};
use crate::morphism::{Category, PullbackTable};
use crate::multiplicity::{ext_gcd, ExtMult};

/// One component of a marked fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentEntry {
    pub component: Label,
    pub coefficient: u64,
    pub exceptional: bool,
}

impl ComponentEntry {
    pub fn new(
        component: impl Into<String>,
        coefficient: u64,
        exceptional: bool,
    ) -> Self {
        ComponentEntry {
            component: component.into(),
            coefficient,
            exceptional,
        }
    }
}

/// Fiber decomposition of a fibration over its marked base primes.
/// Unlisted base primes have unmarked fibers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibrationModel {
    total: Arc<Variety>,
    base: Arc<Variety>,
    fibers: BTreeMap<Label, Vec<ComponentEntry>>,
}

impl FibrationModel {
    pub fn new<D: Into<String>>(
        total: Arc<Variety>,
        base: Arc<Variety>,
        fibers: impl IntoIterator<Item = (D, Vec<ComponentEntry>)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Label, Vec<ComponentEntry>> = BTreeMap::new();
        for (d, entries) in fibers {
            let d = d.into();
            if !base.has_prime(&d) {
                return Err(Error::UnknownPrime {
                    variety: base.name().to_string(),
                    label: d,
                });
            }
            if entries.is_empty() {
                return Err(Error::InvalidModel(format!(
                    "fiber over {:?} has no components",
                    d
                )));
            }
            let mut seen = BTreeSet::new();
            for entry in &entries {
                if !total.has_prime(&entry.component) {
                    return Err(Error::UnknownPrime {
                        variety: total.name().to_string(),
                        label: entry.component.clone(),
                    });
                }
                if entry.coefficient == 0 {
                    return Err(Error::InvalidModel(format!(
                        "component {:?} has coefficient 0",
                        entry.component
                    )));
                }
                if !seen.insert(entry.component.clone()) {
                    return Err(Error::InvalidModel(format!(
                        "component {:?} listed twice over {:?}",
                        entry.component, d
                    )));
                }
            }
            if entries.iter().all(|e| e.exceptional) {
                return Err(Error::NoNonExceptionalComponent(d));
            }
            if map.insert(d.clone(), entries).is_some() {
                return Err(Error::InvalidModel(format!(
                    "fiber over {:?} listed twice",
                    d
                )));
            }
        }
        let model = FibrationModel {
            total,
            base,
            fibers: map,
        };
        model.check_global_flags()?;
        Ok(model)
    }

    /// A component's exceptional flag is a property of the component, and a
    /// non-exceptional component maps onto exactly one base prime.
    fn check_global_flags(&self) -> Result<()> {
        let mut flags: BTreeMap<&Label, bool> = BTreeMap::new();
        let mut homes: BTreeMap<&Label, &Label> = BTreeMap::new();
        for (d, entries) in &self.fibers {
            for entry in entries {
                match flags.insert(&entry.component, entry.exceptional) {
                    Some(prev) if prev != entry.exceptional => {
                        return Err(Error::InvalidModel(format!(
                            "component {:?} is both exceptional and not",
                            entry.component
                        )));
                    }
                    _ => {}
                }
                if !entry.exceptional {
                    if let Some(first) = homes.insert(&entry.component, d) {
                        return Err(Error::InvalidModel(format!(
                            "non-exceptional component {:?} appears over both {:?} and {:?}",
                            entry.component, first, d
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn total(&self) -> &Arc<Variety> {
        &self.total
    }

    pub fn base(&self) -> &Arc<Variety> {
        &self.base
    }

    pub fn fibers(
        &self,
    ) -> impl Iterator<Item = (&Label, &Vec<ComponentEntry>)> {
        self.fibers.iter()
    }

    pub fn fiber(&self, d: &str) -> Option<&[ComponentEntry]> {
        self.fibers.get(d).map(Vec::as_slice)
    }

    /// The (base prime, entry) pairs whose fiber contains the component.
    pub fn fibers_containing<'a>(
        &'a self,
        component: &'a str,
    ) -> impl Iterator<Item = (&'a Label, &'a ComponentEntry)> {
        self.fibers.iter().filter_map(move |(d, entries)| {
            entries
                .iter()
                .find(|e| e.component == component)
                .map(|e| (d, e))
        })
    }

    /// The component's exceptional flag, if it appears in any fiber.
    pub fn exceptional_flag(&self, component: &str) -> Option<bool> {
        self.fibers_containing(component)
            .next()
            .map(|(_, e)| e.exceptional)
    }

    /// The pullback coefficients induced by the fiber decomposition:
    /// t = m_j on every (component, base prime) pair, exceptional or not.
    pub fn to_pullback_table(&self) -> PullbackTable {
        let coeff = self.fibers.iter().flat_map(|(d, entries)| {
            entries.iter().map(move |e| {
                (
                    e.component.clone(),
                    d.clone(),
                    BigRational::from_integer(BigInt::from(e.coefficient)),
                )
            })
        });
        PullbackTable::new(self.total.clone(), self.base.clone(), coeff)
            .expect("fiber entries are distinct and positive")
    }
}

/// Base orbifold of a fibration: per marked base prime, the inf (Q, Z) or
/// gcd (Div) of m_j times the multiplicity of the component, over the
/// non-exceptional components. Unlisted base primes stay at multiplicity 1.
pub fn base_orbifold(
    model: &FibrationModel,
    delta_y: &OrbifoldDivisor,
    cat: Category,
) -> Result<OrbifoldDivisor> {
    if delta_y.variety() != model.total() {
        return Err(Error::VarietyMismatch {
            expected: model.total().name().to_string(),
            found: delta_y.variety().name().to_string(),
        });
    }
    if cat == Category::Div && !delta_y.is_entire() {
        return Err(Error::NonIntegralMultiplicity(format!(
            "category {} needs an entire divisor on {}",
            cat,
            delta_y.variety().name()
        )));
    }
    let mut mults: Vec<(Label, ExtMult)> = Vec::new();
    for (d, entries) in model.fibers() {
        let values: Vec<ExtMult> = entries
            .iter()
            .filter(|e| !e.exceptional)
            .map(|e| {
                delta_y
                    .multiplicity(&e.component)
                    .scaled(&BigRational::from_integer(BigInt::from(
                        e.coefficient,
                    )))
                    .into_mult()
                    .expect("product of values at least 1")
            })
            .collect();
        let m = match cat {
            Category::Q | Category::Z => values
                .into_iter()
                .min()
                .expect("fiber has a non-exceptional component"),
            Category::Div => ext_gcd(&values)?,
        };
        mults.push((d.clone(), m));
    }
    OrbifoldDivisor::new(model.base().clone(), mults)
}

/// A composition Z -> Y -> X of fibration models with the composite model
/// supplied explicitly; construction validates coefficient and flag
/// consistency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerModel {
    g: FibrationModel,
    f: FibrationModel,
    fg: FibrationModel,
}

/// What the tower constraints say about one composite flag.
enum FlagConstraint {
    Forced(bool),
    Free,
}

impl TowerModel {
    pub fn new(
        g: FibrationModel,
        f: FibrationModel,
        fg: FibrationModel,
    ) -> Result<Self> {
        if g.base() != f.total() {
            return Err(Error::TowerInconsistency(format!(
                "base of the first fibration is {} but the second lives on {}",
                g.base().name(),
                f.total().name()
            )));
        }
        if fg.total() != g.total() || fg.base() != f.base() {
            return Err(Error::TowerInconsistency(format!(
                "composite must map {} onto {}",
                g.total().name(),
                f.base().name()
            )));
        }
        let tower = TowerModel { g, f, fg };
        tower.check_fiber_data()?;
        tower.check_coefficients()?;
        tower.check_flags()?;
        Ok(tower)
    }

    pub fn g(&self) -> &FibrationModel {
        &self.g
    }

    pub fn f(&self) -> &FibrationModel {
        &self.f
    }

    pub fn fg(&self) -> &FibrationModel {
        &self.fg
    }

    /// Every non-exceptional component of the lower fibration must carry
    /// fiber data in the upper one; a fibration never has empty fibers.
    fn check_fiber_data(&self) -> Result<()> {
        for (d, entries) in self.f.fibers() {
            for entry in entries {
                if !entry.exceptional
                    && self.g.fiber(&entry.component).is_none()
                {
                    return Err(Error::TowerInconsistency(format!(
                        "component {:?} over {:?} has no fiber data upstairs",
                        entry.component, d
                    )));
                }
            }
        }
        Ok(())
    }

    fn composite_coefficients(
        g: &FibrationModel,
        f: &FibrationModel,
    ) -> BTreeMap<(Label, Label), u128> {
        let mut acc: BTreeMap<(Label, Label), u128> = BTreeMap::new();
        for (d, f_entries) in f.fibers() {
            for fe in f_entries {
                if let Some(g_entries) = g.fiber(&fe.component) {
                    for ge in g_entries {
                        let term = u128::from(ge.coefficient)
                            * u128::from(fe.coefficient);
                        *acc
                            .entry((ge.component.clone(), d.clone()))
                            .or_insert(0) += term;
                    }
                }
            }
        }
        acc
    }

    /// The composite fiber decomposition must be exactly the product of the
    /// two stages: same support, same coefficients.
    fn check_coefficients(&self) -> Result<()> {
        let mut expected = Self::composite_coefficients(&self.g, &self.f);
        for (d, entries) in self.fg.fibers() {
            for entry in entries {
                let key = (entry.component.clone(), d.clone());
                match expected.remove(&key) {
                    Some(c) if c == u128::from(entry.coefficient) => {}
                    Some(c) => {
                        return Err(Error::TowerInconsistency(format!(
                            "composite coefficient of {:?} over {:?} is {} but the stages give {}",
                            entry.component, d, entry.coefficient, c
                        )));
                    }
                    None => {
                        return Err(Error::TowerInconsistency(format!(
                            "composite lists {:?} over {:?} but the stages do not reach it",
                            entry.component, d
                        )));
                    }
                }
            }
        }
        if let Some(((component, d), _)) = expected.into_iter().next() {
            return Err(Error::TowerInconsistency(format!(
                "stages reach {:?} over {:?} but the composite omits it",
                component, d
            )));
        }
        Ok(())
    }

    /// A composite component has codimension-1 image exactly when it
    /// dominates the fiber through non-exceptional stages; the flag is a
    /// free modeling choice only for upper-exceptional components all of
    /// whose modeled parents are non-exceptional over the same base prime.
    fn flag_constraint(
        g: &FibrationModel,
        f: &FibrationModel,
        component: &str,
        d: &Label,
    ) -> FlagConstraint {
        let g_exceptional = g
            .exceptional_flag(component)
            .expect("composite component appears upstairs");
        if !g_exceptional {
            let (parent, _) = g
                .fibers_containing(component)
                .next()
                .expect("non-exceptional component has its fiber");
            let parent_exceptional = f
                .exceptional_flag(parent)
                .expect("parent of a composite entry is modeled");
            FlagConstraint::Forced(parent_exceptional)
        } else {
            let mut parents: BTreeSet<&Label> = BTreeSet::new();
            for (e, entries) in g.fibers() {
                if entries.iter().any(|entry| entry.component == component) {
                    parents.insert(e);
                }
            }
            let free = parents.iter().all(|e| {
                let modeled: Vec<_> = f.fibers_containing(e).collect();
                modeled.iter().all(|(base_prime, entry)| {
                    !entry.exceptional && *base_prime == d
                })
            });
            if free {
                FlagConstraint::Free
            } else {
                FlagConstraint::Forced(true)
            }
        }
    }

    fn check_flags(&self) -> Result<()> {
        for (d, entries) in self.fg.fibers() {
            for entry in entries {
                match Self::flag_constraint(
                    &self.g,
                    &self.f,
                    &entry.component,
                    d,
                ) {
                    FlagConstraint::Forced(expected)
                        if expected != entry.exceptional =>
                    {
                        return Err(Error::TowerInconsistency(format!(
                            "composite flag of {:?} over {:?} must be {}",
                            entry.component,
                            d,
                            if expected {
                                "exceptional"
                            } else {
                                "non-exceptional"
                            }
                        )));
                    }
                    _ => {}
                }
            }
        }
        Ok(())
    }

    /// Build the composite model from the two stages, consulting `choose`
    /// for the flags the constraints leave free.
    pub fn compose(
        g: FibrationModel,
        f: FibrationModel,
        mut choose: impl FnMut(&str, &str) -> bool,
    ) -> Result<Self> {
        if g.base() != f.total() {
            return Err(Error::TowerInconsistency(format!(
                "base of the first fibration is {} but the second lives on {}",
                g.base().name(),
                f.total().name()
            )));
        }
        for (d, entries) in f.fibers() {
            for entry in entries {
                if !entry.exceptional && g.fiber(&entry.component).is_none() {
                    return Err(Error::TowerInconsistency(format!(
                        "component {:?} over {:?} has no fiber data upstairs",
                        entry.component, d
                    )));
                }
            }
        }
        let mut fibers: BTreeMap<Label, Vec<ComponentEntry>> = BTreeMap::new();
        for ((component, d), coefficient) in
            Self::composite_coefficients(&g, &f)
        {
            let coefficient = u64::try_from(coefficient).map_err(|_| {
                Error::InvalidModel(format!(
                    "composite coefficient of {:?} over {:?} overflows",
                    component, d
                ))
            })?;
            let exceptional =
                match Self::flag_constraint(&g, &f, &component, &d) {
                    FlagConstraint::Forced(v) => v,
                    FlagConstraint::Free => choose(&component, &d),
                };
            fibers.entry(d).or_default().push(ComponentEntry {
                component,
                coefficient,
                exceptional,
            });
        }
        let fg = FibrationModel::new(g.total().clone(), f.base().clone(), fibers)?;
        TowerModel::new(g, f, fg)
    }
}

/// The two sides of the composition inequality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposedBase {
    pub direct: OrbifoldDivisor,
    pub staged: OrbifoldDivisor,
}

/// direct = base of the composite; staged = base of the lower fibration
/// applied to the base of the upper one.
pub fn compose_base(
    tower: &TowerModel,
    delta_z: &OrbifoldDivisor,
    cat: Category,
) -> Result<ComposedBase> {
    let direct = base_orbifold(tower.fg(), delta_z, cat)?;
    let intermediate = base_orbifold(tower.g(), delta_z, cat)?;
    let staged = base_orbifold(tower.f(), &intermediate, cat)?;
    Ok(ComposedBase { direct, staged })
}

/// The composition inequality: direct at most (Q, Z) or dividing (Div) the
/// staged base.
pub fn check_comporb(
    tower: &TowerModel,
    delta_z: &OrbifoldDivisor,
    cat: Category,
) -> Result<bool> {
    let ComposedBase { direct, staged } = compose_base(tower, delta_z, cat)?;
    match cat {
        Category::Q | Category::Z => direct.leq(&staged),
        Category::Div => direct.divides(&staged),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphism::check_morphism;

    fn m(n: u64) -> ExtMult {
        ExtMult::integer(n).unwrap()
    }

    fn entry(c: &str, coefficient: u64, exceptional: bool) -> ComponentEntry {
        ComponentEntry::new(c, coefficient, exceptional)
    }

    /// An isotrivial model over three marked base points: each fiber has
    /// two components of coefficient 1 marked p and q by the divisor.
    fn three_fiber_model() -> (FibrationModel, OrbifoldDivisor) {
        let base = Arc::new(Variety::new("B", 1, ["0", "1", "oo"]).unwrap());
        let total = Arc::new(
            Variety::new("S", 2, ["E0", "F0", "E1", "F1", "Eoo", "Foo"])
                .unwrap(),
        );
        let model = FibrationModel::new(
            total.clone(),
            base,
            [
                ("0", vec![entry("E0", 1, false), entry("F0", 1, false)]),
                ("1", vec![entry("E1", 1, false), entry("F1", 1, false)]),
                ("oo", vec![entry("Eoo", 1, false), entry("Foo", 1, false)]),
            ],
        )
        .unwrap();
        let delta = OrbifoldDivisor::new(
            total,
            [
                ("E0", m(3)),
                ("F0", m(5)),
                ("E1", m(3)),
                ("F1", m(5)),
                ("Eoo", m(3)),
                ("Foo", m(5)),
            ],
        )
        .unwrap();
        (model, delta)
    }

    #[test]
    fn coprime_components_give_divergent_bases() {
        let (model, delta) = three_fiber_model();
        let base_q = base_orbifold(&model, &delta, Category::Q).unwrap();
        for d in ["0", "1", "oo"] {
            assert_eq!(base_q.multiplicity(d), m(3));
        }
        let base_z = base_orbifold(&model, &delta, Category::Z).unwrap();
        assert_eq!(base_q, base_z);
        let base_div = base_orbifold(&model, &delta, Category::Div).unwrap();
        assert!(base_div.is_trivial());
    }

    #[test]
    fn multiple_fiber_marks_the_base_in_every_convention() {
        let base = Arc::new(Variety::new("B", 1, ["0"]).unwrap());
        let total = Arc::new(Variety::new("S", 2, ["E"]).unwrap());
        let model = FibrationModel::new(
            total.clone(),
            base,
            [("0", vec![entry("E", 4, false)])],
        )
        .unwrap();
        let delta = OrbifoldDivisor::trivial(total);
        for cat in Category::ALL {
            let b = base_orbifold(&model, &delta, cat).unwrap();
            assert_eq!(b.multiplicity("0"), m(4));
        }
    }

    #[test]
    fn exceptional_entries_do_not_contribute() {
        let base = Arc::new(Variety::new("B", 1, ["0"]).unwrap());
        let total = Arc::new(Variety::new("S", 2, ["E", "F"]).unwrap());
        let model = FibrationModel::new(
            total.clone(),
            base,
            [("0", vec![entry("E", 1, false), entry("F", 1, true)])],
        )
        .unwrap();
        let delta = OrbifoldDivisor::new(total, [("E", m(5))]).unwrap();
        for cat in Category::ALL {
            let b = base_orbifold(&model, &delta, cat).unwrap();
            assert_eq!(b.multiplicity("0"), m(5));
        }
    }

    #[test]
    fn all_exceptional_fibers_are_rejected() {
        let base = Arc::new(Variety::new("B", 1, ["0"]).unwrap());
        let total = Arc::new(Variety::new("S", 2, ["F"]).unwrap());
        let err = FibrationModel::new(
            total,
            base,
            [("0", vec![entry("F", 1, true)])],
        )
        .unwrap_err();
        assert_eq!(err, Error::NoNonExceptionalComponent("0".into()));
    }

    #[test]
    fn unlisted_base_primes_stay_unmarked() {
        let base = Arc::new(Variety::new("B", 1, ["0", "1"]).unwrap());
        let total = Arc::new(Variety::new("S", 2, ["E"]).unwrap());
        let model = FibrationModel::new(
            total.clone(),
            base,
            [("0", vec![entry("E", 2, false)])],
        )
        .unwrap();
        let delta = OrbifoldDivisor::trivial(total);
        let b = base_orbifold(&model, &delta, Category::Q).unwrap();
        assert_eq!(b.multiplicity("1"), m(1));
        assert_eq!(b.support().collect::<Vec<_>>(), vec!["0"]);
    }

    #[test]
    fn infinite_multiplicities_absorb() {
        let (model, _) = three_fiber_model();
        let delta = OrbifoldDivisor::new(
            model.total().clone(),
            [
                ("E0", ExtMult::Infinity),
                ("F0", ExtMult::Infinity),
                ("E1", m(3)),
                ("F1", m(5)),
                ("Eoo", m(3)),
                ("Foo", m(5)),
            ],
        )
        .unwrap();
        let base_q = base_orbifold(&model, &delta, Category::Q).unwrap();
        assert_eq!(base_q.multiplicity("0"), ExtMult::Infinity);
        let base_div = base_orbifold(&model, &delta, Category::Div).unwrap();
        assert_eq!(base_div.multiplicity("0"), ExtMult::Infinity);
    }

    #[test]
    fn divisible_base_is_not_monotone() {
        let base = Arc::new(Variety::new("B", 1, ["0"]).unwrap());
        let total = Arc::new(Variety::new("S", 2, ["E1", "E2"]).unwrap());
        let model = FibrationModel::new(
            total.clone(),
            base,
            [("0", vec![entry("E1", 1, false), entry("E2", 1, false)])],
        )
        .unwrap();
        let small = OrbifoldDivisor::new(
            total.clone(),
            [("E1", m(2)), ("E2", m(2))],
        )
        .unwrap();
        let large =
            OrbifoldDivisor::new(total, [("E1", m(2)), ("E2", m(3))]).unwrap();
        assert!(small.leq(&large).unwrap());
        let b_small = base_orbifold(&model, &small, Category::Div).unwrap();
        let b_large = base_orbifold(&model, &large, Category::Div).unwrap();
        assert_eq!(b_small.multiplicity("0"), m(2));
        assert_eq!(b_large.multiplicity("0"), m(1));
        // Q and Z stay monotone on the same input.
        let q_small = base_orbifold(&model, &small, Category::Q).unwrap();
        let q_large = base_orbifold(&model, &large, Category::Q).unwrap();
        assert!(q_small.leq(&q_large).unwrap());
    }

    #[test]
    fn exception_free_models_induce_morphisms_onto_their_base() {
        let (model, delta) = three_fiber_model();
        let table = model.to_pullback_table();
        for cat in Category::ALL {
            let b = base_orbifold(&model, &delta, cat).unwrap();
            assert!(check_morphism(&delta, &b, &table, cat).unwrap().holds);
        }
    }

    /// Tower fixture: f has one fiber over D with a single non-exceptional
    /// component E; g over E has a non-exceptional F1 and an exceptional F2.
    /// The composite flag of F2 is free.
    fn small_tower(
        f2_exceptional_downstairs: bool,
    ) -> (TowerModel, Arc<Variety>) {
        let x = Arc::new(Variety::new("X", 1, ["D"]).unwrap());
        let y = Arc::new(Variety::new("Y", 2, ["E"]).unwrap());
        let z = Arc::new(Variety::new("Z", 3, ["F1", "F2"]).unwrap());
        let f = FibrationModel::new(
            y.clone(),
            x.clone(),
            [("D", vec![entry("E", 1, false)])],
        )
        .unwrap();
        let g = FibrationModel::new(
            z.clone(),
            y,
            [("E", vec![entry("F1", 1, false), entry("F2", 1, true)])],
        )
        .unwrap();
        let tower =
            TowerModel::compose(g, f, |_, _| f2_exceptional_downstairs)
                .unwrap();
        (tower, z)
    }

    #[test]
    fn composition_flags_follow_the_stages() {
        let (tower, _) = small_tower(false);
        let fiber = tower.fg().fiber("D").unwrap();
        assert_eq!(fiber.len(), 2);
        let f1 = fiber.iter().find(|e| e.component == "F1").unwrap();
        assert!(!f1.exceptional);
        let f2 = fiber.iter().find(|e| e.component == "F2").unwrap();
        assert!(!f2.exceptional);
        let (tower, _) = small_tower(true);
        let f2 = tower
            .fg()
            .fiber("D")
            .unwrap()
            .iter()
            .find(|e| e.component == "F2")
            .unwrap()
            .clone();
        assert!(f2.exceptional);
    }

    #[test]
    fn composite_with_wrong_coefficients_is_rejected() {
        let (tower, _) = small_tower(false);
        let bad_fg = FibrationModel::new(
            tower.g().total().clone(),
            tower.f().base().clone(),
            [("D", vec![entry("F1", 2, false), entry("F2", 1, false)])],
        )
        .unwrap();
        let err = TowerModel::new(tower.g().clone(), tower.f().clone(), bad_fg)
            .unwrap_err();
        assert!(matches!(err, Error::TowerInconsistency(_)));
    }

    #[test]
    fn composite_missing_a_component_is_rejected() {
        let (tower, _) = small_tower(false);
        let sparse_fg = FibrationModel::new(
            tower.g().total().clone(),
            tower.f().base().clone(),
            [("D", vec![entry("F1", 1, false)])],
        )
        .unwrap();
        let err =
            TowerModel::new(tower.g().clone(), tower.f().clone(), sparse_fg)
                .unwrap_err();
        assert!(matches!(err, Error::TowerInconsistency(_)));
    }

    #[test]
    fn forced_flags_are_enforced() {
        let (tower, _) = small_tower(false);
        let flipped_fg = FibrationModel::new(
            tower.g().total().clone(),
            tower.f().base().clone(),
            [("D", vec![entry("F1", 1, true), entry("F2", 1, false)])],
        )
        .unwrap();
        let err =
            TowerModel::new(tower.g().clone(), tower.f().clone(), flipped_fg)
                .unwrap_err();
        assert!(matches!(err, Error::TowerInconsistency(_)));
    }

    #[test]
    fn missing_upper_fiber_data_is_rejected() {
        let x = Arc::new(Variety::new("X", 1, ["D"]).unwrap());
        let y = Arc::new(Variety::new("Y", 2, ["E", "E2"]).unwrap());
        let z = Arc::new(Variety::new("Z", 3, ["F"]).unwrap());
        let f = FibrationModel::new(
            y.clone(),
            x,
            [("D", vec![entry("E", 1, false), entry("E2", 1, false)])],
        )
        .unwrap();
        let g = FibrationModel::new(
            z,
            y,
            [("E", vec![entry("F", 1, false)])],
        )
        .unwrap();
        let err = TowerModel::compose(g, f, |_, _| false).unwrap_err();
        assert!(matches!(err, Error::TowerInconsistency(_)));
    }

    #[test]
    fn hidden_exceptional_divisor_makes_the_staged_base_strictly_larger() {
        let (tower, z) = small_tower(false);
        let delta = OrbifoldDivisor::new(
            z.clone(),
            [("F1", m(10)), ("F2", m(2))],
        )
        .unwrap();
        let sides = compose_base(&tower, &delta, Category::Q).unwrap();
        assert_eq!(sides.direct.multiplicity("D"), m(2));
        assert_eq!(sides.staged.multiplicity("D"), m(10));
        assert!(check_comporb(&tower, &delta, Category::Q).unwrap());

        // Raising the hidden multiplicity past the staged bound restores
        // equality.
        let raised =
            OrbifoldDivisor::new(z, [("F1", m(10)), ("F2", m(10))]).unwrap();
        let sides = compose_base(&tower, &raised, Category::Q).unwrap();
        assert_eq!(sides.direct, sides.staged);
    }

    #[test]
    fn divisible_composition_uses_divisibility() {
        let (tower, z) = small_tower(false);
        let delta =
            OrbifoldDivisor::new(z, [("F1", m(6)), ("F2", m(15))]).unwrap();
        // F2 is g-exceptional but not fg-exceptional: the direct base sees
        // it, the staged base does not, and direct <= staged in every
        // category.
        for cat in Category::ALL {
            assert!(check_comporb(&tower, &delta, cat).unwrap());
        }
        let sides = compose_base(&tower, &delta, Category::Div).unwrap();
        assert_eq!(sides.direct.multiplicity("D"), m(3));
        assert_eq!(sides.staged.multiplicity("D"), m(6));
        assert!(sides.direct.divides(&sides.staged).unwrap());
    }
}
