//! Exact-arithmetic calculus on geometric orbifolds.
//!
//! An orbifold pair is a variety together with multiplicities
//! m in the rationals >= 1 or infinity attached to finitely many prime
//! divisors, encoded as the divisor sum of (1 - 1/m) D. This crate
//! implements the combinatorial layer of that theory:
//!
//! - [`multiplicity`]: the extended multiplicities, their order, their
//!   divisibility, and gcd/lcm with an absorbing infinity.
//! - [`divisor`]: finitely supported orbifold divisors over abstract
//!   varieties, the sup/inf lattice, canonical degrees, Fano tests, and
//!   parameter counts for rational plane curves.
//! - [`curve`]: marked curves, canonical degree, the
//!   rational/elliptic/general-type trichotomy, the closed list of integral
//!   rational configurations, and finiteness of the orbifold fundamental
//!   group.
//! - [`morphism`]: pullback tables, morphism checks in the categories Q, Z,
//!   and Div, minimal lifts, composition, restriction of divisors to
//!   curves, orbifold-etale coverings, and Riemann-Hurwitz bookkeeping.
//! - [`fibration`]: fiber decompositions with exceptional flags, base
//!   orbifolds in the inf and gcd conventions, and the composition
//!   inequality for towers of fibrations.
//! - [`types`]: the dimension-type sequences, their generative grammar,
//!   enumeration, and the linear-recurrence count.
//! - [`io`]: a JSON workspace format naming every entity, with exact
//!   rationals as strings.
//!
//! All arithmetic is exact; no floating point appears anywhere.

pub mod curve;
pub mod divisor;
pub mod error;
pub mod fibration;
pub mod io;
pub mod morphism;
pub mod multiplicity;
pub mod types;

pub use curve::{CurveClass, OrbifoldCurve};
pub use divisor::{
    plane_rational_expected_dim, DegreeData, Label, OrbifoldDivisor, Variety,
};
pub use error::{Error, Result};
pub use fibration::{
    base_orbifold, check_comporb, compose_base, ComponentEntry, ComposedBase,
    FibrationModel, TowerModel,
};
pub use io::Workspace;
pub use morphism::{
    check_etale_covering, check_morphism, compose_tables, is_delta_rational,
    minimal_lift, restrict_to_curve, riemann_hurwitz, Category,
    CoveringRamification, CurveContactData, MorphismCheck, PullbackTable,
    RiemannHurwitz,
};
pub use multiplicity::{ext_gcd, ext_lcm, ExtMult, ExtRational};
pub use types::{
    count_types, enumerate_types, TypeSequence, MAX_ENUMERATION_DIM,
};
