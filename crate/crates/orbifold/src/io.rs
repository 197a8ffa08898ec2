//! JSON workspace documents.
//!
//! One document declares named varieties, divisors, pullback tables,
//! curves, contact data, fibrations, ramification profiles, and towers;
//! commands refer to the entities by name. Every rational travels as a
//! string ("3", "5/2", "-1/105", multiplicities also "inf"); loading is
//! all-or-nothing and unknown fields are rejected.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::curve::OrbifoldCurve;
use crate::divisor::{OrbifoldDivisor, Variety};
use crate::error::{Error, Result};
use crate::fibration::{ComponentEntry, FibrationModel, TowerModel};
use crate::morphism::{CoveringRamification, CurveContactData, PullbackTable};
use crate::multiplicity::ExtMult;

/// Signed exact rational: optional leading '-', digits, optional '/digits'.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let invalid = || Error::Document(format!("invalid rational {:?}", s));
    let (negative, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, d),
        None => (body, "1"),
    };
    let digits =
        |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !digits(numer) || !digits(denom) {
        return Err(invalid());
    }
    let numer: BigInt = numer.parse().map_err(|_| invalid())?;
    let denom: BigInt = denom.parse().map_err(|_| invalid())?;
    if denom.is_zero() {
        return Err(invalid());
    }
    let value = BigRational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_mult(s: &str) -> Result<ExtMult> {
    ExtMult::from_str(s)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DegreeDoc {
    canonical: String,
    primes: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VarietyDoc {
    name: String,
    dim: u32,
    primes: Vec<String>,
    #[serde(default)]
    degree: Option<DegreeDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorDoc {
    variety: String,
    #[serde(default)]
    mult: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableEntryDoc {
    e: String,
    d: String,
    t: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableDoc {
    source: String,
    target: String,
    #[serde(default)]
    coeff: Vec<TableEntryDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveDoc {
    genus: u32,
    #[serde(default)]
    points: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContactEntryDoc {
    d: String,
    order: u64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContactPointDoc {
    point: String,
    #[serde(default)]
    with: Vec<ContactEntryDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ContactDoc {
    genus: u32,
    #[serde(default)]
    contacts: Vec<ContactPointDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberEntryDoc {
    e: String,
    m: u64,
    exceptional: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FibrationDoc {
    total: String,
    base: String,
    #[serde(default)]
    fibers: BTreeMap<String, Vec<FiberEntryDoc>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RamificationDoc {
    d: u64,
    g_source: u32,
    g_target: u32,
    #[serde(default)]
    fibers: BTreeMap<String, Vec<u64>>,
    #[serde(default)]
    m_source: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    m_target: Option<BTreeMap<String, String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TowerDoc {
    g: String,
    f: String,
    fg: String,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct WorkspaceDoc {
    #[serde(default)]
    varieties: Vec<VarietyDoc>,
    #[serde(default)]
    divisors: BTreeMap<String, DivisorDoc>,
    #[serde(default)]
    tables: BTreeMap<String, TableDoc>,
    #[serde(default)]
    curves: BTreeMap<String, CurveDoc>,
    #[serde(default)]
    contacts: BTreeMap<String, ContactDoc>,
    #[serde(default)]
    fibrations: BTreeMap<String, FibrationDoc>,
    #[serde(default)]
    ramifications: BTreeMap<String, RamificationDoc>,
    #[serde(default)]
    towers: BTreeMap<String, TowerDoc>,
}

/// All entities of one loaded document, fully resolved and validated.
#[derive(Debug, Default)]
pub struct Workspace {
    varieties: BTreeMap<String, Arc<Variety>>,
    divisors: BTreeMap<String, OrbifoldDivisor>,
    tables: BTreeMap<String, PullbackTable>,
    curves: BTreeMap<String, OrbifoldCurve>,
    contacts: BTreeMap<String, CurveContactData>,
    fibrations: BTreeMap<String, FibrationModel>,
    ramifications: BTreeMap<String, CoveringRamification>,
    towers: BTreeMap<String, TowerModel>,
}

impl Workspace {
    pub fn from_json(text: &str) -> Result<Workspace> {
        let doc: WorkspaceDoc = serde_json::from_str(text)
            .map_err(|e| Error::Document(e.to_string()))?;
        let mut ws = Workspace::default();
        for v in doc.varieties {
            let mut variety = Variety::new(&v.name, v.dim, v.primes)?;
            if let Some(deg) = v.degree {
                let canonical = parse_rational(&deg.canonical)?;
                let primes = deg
                    .primes
                    .into_iter()
                    .map(|(l, s)| Ok((l, parse_rational(&s)?)))
                    .collect::<Result<Vec<_>>>()?;
                variety = variety.with_degree_data(canonical, primes)?;
            }
            if ws
                .varieties
                .insert(v.name.clone(), Arc::new(variety))
                .is_some()
            {
                return Err(Error::Document(format!(
                    "variety {:?} declared twice",
                    v.name
                )));
            }
        }
        for (name, d) in doc.divisors {
            let variety = ws.variety(&d.variety)?.clone();
            let mult = d
                .mult
                .into_iter()
                .map(|(l, s)| Ok((l, parse_mult(&s)?)))
                .collect::<Result<Vec<_>>>()?;
            ws.divisors
                .insert(name, OrbifoldDivisor::new(variety, mult)?);
        }
        for (name, t) in doc.tables {
            let source = ws.variety(&t.source)?.clone();
            let target = ws.variety(&t.target)?.clone();
            let coeff = t
                .coeff
                .into_iter()
                .map(|entry| Ok((entry.e, entry.d, parse_rational(&entry.t)?)))
                .collect::<Result<Vec<_>>>()?;
            ws.tables
                .insert(name, PullbackTable::new(source, target, coeff)?);
        }
        for (name, c) in doc.curves {
            let points = c
                .points
                .into_iter()
                .map(|(l, s)| Ok((l, parse_mult(&s)?)))
                .collect::<Result<Vec<_>>>()?;
            ws.curves.insert(name, OrbifoldCurve::new(c.genus, points)?);
        }
        for (name, c) in doc.contacts {
            let contacts = c.contacts.into_iter().map(|p| {
                (
                    p.point,
                    p.with.into_iter().map(|e| (e.d, e.order)),
                )
            });
            ws.contacts
                .insert(name, CurveContactData::new(c.genus, contacts)?);
        }
        for (name, f) in doc.fibrations {
            let total = ws.variety(&f.total)?.clone();
            let base = ws.variety(&f.base)?.clone();
            let fibers = f.fibers.into_iter().map(|(d, entries)| {
                (
                    d,
                    entries
                        .into_iter()
                        .map(|e| ComponentEntry::new(e.e, e.m, e.exceptional))
                        .collect(),
                )
            });
            ws.fibrations
                .insert(name, FibrationModel::new(total, base, fibers)?);
        }
        for (name, r) in doc.ramifications {
            let mut ram = CoveringRamification::new(
                r.d,
                r.g_source,
                r.g_target,
                r.fibers,
            )?;
            if let Some(sm) = r.m_source {
                let sm = sm
                    .into_iter()
                    .map(|(b, ms)| {
                        let ms = ms
                            .iter()
                            .map(|s| parse_mult(s))
                            .collect::<Result<Vec<_>>>()?;
                        Ok((b, ms))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ram = ram.with_source_multiplicities(sm)?;
            }
            if let Some(tm) = r.m_target {
                let tm = tm
                    .into_iter()
                    .map(|(b, s)| Ok((b, parse_mult(&s)?)))
                    .collect::<Result<Vec<_>>>()?;
                ram = ram.with_target_multiplicities(tm);
            }
            ws.ramifications.insert(name, ram);
        }
        for (name, t) in doc.towers {
            let g = ws.fibration(&t.g)?.clone();
            let f = ws.fibration(&t.f)?.clone();
            let fg = ws.fibration(&t.fg)?.clone();
            ws.towers.insert(name, TowerModel::new(g, f, fg)?);
        }
        Ok(ws)
    }

    pub fn variety(&self, name: &str) -> Result<&Arc<Variety>> {
        self.varieties
            .get(name)
            .ok_or_else(|| Error::Document(format!("unknown variety {:?}", name)))
    }

    pub fn divisor(&self, name: &str) -> Result<&OrbifoldDivisor> {
        self.divisors
            .get(name)
            .ok_or_else(|| Error::Document(format!("unknown divisor {:?}", name)))
    }

    pub fn table(&self, name: &str) -> Result<&PullbackTable> {
        self.tables
            .get(name)
            .ok_or_else(|| Error::Document(format!("unknown table {:?}", name)))
    }

    pub fn curve(&self, name: &str) -> Result<&OrbifoldCurve> {
        self.curves
            .get(name)
            .ok_or_else(|| Error::Document(format!("unknown curve {:?}", name)))
    }

    pub fn contact(&self, name: &str) -> Result<&CurveContactData> {
        self.contacts.get(name).ok_or_else(|| {
            Error::Document(format!("unknown contact data {:?}", name))
        })
    }

    pub fn fibration(&self, name: &str) -> Result<&FibrationModel> {
        self.fibrations.get(name).ok_or_else(|| {
            Error::Document(format!("unknown fibration {:?}", name))
        })
    }

    pub fn ramification(&self, name: &str) -> Result<&CoveringRamification> {
        self.ramifications.get(name).ok_or_else(|| {
            Error::Document(format!("unknown ramification {:?}", name))
        })
    }

    pub fn tower(&self, name: &str) -> Result<&TowerModel> {
        self.towers
            .get(name)
            .ok_or_else(|| Error::Document(format!("unknown tower {:?}", name)))
    }
}

/// Divisor in the input grammar: {"variety": name, "mult": {label: m}}.
pub fn divisor_document(d: &OrbifoldDivisor) -> Value {
    let mult: Map<String, Value> = d
        .entries()
        .map(|(l, m)| (l.clone(), Value::String(m.to_string())))
        .collect();
    json!({"variety": d.variety().name(), "mult": mult})
}

/// Curve in the input grammar: {"genus": g, "points": {label: m}}.
pub fn curve_document(c: &OrbifoldCurve) -> Value {
    let points: Map<String, Value> = c
        .points()
        .map(|(l, m)| (l.clone(), Value::String(m.to_string())))
        .collect();
    json!({"genus": c.genus(), "points": points})
}
