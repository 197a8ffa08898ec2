//! Fixture builders shared by the criterion benchmarks: a marked plane,
//! a two-center blowup table, a three-story tower and a curve batch that
//! are large enough to make timing differences visible.

use std::sync::Arc;

use num::{BigInt, BigRational};
use orbifold::{
    ComponentEntry, ExtMult, FibrationModel, OrbifoldCurve, OrbifoldDivisor,
    PullbackTable, TowerModel, Variety,
};

pub fn mult(n: u64) -> ExtMult {
    ExtMult::integer(n).expect("positive multiplicity")
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

const LINES: [&str; 6] = ["L1", "L2", "L3", "L4", "L5", "L6"];

/// Two divisors on a six-line plane with interleaved multiplicities, so
/// sup and inf both have full support.
pub fn divisor_pair() -> (OrbifoldDivisor, OrbifoldDivisor) {
    let plane = Variety::plane_with_lines(&LINES);
    let build = |mults: [u64; 6]| {
        OrbifoldDivisor::new(
            plane.clone(),
            LINES.iter().zip(mults).map(|(l, v)| (*l, mult(v))),
        )
        .expect("divisor on its own plane")
    };
    (build([2, 9, 4, 25, 6, 49]), build([3, 8, 5, 24, 7, 48]))
}

/// A divisor downstairs and an integral pullback table with two centers,
/// each exceptional prime meeting several target primes.
pub fn lift_input() -> (OrbifoldDivisor, PullbackTable) {
    let x = Variety::plane_with_lines(&LINES);
    let y = Arc::new(
        Variety::new(
            "Y",
            2,
            LINES.iter().map(|l| format!("{l}'")).chain([
                "E1".to_string(),
                "E2".to_string(),
            ]),
        )
        .expect("distinct labels"),
    );
    let mut coeff: Vec<(String, String, BigRational)> = LINES
        .iter()
        .map(|l| (format!("{l}'"), l.to_string(), ratio(1, 1)))
        .collect();
    for l in ["L1", "L2", "L3"] {
        coeff.push(("E1".to_string(), l.to_string(), ratio(2, 1)));
    }
    for l in ["L4", "L5", "L6"] {
        coeff.push(("E2".to_string(), l.to_string(), ratio(3, 1)));
    }
    let table = PullbackTable::new(y, x.clone(), coeff).expect("valid table");
    let delta = OrbifoldDivisor::new(
        x,
        LINES
            .iter()
            .zip([4u64, 6, 10, 12, 15, 21])
            .map(|(l, v)| (*l, mult(v))),
    )
    .expect("divisor on its own plane");
    (delta, table)
}

/// A validated tower with mixed exceptional flags and a divisor upstairs.
pub fn tower_input() -> (TowerModel, OrbifoldDivisor) {
    let base = Arc::new(Variety::new("B", 1, ["D1", "D2"]).unwrap());
    let mid = Arc::new(
        Variety::new("M", 2, ["E1", "E2", "E3", "E4"]).unwrap(),
    );
    let top = Arc::new(
        Variety::new("T", 3, ["F1", "F2", "F3", "F4", "F5", "F6"]).unwrap(),
    );
    let f = FibrationModel::new(
        mid.clone(),
        base,
        [
            (
                "D1",
                vec![
                    ComponentEntry::new("E1", 2, false),
                    ComponentEntry::new("E2", 1, true),
                ],
            ),
            ("D2", vec![ComponentEntry::new("E3", 3, false)]),
        ],
    )
    .unwrap();
    let g = FibrationModel::new(
        top,
        mid,
        [
            ("E1", vec![ComponentEntry::new("F1", 2, false)]),
            (
                "E2",
                vec![
                    ComponentEntry::new("F2", 1, false),
                    ComponentEntry::new("F3", 4, true),
                ],
            ),
            (
                "E3",
                vec![
                    ComponentEntry::new("F4", 1, false),
                    ComponentEntry::new("F5", 6, true),
                ],
            ),
            ("E4", vec![ComponentEntry::new("F6", 1, false)]),
        ],
    )
    .unwrap();
    let tower =
        TowerModel::compose(g, f, |_, _| false).expect("stages compose");
    let delta = OrbifoldDivisor::new(
        tower.fg().total().clone(),
        [("F1", mult(6)), ("F2", mult(2)), ("F4", mult(10))],
    )
    .unwrap();
    (tower, delta)
}

/// Every genus-zero curve with three marked points and multiplicities
/// drawn from {2..=20, infinity}.
pub fn curve_batch() -> Vec<OrbifoldCurve> {
    let values: Vec<ExtMult> = (2..=20)
        .map(mult)
        .chain([ExtMult::Infinity])
        .collect();
    let mut batch = Vec::new();
    for i in 0..values.len() {
        for j in i..values.len() {
            for k in j..values.len() {
                batch.push(OrbifoldCurve::from_multiplicities(
                    0,
                    [
                        values[i].clone(),
                        values[j].clone(),
                        values[k].clone(),
                    ],
                ));
            }
        }
    }
    batch
}
