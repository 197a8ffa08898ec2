//! JSON-in, JSON-out command line for the orbifold calculus.
//!
//! Every command reads named entities from one workspace document (a file
//! or standard input) and prints a single JSON value. Exit codes: 0 for
//! success (and for boolean commands, a true verdict), 1 for a false
//! verdict, 2 for any input or validation error, reported as
//! {"error": reason} on standard error.

use std::fs;
use std::io::Read;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num::rational::BigRational;
use num::ToPrimitive;
use serde_json::{json, Value};

use orbifold::io::{curve_document, divisor_document};
use orbifold::{
    base_orbifold, check_comporb, check_etale_covering, check_morphism,
    compose_base, count_types, enumerate_types, minimal_lift,
    plane_rational_expected_dim, restrict_to_curve, riemann_hurwitz,
    Category, Workspace,
};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cat {
    Q,
    Z,
    Div,
}

impl From<Cat> for Category {
    fn from(c: Cat) -> Category {
        match c {
            Cat::Q => Category::Q,
            Cat::Z => Category::Z,
            Cat::Div => Category::Div,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "orbifold",
    about = "Exact calculus of orbifold divisors, curves and fibrations",
    version
)]
struct Cli {
    /// Workspace document; a path, or - for standard input.
    #[arg(long, global = true, default_value = "-")]
    input: String,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical degree of a divisor.
    Degree { divisor: String },
    /// Whether a divisor has negative canonical degree.
    Fano { divisor: String },
    /// Rational / elliptic / general-type trichotomy of a curve.
    ClassifyCurve { curve: String },
    /// Whether the fundamental group of a curve is finite.
    Pi1Finite { curve: String },
    /// Whether a pullback table is a morphism between two divisors.
    CheckMorphism {
        divisor_y: String,
        divisor_x: String,
        table: String,
        #[arg(long, value_enum)]
        cat: Cat,
    },
    /// Smallest divisor upstairs making the table a morphism.
    Lift {
        divisor_x: String,
        table: String,
        #[arg(long, value_enum)]
        cat: Cat,
    },
    /// Minimal multiplicities induced on a curve by contact data.
    Restrict {
        divisor_x: String,
        contacts: String,
        #[arg(long, value_enum)]
        cat: Cat,
    },
    /// Base orbifold of a fibration under a divisor on its total space.
    Base {
        fibration: String,
        divisor_y: String,
        #[arg(long, value_enum)]
        cat: Cat,
    },
    /// Compare the direct and staged base orbifolds of a tower.
    ComposeCheck {
        tower: String,
        divisor_z: String,
        #[arg(long, value_enum)]
        cat: Cat,
    },
    /// Whether a covering profile is orbifold-etale.
    Etale { ramification: String },
    /// Degree identity and curvature bounds of a covering profile.
    RiemannHurwitz { ramification: String },
    /// Count or list type sequences of a given dimension.
    Types {
        #[command(subcommand)]
        action: TypesAction,
    },
    /// Expected dimension of the plane rational curves of degree d.
    ExpectedDim { divisor: String, d: u64 },
}

#[derive(Subcommand)]
enum TypesAction {
    Enumerate { n: u32 },
    Count { n: u32 },
}

fn load(input: &str) -> Result<Workspace> {
    let text = if input == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .context("reading standard input")?;
        buf
    } else {
        fs::read_to_string(input).with_context(|| format!("reading {input}"))?
    };
    Ok(Workspace::from_json(&text)?)
}

fn rational(r: &BigRational) -> Value {
    Value::String(r.to_string())
}

fn emit(value: &Value) {
    println!("{value}");
}

/// True-ish results exit 0, false verdicts exit 1.
fn verdict(ok: bool) -> ExitCode {
    ExitCode::from(u8::from(!ok))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Degree { divisor } => {
            let ws = load(&cli.input)?;
            let degree = ws.divisor(&divisor)?.canonical_degree()?;
            emit(&json!({ "degree": rational(&degree) }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Fano { divisor } => {
            let ws = load(&cli.input)?;
            let d = ws.divisor(&divisor)?;
            let fano = d.is_fano()?;
            emit(&json!({
                "fano": fano,
                "degree": rational(&d.canonical_degree()?),
            }));
            Ok(verdict(fano))
        }
        Command::ClassifyCurve { curve } => {
            let ws = load(&cli.input)?;
            let c = ws.curve(&curve)?;
            emit(&json!({
                "class": c.classify().to_string(),
                "degree": rational(&c.canonical_degree()),
                "special": c.is_special(),
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Pi1Finite { curve } => {
            let ws = load(&cli.input)?;
            let finite = ws.curve(&curve)?.is_pi1_finite()?;
            emit(&json!({ "finite": finite }));
            Ok(verdict(finite))
        }
        Command::CheckMorphism {
            divisor_y,
            divisor_x,
            table,
            cat,
        } => {
            let ws = load(&cli.input)?;
            let check = check_morphism(
                ws.divisor(&divisor_y)?,
                ws.divisor(&divisor_x)?,
                ws.table(&table)?,
                cat.into(),
            )?;
            emit(&json!({
                "ok": check.holds,
                "violations": check.violations,
            }));
            Ok(verdict(check.holds))
        }
        Command::Lift {
            divisor_x,
            table,
            cat,
        } => {
            let ws = load(&cli.input)?;
            let lift = minimal_lift(
                ws.divisor(&divisor_x)?,
                ws.table(&table)?,
                cat.into(),
            )?;
            emit(&divisor_document(&lift));
            Ok(ExitCode::SUCCESS)
        }
        Command::Restrict {
            divisor_x,
            contacts,
            cat,
        } => {
            let ws = load(&cli.input)?;
            let curve = restrict_to_curve(
                ws.divisor(&divisor_x)?,
                ws.contact(&contacts)?,
                cat.into(),
            )?;
            emit(&curve_document(&curve));
            Ok(ExitCode::SUCCESS)
        }
        Command::Base {
            fibration,
            divisor_y,
            cat,
        } => {
            let ws = load(&cli.input)?;
            let base = base_orbifold(
                ws.fibration(&fibration)?,
                ws.divisor(&divisor_y)?,
                cat.into(),
            )?;
            emit(&divisor_document(&base));
            Ok(ExitCode::SUCCESS)
        }
        Command::ComposeCheck {
            tower,
            divisor_z,
            cat,
        } => {
            let ws = load(&cli.input)?;
            let t = ws.tower(&tower)?;
            let dz = ws.divisor(&divisor_z)?;
            let ok = check_comporb(t, dz, cat.into())?;
            let pair = compose_base(t, dz, cat.into())?;
            emit(&json!({
                "ok": ok,
                "direct": divisor_document(&pair.direct),
                "staged": divisor_document(&pair.staged),
            }));
            Ok(verdict(ok))
        }
        Command::Etale { ramification } => {
            let ws = load(&cli.input)?;
            let etale = check_etale_covering(ws.ramification(&ramification)?)?;
            emit(&json!({ "etale": etale }));
            Ok(verdict(etale))
        }
        Command::RiemannHurwitz { ramification } => {
            let ws = load(&cli.input)?;
            let rh = riemann_hurwitz(ws.ramification(&ramification)?);
            emit(&json!({
                "lhs": rational(&rh.lhs),
                "identity_rhs": rational(&rh.identity_rhs),
                "bound_min": rational(&rh.bound_min),
                "bound_gcd": rational(&rh.bound_gcd),
                "identity_holds": rh.identity_holds,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::Types { action } => {
            match action {
                TypesAction::Enumerate { n } => {
                    for t in enumerate_types(n)? {
                        println!("{t}");
                    }
                }
                TypesAction::Count { n } => {
                    let count = count_types(n);
                    let value = match count.to_u64() {
                        Some(small) => json!(small),
                        None => Value::String(count.to_string()),
                    };
                    emit(&json!({ "count": value }));
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ExpectedDim { divisor, d } => {
            let ws = load(&cli.input)?;
            let dim = plane_rational_expected_dim(ws.divisor(&divisor)?, d)?;
            emit(&json!({ "expected_dim": rational(&dim) }));
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("{}", json!({ "error": err.to_string() }));
            ExitCode::from(2)
        }
    }
}
