//! Command-line front end. Each command reads one JSON document and prints
//! one JSON document; exit status 0 means success, 1 a failed check and 2
//! an input error.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classical;
use crate::curve::CurveElim;
use crate::detrep::{CurvePoint, DetRep};
use crate::error::Error;
use crate::matrix::Matrix;
use crate::poly::{HomPoly3, UniPoly};
use crate::rational_map::{self, RationalMap};
use crate::scalar::{parse_rational, Field, Rational, C64};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "curvelim",
    version,
    about = "Elimination along plane curves with determinantal representations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Read the JSON input from a file.
    #[arg(long, global = true, conflicts_with = "json")]
    pub input: Option<PathBuf>,

    /// Inline JSON input. Without --input or --json, stdin is read.
    #[arg(long, global = true)]
    pub json: Option<String>,

    /// Exact rational arithmetic or complex floating point.
    #[arg(long, global = true, value_enum, default_value_t = Backend::Exact)]
    pub backend: Backend,

    /// Tolerance for float residual checks.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,

    /// Seed for sampling-based verification.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Resultant of univariate p, q: {"p", "q", "degree"?}.
    Resultant,
    /// Bezout matrix of univariate p, q.
    Bezout,
    /// Sylvester matrix of univariate p, q.
    Sylvester,
    /// Kravitsky identity for univariate p, q, f, g.
    KravitskyCheck,
    /// Pencil for the image of the line under binary forms p0, p1, p2.
    LineImage,
    /// Determinant polynomial of {"detrep"}.
    Detpoly,
    /// Validates a representation and reports reducibility findings.
    ValidateRep,
    /// Kernel of the pencil at {"detrep", "point"}.
    KernelAt,
    /// Dimension of the principal subspace at {"detrep", "n"}.
    PrincipalDim,
    /// Common zeros of forms p, q on the curve, by both methods.
    CurveCount,
    /// Pairing of kernel vectors at points x, y of the curve.
    PairingCheck,
    /// Kravitsky identity along the curve for forms p, q, f, g.
    GenKravitskyCheck,
    /// Image pencil of {"detrep", "map"} with a sampling report.
    ImageCurve,
    /// Compares the two constructions for {"detrep", "r", "s"}.
    ComposeCheck,
}

/// Exit status and JSON output of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub status: i32,
    pub output: Value,
}

/// Failure classes: a check evaluated to false, or the input was unusable.
enum Failure {
    Check(Value),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TheoremViolation(_) | Error::DisagreementDetected(_) => {
                Failure::Check(json!({ "error": e.to_string() }))
            }
            other => Failure::Input(other.to_string()),
        }
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn input_err(msg: impl Into<String>) -> Failure {
    Failure::Input(msg.into())
}

/// Reads the input document named by the options.
pub fn read_input(cli: &Cli) -> std::result::Result<String, String> {
    if let Some(j) = &cli.json {
        return Ok(j.clone());
    }
    if let Some(p) = &cli.input {
        return std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()));
    }
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| format!("cannot read stdin: {e}"))?;
    Ok(s)
}

/// Runs a command on the given input text.
pub fn run(cli: &Cli, text: &str) -> Outcome {
    let result = serde_json::from_str::<Value>(text)
        .map_err(|e| {
            input_err(format!(
                "malformed JSON at line {} column {}: {e}",
                e.line(),
                e.column()
            ))
        })
        .and_then(|v| match cli.backend {
            Backend::Exact => dispatch::<Rational>(cli, &v),
            Backend::Float => dispatch::<C64>(cli, &v),
        });
    match result {
        Ok((output, true)) => Outcome { status: 0, output },
        Ok((output, false)) => Outcome { status: 1, output },
        Err(Failure::Check(output)) => Outcome { status: 1, output },
        Err(Failure::Input(msg)) => Outcome {
            status: 2,
            output: json!({ "error": msg }),
        },
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Res<&'a Value> {
    v.get(key).ok_or_else(|| input_err(format!("missing field \"{key}\"")))
}

fn text_field<'a>(v: &'a Value, key: &str) -> Res<&'a str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| input_err(format!("field \"{key}\" must be a string")))
}

fn usize_field(v: &Value, key: &str) -> Res<usize> {
    field(v, key)?
        .as_u64()
        .map(|n| n as usize)
        .ok_or_else(|| input_err(format!("field \"{key}\" must be a non-negative integer")))
}

fn scalar(v: &Value) -> Res<Rational> {
    match v {
        Value::String(s) => Ok(parse_rational(s)?),
        Value::Number(n) => n
            .as_i64()
            .map(|i| Rational::from_integer(i.into()))
            .ok_or_else(|| input_err(format!("number {n} is not an integer; use a string such as \"1/3\""))),
        other => Err(input_err(format!("expected a scalar, found {other}"))),
    }
}

fn triple(v: &Value, key: &str) -> Res<[Rational; 3]> {
    let arr = field(v, key)?
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| input_err(format!("field \"{key}\" must be an array of 3 scalars")))?;
    Ok([scalar(&arr[0])?, scalar(&arr[1])?, scalar(&arr[2])?])
}

fn lift<T: Field>(c: &Rational) -> T {
    T::from_rational(c)
}

fn detrep<T: Field>(v: &Value) -> Res<DetRep<T>> {
    let doc = v.get("detrep").unwrap_or(v);
    let rep: DetRep<Rational> =
        serde_json::from_value(doc.clone()).map_err(|e| input_err(format!("invalid detrep: {e}")))?;
    Ok(rep.map(lift::<T>)?)
}

fn uni_pair(v: &Value, keys: &[&str]) -> Res<Vec<UniPoly<Rational>>> {
    let declared = v.get("degree").and_then(Value::as_u64).map(|d| d as usize);
    let parsed = keys
        .iter()
        .map(|k| Ok(UniPoly::parse(text_field(v, k)?, declared)?))
        .collect::<Res<Vec<_>>>()?;
    let n = parsed.iter().map(UniPoly::degree).max().unwrap_or(0);
    Ok(parsed
        .into_iter()
        .map(|p| p.with_degree(n))
        .collect::<crate::Result<_>>()?)
}

fn hom<T: Field>(v: &Value, key: &str) -> Res<HomPoly3<T>> {
    Ok(HomPoly3::parse(text_field(v, key)?)?.map(lift::<T>))
}

fn point<T: Field>(v: &Value, key: &str) -> Res<CurvePoint<T>> {
    Ok(CurvePoint::new(triple(v, key)?.map(|c| lift::<T>(&c)))?)
}

fn parse_map<T: Field>(v: &Value) -> Res<RationalMap<T>> {
    let forms = [hom::<T>(v, "p0")?, hom(v, "p1")?, hom(v, "p2")?];
    let mut basepoints = Vec::new();
    if let Some(list) = v.get("basepoints") {
        let list = list
            .as_array()
            .ok_or_else(|| input_err("\"basepoints\" must be an array"))?;
        for b in list {
            basepoints.push(point::<T>(&json!({ "b": b }), "b")?);
        }
    }
    Ok(RationalMap::new(forms, basepoints)?)
}

fn mat<T: Field>(m: &Matrix<T>) -> Value {
    json!(m.to_text_rows())
}

fn vec_text<T: Field>(v: &[T]) -> Value {
    json!(v.iter().map(Field::to_text).collect::<Vec<_>>())
}

fn dispatch<T: Field>(cli: &Cli, v: &Value) -> Res<(Value, bool)> {
    match cli.command {
        Command::Resultant => {
            let ps = uni_pair(v, &["p", "q"])?;
            let (p, q) = (ps[0].map(lift::<T>), ps[1].map(lift::<T>));
            Ok((json!({ "resultant": classical::resultant(&p, &q)?.to_text() }), true))
        }
        Command::Bezout => {
            let ps = uni_pair(v, &["p", "q"])?;
            let b = classical::bezout(&ps[0].map(lift::<T>), &ps[1].map(lift::<T>))?;
            Ok((json!({ "bezout": mat(&b) }), true))
        }
        Command::Sylvester => {
            let ps = uni_pair(v, &["p", "q"])?;
            let s = classical::sylvester(&ps[0].map(lift::<T>), &ps[1].map(lift::<T>))?;
            Ok((json!({ "sylvester": mat(&s) }), true))
        }
        Command::KravitskyCheck => {
            let ps: Vec<UniPoly<T>> = uni_pair(v, &["p", "q", "f", "g"])?
                .iter()
                .map(|p| p.map(lift::<T>))
                .collect();
            let holds = classical::kravitsky_check(&ps[0], &ps[1], &ps[2], &ps[3])?;
            Ok((json!({ "holds": holds }), holds))
        }
        Command::LineImage => {
            let declared = v.get("degree").and_then(Value::as_u64).map(|d| d as usize);
            let mut forms = Vec::new();
            for k in ["p0", "p1", "p2"] {
                forms.push(UniPoly::parse_binary(text_field(v, k)?, declared)?.map(lift::<T>));
            }
            let forms: [UniPoly<T>; 3] = forms.try_into().expect("three forms");
            let m = classical::line_image_pencil(&forms)?;
            let det = crate::detrep::pencil_det_poly(&m);
            Ok((
                json!({ "M0": mat(&m[0]), "M1": mat(&m[1]), "M2": mat(&m[2]), "det": det_text(&det) }),
                true,
            ))
        }
        Command::Detpoly => {
            let rep = detrep::<T>(v)?;
            Ok((json!({ "det": det_text(rep.det_poly()) }), true))
        }
        Command::ValidateRep => {
            let rep = detrep::<T>(v)?;
            let findings = if T::EXACT {
                detrep::<Rational>(v)?.reducibility_findings()
            } else {
                Vec::new()
            };
            Ok((
                json!({
                    "valid": true,
                    "m": rep.m(),
                    "hermitian": rep.is_hermitian(),
                    "det": det_text(rep.det_poly()),
                    "findings": findings,
                }),
                true,
            ))
        }
        Command::KernelAt => {
            let rep = detrep::<T>(v)?;
            let pk = rep.kernel_at(&point::<T>(v, "point")?)?;
            let kernel: Vec<Value> = pk.kernel.iter().map(|k| vec_text(k)).collect();
            Ok((
                json!({ "point": vec_text(pk.x()), "e": vec_text(&pk.e), "kernel": kernel }),
                true,
            ))
        }
        Command::PrincipalDim => {
            let ce = CurveElim::new(detrep::<T>(v)?);
            let n = usize_field(v, "n")?;
            let expected = n * ce.m();
            let dim = match ce.principal_subspace(n) {
                Ok(s) => s.basis.dim(),
                Err(Error::TheoremViolation(_)) => ce.principal_constraints(n).kernel_basis().dim(),
                Err(e) => return Err(e.into()),
            };
            Ok((json!({ "dim": dim, "expected": expected }), dim == expected))
        }
        Command::CurveCount => {
            let ce = CurveElim::new(detrep::<T>(v)?);
            let c = ce.curve_count(&hom(v, "p")?, &hom(v, "q")?)?;
            Ok((
                json!({
                    "n": c.n,
                    "m": c.m,
                    "sylvester_count": c.sylvester_count,
                    "bezout_count": c.bezout_count,
                    "agree": c.agree(),
                }),
                c.agree(),
            ))
        }
        Command::PairingCheck => {
            let ce = CurveElim::new(detrep::<T>(v)?);
            let a = ce.rep().kernel_at(&point::<T>(v, "x")?)?;
            let b = ce.rep().kernel_at(&point::<T>(v, "y")?)?;
            pairing_report(&ce, &a, &b)
        }
        Command::GenKravitskyCheck => {
            let ce = CurveElim::new(detrep::<T>(v)?);
            let holds = ce.generalized_kravitsky_check(&hom(v, "p")?, &hom(v, "q")?, &hom(v, "f")?, &hom(v, "g")?)?;
            Ok((json!({ "holds": holds }), holds))
        }
        Command::ImageCurve => {
            let ce = CurveElim::new(detrep::<T>(v)?);
            let r = parse_map::<T>(field(v, "map")?)?;
            let ip = rational_map::image_pencil(&ce, &r)?;
            let lines = v.get("samples").and_then(Value::as_u64).unwrap_or(10) as usize;
            let report = if T::EXACT {
                let ce_q = CurveElim::new(detrep::<Rational>(v)?);
                let r_q = parse_map::<Rational>(field(v, "map")?)?;
                let ip_q = rational_map::image_pencil(&ce_q, &r_q)?;
                rational_map::verify_image(&ce_q, &ip_q, lines, cli.seed, cli.tol)
            } else {
                rational_map::verify_image_float(&ce, &ip, lines, cli.seed, cli.tol)
            };
            let m = ip.matrices();
            let passed = report.passed;
            Ok((
                json!({
                    "size": ip.size(),
                    "M0": mat(&m[0]),
                    "M1": mat(&m[1]),
                    "M2": mat(&m[2]),
                    "det": det_text(ip.det_poly()),
                    "report": report,
                }),
                passed,
            ))
        }
        Command::ComposeCheck => {
            let ce = CurveElim::new(detrep::<T>(v)?);
            let r = parse_map::<T>(field(v, "r")?)?;
            let s = parse_map::<T>(field(v, "s")?)?;
            let with_tau = v.get("tau").and_then(Value::as_bool).unwrap_or(true);
            let rep = rational_map::compose_check(&ce, &r, &s, with_tau)?;
            Ok((
                json!({
                    "proportional": rep.proportional(),
                    "scale": rep.scale.as_ref().map(Field::to_text),
                    "tau_identity": rep.tau_identity,
                    "det_direct": det_text(&rep.det_direct),
                    "det_via_image": det_text(&rep.det_via_image),
                }),
                rep.passed(),
            ))
        }
    }
}

fn pairing_report<T: Field>(
    ce: &CurveElim<T>,
    a: &crate::detrep::PointWithKernel<T>,
    b: &crate::detrep::PointWithKernel<T>,
) -> Res<(Value, bool)> {
    use crate::curve::{common_value, pairing_expressions, PairingConvention};
    let terms = pairing_expressions(ce.rep(), a, b, PairingConvention::CrossProduct)?;
    let listed: Vec<Value> = terms
        .iter()
        .map(|t| json!({ "numerator": t.numerator.to_text(), "denominator": t.denominator.to_text() }))
        .collect();
    match common_value(&terms) {
        Ok(val) => Ok((json!({ "value": val.to_text(), "terms": listed, "agree": true }), true)),
        Err(Error::DisagreementDetected(msg)) => Ok((json!({ "agree": false, "terms": listed, "error": msg }), false)),
        Err(e) => Err(e.into()),
    }
}

fn det_text<T: Field>(p: &HomPoly3<T>) -> String {
    p.to_string()
}
