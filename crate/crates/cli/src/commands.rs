//! One function per subcommand. Each returns the output document plus the
//! exit status it implies; printing is left to `main`.

use std::io::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Number, Value};

use onesided::cf::{cf_expand, convergents, CfExpansion, Periodicity};
use onesided::classify::{
    brute_force_oracle, classify, ClassificationResult, Finiteness, Query, Side,
};
use onesided::numeric::QuadraticSurd;
use onesided::spectral::{classify_gaps, Family, GapReport, LatticeParams};
use onesided::Error;

use crate::alpha::AlphaSpec;
use crate::render;

pub const SCHEMA: &str = "1";

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const MISMATCH: i32 = 3;
    pub const EXACTNESS: i32 = 4;
    pub const BOUNDARY: i32 = 5;
}

/// Exit status for a library error.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::ExactnessRequired | Error::FloorUndecided(_) | Error::Undecided(_) => {
            exit::EXACTNESS
        }
        Error::BoundaryUndecided(_) => exit::BOUNDARY,
        Error::InvalidArgument(_)
        | Error::InvalidTerm { .. }
        | Error::EmptyExpansion
        | Error::ZeroDenominator
        | Error::NegativeDiscriminant
        | Error::MixedRadicand(..) => exit::PARSE,
        _ => exit::FAILURE,
    }
}

pub struct Outcome {
    pub document: Value,
    pub code: i32,
    /// Explanation printed to stderr when `code` is not zero.
    pub note: Option<String>,
}

pub struct Settings {
    pub digits: u32,
    pub precision_bits: u32,
    pub pretty: bool,
}

fn int(n: &BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("integer literal"))
}

fn periodicity_json(cf: &CfExpansion) -> Value {
    match cf.periodicity() {
        Periodicity::Finite { last } => json!({ "type": "finite", "last_index": last }),
        Periodicity::Periodic { preperiod, period } => {
            json!({ "type": "periodic", "preperiod": preperiod, "period": period })
        }
        Periodicity::Unknown => json!({ "type": "unknown" }),
    }
}

fn finiteness_json(f: &Finiteness) -> Value {
    match f {
        Finiteness::ProvenFinite { count } => json!({
            "status": "proven_finite",
            "count": count.as_ref().map(int),
        }),
        Finiteness::ProvenInfinite => json!({ "status": "proven_infinite" }),
        Finiteness::UnknownBeyond(q) => json!({ "status": "unknown_beyond", "q": q }),
        Finiteness::Unknown => json!({ "status": "unknown" }),
    }
}

fn exact_string(s: &QuadraticSurd) -> String {
    s.to_string()
}

fn result_json(res: &ClassificationResult, digits: u32) -> Value {
    let members: Vec<Value> = res
        .members
        .iter()
        .map(|m| {
            json!({
                "p": int(&m.fraction.p),
                "q": int(&m.fraction.q),
                "origin": m.fraction.origin.to_string(),
                "witness": m.witness.to_string(),
                "weighted_error": render::real(&m.weighted_error, digits),
                "weighted_error_exact": m.weighted_error.exact().map(exact_string),
            })
        })
        .collect();
    json!({
        "side": res.side.to_string(),
        "members": members,
        "finiteness": finiteness_json(&res.finiteness),
        "exhaustive": res.exhaustive,
        "diagnostics": res.diagnostics,
    })
}

const PREFIX_TERMS: usize = 20;

pub fn expand(
    spec_text: &str,
    spec: &AlphaSpec,
    terms: usize,
    settings: &Settings,
) -> Result<Outcome, Error> {
    let cf = cf_expand(spec.source())?;
    let shown = cf.prefix_strings(terms);
    let mut diagnostics = Vec::new();
    if shown.len() < terms && cf.is_stream() {
        diagnostics.push(format!(
            "only {} terms are fixed by the input precision",
            shown.len()
        ));
    }
    if cf.was_normalized() {
        diagnostics.push("trailing term 1 folded into its predecessor".to_string());
    }
    let table = convergents(&cf, shown.len().saturating_sub(1));
    let rows: Vec<Value> = table.rows()[1..]
        .iter()
        .map(|r| {
            json!({
                "n": r.n,
                "p": int(&r.p),
                "q": int(&r.q),
                "residue": int(&table.determinant(r.n).expect("n >= 0")),
            })
        })
        .collect();
    let document = json!({
        "schema": SCHEMA,
        "command": "expand",
        "alpha": spec_text,
        "cf_prefix": shown.iter().map(|t| int(&t.parse().expect("integer"))).collect::<Vec<_>>(),
        "periodicity": periodicity_json(&cf),
        "value": cf.exact_value().map(|v| exact_string(&v)),
        "value_decimal": cf.exact_value().map(|v| render::surd(&v, settings.digits)),
        "convergents": rows,
        "diagnostics": diagnostics,
    });
    if settings.pretty {
        let mut err = std::io::stderr().lock();
        let _ = writeln!(err, "{spec_text} = [{}]", join_cf(&shown));
        let _ = writeln!(
            err,
            "{:>4}  {:>24}  {:>24}  {:>3}",
            "n", "p_n", "q_n", "det"
        );
        for r in &table.rows()[1..] {
            let det = table.determinant(r.n).expect("n >= 0");
            let _ = writeln!(err, "{:>4}  {:>24}  {:>24}  {:>3}", r.n, r.p, r.q, det);
        }
    }
    Ok(Outcome {
        document,
        code: exit::OK,
        note: None,
    })
}

fn join_cf(terms: &[String]) -> String {
    match terms.split_first() {
        Some((a0, rest)) if !rest.is_empty() => format!("{a0}; {}", rest.join(", ")),
        Some((a0, _)) => a0.clone(),
        None => String::new(),
    }
}

pub struct ClassifyRequest<'a> {
    pub spec_text: &'a str,
    pub spec: &'a AlphaSpec,
    pub kind: u32,
    pub sides: Vec<Side>,
    pub q_max: u64,
    pub check: bool,
    /// Run the definition scan instead of the enumerators.
    pub oracle_only: bool,
}

pub fn classify_cmd(req: &ClassifyRequest, settings: &Settings) -> Result<Outcome, Error> {
    let cf = cf_expand(req.spec.source())?;
    if (req.check || req.oracle_only) && cf.exact_value().is_none() {
        return Err(Error::ExactnessRequired);
    }
    let mut results = Vec::new();
    let mut code = exit::OK;
    let mut note = None;
    for &side in &req.sides {
        let query = Query::new(&cf, req.kind, side, req.q_max)?;
        let res = if req.oracle_only {
            brute_force_oracle(&query)?
        } else {
            classify(&query)?
        };
        let mut entry = result_json(&res, settings.digits);
        if req.check {
            let oracle = brute_force_oracle(&query)?;
            let mismatch = first_mismatch(&res, &oracle);
            entry["check"] = json!({
                "oracle_members": oracle.members.len(),
                "agree": mismatch.is_none(),
            });
            if let Some(m) = mismatch {
                code = exit::MISMATCH;
                note = Some(format!(
                    "{side}: enumerator and definition scan disagree ({m})"
                ));
            }
        }
        if !res.exhaustive && code == exit::OK {
            code = exit::EXACTNESS;
            note = Some(format!(
                "{side}: the input does not fix enough terms to reach q_max; members past the point named in the diagnostics are unknown"
            ));
        }
        if settings.pretty {
            pretty_members(&res, settings.digits);
        }
        results.push(entry);
    }
    let document = json!({
        "schema": SCHEMA,
        "command": if req.oracle_only { "oracle" } else { "classify" },
        "alpha": req.spec_text,
        "cf_prefix": cf.prefix_strings(PREFIX_TERMS).iter().map(|t| int(&t.parse().expect("integer"))).collect::<Vec<_>>(),
        "periodicity": periodicity_json(&cf),
        "kind": req.kind,
        "q_max": req.q_max,
        "results": results,
    });
    Ok(Outcome {
        document,
        code,
        note,
    })
}

/// Where two member lists part ways, if they do.
fn first_mismatch(found: &ClassificationResult, oracle: &ClassificationResult) -> Option<String> {
    let (a, b) = (found.fractions(), oracle.fractions());
    if a == b {
        return None;
    }
    let show = |x: Option<&(BigInt, BigInt)>| match x {
        Some((p, q)) => format!("{p}/{q}"),
        None => "nothing".to_string(),
    };
    let i = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
    Some(format!(
        "entry {}: enumerator has {}, definition scan has {}",
        i + 1,
        show(a.get(i)),
        show(b.get(i))
    ))
}

fn pretty_members(res: &ClassificationResult, digits: u32) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(
        err,
        "{} approximations of kind {} with q <= {} ({})",
        res.side, res.kind, res.q_max, res.finiteness
    );
    for m in &res.members {
        let _ = writeln!(
            err,
            "  {:>24}  {:<28}  {}",
            m.fraction.to_string(),
            m.fraction.origin.to_string(),
            render::real(&m.weighted_error, digits)
        );
    }
    for d in &res.diagnostics {
        let _ = writeln!(err, "  note: {d}");
    }
}

/// An exact positive value for a lattice parameter.
pub fn exact_of(spec: &AlphaSpec) -> Result<QuadraticSurd, Error> {
    match spec {
        AlphaSpec::Rational(r) => Ok(QuadraticSurd::from_rational(r)),
        AlphaSpec::Surd(s) => Ok(s.clone()),
        AlphaSpec::Cf { .. } => cf_expand(spec.source())?
            .exact_value()
            .ok_or(Error::ExactnessRequired),
        AlphaSpec::Decimal { .. } => Err(Error::ExactnessRequired),
    }
}

pub struct GapsRequest<'a> {
    pub a_text: &'a str,
    pub b_text: &'a str,
    pub u_text: &'a str,
    pub a: QuadraticSurd,
    pub b: QuadraticSurd,
    pub u: BigRational,
    pub m_max: u64,
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::A => "A",
        Family::B => "B",
    }
}

pub fn gaps(req: &GapsRequest, settings: &Settings) -> Result<Outcome, Error> {
    let params = LatticeParams::new(
        req.a.clone(),
        req.b.clone(),
        QuadraticSurd::from_rational(&req.u),
    )?;
    let report = classify_gaps(&params, req.m_max, settings.precision_bits)?;
    let digits = settings.digits;
    let threshold = |l: &Option<QuadraticSurd>| {
        l.as_ref()
            .map(|l| json!({ "exact": exact_string(l), "decimal": render::surd(l, digits) }))
    };
    let solutions: Vec<Value> = report
        .solutions
        .iter()
        .map(|s| {
            json!({
                "m": s.m,
                "family": family_name(s.family),
                "value": render::interval(&s.value, digits),
            })
        })
        .collect();
    let undecided: Vec<Value> = report
        .undecided
        .iter()
        .map(|(m, f)| json!({ "m": m, "family": family_name(*f) }))
        .collect();
    let document = json!({
        "schema": SCHEMA,
        "command": "gaps",
        "a": req.a_text,
        "b": req.b_text,
        "u": req.u_text,
        "theta": exact_string(&params.theta()?),
        "m_max": req.m_max,
        "classification": report.classification.to_string(),
        "thresholds": { "L_a": threshold(&report.thresholds.0), "L_b": threshold(&report.thresholds.1) },
        "rho": {
            "a": render::interval(&report.rho.0, digits),
            "b": render::interval(&report.rho.1, digits),
        },
        "precision_bits": settings.precision_bits,
        "solution_count": report.solutions.len(),
        "solutions": solutions,
        "undecided": undecided,
        "diagnostics": report.diagnostics,
    });
    if settings.pretty {
        pretty_gaps(&report, digits);
    }
    let (code, note) = if report.undecided.is_empty() {
        (exit::OK, None)
    } else {
        (
            exit::BOUNDARY,
            Some(format!(
                "{} conditions stayed undecided at {} bits",
                report.undecided.len(),
                settings.precision_bits
            )),
        )
    };
    Ok(Outcome {
        document,
        code,
        note,
    })
}

fn pretty_gaps(report: &GapReport, digits: u32) {
    let mut err = std::io::stderr().lock();
    let _ = writeln!(err, "classification: {}", report.classification);
    let _ = writeln!(
        err,
        "{:>10}  {:>6}  (2m/pi) tan(pi/2 {{m theta}})",
        "m", "family"
    );
    for s in &report.solutions {
        let _ = writeln!(
            err,
            "{:>10}  {:>6}  {}",
            s.m,
            family_name(s.family),
            render::interval(&s.value, digits)
        );
    }
}
