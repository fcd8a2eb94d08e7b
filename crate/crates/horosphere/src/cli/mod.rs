//! Command-line interface: parse a JSON problem description, dispatch the
//! requested analysis, and emit a report (JSON by default, `--text` for a
//! plain summary). Exit codes: 0 ok, 1 error, 2 mathematically undecided.

pub mod problem;
pub mod report;

use crate::error::{Error, Result};
use crate::fan::{DivisorialFan, GermKind};
use crate::geometry::{
    canonical_divisor, class_group, class_group_tvariety, divisor_class, is_cartier, is_factorial,
    is_log_terminal, is_q_gorenstein, is_smooth, has_rational_singularities, pl_to_divisor,
    CartierStatus, PLFunction, SmoothStatus,
};
use crate::lattice::Int;
use crate::pdiv::CurveQDivisor;
use crate::rootdata::HorosphericalDatum;
use clap::Parser;
use num::ToPrimitive;
use problem::{divisor_to_spec, fan_to_specs, DivisorFile, ProblemFile};
use report::{Report, ReportStatus};
use serde_json::{json, Value};
use std::path::PathBuf;

const COMMANDS: [&str; 13] = [
    "validate", "germs", "proper", "rational", "smooth", "classgroup", "factorial", "canonical",
    "cartier", "gorenstein", "logterminal", "resolve", "analyze",
];

#[derive(Parser, Debug)]
#[command(name = "horosphere", version, about = "Analyze horospherical varieties of complexity one given by colored divisorial fans")]
struct Cli {
    /// Analysis to run.
    #[arg(value_parser = COMMANDS)]
    command: String,
    /// Problem file (JSON).
    file: PathBuf,
    /// B-stable divisor file (required by `cartier`).
    divisor: Option<PathBuf>,
    /// Emit the report as JSON (default).
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit the report as a plain-text summary.
    #[arg(long)]
    text: bool,
    /// Curve divisor file to use as the canonical class K_C.
    #[arg(long)]
    canonical: Option<PathBuf>,
}

fn log_enabled() -> bool {
    std::env::var("HOROSPHERE_LOG").map(|v| !v.is_empty() && v != "0").unwrap_or(false)
}

macro_rules! vlog {
    ($($arg:tt)*) => {
        if log_enabled() {
            eprintln!("[horosphere] {}", format!($($arg)*));
        }
    };
}

pub fn run_cli() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let report = dispatch(&cli).unwrap_or_else(|e| Report::error(&cli.command, e.to_string()));
    if cli.text {
        print!("{}", report.to_text());
    } else {
        println!("{}", report.to_json());
    }
    report.exit_code()
}

fn dispatch(cli: &Cli) -> Result<Report> {
    vlog!("reading problem file {}", cli.file.display());
    let file = ProblemFile::from_path(&cli.file)?;
    let datum = file.datum()?;
    let fan = file.fan(&datum)?;
    fan.validate()?;
    vlog!("problem parsed: {} item(s), rank {}", fan.items.len(), fan.rank());
    let mut report = Report::new(&cli.command);
    match cli.command.as_str() {
        "validate" => cmd_validate(&mut report, &file, &datum, &fan)?,
        "germs" => cmd_germs(&mut report, &fan)?,
        "proper" => cmd_proper(&mut report, &fan)?,
        "rational" => cmd_rational(&mut report, &fan)?,
        "smooth" => cmd_smooth(&mut report, &datum, &fan)?,
        "classgroup" => cmd_classgroup(&mut report, &datum, &fan)?,
        "factorial" => cmd_factorial(&mut report, &datum, &fan)?,
        "canonical" => cmd_canonical(&mut report, &datum, &fan, &canonical_choice(cli, &file)?)?,
        "cartier" => {
            let path = cli.divisor.as_ref().ok_or_else(|| {
                Error::InvalidInput("cartier: a B-stable divisor file is required".into())
            })?;
            cmd_cartier(&mut report, &datum, &fan, &DivisorFile::from_path(path)?)?
        }
        "gorenstein" => cmd_gorenstein(&mut report, &datum, &fan)?,
        "logterminal" => cmd_logterminal(&mut report, &datum, &fan)?,
        "resolve" => cmd_resolve(&mut report, &datum, &fan)?,
        "analyze" => cmd_analyze(&mut report, &datum, &fan, &canonical_choice(cli, &file)?)?,
        other => return Err(Error::InvalidInput(format!("unknown command '{other}'"))),
    }
    Ok(report)
}

fn canonical_choice(cli: &Cli, file: &ProblemFile) -> Result<Option<CurveQDivisor>> {
    if let Some(path) = &cli.canonical {
        let text = std::fs::read_to_string(path)?;
        let spec: Vec<problem::CurveCoeffSpec> = serde_json::from_str(&text)?;
        return Ok(Some(problem::curve_divisor(&spec)?));
    }
    file.canonical_choice()
}

fn cmd_validate(
    report: &mut Report,
    file: &ProblemFile,
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
) -> Result<()> {
    report.set("valid", true);
    report.set("items", fan.items.len());
    report.set("rank", fan.rank());
    report.set("curve", format!("{:?}", fan.curve_kind()));
    report.set(
        "colors",
        Value::Array(datum.colors().into_iter().map(|c| Value::String(c.label)).collect()),
    );
    report.set("commands_requested", json!(file.options.commands));
    Ok(())
}

fn cmd_germs(report: &mut Report, fan: &DivisorialFan) -> Result<()> {
    let germs = fan.enumerate_germs()?;
    let rows: Vec<Value> = germs
        .iter()
        .map(|g| {
            json!({
                "kind": match &g.kind {
                    GermKind::Horizontal => "horizontal".to_string(),
                    GermKind::VerticalSpecial(z) => format!("vertical({z})"),
                    GermKind::VerticalGeneric => "vertical(generic)".to_string(),
                    GermKind::Hyper => "hyper".to_string(),
                },
                "rays": g.cone.as_ref().map(|c| rays_value(c.rays())),
                "colors": g.colors.iter().map(|c| c.label.clone()).collect::<Vec<_>>(),
                "owners": g.owners,
                "divisorial": g.is_divisorial,
            })
        })
        .collect();
    report.set("count", germs.len());
    report.set("germs", Value::Array(rows));
    Ok(())
}

fn cmd_proper(report: &mut Report, fan: &DivisorialFan) -> Result<()> {
    let mut all = true;
    let mut rows = Vec::new();
    for (i, item) in fan.items.iter().enumerate() {
        let p = item.is_proper()?;
        all &= p.proper;
        if p.assumed_principal {
            report.warn(format!("item {i}: principality assumed (degree check only)"));
        }
        rows.push(json!({
            "item": i,
            "proper": p.proper,
            "reason": p.reason,
            "assumed_principal": p.assumed_principal,
        }));
    }
    report.set("proper", all);
    report.set("items", Value::Array(rows));
    Ok(())
}

fn cmd_rational(report: &mut Report, fan: &DivisorialFan) -> Result<()> {
    let mut all = true;
    let mut rows = Vec::new();
    for (i, item) in fan.items.iter().enumerate() {
        let r = has_rational_singularities(item)?;
        all &= r;
        rows.push(json!({ "item": i, "rational": r }));
    }
    report.set("rational", all);
    report.set("items", Value::Array(rows));
    Ok(())
}

fn cmd_smooth(report: &mut Report, datum: &HorosphericalDatum, fan: &DivisorialFan) -> Result<()> {
    match is_smooth(datum, fan)? {
        SmoothStatus::Smooth => report.set("smooth", true),
        SmoothStatus::NotSmooth(reason) => {
            report.set("smooth", false);
            report.set("reason", reason);
        }
        SmoothStatus::Undecided(reason) => {
            report.status = ReportStatus::Undecided;
            report.set("smooth", "undecided");
            report.set("reason", reason);
        }
    }
    Ok(())
}

fn cmd_classgroup(
    report: &mut Report,
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
) -> Result<()> {
    let cl = class_group(datum, fan)?;
    report.set("class_group", cl.describe());
    report.set("free_rank", cl.free_rank);
    report.set("invariant_factors", ints_value(&cl.invariant_factors));
    report.set("generators", json!(cl.generator_labels));
    if fan.items.len() == 1 {
        report.set("class_group_tvariety", class_group_tvariety(&fan.items[0])?.describe());
    }
    Ok(())
}

fn cmd_factorial(
    report: &mut Report,
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
) -> Result<()> {
    let f = is_factorial(datum, fan)?;
    report.set("factorial", f.factorial);
    report.set("class_group", f.class_group.describe());
    report.set("condition_i", json!(f.condition_i));
    report.set("condition_ii", json!(f.condition_ii));
    Ok(())
}

fn cmd_canonical(
    report: &mut Report,
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
    k_c: &Option<CurveQDivisor>,
) -> Result<()> {
    let k = canonical_divisor(datum, fan, k_c.as_ref())?;
    if k.moved_default {
        report.warn("default K_C representative moved off a special point");
    }
    report.set("canonical", json!(divisor_to_spec(&k.divisor, datum)));
    report.set(
        "k_c",
        Value::Array(
            k.k_c
                .iter()
                .map(|(z, c)| json!({ "point": z.to_string(), "coeff": c.to_string() }))
                .collect(),
        ),
    );
    report.set("moved_default", k.moved_default);
    Ok(())
}

fn cmd_cartier(
    report: &mut Report,
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
    file: &DivisorFile,
) -> Result<()> {
    let d = file.to_divisor(datum)?;
    let (coords, pres) = divisor_class(datum, fan, &d)?;
    report.set("class", ints_value(&pres.reduce_class(&coords)));
    report.set("class_group", pres.describe());
    match is_cartier(datum, fan, &d)? {
        CartierStatus::Cartier(theta) => {
            report.set("cartier", true);
            report.set("theta", pl_value(&theta, datum));
            let back = pl_to_divisor(datum, fan, &theta)?;
            report.set("roundtrip_ok", back == d);
        }
        CartierStatus::NotCartier(reason) => {
            report.set("cartier", false);
            report.set("reason", reason);
        }
    }
    Ok(())
}

fn cmd_gorenstein(
    report: &mut Report,
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
) -> Result<()> {
    match is_q_gorenstein(datum, fan)? {
        Some(g) => {
            if g.moved_default {
                report.warn("default K_C representative moved off a special point");
            }
            report.set("q_gorenstein", true);
            report.set("gorenstein_index", int_value(&g.index));
            report.set("theta", pl_value(&g.theta, datum));
        }
        None => {
            report.set("q_gorenstein", false);
            report.set("gorenstein_index", Value::Null);
        }
    }
    Ok(())
}

fn cmd_logterminal(
    report: &mut Report,
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
) -> Result<()> {
    let mut all = true;
    let mut rows = Vec::new();
    for (i, item) in fan.items.iter().enumerate() {
        let lt = is_log_terminal(datum, item)?;
        all &= lt;
        rows.push(json!({ "item": i, "log_terminal": lt }));
    }
    report.set("log_terminal", all);
    report.set("items", Value::Array(rows));
    Ok(())
}

fn cmd_resolve(report: &mut Report, datum: &HorosphericalDatum, fan: &DivisorialFan) -> Result<()> {
    let res = fan.resolve()?;
    report.set("fan", json!(fan_to_specs(&res.fan)));
    report.set(
        "exceptional_rays",
        Value::Array(res.exceptional_rays.iter().map(|r| ints_value(r)).collect()),
    );
    report.set(
        "exceptional_vertices",
        Value::Array(
            res.exceptional_vertices
                .iter()
                .map(|vd| {
                    json!({
                        "point": vd.point.to_string(),
                        "v": vd.v.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "mu": int_value(&vd.mu),
                    })
                })
                .collect(),
        ),
    );
    report.set("decolored_germs", res.decolored_germs.len());
    match is_smooth(datum, &res.fan)? {
        SmoothStatus::Smooth => report.set("smooth", true),
        SmoothStatus::NotSmooth(reason) => {
            report.set("smooth", false);
            report.set("reason", reason);
        }
        SmoothStatus::Undecided(reason) => {
            report.status = ReportStatus::Undecided;
            report.set("smooth", "undecided");
            report.set("reason", reason);
        }
    }
    Ok(())
}

fn cmd_analyze(
    report: &mut Report,
    datum: &HorosphericalDatum,
    fan: &DivisorialFan,
    k_c: &Option<CurveQDivisor>,
) -> Result<()> {
    let mut proper = true;
    for (i, item) in fan.items.iter().enumerate() {
        let p = item.is_proper()?;
        proper &= p.proper;
        if p.assumed_principal {
            report.warn(format!("item {i}: principality assumed (degree check only)"));
        }
    }
    report.set("proper", proper);

    let cl = class_group(datum, fan)?;
    report.set("class_group", cl.describe());
    report.set("factorial", cl.is_trivial());

    let mut rational = true;
    for item in &fan.items {
        rational &= has_rational_singularities(item)?;
    }
    report.set("rational", rational);

    match is_smooth(datum, fan)? {
        SmoothStatus::Smooth => report.set("smooth", true),
        SmoothStatus::NotSmooth(_) => report.set("smooth", false),
        SmoothStatus::Undecided(reason) => {
            report.status = ReportStatus::Undecided;
            report.set("smooth", "undecided");
            report.warn(format!("smoothness undecided: {reason}"));
        }
    }

    match is_q_gorenstein(datum, fan)? {
        Some(g) => {
            report.set("gorenstein_index", int_value(&g.index));
            let mut lt = true;
            for item in &fan.items {
                lt &= is_log_terminal(datum, item)?;
            }
            report.set("log_terminal", lt);
        }
        None => {
            report.set("gorenstein_index", Value::Null);
            report.set("log_terminal", Value::Null);
            report.warn("not Q-Gorenstein; log-terminality undefined");
        }
    }

    let k = canonical_divisor(datum, fan, k_c.as_ref())?;
    if k.moved_default {
        report.warn("default K_C representative moved off a special point");
    }
    report.set("canonical", json!(divisor_to_spec(&k.divisor, datum)));
    Ok(())
}

fn int_value(x: &Int) -> Value {
    match x.to_i64() {
        Some(n) => Value::from(n),
        None => Value::String(x.to_string()),
    }
}

fn ints_value(xs: &[Int]) -> Value {
    Value::Array(xs.iter().map(int_value).collect())
}

fn rays_value(rays: &[Vec<Int>]) -> Value {
    Value::Array(rays.iter().map(|r| ints_value(r)).collect())
}

fn pl_value(theta: &PLFunction, datum: &HorosphericalDatum) -> Value {
    let colors = datum.colors();
    json!({
        "items": theta.items.iter().map(|it| {
            json!({
                "m": ints_value(&it.m),
                "at": it.at.iter().map(|(z, (m, g))| {
                    (z.to_string(), json!({ "m": ints_value(m), "gamma": int_value(g) }))
                }).collect::<std::collections::BTreeMap<_, _>>(),
            })
        }).collect::<Vec<_>>(),
        "r_alpha": theta.r_alpha.iter().map(|(alpha, r)| {
            let label = colors.iter().find(|c| c.alpha == *alpha)
                .map(|c| c.label.clone()).unwrap_or_else(|| format!("alpha{}", alpha + 1));
            (label, int_value(r))
        }).collect::<std::collections::BTreeMap<_, _>>(),
        "assumed_principal": theta.assumed_principal,
    })
}
