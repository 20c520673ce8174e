//! Command-line front end: argument parsing, dispatch and report emission.
//!
//! Every command produces a JSON report. Rationals appear as objects with an
//! exact `"p/q"` string and a 12-digit decimal annotation, and object keys are
//! sorted, so identical inputs give byte-identical output.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DVector;
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::criteria::{check_futaki, check_ke, coercivity, scan_family, CoercivityReport, Positivity, ScanTable, Verdict};
use crate::dhintegrate::degree;
use crate::error::{HoroError, Result};
use crate::linebundle::{AssumptionReport, PolarizedVariety};
use crate::mabuchi_numeric::{
    curvature_average, interior_samples, j_functional, mabuchi, samples_csv, scalar_curvature, Geometry, Preset,
};
use crate::polytope::DualChamberVerdict;
use crate::rational::{decimal12, fmt_q, Q};
use crate::restricted::{classify_restricted_type, colors, restricted_coroot, ColorOrigin, HorosymmetricDatum};

/// Exit code used for every error (configuration, I/O or computation).
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Ample,
    Volume,
    Coercivity,
    Ke,
    Futaki,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print the derived horosymmetric datum.
    Describe,
    /// Evaluate one criterion; the exit code encodes the verdict.
    Check {
        #[arg(value_enum)]
        which: CheckKind,
    },
    /// Coercivity verdicts along the configured parameter family.
    Scan,
    /// Scalar curvature samples of the configured potential.
    Curvature,
    /// Mabuchi and J functionals of the configured potential.
    Mabuchi,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "horokit", version, about = "Exact criteria for horosymmetric varieties")]
pub struct Cli {
    /// JSON configuration file.
    #[arg(long, env = "HOROKIT_CONFIG", global = true)]
    pub config: Option<PathBuf>,
    /// Report destination (standard output when omitted).
    #[arg(long, env = "HOROKIT_OUTPUT", global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, env = "HOROKIT_FORMAT", default_value = "json", global = true)]
    pub format: Format,
    /// Size of the worker pool.
    #[arg(long, env = "HOROKIT_THREADS", global = true)]
    pub threads: Option<usize>,
    /// Overrides `numeric.order`.
    #[arg(long, env = "HOROKIT_QUADRATURE_ORDER", global = true)]
    pub quadrature_order: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// A finished report together with its exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Value,
    /// Native CSV rendering, when the command has a natural table.
    pub table: Option<String>,
    /// Diagnostic lines meant for standard error.
    pub notes: Vec<String>,
    pub exit_code: i32,
}

pub fn rat(x: &Q) -> Value {
    json!({ "exact": fmt_q(x), "decimal": decimal12(x) })
}

pub fn rat_vec(v: &[Q]) -> Value {
    json!({
        "exact": v.iter().map(fmt_q).collect::<Vec<_>>(),
        "decimal": v.iter().map(decimal12).collect::<Vec<_>>(),
    })
}

fn rat_list(v: &[Q]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn exact_vec(v: &[Q]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(fmt_q(x))).collect())
}

fn module_of(e: &HoroError) -> &'static str {
    use HoroError::*;
    match e {
        UnsupportedSeries(_) | InvalidRank { .. } | NotARoot(_) | InvalidInvolution(_) | InvalidParabolic(_)
        | LeviNotStable(_) | NoCompatibleBorel => "rootdata",
        RootFixed(_) | UnexpectedPairing { .. } | WeylGroupTooLarge(_) | Lattice(_) => "restricted",
        EmptyRegion | Unbounded(_) | DimensionMismatch { .. } | DegenerateCone(_) | NoSuchFacet(_) => "polytope",
        InvalidPolarization(_) | NoBasePoint | ZeroDenominator(_) => "linebundle",
        NegativeDensity { .. } => "dhintegrate",
        Assumption(_) | NotAnticanonical(_) | NotCentral(_) => "criteria",
        Numeric(_) => "mabuchi_numeric",
        Internal(_) => "internal",
        Config { .. } => "config",
    }
}

pub fn error_report(e: &HoroError) -> Value {
    json!({ "error": { "module": module_of(e), "message": e.to_string() }, "exit_code": EXIT_ERROR })
}

fn verdict_outcome(mut report: Value, verdict: &Verdict) -> Outcome {
    report["verdict"] = Value::String(verdict.as_str().into());
    Outcome { report, table: None, notes: Vec::new(), exit_code: verdict.exit_code() }
}

fn assumptions_json(a: &AssumptionReport) -> Value {
    json!({
        "toroidal": a.toroidal,
        "toroidal_witness": a.toroidal_witness,
        "volume": rat(&a.volume),
        "cone_volume_sum": rat(&a.cone_volume_sum),
        "lambda0": a.lambda0.as_deref().map(rat_vec),
        "wall_multiplicity": a.wall_multiplicity,
        "wall_multiplicity_witness": a.wall_multiplicity_witness,
    })
}

fn chamber_json(d: &DualChamberVerdict) -> Value {
    json!({
        "inside": d.inside,
        "coefficients": d.coefficients.as_deref().map(rat_vec),
        "central_residual": rat_vec(&d.residual),
    })
}

fn positivity_json(p: &Positivity) -> Value {
    match p {
        Positivity::Positive => json!({ "status": "positive" }),
        Positivity::NotPositive { ray, point, value } => {
            json!({ "status": "not-positive", "ray": ray, "point": rat_vec(point), "value": rat(value) })
        }
        Positivity::Inconclusive { ray, cell } => json!({
            "status": "inconclusive",
            "ray": ray,
            "cell": cell.iter().map(|v| exact_vec(v)).collect::<Vec<_>>(),
        }),
    }
}

/// JSON form of a coercivity report.
pub fn coercivity_json(r: &CoercivityReport) -> Value {
    json!({
        "lambda0": rat_vec(&r.lambda0),
        "dimension": r.n,
        "n_y": rat_list(&r.n_y),
        "lambda_y": rat_list(&r.lambda_y),
        "lambda_y_support": rat_list(&r.lambda_y_support),
        "s_bar_theta": rat(&r.s_bar_theta),
        "f_pieces": r.pieces.iter().map(|p| json!({
            "ray": p.ray,
            "constant": rat(&p.constant),
            "residues": rat_list(&p.residues),
        })).collect::<Vec<_>>(),
        "a": rat(&r.a),
        "b": rat(&r.b),
        "moment": rat_vec(&r.moment),
        "f_barycenter": rat_vec(&r.f_barycenter),
        "mu_min": rat(&r.mu_min),
        "test_vector": rat_vec(&r.test_vector),
        "dual_chamber": chamber_json(&r.dual_chamber),
        "f_positive": positivity_json(&r.f_positive),
        "assumptions": assumptions_json(&r.assumptions),
        "verdict": r.verdict.as_str(),
    })
}

fn root_table(d: &HorosymmetricDatum) -> Result<Value> {
    d.phi_s_plus
        .iter()
        .map(|alpha| {
            Ok(json!({
                "root": exact_vec(alpha),
                "restricted_root": exact_vec(&d.pi(alpha)),
                "restricted_coroot": exact_vec(&restricted_coroot(alpha, d)?),
            }))
        })
        .collect::<Result<Vec<_>>>()
        .map(Value::Array)
}

fn describe(cfg: &RunConfig) -> Result<Outcome> {
    let d = cfg.datum()?;
    let ty = classify_restricted_type(&d);
    let color_list: Vec<Value> = colors(&d)
        .iter()
        .map(|c| {
            let origin = match &c.origin {
                ColorOrigin::Fiber(i) => json!({ "fiber": i }),
                ColorOrigin::Flag(alpha) => json!({ "flag": exact_vec(alpha) }),
            };
            json!({ "label": c.label, "image": exact_vec(&c.image), "origin": origin })
        })
        .collect();
    let mut report = json!({
        "group": { "series": cfg.group.series, "rank": cfg.group.rank },
        "involution": cfg.involution.kind,
        "lattice_mode": serde_json::to_value(d.lattice_mode).expect("lattice mode serializes"),
        "restricted_rank": d.rank(),
        "restricted_type": ty.label(),
        "restricted_roots": d.restricted_roots.iter().map(|r| json!({
            "root": exact_vec(&r.root),
            "multiplicity": r.multiplicity,
        })).collect::<Vec<_>>(),
        "simple_restricted_roots": d.simple_restricted_roots.iter().map(|v| exact_vec(v)).collect::<Vec<_>>(),
        "simple_restricted_coroots": d.simple_restricted_coroots.iter().map(|v| exact_vec(v)).collect::<Vec<_>>(),
        "coroot_table": root_table(&d)?,
        "parabolic_roots": d.phi_qu.iter().map(|v| exact_vec(v)).collect::<Vec<_>>(),
        "two_rho_h": exact_vec(&d.two_rho_h),
        "chi_anticanonical": exact_vec(&d.chi_ac),
        "lattice_basis": d.lattice_basis.iter().map(|v| exact_vec(v)).collect::<Vec<_>>(),
        "central_directions": d.central_points().iter().map(|v| exact_vec(v)).collect::<Vec<_>>(),
        "colors": color_list,
    });
    if d.restricted_roots.is_empty() {
        report["notice"] = json!("the restricted root system is empty (horospherical case)");
    }
    match cfg.variety() {
        Ok(pv) => {
            let delta = pv.special_polytope()?;
            report["polarization"] = json!({
                "dimension": pv.dimension(),
                "moment_polytope_vertices": delta.vertices.iter().map(|v| exact_vec(v)).collect::<Vec<_>>(),
                "degree": rat(&degree(&pv)?),
                "ample": pv.is_ample()?.ample,
            });
        }
        Err(e) => report["polarization"] = json!({ "error": e.to_string() }),
    }
    Ok(Outcome { report, table: None, notes: Vec::new(), exit_code: 0 })
}

fn check(cfg: &RunConfig, which: CheckKind) -> Result<Outcome> {
    let pv = cfg.variety()?;
    match which {
        CheckKind::Ample => {
            let a = pv.is_ample()?;
            let v = if a.ample { Verdict::True } else { Verdict::False };
            Ok(verdict_outcome(json!({ "check": "ample", "reasons": a.reasons }), &v))
        }
        CheckKind::Volume => {
            let deg = degree(&pv)?;
            let assumptions = pv.check_assumptions()?;
            let v = if deg > Q::from_integer(0.into()) { Verdict::True } else { Verdict::False };
            let report = json!({ "check": "volume", "degree": rat(&deg), "assumptions": assumptions_json(&assumptions) });
            Ok(verdict_outcome(report, &v))
        }
        CheckKind::Coercivity => {
            let ample = pv.is_ample()?;
            if !ample.ample {
                let report = json!({ "check": "coercivity", "ample": false, "reasons": ample.reasons });
                return Ok(verdict_outcome(report, &Verdict::NotApplicable));
            }
            let r = coercivity(&pv, cfg.numeric.f_depth)?;
            let mut report = coercivity_json(&r);
            report["check"] = json!("coercivity");
            report["ample"] = json!(true);
            Ok(verdict_outcome(report, &r.verdict))
        }
        CheckKind::Ke => {
            let r = check_ke(&pv)?;
            let verdict = if r.criterion_applies { r.verdict.clone() } else { Verdict::Inconclusive };
            let report = json!({
                "check": "ke",
                "barycenter": rat_vec(&r.barycenter),
                "translated_barycenter": rat_vec(&r.translated),
                "dual_chamber": chamber_json(&r.dual_chamber),
                "assumptions": assumptions_json(&r.assumptions),
                "criterion_applies": r.criterion_applies,
                "barycenter_condition": r.verdict.as_str(),
            });
            Ok(verdict_outcome(report, &verdict))
        }
        CheckKind::Futaki => {
            let r = check_futaki(&pv)?;
            let report = json!({
                "check": "futaki",
                "values": r.values.iter().map(|(b, v)| json!({ "direction": exact_vec(b), "value": rat(v) })).collect::<Vec<_>>(),
            });
            Ok(verdict_outcome(report, &r.verdict))
        }
    }
}

fn scan_csv(table: &ScanTable) -> Result<String> {
    let width = |f: fn(&CoercivityReport) -> usize| {
        table.rows.iter().filter_map(|r| r.report.as_ref().ok()).map(f).max().unwrap_or(0)
    };
    let (ny, nb) = (width(|r| r.lambda_y.len()), width(|r| r.f_barycenter.len()));
    let mut header = vec!["parameter".to_string(), "parameter_decimal".into(), "ample".into(), "verdict".into()];
    header.extend((0..ny).map(|i| format!("lambda_y_{i}")));
    header.push("s_bar_theta".into());
    header.extend((0..nb).map(|i| format!("f_barycenter_{i}")));
    header.extend((0..nb).map(|i| format!("test_vector_{i}")));
    header.extend(["f_positive".to_string(), "error".into()]);
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| HoroError::Internal(e.to_string());
    w.write_record(&header).map_err(io)?;
    for row in &table.rows {
        let mut rec = vec![
            fmt_q(&row.parameter),
            decimal12(&row.parameter),
            row.ample.map_or("unknown".into(), |a| a.to_string()),
            row.verdict().as_str().into(),
        ];
        match &row.report {
            Ok(r) => {
                rec.extend(r.lambda_y.iter().map(fmt_q));
                rec.push(fmt_q(&r.s_bar_theta));
                rec.extend(r.f_barycenter.iter().map(fmt_q));
                rec.extend(r.test_vector.iter().map(fmt_q));
                rec.push(positivity_json(&r.f_positive)["status"].as_str().unwrap_or("").into());
                rec.push(String::new());
            }
            Err(e) => {
                rec.extend(std::iter::repeat(String::new()).take(ny + 1 + 2 * nb + 1));
                rec.push(e.clone());
            }
        }
        rec.resize(header.len(), String::new());
        w.write_record(&rec).map_err(io)?;
    }
    String::from_utf8(w.into_inner().map_err(|e| HoroError::Internal(e.to_string()))?)
        .map_err(|e| HoroError::Internal(e.to_string()))
}

fn scan(cfg: &RunConfig) -> Result<Outcome> {
    let values = cfg.scan_values()?;
    cfg.variety()?;
    let table = scan_family(&values, |t| cfg.with_parameter(t)?.variety(), cfg.numeric.f_depth);
    let rows: Vec<Value> = table
        .rows
        .iter()
        .map(|row| {
            let mut v = json!({
                "parameter": rat(&row.parameter),
                "ample": row.ample,
                "verdict": row.verdict().as_str(),
            });
            match &row.report {
                Ok(r) => v["report"] = coercivity_json(r),
                Err(e) => v["error"] = json!(e),
            }
            v
        })
        .collect();
    let brackets: Vec<Value> = table
        .brackets
        .iter()
        .map(|b| json!({ "low": rat(&b.low), "high": rat(&b.high), "from": b.from.as_str(), "to": b.to.as_str() }))
        .collect();
    let notes = table
        .brackets
        .iter()
        .map(|b| format!("transition {} -> {} in [{}, {}]", b.from.as_str(), b.to.as_str(), decimal12(&b.low), decimal12(&b.high)))
        .collect();
    let scan = cfg.scan.as_ref().expect("scan values were computed");
    let report = json!({
        "target": scan.target,
        "offset": rat(&scan.offset.0),
        "scale": rat(&scan.scale.0),
        "rows": rows,
        "brackets": brackets,
    });
    Ok(Outcome { report, table: Some(scan_csv(&table)?), notes, exit_code: 0 })
}

fn potential(cfg: &RunConfig) -> Preset {
    cfg.potential.clone().unwrap_or(Preset::SmoothedSupport { level: 1 })
}

fn curvature(cfg: &RunConfig) -> Result<Outcome> {
    let pv = cfg.variety()?;
    let preset = potential(cfg);
    let u = preset.build(&pv)?;
    let geom = Geometry::new(&pv)?;
    let settings = cfg.numeric.curvature()?;
    let spec = cfg.numeric.quadrature()?;
    let samples = interior_samples(&geom, cfg.numeric.samples)
        .iter()
        .map(|m| scalar_curvature(&u, &geom, m, &settings))
        .collect::<Result<Vec<_>>>()?;
    let mut report = json!({
        "potential": serde_json::to_value(&preset).expect("preset serializes"),
        "s_bar_theta": rat(&geom.s_bar_exact),
        "samples": samples.iter().map(|s| json!({
            "m": s.m,
            "a": s.a,
            "scalar_curvature": s.value,
            "dh_density": s.density,
        })).collect::<Vec<_>>(),
    });
    let verdict = if preset.is_compact_metric() {
        let avg = curvature_average(&u, &geom, &spec, &settings)?;
        report["average"] = serde_json::to_value(&avg).expect("average serializes");
        if avg.relative_error <= spec.tolerance.max(1e-5) {
            Verdict::True
        } else {
            Verdict::False
        }
    } else {
        report["average"] = json!("not computed: the potential is not a metric on the compact variety");
        Verdict::NotApplicable
    };
    let mut out = verdict_outcome(report, &verdict);
    out.table = Some(samples_csv(&samples)?);
    Ok(out)
}

fn mabuchi_cmd(cfg: &RunConfig) -> Result<Outcome> {
    let pv: PolarizedVariety = cfg.variety()?;
    let preset = potential(cfg);
    let u = preset.build(&pv)?;
    let geom = Geometry::new(&pv)?;
    let spec = cfg.numeric.quadrature()?;
    let m = mabuchi(&u, &geom, &spec)?;
    let mut report = json!({
        "potential": serde_json::to_value(&preset).expect("preset serializes"),
        "mabuchi": serde_json::to_value(&m).expect("report serializes"),
        "j_functional": j_functional(&u, &geom, &spec)?,
        "u_at_origin": crate::mabuchi_numeric::Convex::value(&u, &DVector::zeros(geom.rank))?,
    });
    if let Some(reference) = &cfg.reference {
        let r = mabuchi(&reference.build(&pv)?, &geom, &spec)?;
        report["reference"] = serde_json::to_value(reference).expect("preset serializes");
        report["relative_to_reference"] = json!(m.total - r.total);
    }
    Ok(Outcome { report, table: None, notes: Vec::new(), exit_code: 0 })
}

/// Runs a command on a parsed configuration.
pub fn execute(cfg: &RunConfig, command: &Command) -> Result<Outcome> {
    match command {
        Command::Describe => describe(cfg),
        Command::Check { which } => check(cfg, *which),
        Command::Scan => scan(cfg),
        Command::Curvature => curvature(cfg),
        Command::Mabuchi => mabuchi_cmd(cfg),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) if map.len() == 2 && map.contains_key("exact") && map.contains_key("decimal") => {
            out.push((prefix.to_string(), scalar(&map["exact"])));
        }
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            out.push((prefix.to_string(), format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", "))));
        }
        Value::Array(items) => items.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

/// Renders an outcome in the requested format.
pub fn render(outcome: &Outcome, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(&outcome.report).expect("report serializes") + "\n"),
        Format::Csv => {
            if let Some(t) = &outcome.table {
                return Ok(t.clone());
            }
            let mut pairs = Vec::new();
            flatten("", &outcome.report, &mut pairs);
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| HoroError::Internal(e.to_string());
            w.write_record(["key", "value"]).map_err(io)?;
            for (k, v) in pairs {
                w.write_record([k, v]).map_err(io)?;
            }
            String::from_utf8(w.into_inner().map_err(|e| HoroError::Internal(e.to_string()))?)
                .map_err(|e| HoroError::Internal(e.to_string()))
        }
        Format::Text => {
            let mut pairs = Vec::new();
            flatten("", &outcome.report, &mut pairs);
            Ok(pairs.into_iter().map(|(k, v)| format!("{k}: {v}\n")).collect())
        }
    }
}

fn load(cli: &Cli) -> Result<RunConfig> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| HoroError::Config { field: "--config".into(), message: "no configuration file given".into() })?;
    let text = std::fs::read_to_string(path)
        .map_err(|e| HoroError::Config { field: "--config".into(), message: format!("{}: {e}", path.display()) })?;
    let mut cfg = RunConfig::from_json(&text)?;
    if let Some(order) = cli.quadrature_order {
        cfg.numeric.order = order;
    }
    Ok(cfg)
}

/// Computes the outcome of a parsed command line, turning errors into an
/// error report.
pub fn outcome(cli: &Cli) -> Outcome {
    let result = load(cli).and_then(|cfg| {
        let run = || execute(&cfg, &cli.command);
        match cli.threads {
            None => run(),
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| HoroError::Config { field: "--threads".into(), message: e.to_string() })?
                .install(run),
        }
    });
    match result {
        Ok(o) => o,
        Err(e) => Outcome {
            report: error_report(&e),
            table: None,
            notes: vec![format!("error [{}]: {e}", module_of(&e))],
            exit_code: EXIT_ERROR,
        },
    }
}

/// Full program: computes, writes the report and returns the exit code.
pub fn run(cli: &Cli) -> i32 {
    let mut out = outcome(cli);
    let text = match render(&out, cli.format) {
        Ok(t) => t,
        Err(e) => {
            out.exit_code = EXIT_ERROR;
            serde_json::to_string_pretty(&error_report(&e)).expect("report serializes") + "\n"
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    for note in &out.notes {
        eprintln!("{note}");
    }
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return EXIT_ERROR;
    }
    out.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_reports_name_the_module() {
        let e = HoroError::Config { field: "x".into(), message: "bad".into() };
        let v = error_report(&e);
        assert_eq!(v["error"]["module"], "config");
        assert_eq!(v["exit_code"], EXIT_ERROR);
    }

    #[test]
    fn flattening_keeps_exact_values() {
        let out = Outcome {
            report: json!({ "x": rat(&Q::new(1.into(), 3.into())), "v": [1, 2], "nested": [{ "k": true }] }),
            table: None,
            notes: vec![],
            exit_code: 0,
        };
        let text = render(&out, Format::Text).unwrap();
        assert_eq!(text, "nested.0.k: true\nv: [1, 2]\nx: 1/3\n");
        let csv = render(&out, Format::Csv).unwrap();
        assert!(csv.starts_with("key,value\n"));
    }

    #[test]
    fn arguments_parse() {
        let cli = Cli::try_parse_from(["horokit", "check", "ke", "--config", "c.json", "--threads", "2"]).unwrap();
        assert!(matches!(cli.command, Command::Check { which: CheckKind::Ke }));
        assert_eq!(cli.threads, Some(2));
        assert_eq!(cli.format, Format::Json);
        assert!(Cli::try_parse_from(["horokit", "check", "nothing"]).is_err());
    }
}
