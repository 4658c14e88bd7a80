//! `polar` — exact computation of polar ranks, Euclidean distance degrees,
//! Chern–Mather degrees, and focal-locus degrees of algebraic varieties.
//!
//! Every number printed here is produced by a `polarlib` operation; the CLI
//! only parses inputs, dispatches, and formats. Output is a human-readable
//! table by default or a deterministic JSON report (sorted keys, canonical
//! polynomial strings) with `--json`.

use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Map, Value};

use polarlib::counting::{
    ed_degree_count, singular_points_curve, CountConfig, CountReport, SingularPoint,
};
use polarlib::critsys::{build_reciprocal_matrix, minors, PolySystem, QuadricSpec};
use polarlib::error::{Error, Warning};
use polarlib::focal::{
    evolute_eliminant, focal_hypersurface_ranks, focal_plane_curve, focal_salmon,
    focal_smooth_curve, focal_smooth_surface, EvoluteConfig, EvoluteOutcome,
    SmoothSurfaceChernData,
};
use polarlib::parse::parse_polynomial;
use polarlib::poly::{Poly, Rational};
use polarlib::rankcalc::{
    chern_mather_from_ranks, ed_from_ranks, ed_hypersurface_isolated, ed_surface_ordinary,
    plucker_ranks, ranks_from_chern_mather, ranks_smooth_hypersurface, ChernMatherVector,
    OrdinarySurfaceData, PluckerData, RankVector, SingularityDatum,
};

#[derive(Parser)]
#[command(
    name = "polar",
    version,
    about = "Exact polar ranks, ED degrees, Chern-Mather degrees, and focal degrees"
)]
struct Cli {
    /// Emit a deterministic JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Polar ranks of standard families, with the ED degree as their sum.
    Ranks(RanksArgs),
    /// Euclidean distance degrees: closed formulas or certified counting.
    EdDegree(EdDegreeArgs),
    /// Chern-Mather class degrees from polar ranks, or back.
    ChernMather(ChernMatherArgs),
    /// Plucker invariants and focal degree of a nodal/cuspidal plane curve.
    Plucker(PluckerArgs),
    /// Focal-locus (ramification) degrees from closed formulas.
    FocalDegree(FocalDegreeArgs),
    /// Exact evolute (focal curve) of a low-degree plane curve.
    Evolute(EvoluteArgs),
    /// Critical matrix and minors of a reciprocal-polar / ED system.
    PolarMatrix(PolarMatrixArgs),
}

#[derive(Args)]
struct RanksArgs {
    /// Smooth hypersurface of degree d in projective n-space, as "d,n".
    #[arg(long, value_name = "d,n")]
    smooth_hypersurface: String,
}

#[derive(Args)]
struct EdDegreeArgs {
    /// Count ED-critical points of a plane curve exactly (seeded trials).
    #[arg(long)]
    count: bool,
    /// Plane curve in x, y (counting mode).
    #[arg(long, value_name = "POLY")]
    curve: Option<String>,
    /// Singular point with Milnor data, as "x,y,milnor,sectional"
    /// (repeatable; coordinates may be rationals like 3/2).
    #[arg(long, value_name = "x,y,mu,mu1")]
    singular: Vec<String>,
    /// Seed for the counting trials (overrides POLARLIB_SEED).
    #[arg(long)]
    seed: Option<u64>,
    /// Number of independent counting trials.
    #[arg(long, default_value_t = 2)]
    trials: usize,
    /// Sum the given polar ranks (requires --ambient).
    #[arg(long, value_name = "mu0,mu1,...")]
    ranks: Option<String>,
    /// Ambient projective dimension for --ranks.
    #[arg(long)]
    ambient: Option<u32>,
    /// Smooth hypersurface formula, as "d,n".
    #[arg(long, value_name = "d,n")]
    smooth_hypersurface: Option<String>,
    /// Hypersurface with isolated singularities, as "d,n"; add one
    /// --milnor per singular point.
    #[arg(long, value_name = "d,n")]
    isolated: Option<String>,
    /// Milnor data "milnor,sectional" for one isolated singularity
    /// (repeatable, with --isolated).
    #[arg(long, value_name = "mu,mu1")]
    milnor: Vec<String>,
    /// Surface in projective 3-space with ordinary singularities, as
    /// "d,eps,t,nu2".
    #[arg(long, value_name = "d,eps,t,nu2")]
    ordinary: Option<String>,
}

#[derive(Args)]
struct ChernMatherArgs {
    /// Polar ranks to transform into Chern-Mather degrees.
    #[arg(long, value_name = "mu0,mu1,...", conflicts_with = "chern")]
    ranks: Option<String>,
    /// Chern-Mather degrees to transform back into polar ranks.
    #[arg(long, value_name = "c0,c1,...")]
    chern: Option<String>,
    /// Ambient projective dimension.
    #[arg(long)]
    ambient: u32,
}

#[derive(Args)]
struct PluckerArgs {
    /// Degree, nodes, cusps of the plane curve, as "d,delta,kappa".
    #[arg(value_name = "d,delta,kappa")]
    spec: String,
}

#[derive(Args)]
struct FocalDegreeArgs {
    /// Plane curve by invariants "mu0,mu1,kappa,iota".
    #[arg(long, value_name = "mu0,mu1,kappa,iota")]
    plane_curve: Option<String>,
    /// Plane curve with delta nodes and kappa cusps, as "d,delta,kappa"
    /// (Salmon's formula, cross-checked).
    #[arg(long, value_name = "d,delta,kappa")]
    plucker: Option<String>,
    /// Smooth space curve "d,g".
    #[arg(long, value_name = "d,g")]
    smooth_curve: Option<String>,
    /// Smooth surface by Chern numbers "d,c1h,c1sq,c2".
    #[arg(long, value_name = "d,c1h,c1sq,c2")]
    smooth_surface: Option<String>,
    /// Smooth surface of degree d in projective 3-space.
    #[arg(long, value_name = "d")]
    surface_p3: Option<i64>,
    /// Hypersurface by polar ranks "mu0,...,mu_{n-1}" (requires --ambient).
    #[arg(long, value_name = "mu0,mu1,...")]
    hypersurface_ranks: Option<String>,
    /// Ambient projective dimension for --hypersurface-ranks.
    #[arg(long)]
    ambient: Option<u32>,
}

#[derive(Args)]
struct EvoluteArgs {
    /// Plane curve in x, y.
    #[arg(long, value_name = "POLY")]
    curve: String,
    /// Seed for the sampling filter (overrides POLARLIB_SEED).
    #[arg(long)]
    seed: Option<u64>,
    /// Maximum accepted curve degree.
    #[arg(long)]
    degree_cap: Option<u32>,
    /// Number of exact curve samples for the center filter.
    #[arg(long)]
    sample_points: Option<usize>,
}

#[derive(Args)]
struct PolarMatrixArgs {
    /// Defining equations, separated by ';'.
    #[arg(long, value_name = "F1;F2;...")]
    system: String,
    /// Distance quadric: "euclidean:a1,a2,..." (center coordinates) or
    /// "general:Q" with Q homogeneous of degree 2 in the system variables
    /// and the homogenizing variable.
    #[arg(long, value_name = "SPEC")]
    quadric: String,
    /// Dimension of the variety the system cuts out.
    #[arg(long)]
    dim: usize,
    /// Homogenizing variable for a general quadric.
    #[arg(long, default_value = "x0")]
    hom_var: String,
}

/// A finished command: echoed inputs, results, warnings, and the seed in
/// effect, printable as text or deterministic JSON.
struct Report {
    command: &'static str,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
    warnings: Vec<Warning>,
    seed: u64,
}

impl Report {
    fn new(command: &'static str, seed: u64) -> Report {
        Report { command, inputs: Map::new(), results: Map::new(), warnings: Vec::new(), seed }
    }

    fn print(&self, json: bool) {
        if json {
            let mut obj = Map::new();
            obj.insert("command".to_string(), json!(self.command));
            obj.insert("inputs".to_string(), Value::Object(self.inputs.clone()));
            obj.insert("results".to_string(), Value::Object(self.results.clone()));
            obj.insert("seed".to_string(), json!(self.seed));
            let warnings: Vec<Value> = self
                .warnings
                .iter()
                .map(|w| json!({"code": w.code, "message": w.message}))
                .collect();
            obj.insert("warnings".to_string(), Value::Array(warnings));
            println!("{}", serde_json::to_string_pretty(&Value::Object(obj)).unwrap());
        } else {
            for (key, value) in &self.results {
                println!("{key} = {}", render_text(value));
            }
            for w in &self.warnings {
                println!("warning[{}]: {}", w.code, w.message);
            }
        }
    }
}

fn render_text(value: &Value) -> String {
    match value {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).unwrap(),
    }
}

/// Seed resolution order: explicit flag, then POLARLIB_SEED, then 0.
fn resolve_seed(flag: Option<u64>) -> Result<u64, Error> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("POLARLIB_SEED") {
        Ok(text) => text.parse::<u64>().map_err(|_| {
            Error::InvalidInput(format!(
                "POLARLIB_SEED must be a non-negative integer, got '{text}'"
            ))
        }),
        Err(_) => Ok(0),
    }
}

fn parse_i64_list(s: &str, what: &str) -> Result<Vec<i64>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidInput(format!("invalid integer '{t}' in {what}")))
        })
        .collect()
}

fn parse_fixed<const N: usize>(s: &str, what: &str) -> Result<[i64; N], Error> {
    parse_i64_list(s, what)?.try_into().map_err(|_| {
        Error::InvalidInput(format!("{what} needs exactly {N} comma-separated integers"))
    })
}

fn parse_rational(s: &str, what: &str) -> Result<Rational, Error> {
    Rational::from_str(s.trim())
        .map_err(|_| Error::InvalidInput(format!("invalid rational '{s}' in {what}")))
}

fn parse_rational_list(s: &str, what: &str) -> Result<Vec<Rational>, Error> {
    s.split(',').map(|t| parse_rational(t, what)).collect()
}

fn to_u32(v: i64, what: &str) -> Result<u32, Error> {
    u32::try_from(v).map_err(|_| Error::InvalidInput(format!("{what} must fit in u32, got {v}")))
}

/// Plane curves are always read in the fixed variables x, y so that the
/// variable roles do not depend on appearance order in the input string.
fn parse_plane_curve(s: &str) -> Result<Poly, Error> {
    parse_polynomial(s, Some(&["x", "y"]))
}

fn rank_vector_value(r: &RankVector) -> Value {
    Value::Array(r.ranks().iter().map(|&m| json!(m)).collect())
}

fn chern_vector_value(c: &ChernMatherVector) -> Value {
    Value::Array(c.degrees().iter().map(|&m| json!(m)).collect())
}

fn count_report_value(report: &CountReport) -> Map<String, Value> {
    let mut results = Map::new();
    results.insert("count".to_string(), json!(report.count));
    results.insert("stable".to_string(), json!(report.stable));
    results.insert("generic_value".to_string(), json!(report.generic_value));
    results.insert("generic_deviation".to_string(), json!(report.generic_deviation));
    let trials: Vec<Value> = report
        .trials
        .iter()
        .map(|t| {
            let subtracted: Vec<Value> = t
                .subtracted
                .iter()
                .map(|s| {
                    json!({
                        "location": [s.location.0.to_string(), s.location.1.to_string()],
                        "multiplicity": s.multiplicity,
                    })
                })
                .collect();
            json!({
                "count": t.count,
                "data": t.data.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                "ledger_balanced": t.ledger_balances(),
                "raw_resultant_degree": t.raw_resultant_degree,
                "residual_squarefree": t.residual_squarefree,
                "seed": t.seed,
                "shear": t.shear,
                "subtracted": subtracted,
            })
        })
        .collect();
    results.insert("trials".to_string(), Value::Array(trials));
    results
}

/// One-line provenance note attached to every focal-degree result.
const FOCAL_NOTE: &str = "degree of the ramification locus of the endpoint map; \
equals the focal-locus degree when the endpoint map is birational onto it";

fn run(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Ranks(args) => cmd_ranks(args),
        Command::EdDegree(args) => cmd_ed_degree(args),
        Command::ChernMather(args) => cmd_chern_mather(args),
        Command::Plucker(args) => cmd_plucker(args),
        Command::FocalDegree(args) => cmd_focal_degree(args),
        Command::Evolute(args) => cmd_evolute(args),
        Command::PolarMatrix(args) => cmd_polar_matrix(args),
    }
}

fn cmd_ranks(args: &RanksArgs) -> Result<Report, Error> {
    let [d, n] = parse_fixed::<2>(&args.smooth_hypersurface, "--smooth-hypersurface")?;
    let n = to_u32(n, "ambient dimension")?;
    let ranks = ranks_smooth_hypersurface(d, n)?;
    let ed = ed_from_ranks(&ranks)?;
    let mut report = Report::new("ranks", resolve_seed(None)?);
    report
        .inputs
        .insert("smooth_hypersurface".to_string(), json!(args.smooth_hypersurface));
    report.results.insert("ambient".to_string(), json!(n));
    report.results.insert("degree".to_string(), json!(d));
    report.results.insert("ed_degree".to_string(), json!(ed));
    report.results.insert("ranks".to_string(), rank_vector_value(&ranks));
    Ok(report)
}

fn parse_singular_flag(s: &str) -> Result<SingularPoint, Error> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::InvalidInput(format!(
            "--singular needs \"x,y,milnor,sectional\", got '{s}'"
        )));
    }
    let x = parse_rational(parts[0], "--singular")?;
    let y = parse_rational(parts[1], "--singular")?;
    let milnor = parts[2].trim().parse::<i64>().map_err(|_| {
        Error::InvalidInput(format!("invalid Milnor number '{}' in --singular", parts[2]))
    })?;
    let sectional = parts[3].trim().parse::<i64>().map_err(|_| {
        Error::InvalidInput(format!("invalid sectional Milnor number '{}' in --singular", parts[3]))
    })?;
    SingularPoint::with_milnor_data(x, y, milnor, sectional)
}

fn cmd_ed_degree(args: &EdDegreeArgs) -> Result<Report, Error> {
    let modes = usize::from(args.count)
        + usize::from(args.ranks.is_some())
        + usize::from(args.smooth_hypersurface.is_some())
        + usize::from(args.isolated.is_some())
        + usize::from(args.ordinary.is_some());
    if modes != 1 {
        return Err(Error::InvalidInput(
            "choose exactly one of --count, --ranks, --smooth-hypersurface, --isolated, \
             --ordinary"
                .to_string(),
        ));
    }
    let seed = resolve_seed(args.seed)?;
    let mut report = Report::new("ed-degree", seed);

    if args.count {
        let curve_text = args.curve.as_deref().ok_or_else(|| {
            Error::InvalidInput("--count needs --curve \"F(x,y)\"".to_string())
        })?;
        let f = parse_plane_curve(curve_text)?;
        let singular: Vec<SingularPoint> = args
            .singular
            .iter()
            .map(|s| parse_singular_flag(s))
            .collect::<Result<_, _>>()?;
        if singular.is_empty() {
            // Never guess Milnor data: when the curve is singular, list the
            // detected points and require explicit --singular flags.
            let scan = singular_points_curve(&f)?;
            if !scan.points.is_empty() || !scan.unresolved_factors.is_empty() {
                let mut listed: Vec<String> = scan
                    .points
                    .iter()
                    .map(|p| format!("({}, {})", p.location.0, p.location.1))
                    .collect();
                for fac in &scan.unresolved_factors {
                    listed.push(format!("unresolved factor {fac}"));
                }
                return Err(Error::InvalidInput(format!(
                    "the curve has singular points and Milnor data is never guessed; \
                     pass --singular \"x,y,milnor,sectional\" for each of: {}",
                    listed.join("; ")
                )));
            }
        }
        let mut config = CountConfig::with_seed(seed);
        config.trials = args.trials;
        let count_report = ed_degree_count(&f, &singular, &config)?;
        report.inputs.insert("curve".to_string(), json!(curve_text));
        report.inputs.insert("curve_canonical".to_string(), json!(f.to_string()));
        report.inputs.insert("singular".to_string(), json!(args.singular));
        report.inputs.insert("trials".to_string(), json!(args.trials));
        report.warnings = count_report.warnings.clone();
        report.results = count_report_value(&count_report);
        return Ok(report);
    }

    if let Some(ranks_text) = &args.ranks {
        let ambient = args.ambient.ok_or_else(|| {
            Error::InvalidInput("--ranks needs --ambient".to_string())
        })?;
        let ranks = RankVector::new(ambient, parse_i64_list(ranks_text, "--ranks")?)?;
        report.inputs.insert("ambient".to_string(), json!(ambient));
        report.inputs.insert("ranks".to_string(), json!(ranks_text));
        report.results.insert("ed_degree".to_string(), json!(ed_from_ranks(&ranks)?));
        return Ok(report);
    }

    if let Some(spec) = &args.smooth_hypersurface {
        let [d, n] = parse_fixed::<2>(spec, "--smooth-hypersurface")?;
        let n = to_u32(n, "ambient dimension")?;
        let ranks = ranks_smooth_hypersurface(d, n)?;
        report.inputs.insert("smooth_hypersurface".to_string(), json!(spec));
        report.results.insert("ed_degree".to_string(), json!(ed_from_ranks(&ranks)?));
        report.results.insert("ranks".to_string(), rank_vector_value(&ranks));
        return Ok(report);
    }

    if let Some(spec) = &args.isolated {
        let [d, n] = parse_fixed::<2>(spec, "--isolated")?;
        let n = to_u32(n, "ambient dimension")?;
        let data: Vec<SingularityDatum> = args
            .milnor
            .iter()
            .map(|m| {
                let [mu, mu1] = parse_fixed::<2>(m, "--milnor")?;
                SingularityDatum::new(mu, mu1)
            })
            .collect::<Result<_, _>>()?;
        report.inputs.insert("isolated".to_string(), json!(spec));
        report.inputs.insert("milnor".to_string(), json!(args.milnor));
        report
            .results
            .insert("ed_degree".to_string(), json!(ed_hypersurface_isolated(d, n, &data)?));
        return Ok(report);
    }

    let spec = args.ordinary.as_ref().expect("mode counted above");
    let [d, eps, t, nu2] = parse_fixed::<4>(spec, "--ordinary")?;
    let surface = OrdinarySurfaceData::new(d, eps, t, nu2)?;
    report.inputs.insert("ordinary".to_string(), json!(spec));
    report.results.insert("ed_degree".to_string(), json!(ed_surface_ordinary(&surface)?));
    Ok(report)
}

fn cmd_chern_mather(args: &ChernMatherArgs) -> Result<Report, Error> {
    let mut report = Report::new("chern-mather", resolve_seed(None)?);
    report.inputs.insert("ambient".to_string(), json!(args.ambient));
    match (&args.ranks, &args.chern) {
        (Some(ranks_text), None) => {
            let ranks = RankVector::new(args.ambient, parse_i64_list(ranks_text, "--ranks")?)?;
            let chern = chern_mather_from_ranks(&ranks)?;
            report.inputs.insert("ranks".to_string(), json!(ranks_text));
            report.results.insert("chern_mather".to_string(), chern_vector_value(&chern));
            Ok(report)
        }
        (None, Some(chern_text)) => {
            let chern = ChernMatherVector::new(parse_i64_list(chern_text, "--chern")?)?;
            let ranks = ranks_from_chern_mather(&chern, args.ambient)?;
            report.inputs.insert("chern".to_string(), json!(chern_text));
            report.results.insert("ranks".to_string(), rank_vector_value(&ranks));
            Ok(report)
        }
        _ => Err(Error::InvalidInput(
            "choose exactly one of --ranks (forward) or --chern (inverse)".to_string(),
        )),
    }
}

fn cmd_plucker(args: &PluckerArgs) -> Result<Report, Error> {
    let [d, delta, kappa] = parse_fixed::<3>(&args.spec, "the d,delta,kappa argument")?;
    let data = PluckerData::new(d, delta, kappa)?;
    let inv = plucker_ranks(&data);
    let focal = focal_salmon(&data)?;
    let dual = data.dual()?;
    let mut report = Report::new("plucker", resolve_seed(None)?);
    report.inputs.insert("spec".to_string(), json!(args.spec));
    report.results.insert("class_degree".to_string(), json!(inv.class_degree));
    report.results.insert(
        "dual".to_string(),
        json!({"cusps": dual.cusps(), "degree": dual.degree(), "nodes": dual.nodes()}),
    );
    report.results.insert("focal_degree".to_string(), json!(focal));
    report.results.insert("genus".to_string(), json!(inv.genus));
    report.results.insert("inflections".to_string(), json!(inv.inflections));
    Ok(report)
}

fn cmd_focal_degree(args: &FocalDegreeArgs) -> Result<Report, Error> {
    let modes = usize::from(args.plane_curve.is_some())
        + usize::from(args.plucker.is_some())
        + usize::from(args.smooth_curve.is_some())
        + usize::from(args.smooth_surface.is_some())
        + usize::from(args.surface_p3.is_some())
        + usize::from(args.hypersurface_ranks.is_some());
    if modes != 1 {
        return Err(Error::InvalidInput(
            "choose exactly one of --plane-curve, --plucker, --smooth-curve, \
             --smooth-surface, --surface-p3, --hypersurface-ranks"
                .to_string(),
        ));
    }
    let mut report = Report::new("focal-degree", resolve_seed(None)?);
    let value = if let Some(spec) = &args.plane_curve {
        let [mu0, mu1, kappa, iota] = parse_fixed::<4>(spec, "--plane-curve")?;
        report.inputs.insert("plane_curve".to_string(), json!(spec));
        focal_plane_curve(mu0, mu1, kappa, iota)?
    } else if let Some(spec) = &args.plucker {
        let [d, delta, kappa] = parse_fixed::<3>(spec, "--plucker")?;
        report.inputs.insert("plucker".to_string(), json!(spec));
        focal_salmon(&PluckerData::new(d, delta, kappa)?)?
    } else if let Some(spec) = &args.smooth_curve {
        let [d, g] = parse_fixed::<2>(spec, "--smooth-curve")?;
        report.inputs.insert("smooth_curve".to_string(), json!(spec));
        focal_smooth_curve(d, g)?
    } else if let Some(spec) = &args.smooth_surface {
        let [d, c1h, c1sq, c2] = parse_fixed::<4>(spec, "--smooth-surface")?;
        report.inputs.insert("smooth_surface".to_string(), json!(spec));
        focal_smooth_surface(&SmoothSurfaceChernData::new(d, c1h, c1sq, c2)?)?
    } else if let Some(d) = args.surface_p3 {
        report.inputs.insert("surface_p3".to_string(), json!(d));
        let chern = SmoothSurfaceChernData::surface_in_p3(d)?;
        report.results.insert(
            "chern_data".to_string(),
            json!({"c1h": chern.c1h, "c1sq": chern.c1sq, "c2": chern.c2, "d": chern.d}),
        );
        focal_smooth_surface(&chern)?
    } else {
        let spec = args.hypersurface_ranks.as_ref().expect("mode counted above");
        let ambient = args.ambient.ok_or_else(|| {
            Error::InvalidInput("--hypersurface-ranks needs --ambient".to_string())
        })?;
        let ranks = RankVector::new(ambient, parse_i64_list(spec, "--hypersurface-ranks")?)?;
        report.inputs.insert("ambient".to_string(), json!(ambient));
        report.inputs.insert("hypersurface_ranks".to_string(), json!(spec));
        focal_hypersurface_ranks(&ranks)?
    };
    report.results.insert("focal_degree".to_string(), json!(value));
    report.results.insert("note".to_string(), json!(FOCAL_NOTE));
    Ok(report)
}

fn cmd_evolute(args: &EvoluteArgs) -> Result<Report, Error> {
    let seed = resolve_seed(args.seed)?;
    let f = parse_plane_curve(&args.curve)?;
    let mut config = EvoluteConfig::with_seed(seed);
    if let Some(cap) = args.degree_cap {
        config.degree_cap = cap;
    }
    if let Some(points) = args.sample_points {
        config.sample_points = points;
    }
    let outcome = evolute_eliminant(&f, &config)?;
    let mut report = Report::new("evolute", seed);
    report.inputs.insert("curve".to_string(), json!(args.curve));
    report.inputs.insert("curve_canonical".to_string(), json!(f.to_string()));
    report.inputs.insert("degree_cap".to_string(), json!(config.degree_cap));
    report.inputs.insert("sample_points".to_string(), json!(config.sample_points));
    match outcome {
        EvoluteOutcome::Degenerate { center } => {
            report.results.insert(
                "center".to_string(),
                json!([center.0.to_string(), center.1.to_string()]),
            );
            report.results.insert("degenerate".to_string(), json!(true));
        }
        EvoluteOutcome::Curve(result) => {
            report.results.insert("degenerate".to_string(), json!(false));
            report.results.insert("degree".to_string(), json!(result.degree));
            report
                .results
                .insert("eliminant".to_string(), json!(result.eliminant.to_string()));
            let removed: Vec<Value> = result
                .extraneous_factors_removed
                .iter()
                .map(|p| json!(p.to_string()))
                .collect();
            report
                .results
                .insert("extraneous_factors_removed".to_string(), Value::Array(removed));
            report.results.insert("genericity".to_string(), json!(result.genericity));
        }
    }
    Ok(report)
}

fn cmd_polar_matrix(args: &PolarMatrixArgs) -> Result<Report, Error> {
    let equations: Vec<Poly> = args
        .system
        .split(';')
        .map(|s| parse_polynomial(s, None))
        .collect::<Result<_, _>>()?;
    let sys = PolySystem::new(equations, args.dim)?;
    let quadric = if let Some(center_text) = args.quadric.strip_prefix("euclidean:") {
        QuadricSpec::euclidean(parse_rational_list(center_text, "--quadric")?)
    } else if let Some(q_text) = args.quadric.strip_prefix("general:") {
        QuadricSpec::general(parse_polynomial(q_text, None)?, &args.hom_var)
    } else {
        return Err(Error::InvalidInput(
            "--quadric must start with 'euclidean:' or 'general:'".to_string(),
        ));
    };
    let (matrix, warnings) = build_reciprocal_matrix(&sys, &quadric)?;
    let all_minors = minors(&matrix)?;
    let mut report = Report::new("polar-matrix", resolve_seed(None)?);
    report.inputs.insert("dim".to_string(), json!(args.dim));
    report.inputs.insert("quadric".to_string(), json!(args.quadric));
    report.inputs.insert("system".to_string(), json!(args.system));
    report.warnings = warnings;
    let rows: Vec<Value> = matrix
        .rows()
        .iter()
        .map(|row| Value::Array(row.iter().map(|p| json!(p.to_string())).collect()))
        .collect();
    report.results.insert("matrix".to_string(), Value::Array(rows));
    report.results.insert("minor_size".to_string(), json!(matrix.minor_size()));
    report.results.insert(
        "minors".to_string(),
        Value::Array(all_minors.iter().map(|p| json!(p.to_string())).collect()),
    );
    report.results.insert(
        "variables".to_string(),
        Value::Array(sys.vars().iter().map(|v| json!(v)).collect()),
    );
    Ok(report)
}

/// Exit codes: 0 success, 2 input error, 3 genericity/instability,
/// 4 internal consistency violation.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::GenericityFailure(_)
        | Error::UnstableCount(_)
        | Error::DegenerateSystem(_)
        | Error::PositiveDimensional => 3,
        Error::Internal(_) => 4,
        _ => 2,
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Ranks(_) => "ranks",
        Command::EdDegree(_) => "ed-degree",
        Command::ChernMather(_) => "chern-mather",
        Command::Plucker(_) => "plucker",
        Command::FocalDegree(_) => "focal-degree",
        Command::Evolute(_) => "evolute",
        Command::PolarMatrix(_) => "polar-matrix",
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(report) => report.print(cli.json),
        Err(e) => {
            if cli.json {
                let mut obj = Map::new();
                obj.insert("command".to_string(), json!(command_name(&cli.command)));
                obj.insert(
                    "error".to_string(),
                    json!({"code": e.code(), "message": e.to_string()}),
                );
                println!("{}", serde_json::to_string_pretty(&Value::Object(obj)).unwrap());
            } else {
                eprintln!("error[{}]: {e}", e.code());
            }
            std::process::exit(exit_code(&e));
        }
    }
}
