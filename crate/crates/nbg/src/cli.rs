//! Argument definitions and subcommand implementations. Every command writes
//! its report into a string and returns the process exit code, so the same
//! code path serves the binary and the tests.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nbg_core::closed_forms::{
    conjecture_scan, default_scan_grid, make_family, uniform_cost_solve, GraphFamily, ScanFamily, ScanRow,
    UniformCostKind, UniformCostSolution,
};
use nbg_core::equilibrium::{best_response_dynamics, verify_delta_strong, verify_equilibrium, StrongVerdict};
use nbg_core::family::AffineFamily;
use nbg_core::kernel::{enumerate_kernels, strong_supports_match_kernels, KernelDiscrepancy};
use nbg_core::metrics::{price_report, PriceRatio, PriceReport, SearchOptions, SocialOptimum};
use nbg_core::potential::{minimize_potential, DescentOptions};
use nbg_core::scalar::q;
use nbg_core::supports::{solve_affine_by_supports, SolveResult};
use nbg_core::{Game, MassDistribution, NbgError, Rational, Scalar};
use serde_json::{json, Value};

use crate::io::{self, AnyGame, InputError, Paired};
use crate::num::{fmt_f64, fmt_plain, fmt_scalar, json_scalar, parse_list, Num};
use crate::reproduce;

#[derive(Parser, Debug)]
#[command(name = "nbg", version, about = "Equilibria, potentials and prices of neighbourhood balancing games")]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Seed for multistart searches.
    #[arg(long, global = true, env = "NBG_SEED", default_value_t = 0)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check whether a distribution is an equilibrium (exit 0) or not (exit 1).
    Verify(VerifyArgs),
    /// List equilibria found by one method; each is re-verified before printing.
    Solve(SolveArgs),
    /// Prices of anarchy and stability of an affine game.
    Metrics(MetricsArgs),
    /// Write the α-uniform game of a named graph family.
    Family(FamilyArgs),
    /// Determinants and uniform-cost solutions of paths or cycles over a grid of α.
    ScanDet(ScanArgs),
    /// Run discrete best-response dynamics.
    Dynamics(DynamicsArgs),
    /// Recompute the worked examples and compare with the published values.
    Reproduce(ReproduceArgs),
    /// Kernels of a digraph and their strong equilibria.
    Kernels(KernelArgs),
    /// Costs of a two-vertex game along x1 (CSV: x1, C1, C2).
    Curve(CurveArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Game file, or builtin:NAME.
    pub game: String,
    /// Distribution file (JSON array).
    pub dist_file: Option<PathBuf>,
    /// Inline distribution, e.g. "3/4,1/4".
    #[arg(long, conflicts_with = "dist_file", required_unless_present = "dist_file")]
    pub dist: Option<String>,
    /// Also require δ-strength.
    #[arg(long)]
    pub delta: Option<String>,
    /// Equilibrium tolerance (default 0 for exact games, 1e-9 otherwise).
    #[arg(long)]
    pub tol: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Supports,
    Potential,
    Dynamics,
    UniformCost,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SystemKind {
    Path,
    Cycle,
    General,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub game: String,
    #[arg(long, value_enum, default_value_t = Method::Supports)]
    pub method: Method,
    /// Graph check for the uniform-cost method.
    #[arg(long, value_enum, default_value_t = SystemKind::General)]
    pub kind: SystemKind,
    /// Largest n for support enumeration.
    #[arg(long, default_value_t = 16)]
    pub max_n: usize,
    /// Random starts for the potential method.
    #[arg(long, default_value_t = 20)]
    pub starts: usize,
    #[command(flatten)]
    pub dynamics: DynamicsOptions,
}

#[derive(Args, Debug, Clone)]
pub struct DynamicsOptions {
    /// Starting distribution (default: uniform).
    #[arg(long)]
    pub x0: Option<String>,
    #[arg(long, default_value = "0.01")]
    pub step: String,
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    #[arg(long, default_value = "1e-6")]
    pub gap: String,
}

#[derive(Args, Debug)]
pub struct MetricsArgs {
    pub game: String,
    #[arg(long, default_value_t = 16)]
    pub max_n: usize,
    /// Random starts for the egalitarian search.
    #[arg(long, default_value_t = 20)]
    pub starts: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Path,
    Cycle,
    Bipartite,
    Star,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    #[arg(value_enum)]
    pub kind: FamilyKind,
    /// Vertex count (path, cycle, star).
    #[arg(long)]
    pub n: Option<usize>,
    /// Side sizes (bipartite).
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub alpha: String,
    #[arg(long, default_value = "1")]
    pub r: String,
    /// Write the game here instead of standard output.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    Path,
    Cycle,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(value_enum)]
    pub family: ScanKind,
    #[arg(long)]
    pub n_min: Option<usize>,
    #[arg(long, default_value_t = 12)]
    pub n_max: usize,
    /// Comma-separated α values (default 1/20, …, 9/20).
    #[arg(long)]
    pub alphas: Option<String>,
}

#[derive(Args, Debug)]
pub struct DynamicsArgs {
    pub game: String,
    #[command(flatten)]
    pub options: DynamicsOptions,
    /// Print every visited distribution.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    #[arg(long, conflicts_with = "all", required_unless_present = "all")]
    pub section: Option<String>,
    #[arg(long)]
    pub all: bool,
}

#[derive(Args, Debug)]
pub struct KernelArgs {
    /// Digraph file: `n` on the first line, then `i j` per arc.
    pub digraph: PathBuf,
    /// Compare with strong equilibria of the game with this α on every arc.
    #[arg(long)]
    pub alpha: Option<String>,
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    pub game: String,
    #[arg(long, default_value_t = 100)]
    pub points: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] InputError),
    #[error("{0}")]
    Core(#[from] NbgError),
    #[error("{0}")]
    Usage(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn num(text: &str, what: &str) -> Result<Num, CliError> {
    text.parse().map_err(|_| usage(format!("invalid {what}: {text:?}")))
}

fn as_scalar<S: Scalar>(n: &Num) -> S {
    match n {
        Num::Exact(q) => S::from_rational(q),
        Num::Float(v) => S::from_f64(*v),
    }
}

/// Runs the command. `Ok(0)` and `Ok(1)` are the affirmative and negative
/// outcomes; errors map to exit code 2.
pub fn run(cli: &Cli, out: &mut String) -> Result<i32, CliError> {
    match &cli.command {
        Command::Verify(a) => verify(a, cli.format.unwrap_or(Format::Table), out),
        Command::Solve(a) => solve(a, cli.seed, cli.format.unwrap_or(Format::Table), out),
        Command::Metrics(a) => metrics(a, cli.seed, cli.format.unwrap_or(Format::Table), out),
        Command::Family(a) => family(a, out),
        Command::ScanDet(a) => scan(a, cli.format.unwrap_or(Format::Csv), out),
        Command::Dynamics(a) => dynamics(a, cli.format.unwrap_or(Format::Table), out),
        Command::Reproduce(a) => reproduce_cmd(a, cli.format.unwrap_or(Format::Table), out),
        Command::Kernels(a) => kernels(a, cli.format.unwrap_or(Format::Table), out),
        Command::Curve(a) => curve(a, cli.format.unwrap_or(Format::Csv), out),
    }
}

macro_rules! with_game {
    ($game:expr, $g:ident => $body:expr) => {
        match $game {
            AnyGame::Exact($g) => $body,
            AnyGame::Float($g) => $body,
        }
    };
}

fn vec_text<S: Scalar>(v: &[S]) -> String {
    let parts: Vec<String> = v.iter().map(fmt_scalar).collect();
    format!("({})", parts.join(", "))
}

fn vec_json<S: Scalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(json_scalar).collect())
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

fn support_text(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn push_json(out: &mut String, v: &Value) {
    out.push_str(&serde_json::to_string_pretty(v).expect("values serialize"));
    out.push('\n');
}

fn csv_string(rows: Vec<Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.write_record(&row).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("flush to memory")).expect("utf-8 fields")
}

fn game_header<S: Scalar>(g: &Game<S>) -> String {
    let c = g.classify();
    let mode = if S::EXACT { "exact" } else { "float" };
    let mut s = format!("game: {} vertices, r = {}, class {}", g.n(), fmt_scalar(g.r()), c.label());
    if let Some(a) = &c.alpha {
        s.push_str(&format!(" (α = {})", fmt_scalar(a)));
    }
    s.push_str(&format!(", {mode} arithmetic\n"));
    s
}

fn game_json<S: Scalar>(g: &Game<S>) -> Value {
    let c = g.classify();
    json!({
        "n": g.n(),
        "r": json_scalar(g.r()),
        "class": c.label(),
        "alpha": c.alpha.as_ref().map(json_scalar),
        "exact": S::EXACT,
    })
}

fn verify(a: &VerifyArgs, format: Format, out: &mut String) -> Result<i32, CliError> {
    let game = io::load_game(&a.game)?;
    let values = match (&a.dist, &a.dist_file) {
        (Some(inline), _) => io::parse_distribution(inline, "--dist")?,
        (None, Some(path)) => io::load_distribution(path)?,
        (None, None) => return Err(usage("a distribution is required")),
    };
    let delta = a.delta.as_deref().map(|d| num(d, "delta")).transpose()?;
    let tol = a.tol.as_deref().map(|t| num(t, "tolerance")).transpose()?;
    match io::pair(&game, &values)? {
        Paired::Exact(g, x) => verify_in(&g, &x, delta.as_ref(), tol.as_ref(), format, out),
        Paired::Float(g, x) => verify_in(&g, &x, delta.as_ref(), tol.as_ref(), format, out),
    }
}

fn verify_in<S: Scalar>(
    g: &Game<S>,
    x: &MassDistribution<S>,
    delta: Option<&Num>,
    tol: Option<&Num>,
    format: Format,
    out: &mut String,
) -> Result<i32, CliError> {
    let tol: S = tol.map(as_scalar).unwrap_or_else(S::eq_tolerance);
    let report = verify_equilibrium(g, x, &tol)?;
    let strong = delta.map(|d| verify_delta_strong(g, x, &as_scalar(d))).transpose()?;
    let ok = report.is_equilibrium && strong.as_ref().is_none_or(|s| s.is_strong());
    match format {
        Format::Json => {
            let strong_json = strong.as_ref().map(|s| {
                let refutation = match &s.verdict {
                    StrongVerdict::DeltaStrong => Value::Null,
                    StrongVerdict::Refuted { from, to, epsilon } => {
                        json!({"from": from + 1, "to": to + 1, "epsilon": json_scalar(epsilon)})
                    }
                };
                json!({"delta": json_scalar(&s.delta), "strong": s.is_strong(), "exact": s.exact, "refutation": refutation})
            });
            push_json(
                out,
                &json!({
                    "game": game_json(g),
                    "x": vec_json(x.masses()),
                    "costs": vec_json(&report.costs),
                    "worst_gap": json_scalar(&report.worst_gap),
                    "common_cost": report.common_cost.as_ref().map(json_scalar),
                    "tolerance": json_scalar(&tol),
                    "equilibrium": report.is_equilibrium,
                    "delta_strong": strong_json,
                }),
            );
        }
        _ => {
            out.push_str(&game_header(g));
            out.push_str(&format!("x: {}\n", vec_text(x.masses())));
            out.push_str(&format!("costs: {}\n", vec_text(&report.costs)));
            out.push_str(&format!("worst gap: {}\n", fmt_scalar(&report.worst_gap)));
            if let Some(c) = &report.common_cost {
                out.push_str(&format!("common cost of charged vertices: {}\n", fmt_scalar(c)));
            }
            out.push_str(&format!("equilibrium: {}\n", if report.is_equilibrium { "yes" } else { "no" }));
            if let Some(s) = &strong {
                let d = fmt_scalar(&s.delta);
                match &s.verdict {
                    StrongVerdict::DeltaStrong => out.push_str(&format!("{d}-strong: yes\n")),
                    StrongVerdict::Refuted { from, to, epsilon } => out.push_str(&format!(
                        "{d}-strong: no (moving {} from vertex {} to vertex {} lowers its cost)\n",
                        fmt_scalar(epsilon),
                        from + 1,
                        to + 1
                    )),
                }
                if !s.exact {
                    out.push_str("  strength checked on a grid of moved amounts\n");
                }
            }
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn family_json<S: Scalar>(f: &AffineFamily<S>) -> Value {
    json!({
        "support": one_based(&f.support),
        "dimension": f.dimension(),
        "base": vec_json(&f.base),
        "directions": f.directions.iter().map(|d| vec_json(d)).collect::<Vec<_>>(),
        "cost_base": json_scalar(&f.cost_base),
        "cost_directions": vec_json(&f.cost_directions),
        "constraints": f.constraints.iter()
            .map(|c| json!({"coeffs": vec_json(&c.coeffs), "offset": json_scalar(&c.offset)}))
            .collect::<Vec<_>>(),
        "vertices": f.vertices().iter().map(|t| vec_json(&f.point_at(t))).collect::<Vec<_>>(),
    })
}

fn family_text<S: Scalar>(f: &AffineFamily<S>) -> String {
    let d = f.dimension();
    let params: Vec<String> = (1..=d).map(|k| format!("t{k}·d{k}")).collect();
    let mut s = format!("family on support {}, dimension {d}\n", support_text(&f.support));
    s.push_str(&format!("  x(t) = base + {}\n", params.join(" + ")));
    s.push_str(&format!("  base: {}\n", vec_text(&f.base)));
    for (k, dir) in f.directions.iter().enumerate() {
        s.push_str(&format!("  d{}: {}\n", k + 1, vec_text(dir)));
    }
    s.push_str(&format!(
        "  cost(t) = {} + ({})·t\n",
        fmt_scalar(&f.cost_base),
        f.cost_directions.iter().map(fmt_plain).collect::<Vec<_>>().join(", ")
    ));
    for c in &f.constraints {
        s.push_str(&format!(
            "  constraint: ({})·t + {} ≥ 0\n",
            c.coeffs.iter().map(fmt_plain).collect::<Vec<_>>().join(", "),
            fmt_plain(&c.offset)
        ));
    }
    for t in f.vertices() {
        s.push_str(&format!("  vertex: {}\n", vec_text(&f.point_at(t))));
    }
    s
}

/// Keeps results whose points (family samples) verify within `tol`.
fn verified<S: Scalar>(g: &Game<S>, results: Vec<SolveResult<S>>, tol: &S) -> Result<(Vec<SolveResult<S>>, usize), CliError> {
    let mut kept = Vec::new();
    let mut dropped = 0;
    for r in results {
        let mut ok = true;
        for x in r.sample_points(5) {
            let dist = MassDistribution::new(x, g.r().clone())?;
            ok &= verify_equilibrium(g, &dist, tol)?.is_equilibrium;
        }
        if ok {
            kept.push(r);
        } else {
            dropped += 1;
        }
    }
    Ok((kept, dropped))
}

fn results_output<S: Scalar>(
    g: &Game<S>,
    method: &str,
    results: &[SolveResult<S>],
    extra: Value,
    extra_text: &str,
    format: Format,
    out: &mut String,
) {
    match format {
        Format::Json => {
            let list: Vec<Value> = results
                .iter()
                .map(|r| match r {
                    SolveResult::Point(p) => json!({
                        "kind": "point",
                        "support": one_based(&p.support),
                        "x": vec_json(p.x.masses()),
                        "cost": json_scalar(&p.cost),
                    }),
                    SolveResult::Family(f) => {
                        let mut v = family_json(f);
                        v["kind"] = json!("family");
                        v
                    }
                })
                .collect();
            push_json(out, &json!({"game": game_json(g), "method": method, "equilibria": list, "details": extra}));
        }
        Format::Csv => {
            let n = g.n();
            let mut header = vec!["kind".to_string(), "support".to_string()];
            header.extend((1..=n).map(|i| format!("x{i}")));
            header.push("cost".into());
            let mut rows = vec![header];
            let support = |s: &[usize]| one_based(s).iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            for r in results {
                match r {
                    SolveResult::Point(p) => {
                        let mut row = vec!["point".to_string(), support(&p.support)];
                        row.extend(p.x.masses().iter().map(fmt_plain));
                        row.push(fmt_plain(&p.cost));
                        rows.push(row);
                    }
                    SolveResult::Family(f) => {
                        for t in f.vertices() {
                            let mut row = vec!["family-vertex".to_string(), support(&f.support)];
                            row.extend(f.point_at(t).iter().map(fmt_plain));
                            row.push(fmt_plain(&f.cost_at(t)));
                            rows.push(row);
                        }
                    }
                }
            }
            out.push_str(&csv_string(rows));
        }
        Format::Table => {
            out.push_str(&game_header(g));
            out.push_str(extra_text);
            out.push_str(&format!("{} equilibri{} ({method})\n", results.len(), if results.len() == 1 { "um" } else { "a" }));
            for r in results {
                match r {
                    SolveResult::Point(p) => out.push_str(&format!(
                        "point on support {}: x = {}, cost {}\n",
                        support_text(&p.support),
                        vec_text(p.x.masses()),
                        fmt_scalar(&p.cost)
                    )),
                    SolveResult::Family(f) => out.push_str(&family_text(f)),
                }
            }
        }
    }
}

fn solve(a: &SolveArgs, seed: u64, format: Format, out: &mut String) -> Result<i32, CliError> {
    let game = io::load_game(&a.game)?;
    with_game!(&game, g => solve_in(g, a, seed, format, out))
}

fn solve_in<S: Scalar>(g: &Game<S>, a: &SolveArgs, seed: u64, format: Format, out: &mut String) -> Result<i32, CliError> {
    let exact_tol = S::eq_tolerance();
    let (found, method, extra, extra_text, tol) = match a.method {
        Method::Supports => {
            if g.affine_costs().is_none() {
                return Err(usage("the supports method needs an affine game"));
            }
            (solve_affine_by_supports(g, a.max_n)?, "supports", Value::Null, String::new(), exact_tol)
        }
        Method::Potential => {
            let options = DescentOptions { starts: a.starts, seed, ..DescentOptions::default() };
            let tol = S::from_f64(options.tolerance);
            let minima = minimize_potential(g, &options)?;
            let snapped: Vec<bool> = minima.iter().map(|m| m.snapped).collect();
            let results = minima
                .into_iter()
                .map(|m| {
                    let costs = g.cost_vector(&m.x).expect("minimizer lies in the simplex");
                    let cost = m.x.support().first().map(|&i| costs[i].clone()).unwrap_or_else(S::zero);
                    SolveResult::Point(nbg_core::supports::PointEquilibrium { support: m.x.support(), x: m.x, cost })
                })
                .collect();
            let text = format!("potential minima (seed {seed}); snapped to exact support solutions: {snapped:?}\n");
            (results, "potential", json!({"seed": seed, "snapped": snapped}), text, tol)
        }
        Method::Dynamics => {
            let res = run_dynamics(g, &a.dynamics)?;
            let last = res.trace.last().expect("trace is nonempty").clone();
            let text = format!(
                "dynamics: {} moves, converged {}, gap {}\n",
                res.iterations,
                res.converged,
                fmt_scalar(&res.report.worst_gap)
            );
            let extra = json!({"iterations": res.iterations, "converged": res.converged, "gap": json_scalar(&res.report.worst_gap)});
            let tol = as_scalar(&num(&a.dynamics.gap, "gap")?);
            let results = if res.converged {
                let cost = res.report.common_cost.clone().unwrap_or_else(|| res.report.costs[last.support()[0]].clone());
                vec![SolveResult::Point(nbg_core::supports::PointEquilibrium { support: last.support(), x: last, cost })]
            } else {
                Vec::new()
            };
            (results, "dynamics", extra, text, tol)
        }
        Method::UniformCost => {
            let kind = match a.kind {
                SystemKind::Path => UniformCostKind::Path,
                SystemKind::Cycle => UniformCostKind::Cycle,
                SystemKind::General => UniformCostKind::General,
            };
            let sys = uniform_cost_solve(g, kind)?;
            let shape = match &sys.solution {
                UniformCostSolution::Unique { .. } => "unique solution",
                UniformCostSolution::Family { .. } => "infinitely many solutions",
                UniformCostSolution::None => "no solution",
            };
            let text = format!(
                "uniform-cost system: determinant {}, {shape}, nonnegative {}\n",
                fmt_scalar(&sys.determinant),
                sys.nonnegative
            );
            let extra = json!({"determinant": json_scalar(&sys.determinant), "solution": shape, "nonnegative": sys.nonnegative});
            (sys.equilibria(), "uniform-cost", extra, text, exact_tol)
        }
    };
    let (kept, dropped) = verified(g, found, &tol)?;
    let mut extra_text = extra_text;
    if dropped > 0 {
        extra_text.push_str(&format!("{dropped} candidate(s) failed re-verification and were dropped\n"));
    }
    results_output(g, method, &kept, extra, &extra_text, format, out);
    Ok(if kept.is_empty() { 1 } else { 0 })
}

fn start_point<S: Scalar>(g: &Game<S>, x0: Option<&str>) -> Result<MassDistribution<S>, CliError> {
    match x0 {
        None => Ok(MassDistribution::uniform(g.n(), g.r().clone())),
        Some(text) => {
            let values = parse_list(text).map_err(|e| usage(format!("--x0: {e}")))?;
            if values.len() != g.n() {
                return Err(usage(format!("--x0 has {} values for {} vertices", values.len(), g.n())));
            }
            Ok(MassDistribution::new(values.iter().map(as_scalar).collect(), g.r().clone())?)
        }
    }
}

fn run_dynamics<S: Scalar>(g: &Game<S>, o: &DynamicsOptions) -> Result<nbg_core::equilibrium::DynamicsResult<S>, CliError> {
    let x0 = start_point(g, o.x0.as_deref())?;
    let step: S = as_scalar(&num(&o.step, "step")?);
    let gap: S = as_scalar(&num(&o.gap, "gap")?);
    Ok(best_response_dynamics(g, &x0, &step, o.max_iters, &gap)?)
}

fn dynamics(a: &DynamicsArgs, format: Format, out: &mut String) -> Result<i32, CliError> {
    // Dynamics are a float procedure; exact games are converted.
    let g = io::load_game(&a.game)?.to_float();
    let res = run_dynamics(&g, &a.options)?;
    let last = res.trace.last().expect("trace is nonempty");
    match format {
        Format::Csv => {
            let mut header = vec!["iteration".to_string()];
            header.extend((1..=g.n()).map(|i| format!("x{i}")));
            let mut rows = vec![header];
            for (k, x) in res.trace.iter().enumerate() {
                let mut row = vec![k.to_string()];
                row.extend(x.masses().iter().map(|v| fmt_f64(*v)));
                rows.push(row);
            }
            out.push_str(&csv_string(rows));
        }
        Format::Json => {
            let mut v = json!({
                "iterations": res.iterations,
                "converged": res.converged,
                "gap": res.report.worst_gap,
                "x": vec_json(last.masses()),
                "costs": vec_json(&res.report.costs),
            });
            if a.trace {
                v["trace"] = Value::Array(res.trace.iter().map(|x| vec_json(x.masses())).collect());
            }
            push_json(out, &v);
        }
        Format::Table => {
            out.push_str(&game_header(&g));
            if a.trace {
                for (k, x) in res.trace.iter().enumerate() {
                    out.push_str(&format!("{k}: {}\n", vec_text(x.masses())));
                }
            }
            out.push_str(&format!("moves: {}\n", res.iterations));
            out.push_str(&format!("final x: {}\n", vec_text(last.masses())));
            out.push_str(&format!("costs: {}\n", vec_text(&res.report.costs)));
            out.push_str(&format!("gap: {}\n", fmt_f64(res.report.worst_gap)));
            out.push_str(&format!("converged: {}\n", if res.converged { "yes" } else { "no" }));
        }
    }
    Ok(if res.converged { 0 } else { 1 })
}

fn price_json<S: Scalar>(p: &PriceRatio<S>) -> Value {
    match p {
        PriceRatio::Finite(v) => json_scalar(v),
        PriceRatio::Unbounded => json!("unbounded"),
        PriceRatio::Undefined => json!("undefined"),
    }
}

fn price_text<S: Scalar>(p: &PriceRatio<S>) -> String {
    match p {
        PriceRatio::Finite(v) => fmt_scalar(v),
        PriceRatio::Unbounded => "unbounded".into(),
        PriceRatio::Undefined => "undefined (0/0)".into(),
    }
}

fn optimum_json<S: Scalar>(o: &SocialOptimum<S>) -> Value {
    json!({"x": vec_json(o.x.masses()), "value": json_scalar(&o.value), "exact": o.exact})
}

fn metrics(a: &MetricsArgs, seed: u64, format: Format, out: &mut String) -> Result<i32, CliError> {
    let game = io::load_game(&a.game)?;
    let options = SearchOptions { starts: a.starts, seed, ..SearchOptions::default() };
    with_game!(&game, g => {
        if g.affine_costs().is_none() {
            return Err(usage("metrics need an affine game"));
        }
        let report = price_report(g, a.max_n, &options)?;
        metrics_output(g, &report, format, out);
    });
    Ok(0)
}

fn metrics_output<S: Scalar>(g: &Game<S>, r: &PriceReport<S>, format: Format, out: &mut String) {
    match format {
        Format::Json => push_json(
            out,
            &json!({
                "game": game_json(g),
                "poa_u": price_json(&r.poa_u),
                "poa_e": price_json(&r.poa_e),
                "pos_u": price_json(&r.pos_u),
                "pos_e": price_json(&r.pos_e),
                "exact_u": r.exact_u(),
                "exact_e": r.exact_e(),
                "worst_equilibrium_cost": json_scalar(&r.worst_equilibrium_cost),
                "best_equilibrium_cost": json_scalar(&r.best_equilibrium_cost),
                "equilibrium_results": r.equilibria.len(),
                "optimum_u": optimum_json(&r.optimum_u),
                "optimum_e": optimum_json(&r.optimum_e),
            }),
        ),
        _ => {
            let flag = |exact: bool| if exact { "exact" } else { "estimate" };
            out.push_str(&game_header(g));
            out.push_str(&format!("equilibrium results: {}\n", r.equilibria.len()));
            out.push_str(&format!("worst equilibrium cost: {}\n", fmt_scalar(&r.worst_equilibrium_cost)));
            out.push_str(&format!("best equilibrium cost: {}\n", fmt_scalar(&r.best_equilibrium_cost)));
            out.push_str(&format!(
                "utilitarian optimum: {} at {} ({})\n",
                fmt_scalar(&r.optimum_u.value),
                vec_text(r.optimum_u.x.masses()),
                flag(r.exact_u())
            ));
            out.push_str(&format!(
                "egalitarian optimum: {} at {} ({})\n",
                fmt_scalar(&r.optimum_e.value),
                vec_text(r.optimum_e.x.masses()),
                flag(r.exact_e())
            ));
            out.push_str(&format!("PoA_u: {} ({})\n", price_text(&r.poa_u), flag(r.exact_u())));
            out.push_str(&format!("PoS_u: {} ({})\n", price_text(&r.pos_u), flag(r.exact_u())));
            out.push_str(&format!("PoA_e: {} ({})\n", price_text(&r.poa_e), flag(r.exact_e())));
            out.push_str(&format!("PoS_e: {} ({})\n", price_text(&r.pos_e), flag(r.exact_e())));
        }
    }
}

fn family(a: &FamilyArgs, out: &mut String) -> Result<i32, CliError> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| usage(format!("--{flag} is required for this family")));
    let fam = match a.kind {
        FamilyKind::Path => GraphFamily::Path(need(a.n, "n")?),
        FamilyKind::Cycle => GraphFamily::Cycle(need(a.n, "n")?),
        FamilyKind::Star => GraphFamily::Star(need(a.n, "n")?),
        FamilyKind::Bipartite => GraphFamily::CompleteBipartite(need(a.p, "p")?, need(a.q, "q")?),
    };
    let alpha = num(&a.alpha, "alpha")?;
    let r = num(&a.r, "r")?;
    let text = match (&alpha, &r) {
        (Num::Exact(al), Num::Exact(rr)) => io::game_to_json(&make_family(fam, al.clone(), rr.clone())?)?,
        _ => io::game_to_json(&make_family(fam, alpha.to_f64(), r.to_f64())?)?,
    };
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|source| InputError::Io { path: path.display().to_string(), source })?;
            out.push_str(&format!("wrote {}\n", path.display()));
        }
        None => out.push_str(&text),
    }
    Ok(0)
}

fn scan(a: &ScanArgs, format: Format, out: &mut String) -> Result<i32, CliError> {
    let (which, lowest) = match a.family {
        ScanKind::Path => (ScanFamily::Path, 2),
        ScanKind::Cycle => (ScanFamily::Cycle, 3),
    };
    let n_min = a.n_min.unwrap_or(lowest);
    if n_min < lowest || n_min > a.n_max {
        return Err(usage(format!("n range must satisfy {lowest} ≤ n-min ≤ n-max")));
    }
    let alphas: Vec<Rational> = match &a.alphas {
        None => default_scan_grid(),
        Some(text) => parse_list(text)
            .map_err(|e| usage(format!("--alphas: {e}")))?
            .into_iter()
            .map(|v| v.exact().cloned().ok_or_else(|| usage("scan α values must be exact")))
            .collect::<Result<_, _>>()?,
    };
    let rows = conjecture_scan(which, n_min..=a.n_max, &alphas)?;
    let bad: Vec<&ScanRow> = rows.iter().filter(|r| r.is_counterexample()).collect();
    match format {
        Format::Json => {
            let list: Vec<Value> = rows
                .iter()
                .map(|r| json!({"n": r.n, "alpha": r.alpha.to_string(), "det": r.determinant.to_string(), "unique": r.unique, "nonneg": r.nonnegative}))
                .collect();
            push_json(out, &json!({"rows": list, "counterexamples": bad.len()}));
        }
        _ => {
            let mut table = vec![vec!["n".to_string(), "alpha".into(), "det".into(), "unique".into(), "nonneg".into()]];
            table.extend(rows.iter().map(scan_record));
            if format == Format::Csv {
                out.push_str(&csv_string(table));
            } else {
                for row in table {
                    out.push_str(&format!("{:>3} {:>6} {:>28} {:>6} {:>6}\n", row[0], row[1], row[2], row[3], row[4]));
                }
            }
        }
    }
    for r in &bad {
        eprintln!("counterexample: {}", scan_record(r).join(","));
    }
    Ok(if bad.is_empty() { 0 } else { 1 })
}

pub fn scan_record(r: &ScanRow) -> Vec<String> {
    vec![r.n.to_string(), r.alpha.to_string(), r.determinant.to_string(), r.unique.to_string(), r.nonnegative.to_string()]
}

fn reproduce_cmd(a: &ReproduceArgs, format: Format, out: &mut String) -> Result<i32, CliError> {
    let checks = match &a.section {
        Some(s) => reproduce::run_section(s).map_err(|e| usage(e.to_string()))?,
        None => reproduce::run_all(),
    };
    let all_pass = checks.iter().all(|c| c.pass);
    match format {
        Format::Json => {
            let list: Vec<Value> = checks
                .iter()
                .map(|c| json!({"section": c.section, "check": c.label, "expected": c.expected, "computed": c.computed, "pass": c.pass}))
                .collect();
            push_json(out, &json!({"checks": list, "pass": all_pass}));
        }
        Format::Csv => {
            let mut rows = vec![vec!["section".to_string(), "check".into(), "expected".into(), "computed".into(), "pass".into()]];
            rows.extend(checks.iter().map(|c| {
                vec![c.section.to_string(), c.label.clone(), c.expected.clone(), c.computed.clone(), c.pass.to_string()]
            }));
            out.push_str(&csv_string(rows));
        }
        Format::Table => out.push_str(&reproduce::render(&checks)),
    }
    Ok(if all_pass { 0 } else { 1 })
}

fn kernels(a: &KernelArgs, format: Format, out: &mut String) -> Result<i32, CliError> {
    let d = io::load_digraph(&a.digraph)?;
    let ks = enumerate_kernels(&d)?;
    let cmp = match &a.alpha {
        None => None,
        Some(text) => {
            let alpha = num(text, "alpha")?;
            let grid = [q(1, 1000), q(1, 10)];
            Some(match alpha {
                Num::Exact(al) => strong_supports_match_kernels(&d, al, q(1, 1), &grid)?,
                Num::Float(al) => {
                    let grid: Vec<f64> = grid.iter().map(Scalar::to_f64).collect();
                    strong_supports_match_kernels(&d, al, 1.0, &grid)?
                }
            })
        }
    };
    let sets = |v: &[Vec<usize>]| v.iter().map(|k| one_based(k)).collect::<Vec<_>>();
    let disc = |c: &KernelDiscrepancy| match c {
        KernelDiscrepancy::KernelWithoutStrongEquilibrium(k) => {
            format!("kernel {} has no strong equilibrium", support_text(k))
        }
        KernelDiscrepancy::StrongSupportNotKernel(k) => {
            format!("strong equilibrium support {} is not a kernel", support_text(k))
        }
    };
    match format {
        Format::Json => {
            let c = cmp.as_ref().map(|c| {
                json!({
                    "strong_supports": sets(&c.strong_supports),
                    "weak_supports": sets(&c.weak_supports),
                    "discrepancies": c.discrepancies.iter().map(disc).collect::<Vec<_>>(),
                })
            });
            push_json(out, &json!({"n": d.n(), "arcs": d.arc_count(), "kernels": sets(&ks), "comparison": c}));
        }
        _ => {
            out.push_str(&format!("digraph: {} vertices, {} arcs\n", d.n(), d.arc_count()));
            out.push_str(&format!("kernels: {}\n", ks.len()));
            for k in &ks {
                out.push_str(&format!("  {}\n", support_text(k)));
            }
            if let Some(c) = &cmp {
                out.push_str("strong equilibrium supports:\n");
                for k in &c.strong_supports {
                    out.push_str(&format!("  {}\n", support_text(k)));
                }
                out.push_str("equilibrium supports that are not strong:\n");
                for k in &c.weak_supports {
                    out.push_str(&format!("  {}\n", support_text(k)));
                }
                out.push_str(&format!("discrepancies: {}\n", c.discrepancies.len()));
                for x in &c.discrepancies {
                    out.push_str(&format!("  {}\n", disc(x)));
                }
            }
        }
    }
    Ok(if cmp.is_none_or(|c| c.matches()) { 0 } else { 1 })
}

fn curve(a: &CurveArgs, format: Format, out: &mut String) -> Result<i32, CliError> {
    let game = io::load_game(&a.game)?;
    if game.n() != 2 {
        return Err(usage("curves are drawn for two-vertex games"));
    }
    if a.points == 0 {
        return Err(usage("--points must be positive"));
    }
    let rows = with_game!(&game, g => curve_rows(g, a.points as i64));
    match format {
        Format::Json => push_json(out, &json!({"x1": rows.iter().map(|r| r[0]).collect::<Vec<_>>(),
            "C1": rows.iter().map(|r| r[1]).collect::<Vec<_>>(), "C2": rows.iter().map(|r| r[2]).collect::<Vec<_>>()})),
        _ => {
            let mut table = vec![vec!["x1".to_string(), "C1".into(), "C2".into()]];
            table.extend(rows.iter().map(|r| r.iter().map(|v| fmt_f64(*v)).collect()));
            out.push_str(&csv_string(table));
        }
    }
    Ok(0)
}

/// Costs at `x1 = k·r/steps`, `k = 0..=steps`.
fn curve_rows<S: Scalar>(g: &Game<S>, steps: i64) -> Vec<[f64; 3]> {
    (0..=steps)
        .map(|k| {
            let x1 = g.r().clone() * S::from_ratio(k, steps);
            let x = vec![x1.clone(), g.r().clone() - x1];
            let c = g.costs_at(&x);
            [x[0].to_f64(), c[0].to_f64(), c[1].to_f64()]
        })
        .collect()
}
