//! The `bchg` command line: argument parsing, dispatch and output.
//!
//! Every run prints `{config, results: [{name, value, error, pass}], version}`
//! (or the same rows as CSV). Exit codes: 0 ok, 2 domain/usage, 3 accuracy,
//! 4 failed verification.

use crate::error::{Error, Result};
use crate::fieldalg::{d_argument, ChamberPoint, FieldTag};
use crate::hypergroup::verify::{
    group_case_oracle, group_case_params, verify_axioms, verify_dual, verify_fjk_rank1, verify_growth_rank1,
    verify_haar, verify_product, ProductTarget, Report,
};
use crate::hypergroup::{Convolver, TestFunction};
use crate::hypfun::{c_function, hypergeom_eval, inverse_c_abs_sqr, Route};
use crate::measures::{ball_sample, haar_unitary_sample, kappa, stream_rng, BallProposal, QuadratureSpec};
use crate::rootdata::{derive_params, BCParams, SpectralParam};
use crate::transform::{SpectralGrid, Transform, TransformTable};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const EXIT_VERIFICATION_FAILED: i32 = 4;

const DEFAULT_MC_SAMPLES: usize = 100_000;
const DEFAULT_FUNCTION: &str = "gauss:0.8,0.3";
/// Reference bump used to fix the transform inversion constant.
const REFERENCE_BUMP: TestFunction = TestFunction::Gauss {
    center: 0.0,
    width: 0.5,
};
const ROUND_TRIP_TOL: f64 = 1e-3;
const TRANSLATE_ROUTES_TOL: f64 = 1e-4;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "bchg",
    version,
    about = "Hypergeometric functions, product formulas and hypergroup convolutions of type BC"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, global = true, value_enum, ignore_case = true, default_value_t = FieldArg::R)]
    pub field: FieldArg,
    #[arg(long, global = true, default_value_t = 1)]
    pub rank: usize,
    /// Multiplicity parameter; defaults to pd/2 when --p is given.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, global = true)]
    pub p: Option<usize>,
    /// Spectral parameter, coordinates `a+bi` separated by `;` or `,`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Dominant weight (partition), e.g. `1,0`.
    #[arg(long, global = true)]
    pub weight: Option<String>,
    /// Chamber points, coordinates grouped by the rank: `0.3,0.1` is one
    /// rank-2 point or two rank-1 points.
    #[arg(long, global = true)]
    pub t: Option<String>,
    #[arg(long, global = true)]
    pub s: Option<String>,
    #[arg(long, global = true)]
    pub r: Option<String>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Tensor quadrature (rank one) or Monte Carlo; tensor is the rank-one default.
    #[arg(long, global = true, value_enum)]
    pub quad: Option<QuadArg>,
    #[arg(long = "quad-order", global = true, default_value_t = 48)]
    pub quad_order: usize,
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Test function: gauss:c,w | cosine:c,w | indicator:r,w | const:v.
    #[arg(long, global = true)]
    pub func: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// φ_λ(t) (or F(2ν+ρ; t) with --weight) at a list of points.
    Eval {
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
    },
    /// c(iλ) and the Plancherel density 1/|c(iλ)|².
    CFunc,
    /// (δ_t ∗ δ_s)(f).
    Convolve,
    /// τ_s f at a list of points.
    Translate {
        /// Also evaluate through the transform (rank one) and compare.
        #[arg(long)]
        via_transform: bool,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Rank-one transform of a test function.
    Transform {
        #[arg(value_enum)]
        action: TransformAction,
        /// Table written by `transform forward` (CSV or JSON), for `inverse`.
        #[arg(long)]
        table: Option<PathBuf>,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Verification suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
    },
    /// Samples of the kernel argument d(t,s;v,w) with their ball weights.
    Sample,
    /// The ball normalization κ_μ.
    Kappa,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct GridArgs {
    /// Spectral cutoff Λ.
    #[arg(long = "lambda-max", default_value_t = 24.0)]
    pub lambda_max: f64,
    #[arg(long = "grid-points", default_value_t = 512)]
    pub grid_points: usize,
    /// Support radius of the forward quadrature (defaults to that of --func).
    #[arg(long)]
    pub support: Option<f64>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FieldArg {
    #[value(name = "R")]
    R,
    #[value(name = "C")]
    C,
    #[value(name = "H")]
    H,
}

impl From<FieldArg> for FieldTag {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::R => FieldTag::R,
            FieldArg::C => FieldTag::C,
            FieldArg::H => FieldTag::H,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadArg {
    Tensor,
    Mc,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteArg {
    Auto,
    Rank1,
    Jacobi,
    HcLeading,
}

impl From<RouteArg> for Route {
    fn from(r: RouteArg) -> Self {
        match r {
            RouteArg::Auto => Route::Auto,
            RouteArg::Rank1 => Route::Rank1Gauss,
            RouteArg::Jacobi => Route::JacobiPoly,
            RouteArg::HcLeading => Route::HcLeading,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TransformAction {
    Forward,
    Inverse,
    Roundtrip,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Product,
    Axioms,
    Haar,
    Fjk,
    GroupCase,
    Dual,
    Growth,
}

/// The resolved inputs of a run, echoed with every result.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub field: FieldTag,
    pub rank: usize,
    pub mu: f64,
    pub p: Option<usize>,
    pub lambda: Option<String>,
    pub weight: Option<Vec<usize>>,
    pub t: Vec<Vec<f64>>,
    pub s: Vec<Vec<f64>>,
    pub r: Vec<Vec<f64>>,
    pub seed: u64,
    pub quad: QuadratureSpec,
    pub tol: Option<f64>,
    pub func: String,
    pub format: Format,
    pub out: Option<PathBuf>,
    /// Subcommand-specific settings.
    pub extra: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultRow {
    pub name: String,
    pub value: Value,
    pub error: Option<f64>,
    pub pass: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<Route>,
}

impl ResultRow {
    fn value(name: impl Into<String>, value: Value) -> Self {
        ResultRow {
            name: name.into(),
            value,
            error: None,
            pass: None,
            route: None,
        }
    }

    fn estimate(name: impl Into<String>, value: Value, error: f64) -> Self {
        ResultRow {
            error: Some(error),
            ..Self::value(name, value)
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Output {
    pub config: RunConfig,
    pub results: Vec<ResultRow>,
    pub version: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<TransformTable>,
}

impl Output {
    /// False when any verification row failed.
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass != Some(false))
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("output is serializable");
                s.push('\n');
                s
            }
            Format::Csv => match &self.table {
                Some(t) if self.config.command == "transform forward" => t.to_csv(),
                _ => self.rows_csv(),
            },
        }
    }

    fn rows_csv(&self) -> String {
        let mut out = String::from("name,value,error,pass\n");
        for r in &self.results {
            let opt = |x: Option<String>| x.unwrap_or_default();
            let _ = writeln!(
                out,
                "{},{},{},{}",
                csv_field(&r.name),
                csv_field(&flat(&r.value)),
                opt(r.error.map(|e| e.to_string())),
                opt(r.pass.map(|p| p.to_string()))
            );
        }
        out
    }
}

fn flat(v: &Value) -> String {
    match v {
        Value::Array(a) => a.iter().map(flat).collect::<Vec<_>>().join(";"),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn fmt_point(p: &ChamberPoint) -> String {
    p.coords().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split([',', ';'])
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<f64>()
                .map_err(|e| Error::Usage(format!("cannot parse '{x}': {e}")))
        })
        .collect()
}

/// Comma/semicolon separated coordinates grouped into rank-`q` chamber points.
pub fn parse_points(s: &str, q: usize) -> Result<Vec<ChamberPoint>> {
    let xs = parse_floats(s)?;
    if xs.is_empty() || xs.len() % q != 0 {
        return Err(Error::Usage(format!(
            "'{s}' has {} coordinates, not a positive multiple of the rank {q}",
            xs.len()
        )));
    }
    xs.chunks(q).map(|c| ChamberPoint::new(c.to_vec())).collect()
}

fn default_point(q: usize, first: f64) -> ChamberPoint {
    ChamberPoint::new((0..q).map(|i| first / (1 + i) as f64).collect()).expect("decreasing and positive")
}

/// Inputs shared by all subcommands after validation.
struct Ctx {
    params: BCParams,
    config: RunConfig,
    quad: QuadratureSpec,
    func: TestFunction,
    lambda: Option<SpectralParam>,
    weight: Option<Vec<usize>>,
    t: Vec<ChamberPoint>,
    s: Vec<ChamberPoint>,
    r: Vec<ChamberPoint>,
}

impl Ctx {
    fn new(cli: &Cli) -> Result<Self> {
        let c = &cli.common;
        let field: FieldTag = c.field.into();
        let q = c.rank;
        let mu = match (c.mu, c.p) {
            (Some(mu), _) => mu,
            (None, Some(p)) => p as f64 * field.d() / 2.0,
            (None, None) => return Err(Error::Usage("--mu (or --p) is required".into())),
        };
        let params = derive_params(field, q, mu)?;
        let tensor = match c.quad {
            Some(QuadArg::Tensor) => true,
            Some(QuadArg::Mc) => false,
            None => q == 1 && c.samples.is_none(),
        };
        let quad = if tensor {
            QuadratureSpec::tensor(c.quad_order)
        } else {
            QuadratureSpec::monte_carlo(c.samples.unwrap_or(DEFAULT_MC_SAMPLES), c.seed)
        };
        let func: TestFunction = c.func.as_deref().unwrap_or(DEFAULT_FUNCTION).parse()?;
        let lambda = c.lambda.as_deref().map(SpectralParam::parse).transpose()?;
        if let Some(l) = &lambda {
            if l.rank() != q {
                return Err(Error::domain(format!(
                    "lambda has {} coordinates for rank {q}",
                    l.rank()
                )));
            }
        }
        let weight = c
            .weight
            .as_deref()
            .map(|w| {
                w.split([',', ';'])
                    .map(|x| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|e| Error::Usage(format!("weight '{x}': {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        if let Some(w) = &weight {
            if w.len() != q || w.windows(2).any(|p| p[0] < p[1]) {
                return Err(Error::domain(format!("weight {w:?} is not a partition of length {q}")));
            }
        }
        let points = |s: &Option<String>, first: f64| -> Result<Vec<ChamberPoint>> {
            match s {
                Some(s) => parse_points(s, q),
                None => Ok(vec![default_point(q, first)]),
            }
        };
        let (t, s, r) = (points(&c.t, 0.9)?, points(&c.s, 1.3)?, points(&c.r, 0.5)?);
        let coords = |v: &[ChamberPoint]| v.iter().map(|p| p.coords().to_vec()).collect();
        let config = RunConfig {
            command: String::new(),
            field,
            rank: q,
            mu,
            p: c.p,
            lambda: lambda.as_ref().map(|l| l.to_string()),
            weight: weight.clone(),
            t: coords(&t),
            s: coords(&s),
            r: coords(&r),
            seed: c.seed,
            quad,
            tol: c.tol,
            func: func.to_string(),
            format: c.format,
            out: c.out.clone(),
            extra: BTreeMap::new(),
        };
        Ok(Ctx {
            params,
            config,
            quad,
            func,
            lambda,
            weight,
            t,
            s,
            r,
        })
    }

    fn one(points: &[ChamberPoint], name: &str) -> Result<ChamberPoint> {
        match points {
            [p] => Ok(p.clone()),
            _ => Err(Error::Usage(format!("--{name} takes a single point here"))),
        }
    }

    fn lambda(&self) -> Result<&SpectralParam> {
        self.lambda
            .as_ref()
            .ok_or_else(|| Error::Usage("--lambda is required".into()))
    }

    fn samples(&self, default: usize) -> usize {
        match self.quad {
            QuadratureSpec::MonteCarlo { samples, .. } => samples,
            QuadratureSpec::Tensor { .. } => default,
        }
    }
}

/// Parse the process arguments, run, write the output; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = out.render();
            if let Some(path) = &out.config.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 2;
                }
            } else {
                print!("{text}");
            }
            if out.all_pass() {
                0
            } else {
                EXIT_VERIFICATION_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<Output> {
    let mut ctx = Ctx::new(cli)?;
    let mut table = None;
    let (command, results) = match &cli.command {
        Command::Eval { route } => ("eval".to_string(), cmd_eval(&ctx, (*route).into())?),
        Command::CFunc => ("c-func".into(), cmd_c_func(&ctx)?),
        Command::Convolve => ("convolve".into(), cmd_convolve(&ctx)?),
        Command::Translate { via_transform, grid } => {
            if *via_transform {
                insert_grid(&mut ctx.config, grid);
            }
            ("translate".into(), cmd_translate(&ctx, *via_transform, grid)?)
        }
        Command::Transform {
            action,
            table: path,
            grid,
        } => {
            insert_grid(&mut ctx.config, grid);
            if let Some(p) = path {
                ctx.config.extra.insert("table".into(), json!(p));
            }
            let (rows, t) = cmd_transform(&ctx, *action, path.as_ref(), grid)?;
            table = t;
            (format!("transform {}", action_name(*action)), rows)
        }
        Command::Verify { suite, trials } => {
            if matches!(suite, Suite::Dual | Suite::Growth) {
                ctx.config.extra.insert("trials".into(), json!(trials));
            }
            let rep = cmd_verify(&ctx, *suite, *trials)?;
            (format!("verify {}", rep.suite), report_rows(&rep))
        }
        Command::Sample => ("sample".into(), cmd_sample(&ctx)?),
        Command::Kappa => ("kappa".into(), cmd_kappa(&ctx)?),
    };
    ctx.config.command = command;
    Ok(Output {
        config: ctx.config,
        results,
        version: VERSION,
        table,
    })
}

fn action_name(a: TransformAction) -> &'static str {
    match a {
        TransformAction::Forward => "forward",
        TransformAction::Inverse => "inverse",
        TransformAction::Roundtrip => "roundtrip",
    }
}

fn insert_grid(config: &mut RunConfig, grid: &GridArgs) {
    config.extra.insert("lambda_max".into(), json!(grid.lambda_max));
    config.extra.insert("grid_points".into(), json!(grid.grid_points));
    if let Some(s) = grid.support {
        config.extra.insert("support".into(), json!(s));
    }
}

fn report_rows(rep: &Report) -> Vec<ResultRow> {
    rep.checks
        .iter()
        .map(|c| ResultRow {
            name: c.name.clone(),
            value: json!(c.value),
            error: Some(c.error),
            pass: Some(c.pass),
            route: None,
        })
        .collect()
}

fn cmd_eval(ctx: &Ctx, route: Route) -> Result<Vec<ResultRow>> {
    let (arg, route) = match (&ctx.weight, &ctx.lambda) {
        (Some(nu), _) => (
            ctx.params.weight_to_spectral(nu),
            if route == Route::Auto { Route::JacobiPoly } else { route },
        ),
        (None, Some(l)) => (l.times_i(), route),
        (None, None) => return Err(Error::Usage("eval needs --lambda or --weight".into())),
    };
    ctx.t
        .iter()
        .map(|t| {
            let v = hypergeom_eval(&arg, &ctx.params, t, route)?;
            Ok(ResultRow {
                route: Some(v.path),
                ..ResultRow::value(format!("t={}", fmt_point(t)), complex(v.value))
            })
        })
        .collect()
}

fn cmd_c_func(ctx: &Ctx) -> Result<Vec<ResultRow>> {
    let arg = match (&ctx.weight, &ctx.lambda) {
        (Some(nu), _) => ctx.params.weight_to_spectral(nu),
        (None, Some(l)) => l.times_i(),
        (None, None) => return Err(Error::Usage("c-func needs --lambda or --weight".into())),
    };
    let c = c_function(&arg, &ctx.params);
    let value = if c.finite { complex(c.value) } else { Value::Null };
    Ok(vec![
        ResultRow::value("c", value),
        ResultRow::value("inverse-c-abs-sqr", json!(inverse_c_abs_sqr(&arg, &ctx.params))),
    ])
}

fn test_fn(f: TestFunction) -> impl Fn(&[f64]) -> Result<Complex64> + Sync {
    move |x| Ok(Complex64::new(f.eval(x), 0.0))
}

fn cmd_convolve(ctx: &Ctx) -> Result<Vec<ResultRow>> {
    let t = Ctx::one(&ctx.t, "t")?;
    let s = Ctx::one(&ctx.s, "s")?;
    let est = Convolver::new(&ctx.params, ctx.quad)?.convolve_point(&t, &s, &test_fn(ctx.func))?;
    Ok(vec![
        ResultRow::estimate("convolution", complex(est.value), est.error),
        ResultRow {
            pass: Some(est.support.violations == 0),
            ..ResultRow::value("support-violations", json!(est.support.violations))
        },
    ])
}

fn calibrated_transform(params: &BCParams, support: f64, grid: &GridArgs) -> Result<Transform> {
    let mut reference = Transform::new(params, REFERENCE_BUMP.support_radius(), SpectralGrid::new(24.0, 512)?)?;
    let constant = reference.calibrate(REFERENCE_BUMP)?.constant;
    let mut tr = Transform::new(params, support, SpectralGrid::new(grid.lambda_max, grid.grid_points)?)?;
    tr.set_constant(constant);
    Ok(tr)
}

fn cmd_translate(ctx: &Ctx, via_transform: bool, grid: &GridArgs) -> Result<Vec<ResultRow>> {
    let s = Ctx::one(&ctx.s, "s")?;
    let conv = Convolver::new(&ctx.params, ctx.quad)?;
    let f = test_fn(ctx.func);
    let mut rows = Vec::new();
    let mut quad_values = Vec::new();
    for t in &ctx.t {
        let est = conv.convolve_point(t, &s, &f)?;
        quad_values.push(est.value);
        rows.push(ResultRow::estimate(
            format!("t={}", fmt_point(t)),
            complex(est.value),
            est.error,
        ));
    }
    if via_transform {
        let sr = s.coords()[0];
        let support = grid.support.unwrap_or(ctx.func.support_radius() + sr);
        let tr = calibrated_transform(&ctx.params, support, grid)?;
        let func = ctx.func;
        let table = tr.forward(&move |x| Ok(Complex64::new(func.profile(x), 0.0)))?;
        let ts: Vec<f64> = ctx.t.iter().map(|t| t.coords()[0]).collect();
        let values = tr.translate(&table, sr, &ts)?;
        let mut worst = 0.0f64;
        for ((t, v), q) in ctx.t.iter().zip(&values).zip(&quad_values) {
            worst = worst.max((v - q).norm());
            rows.push(ResultRow::value(format!("t={};transform", fmt_point(t)), complex(*v)));
        }
        let tol = ctx.config.tol.unwrap_or(TRANSLATE_ROUTES_TOL);
        rows.push(ResultRow {
            pass: Some(worst <= tol),
            ..ResultRow::estimate("routes-agree", json!(worst), tol)
        });
    }
    Ok(rows)
}

fn read_table(path: &PathBuf) -> Result<TransformTable> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))?;
    let bad = |m: String| Error::Usage(format!("{}: {m}", path.display()));
    let (mut lambda_im, mut values, mut support) = (Vec::new(), Vec::new(), 1.0);
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        let t = v.get("table").ok_or_else(|| bad("no `table` entry".into()))?;
        let num = |x: &Value| x.as_f64().ok_or_else(|| bad(format!("not a number: {x}")));
        for y in t["lambda_im"].as_array().ok_or_else(|| bad("no lambda_im".into()))? {
            lambda_im.push(num(y)?);
        }
        for z in t["values"].as_array().ok_or_else(|| bad("no values".into()))? {
            values.push(Complex64::new(num(&z[0])?, num(&z[1])?));
        }
        support = t["support"].as_f64().unwrap_or(support);
    } else {
        for line in text.lines().skip(1).filter(|l| !l.trim().is_empty()) {
            let xs = parse_floats(line)?;
            let [y, re, im] = xs[..] else {
                return Err(bad(format!("expected lambda_im,re,im: '{line}'")));
            };
            lambda_im.push(y);
            values.push(Complex64::new(re, im));
        }
    }
    if values.is_empty() || values.len() != lambda_im.len() {
        return Err(Error::Usage(format!(
            "{}: empty or ragged transform table",
            path.display()
        )));
    }
    Ok(TransformTable {
        lambda_im,
        values,
        error: f64::NAN,
        support,
        nodes: 0,
    })
}

fn cmd_transform(
    ctx: &Ctx,
    action: TransformAction,
    path: Option<&PathBuf>,
    grid: &GridArgs,
) -> Result<(Vec<ResultRow>, Option<TransformTable>)> {
    if ctx.params.q != 1 {
        return Err(Error::Unsupported("transforms are implemented for rank 1".into()));
    }
    let func = ctx.func;
    let g = move |x: f64| Ok(Complex64::new(func.profile(x), 0.0));
    let support = || -> Result<f64> {
        let r = grid.support.unwrap_or(func.support_radius());
        if r.is_finite() {
            Ok(r)
        } else {
            Err(Error::domain(
                "the transform needs a compactly supported function or --support",
            ))
        }
    };
    match action {
        TransformAction::Forward => {
            let tr = Transform::new(
                &ctx.params,
                support()?,
                SpectralGrid::new(grid.lambda_max, grid.grid_points)?,
            )?;
            let table = tr.forward(&g)?;
            let rows = vec![
                ResultRow::value("forward-error", json!(table.error)),
                ResultRow::value("nodes", json!(table.nodes)),
                ResultRow::value("grid-points", json!(table.values.len())),
            ];
            Ok((rows, Some(table)))
        }
        TransformAction::Inverse => {
            let path = path.ok_or_else(|| Error::Usage("inverse needs --table".into()))?;
            let table = read_table(path)?;
            let mut tr = calibrated_transform(&ctx.params, table.support, grid)?;
            let constant = tr.calibration().expect("set").constant;
            tr = Transform::new(
                &ctx.params,
                table.support,
                SpectralGrid {
                    y: table.lambda_im.clone(),
                },
            )?;
            tr.set_constant(constant);
            let ts: Vec<f64> = ctx.t.iter().map(|t| t.coords()[0]).collect();
            let values = tr.inverse(&table, &ts)?;
            Ok((
                ts.iter()
                    .zip(values)
                    .map(|(t, v)| ResultRow::value(format!("t={t}"), complex(v)))
                    .collect(),
                None,
            ))
        }
        TransformAction::Roundtrip => {
            let tr = calibrated_transform(&ctx.params, support()?, grid)?;
            let cal = tr.calibration().expect("set");
            let tol = ctx.config.tol.unwrap_or(ROUND_TRIP_TOL);
            let rt = tr.round_trip_error(func)?;
            let pv = tr.parseval_error(func)?;
            Ok((
                vec![
                    ResultRow::value("inversion-constant", json!(cal.constant)),
                    ResultRow::value("inversion-constant-theory", json!(cal.theory)),
                    ResultRow {
                        pass: Some(rt <= tol),
                        ..ResultRow::estimate("roundtrip-max-rel-error", json!(rt), tol)
                    },
                    ResultRow {
                        pass: Some(pv <= tol),
                        ..ResultRow::estimate("parseval-rel-error", json!(pv), tol)
                    },
                ],
                None,
            ))
        }
    }
}

fn cmd_verify(ctx: &Ctx, suite: Suite, trials: usize) -> Result<Report> {
    let p = &ctx.params;
    let one = |v: &[ChamberPoint], n: &str| Ctx::one(v, n);
    match suite {
        Suite::Product => {
            let target = match (&ctx.weight, &ctx.lambda) {
                (Some(nu), _) => ProductTarget::Weight(nu.clone()),
                (None, Some(l)) => {
                    if l.rank() != 1 {
                        return Err(Error::Unsupported(
                            "generic spectral parameters need rank 1; use --weight".into(),
                        ));
                    }
                    ProductTarget::Spectral(l.0[0])
                }
                (None, None) => return Err(Error::Usage("product needs --lambda or --weight".into())),
            };
            verify_product(
                &target,
                &one(&ctx.t, "t")?,
                &one(&ctx.s, "s")?,
                p,
                ctx.quad,
                ctx.config.tol,
            )
        }
        Suite::Axioms => verify_axioms(
            &one(&ctx.r, "r")?,
            &one(&ctx.s, "s")?,
            &one(&ctx.t, "t")?,
            ctx.func,
            p,
            ctx.quad,
            ctx.samples(20_000),
            ctx.config.seed,
        ),
        Suite::Haar => verify_haar(ctx.func, &one(&ctx.s, "s")?, p, ctx.quad),
        Suite::Fjk => {
            let l = ctx.lambda()?;
            if l.rank() != 1 {
                return Err(Error::domain("the (r, psi) product formula is rank one"));
            }
            let (t, s) = (one(&ctx.t, "t")?, one(&ctx.s, "s")?);
            verify_fjk_rank1(l.0[0], t.coords()[0], s.coords()[0], p, ctx.quad)
        }
        Suite::GroupCase => {
            let pp = ctx
                .config
                .p
                .ok_or_else(|| Error::Usage("group-case needs --p".into()))?;
            let params = group_case_params(p.field, p.q, pp)?;
            if (params.mu - p.mu).abs() > 1e-12 {
                return Err(Error::domain(format!(
                    "group case needs mu = pd/2 = {} (got {})",
                    params.mu, p.mu
                )));
            }
            group_case_oracle(
                pp,
                &one(&ctx.t, "t")?,
                &one(&ctx.s, "s")?,
                &params,
                &test_fn(ctx.func),
                ctx.samples(DEFAULT_MC_SAMPLES),
                ctx.config.seed,
            )
        }
        Suite::Dual => verify_dual(p, trials, ctx.config.seed),
        Suite::Growth => verify_growth_rank1(p, trials, ctx.config.seed),
    }
}

fn cmd_sample(ctx: &Ctx) -> Result<Vec<ResultRow>> {
    let t = Ctx::one(&ctx.t, "t")?;
    let s = Ctx::one(&ctx.s, "s")?;
    let n = ctx.samples(1000);
    let mut rng = stream_rng(ctx.config.seed, 0);
    (0..n)
        .map(|_| {
            let v = haar_unitary_sample(ctx.params.field, ctx.params.q, &mut rng);
            let b = ball_sample(&ctx.params, BallProposal::default(), &mut rng)?;
            let d = d_argument(&t, &s, &v, &b.w)?;
            let mut value: Vec<f64> = d.coords().to_vec();
            value.push(b.weight);
            Ok(ResultRow::value("d,weight", json!(value)))
        })
        .collect()
}

fn cmd_kappa(ctx: &Ctx) -> Result<Vec<ResultRow>> {
    let quad = match ctx.quad {
        QuadratureSpec::Tensor { .. } if ctx.params.q != 1 => {
            QuadratureSpec::monte_carlo(DEFAULT_MC_SAMPLES, ctx.config.seed)
        }
        q => q,
    };
    let k = kappa(&ctx.params, &quad)?;
    Ok(vec![ResultRow::estimate("kappa", json!(k.value), k.error)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Result<Output> {
        run(&Cli::try_parse_from(std::iter::once("bchg").chain(args.iter().copied())).unwrap())
    }

    #[test]
    fn points_are_grouped_by_rank() {
        assert_eq!(parse_points("0,0.5,1.0", 1).unwrap().len(), 3);
        assert_eq!(parse_points("0.3,0.1", 2).unwrap().len(), 1);
        assert!(parse_points("0.3,0.1,0.2", 2).is_err());
        assert!(parse_points("0.1,0.3", 2).is_err());
    }

    #[test]
    fn eval_starts_at_one() {
        let out = run_args(&[
            "eval",
            "--field",
            "C",
            "--mu",
            "3",
            "--lambda",
            "1.7",
            "--t",
            "0,0.5,1.0",
        ])
        .unwrap();
        assert_eq!(out.results.len(), 3);
        assert_eq!(out.results[0].value, json!([1.0, 0.0]));
    }

    #[test]
    fn invalid_mu_names_the_bound() {
        let err = run_args(&["eval", "--rank", "2", "--mu", "1", "--weight", "1,0", "--t", "0.3,0.1"]).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("gamma - 1 = 1.5"), "{err}");
    }

    #[test]
    fn csv_rows() {
        let mut out = run_args(&["c-func", "--mu", "2", "--lambda", "0.5"]).unwrap();
        out.config.format = Format::Csv;
        let text = out.render();
        assert!(text.starts_with("name,value,error,pass\nc,"));
    }
}
