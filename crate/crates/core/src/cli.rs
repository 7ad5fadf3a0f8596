//! Command-line front end: evaluation, constants, certification, reduction
//! and minimization. Every command produces one [`RunReport`], printed once
//! at the end as text or JSON.
//!
//! Exit codes: 0 pass, 1 a certificate or check failed, 2 usage or domain
//! error.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::certify::{
    arc_sweep, bracket_suite, certify_claim, lower_bound_suite, ArcReport, ClaimId, GridSpec,
    Sample, SignCertificate, Target, DEFAULT_S,
};
use crate::lattice::{
    minimize, theta_derivative, zeta_derivative, zeta_direct, Derivative, Functional,
};
use crate::modular::{reduce, UpperHalfPoint};
use crate::series_bounds::{
    composite_constants, f_items_suite, q_ratio_suite, quotient_suite, step_grid, SuiteReport,
    CONSTANT_TOLERANCE,
};
use crate::theta1d::{evaluate as theta1d_evaluate, Theta1dKind, Theta1dPoint};
use crate::{Error, Truncation};

#[derive(Debug, Parser)]
#[command(
    name = "thetazeta",
    version,
    about = "Lattice theta and Epstein zeta functions on the upper half-plane"
)]
pub struct Cli {
    /// Absolute error tolerance for every evaluation [default: 1e-13]
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Print the report as a single JSON object
    #[arg(long, global = true)]
    pub json: bool,
    /// Write grid samples to this CSV file
    #[arg(long, global = true)]
    pub dump: Option<PathBuf>,
    /// key=value file with default settings; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads, 0 picks one per core [default: 0]
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one function at one point
    Eval(EvalArgs),
    /// Recompute the composite constants and compare with the printed values
    Constants,
    /// Run a certification suite
    Certify(CertifyArgs),
    /// Reduce a point to the fundamental domain
    Reduce(PointArgs),
    /// Locally minimize theta or zeta over the fundamental domain
    Minimize(MinimizeArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalFn {
    Theta,
    ThetaX,
    ThetaY,
    ThetaXy,
    ThetaXyy,
    Zeta,
    ZetaDirect,
    ZetaX,
    ZetaY,
    ZetaXy,
    ZetaXyy,
    Theta1d,
    Theta1dDx,
    Theta1dDy,
    Theta1dDxy,
    Theta1dDxxy,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub function: EvalFn,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long)]
    pub y: Option<f64>,
    /// Width of the 1-d theta function
    #[arg(long = "X")]
    pub width: Option<f64>,
    /// Phase of the 1-d theta function
    #[arg(long = "Y", allow_negative_numbers = true)]
    pub phase: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    Prop1,
    Prop2,
    Prop3,
    Prop4,
    #[value(name = "thm1-1")]
    Thm1_1,
    #[value(name = "thm1-2")]
    Thm1_2,
    #[value(name = "cor1-thetax")]
    Cor1ThetaX,
    #[value(name = "cor1-thetaxy")]
    Cor1ThetaXY,
    #[value(name = "cor1-zetax")]
    Cor1ZetaX,
    #[value(name = "cor1-zetaxy")]
    Cor1ZetaXY,
    Lemma25,
    Lemma24,
    Quotients,
    /// Lower bounds for theta_xy and -theta_xyy plus their bracket constants
    Bounds,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    #[arg(long, value_enum)]
    pub claim: Claim,
    /// Grid resolution (points per axis)
    #[arg(long)]
    pub grid: Option<usize>,
    /// Comma-separated alpha values
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub alpha: Option<Vec<f64>>,
    /// Comma-separated s values
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub s: Option<Vec<f64>>,
    /// Largest sampled y
    #[arg(long)]
    pub y_cap: Option<f64>,
    /// Distance kept from open boundaries
    #[arg(long)]
    pub inset: Option<f64>,
    /// Grid step of the arc checks
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub x: f64,
    #[arg(long)]
    pub y: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MinimizeFn {
    Theta,
    Zeta,
}

#[derive(Debug, Args)]
pub struct MinimizeArgs {
    #[arg(long = "fn", value_enum)]
    pub function: MinimizeFn,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub start_x: f64,
    #[arg(long)]
    pub start_y: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub err: Option<f64>,
    /// Printed or expected value, when there is one.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub passed: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl NamedValue {
    fn new(name: &str, value: f64, err: Option<f64>) -> Self {
        NamedValue {
            name: name.to_string(),
            value,
            err,
            ..Default::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub results: Vec<NamedValue>,
    pub certificates: Vec<SignCertificate>,
    pub checks: Vec<SuiteReport>,
    pub arcs: Vec<ArcReport>,
    pub notes: Vec<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub wall_time: f64,
}

impl RunReport {
    fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            results: Vec::new(),
            certificates: Vec::new(),
            checks: Vec::new(),
            arcs: Vec::new(),
            notes: Vec::new(),
            status: Status::Pass,
            error: None,
            wall_time: 0.0,
        }
    }

    fn input(&mut self, key: &str, v: impl Serialize) {
        self.inputs.insert(
            key.to_string(),
            serde_json::to_value(v).unwrap_or(Value::Null),
        );
    }

    /// Status from the collected certificates, checks and results.
    fn settle(&mut self) {
        let failed = self.certificates.iter().any(|c| !c.passed)
            || self.checks.iter().any(|c| !c.passed())
            || self.arcs.iter().any(|a| !a.passed)
            || self.results.iter().any(|r| r.passed == Some(false));
        self.status = if failed { Status::Fail } else { Status::Pass };
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Numeric(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("writing CSV: {0}")]
    Csv(#[from] csv::Error),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// `key = value` settings; blank lines and `#` comments are ignored.
#[derive(Debug, Default)]
pub struct Config {
    values: HashMap<String, String>,
}

const CONFIG_KEYS: [&str; 9] = [
    "tol",
    "max_terms",
    "grid",
    "inset",
    "y_cap",
    "step",
    "alpha",
    "s",
    "threads",
];

impl Config {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = HashMap::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return usage(format!("config line {}: expected key=value", i + 1));
            };
            let k = k.trim();
            if !CONFIG_KEYS.contains(&k) {
                return usage(format!("config line {}: unknown key {k:?}", i + 1));
            }
            values.insert(k.to_string(), v.trim().to_string());
        }
        Ok(Config { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Config::parse(&text)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| {
                CliError::Usage(format!("config value for {key} is not valid: {v:?}"))
            }),
        }
    }

    pub fn list(&self, key: &str) -> Result<Option<Vec<f64>>, CliError> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<Result<Vec<_>, _>>()
                .map(Some)
                .map_err(|_| {
                    CliError::Usage(format!(
                        "config value for {key} is not a list of numbers: {v:?}"
                    ))
                }),
        }
    }
}

/// Resolved settings shared by the commands.
struct Context {
    config: Config,
    t: Truncation,
    dump: Option<PathBuf>,
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eval(_) => "eval",
        Command::Constants => "constants",
        Command::Certify(_) => "certify",
        Command::Reduce(_) => "reduce",
        Command::Minimize(_) => "minimize",
    }
}

/// Parses `args` (program name first), runs the command, prints the report
/// and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let report = execute(&cli);
    if cli.json {
        match serde_json::to_string_pretty(&report) {
            Ok(s) => println!("{s}"),
            Err(e) => eprintln!("cannot serialize report: {e}"),
        }
    } else {
        print!("{}", render(&report));
    }
    if let Some(msg) = &report.error {
        eprintln!("error: {msg}");
    }
    report.status.exit_code()
}

/// Runs the parsed command; failures become a report with status `error`.
pub fn execute(cli: &Cli) -> RunReport {
    let started = Instant::now();
    let name = command_name(&cli.command);
    let mut report = match dispatch(cli) {
        Ok(r) => r,
        Err(e) => {
            let mut r = RunReport::new(name);
            r.status = Status::Error;
            r.error = Some(e.to_string());
            r
        }
    };
    report.wall_time = started.elapsed().as_secs_f64();
    report
}

fn dispatch(cli: &Cli) -> Result<RunReport, CliError> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let tol = cli.tol.or(config.get("tol")?).unwrap_or(1e-13);
    let max_terms = config
        .get("max_terms")?
        .unwrap_or(Truncation::default().max_terms);
    let t = Truncation::new(tol, max_terms)?;
    let threads = cli.threads.or(config.get("threads")?).unwrap_or(0);
    if threads > 0 {
        // the global pool can be set once per process; later calls keep it
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let ctx = Context {
        config,
        t,
        dump: cli.dump.clone(),
    };
    let mut report = match &cli.command {
        Command::Eval(a) => cmd_eval(a, &ctx)?,
        Command::Constants => cmd_constants(&ctx)?,
        Command::Certify(a) => cmd_certify(a, &ctx)?,
        Command::Reduce(a) => cmd_reduce(a, &ctx)?,
        Command::Minimize(a) => cmd_minimize(a, &ctx)?,
    };
    report.input("tol", tol);
    report.input("max_terms", max_terms);
    Ok(report)
}

fn write_dump(path: &Path, samples: &[Sample]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["x", "y", "value", "err"])?;
    for s in samples {
        w.write_record(&[
            s.x.to_string(),
            s.y.to_string(),
            s.value.to_string(),
            s.err.to_string(),
        ])?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(())
}

fn need(v: Option<f64>, flag: &str, f: EvalFn) -> Result<f64, CliError> {
    match v {
        Some(v) => Ok(v),
        None => usage(format!(
            "--fn {} needs --{flag}",
            f.to_possible_value()
                .map(|p| p.get_name().to_string())
                .unwrap_or_default()
        )),
    }
}

fn cmd_eval(a: &EvalArgs, ctx: &Context) -> Result<RunReport, CliError> {
    let f = a.function;
    let fname = f
        .to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default();
    let mut report = RunReport::new("eval");
    report.input("fn", &fname);
    let t = ctx.t;
    let derivative = |f: EvalFn| match f {
        EvalFn::ThetaX | EvalFn::ZetaX => Derivative::X,
        EvalFn::ThetaY | EvalFn::ZetaY => Derivative::Y,
        EvalFn::ThetaXy | EvalFn::ZetaXy => Derivative::XY,
        EvalFn::ThetaXyy | EvalFn::ZetaXyy => Derivative::XYY,
        _ => Derivative::Value,
    };
    let (value, at) = match f {
        EvalFn::Theta1d
        | EvalFn::Theta1dDx
        | EvalFn::Theta1dDy
        | EvalFn::Theta1dDxy
        | EvalFn::Theta1dDxxy => {
            let width = need(a.width, "X", f)?;
            let phase = need(a.phase, "Y", f)?;
            report.input("X", width);
            report.input("Y", phase);
            let kind = match f {
                EvalFn::Theta1d => Theta1dKind::Value,
                EvalFn::Theta1dDx => Theta1dKind::DX,
                EvalFn::Theta1dDy => Theta1dKind::DY,
                EvalFn::Theta1dDxy => Theta1dKind::DXY,
                _ => Theta1dKind::DXXY,
            };
            (
                theta1d_evaluate(Theta1dPoint::new(width, phase)?, kind, t)?,
                None,
            )
        }
        _ => {
            let x = need(a.x, "x", f)?;
            let y = need(a.y, "y", f)?;
            let z = UpperHalfPoint::new(x, y)?;
            report.input("x", x);
            report.input("y", y);
            let is_theta = matches!(
                f,
                EvalFn::Theta
                    | EvalFn::ThetaX
                    | EvalFn::ThetaY
                    | EvalFn::ThetaXy
                    | EvalFn::ThetaXyy
            );
            let v = if is_theta {
                let alpha = need(a.alpha, "alpha", f)?;
                report.input("alpha", alpha);
                theta_derivative(alpha, z, derivative(f), t)?
            } else {
                let s = need(a.s, "s", f)?;
                report.input("s", s);
                if f == EvalFn::ZetaDirect {
                    zeta_direct(s, z, t)?
                } else {
                    zeta_derivative(s, z, derivative(f), t)?
                }
            };
            (v, Some(z))
        }
    };
    report
        .results
        .push(NamedValue::new(&fname, value.value, Some(value.err)));
    if let Some(path) = &ctx.dump {
        let (x, y) = at.map(|z| (z.x, z.y)).unwrap_or((f64::NAN, f64::NAN));
        write_dump(
            path,
            &[Sample {
                x,
                y,
                value: value.value,
                err: value.err,
            }],
        )?;
    }
    report.settle();
    Ok(report)
}

fn cmd_constants(ctx: &Context) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("constants");
    if ctx.dump.is_some() {
        report
            .notes
            .push("constants have no grid samples; nothing dumped".into());
    }
    for c in composite_constants() {
        let diff = c.diff();
        let mut row = NamedValue::new(c.name, c.computed.value, Some(c.computed.err));
        row.reference = Some(c.printed);
        if c.name == "c1" {
            row.note = Some(format!(
                "|diff| = {}; the printed value does not follow from its own formula, which evaluates to {}",
                sig(diff, 4),
                sig(c.computed.value, 6)
            ));
        } else {
            row.passed = Some(diff <= CONSTANT_TOLERANCE);
            row.note = Some(format!("|diff| = {}", sig(diff, 4)));
        }
        report.results.push(row);
    }
    report.input("tolerance", CONSTANT_TOLERANCE);
    report.settle();
    Ok(report)
}

/// Parameters from the flag, else the config, else `default`.
fn params(
    flag: &Option<Vec<f64>>,
    ctx: &Context,
    key: &str,
    default: Vec<f64>,
) -> Result<Vec<f64>, CliError> {
    let v = match flag {
        Some(v) => v.clone(),
        None => ctx.config.list(key)?.unwrap_or(default),
    };
    if v.is_empty() {
        return usage(format!("--{key} needs at least one value"));
    }
    Ok(v)
}

fn cmd_certify(a: &CertifyArgs, ctx: &Context) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("certify");
    let claim_name = a
        .claim
        .to_possible_value()
        .map(|p| p.get_name().to_string())
        .unwrap_or_default();
    report.input("claim", &claim_name);
    let t = ctx.t;
    let grid_n: Option<usize> = a.grid.or(ctx.config.get("grid")?);
    let y_cap: Option<f64> = a.y_cap.or(ctx.config.get("y_cap")?);
    let inset: Option<f64> = a.inset.or(ctx.config.get("inset")?);
    let mut samples: Vec<Sample> = Vec::new();
    let mut dumped = true;

    let sign_claim = match a.claim {
        Claim::Prop1 => Some(ClaimId::Prop1),
        Claim::Prop2 => Some(ClaimId::Prop2),
        Claim::Prop3 => Some(ClaimId::Prop3),
        Claim::Prop4 => Some(ClaimId::Prop4),
        Claim::Thm1_1 => Some(ClaimId::MixedPositive),
        Claim::Thm1_2 => Some(ClaimId::ThirdNegative),
        _ => None,
    };
    let grid_spec = |n_default: usize| -> GridSpec {
        let d = GridSpec::default();
        let n = grid_n.unwrap_or(n_default);
        GridSpec {
            nx: n,
            ny: n,
            inset: inset.unwrap_or(d.inset),
            y_cap: y_cap.unwrap_or(d.y_cap),
        }
    };

    if let Some(id) = sign_claim {
        let alphas = params(&a.alpha, ctx, "alpha", id.default_alphas())?;
        let ss = params(&a.s, ctx, "s", DEFAULT_S.to_vec())?;
        let grid = grid_spec(60);
        report.input("alpha", &alphas);
        report.input("s", &ss);
        report.input("grid", grid);
        for sw in certify_claim(id, &alphas, &ss, &grid, t)? {
            samples.extend(sw.samples);
            report.certificates.push(sw.certificate);
        }
    } else {
        match a.claim {
            Claim::Cor1ThetaX | Claim::Cor1ThetaXY | Claim::Cor1ZetaX | Claim::Cor1ZetaXY => {
                let target = match a.claim {
                    Claim::Cor1ThetaX => Target::ThetaX,
                    Claim::Cor1ThetaXY => Target::ThetaXY,
                    Claim::Cor1ZetaX => Target::ZetaX,
                    _ => Target::ZetaXY,
                };
                let list = if target.is_zeta() {
                    params(&a.s, ctx, "s", vec![2.0])?
                } else {
                    params(&a.alpha, ctx, "alpha", vec![1.0])?
                };
                let step = match a.step.or(ctx.config.get("step")?) {
                    Some(h) => h,
                    None => grid_n.map(|n| 0.5 / n.max(1) as f64).unwrap_or(1e-2),
                };
                let cap = y_cap.unwrap_or(GridSpec::default().y_cap);
                report.input(if target.is_zeta() { "s" } else { "alpha" }, &list);
                report.input("step", step);
                report.input("y_cap", cap);
                for p in list {
                    let (r, s) = arc_sweep(target, p, step, cap, t)?;
                    samples.extend(s);
                    report.arcs.push(r);
                }
            }
            Claim::Lemma25 => {
                let n = grid_n.unwrap_or(100);
                if n == 0 {
                    return usage("--grid must be positive");
                }
                let a_grid = step_grid(2.0, 24.0, 0.5);
                let y_grid = step_grid(0.0, 0.5, 0.5 / n as f64);
                report.input("a", json!({"from": 2.0, "to": 24.0, "step": 0.5}));
                report.input("Y", json!({"from": 0.0, "to": 0.5, "step": 0.5 / n as f64}));
                report.checks.push(f_items_suite(&a_grid, &y_grid, t)?);
                dumped = false;
            }
            Claim::Lemma24 => {
                let n = grid_n.unwrap_or(60);
                if n < 2 {
                    return usage("--grid must be at least 2");
                }
                let a_grid: Vec<f64> = (0..n)
                    .map(|i| 2.0 + 28.0 * i as f64 / (n - 1) as f64)
                    .collect();
                let y_grid: Vec<f64> = (1..n).map(|i| 0.5 * i as f64 / n as f64).collect();
                report.input("a", json!({"from": 2.0, "to": 30.0, "points": n}));
                report.input("Y", json!({"open_interval": [0.0, 0.5], "points": n - 1}));
                report.checks.push(q_ratio_suite(&a_grid, &y_grid, t)?);
                dumped = false;
            }
            Claim::Quotients => {
                let n = grid_n.unwrap_or(40);
                if n < 2 {
                    return usage("--grid must be at least 2");
                }
                // widths spread geometrically over [0.02, 8] plus the range end points
                let mut x_grid: Vec<f64> = (0..n)
                    .map(|i| 0.02 * 400f64.powf(i as f64 / (n - 1) as f64))
                    .collect();
                x_grid.extend([0.2, 59.0 / 250.0, 0.5]);
                x_grid.sort_by(f64::total_cmp);
                x_grid.dedup();
                let y_grid: Vec<f64> = (1..n).map(|i| 0.5 * i as f64 / n as f64).collect();
                let ks = [1, 2, 3, 4];
                report.input("X", &x_grid);
                report.input("Y", json!({"open_interval": [0.0, 0.5], "points": n - 1}));
                report.input("k", ks);
                report
                    .checks
                    .push(quotient_suite(&x_grid, &y_grid, &ks, t)?);
                dumped = false;
            }
            Claim::Bounds => {
                let alphas = params(&a.alpha, ctx, "alpha", vec![1.0, 2.0, 4.0])?;
                let grid = grid_spec(60);
                report.input("alpha", &alphas);
                report.input("grid", grid);
                report.checks.push(lower_bound_suite(&alphas, &grid, t)?);
                report
                    .checks
                    .push(bracket_suite(grid.nx, grid.y_cap, 40.0, t)?);
                dumped = false;
            }
            _ => unreachable!("sign claims handled above"),
        }
    }

    if let Some(path) = &ctx.dump {
        write_dump(path, &samples)?;
        if !dumped {
            report
                .notes
                .push("this suite samples (a, Y) or (alpha, y) rather than z; the dump has only its header".into());
        }
    }
    report.settle();
    Ok(report)
}

fn cmd_reduce(a: &PointArgs, _ctx: &Context) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("reduce");
    report.input("x", a.x);
    report.input("y", a.y);
    let r = reduce(UpperHalfPoint::new(a.x, a.y)?)?;
    report.results.push(NamedValue::new("x", r.point.x, None));
    report.results.push(NamedValue::new("y", r.point.y, None));
    report.notes.push(format!("word: {}", r.word));
    report.settle();
    Ok(report)
}

fn cmd_minimize(a: &MinimizeArgs, _ctx: &Context) -> Result<RunReport, CliError> {
    let mut report = RunReport::new("minimize");
    let f = match a.function {
        MinimizeFn::Theta => match a.alpha {
            Some(alpha) => Functional::Theta { alpha },
            None => return usage("--fn theta needs --alpha"),
        },
        MinimizeFn::Zeta => match a.s {
            Some(s) => Functional::Zeta { s },
            None => return usage("--fn zeta needs --s"),
        },
    };
    report.input("functional", f);
    report.input("start_x", a.start_x);
    report.input("start_y", a.start_y);
    let m = minimize(f, UpperHalfPoint::new(a.start_x, a.start_y)?)?;
    report.results.push(NamedValue::new("x", m.point.x, None));
    report.results.push(NamedValue::new("y", m.point.y, None));
    report.results.push(NamedValue::new("value", m.value, None));
    report
        .results
        .push(NamedValue::new("evaluations", m.evaluations as f64, None));
    report.settle();
    Ok(report)
}

/// `v` with `digits` significant digits.
pub fn sig(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() || (v.fract() == 0.0 && v.abs() < 1e15) {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-4..10).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.prec$e}", prec = digits.saturating_sub(1))
    }
}

fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Human-readable report with 10 significant digits.
pub fn render(r: &RunReport) -> String {
    let mut out = String::new();
    let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "{} ({})", r.command, inputs.join(", "));
    for v in &r.results {
        let _ = write!(out, "  {} = {}", v.name, sig(v.value, 10));
        if let Some(e) = v.err {
            let _ = write!(out, "  err {}", sig(e, 3));
        }
        if let Some(p) = v.reference {
            let _ = write!(out, "  printed {}", sig(p, 10));
        }
        if let Some(ok) = v.passed {
            let _ = write!(out, "  {}", pass_fail(ok));
        }
        if let Some(n) = &v.note {
            let _ = write!(out, "  ({n})");
        }
        out.push('\n');
    }
    for c in &r.certificates {
        let _ = writeln!(
            out,
            "  {} {} {} param={}: {}  worst margin {} (err {}) at ({}, {}), {} samples, {} skipped",
            c.claim,
            c.target,
            c.claimed_sign,
            sig(c.param, 10),
            pass_fail(c.passed),
            sig(c.worst_margin, 10),
            sig(c.err_at_worst, 3),
            sig(c.worst_at.0, 10),
            sig(c.worst_at.1, 10),
            c.samples,
            c.skipped.len()
        );
    }
    for s in &r.checks {
        for i in &s.items {
            let _ = writeln!(
                out,
                "  {}/{}: {}{}  worst margin {} (err {}) at ({}, {}), {} samples, {} skipped",
                s.name,
                i.name,
                pass_fail(i.passed),
                if i.advisory { " (advisory)" } else { "" },
                sig(i.worst_margin, 10),
                sig(i.err_at_worst, 3),
                sig(i.worst_at.0, 10),
                sig(i.worst_at.1, 10),
                i.samples,
                i.skipped
            );
        }
    }
    for a in &r.arcs {
        let _ = writeln!(
            out,
            "  arc {} param={}: {}  domain min {} at ({}, {}), arc min {} at ({}, {}), distance {}",
            a.target,
            sig(a.param, 10),
            pass_fail(a.passed),
            sig(a.domain_min, 10),
            sig(a.domain_at.0, 10),
            sig(a.domain_at.1, 10),
            sig(a.arc_min, 10),
            sig(a.arc_at.0, 10),
            sig(a.arc_at.1, 10),
            sig(a.distance_to_arc, 3)
        );
    }
    for n in &r.notes {
        let _ = writeln!(out, "  {n}");
    }
    let status = match r.status {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Error => "error",
    };
    let _ = writeln!(
        out,
        "status: {status}  wall time: {} s",
        sig(r.wall_time, 3)
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(args: &[&str]) -> RunReport {
        let mut full = vec!["thetazeta"];
        full.extend_from_slice(args);
        execute(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn significant_digits() {
        assert_eq!(sig(1.180340599016096, 10), "1.180340599");
        assert_eq!(sig(0.0123456789012, 3), "0.0123");
        assert_eq!(sig(1.5e-17, 3), "1.50e-17");
        assert_eq!(sig(0.0, 10), "0");
    }

    #[test]
    fn eval_square_theta() {
        let r = report(&[
            "eval", "--fn", "theta", "--alpha", "1", "--x", "0", "--y", "1",
        ]);
        assert_eq!(r.status, Status::Pass);
        assert!((r.results[0].value - 1.180_340_599_016_096).abs() < 1e-13);
    }

    #[test]
    fn eval_requires_parameters() {
        let r = report(&["eval", "--fn", "zeta", "--x", "0", "--y", "1"]);
        assert_eq!(r.status, Status::Error);
        let r = report(&["eval", "--fn", "theta1d", "--X", "0.5"]);
        assert_eq!(r.status, Status::Error);
    }

    #[test]
    fn one_d_flags_are_upper_case() {
        let r = report(&["eval", "--fn", "theta1d-dy", "--X", "1", "--Y", "0.25"]);
        assert_eq!(r.status, Status::Pass);
        assert!(r.results[0].value < 0.0);
    }

    #[test]
    fn reduce_reports_word() {
        let r = report(&["reduce", "--x", "1.3", "--y", "1.5"]);
        assert!((r.results[0].value - 0.3).abs() < 1e-12);
        assert_eq!(r.notes, vec!["word: T-".to_string()]);
    }

    #[test]
    fn config_parsing() {
        let c = Config::parse("# defaults\ntol = 1e-10\nalpha=1, 2\n\n").unwrap();
        assert_eq!(c.get::<f64>("tol").unwrap(), Some(1e-10));
        assert_eq!(c.list("alpha").unwrap(), Some(vec![1.0, 2.0]));
        assert_eq!(c.get::<usize>("grid").unwrap(), None);
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("tol").is_err());
        assert!(Config::parse("tol = abc")
            .unwrap()
            .get::<f64>("tol")
            .is_err());
    }

    #[test]
    fn bad_claim_parameter_is_an_error() {
        let r = report(&["certify", "--claim", "thm1-2", "--alpha", "0"]);
        assert_eq!(r.status, Status::Error);
        assert_eq!(r.status.exit_code(), 2);
    }
}
