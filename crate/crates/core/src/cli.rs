//! Command-line surface: zero tables, verification suites and evaluation
//! grids, with JSON reports.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for usage
//! errors. `LOGAN_LAB_THREADS` sizes the worker pool.

use crate::bessel::{j_norm, zeros, Order};
use crate::eigenpoly::{
    build_p, count_zeros, eval_near_zero, monotonicity_check, multiplicity_at_one, thm_hn_function, BesselCombination,
    BesselSystem, Interval, ZeroExpansion,
};
use crate::error::LoganError;
use crate::extremal::{last_sign_change, logan_product, moments, theta_lift, uncertainty_product, ExtremalFunction, UncertaintyVariant};
use crate::hankel::{hankel_transform, psd_gram, Measure};
use crate::jacobi_limit::{divided_poly, gram_limit, mehler_heine_check};
use crate::quadrature::{apply_gauss, apply_radau, gauss_rule, radau_rule, square_moment};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::io::Write;
use std::path::PathBuf;

/// Version of the JSON report layout.
pub const SCHEMA: u32 = 1;
/// Seed used by the randomized suites when `--seed` is absent.
pub const DEFAULT_SEED: u64 = 42;
/// Environment variable overriding the worker-pool size.
pub const THREADS_ENV: &str = "LOGAN_LAB_THREADS";
/// Largest grid accepted by `eval`.
pub const MAX_GRID_POINTS: usize = 10_000_000;

/// Extremal bandlimited functions for the Hankel transform.
#[derive(Debug, Parser)]
#[command(name = "logan-lab", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Subcommands.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of the positive zeros q_{alpha,k} of j_alpha.
    BesselZeros(ZerosArgs),
    /// Run a verification suite and report every check.
    Verify(VerifyArgs),
    /// Tabulate f, g, p or F_n over a grid.
    Eval(EvalArgs),
}

/// Text output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Arguments of `bessel-zeros`.
#[derive(Debug, Args)]
pub struct ZerosArgs {
    /// Order alpha >= -1/2.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Number of zeros.
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Verification suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Logan,
    Uncertainty,
    Eigenpoly,
    Posdef,
    Mehler,
    Chebyshev,
    Quadrature,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Logan => "logan",
            Suite::Uncertainty => "uncertainty",
            Suite::Eigenpoly => "eigenpoly",
            Suite::Posdef => "posdef",
            Suite::Mehler => "mehler",
            Suite::Chebyshev => "chebyshev",
            Suite::Quadrature => "quadrature",
            Suite::All => "all",
        }
    }
}

/// Tolerances shared by the suites.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Args)]
pub struct ToleranceProfile {
    /// Relative accuracy of quadrature and moment checks.
    #[arg(long, default_value_t = 1e-7)]
    pub quadrature_rel: f64,
    /// Absolute accuracy of zero locations and transform identities.
    #[arg(long, default_value_t = 1e-8)]
    pub zero_abs: f64,
    /// Gram matrices pass when their smallest eigenvalue is >= -psd_floor.
    #[arg(long, default_value_t = 1e-8)]
    pub psd_floor: f64,
    /// Grid points per unit length for sampled checks.
    #[arg(long, default_value_t = 100)]
    pub grid_density: usize,
}

impl Default for ToleranceProfile {
    fn default() -> Self {
        ToleranceProfile { quadrature_rel: 1e-7, zero_abs: 1e-8, psd_floor: 1e-8, grid_density: 100 }
    }
}

/// Arguments of `verify`.
#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Orders, comma separated (default depends on the suite).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Vec<f64>,
    /// Extremizer indices m.
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<usize>,
    /// Shifts s of the uncertainty suite.
    #[arg(long, value_delimiter = ',')]
    pub s: Vec<usize>,
    /// Indices n of the minimal-zero functions F_n.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<usize>,
    /// Numbers k of divided zeros in the mehler suite.
    #[arg(long, value_delimiter = ',')]
    pub k: Vec<usize>,
    /// Points per random Gram matrix.
    #[arg(long, default_value_t = 8)]
    pub points: usize,
    /// Random point sets per (alpha, m).
    #[arg(long, default_value_t = 20)]
    pub sets: usize,
    /// Random combinations per Chebyshev configuration.
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(flatten)]
    pub profile: ToleranceProfile,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Functions available to `eval`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalFunction {
    /// The extremizer f_{alpha,m}.
    F,
    /// Its positive definite factor g_{alpha,m}.
    G,
    /// The polynomial p_{alpha,m}, zero beyond t = 1.
    P,
    /// The minimal-zero function F_{alpha,n}, normalized to 1 at the origin.
    #[value(name = "F_n")]
    FN,
}

/// Arguments of `eval`.
#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub function: EvalFunction,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    /// Index m (for f, g and p).
    #[arg(long)]
    pub m: Option<usize>,
    /// Index n (for F_n).
    #[arg(long)]
    pub n: Option<usize>,
    /// Grid as start:stop:step.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A named numeric record.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub values: BTreeMap<String, f64>,
}

/// How a check compares its value with the tolerance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "==")]
    Equal,
}

/// One pass/fail outcome; the value and tolerance are always present.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub relation: Relation,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rel = match self.relation {
            Relation::AtMost => "<=",
            Relation::AtLeast => ">=",
            Relation::Equal => "==",
        };
        write!(f, "{}: value {:e}, required {rel} {:e}", self.name, self.value, self.tolerance)?;
        if let Some(d) = &self.detail {
            write!(f, " ({d})")?;
        }
        Ok(())
    }
}

/// Machine-readable result of one command.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Vec<Record>,
    pub checks: Vec<Check>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl Report {
    fn new(command: &str, parameters: BTreeMap<String, Value>) -> Self {
        let timestamp = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Report { schema: SCHEMA, command: command.into(), parameters, results: Vec::new(), checks: Vec::new(), timestamp }
    }

    /// Every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// The first failed check.
    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Errors that stop a command before any check runs.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] LoganError),
}

/// A finished command: the report and the text meant for standard output.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub report: Report,
    pub stdout: String,
}

/// Runs a parsed command in the current thread pool.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::BesselZeros(a) => cmd_bessel_zeros(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Eval(a) => cmd_eval(a),
    }
}

/// Parses `args`, runs the command and writes its output; returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            return 2;
        }
    };
    let outcome = match pool.install(|| execute(&cli)) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "{e}");
            return 2;
        }
    };
    let out = match &cli.command {
        Command::BesselZeros(a) => &a.out,
        Command::Verify(a) => &a.out,
        Command::Eval(a) => &a.out,
    };
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(&outcome.report).expect("reports serialize") + "\n";
        if let Err(e) = std::fs::write(path, text) {
            let _ = writeln!(stderr, "cannot write {}: {e}", path.display());
            return 2;
        }
    }
    let _ = stdout.write_all(outcome.stdout.as_bytes());
    match outcome.report.first_failure() {
        None => 0,
        Some(c) => {
            let failed = outcome.report.checks.iter().filter(|c| !c.passed).count();
            let _ = writeln!(stderr, "{failed} check(s) failed; first: {c}");
            1
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?;
        b = b.num_threads(n);
    }
    b.build().map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

fn order(alpha: f64) -> Result<Order, CliError> {
    Order::new(alpha).map_err(|e| CliError::Usage(e.to_string()))
}

fn record(name: impl Into<String>, values: &[(&str, f64)]) -> Record {
    Record { name: name.into(), values: values.iter().map(|(k, v)| (k.to_string(), *v)).collect() }
}

fn csv(header: &str, rows: &[(f64, f64)]) -> String {
    let mut s = format!("{header}\n");
    for (a, b) in rows {
        s.push_str(&format!("{a},{b}\n"));
    }
    s
}

fn json_rows(keys: (&str, &str), rows: &[(f64, f64)]) -> String {
    let v: Vec<Value> = rows.iter().map(|(a, b)| json!({ keys.0: a, keys.1: b })).collect();
    serde_json::to_string_pretty(&v).expect("rows serialize") + "\n"
}

/// `bessel-zeros`: the first `count` zeros of `j_alpha`.
pub fn cmd_bessel_zeros(a: &ZerosArgs) -> Result<Outcome, CliError> {
    let o = order(a.alpha)?;
    if a.count == 0 {
        return Err(CliError::Usage("count must be at least 1".into()));
    }
    let table = zeros(o, a.count)?;
    let mut report = Report::new(
        "bessel-zeros",
        BTreeMap::from([("alpha".into(), json!(a.alpha)), ("count".into(), json!(a.count))]),
    );
    let rows: Vec<(f64, f64)> = table.zeros().iter().enumerate().map(|(i, &q)| ((i + 1) as f64, q)).collect();
    report.results = rows.iter().map(|&(k, q)| record(format!("q_{k}"), &[("k", k), ("q", q)])).collect();
    let stdout = match a.format {
        Format::Csv => {
            let mut s = String::from("k,q\n");
            for (i, q) in table.zeros().iter().enumerate() {
                s.push_str(&format!("{},{q}\n", i + 1));
            }
            s
        }
        Format::Json => {
            let v: Vec<Value> = table.zeros().iter().enumerate().map(|(i, q)| json!({"k": i + 1, "q": q})).collect();
            serde_json::to_string_pretty(&v).expect("rows serialize") + "\n"
        }
    };
    Ok(Outcome { report, stdout })
}

/// Parses `start:stop:step` into grid points; the stop is included when it
/// lies on the grid up to rounding.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::Usage(format!("grid must be start:stop:step with step > 0 and stop >= start, got {spec:?}"));
    let parts: Vec<f64> = spec.split(':').map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let [start, stop, step] = parts[..] else { return Err(bad()) };
    if !(start.is_finite() && stop.is_finite() && step.is_finite() && step > 0.0 && stop >= start) {
        return Err(bad());
    }
    let count = ((stop - start) / step * (1.0 + 1e-12) + 1e-9).floor() as usize + 1;
    if count > MAX_GRID_POINTS {
        return Err(CliError::Usage(format!("grid has more than {MAX_GRID_POINTS} points")));
    }
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// `eval`: values of one function over a grid.
pub fn cmd_eval(a: &EvalArgs) -> Result<Outcome, CliError> {
    let o = order(a.alpha)?;
    let grid = parse_grid(&a.grid)?;
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| CliError::Usage(format!("--{flag} is required for this function")));
    let (name, index_key, index) = match a.function {
        EvalFunction::F => ("f", "m", need(a.m, "m")?),
        EvalFunction::G => ("g", "m", need(a.m, "m")?),
        EvalFunction::P => ("p", "m", need(a.m, "m")?),
        EvalFunction::FN => ("F_n", "n", need(a.n, "n")?),
    };
    let values: Vec<f64> = match a.function {
        EvalFunction::F | EvalFunction::G => {
            let ef = if a.function == EvalFunction::F { ExtremalFunction::f(o, index)? } else { ExtremalFunction::g(o, index)? };
            grid.par_iter().map(|&t| ef.eval(t)).collect()
        }
        EvalFunction::P => {
            let p = build_p(o, index)?;
            let zero = ZeroExpansion::new(&p, 1.0)?;
            grid.par_iter().map(|&t| if t.abs() > 1.0 { 0.0 } else { eval_near_zero(&p, &zero, t.abs()).0 }).collect()
        }
        EvalFunction::FN => {
            let (f, theta) = thm_hn_function(o, index)?;
            let f = f.normalized();
            let zero = ZeroExpansion::new(&f, theta)?;
            grid.par_iter().map(|&t| eval_near_zero(&f, &zero, t.abs()).0).collect()
        }
    };
    let mut report = Report::new(
        "eval",
        BTreeMap::from([
            ("function".into(), json!(name)),
            ("alpha".into(), json!(a.alpha)),
            (index_key.into(), json!(index)),
            ("grid".into(), json!(a.grid)),
        ]),
    );
    let rows: Vec<(f64, f64)> = grid.into_iter().zip(values).collect();
    report.results = rows.iter().map(|&(t, v)| record(name, &[("t", t), ("value", v)])).collect();
    let stdout = match a.format {
        Format::Csv => csv("t,value", &rows),
        Format::Json => json_rows(("t", "value"), &rows),
    };
    Ok(Outcome { report, stdout })
}

/// Checks and records produced by one unit of work.
#[derive(Debug, Default)]
struct Batch {
    results: Vec<Record>,
    checks: Vec<Check>,
}

impl Batch {
    fn push(&mut self, name: String, value: f64, relation: Relation, tolerance: f64) {
        let passed = match relation {
            Relation::AtMost => value <= tolerance,
            Relation::AtLeast => value >= tolerance,
            Relation::Equal => value == tolerance,
        };
        self.checks.push(Check { name, passed, value, relation, tolerance, detail: None });
    }

    fn at_most(&mut self, name: impl Into<String>, value: f64, tol: f64) {
        self.push(name.into(), value, Relation::AtMost, tol);
    }

    fn at_least(&mut self, name: impl Into<String>, value: f64, floor: f64) {
        self.push(name.into(), value, Relation::AtLeast, floor);
    }

    fn equal(&mut self, name: impl Into<String>, value: f64, want: f64) {
        self.push(name.into(), value, Relation::Equal, want);
    }

    fn error(&mut self, name: impl Into<String>, e: &LoganError) {
        self.checks.push(Check {
            name: name.into(),
            passed: false,
            value: f64::NAN,
            relation: Relation::Equal,
            tolerance: 0.0,
            detail: Some(e.to_string()),
        });
    }

    /// Runs `f`, turning an early library error into a failed check.
    fn guarded(prefix: String, f: impl FnOnce(&mut Batch, &str) -> crate::Result<()>) -> Batch {
        let mut b = Batch::default();
        if let Err(e) = f(&mut b, &prefix) {
            b.error(format!("{prefix}/error"), &e);
        }
        b
    }
}

fn merge(report: &mut Report, batches: Vec<Batch>) {
    for b in batches {
        report.results.extend(b.results);
        report.checks.extend(b.checks);
    }
}

/// Parameters of a `verify` run after defaults are filled in.
#[derive(Clone, Debug)]
struct VerifyConfig {
    alphas: Option<Vec<f64>>,
    ms: Option<Vec<usize>>,
    ss: Option<Vec<usize>>,
    ns: Option<Vec<usize>>,
    ks: Option<Vec<usize>>,
    points: usize,
    sets: usize,
    trials: usize,
    seed: u64,
    tol: ToleranceProfile,
}

fn or_default<T: Clone>(v: &Option<Vec<T>>, d: &[T]) -> Vec<T> {
    v.clone().unwrap_or_else(|| d.to_vec())
}

const ALPHA_GRID: [f64; 5] = [-0.5, 0.0, 0.7, 1.0, 2.5];

fn label(a: f64) -> String {
    format!("alpha={a}")
}

fn pairs<A: Copy + Send, B: Copy + Send>(xs: &[A], ys: &[B]) -> Vec<(A, B)> {
    xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect()
}

/// `verify`: runs one suite or all of them.
pub fn cmd_verify(a: &VerifyArgs) -> Result<Outcome, CliError> {
    for &x in &a.alpha {
        order(x)?;
    }
    let t = &a.profile;
    if !(t.quadrature_rel > 0.0 && t.zero_abs > 0.0 && t.psd_floor > 0.0 && t.grid_density > 0) {
        return Err(CliError::Usage("tolerances and grid density must be positive".into()));
    }
    if a.points == 0 || a.sets == 0 || a.trials == 0 {
        return Err(CliError::Usage("points, sets and trials must be positive".into()));
    }
    let some = |v: &Vec<usize>| if v.is_empty() { None } else { Some(v.clone()) };
    let cfg = VerifyConfig {
        alphas: if a.alpha.is_empty() { None } else { Some(a.alpha.clone()) },
        ms: some(&a.m),
        ss: some(&a.s),
        ns: some(&a.n),
        ks: some(&a.k),
        points: a.points,
        sets: a.sets,
        trials: a.trials,
        seed: a.seed,
        tol: *t,
    };
    let suites: Vec<Suite> = if a.suite == Suite::All {
        vec![
            Suite::Logan,
            Suite::Uncertainty,
            Suite::Eigenpoly,
            Suite::Posdef,
            Suite::Mehler,
            Suite::Chebyshev,
            Suite::Quadrature,
        ]
    } else {
        vec![a.suite]
    };
    let mut params = BTreeMap::from([
        ("suite".into(), json!(a.suite.name())),
        ("points".into(), json!(a.points)),
        ("sets".into(), json!(a.sets)),
        ("trials".into(), json!(a.trials)),
        ("seed".into(), json!(a.seed)),
        ("profile".into(), serde_json::to_value(t).expect("profile serializes")),
    ]);
    for (key, v) in [("m", &a.m), ("s", &a.s), ("n", &a.n), ("k", &a.k)] {
        if !v.is_empty() {
            params.insert(key.into(), json!(v));
        }
    }
    if !a.alpha.is_empty() {
        params.insert("alpha".into(), json!(a.alpha));
    }
    let mut report = Report::new("verify", params);
    let mut stdout = String::new();
    for s in suites {
        let before = report.checks.len();
        let batches = match s {
            Suite::Logan => suite_logan(&cfg),
            Suite::Uncertainty => suite_uncertainty(&cfg),
            Suite::Eigenpoly => suite_eigenpoly(&cfg),
            Suite::Posdef => suite_posdef(&cfg),
            Suite::Mehler => suite_mehler(&cfg),
            Suite::Chebyshev => suite_chebyshev(&cfg),
            Suite::Quadrature => suite_quadrature(&cfg),
            Suite::All => unreachable!("expanded above"),
        };
        merge(&mut report, batches);
        let new = &report.checks[before..];
        let failed = new.iter().filter(|c| !c.passed).count();
        let status = if failed == 0 { "pass" } else { "FAIL" };
        stdout.push_str(&format!("{:<12} {status}  {} checks, {failed} failed\n", s.name(), new.len()));
    }
    Ok(Outcome { report, stdout })
}

fn suite_logan(cfg: &VerifyConfig) -> Vec<Batch> {
    let alphas = or_default(&cfg.alphas, &ALPHA_GRID);
    let ms = or_default(&cfg.ms, &[0, 1, 2, 3]);
    let tol = cfg.tol;
    pairs(&alphas, &ms)
        .into_par_iter()
        .map(|(a, m)| {
            Batch::guarded(format!("logan/{}/m={m}", label(a)), |b, pre| {
                let o = Order::new(a)?;
                let lp = logan_product(o, m)?;
                let q = zeros(o, m + 1)?.q(m + 1);
                b.results.push(record(pre, &[("product", lp.product), ("certificate", lp.certificate)]));
                b.at_most(format!("{pre}/certificate"), (lp.certificate - lp.product).abs(), 2.0 * tol.zero_abs);
                if a == -0.5 {
                    let want = PI * (2 * m + 1) as f64;
                    b.at_most(format!("{pre}/classical_product"), (lp.product - want).abs(), 1e-10);
                }
                let ef = ExtremalFunction::f(o, m)?;
                let sc = last_sign_change(&ef, m)?;
                b.at_most(format!("{pre}/last_sign_change"), (sc.lambda - q).abs(), tol.zero_abs);
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let n = 4000;
                let tail = (1..=n).map(|i| sign * ef.eval(q + 49.0 * q * i as f64 / n as f64)).fold(f64::NEG_INFINITY, f64::max);
                b.at_most(format!("{pre}/tail_sign"), tail, 1e-12);
                let mr = moments(&ef, m)?;
                b.at_most(format!("{pre}/moments"), mr.worst_relative(0..=m), tol.quadrature_rel);
                if a == -0.5 && m <= 1 {
                    let mut worst: f64 = 0.0;
                    let steps = 20 * tol.grid_density;
                    for i in 0..=steps {
                        let x = 20.0 * i as f64 / steps as f64;
                        let mut w = (x / 2.0).cos().powi(2) / (1.0 - x * x / (PI * PI));
                        if m == 1 {
                            w /= 1.0 - x * x / (9.0 * PI * PI);
                        }
                        if w.is_finite() && (x - PI).abs() > 1e-6 && (x - 3.0 * PI).abs() > 1e-6 {
                            worst = worst.max((ef.eval(x / 2.0) - w).abs());
                        }
                    }
                    b.at_most(format!("{pre}/cosine_form"), worst, 1e-10);
                }
                Ok(())
            })
        })
        .collect()
}

fn suite_uncertainty(cfg: &VerifyConfig) -> Vec<Batch> {
    let alphas = or_default(&cfg.alphas, &[-0.5, 0.0, 1.0]);
    let ms = or_default(&cfg.ms, &[0, 1, 2]);
    let ss = or_default(&cfg.ss, &[0, 1, 2]);
    let tol = cfg.tol;
    let jobs: Vec<(f64, usize, usize)> = pairs(&alphas, &ms).into_iter().flat_map(|(a, m)| ss.iter().map(move |&s| (a, m, s))).collect();
    jobs.into_par_iter()
        .map(|(a, m, s)| {
            Batch::guarded(format!("uncertainty/{}/m={m}/s={s}", label(a)), |b, pre| {
                let o = Order::new(a)?;
                for (v, shift, tag) in [(UncertaintyVariant::I, 1.0, "I"), (UncertaintyVariant::III, 0.0, "III")] {
                    let (p, _, cert) = uncertainty_product(o, m, s, v)?;
                    let want = 2.0 * zeros(o.shift(s as f64 + shift), m + 1)?.q(m + 1);
                    b.results.push(record(format!("{pre}/{tag}"), &[("product", p), ("sign_change_product", cert.sign_change_product)]));
                    b.at_most(format!("{pre}/{tag}/product"), (p - want).abs() / want, 1e-12);
                    b.at_most(format!("{pre}/{tag}/sign_change"), (cert.sign_change_product - p).abs() / p, tol.zero_abs);
                    let origin = cert.origin_derivatives.iter().fold(0.0f64, |w, d| w.max(d.abs()));
                    b.at_most(format!("{pre}/{tag}/origin_derivatives"), origin, 1e-6);
                    let lo = if v == UncertaintyVariant::I { 0 } else { s };
                    b.at_most(format!("{pre}/{tag}/moments"), cert.moments.worst_relative(lo..=lo + m), tol.quadrature_rel);
                }
                Ok(())
            })
        })
        .collect()
}

fn suite_eigenpoly(cfg: &VerifyConfig) -> Vec<Batch> {
    let alphas = or_default(&cfg.alphas, &ALPHA_GRID);
    let ms = or_default(&cfg.ms, &[0, 1, 2, 3]);
    let ns = or_default(&cfg.ns, &[1, 2, 3, 4, 5]);
    let tol = cfg.tol;
    let mut out: Vec<Batch> = pairs(&alphas, &ms)
        .into_par_iter()
        .map(|(a, m)| {
            Batch::guarded(format!("eigenpoly/{}/m={m}", label(a)), |b, pre| {
                let o = Order::new(a)?;
                let p = build_p(o, m)?;
                b.equal(format!("{pre}/multiplicity_at_one"), multiplicity_at_one(&p)? as f64, (2 * m + 1) as f64);
                let mono = monotonicity_check(&p, 1e-4, 1e-3)?;
                b.at_most(format!("{pre}/nonincreasing"), mono.max_derivative, 1e-12);
                b.at_least(format!("{pre}/nonnegative"), mono.min_value, -1e-12);
                let measure = Measure::new(o);
                let prof = p.to_compact_profile();
                let g = ExtremalFunction::g(o, m)?;
                let end = 3.0 * g.zeros()[m];
                let n = (end * tol.grid_density as f64).ceil() as usize;
                let errs: Vec<f64> = (0..=n)
                    .into_par_iter()
                    .map(|i| {
                        let l = end * i as f64 / n as f64;
                        hankel_transform(&measure, &prof, l).map(|h| (h - g.eval(l)).abs())
                    })
                    .collect::<crate::Result<_>>()?;
                let worst = errs.into_iter().fold(0.0, f64::max);
                b.results.push(record(pre, &[("transform_error", worst), ("p0", p.eval(0.0))]));
                b.at_most(format!("{pre}/transform_is_g"), worst, tol.zero_abs);
                Ok(())
            })
        })
        .collect();
    let fn_batches: Vec<Batch> = pairs(&alphas, &ns)
        .into_par_iter()
        .map(|(a, n)| {
            Batch::guarded(format!("eigenpoly/{}/n={n}", label(a)), |b, pre| {
                let o = Order::new(a)?;
                let (f, theta) = thm_hn_function(o, n)?;
                let f = f.normalized();
                let zero = ZeroExpansion::new(&f, theta)?;
                b.equal(format!("{pre}/multiplicity_at_theta"), zero.multiplicity as f64, n as f64);
                let end = theta - 1e-3;
                let steps = 2000;
                let min = (0..=steps).map(|i| eval_near_zero(&f, &zero, end * i as f64 / steps as f64).0).fold(f64::INFINITY, f64::min);
                b.results.push(record(pre, &[("theta", theta), ("min_before_theta", min)]));
                b.at_least(format!("{pre}/positive_before_theta"), min, f64::MIN_POSITIVE);
                if a == -0.5 {
                    b.at_most(format!("{pre}/theta_cosine"), (theta - PI / 2.0 * n as f64).abs(), 1e-10);
                    let worst = (0..=200)
                        .map(|i| {
                            let l = 3.0 * theta * i as f64 / 200.0;
                            (f.eval(l) - (l / n as f64).cos().powi(n as i32)).abs()
                        })
                        .fold(0.0, f64::max);
                    b.at_most(format!("{pre}/cosine_power"), worst, 1e-10);
                }
                Ok(())
            })
        })
        .collect();
    out.extend(fn_batches);
    out
}

fn random_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.gen_range(0.0..6.0)).collect()
}

fn suite_posdef(cfg: &VerifyConfig) -> Vec<Batch> {
    let alphas = or_default(&cfg.alphas, &ALPHA_GRID);
    let ms = or_default(&cfg.ms, &[0, 1, 2, 3]);
    let (floor, seed, sets, points) = (-cfg.tol.psd_floor, cfg.seed, cfg.sets, cfg.points);
    pairs(&alphas, &ms)
        .into_par_iter()
        .enumerate()
        .map(|(job, (a, m))| {
            Batch::guarded(format!("posdef/{}/m={m}", label(a)), |b, pre| {
                let o = Order::new(a)?;
                let measure = Measure::new(o);
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(job as u64));
                let g = ExtremalFunction::g(o, m)?.to_profile();
                let f = ExtremalFunction::f(o, m)?.to_profile();
                let (mut wg, mut wf) = (f64::INFINITY, f64::INFINITY);
                for _ in 0..sets {
                    let pts = random_points(&mut rng, points);
                    wg = wg.min(psd_gram(&measure, &g, &pts)?);
                    wf = wf.min(psd_gram(&measure, &f, &pts)?);
                }
                b.results.push(record(pre, &[("min_eigenvalue_g", wg), ("min_eigenvalue_f", wf)]));
                b.at_least(format!("{pre}/g"), wg, floor);
                b.at_least(format!("{pre}/f"), wf, floor);
                for theta in [0.5, 1.3] {
                    let (lifted, lift) = theta_lift(o, theta, m, 20)?;
                    let prof = lifted.to_profile();
                    let mut w = f64::INFINITY;
                    for _ in 0..sets {
                        w = w.min(psd_gram(&measure, &prof, &random_points(&mut rng, points))?);
                    }
                    b.results.push(record(
                        format!("{pre}/theta={theta}"),
                        &[("min_eigenvalue", w), ("min_relative_lowered", lift.min_relative)],
                    ));
                    b.at_least(format!("{pre}/theta={theta}/lowered_positive"), lift.min_relative, f64::MIN_POSITIVE);
                    b.at_least(format!("{pre}/theta={theta}/gram"), w, floor);
                }
                Ok(())
            })
        })
        .collect()
}

fn suite_mehler(cfg: &VerifyConfig) -> Vec<Batch> {
    let alphas = or_default(&cfg.alphas, &[0.0, 1.0, 2.5]);
    let ks = or_default(&cfg.ks, &[0, 1, 2, 3, 4]);
    let ys: Vec<f64> = (0..=8 * cfg.tol.grid_density).map(|i| i as f64 / cfg.tol.grid_density as f64).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let xs: Vec<f64> = (0..5).map(|_| rng.gen_range(0.0..6.0)).collect();
    pairs(&alphas, &ks)
        .into_par_iter()
        .map(|(a, k)| {
            Batch::guarded(format!("mehler/{}/k={k}", label(a)), |b, pre| {
                let worst_coef = (k.max(1)..=60)
                    .map(|n| divided_poly(a, n, k).map(|p| p.min_relative_coefficient()))
                    .collect::<crate::Result<Vec<_>>>()?
                    .into_iter()
                    .fold(f64::INFINITY, f64::min);
                b.at_least(format!("{pre}/coefficients"), worst_coef, -1e-10);
                let e: Vec<f64> = [50, 100, 200].iter().map(|&n| mehler_heine_check(a, k, n, &ys)).collect::<crate::Result<_>>()?;
                b.results.push(record(pre, &[("sup_error_50", e[0]), ("sup_error_100", e[1]), ("sup_error_200", e[2])]));
                b.at_most(format!("{pre}/decrease_50_100"), e[1] - e[0], -f64::MIN_POSITIVE);
                b.at_most(format!("{pre}/decrease_100_200"), e[2] - e[1], -f64::MIN_POSITIVE);
                b.at_most(format!("{pre}/sup_error_200"), e[2], 2e-2);
                if a == 0.0 && k == 0 {
                    b.at_most(format!("{pre}/classical_200"), e[2], 5e-3);
                }
                let g50 = gram_limit(a, k, 50, &xs)?.max_error;
                let g200 = gram_limit(a, k, 200, &xs)?.max_error;
                b.results.push(record(format!("{pre}/gram"), &[("max_error_50", g50), ("max_error_200", g200)]));
                b.at_most(format!("{pre}/gram_200"), g200, 1e-2);
                b.at_most(format!("{pre}/gram_decreases"), g200 - g50, -f64::MIN_POSITIVE);
                Ok(())
            })
        })
        .collect()
}

/// Zero counts of `trials` random combinations of the given members.
pub fn random_zero_counts(
    order: Order,
    system: BesselSystem,
    indices: &[usize],
    interval: Interval,
    seed: u64,
    trials: usize,
) -> crate::Result<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coefs: Vec<Vec<f64>> = (0..trials).map(|_| indices.iter().map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    coefs
        .par_iter()
        .map(|c| {
            let comb = BesselCombination::new(order, system, c, indices)?;
            Ok(count_zeros(&comb, interval)?.count())
        })
        .collect()
}

fn suite_chebyshev(cfg: &VerifyConfig) -> Vec<Batch> {
    let alphas = or_default(&cfg.alphas, &[-0.5, 0.7]);
    let (seed, trials) = (cfg.seed, cfg.trials);
    let systems = [BesselSystem::Dirichlet, BesselSystem::Neumann, BesselSystem::Raised, BesselSystem::NeumannShifted];
    let mut jobs = Vec::new();
    for &a in &alphas {
        for s in systems {
            for n in [2usize, 3, 5] {
                jobs.push((a, s, n));
            }
        }
    }
    let mut out: Vec<Batch> = jobs
        .into_iter()
        .enumerate()
        .map(|(j, (a, system, n))| {
            Batch::guarded(format!("chebyshev/{}/{system:?}/n={n}", label(a)), |b, pre| {
                let first = if system == BesselSystem::Neumann { 0 } else { 1 };
                let idx: Vec<usize> = (first..first + n).collect();
                let counts = random_zero_counts(Order::new(a)?, system, &idx, system.natural_interval(), seed.wrapping_add(j as u64), trials)?;
                let max = counts.into_iter().max().unwrap_or(0);
                b.results.push(record(pre, &[("max_zeros", max as f64)]));
                b.at_most(format!("{pre}/max_zeros"), max as f64, (n - 1) as f64);
                Ok(())
            })
        })
        .collect();
    let open = Interval { lo: 0.0, hi: 1.0, closed_lo: false, closed_hi: false };
    for (j, (a, (m, n))) in pairs(&alphas, &[(2usize, 4usize), (3, 5)]).into_iter().enumerate() {
        out.push(Batch::guarded(format!("chebyshev/{}/sturm/m={m}/n={n}", label(a)), |b, pre| {
            let idx: Vec<usize> = (m..=n).collect();
            let counts = random_zero_counts(Order::new(a)?, BesselSystem::Dirichlet, &idx, open, seed.wrapping_add(1000 + j as u64), trials)?;
            let (lo, hi) = (counts.iter().copied().min().unwrap_or(0), counts.iter().copied().max().unwrap_or(0));
            b.results.push(record(pre, &[("min_zeros", lo as f64), ("max_zeros", hi as f64)]));
            b.at_least(format!("{pre}/lower"), lo as f64, (m - 1) as f64);
            b.at_most(format!("{pre}/upper"), hi as f64, (n - 1) as f64);
            Ok(())
        }));
    }
    out
}

fn suite_quadrature(cfg: &VerifyConfig) -> Vec<Batch> {
    let alphas = or_default(&cfg.alphas, &ALPHA_GRID);
    let rel = cfg.tol.quadrature_rel;
    alphas
        .into_par_iter()
        .map(|a| {
            Batch::guarded(format!("quadrature/{}", label(a)), |b, pre| {
                let o = Order::new(a)?;
                let rule = gauss_rule(o, 2.0, 256)?;
                let wmin = rule.weights().iter().copied().fold(f64::INFINITY, f64::min);
                b.at_least(format!("{pre}/gauss_weights_positive"), wmin, f64::MIN_POSITIVE);
                let j1 = |x: f64| j_norm(o.shift(1.0), x).powi(2);
                let got = apply_gauss(&rule, j1, Some(2.0 * a + 3.0)).value;
                let want = square_moment(o, a + 1.0, 0);
                b.results.push(record(format!("{pre}/gauss_j_squared"), &[("rule", got), ("direct", want)]));
                b.at_most(format!("{pre}/gauss_j_squared"), (got - want).abs() / want, rel);
                let ef = ExtremalFunction::f(o, 1)?;
                let mr = moments(&ef, 0)?;
                let rule_value = mr.rule_values[0].ok_or_else(|| LoganError::NoConvergence("no rule value".into()))?;
                b.results.push(record(format!("{pre}/gauss_extremizer"), &[("rule", rule_value), ("direct", mr.values[0])]));
                b.at_most(format!("{pre}/gauss_extremizer"), (rule_value - mr.values[0]).abs() / mr.scale[0], rel);
                let beta = a + 2.0;
                let lifted = |x: f64| x * x * j_norm(o.shift(2.0), x).powi(2);
                let want = square_moment(o, beta, 1);
                for r in 1..=2 {
                    let rr = radau_rule(o, 2.0, r, 256)?;
                    let wmin = rr.node_weights().iter().copied().fold(rr.origin_weights()[r - 1], f64::min);
                    b.at_least(format!("{pre}/radau_r={r}/weights_positive"), wmin, f64::MIN_POSITIVE);
                    let derivs = [0.0, 2.0];
                    let got = apply_radau(&rr, lifted, &derivs[..r], Some(2.0 * a + 3.0))?.value;
                    b.results.push(record(format!("{pre}/radau_r={r}"), &[("rule", got), ("direct", want)]));
                    b.at_most(format!("{pre}/radau_r={r}"), (got - want).abs() / want, rel);
                }
                Ok(())
            })
        })
        .collect()
}
