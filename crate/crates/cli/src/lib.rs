//! The `elliptix` command line.
//!
//! Subcommands evaluate the elliptic integrals and Carlson forms, check the
//! K/Π identity and its differential equation at a point, emit classified
//! region maps of the complex plane, and print the K(1/2) closed forms.
//! Every record carries the branch policy and tolerances it was computed
//! with.
//!
//! Exit codes: 0 success, 2 domain error, singular point, bad usage or
//! unwritable output, 3 non-convergence.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{Map, Value};

use elliptix_core::identity::{self, GridSpec, RegionGrid, ToleranceConfig};
use elliptix_core::{carlson, elliptic, oracle};
use elliptix_core::{BranchPolicy, CarlsonConfig, Error, PoleMode, QuadratureSpec};

pub mod format;

use format::{complex, complex_text, float, opt_complex, opt_real, real, to_json_line};

pub const SCHEMA_VERSION: &str = "1";

const CONVENTION: &str = "Parameter convention: m is the parameter, m = k^2 (k the modulus), as in \
K(m) = ∫₀¹ dt/√((1−t²)(1−m t²)); n is the characteristic of Π(n, m).";

#[derive(Debug, Parser)]
#[command(
    name = "elliptix",
    version,
    about = "Complete elliptic integrals and the K/Pi identity over complex arguments",
    long_about = format!(
        "Complete elliptic integrals K, E, Pi and the Carlson forms over complex arguments, \
         and checks of the identity Pi(n(x), m(x)) - (1+3x)/(6x) K(m(x)) = 0 or f(x).\n\n{CONVENTION}"
    ),
    after_help = CONVENTION
)]
pub struct Cli {
    /// Branch-cut sides: from-above, from-below, or m:<side>,n:<side>.
    #[arg(long, global = true, env = "ELLIPTIX_POLICY", value_parser = parse_policy)]
    pub policy: Option<BranchPolicy>,

    /// Print a single-line JSON record instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate K, E, Pi or a Carlson form at one point.
    #[command(after_help = CONVENTION)]
    Eval(EvalArgs),
    /// Evaluate both sides of the identity at a point and classify it.
    #[command(after_help = CONVENTION)]
    Identity(IdentityArgs),
    /// Check the differential equation y' = y g(x) at a point.
    #[command(name = "ode-check", after_help = CONVENTION)]
    OdeCheck(OdeArgs),
    /// Classify every node of a complex-plane grid and write CSV or JSON.
    #[command(name = "region-map", after_help = CONVENTION)]
    RegionMap(RegionArgs),
    /// Print the three closed forms of K(1/2) with residuals.
    #[command(after_help = CONVENTION)]
    Special,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    #[value(name = "K", alias = "k")]
    K,
    #[value(name = "E", alias = "e")]
    E,
    #[value(name = "Pi", alias = "pi")]
    Pi,
    #[value(name = "rf")]
    Rf,
    #[value(name = "rc")]
    Rc,
    #[value(name = "rd")]
    Rd,
    #[value(name = "rj")]
    Rj,
}

impl Function {
    fn name(self) -> &'static str {
        match self {
            Function::K => "K",
            Function::E => "E",
            Function::Pi => "Pi",
            Function::Rf => "rf",
            Function::Rc => "rc",
            Function::Rd => "rd",
            Function::Rj => "rj",
        }
    }

    /// Argument names in the order they are reported.
    fn arguments(self) -> &'static [&'static str] {
        match self {
            Function::K | Function::E => &["m"],
            Function::Pi => &["n", "m"],
            Function::Rc => &["x", "y"],
            Function::Rf | Function::Rd => &["x", "y", "z"],
            Function::Rj => &["x", "y", "z", "p"],
        }
    }
}

/// Complex arguments are written `re` or `re,im`.
#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Function to evaluate.
    pub function: Function,
    /// Parameter m = k^2 (K, E, Pi).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub m: Option<Complex64>,
    /// Characteristic n (Pi).
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub n: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub x: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub y: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub z: Option<Complex64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub p: Option<Complex64>,
    /// Use the slow quadrature oracle instead of the duplication algorithm.
    #[arg(long)]
    pub oracle: bool,
    /// Relative tolerance of the evaluation.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args)]
pub struct IdentityArgs {
    /// Real evaluation point.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "z", required_unless_present = "z")]
    pub x: Option<f64>,
    /// Complex evaluation point `re,im`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub z: Option<Complex64>,
    /// Classification tolerance on |y| and |y - f|.
    #[arg(long, default_value_t = ToleranceConfig::DEFAULT_CLASSIFY_TOL)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct OdeArgs {
    /// Evaluation point, `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub x: Complex64,
    /// Step of the central difference quotient.
    #[arg(long, default_value_t = 1e-5)]
    pub h: f64,
    /// Pass threshold on the normalized residual.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    /// Named rectangle and resolution; explicit bounds override it.
    #[arg(long, value_parser = ["fig1", "fig2"])]
    pub preset: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub re_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub re_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub im_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub im_max: Option<f64>,
    #[arg(long)]
    pub nx: Option<usize>,
    #[arg(long)]
    pub ny: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Worker threads; the output does not depend on this.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Classification tolerance on |y| and |y - f|.
    #[arg(long, default_value_t = ToleranceConfig::DEFAULT_CLASSIFY_TOL)]
    pub tol: f64,
}

fn parse_policy(s: &str) -> Result<BranchPolicy, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `re` or `re,im`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parse = |t: &str| {
        t.trim()
            .parse::<f64>()
            .map_err(|e| format!("cannot parse {t:?} as a number: {e}"))
    };
    let z = match s.split_once(',') {
        Some((re, im)) => Complex64::new(parse(re)?, parse(im)?),
        None => Complex64::new(parse(s)?, 0.0),
    };
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(format!("{s:?} is not finite"))
    }
}

/// Failure of a command, with its exit code.
#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Usage(String),
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::NonConvergence { .. } | Error::ToleranceNotReached { .. }) => 3,
            CliError::Core(_) | CliError::Usage(_) | CliError::Io { .. } => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Io { path, source } => write!(f, "cannot write {path}: {source}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

fn io_error(path: &str) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_string(),
        source,
    }
}

/// A JSON object built in field order.
struct Obj(Map<String, Value>);

impl Obj {
    fn new() -> Self {
        Obj(Map::new())
    }

    fn with(mut self, key: &str, value: Value) -> Self {
        self.0.insert(key.to_string(), value);
        self
    }

    fn value(self) -> Value {
        Value::Object(self.0)
    }
}

fn record(command: &str, inputs: Obj, outputs: Obj, residuals: Obj, klass: Option<&str>, settings: Obj) -> Value {
    Obj::new()
        .with("schema_version", Value::from(SCHEMA_VERSION))
        .with("command", Value::from(command))
        .with("inputs", inputs.value())
        .with("outputs", outputs.value())
        .with("residuals", residuals.value())
        .with("klass", klass.map_or(Value::Null, Value::from))
        .with("settings", settings.value())
        .value()
}

fn tolerance_settings(policy: BranchPolicy, tol: &ToleranceConfig) -> Obj {
    Obj::new()
        .with("policy", Value::from(policy.to_string()))
        .with("carlson_rel_tol", real(tol.carlson().rel_tol()))
        .with("classify_tol", real(tol.classify_tol()))
        .with("singular_radius", real(tol.singular_radius()))
}

fn settings_text(policy: BranchPolicy, tol: &ToleranceConfig) -> String {
    format!(
        "policy {policy}, carlson rel_tol {:e}, classify_tol {:e}, singular_radius {:e}",
        tol.carlson().rel_tol(),
        tol.classify_tol(),
        tol.singular_radius()
    )
}

impl Cli {
    fn policy(&self) -> BranchPolicy {
        self.policy.unwrap_or_default()
    }
}

/// Runs a parsed command line, writing its report to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let policy = cli.policy();
    match &cli.command {
        Command::Eval(args) => cmd_eval(args, policy, cli.json, out),
        Command::Identity(args) => cmd_identity(args, policy, cli.json, out),
        Command::OdeCheck(args) => cmd_ode_check(args, policy, cli.json, out),
        Command::RegionMap(args) => cmd_region_map(args, policy, cli.json, out),
        Command::Special => cmd_special(policy, cli.json, out),
    }
}

fn emit(out: &mut dyn Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(io_error("standard output"))
}

fn cmd_eval(args: &EvalArgs, policy: BranchPolicy, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let f = args.function;
    let given = [("m", args.m), ("n", args.n), ("x", args.x), ("y", args.y), ("z", args.z), ("p", args.p)];
    let wanted = f.arguments();
    for (name, value) in given {
        if value.is_some() && !wanted.contains(&name) {
            return Err(CliError::Usage(format!("{} does not take --{name}", f.name())));
        }
    }
    let get = |name: &str| -> Result<Complex64, CliError> {
        given
            .iter()
            .find(|(n, _)| *n == name)
            .and_then(|(_, v)| *v)
            .ok_or_else(|| CliError::Usage(format!("{} needs --{name}", f.name())))
    };
    let values: Vec<Complex64> = wanted.iter().map(|name| get(name)).collect::<Result<_, _>>()?;

    let mut settings = Obj::new()
        .with("policy", Value::from(policy.to_string()))
        .with("oracle", Value::from(args.oracle));
    let value = if args.oracle {
        let spec = match args.tol {
            Some(tol) => QuadratureSpec::default().with_rel_tol(tol),
            None => QuadratureSpec::default(),
        };
        QuadratureSpec::new(spec.abs_tol, spec.rel_tol, spec.max_subdivisions, spec.cut_offset)?;
        settings = settings
            .with("quadrature_rel_tol", real(spec.rel_tol))
            .with("cut_offset", real(spec.cut_offset));
        eval_oracle(f, &values, policy, &spec)?
    } else {
        let cfg = match args.tol {
            Some(tol) => CarlsonConfig::new(tol, CarlsonConfig::DEFAULT_MAX_ITERS)?,
            None => CarlsonConfig::default(),
        };
        settings = settings.with("carlson_rel_tol", real(cfg.rel_tol()));
        eval_fast(f, &values, policy, &cfg)?
    };

    if json {
        let mut inputs = Obj::new().with("function", Value::from(f.name()));
        for (name, v) in wanted.iter().zip(&values) {
            inputs = inputs.with(name, complex(*v));
        }
        let rec = record("eval", inputs, Obj::new().with("value", complex(value)), Obj::new(), None, settings);
        emit(out, &to_json_line(&rec))
    } else {
        let list: Vec<String> = wanted
            .iter()
            .zip(&values)
            .map(|(name, v)| format!("{name}={}", complex_text(*v)))
            .collect();
        emit(
            out,
            &format!(
                "{}({}) re={} im={}  [policy {policy}{}]",
                f.name(),
                list.join(", "),
                float(value.re),
                float(value.im),
                if args.oracle { ", oracle" } else { "" }
            ),
        )
    }
}

fn eval_fast(f: Function, v: &[Complex64], policy: BranchPolicy, cfg: &CarlsonConfig) -> Result<Complex64, CliError> {
    Ok(match f {
        Function::K => elliptic::comp_k(v[0], policy, cfg)?,
        Function::E => elliptic::comp_e(v[0], policy, cfg)?,
        Function::Pi => elliptic::comp_pi(v[0], v[1], policy, cfg)?,
        Function::Rf => carlson::rf(v[0], v[1], v[2], cfg)?,
        Function::Rc => carlson::rc(v[0], v[1], cfg)?,
        Function::Rd => carlson::rd(v[0], v[1], v[2], cfg)?,
        Function::Rj => carlson::rj(v[0], v[1], v[2], v[3], cfg)?,
    })
}

fn eval_oracle(f: Function, v: &[Complex64], policy: BranchPolicy, spec: &QuadratureSpec) -> Result<Complex64, CliError> {
    Ok(match f {
        Function::K => oracle::quad_k(v[0], policy.m_cut_side, spec)?,
        Function::E => oracle::quad_e(v[0], policy.m_cut_side, spec)?,
        Function::Pi => oracle::quad_pi(v[0], v[1], PoleMode::Offset(policy.n_cut_side), policy.m_cut_side, spec)?,
        Function::Rf => oracle::quad_rf(v[0], v[1], v[2], spec)?,
        Function::Rc => oracle::quad_rc(v[0], v[1], spec)?,
        Function::Rd => oracle::quad_rd(v[0], v[1], v[2], spec)?,
        Function::Rj => oracle::quad_rj(v[0], v[1], v[2], v[3], spec)?,
    })
}

fn tolerance(classify_tol: f64) -> Result<ToleranceConfig, CliError> {
    Ok(ToleranceConfig::new(
        classify_tol,
        ToleranceConfig::DEFAULT_SINGULAR_RADIUS,
        CarlsonConfig::default(),
    )?)
}

fn cmd_identity(args: &IdentityArgs, policy: BranchPolicy, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let z = match (args.x, args.z) {
        (Some(x), _) if !x.is_finite() => return Err(CliError::Usage(format!("--x {x} is not finite"))),
        (Some(x), _) => Complex64::new(x, 0.0),
        (None, Some(z)) => z,
        (None, None) => return Err(CliError::Usage("identity needs --x or --z".into())),
    };
    let tol = tolerance(args.tol)?;
    // Singular points and evaluation failures are errors here, not labels.
    let terms = identity::lhs_terms(z, policy, &tol)?;
    let e = identity::classify(z, policy, &tol);
    let (y, f) = (terms.y(), identity::rhs_f(z)?);
    let (resid_zero, resid_f) = ((y).norm(), (y - f).norm());

    if json {
        let rec = record(
            "identity",
            Obj::new().with("z", complex(z)),
            Obj::new()
                .with("y", complex(y))
                .with("f", complex(f))
                .with("pi_term", complex(terms.pi_term))
                .with("k_term", complex(terms.k_term)),
            Obj::new()
                .with("resid_zero", real(resid_zero))
                .with("resid_f", real(resid_f)),
            Some(e.klass.name()),
            tolerance_settings(policy, &tol),
        );
        emit(out, &to_json_line(&rec))
    } else {
        emit(out, &format!("z = {}", complex_text(z)))?;
        emit(out, &format!("y = {}", complex_text(y)))?;
        emit(out, &format!("f = {}", complex_text(f)))?;
        emit(out, &format!("resid_zero = {}", float(resid_zero)))?;
        emit(out, &format!("resid_f = {}", float(resid_f)))?;
        emit(out, &format!("klass = {}", e.klass))?;
        emit(out, &format!("[{}]", settings_text(policy, &tol)))
    }
}

fn cmd_ode_check(args: &OdeArgs, policy: BranchPolicy, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    if !(args.h > 0.0 && args.h.is_finite()) {
        return Err(CliError::Usage(format!("--h must be positive, got {}", args.h)));
    }
    let tol = ToleranceConfig::default();
    let x = args.x;
    let analytic = identity::dy_dx_analytic(x, policy, &tol)?;
    let y = identity::lhs_y(x, policy, &tol)?;
    let g = identity::ode_rhs_factor(x)?;
    let fd = oracle::finite_diff(|t| identity::lhs_y(t, policy, &tol), x, args.h)?;
    let residual = identity::ode_residual(x, policy, &tol)?;
    let fd_rel = (analytic - fd).norm() / analytic.norm().max(1.0);
    let pass = residual <= args.tol;

    if json {
        let rec = record(
            "ode-check",
            Obj::new().with("x", complex(x)).with("h", real(args.h)),
            Obj::new()
                .with("y", complex(y))
                .with("g", complex(g))
                .with("dy_dx_analytic", complex(analytic))
                .with("dy_dx_finite_diff", complex(fd)),
            Obj::new()
                .with("ode_residual", real(residual))
                .with("finite_diff_rel", real(fd_rel))
                .with("threshold", real(args.tol))
                .with("pass", Value::from(pass)),
            None,
            tolerance_settings(policy, &tol),
        );
        emit(out, &to_json_line(&rec))
    } else {
        emit(out, &format!("x = {}", complex_text(x)))?;
        emit(out, &format!("y = {}", complex_text(y)))?;
        emit(out, &format!("dy/dx analytic = {}", complex_text(analytic)))?;
        emit(out, &format!("dy/dx central difference (h={:e}) = {}", args.h, complex_text(fd)))?;
        emit(out, &format!("ode_residual = {}", float(residual)))?;
        emit(out, &format!("finite_diff_rel = {}", float(fd_rel)))?;
        emit(
            out,
            &format!("{} (threshold {:e})", if pass { "PASS" } else { "FAIL" }, args.tol),
        )?;
        emit(out, &format!("[{}]", settings_text(policy, &tol)))
    }
}

impl RegionArgs {
    pub fn grid(&self) -> Result<GridSpec, CliError> {
        let base = match &self.preset {
            Some(name) => Some(GridSpec::preset(name)?),
            None => None,
        };
        let pick = |flag: Option<f64>, from: fn(&GridSpec) -> f64, name: &str| -> Result<f64, CliError> {
            flag.or(base.as_ref().map(from))
                .ok_or_else(|| CliError::Usage(format!("region-map needs --{name} or --preset")))
        };
        let count = |flag: Option<usize>, from: fn(&GridSpec) -> usize, name: &str| -> Result<usize, CliError> {
            flag.or(base.as_ref().map(from))
                .ok_or_else(|| CliError::Usage(format!("region-map needs --{name} or --preset")))
        };
        Ok(GridSpec::new(
            pick(self.re_min, |g| g.re_min, "re-min")?,
            pick(self.re_max, |g| g.re_max, "re-max")?,
            pick(self.im_min, |g| g.im_min, "im-min")?,
            pick(self.im_max, |g| g.im_max, "im-max")?,
            count(self.nx, |g| g.nx, "nx")?,
            count(self.ny, |g| g.ny, "ny")?,
        )?)
    }
}

pub const CSV_HEADER: &str = "re,im,y_re,y_im,f_re,f_im,resid_zero,resid_f,klass";

/// Writes the grid as CSV: header, then one row per node in row-major
/// order. Fields that do not exist for singular nodes are left empty.
pub fn write_csv(grid: &RegionGrid, w: &mut dyn Write) -> io::Result<()> {
    writeln!(w, "{CSV_HEADER}")?;
    let opt = |x: Option<f64>| x.map(float).unwrap_or_default();
    for c in &grid.cells {
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            float(c.z.re),
            float(c.z.im),
            opt(c.y.map(|v| v.re)),
            opt(c.y.map(|v| v.im)),
            opt(c.f.map(|v| v.re)),
            opt(c.f.map(|v| v.im)),
            opt(c.resid_zero),
            opt(c.resid_f),
            c.klass.name()
        )?;
    }
    Ok(())
}

/// The grid as a JSON document mirroring [`RegionGrid`].
pub fn grid_json(grid: &RegionGrid, policy: BranchPolicy, tol: &ToleranceConfig) -> Value {
    let s = &grid.spec;
    let spec = Obj::new()
        .with("re_min", real(s.re_min))
        .with("re_max", real(s.re_max))
        .with("im_min", real(s.im_min))
        .with("im_max", real(s.im_max))
        .with("nx", Value::from(s.nx))
        .with("ny", Value::from(s.ny));
    let cells: Vec<Value> = grid
        .cells
        .iter()
        .map(|c| {
            Obj::new()
                .with("z", complex(c.z))
                .with("y", opt_complex(c.y))
                .with("f", opt_complex(c.f))
                .with("resid_zero", opt_real(c.resid_zero))
                .with("resid_f", opt_real(c.resid_f))
                .with("klass", Value::from(c.klass.name()))
                .value()
        })
        .collect();
    Obj::new()
        .with("schema_version", Value::from(SCHEMA_VERSION))
        .with("command", Value::from("region-map"))
        .with("grid", spec.value())
        .with("settings", tolerance_settings(policy, tol).value())
        .with("cells", Value::Array(cells))
        .value()
}

fn cmd_region_map(args: &RegionArgs, policy: BranchPolicy, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = args.grid()?;
    let tol = tolerance(args.tol)?;
    // Open the destination before the (possibly long) computation.
    let file = match &args.out {
        Some(path) => Some(File::create(path).map_err(io_error(&path.display().to_string()))?),
        None => None,
    };
    let grid = match args.threads {
        Some(0) => return Err(CliError::Usage("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(format!("cannot start {n} worker threads: {e}")))?
            .install(|| identity::region_map(&spec, policy, &tol))?,
        None => identity::region_map(&spec, policy, &tol)?,
    };

    let write = |w: &mut dyn Write| -> io::Result<()> {
        match args.format {
            OutputFormat::Csv => write_csv(&grid, w),
            OutputFormat::Json => writeln!(w, "{}", to_json_line(&grid_json(&grid, policy, &tol))),
        }?;
        w.flush()
    };
    match (file, &args.out) {
        (Some(file), Some(path)) => {
            write(&mut BufWriter::new(file)).map_err(io_error(&path.display().to_string()))?;
        }
        _ => write(out).map_err(io_error("standard output"))?,
    }

    if args.out.is_some() {
        let counts = Obj::new()
            .with("zero", Value::from(grid.count(identity::Klass::Zero)))
            .with("closed_form", Value::from(grid.count(identity::Klass::ClosedForm)))
            .with("neither", Value::from(grid.count(identity::Klass::Neither)))
            .with("singular", Value::from(grid.count(identity::Klass::Singular)));
        if json {
            let rec = record(
                "region-map",
                Obj::new()
                    .with("out", Value::from(args.out.as_ref().map(|p| p.display().to_string())))
                    .with("cells", Value::from(spec.len())),
                Obj::new().with("counts", counts.value()),
                Obj::new(),
                None,
                tolerance_settings(policy, &tol),
            );
            emit(out, &to_json_line(&rec))?;
        } else {
            emit(
                out,
                &format!(
                    "wrote {} cells ({}x{}) to {}: zero {}, closed_form {}, neither {}, singular {}  [{}]",
                    spec.len(),
                    spec.nx,
                    spec.ny,
                    args.out.as_ref().expect("checked above").display(),
                    grid.count(identity::Klass::Zero),
                    grid.count(identity::Klass::ClosedForm),
                    grid.count(identity::Klass::Neither),
                    grid.count(identity::Klass::Singular),
                    settings_text(policy, &tol)
                ),
            )?;
        }
    }
    Ok(())
}

fn cmd_special(policy: BranchPolicy, json: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let cfg = CarlsonConfig::default();
    let sv = identity::special_values(policy, &cfg)?;
    if json {
        let mut outputs = Obj::new().with("k_half", real(sv.k_half));
        let mut residuals = Obj::new();
        for form in sv.all() {
            outputs = outputs.with(form.name, real(form.value));
            residuals = residuals.with(form.name, real(form.residual));
        }
        let settings = Obj::new()
            .with("policy", Value::from(policy.to_string()))
            .with("carlson_rel_tol", real(cfg.rel_tol()));
        emit(out, &to_json_line(&record("special", Obj::new(), outputs, residuals, None, settings)))
    } else {
        emit(out, &format!("K(1/2) = {}", float(sv.k_half)))?;
        let describe = [
            "Gamma(1/4)^2/(4 sqrt(pi))",
            "((3 - sqrt(6 sqrt3 - 9))/2) Pi((1 - sqrt(2 sqrt3 - 3))/2, 1/2)",
            "((3 + sqrt(6 sqrt3 - 9))/2) Pi((1 + sqrt(2 sqrt3 - 3))/2, 1/2) - pi sqrt(2 + sqrt3 + sqrt(7 + 38 sqrt3/9))",
        ];
        for (form, text) in sv.all().iter().zip(describe) {
            emit(
                out,
                &format!("{text} = {}  residual {}", float(form.value), float(form.residual)),
            )?;
        }
        emit(out, &format!("[policy {policy}, carlson rel_tol {:e}]", cfg.rel_tol()))
    }
}
