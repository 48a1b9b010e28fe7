//! Command-line front end: single checks, parameter sweeps, seeded fuzzing,
//! and the proof-fact identity suite.
//!
//! Exit status contract: 0 verified (or all facts pass), 1 usage/domain
//! error, 2 violated, 3 hypotheses unmet, 4 inconclusive.

mod config;
mod fuzz;
mod output;
mod sweep;

pub use fuzz::{run_fuzz, FuzzConfig, FuzzSummary, FUZZ_DEFAULT_GRID_N};
pub use sweep::run_sweep;

use crate::expr::FunctionSpec;
use crate::fracint::QuadSettings;
use crate::theorems::{self, CheckReport, Status};
use crate::Error;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::io::Write;

const AFTER_HELP: &str = "\
THEOREMS (required parameters):
  HH    classical Hermite-Hadamard                      --a --b
  T1_1  mean vs m-weighted endpoint averages            --a --b --m
  T1_2  two-interval mean average bound                 --a --b --m
  L1_1  fractional trapezoid identity                   --a --b --alpha
  T2_1  one-sided fractional bounds, m-convex           --a --b --m --alpha
  T2_2  trapezoid-defect bound, |f'|^q m-convex         --a --b --m --alpha --q
  C2_1  Hoelder variant of T2_2 (q > 1, alpha <= 1)     --a --b --m --alpha --q
  T2_3  four-orientation sum inequality                 --a --b --m --alpha
  T3_1  one-sided bounds, (alpha1, m)-convex            --a --b --m --alpha --alpha1
  C3_1  T3_1 at alpha1 = alpha (alpha <= 1)             --a --b --m --alpha
  T3_2  defect bound, (alpha1, m)-convex |f'|^q         --a --b --m --alpha --alpha1 --q
  C3_2  T3_2 at alpha1 = alpha (alpha <= 1)             --a --b --m --alpha --q

EXPRESSION GRAMMAR (stable interface):
  expr   := term (('+' | '-') term)*
  term   := unary (('*' | '/') unary)*
  unary  := '-' unary | power
  power  := atom ('^' exponent)?      ^ binds tighter than unary minus and is
                                      right-associative; the exponent must be
                                      a constant expression
  atom   := number | 'x' | 'e' | 'pi'
          | ('exp' | 'ln' | 'abs') '(' expr ')' | '(' expr ')'
  number := digits ['.' digits] [('e' | 'E') ['+' | '-'] digits]

EXIT STATUS:
  0 verified / all facts pass    1 usage or domain error    2 violated
  3 hypotheses unmet             4 inconclusive

RANGES: sweep parameters accept start:stop:step (stop inclusive within half
a step). CONFIG: --config points at a flat `key = value` file mirroring the
flags; explicit flags win.";

#[derive(Parser, Debug)]
#[command(
    name = "fracineq",
    version,
    about = "Verify Hermite-Hadamard-type inequalities for m-convex and (alpha,m)-convex \
             functions via Riemann-Liouville fractional integrals",
    after_help = AFTER_HELP
)]
pub struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Subcommand, Debug)]
enum CliCommand {
    /// Verify one theorem at a single parameter point
    Check(CheckArgs),
    /// Cartesian sweep over parameter ranges, one report row per point
    Sweep(SweepArgs),
    /// Seeded randomized search for counterexamples over certified inputs
    Fuzz(FuzzArgs),
    /// Run the closed-form proof-fact suite over the default order grids
    Identities(IdentitiesArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    #[value(name = "json-lines")]
    JsonLines,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct CommonOpts {
    /// Output format
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Flat `key = value` config file; explicit flags override it
    #[arg(long)]
    config: Option<std::path::PathBuf>,
    /// Absolute quadrature tolerance [default: 1e-10]
    #[arg(long)]
    abs_tol: Option<f64>,
    /// Panel-split budget per integral [default: 2000]
    #[arg(long)]
    max_subdivisions: Option<usize>,
    /// Gauss-Legendre points per panel [default: 15]
    #[arg(long)]
    panel_order: Option<usize>,
    /// Certification grid points per axis [default: 64; fuzz: 16]
    #[arg(long)]
    grid_n: Option<usize>,
    /// Hypothesis certification tolerance [default: 1e-9]
    #[arg(long)]
    cert_tol: Option<f64>,
    /// Verdict tolerance [default: 1e-8]
    #[arg(long)]
    check_tol: Option<f64>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Theorem to check (see the list below)
    #[arg(long)]
    theorem: Option<String>,
    /// Test function of x, e.g. "4*x - x^2"
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    theorem: Option<String>,
    /// Test function of x
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Scalar or range start:stop:step
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args, Debug)]
struct FuzzArgs {
    /// Number of trials
    #[arg(long)]
    trials: Option<u64>,
    /// PRNG seed (SplitMix64 stream) [default: 0]
    #[arg(long)]
    seed: Option<u64>,
    /// Restrict to one theorem (default: all applicable)
    #[arg(long)]
    theorem: Option<String>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Args, Debug)]
struct IdentitiesArgs {
    /// Comma-separated alpha grid [default: 0.1,0.25,0.5,0.75,1,1.5,2]
    #[arg(long)]
    alpha_grid: Option<String>,
    /// Comma-separated alpha1 grid [default: 0.25,0.5,0.75,1]
    #[arg(long)]
    alpha1_grid: Option<String>,
    #[command(flatten)]
    common: CommonOpts,
}

/// Scalar or inclusive range, the two shapes a swept parameter can take.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ParamValue {
    Scalar(f64),
    Range { start: f64, stop: f64, step: f64 },
}

impl ParamValue {
    pub fn parse(text: &str) -> Result<ParamValue, String> {
        let parts: Vec<&str> = text.split(':').collect();
        let num = |s: &str| -> Result<f64, String> {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| format!("`{s}` is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("`{s}` is not finite"))
            }
        };
        match parts.as_slice() {
            [one] => Ok(ParamValue::Scalar(num(one)?)),
            [start, stop, step] => {
                let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
                if step <= 0.0 {
                    return Err(format!("range step must be > 0, got {step}"));
                }
                if stop < start {
                    return Err(format!("range stop {stop} is below start {start}"));
                }
                if (stop - start) / step > 1e6 {
                    return Err(format!(
                        "range {start}:{stop}:{step} has more than 1e6 points"
                    ));
                }
                Ok(ParamValue::Range { start, stop, step })
            }
            _ => Err(format!("`{text}` is neither a scalar nor start:stop:step")),
        }
    }

    /// Grid points, stop-inclusive within half a step.
    pub fn expand(&self) -> Vec<f64> {
        match *self {
            ParamValue::Scalar(v) => vec![v],
            ParamValue::Range { start, stop, step } => {
                let mut out = Vec::new();
                let mut k = 0u64;
                loop {
                    let v = start + step * k as f64;
                    if v > stop + step / 2.0 {
                        break;
                    }
                    out.push(v);
                    k += 1;
                }
                out
            }
        }
    }

    fn scalar(&self) -> Option<f64> {
        match *self {
            ParamValue::Scalar(v) => Some(v),
            ParamValue::Range { .. } => None,
        }
    }
}

/// CLI-facing theorem names; two-sided checkers refine these into the
/// per-side report ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremSelector {
    Hh,
    T1_1,
    T1_2,
    L1_1,
    T2_1,
    T2_2,
    C2_1,
    T2_3,
    T3_1,
    C3_1,
    T3_2,
    C3_2,
}

pub const PARAM_NAMES: [&str; 6] = ["a", "b", "m", "alpha", "alpha1", "q"];

impl TheoremSelector {
    pub const ALL: [TheoremSelector; 12] = [
        TheoremSelector::Hh,
        TheoremSelector::T1_1,
        TheoremSelector::T1_2,
        TheoremSelector::L1_1,
        TheoremSelector::T2_1,
        TheoremSelector::T2_2,
        TheoremSelector::C2_1,
        TheoremSelector::T2_3,
        TheoremSelector::T3_1,
        TheoremSelector::C3_1,
        TheoremSelector::T3_2,
        TheoremSelector::C3_2,
    ];

    pub fn parse(text: &str) -> Result<TheoremSelector, String> {
        TheoremSelector::ALL
            .into_iter()
            .find(|t| t.name() == text)
            .ok_or_else(|| {
                let names: Vec<&str> = TheoremSelector::ALL.iter().map(|t| t.name()).collect();
                format!("unknown theorem `{text}`; expected one of {}", names.join(", "))
            })
    }

    pub fn name(self) -> &'static str {
        match self {
            TheoremSelector::Hh => "HH",
            TheoremSelector::T1_1 => "T1_1",
            TheoremSelector::T1_2 => "T1_2",
            TheoremSelector::L1_1 => "L1_1",
            TheoremSelector::T2_1 => "T2_1",
            TheoremSelector::T2_2 => "T2_2",
            TheoremSelector::C2_1 => "C2_1",
            TheoremSelector::T2_3 => "T2_3",
            TheoremSelector::T3_1 => "T3_1",
            TheoremSelector::C3_1 => "C3_1",
            TheoremSelector::T3_2 => "T3_2",
            TheoremSelector::C3_2 => "C3_2",
        }
    }

    pub fn required_params(self) -> &'static [&'static str] {
        match self {
            TheoremSelector::Hh => &["a", "b"],
            TheoremSelector::T1_1 | TheoremSelector::T1_2 => &["a", "b", "m"],
            TheoremSelector::L1_1 => &["a", "b", "alpha"],
            TheoremSelector::T2_1 | TheoremSelector::T2_3 | TheoremSelector::C3_1 => {
                &["a", "b", "m", "alpha"]
            }
            TheoremSelector::T2_2 | TheoremSelector::C2_1 | TheoremSelector::C3_2 => {
                &["a", "b", "m", "alpha", "q"]
            }
            TheoremSelector::T3_1 => &["a", "b", "m", "alpha", "alpha1"],
            TheoremSelector::T3_2 => &["a", "b", "m", "alpha", "alpha1", "q"],
        }
    }
}

/// Scalar parameter set for one checker invocation; fields the theorem does
/// not use stay NaN and are rejected upstream if supplied.
#[derive(Debug, Clone, Copy)]
pub struct ScalarParams {
    pub a: f64,
    pub b: f64,
    pub m: f64,
    pub alpha: f64,
    pub alpha1: f64,
    pub q: f64,
}

impl ScalarParams {
    fn nan() -> ScalarParams {
        ScalarParams {
            a: f64::NAN,
            b: f64::NAN,
            m: f64::NAN,
            alpha: f64::NAN,
            alpha1: f64::NAN,
            q: f64::NAN,
        }
    }

    pub fn get(&self, name: &str) -> f64 {
        match name {
            "a" => self.a,
            "b" => self.b,
            "m" => self.m,
            "alpha" => self.alpha,
            "alpha1" => self.alpha1,
            "q" => self.q,
            _ => f64::NAN,
        }
    }

    fn set(&mut self, name: &str, value: f64) {
        match name {
            "a" => self.a = value,
            "b" => self.b = value,
            "m" => self.m = value,
            "alpha" => self.alpha = value,
            "alpha1" => self.alpha1 = value,
            "q" => self.q = value,
            _ => {}
        }
    }
}

/// Run the selected checker at one parameter point.
pub fn run_checker(
    sel: TheoremSelector,
    f: &FunctionSpec,
    p: &ScalarParams,
    s: &QuadSettings,
) -> Result<CheckReport, Error> {
    match sel {
        TheoremSelector::Hh => theorems::check_hh_classical(f, p.a, p.b, s),
        TheoremSelector::T1_1 => theorems::check_thm_1_1(f, p.a, p.b, p.m, s),
        TheoremSelector::T1_2 => theorems::check_thm_1_2(f, p.a, p.b, p.m, s),
        TheoremSelector::L1_1 => theorems::check_lemma_1_1(f, p.a, p.b, p.alpha, s),
        TheoremSelector::T2_1 => theorems::check_thm_2_1(f, p.a, p.b, p.m, p.alpha, s),
        TheoremSelector::T2_2 => theorems::check_thm_2_2(f, p.a, p.b, p.m, p.alpha, p.q, s),
        TheoremSelector::C2_1 => theorems::check_cor_2_1(f, p.a, p.b, p.m, p.alpha, p.q, s),
        TheoremSelector::T2_3 => theorems::check_thm_2_3(f, p.a, p.b, p.m, p.alpha, s),
        TheoremSelector::T3_1 => {
            theorems::check_thm_3_1(f, p.a, p.b, p.m, p.alpha, p.alpha1, s)
        }
        TheoremSelector::C3_1 => theorems::check_cor_3_1(f, p.a, p.b, p.m, p.alpha, s),
        TheoremSelector::T3_2 => {
            theorems::check_thm_3_2(f, p.a, p.b, p.m, p.alpha, p.alpha1, p.q, s)
        }
        TheoremSelector::C3_2 => theorems::check_cor_3_2(f, p.a, p.b, p.m, p.alpha, p.q, s),
    }
}

/// Fully merged invocation: command, theorem, function, parameter values,
/// fuzz controls, output format, and numeric settings.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub theorem: Option<TheoremSelector>,
    pub function_text: Option<String>,
    pub params: BTreeMap<&'static str, ParamValue>,
    pub trials: u64,
    pub seed: u64,
    pub format: OutputFormat,
    pub settings: QuadSettings,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Check,
    Sweep,
    Fuzz,
    Identities,
}

struct MergedOpts {
    format: Option<OutputFormat>,
    settings: QuadSettings,
}

fn merge_common(
    common: &CommonOpts,
    cfg: &BTreeMap<String, String>,
    default_grid_n: usize,
) -> Result<MergedOpts, String> {
    let defaults = QuadSettings {
        cert_grid_n: default_grid_n,
        ..QuadSettings::default()
    };
    let settings = QuadSettings {
        abs_tol: pick_num(common.abs_tol, cfg, "abs_tol")?.unwrap_or(defaults.abs_tol),
        max_subdivisions: pick_usize(common.max_subdivisions, cfg, "max_subdivisions")?
            .unwrap_or(defaults.max_subdivisions),
        panel_order: pick_usize(common.panel_order, cfg, "panel_order")?
            .unwrap_or(defaults.panel_order),
        cert_grid_n: pick_usize(common.grid_n, cfg, "grid_n")?.unwrap_or(defaults.cert_grid_n),
        cert_tol: pick_num(common.cert_tol, cfg, "cert_tol")?.unwrap_or(defaults.cert_tol),
        check_tol: pick_num(common.check_tol, cfg, "check_tol")?.unwrap_or(defaults.check_tol),
    };
    let format = match &common.format {
        Some(f) => Some(*f),
        None => match cfg.get("format").map(String::as_str) {
            Some("text") => Some(OutputFormat::Text),
            Some("json-lines") => Some(OutputFormat::JsonLines),
            Some("csv") => Some(OutputFormat::Csv),
            Some(other) => return Err(format!("config: unknown format `{other}`")),
            None => None,
        },
    };
    Ok(MergedOpts { format, settings })
}

fn pick_num(
    cli: Option<f64>,
    cfg: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<f64>, String> {
    if cli.is_some() {
        return Ok(cli);
    }
    match cfg.get(key) {
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| format!("config: `{key} = {v}` is not a number")),
        None => Ok(None),
    }
}

fn pick_usize(
    cli: Option<usize>,
    cfg: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<usize>, String> {
    if cli.is_some() {
        return Ok(cli);
    }
    match cfg.get(key) {
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| format!("config: `{key} = {v}` is not a non-negative integer")),
        None => Ok(None),
    }
}

fn pick_str(cli: &Option<String>, cfg: &BTreeMap<String, String>, key: &str) -> Option<String> {
    cli.clone().or_else(|| cfg.get(key).cloned())
}

/// Collect and validate theorem parameters: required ones must be present,
/// irrelevant ones are rejected rather than ignored.
fn collect_params(
    sel: TheoremSelector,
    raw: &[(&'static str, &Option<String>)],
    cfg: &BTreeMap<String, String>,
) -> Result<BTreeMap<&'static str, ParamValue>, String> {
    let required = sel.required_params();
    let mut out = BTreeMap::new();
    for (name, cli_value) in raw {
        let merged = pick_str(cli_value, cfg, name);
        match merged {
            Some(text) => {
                if !required.contains(name) {
                    return Err(format!(
                        "parameter --{name} is not used by theorem {}",
                        sel.name()
                    ));
                }
                let value = ParamValue::parse(&text)
                    .map_err(|e| format!("parameter --{name}: {e}"))?;
                out.insert(*name, value);
            }
            None => {
                if required.contains(name) {
                    return Err(format!(
                        "theorem {} requires --{name}",
                        sel.name()
                    ));
                }
            }
        }
    }
    Ok(out)
}

fn load_config(path: &Option<std::path::PathBuf>) -> Result<BTreeMap<String, String>, String> {
    match path {
        Some(p) => config::load(p),
        None => Ok(BTreeMap::new()),
    }
}

/// Entry point used by `main`; prints to stdout/stderr and returns the
/// process exit code.
pub fn run(cli: Cli) -> u8 {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(cli, &mut out) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn execute(cli: Cli, out: &mut impl Write) -> Result<u8, String> {
    match cli.command {
        CliCommand::Check(args) => run_check_cmd(args, out),
        CliCommand::Sweep(args) => sweep::run_sweep_cmd(args, out),
        CliCommand::Fuzz(args) => run_fuzz_cmd(args, out),
        CliCommand::Identities(args) => run_identities_cmd(args, out),
    }
}

fn build_check_config(args: &CheckArgs) -> Result<RunConfig, String> {
    let cfg = load_config(&args.common.config)?;
    let merged = merge_common(&args.common, &cfg, crate::convexity::DEFAULT_GRID_N)?;
    let theorem_name =
        pick_str(&args.theorem, &cfg, "theorem").ok_or("check requires --theorem")?;
    let sel = TheoremSelector::parse(&theorem_name)?;
    let function_text = pick_str(&args.f, &cfg, "f").ok_or("check requires --f")?;
    let raw: [(&'static str, &Option<String>); 6] = [
        ("a", &args.a),
        ("b", &args.b),
        ("m", &args.m),
        ("alpha", &args.alpha),
        ("alpha1", &args.alpha1),
        ("q", &args.q),
    ];
    let params = collect_params(sel, &raw, &cfg)?;
    for (name, v) in &params {
        if v.scalar().is_none() {
            return Err(format!(
                "check requires scalar parameters; --{name} is a range (use sweep)"
            ));
        }
    }
    Ok(RunConfig {
        command: CommandKind::Check,
        theorem: Some(sel),
        function_text: Some(function_text),
        params,
        trials: 0,
        seed: 0,
        format: merged.format.unwrap_or(OutputFormat::Text),
        settings: merged.settings,
    })
}

fn run_check_cmd(args: CheckArgs, out: &mut impl Write) -> Result<u8, String> {
    let rc = build_check_config(&args)?;
    rc.settings.validate().map_err(|e| e.to_string())?;
    let sel = rc.theorem.expect("check always selects a theorem");
    let text = rc.function_text.as_deref().expect("check always has f");
    let f = FunctionSpec::parse(text).map_err(|e| e.to_string())?;
    let mut scalars = ScalarParams::nan();
    for (name, v) in &rc.params {
        scalars.set(name, v.scalar().expect("validated scalar"));
    }
    let report = run_checker(sel, &f, &scalars, &rc.settings).map_err(|e| e.to_string())?;
    output::render_check(out, &report, text, &scalars, sel, rc.format)
        .map_err(|e| e.to_string())?;
    Ok(report.status.exit_code())
}

fn run_fuzz_cmd(args: FuzzArgs, out: &mut impl Write) -> Result<u8, String> {
    let cfg = load_config(&args.common.config)?;
    let merged = merge_common(&args.common, &cfg, fuzz::FUZZ_DEFAULT_GRID_N)?;
    merged.settings.validate().map_err(|e| e.to_string())?;
    let trials = match (args.trials, cfg.get("trials")) {
        (Some(t), _) => t,
        (None, Some(v)) => v
            .parse()
            .map_err(|_| format!("config: `trials = {v}` is not an integer"))?,
        (None, None) => return Err("fuzz requires --trials".into()),
    };
    if trials < 1 {
        return Err("fuzz requires --trials >= 1".into());
    }
    let seed = match (args.seed, cfg.get("seed")) {
        (Some(s), _) => s,
        (None, Some(v)) => v
            .parse()
            .map_err(|_| format!("config: `seed = {v}` is not an unsigned integer"))?,
        (None, None) => 0,
    };
    let theorems = match pick_str(&args.theorem, &cfg, "theorem") {
        Some(name) => vec![TheoremSelector::parse(&name)?],
        None => TheoremSelector::ALL.to_vec(),
    };
    let summary = run_fuzz(&FuzzConfig {
        trials,
        seed,
        theorems,
        settings: merged.settings,
    })
    .map_err(|e| e.to_string())?;
    output::render_fuzz(out, &summary, merged.format.unwrap_or(OutputFormat::Text))
        .map_err(|e| e.to_string())?;
    Ok(0)
}

const DEFAULT_ALPHA_GRID: [f64; 7] = [0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0];
const DEFAULT_ALPHA1_GRID: [f64; 4] = [0.25, 0.5, 0.75, 1.0];

fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let v: f64 = part
            .trim()
            .parse()
            .map_err(|_| format!("grid entry `{part}` is not a number"))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err("grid must be non-empty".into());
    }
    Ok(out)
}

fn run_identities_cmd(args: IdentitiesArgs, out: &mut impl Write) -> Result<u8, String> {
    let cfg = load_config(&args.common.config)?;
    let merged = merge_common(&args.common, &cfg, crate::convexity::DEFAULT_GRID_N)?;
    merged.settings.validate().map_err(|e| e.to_string())?;
    let alpha_grid = match pick_str(&args.alpha_grid, &cfg, "alpha_grid") {
        Some(t) => parse_grid(&t)?,
        None => DEFAULT_ALPHA_GRID.to_vec(),
    };
    let alpha1_grid = match pick_str(&args.alpha1_grid, &cfg, "alpha1_grid") {
        Some(t) => parse_grid(&t)?,
        None => DEFAULT_ALPHA1_GRID.to_vec(),
    };
    let reports = theorems::run_proof_fact_suite(&alpha_grid, &alpha1_grid, &merged.settings)
        .map_err(|e| e.to_string())?;
    output::render_identities(out, &reports, merged.format.unwrap_or(OutputFormat::Text))
        .map_err(|e| e.to_string())?;
    let mut code = 0u8;
    for r in &reports {
        match r.status {
            Status::Violated => code = 2,
            Status::Inconclusive if code == 0 => code = 4,
            _ => {}
        }
    }
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn param_value_parsing() {
        assert_eq!(ParamValue::parse("1.5").unwrap(), ParamValue::Scalar(1.5));
        let r = ParamValue::parse("0.1:1.0:0.1").unwrap();
        let grid = r.expand();
        assert_eq!(grid.len(), 10);
        assert!((grid[9] - 1.0).abs() < 1e-12, "stop is inclusive: {grid:?}");
        assert!(ParamValue::parse("1:2").is_err());
        assert!(ParamValue::parse("2:1:0.5").is_err());
        assert!(ParamValue::parse("1:2:0").is_err());
        assert!(ParamValue::parse("x").is_err());
    }

    #[test]
    fn range_endpoint_within_half_step() {
        // 0.1 steps accumulate no drift because the grid is start + k*step.
        let grid = ParamValue::Range {
            start: 0.25,
            stop: 1.0,
            step: 0.25,
        }
        .expand();
        assert_eq!(grid.len(), 4);
        assert_eq!(*grid.last().unwrap(), 1.0);
    }

    #[test]
    fn selector_table_is_exhaustive() {
        for sel in TheoremSelector::ALL {
            assert_eq!(TheoremSelector::parse(sel.name()).unwrap(), sel);
            assert!(!sel.required_params().is_empty());
        }
        assert!(TheoremSelector::parse("T9_9").is_err());
    }

    #[test]
    fn irrelevant_parameters_are_rejected() {
        let q = Some("2".to_string());
        let raw: [(&'static str, &Option<String>); 6] = [
            ("a", &Some("0".to_string())),
            ("b", &Some("1".to_string())),
            ("m", &Some("1".to_string())),
            ("alpha", &None),
            ("alpha1", &None),
            ("q", &q),
        ];
        let err = collect_params(TheoremSelector::T1_1, &raw, &BTreeMap::new()).unwrap_err();
        assert!(err.contains("--q"), "{err}");
        assert!(err.contains("T1_1"));
    }

    #[test]
    fn missing_required_parameter_is_reported() {
        let raw: [(&'static str, &Option<String>); 6] = [
            ("a", &Some("0".to_string())),
            ("b", &Some("1".to_string())),
            ("m", &None),
            ("alpha", &None),
            ("alpha1", &None),
            ("q", &None),
        ];
        let err = collect_params(TheoremSelector::T1_1, &raw, &BTreeMap::new()).unwrap_err();
        assert!(err.contains("requires --m"), "{err}");
    }
}
