//! Command-line front end. Flags override `--config` values, which override
//! built-in defaults; the effective configuration is echoed in the manifest.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 validation failure. Failures
//! print `{"error": {"kind", "message"}}` on standard error.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::beliefs::belief;
use crate::design::{
    otd_optimize, p_grid, welfare_curve, InnovationParams, OtdConfig, WelfareObjective, DEFAULT_P_MIN,
};
use crate::error::Error;
use crate::experiments::{
    cost_of_clarity_experiment, identifiability_experiment, info_shock_experiment, topology_mapping_experiment,
    ClarityConfig, IdentifyConfig, InfoShockConfig, TopologyConfig,
};
use crate::games::{action_profile, GameRule};
use crate::output::{write_artifacts, Manifest, Table};
use crate::prior::{TruePrior, DEFAULT_K_MAX};
use crate::suite::{render_table, run_suite, SuiteConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_VALIDATION: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "connected-minds",
    version,
    about = "Cognitive hierarchy under network-biased beliefs"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Directory for the manifest and CSV artifacts.
    #[arg(long, global = true)]
    pub output_dir: Option<PathBuf>,
    /// Worker thread cap for parallel grid and Monte Carlo work.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// JSON run configuration: `{"command", "params", "seed", "output_dir"}`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Biased belief of one level.
    Belief(BeliefArgs),
    /// Per-level equilibrium actions.
    Actions(ActionsArgs),
    /// Welfare curve over a transparency grid.
    Welfare(WelfareArgs),
    /// Gradient-ascent transparency design.
    Otd(OtdArgs),
    /// Ordering and identity property suite.
    Check(CheckArgs),
    /// Network topology to effective transparency.
    Topology(ExperimentArgs),
    /// Likelihood ridge along τ/p.
    Identify(ExperimentArgs),
    /// Two-block information-shock estimator.
    Infoshock(ExperimentArgs),
    /// Payoff inequality against transparency.
    Clarity(ExperimentArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Belief(_) => "belief",
            Command::Actions(_) => "actions",
            Command::Welfare(_) => "welfare",
            Command::Otd(_) => "otd",
            Command::Check(_) => "check",
            Command::Topology(_) => "topology",
            Command::Identify(_) => "identify",
            Command::Infoshock(_) => "infoshock",
            Command::Clarity(_) => "clarity",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct BeliefArgs {
    /// `poisson:τ`, `geometric:q` or `custom:w0,w1,...`.
    #[arg(long)]
    pub prior: Option<String>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub level: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ActionsArgs {
    /// `beauty:anchor:multiplier` or `linear:alpha`.
    #[arg(long)]
    pub game: Option<String>,
    #[arg(long)]
    pub prior: Option<String>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct WelfareArgs {
    /// `coordination:γ`, `competition[:λ]`, `stability[:m]`, `innovation`
    /// or `sophistication:c`.
    #[arg(long)]
    pub objective: Option<String>,
    #[arg(long)]
    pub game: Option<String>,
    #[arg(long)]
    pub prior: Option<String>,
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub p_min: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct OtdArgs {
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    #[arg(long)]
    pub fd_step: Option<f64>,
    #[arg(long)]
    pub p_init: Option<f64>,
    #[arg(long)]
    pub k_max: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct CheckArgs {
    /// Extra prior added to the built-in grid.
    #[arg(long)]
    pub prior: Option<String>,
    #[arg(long)]
    pub k_max: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    /// Run with built-in defaults; incompatible with `--config`.
    #[arg(long, conflicts_with = "config")]
    pub defaults: bool,
    /// Population size.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub tau: Option<f64>,
    /// Monte Carlo runs (clarity) or replications (infoshock).
    #[arg(long)]
    pub runs: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub command: Option<String>,
    #[serde(default)]
    pub params: Option<Value>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct BeliefParams {
    pub prior: String,
    pub k_max: usize,
    pub level: usize,
    pub p: f64,
}

impl Default for BeliefParams {
    fn default() -> Self {
        Self {
            prior: "poisson:1.5".into(),
            k_max: DEFAULT_K_MAX,
            level: 1,
            p: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ActionsParams {
    pub game: String,
    pub prior: String,
    pub k_max: usize,
    pub p: f64,
}

impl Default for ActionsParams {
    fn default() -> Self {
        Self {
            game: "beauty:50:0.6667".into(),
            prior: "poisson:1.5".into(),
            k_max: DEFAULT_K_MAX,
            p: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WelfareParams {
    pub objective: String,
    pub game: String,
    pub prior: String,
    pub k_max: usize,
    pub p_min: f64,
    pub points: usize,
}

impl Default for WelfareParams {
    fn default() -> Self {
        Self {
            objective: "coordination:0.6667".into(),
            game: "beauty:50:0.6667".into(),
            prior: "poisson:1.5".into(),
            k_max: DEFAULT_K_MAX,
            p_min: DEFAULT_P_MIN,
            points: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OtdParams {
    pub tau: f64,
    pub gamma: f64,
    pub epsilon: f64,
    pub max_iter: usize,
    pub learning_rate: f64,
    pub fd_step: f64,
    pub p_init: f64,
    pub k_max: usize,
}

impl Default for OtdParams {
    fn default() -> Self {
        let d = OtdConfig::default();
        Self {
            tau: 1.5,
            gamma: 2.0 / 3.0,
            epsilon: d.epsilon,
            max_iter: d.max_iter,
            learning_rate: d.learning_rate,
            fd_step: d.fd_step,
            p_init: d.p_init,
            k_max: d.k_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CheckParams {
    pub prior: Option<String>,
    pub k_max: usize,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self {
            prior: None,
            k_max: DEFAULT_K_MAX,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Validation(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Validation(_) => EXIT_VALIDATION,
            Failure::Runtime(_) => EXIT_RUNTIME,
        }
    }

    fn payload(&self) -> Value {
        let (kind, message) = match self {
            Failure::Validation(m) => ("validation", m),
            Failure::Runtime(m) => ("runtime", m),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Precondition(_) => Failure::Validation(e.to_string()),
            Error::InsufficientNeighborhood { .. } | Error::Io(_) | Error::Json(_) | Error::Csv(_) => {
                Failure::Runtime(e.to_string())
            }
        }
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Validation(msg.into())
}

fn num(s: &str, what: &str) -> Result<f64, Failure> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| invalid(format!("cannot parse {what} from '{s}'")))
}

pub fn parse_prior(spec: &str, k_max: usize) -> crate::error::Result<TruePrior> {
    parse_prior_inner(spec, k_max).map_err(|f| match f {
        Failure::Validation(m) | Failure::Runtime(m) => Error::Domain(m),
    })
}

fn parse_prior_inner(spec: &str, k_max: usize) -> Result<TruePrior, Failure> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| invalid(format!("prior '{spec}' lacks a parameter")))?;
    Ok(match kind {
        "poisson" => TruePrior::poisson(num(rest, "Poisson rate")?, k_max)?,
        "geometric" => TruePrior::geometric(num(rest, "geometric ratio")?, k_max)?,
        "custom" => {
            let w = rest
                .split(',')
                .map(|s| num(s, "custom weight"))
                .collect::<Result<Vec<_>, _>>()?;
            TruePrior::custom(&w)?
        }
        other => return Err(invalid(format!("unknown prior family '{other}'"))),
    })
}

pub fn parse_game(spec: &str) -> crate::error::Result<GameRule> {
    parse_game_inner(spec).map_err(|f| match f {
        Failure::Validation(m) | Failure::Runtime(m) => Error::Domain(m),
    })
}

fn parse_game_inner(spec: &str) -> Result<GameRule, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    Ok(match parts.as_slice() {
        ["beauty"] => GameRule::default(),
        ["beauty", a, m] => GameRule::beauty_contest(num(a, "anchor")?, num(m, "multiplier")?)?,
        ["linear", a] => GameRule::linear_complements(num(a, "slope")?)?,
        _ => return Err(invalid(format!("unrecognized game '{spec}'"))),
    })
}

pub fn parse_objective(spec: &str) -> crate::error::Result<WelfareObjective> {
    parse_objective_inner(spec).map_err(|f| match f {
        Failure::Validation(m) | Failure::Runtime(m) => Error::Domain(m),
    })
}

fn parse_objective_inner(spec: &str) -> Result<WelfareObjective, Failure> {
    let parts: Vec<&str> = spec.split(':').collect();
    let obj = match parts.as_slice() {
        ["coordination", g] => WelfareObjective::QuadraticCoordination {
            gamma: num(g, "coordination weight")?,
        },
        ["competition"] => WelfareObjective::competition(),
        ["competition", l] => WelfareObjective::Competition {
            lambda: num(l, "dispersion penalty")?,
        },
        ["stability"] => WelfareObjective::stability(),
        ["stability", m] => WelfareObjective::Stability {
            m: num(m, "stability multiplier")?,
        },
        ["innovation"] => WelfareObjective::Innovation(InnovationParams::default()),
        ["sophistication", c] => WelfareObjective::MeanSophisticationMinusOpacityCost {
            c: num(c, "opacity cost")?,
        },
        _ => return Err(invalid(format!("unrecognized objective '{spec}'"))),
    };
    obj.validate()?;
    Ok(obj)
}

/// Config-file params, then flag overrides.
fn layered<T: DeserializeOwned + Default>(params: Option<&Value>) -> Result<T, Failure> {
    match params {
        None => Ok(T::default()),
        Some(v) => serde_json::from_value(v.clone()).map_err(|e| invalid(format!("invalid params: {e}"))),
    }
}

fn set<T>(slot: &mut T, flag: Option<T>) {
    if let Some(v) = flag {
        *slot = v;
    }
}

struct Context<'a> {
    seed: u64,
    output_dir: Option<PathBuf>,
    params: Option<&'a Value>,
}

struct Outcome {
    stdout: String,
    manifest: Manifest,
    tables: Vec<(&'static str, Table)>,
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, Failure> {
    serde_json::to_value(v).map_err(|e| Failure::Runtime(e.to_string()))
}

fn csv(t: &Table) -> Result<String, Failure> {
    Ok(t.to_csv_string()?)
}

fn dispatch(cmd: &Command, ctx: &Context) -> Result<Outcome, Failure> {
    let name = cmd.name();
    match cmd {
        Command::Belief(a) => {
            let mut cfg: BeliefParams = layered(ctx.params)?;
            set(&mut cfg.prior, a.prior.clone());
            set(&mut cfg.k_max, a.k_max);
            set(&mut cfg.level, a.level);
            set(&mut cfg.p, a.p);
            let prior = parse_prior_inner(&cfg.prior, cfg.k_max)?;
            let b = belief(&prior, cfg.level, cfg.p)?;
            let derived = to_value(&b)?;
            Ok(Outcome {
                stdout: serde_json::to_string_pretty(&b).map_err(Error::from)? + "\n",
                manifest: Manifest::new(name, ctx.seed, to_value(&cfg)?, derived),
                tables: vec![("", b.table())],
            })
        }
        Command::Actions(a) => {
            let mut cfg: ActionsParams = layered(ctx.params)?;
            set(&mut cfg.game, a.game.clone());
            set(&mut cfg.prior, a.prior.clone());
            set(&mut cfg.k_max, a.k_max);
            set(&mut cfg.p, a.p);
            let prior = parse_prior_inner(&cfg.prior, cfg.k_max)?;
            let rule = parse_game_inner(&cfg.game)?;
            let profile = action_profile(&prior, rule, cfg.p)?;
            let table = profile.table();
            Ok(Outcome {
                stdout: csv(&table)?,
                manifest: Manifest::new(name, ctx.seed, to_value(&cfg)?, json!({ "rule": rule })),
                tables: vec![("", table)],
            })
        }
        Command::Welfare(a) => {
            let mut cfg: WelfareParams = layered(ctx.params)?;
            set(&mut cfg.objective, a.objective.clone());
            set(&mut cfg.game, a.game.clone());
            set(&mut cfg.prior, a.prior.clone());
            set(&mut cfg.k_max, a.k_max);
            set(&mut cfg.p_min, a.p_min);
            set(&mut cfg.points, a.points);
            if !(cfg.p_min > 0.0 && cfg.p_min < 1.0) || cfg.points < 2 {
                return Err(invalid("welfare grid needs 0 < p_min < 1 and at least 2 points"));
            }
            let prior = parse_prior_inner(&cfg.prior, cfg.k_max)?;
            let rule = parse_game_inner(&cfg.game)?;
            let obj = parse_objective_inner(&cfg.objective)?;
            let curve = welfare_curve(&prior, rule, &obj, &p_grid(cfg.p_min, cfg.points))?;
            let table = curve.table();
            let derived = json!({
                "objective": obj,
                "argmax_p": curve.argmax_p,
                "max_value": curve.max_value(),
                "normalization": curve.normalization,
            });
            Ok(Outcome {
                stdout: csv(&table)?,
                manifest: Manifest::new(name, ctx.seed, to_value(&cfg)?, derived),
                tables: vec![("", table)],
            })
        }
        Command::Otd(a) => {
            let mut cfg: OtdParams = layered(ctx.params)?;
            set(&mut cfg.tau, a.tau);
            set(&mut cfg.gamma, a.gamma);
            set(&mut cfg.epsilon, a.epsilon);
            set(&mut cfg.max_iter, a.max_iter);
            set(&mut cfg.learning_rate, a.learning_rate);
            set(&mut cfg.fd_step, a.fd_step);
            set(&mut cfg.p_init, a.p_init);
            set(&mut cfg.k_max, a.k_max);
            let optimizer = OtdConfig {
                epsilon: cfg.epsilon,
                max_iter: cfg.max_iter,
                learning_rate: cfg.learning_rate,
                fd_step: cfg.fd_step,
                p_init: cfg.p_init,
                k_max: cfg.k_max,
            };
            let result = otd_optimize(cfg.tau, cfg.gamma, &optimizer)?;
            let summary = json!({
                "p_star": result.p_star,
                "welfare": result.welfare,
                "iterations": result.iterations,
                "converged": result.converged,
            });
            Ok(Outcome {
                stdout: serde_json::to_string_pretty(&summary).map_err(Error::from)? + "\n",
                manifest: Manifest::new(name, ctx.seed, to_value(&cfg)?, to_value(&result)?),
                tables: vec![("", result.table())],
            })
        }
        Command::Check(a) => {
            let mut cfg: CheckParams = layered(ctx.params)?;
            if a.prior.is_some() {
                cfg.prior = a.prior.clone();
            }
            set(&mut cfg.k_max, a.k_max);
            let mut suite = SuiteConfig::default();
            if let Some(spec) = &cfg.prior {
                suite.priors.push(parse_prior_inner(spec, cfg.k_max)?);
            }
            let rows = run_suite(&suite)?;
            let mut table = Table::new(&["row", "cases", "failures"]);
            for (i, r) in rows.iter().enumerate() {
                table.push(vec![i as f64, r.cases as f64, r.failures as f64]);
            }
            let all = rows.iter().all(|r| r.passed());
            let derived = json!({ "all_passed": all, "rows": rows });
            let mut stdout = render_table(&rows);
            stdout.push_str(if all { "ALL PASS\n" } else { "FAILURES PRESENT\n" });
            Ok(Outcome {
                stdout,
                manifest: Manifest::new(name, ctx.seed, to_value(&cfg)?, derived),
                tables: vec![("", table)],
            })
        }
        Command::Topology(a) => {
            let mut cfg: TopologyConfig = experiment_params(a, ctx)?;
            set(&mut cfg.n, a.n);
            set(&mut cfg.tau, a.tau);
            cfg.seed = ctx.seed;
            let report = topology_mapping_experiment(&cfg)?;
            let table = report.table();
            Ok(Outcome {
                stdout: csv(&table)?,
                manifest: Manifest::new(name, ctx.seed, to_value(&cfg)?, json!({ "rows": report.rows })),
                tables: vec![("", table), ("edges", report.edge_table())],
            })
        }
        Command::Identify(a) => {
            let mut cfg: IdentifyConfig = experiment_params(a, ctx)?;
            set(&mut cfg.n, a.n);
            cfg.seed = ctx.seed;
            let report = identifiability_experiment(&cfg)?;
            let table = report.table();
            Ok(Outcome {
                stdout: csv(&table)?,
                manifest: Manifest::new(
                    name,
                    ctx.seed,
                    to_value(&cfg)?,
                    json!({ "summaries": report.summaries }),
                ),
                tables: vec![("", table), ("surface", report.surface_table())],
            })
        }
        Command::Infoshock(a) => {
            let mut cfg: InfoShockConfig = experiment_params(a, ctx)?;
            set(&mut cfg.n, a.n);
            set(&mut cfg.tau, a.tau);
            set(&mut cfg.replications, a.runs);
            cfg.seed = ctx.seed;
            let report = info_shock_experiment(&cfg)?;
            let table = report.table();
            Ok(Outcome {
                stdout: csv(&table)?,
                manifest: Manifest::new(
                    name,
                    ctx.seed,
                    to_value(&cfg)?,
                    json!({ "estimates": report.estimates }),
                ),
                tables: vec![("", table)],
            })
        }
        Command::Clarity(a) => {
            let mut cfg: ClarityConfig = experiment_params(a, ctx)?;
            set(&mut cfg.n, a.n);
            set(&mut cfg.tau, a.tau);
            set(&mut cfg.mc_runs, a.runs);
            cfg.seed = ctx.seed;
            let curve = cost_of_clarity_experiment(&cfg)?;
            let table = curve.table();
            let derived = json!({
                "gini_first": curve.gini.first(),
                "gini_last": curve.gini.last(),
                "gini_slope": curve.gini_slope(),
            });
            Ok(Outcome {
                stdout: csv(&table)?,
                manifest: Manifest::new(name, ctx.seed, to_value(&cfg)?, derived),
                tables: vec![("", table)],
            })
        }
    }
}

fn experiment_params<T: DeserializeOwned + Default>(a: &ExperimentArgs, ctx: &Context) -> Result<T, Failure> {
    if a.defaults {
        Ok(T::default())
    } else {
        layered(ctx.params)
    }
}

fn load_config(path: &Path) -> Result<RunConfig, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read config {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("invalid config {}: {e}", path.display())))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), Failure> {
    let file = match &cli.common.config {
        Some(path) => Some(load_config(path)?),
        None => None,
    };
    let name = cli.command.name();
    if let Some(cmd) = file.as_ref().and_then(|f| f.command.as_deref()) {
        if cmd != name {
            return Err(invalid(format!("config is for '{cmd}' but '{name}' was invoked")));
        }
    }
    let ctx = Context {
        seed: cli.common.seed.or(file.as_ref().and_then(|f| f.seed)).unwrap_or(0),
        output_dir: cli
            .common
            .output_dir
            .clone()
            .or_else(|| file.as_ref().and_then(|f| f.output_dir.clone())),
        params: file.as_ref().and_then(|f| f.params.as_ref()),
    };

    let run = || dispatch(&cli.command, &ctx);
    let outcome = match cli.common.threads {
        Some(0) => return Err(invalid("--threads must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Failure::Runtime(e.to_string()))?
            .install(run)?,
        None => run()?,
    };

    out.write_all(outcome.stdout.as_bytes()).map_err(Error::from)?;
    if let Some(dir) = &ctx.output_dir {
        let tables: Vec<(&str, &Table)> = outcome.tables.iter().map(|(s, t)| (*s, t)).collect();
        write_artifacts(dir, &outcome.manifest, &tables)?;
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run_with<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let f = Failure::Validation(e.to_string().trim_end().to_string());
            let _ = writeln!(err, "{}", f.payload());
            return f.code();
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "{}", f.payload());
            f.code()
        }
    }
}

pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
