//! `lad`: optimize, evaluate and benchmark learning-augmented online algorithms.

mod flags;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lad_core::contract::{self, Schedule};
use lad_core::experiment::{
    emit_curves, emit_report, format_sig, run_experiment, BpRule, CurveProblem, DistributionKind, ExperimentConfig,
    InnerSampling, Problem, ReportFormat, WeightKind,
};
use lad_core::numerics::{DistributionalPrediction, PredictionRange, WeightFunction};
use lad_core::one_max::{self, OneMaxInstance, OneMaxPolicy, WorstCaseModel};
use lad_core::ski_rental::{self, SkiInstance, SkiPolicy};
use lad_core::{Error, Result};

const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "lad", version, about = "Distance- and risk-based learning-augmented online algorithms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the optimal policy for a metric and its objective value.
    Optimize(OptimizeArgs),
    /// Evaluate a given policy under every applicable metric.
    Evaluate(EvaluateArgs),
    /// Run a repeated experiment and write a report.
    Experiment(ExperimentArgs),
    /// Write performance-ratio curves of policies and the ideal as CSV.
    Curves(CurvesArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProblemArg {
    Ski,
    Onemax,
    Contract,
}

impl From<ProblemArg> for Problem {
    fn from(p: ProblemArg) -> Self {
        match p {
            ProblemArg::Ski => Problem::Ski,
            ProblemArg::Onemax => Problem::OneMax,
            ProblemArg::Contract => Problem::Contract,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Metric {
    Max,
    Avg,
    Cvar,
}

#[derive(Args)]
struct InstanceArgs {
    /// Ski buying cost.
    #[arg(long, default_value_t = 10.0)]
    b: f64,
    /// Robustness (default 5 for ski, M^(2/3) for one-max).
    #[arg(long)]
    r: Option<f64>,
    /// One-max price bound.
    #[arg(long = "M", default_value_t = 1000.0)]
    m: f64,
}

impl InstanceArgs {
    fn ski(&self) -> Result<SkiInstance> {
        SkiInstance::new(self.b, self.r.unwrap_or(5.0))
    }

    fn one_max(&self) -> Result<OneMaxInstance> {
        OneMaxInstance::new(self.m, self.r.unwrap_or_else(|| self.m.powf(2.0 / 3.0)))
    }
}

#[derive(Args)]
struct PredictionArgs {
    /// Point prediction; with --delta defines the range [(1-delta)y, (1+delta)y].
    #[arg(long)]
    y: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Explicit prediction range LO:HI (HI may be `inf`).
    #[arg(long, value_name = "LO:HI", conflicts_with_all = ["y", "delta"])]
    range: Option<String>,
    /// Weight function: uniform, linear[:peak] or gaussian[:peak[:sigma]].
    #[arg(long = "w", value_name = "FAMILY[:PARAMS]", default_value = "uniform")]
    weight: String,
    /// Distributional prediction, e.g. uniform:25:75 or gaussian.
    #[arg(long, value_name = "FAMILY:PARAMS")]
    mu: Option<String>,
    /// CVaR level in [0, 1).
    #[arg(long)]
    alpha: Option<f64>,
}

impl PredictionArgs {
    fn range(&self) -> Result<Option<PredictionRange>> {
        match (&self.range, self.y, self.delta) {
            (Some(text), _, _) => flags::parse_range(text).map(Some),
            (None, Some(y), Some(delta)) => PredictionRange::around(y, delta).map(Some),
            (None, Some(y), None) => PredictionRange::around(y, 0.0).map(Some),
            (None, None, Some(_)) => Err(Error::InvalidParameter("--delta needs --y".into())),
            (None, None, None) => Ok(None),
        }
    }

    fn require_range(&self) -> Result<PredictionRange> {
        self.range()?.ok_or_else(|| {
            Error::InvalidParameter("a prediction range is required: give --y/--delta or --range".into())
        })
    }

    fn weight(&self) -> Result<(WeightFunction, PredictionRange)> {
        let range = self.require_range()?;
        Ok((flags::parse_weight(&self.weight, range)?, range))
    }

    fn mu(&self) -> Result<DistributionalPrediction> {
        let text = self.mu.as_deref().ok_or_else(|| Error::InvalidParameter("--mu is required for CVaR".into()))?;
        flags::parse_distribution(text, self.range()?)
    }

    fn alpha(&self) -> Result<f64> {
        self.alpha.ok_or_else(|| Error::InvalidParameter("--alpha is required for CVaR".into()))
    }
}

#[derive(Args)]
struct OptimizeArgs {
    #[arg(value_enum)]
    problem: ProblemArg,
    #[arg(long, value_enum)]
    metric: Metric,
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    prediction: PredictionArgs,
    /// Use coarser numeric settings.
    #[arg(long)]
    fast: bool,
}

#[derive(Args)]
struct EvaluateArgs {
    #[arg(value_enum)]
    problem: ProblemArg,
    /// Threshold T (ski, one-max) or schedule parameter lambda (contract).
    #[arg(long)]
    policy: f64,
    #[command(flatten)]
    instance: InstanceArgs,
    #[command(flatten)]
    prediction: PredictionArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(value_enum)]
    problem: ProblemArg,
    /// JSON config; flags given here override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Ski rental table protocol (the ski default).
    #[arg(long, conflicts_with_all = ["table2", "config"])]
    table1: bool,
    /// One-max table protocol (the one-max default).
    #[arg(long, conflicts_with = "config")]
    table2: bool,
    /// Seed; falls back to the LAD_SEED environment variable, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    reps: Option<usize>,
    /// Evaluation points per repetition.
    #[arg(long)]
    inner: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    r: Option<f64>,
    #[arg(long = "M")]
    m: Option<f64>,
    #[arg(long)]
    z: Option<f64>,
    /// Comma-separated CVaR levels.
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    weight: Option<WeightArg>,
    /// Family of the distributional prediction.
    #[arg(long, value_enum)]
    distribution: Option<DistributionArg>,
    /// Price CSV for the one-max real-data protocol (10000 runs unless --reps).
    #[arg(long, value_name = "PATH")]
    real: Option<PathBuf>,
    #[arg(long, value_enum)]
    bp_rule: Option<BpRuleArg>,
    #[arg(long, value_enum)]
    inner_sampling: Option<SamplingArg>,
    /// Clamp the one-max delta-tolerant threshold into the robust interval.
    #[arg(long)]
    clamp_delta_tol: bool,
    /// Use the full-precision numeric settings inside the loop.
    #[arg(long)]
    exact: bool,
    #[arg(long, value_enum, default_value = "markdown")]
    format: FormatArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum WeightArg {
    Uniform,
    Linear,
    Gaussian,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistributionArg {
    Uniform,
    Triangular,
    Gaussian,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BpRuleArg {
    FixedRho,
    PredictionSwitch,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SamplingArg {
    Uniform,
    Prediction,
}

#[derive(Args)]
struct CurvesArgs {
    #[arg(value_enum)]
    problem: ProblemArg,
    /// Comma-separated thresholds (ski, one-max) or schedule parameters (contract).
    #[arg(long, value_delimiter = ',')]
    policies: Vec<f64>,
    #[arg(long, value_name = "LO:HI")]
    range: String,
    /// Number of grid intervals.
    #[arg(long, default_value_t = 500)]
    resolution: usize,
    #[command(flatten)]
    instance: InstanceArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Optimize(args) => optimize(&args),
        Command::Evaluate(args) => evaluate(&args),
        Command::Experiment(args) => experiment(&args),
        Command::Curves(args) => curves(&args),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Io(_) | Error::Data(_) => EXIT_IO,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn optimize(args: &OptimizeArgs) -> Result<String> {
    let p = &args.prediction;
    let solver = if args.fast { lad_core::SolverConfig::fast() } else { lad_core::SolverConfig::default() };
    let (label, param, metric, value) = match (args.problem, args.metric) {
        (ProblemArg::Ski, Metric::Max) => {
            let (inst, (w, range)) = (args.instance.ski()?, p.weight()?);
            let pol = ski_rental::optimize_t_max_with(&inst, &w, &range, &solver)?;
            ("T", pol.threshold, "d_max", ski_rental::d_max_with(&pol, &inst, &w, &range, &solver)?)
        }
        (ProblemArg::Ski, Metric::Avg) => {
            let (inst, (w, range)) = (args.instance.ski()?, p.weight()?);
            let pol = ski_rental::optimize_t_avg_with(&inst, &w, &range, &solver)?;
            ("T", pol.threshold, "d_avg", ski_rental::d_avg_with(&pol, &inst, &w, &range, &solver)?)
        }
        (ProblemArg::Ski, Metric::Cvar) => {
            let (inst, mu, alpha) = (args.instance.ski()?, p.mu()?, p.alpha()?);
            let pol = ski_rental::optimize_t_cvar_with(&inst, &mu, alpha, &solver)?;
            ("T", pol.threshold, "cvar", ski_rental::cvar_cost(&pol, &mu, alpha, inst.buy_cost)?)
        }
        (ProblemArg::Onemax, Metric::Max) => {
            let (inst, (w, range)) = (args.instance.one_max()?, p.weight()?);
            let pol = match (p.weight.as_str(), range.prediction()) {
                ("uniform", Some((y, delta))) => one_max::optimize_t_max_unweighted(&inst, y, delta)?,
                _ => one_max::optimize_t_max_weighted_with(&inst, &w, &range, &solver)?,
            };
            ("T", pol.threshold, "d_max", one_max::d_max_with(&pol, &inst, &w, &range, &solver)?)
        }
        (ProblemArg::Onemax, Metric::Avg) => {
            let (inst, (w, range)) = (args.instance.one_max()?, p.weight()?);
            let pol = one_max::optimize_t_avg_with(&inst, &w, &range, &solver)?;
            ("T", pol.threshold, "d_avg", one_max::d_avg_with(&pol, &inst, &w, &range, &solver)?)
        }
        (ProblemArg::Onemax, Metric::Cvar) => {
            let (inst, model, alpha) = (args.instance.one_max()?, WorstCaseModel::new(p.mu()?), p.alpha()?);
            let pol = one_max::optimize_t_cvar_with(&inst, &model, alpha, &solver)?;
            ("T", pol.threshold, "cvar", one_max::cvar_profit(&pol, &model, alpha)?)
        }
        (ProblemArg::Contract, Metric::Max) => {
            let (w, range) = p.weight()?;
            let s = contract::optimize_lambda_max_with(&w, &range, &solver)?;
            ("lambda", s.lambda, "d_max", contract::d_max_with(&s, &w, &range, &solver)?)
        }
        (ProblemArg::Contract, Metric::Avg) => {
            let (w, range) = p.weight()?;
            let s = contract::optimize_lambda_avg_with(&w, &range, &solver)?;
            ("lambda", s.lambda, "d_avg", contract::d_avg_with(&s, &w, &range, &solver)?)
        }
        (ProblemArg::Contract, Metric::Cvar) => {
            let (mu, alpha) = (p.mu()?, p.alpha()?);
            let s = contract::optimize_lambda_cvar_with(&mu, alpha, &solver)?;
            ("lambda", s.lambda, "cvar", contract::cvar_length(&s, &mu, alpha)?)
        }
    };
    Ok(format!("{label}={} {metric}={}\n", format_sig(param), format_sig(value)))
}

fn evaluate(args: &EvaluateArgs) -> Result<String> {
    let p = &args.prediction;
    let t = args.policy;
    let mut lines = Vec::new();
    let weighted = p.range()?.is_some();
    let cvar = p.mu.is_some() && p.alpha.is_some();
    match args.problem {
        ProblemArg::Ski => {
            let inst = args.instance.ski()?;
            let pol = SkiPolicy { threshold: t };
            if weighted {
                let (w, range) = p.weight()?;
                lines.push(("d_max", ski_rental::d_max(&pol, &inst, &w, &range)?));
                if range.is_bounded() {
                    lines.push(("d_avg", ski_rental::d_avg(&pol, &inst, &w, &range)?));
                }
            }
            if cvar {
                lines.push(("cvar", ski_rental::cvar_cost(&pol, &p.mu()?, p.alpha()?, inst.buy_cost)?));
            }
        }
        ProblemArg::Onemax => {
            let inst = args.instance.one_max()?;
            let pol = OneMaxPolicy { threshold: t };
            if weighted {
                let (w, range) = p.weight()?;
                lines.push(("d_max", one_max::d_max(&pol, &inst, &w, &range)?));
                lines.push(("d_avg", one_max::d_avg(&pol, &inst, &w, &range)?));
            }
            if cvar {
                let (model, alpha) = (WorstCaseModel::new(p.mu()?), p.alpha()?);
                lines.push(("cvar", one_max::cvar_profit(&pol, &model, alpha)?));
                lines.push(("consistency", one_max::alpha_consistency(&pol, &model, alpha)?));
            }
        }
        ProblemArg::Contract => {
            let s = Schedule::new(t)?;
            if weighted {
                let (w, range) = p.weight()?;
                lines.push(("d_max", contract::d_max(&s, &w, &range)?));
                lines.push(("d_avg", contract::d_avg(&s, &w, &range)?));
            }
            if cvar {
                lines.push(("cvar", contract::cvar_length(&s, &p.mu()?, p.alpha()?)?));
            }
        }
    }
    if lines.is_empty() {
        return Err(Error::InvalidParameter(
            "nothing to evaluate: give a prediction range, or --mu with --alpha".into(),
        ));
    }
    Ok(lines.iter().map(|(k, v)| format!("{k}={}\n", format_sig(*v))).collect())
}

fn seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("LAD_SEED") {
        Ok(v) => {
            v.trim().parse().map_err(|_| Error::InvalidParameter(format!("LAD_SEED=`{v}` is not an unsigned integer")))
        }
        Err(_) => Ok(0),
    }
}

fn experiment_config(args: &ExperimentArgs) -> Result<ExperimentConfig> {
    let problem: Problem = args.problem.into();
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let cfg = ExperimentConfig::from_json(&text)?;
            if cfg.problem != problem {
                return Err(Error::InvalidParameter(format!(
                    "config is for {}, command line asks for {}",
                    cfg.problem.name(),
                    problem.name()
                )));
            }
            cfg
        }
        None => ExperimentConfig::preset(problem),
    };
    if args.table1 && problem != Problem::Ski {
        return Err(Error::InvalidParameter("--table1 is the ski rental protocol".into()));
    }
    if args.table2 && problem != Problem::OneMax {
        return Err(Error::InvalidParameter("--table2 is the one-max protocol".into()));
    }
    if let Some(path) = &args.real {
        cfg.real_data = Some(path.clone());
        if args.reps.is_none() && args.config.is_none() {
            cfg.repetitions = 10_000;
        }
    }
    if args.seed.is_some() || args.config.is_none() || std::env::var_os("LAD_SEED").is_some() {
        cfg.seed = seed(args.seed)?;
    }
    macro_rules! set {
        ($field:ident, $value:expr) => {
            if let Some(v) = $value {
                cfg.$field = v;
            }
        };
    }
    set!(repetitions, args.reps);
    set!(inner_samples, args.inner);
    set!(delta, args.delta);
    set!(buy_cost, args.b);
    set!(price_bound, args.m);
    set!(z, args.z);
    set!(alphas, args.alphas.clone());
    if args.r.is_some() {
        cfg.robustness = args.r;
    }
    set!(
        weight,
        args.weight.map(|w| match w {
            WeightArg::Uniform => WeightKind::Uniform,
            WeightArg::Linear => WeightKind::Linear,
            WeightArg::Gaussian => WeightKind::Gaussian,
        })
    );
    set!(
        distribution,
        args.distribution.map(|d| match d {
            DistributionArg::Uniform => DistributionKind::Uniform,
            DistributionArg::Triangular => DistributionKind::Triangular,
            DistributionArg::Gaussian => DistributionKind::Gaussian,
        })
    );
    set!(
        bp_rule,
        args.bp_rule.map(|b| match b {
            BpRuleArg::FixedRho => BpRule::FixedRho,
            BpRuleArg::PredictionSwitch => BpRule::PredictionSwitch,
        })
    );
    set!(
        inner_sampling,
        args.inner_sampling.map(|s| match s {
            SamplingArg::Uniform => InnerSampling::Uniform,
            SamplingArg::Prediction => InnerSampling::Prediction,
        })
    );
    if args.clamp_delta_tol {
        cfg.clamp_delta_tol = true;
    }
    if args.exact {
        cfg.fast_solver = false;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn experiment(args: &ExperimentArgs) -> Result<String> {
    let cfg = experiment_config(args)?;
    let report = run_experiment(&cfg)?;
    let format = match args.format {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Markdown => ReportFormat::Markdown,
    };
    let text = emit_report(&report, format);
    match &args.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let mut summary = format!(
                "{} experiment, {} repetitions, seed {} -> {}\n",
                cfg.problem.name(),
                cfg.repetitions,
                cfg.seed,
                path.display()
            );
            for row in &report.rows {
                summary.push_str(&format!(
                    "{}: ratio={} value={}\n",
                    row.name,
                    format_sig(row.avg_perf_ratio),
                    format_sig(row.expected_value)
                ));
            }
            Ok(summary)
        }
        None => Ok(text),
    }
}

fn curves(args: &CurvesArgs) -> Result<String> {
    let range = flags::parse_range(&args.range)?;
    if !range.is_bounded() {
        return Err(Error::InvalidParameter("curve range must be bounded".into()));
    }
    let problem = match args.problem {
        ProblemArg::Ski => CurveProblem::Ski(args.instance.ski()?),
        ProblemArg::Onemax => CurveProblem::OneMax(args.instance.one_max()?),
        ProblemArg::Contract => CurveProblem::Contract,
    };
    let text = emit_curves(&problem, &args.policies, range.lower(), range.upper(), args.resolution)?;
    match &args.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
