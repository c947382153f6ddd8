use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{BpRule, DistributionKind, ExperimentConfig, InnerSampling, Problem, WeightKind};
use super::data::{gen_real_prediction, load_price_series, PriceDataset};
use super::report::{ExperimentReport, ReportRow};
use super::stats::{confidence_interval, mean};
use crate::contract::{self, BaselineKind, Schedule};
use crate::error::{Error, Result};
use crate::numerics::{DistributionalPrediction, PredictionRange, Side, SolverConfig, WeightFunction};
use crate::one_max::{self, Fallback, OneMaxInstance, OneMaxPolicy, WorstCaseModel};
use crate::ski_rental::{self, SkiInstance, SkiPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    /// Minimizes the weighted maximum distance.
    Max,
    /// Minimizes the weighted average distance.
    Avg,
    /// Optimizes CVaR at the given level.
    Cvar(f64),
    /// Ski rental `BP_rho`.
    Bp(f64),
    DeltaTol,
    Po1,
    Po2,
    /// Contract schedule completing at the prediction.
    Po,
}

impl Algorithm {
    pub fn label(&self, cfg: &ExperimentConfig) -> String {
        match *self {
            Algorithm::Max => "Max".into(),
            Algorithm::Avg => "Avg".into(),
            Algorithm::Cvar(a) => format!("CVaR{a}"),
            Algorithm::Bp(rho) => {
                let (b, r) = (cfg.buy_cost, cfg.ski_robustness());
                if rho == b {
                    "BP_b".into()
                } else if rho == b + b * r / 2.0 {
                    "BP_b+br/2".into()
                } else if rho == b * (r - 1.0) {
                    "BP_b(r-1)".into()
                } else {
                    format!("BP_{rho}")
                }
            }
            Algorithm::DeltaTol => "dTol".into(),
            Algorithm::Po1 => "PO1".into(),
            Algorithm::Po2 => "PO2".into(),
            Algorithm::Po => "PO".into(),
        }
    }
}

/// The table columns for the configured problem.
pub fn algorithms(cfg: &ExperimentConfig) -> Vec<Algorithm> {
    let mut algs = vec![Algorithm::Max, Algorithm::Avg];
    algs.extend(cfg.alphas.iter().map(|&a| Algorithm::Cvar(a)));
    match cfg.problem {
        Problem::Ski => {
            let (b, r) = (cfg.buy_cost, cfg.ski_robustness());
            algs.extend([Algorithm::Bp(b), Algorithm::Bp(b + b * r / 2.0), Algorithm::Bp(b * (r - 1.0))]);
        }
        Problem::OneMax => algs.extend([Algorithm::DeltaTol, Algorithm::Po1, Algorithm::Po2]),
        Problem::Contract => algs.extend([Algorithm::Po, Algorithm::DeltaTol]),
    }
    algs
}

/// Synthetic prediction draw for the configured problem.
pub fn sample_prediction<R: Rng + ?Sized>(cfg: &ExperimentConfig, rng: &mut R) -> Result<f64> {
    let (lo, hi) = match cfg.problem {
        Problem::Ski => (cfg.buy_cost / cfg.z, cfg.buy_cost * cfg.z),
        Problem::OneMax => (cfg.z, cfg.price_bound / cfg.z),
        Problem::Contract => (cfg.contract_y_range[0], cfg.contract_y_range[1]),
    };
    if !(lo > 0.0 && lo <= hi && hi.is_finite()) {
        return Err(Error::param(format!("invalid prediction interval [{lo}, {hi}]")));
    }
    Ok(if lo == hi { lo } else { rng.random_range(lo..=hi) })
}

enum Setup {
    Ski(SkiInstance),
    OneMax(OneMaxInstance),
    RealData { inst: OneMaxInstance, data: PriceDataset },
    Contract,
}

impl Setup {
    fn new(cfg: &ExperimentConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(match (cfg.problem, &cfg.real_data) {
            (Problem::Ski, _) => Setup::Ski(SkiInstance::new(cfg.buy_cost, cfg.ski_robustness())?),
            (Problem::OneMax, None) => {
                let m = cfg.price_bound;
                Setup::OneMax(OneMaxInstance::new(m, cfg.one_max_robustness(m))?)
            }
            (Problem::OneMax, Some(path)) => {
                let data = load_price_series(path)?.normalized()?;
                let m = data.max;
                if m <= 1.0 {
                    return Err(Error::Data("price series is constant".into()));
                }
                Setup::RealData { inst: OneMaxInstance::new(m, cfg.one_max_robustness(m))?, data }
            }
            (Problem::Contract, _) => Setup::Contract,
        })
    }
}

fn weight(kind: WeightKind, y: f64, range: PredictionRange) -> Result<WeightFunction> {
    match kind {
        WeightKind::Uniform => Ok(WeightFunction::uniform(range)),
        WeightKind::Linear => WeightFunction::linear(y, range),
        WeightKind::Gaussian if range.is_degenerate() => Ok(WeightFunction::uniform(range)),
        WeightKind::Gaussian => WeightFunction::gaussian_default(y, range),
    }
}

fn distribution(kind: DistributionKind, y: f64, range: PredictionRange) -> Result<DistributionalPrediction> {
    match kind {
        DistributionKind::Uniform => DistributionalPrediction::uniform(range),
        DistributionKind::Triangular => DistributionalPrediction::triangular(y, range),
        DistributionKind::Gaussian => DistributionalPrediction::gaussian_default(range),
    }
}

/// Everything an algorithm may fit against in one repetition.
struct Instance {
    y: f64,
    range: PredictionRange,
    w: WeightFunction,
    mu: DistributionalPrediction,
    points: Vec<f64>,
}

fn unsupported(alg: &Algorithm, problem: Problem) -> Error {
    Error::param(format!("algorithm {alg:?} is not defined for {}", problem.name()))
}

fn draw_points<R: Rng>(
    cfg: &ExperimentConfig,
    mu: &DistributionalPrediction,
    range: &PredictionRange,
    rng: &mut R,
) -> Vec<f64> {
    let (lo, hi) = (range.lower(), range.upper());
    (0..cfg.inner_samples)
        .map(|_| match cfg.inner_sampling {
            InnerSampling::Prediction => mu.sample(rng),
            InnerSampling::Uniform if lo == hi => lo,
            InnerSampling::Uniform => rng.random_range(lo..=hi),
        })
        .collect()
}

/// Per-algorithm `(mean ratio, expected value)` for one repetition.
fn repetition(cfg: &ExperimentConfig, setup: &Setup, algs: &[Algorithm], rep: usize) -> Result<Vec<(f64, f64)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(rep as u64);
    let solver = cfg.solver();

    let (y, delta) = match setup {
        Setup::RealData { data, .. } => (gen_real_prediction(data.max, data.spread, &mut rng), data.delta()),
        _ => (sample_prediction(cfg, &mut rng)?, cfg.delta),
    };
    let range = PredictionRange::around(y, delta)?;
    let mu = distribution(cfg.distribution, y, range)?;
    let points = match setup {
        Setup::RealData { .. } => Vec::new(),
        _ => draw_points(cfg, &mu, &range, &mut rng),
    };
    let inst = Instance { y, range, w: weight(cfg.weight, y, range)?, mu, points };

    algs.iter()
        .map(|alg| match setup {
            Setup::Ski(ski) => ski_column(cfg, ski, &inst, alg, &solver),
            Setup::OneMax(om) => {
                let t = one_max_threshold(cfg, om, &inst, alg, &solver)?;
                let ratio = mean_of(&inst.points, |x| one_max::perf_ratio(t, x));
                let q = inst.mu.cdf_left(t);
                Ok((ratio, t * (1.0 - q) + q))
            }
            Setup::RealData { inst: om, data } => {
                let t = one_max_threshold(cfg, om, &inst, alg, &solver)?;
                let profit = one_max::run_threshold(t, &data.prices, Fallback::RealData);
                Ok((data.max / profit, profit))
            }
            Setup::Contract => contract_column(cfg, &inst, alg, &solver),
        })
        .collect()
}

fn mean_of(points: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    points.iter().map(|&x| f(x)).sum::<f64>() / points.len() as f64
}

fn ski_column(
    cfg: &ExperimentConfig,
    ski: &SkiInstance,
    inst: &Instance,
    alg: &Algorithm,
    solver: &SolverConfig,
) -> Result<(f64, f64)> {
    let policy = match *alg {
        Algorithm::Max => ski_rental::optimize_t_max_with(ski, &inst.w, &inst.range, solver)?,
        Algorithm::Avg => ski_rental::optimize_t_avg_with(ski, &inst.w, &inst.range, solver)?,
        Algorithm::Cvar(a) => ski_rental::optimize_t_cvar_with(ski, &inst.mu, a, solver)?,
        Algorithm::Bp(rho) => match cfg.bp_rule {
            BpRule::FixedRho => SkiPolicy { threshold: rho },
            BpRule::PredictionSwitch => ski_rental::baseline_bp(inst.y, rho, ski)?,
        },
        _ => return Err(unsupported(alg, Problem::Ski)),
    };
    let b = ski.buy_cost;
    let ratio = mean_of(&inst.points, |x| ski_rental::perf_ratio(policy.threshold, x, b));
    Ok((ratio, ski_rental::cvar_cost(&policy, &inst.mu, 0.0, b)?))
}

fn one_max_threshold(
    cfg: &ExperimentConfig,
    om: &OneMaxInstance,
    inst: &Instance,
    alg: &Algorithm,
    solver: &SolverConfig,
) -> Result<f64> {
    let (y, range) = (inst.y, &inst.range);
    let delta = range.prediction().map_or(0.0, |(_, d)| d);
    let policy: OneMaxPolicy = match *alg {
        Algorithm::Max => one_max::optimize_t_max_weighted_with(om, &inst.w, range, solver)?,
        Algorithm::Avg => one_max::optimize_t_avg_with(om, &inst.w, range, solver)?,
        Algorithm::Cvar(a) => one_max::optimize_t_cvar_with(om, &WorstCaseModel::new(inst.mu), a, solver)?,
        Algorithm::DeltaTol if cfg.clamp_delta_tol => one_max::baselines(y, om, delta).delta_tol,
        Algorithm::DeltaTol => OneMaxPolicy { threshold: (1.0 - delta) * y },
        Algorithm::Po1 => one_max::baselines(y, om, delta).po1,
        Algorithm::Po2 => one_max::baselines(y, om, delta).po2,
        _ => return Err(unsupported(alg, Problem::OneMax)),
    };
    Ok(policy.threshold)
}

fn contract_column(
    cfg: &ExperimentConfig,
    inst: &Instance,
    alg: &Algorithm,
    solver: &SolverConfig,
) -> Result<(f64, f64)> {
    let (y, range) = (inst.y, &inst.range);
    let sched: Schedule = match *alg {
        Algorithm::Max => contract::optimize_lambda_max_with(&inst.w, range, solver)?,
        Algorithm::Avg => contract::optimize_lambda_avg_with(&inst.w, range, solver)?,
        Algorithm::Cvar(a) if cfg.delta <= 1.0 / 3.0 => contract::optimize_lambda_cvar_with(&inst.mu, a, solver)?,
        Algorithm::Cvar(a) => contract::optimize_lambda_cvar_discrete(&inst.mu, a, solver)?,
        Algorithm::Po => contract::baseline_schedule(BaselineKind::Po, y, cfg.delta)?,
        Algorithm::DeltaTol => contract::baseline_schedule(BaselineKind::DeltaTol, y, cfg.delta)?,
        _ => return Err(unsupported(alg, Problem::Contract)),
    };
    let ratio = mean_of(&inst.points, |t| sched.ratio_side(t, Side::At));
    Ok((ratio, contract::cvar_length_discrete(&sched, &inst.mu, 0.0)?))
}

fn bootstrap_seed(seed: u64, column: usize) -> u64 {
    seed ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(column as u64 + 1)
}

fn interval(cfg: &ExperimentConfig, samples: &[f64], column: usize) -> Result<(f64, f64)> {
    if samples.len() < 2 {
        return Ok((0.0, 0.0));
    }
    confidence_interval(samples, cfg.ci_level, cfg.bootstrap_resamples, bootstrap_seed(cfg.seed, column))
}

/// Runs the repetitions for the given algorithms; every algorithm sees the
/// same predictions and evaluation points.
pub fn evaluate_algorithms(cfg: &ExperimentConfig, algs: &[Algorithm]) -> Result<ExperimentReport> {
    let setup = Setup::new(cfg)?;
    let per_rep: Vec<Vec<(f64, f64)>> =
        (0..cfg.repetitions).into_par_iter().map(|rep| repetition(cfg, &setup, algs, rep)).collect::<Result<_>>()?;

    let rows = algs
        .iter()
        .enumerate()
        .map(|(i, alg)| {
            let ratios: Vec<f64> = per_rep.iter().map(|r| r[i].0).collect();
            let values: Vec<f64> = per_rep.iter().map(|r| r[i].1).collect();
            let (ci_plus, ci_minus) = interval(cfg, &ratios, 2 * i)?;
            let (ev_ci_plus, ev_ci_minus) = interval(cfg, &values, 2 * i + 1)?;
            Ok(ReportRow {
                name: alg.label(cfg),
                avg_perf_ratio: mean(&ratios),
                ci_plus,
                ci_minus,
                expected_value: mean(&values),
                ev_ci_plus,
                ev_ci_minus,
            })
        })
        .collect::<Result<_>>()?;
    Ok(ExperimentReport { problem: cfg.problem, repetitions: cfg.repetitions, rows })
}

pub fn evaluate_algorithm(cfg: &ExperimentConfig, alg: Algorithm) -> Result<ReportRow> {
    Ok(evaluate_algorithms(cfg, &[alg])?.rows.remove(0))
}

/// Runs every table column for the configured problem.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    evaluate_algorithms(cfg, &algorithms(cfg))
}
