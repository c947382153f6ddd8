//! Contract scheduling with doubling schedules `X_λ = (λ 2^i)_i`.
//!
//! Contract `i` has length `λ 2^i` and completes at `λ 2^{i+1}`. At an
//! interruption time `T` the schedule reports the largest completed
//! contract `ℓ(X_λ, T)`; the acceleration ratio `T / ℓ` lies in `[2, 4]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    integrate, weighted_sup, DistributionalPrediction, PredictionRange, Side, SolverConfig, TieBreak, WeightFunction,
};

/// Largest value below 2, the open end of the `λ` domain.
const LAMBDA_MAX: f64 = 2.0 - f64::EPSILON;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub lambda: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaselineKind {
    /// Completes a contract at the prediction.
    Po,
    /// Completes a contract at the lower end of the prediction range.
    DeltaTol,
}

impl Schedule {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(1.0..2.0).contains(&lambda) {
            return Err(Error::param(format!("schedule parameter lambda = {lambda} outside [1, 2)")));
        }
        Ok(Self { lambda })
    }

    /// The schedule with a completion exactly at `t`.
    pub fn completing_at(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::param(format!("completion time {t} must be positive")));
        }
        let e = floor_log2(t, 1.0);
        Ok(Self { lambda: (t / pow2(e)).clamp(1.0, LAMBDA_MAX) })
    }

    /// `⌊log₂(t/λ)⌋`, the index `k` with `λ 2^k <= t < λ 2^{k+1}`.
    pub fn index(&self, t: f64) -> i32 {
        floor_log2(t, self.lambda)
    }

    /// Completion time of contract `i`.
    pub fn completion(&self, i: i32) -> f64 {
        self.lambda * pow2(i + 1)
    }

    /// Completion times in `[lo, hi]`.
    pub fn completions_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        let first = self.index(lo);
        (first..=self.index(hi) + 1).map(|k| self.lambda * pow2(k)).filter(|&c| c >= lo && c <= hi).collect()
    }

    fn completed_side(&self, t: f64, side: Side) -> f64 {
        let k = self.index(t);
        let at_completion = self.lambda * pow2(k) == t;
        if side == Side::Left && at_completion {
            self.lambda * pow2(k - 2)
        } else {
            self.lambda * pow2(k - 1)
        }
    }

    pub(crate) fn ratio_side(&self, t: f64, side: Side) -> f64 {
        t / self.completed_side(t, side)
    }
}

fn pow2(e: i32) -> f64 {
    2f64.powi(e)
}

fn floor_log2(t: f64, lambda: f64) -> i32 {
    let mut k = (t / lambda).log2().floor() as i32;
    while lambda * pow2(k) > t {
        k -= 1;
    }
    while lambda * pow2(k + 1) <= t {
        k += 1;
    }
    k
}

fn check_time(t: f64) -> Result<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::param(format!("interruption time {t} must be positive")));
    }
    Ok(())
}

pub fn largest_completed(lambda: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(Schedule::new(lambda)?.completed_side(t, Side::At))
}

pub fn perf_ratio(lambda: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(Schedule::new(lambda)?.ratio_side(t, Side::At))
}

/// Ratio just before `t`; equals 4 at completion times.
pub fn perf_ratio_left(lambda: f64, t: f64) -> Result<f64> {
    check_time(t)?;
    Ok(Schedule::new(lambda)?.ratio_side(t, Side::Left))
}

fn positive_domain(range: &PredictionRange) -> Result<(f64, f64)> {
    if !range.is_bounded() {
        return Err(Error::UnboundedRange);
    }
    if range.lower() <= 0.0 {
        return Err(Error::param("interruption times must be positive"));
    }
    Ok((range.lower(), range.upper()))
}

pub fn d_max(sched: &Schedule, w: &WeightFunction, range: &PredictionRange) -> Result<f64> {
    d_max_with(sched, w, range, &SolverConfig::default())
}

/// Weighted maximum of `T/ℓ(T) − 2` over the range; completions inside the
/// range are taken as left limits (ratio 4).
pub fn d_max_with(sched: &Schedule, w: &WeightFunction, range: &PredictionRange, cfg: &SolverConfig) -> Result<f64> {
    let (lo, hi) = positive_domain(range)?;
    let mut breaks = sched.completions_in(lo, hi);
    breaks.push(range.center());
    Ok(weighted_sup(
        lo,
        hi,
        &breaks,
        w,
        |t, side| sched.ratio_side(t, side) - 2.0,
        |t| 1.0 / sched.completed_side(t, Side::At),
        cfg.root_scan,
    )
    .max(0.0))
}

/// Schedule parameters putting a completion at one of `targets`.
fn crossing_lambdas(targets: &[f64]) -> Vec<f64> {
    targets.iter().filter_map(|&t| Schedule::completing_at(t).ok()).map(|s| s.lambda).collect()
}

fn minimize_lambda<F: Fn(f64) -> f64>(f: F, extra: &[f64], cfg: &SolverConfig) -> Result<Schedule> {
    let m = cfg.minimizer.with_tie(TieBreak::Leftmost).minimize(f, 1.0, LAMBDA_MAX, extra)?;
    Ok(Schedule { lambda: m.arg.clamp(1.0, LAMBDA_MAX) })
}

pub fn optimize_lambda_max(w: &WeightFunction, range: &PredictionRange) -> Result<Schedule> {
    optimize_lambda_max_with(w, range, &SolverConfig::default())
}

/// Minimizes [`d_max`] over `λ ∈ [1, 2)`; ties go to the smallest `λ`.
pub fn optimize_lambda_max_with(w: &WeightFunction, range: &PredictionRange, cfg: &SolverConfig) -> Result<Schedule> {
    positive_domain(range)?;
    let extra = crossing_lambdas(&[range.lower(), range.center(), range.upper()]);
    minimize_lambda(|l| d_max_with(&Schedule { lambda: l }, w, range, cfg).unwrap_or(f64::INFINITY), &extra, cfg)
}

pub fn d_avg(sched: &Schedule, w: &WeightFunction, range: &PredictionRange) -> Result<f64> {
    d_avg_with(sched, w, range, &SolverConfig::default())
}

/// Weighted average of `T/ℓ(T) − 2` over the range, normalized by its width.
///
/// A zero-width range returns the pointwise distance at the prediction.
pub fn d_avg_with(sched: &Schedule, w: &WeightFunction, range: &PredictionRange, cfg: &SolverConfig) -> Result<f64> {
    let (lo, hi) = positive_domain(range)?;
    if range.is_degenerate() {
        return Ok((sched.ratio_side(lo, Side::At) - 2.0) * w.eval(lo));
    }
    let mut breaks = sched.completions_in(lo, hi);
    breaks.extend(w.kinks());
    let area = integrate(|t| (sched.ratio_side(t, Side::At) - 2.0) * w.eval(t), lo, hi, &breaks, &cfg.quadrature)?;
    Ok(area / (hi - lo))
}

pub fn optimize_lambda_avg(w: &WeightFunction, range: &PredictionRange) -> Result<Schedule> {
    optimize_lambda_avg_with(w, range, &SolverConfig::default())
}

pub fn optimize_lambda_avg_with(w: &WeightFunction, range: &PredictionRange, cfg: &SolverConfig) -> Result<Schedule> {
    positive_domain(range)?;
    let mut extra = crossing_lambdas(&[range.lower(), range.center(), range.upper()]);
    if let Some((y, delta)) = range.prediction() {
        if let Some(l) = linear_avg_lambda(y, delta) {
            extra.push(l);
        }
    }
    minimize_lambda(|l| d_avg_with(&Schedule { lambda: l }, w, range, cfg).unwrap_or(f64::INFINITY), &extra, cfg)
}

/// Stationary point of the average distance for the linear weight.
///
/// Valid when exactly one completion falls in `[(1-δ)y, y]` and none in
/// `(y, (1+δ)y]`; returns `None` for a zero-width range.
pub fn linear_avg_lambda(y: f64, delta: f64) -> Option<f64> {
    if !(y > 0.0 && delta > 0.0 && delta <= 1.0 / 3.0) {
        return None;
    }
    let h = y * delta;
    let a = 3.0 * h.powi(3) - 25.0 * h * h * y + 9.0 * h * y * y - 3.0 * y.powi(3);
    let b1 = 5.0 * h.powi(3) - 39.0 * h * h * y + 15.0 * h * y * y - 5.0 * y.powi(3);
    let b2 = h.powi(3) - 9.0 * h * h * y + 3.0 * h * y * y - y.powi(3);
    let c = (-3.0 * a + 4.0 * (b1 * b2).sqrt()).cbrt();
    let raw = (y * (1.0 - delta) + y * y * (delta - 1.0).powi(2) / c + c) / 8.0;
    if !(raw.is_finite() && raw > 0.0) {
        return None;
    }
    Schedule::completing_at(raw).ok().map(|s| s.lambda)
}

fn support_prediction(mu: &DistributionalPrediction) -> Result<(f64, f64, f64)> {
    let lo = mu.lower();
    if !(lo > 0.0 && mu.upper().is_finite()) {
        return Err(Error::param("interruption-time distribution needs a positive bounded support"));
    }
    let hi = mu.upper();
    let (y, delta) = mu.support.prediction().unwrap_or((0.5 * (lo + hi), (hi - lo) / (hi + lo)));
    Ok((lo, y, delta))
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::param(format!("CVaR level alpha = {alpha} must lie in [0, 1)")));
    }
    Ok(())
}

/// CVaR of the completed length when interruptions follow `mu`, for `δ <= 1/3`.
///
/// At most one further completion fits in the range, so the length is
/// `λ 2^{k-1}` with probability `q` and at least twice that otherwise.
pub fn cvar_length(sched: &Schedule, mu: &DistributionalPrediction, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let (lo, _, delta) = support_prediction(mu)?;
    if delta > 1.0 / 3.0 + 1e-12 {
        return Err(Error::param(format!("closed-form contract CVaR requires delta <= 1/3, got {delta}")));
    }
    let k = sched.index(lo);
    let base = sched.lambda * pow2(k - 1);
    let q = mu.cdf_left(sched.lambda * pow2(k + 1)).clamp(0.0, 1.0);
    Ok((base * (2.0 * (1.0 - alpha) - q) / (1.0 - alpha)).max(base))
}

/// Lower-tail CVaR of the completed length for any range width.
pub fn cvar_length_discrete(sched: &Schedule, mu: &DistributionalPrediction, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let (lo, _, _) = support_prediction(mu)?;
    let mass = 1.0 - alpha;
    let (mut taken, mut sum) = (0.0, 0.0);
    for k in sched.index(lo)..=sched.index(mu.upper()) {
        let p = mu.cdf_left(sched.lambda * pow2(k + 1)) - mu.cdf_left(sched.lambda * pow2(k));
        let t = p.max(0.0).min(mass - taken);
        sum += t * sched.lambda * pow2(k - 1);
        taken += t;
        if taken >= mass {
            break;
        }
    }
    Ok(sum / taken.max(f64::MIN_POSITIVE))
}

/// The `α -> 1` limit of [`cvar_length`]: the contract completed by `(1-δ)y`.
pub fn cvar_length_limit(sched: &Schedule, mu: &DistributionalPrediction) -> f64 {
    sched.lambda * pow2(sched.index(mu.lower()) - 1)
}

fn cvar_candidates(mu: &DistributionalPrediction) -> Vec<f64> {
    crossing_lambdas(&[mu.lower(), mu.center, mu.upper(), mu.lower() / 2.0, mu.upper() / 2.0])
}

pub fn optimize_lambda_cvar(mu: &DistributionalPrediction, alpha: f64) -> Result<Schedule> {
    optimize_lambda_cvar_with(mu, alpha, &SolverConfig::default())
}

/// Maximizes [`cvar_length`]; the grid is augmented with the `λ` values
/// where a completion crosses a support boundary.
pub fn optimize_lambda_cvar_with(mu: &DistributionalPrediction, alpha: f64, cfg: &SolverConfig) -> Result<Schedule> {
    cvar_length(&Schedule { lambda: 1.0 }, mu, alpha)?;
    minimize_lambda(
        |l| -cvar_length(&Schedule { lambda: l }, mu, alpha).unwrap_or(f64::NEG_INFINITY),
        &cvar_candidates(mu),
        cfg,
    )
}

/// Maximizes [`cvar_length_discrete`], which has no range-width restriction.
pub fn optimize_lambda_cvar_discrete(
    mu: &DistributionalPrediction,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<Schedule> {
    cvar_length_discrete(&Schedule { lambda: 1.0 }, mu, alpha)?;
    minimize_lambda(
        |l| -cvar_length_discrete(&Schedule { lambda: l }, mu, alpha).unwrap_or(f64::NEG_INFINITY),
        &cvar_candidates(mu),
        cfg,
    )
}

pub fn baseline_schedule(kind: BaselineKind, y: f64, delta: f64) -> Result<Schedule> {
    let target = match kind {
        BaselineKind::Po => y,
        BaselineKind::DeltaTol => (1.0 - delta) * y,
    };
    if target.is_nan() || target <= 0.0 {
        return Err(Error::param(format!("baseline completion target {target} must be positive")));
    }
    Schedule::completing_at(target)
}
