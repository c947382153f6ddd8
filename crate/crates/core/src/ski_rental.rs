//! Continuous ski rental with a horizon prediction.
//!
//! A threshold policy `A_T` rents until time `T` and buys then; on horizon
//! `x` it pays `x` if `x < T` and `T + b` otherwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    integrate, weighted_sup, DistributionalPrediction, Interval, PredictionRange, Side, SolverConfig, TieBreak,
    WeightFamily, WeightFunction,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkiInstance {
    pub buy_cost: f64,
    pub robustness: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SkiPolicy {
    pub threshold: f64,
}

impl SkiInstance {
    pub fn new(buy_cost: f64, robustness: f64) -> Result<Self> {
        if !(buy_cost >= 1.0 && buy_cost.is_finite()) {
            return Err(Error::param(format!("buy cost b = {buy_cost} must be >= 1")));
        }
        robust_range(robustness, buy_cost)?;
        Ok(Self { buy_cost, robustness })
    }

    pub fn robust_range(&self) -> Interval {
        let (b, r) = (self.buy_cost, self.robustness);
        Interval { lo: b / (r - 1.0), hi: b * (r - 1.0) }
    }

    /// End of the ideal curve's linear part, `min{br/(r-1), b(r-1)}`.
    pub fn ideal_knee(&self) -> f64 {
        let (b, r) = (self.buy_cost, self.robustness);
        (b * r / (r - 1.0)).min(b * (r - 1.0))
    }

    pub fn ideal_pr(&self, x: f64) -> f64 {
        self.ideal_pr_side(x, Side::At)
    }

    pub fn ideal_pr_side(&self, x: f64, side: Side) -> f64 {
        let (b, r) = (self.buy_cost, self.robustness);
        let knee = self.ideal_knee();
        let below_b = match side {
            Side::Left => x <= b,
            _ => x < b,
        };
        let on_ramp = match side {
            Side::Right => x < knee,
            _ => x <= knee,
        };
        if below_b {
            1.0
        } else if on_ramp {
            x / b
        } else {
            r / (r - 1.0)
        }
    }

    fn ideal_slope(&self, x: f64) -> f64 {
        if x > self.buy_cost && x < self.ideal_knee() {
            1.0 / self.buy_cost
        } else {
            0.0
        }
    }

    fn check_robust(&self, policy: &SkiPolicy) -> Result<()> {
        let iv = self.robust_range();
        let t = policy.threshold;
        let slack = 1e-12 * iv.hi;
        if t.is_nan() || t < iv.lo - slack || t > iv.hi + slack {
            return Err(Error::NotRobust { threshold: t, lo: iv.lo, hi: iv.hi });
        }
        Ok(())
    }

    fn breakpoints(&self, t: f64) -> [f64; 4] {
        let (b, r) = (self.buy_cost, self.robustness);
        [t, b, self.ideal_knee(), b * (r - 1.0)]
    }

    /// Distance `pr(A_T, x) - pr(I_r, x)` at `x`, or its one-sided limit.
    fn distance(&self, t: f64, x: f64, side: Side) -> f64 {
        perf_ratio_side(t, x, self.buy_cost, side) - self.ideal_pr_side(x, side)
    }

    fn distance_slope(&self, t: f64, x: f64) -> f64 {
        let b = self.buy_cost;
        let ratio_slope = match (x < t, x < b) {
            (true, true) => 0.0,
            (true, false) => 1.0 / b,
            (false, true) => -(t + b) / (x * x),
            (false, false) => 0.0,
        };
        ratio_slope - self.ideal_slope(x)
    }
}

pub fn cost(t: f64, x: f64, b: f64) -> f64 {
    if x < t {
        x
    } else {
        t + b
    }
}

fn cost_side(t: f64, x: f64, b: f64, side: Side) -> f64 {
    let rents = match side {
        Side::Left => x <= t,
        _ => x < t,
    };
    if rents {
        x
    } else {
        t + b
    }
}

/// `cost(T, x) / min{x, b}`; the `x -> 0` limit of a renting policy is 1.
pub fn perf_ratio(t: f64, x: f64, b: f64) -> f64 {
    perf_ratio_side(t, x, b, Side::At)
}

pub fn perf_ratio_side(t: f64, x: f64, b: f64, side: Side) -> f64 {
    let c = cost_side(t, x, b, side);
    if x <= 0.0 {
        return if c == x { 1.0 } else { f64::INFINITY };
    }
    c / x.min(b)
}

pub fn robust_range(r: f64, b: f64) -> Result<Interval> {
    if !(r >= 2.0 && r.is_finite()) {
        return Err(Error::param(format!("robustness r = {r} must be >= 2")));
    }
    Interval::new(b / (r - 1.0), b * (r - 1.0))
}

pub fn ideal_pr(r: f64, b: f64, x: f64) -> f64 {
    SkiInstance { buy_cost: b, robustness: r }.ideal_pr(x)
}

/// Weighted maximum distance to the ideal curve over `range`.
pub fn d_max(policy: &SkiPolicy, inst: &SkiInstance, w: &WeightFunction, range: &PredictionRange) -> Result<f64> {
    d_max_with(policy, inst, w, range, &SolverConfig::default())
}

pub fn d_max_with(
    policy: &SkiPolicy,
    inst: &SkiInstance,
    w: &WeightFunction,
    range: &PredictionRange,
    cfg: &SolverConfig,
) -> Result<f64> {
    inst.check_robust(policy)?;
    if !range.is_bounded() && w.family != WeightFamily::Uniform {
        return Err(Error::param("unbounded ranges are only supported with uniform weights"));
    }
    let t = policy.threshold;
    let mut breaks = inst.breakpoints(t).to_vec();
    breaks.push(range.center());
    Ok(weighted_sup(
        range.lower(),
        range.upper(),
        &breaks,
        w,
        |x, side| inst.distance(t, x, side),
        |x| inst.distance_slope(t, x),
        cfg.root_scan,
    ))
}

pub fn optimize_t_max(inst: &SkiInstance, w: &WeightFunction, range: &PredictionRange) -> Result<SkiPolicy> {
    optimize_t_max_with(inst, w, range, &SolverConfig::default())
}

/// Minimizes `d_max` over the robust interval.
///
/// The critical values of the two threshold classes (below and at/above `b`)
/// are evaluated directly; a grid + golden search over the whole interval
/// covers interior optima. Near-ties resolve to `T = b`.
pub fn optimize_t_max_with(
    inst: &SkiInstance,
    w: &WeightFunction,
    range: &PredictionRange,
    cfg: &SolverConfig,
) -> Result<SkiPolicy> {
    let objective = |t: f64| d_max_with(&SkiPolicy { threshold: t }, inst, w, range, cfg).unwrap_or(f64::INFINITY);
    optimize_with_b_tiebreak(inst, range, cfg, objective)
}

fn critical_thresholds(inst: &SkiInstance, range: &PredictionRange) -> Vec<f64> {
    let (b, r) = (inst.buy_cost, inst.robustness);
    let iv = inst.robust_range();
    let mut c = vec![iv.lo, iv.hi, b, b * r / (r - 1.0), b * (r - 1.0), range.center(), range.lower()];
    if range.is_bounded() {
        c.push(range.upper());
    }
    c.retain(|&t| iv.contains(t));
    c
}

fn optimize_with_b_tiebreak<F: Fn(f64) -> f64>(
    inst: &SkiInstance,
    range: &PredictionRange,
    cfg: &SolverConfig,
    objective: F,
) -> Result<SkiPolicy> {
    let iv = inst.robust_range();
    let extra = critical_thresholds(inst, range);
    let m = cfg.minimizer.with_tie(TieBreak::Leftmost).minimize(&objective, iv.lo, iv.hi, &extra)?;
    let b = inst.buy_cost;
    if iv.contains(b) {
        let at_b = objective(b);
        if at_b <= m.value + cfg.minimizer.tie_tol * m.value.abs().max(1.0) {
            return Ok(SkiPolicy { threshold: b });
        }
    }
    Ok(SkiPolicy { threshold: m.arg })
}

/// Weighted average distance, normalized by the range width.
pub fn d_avg(policy: &SkiPolicy, inst: &SkiInstance, w: &WeightFunction, range: &PredictionRange) -> Result<f64> {
    d_avg_with(policy, inst, w, range, &SolverConfig::default())
}

pub fn d_avg_with(
    policy: &SkiPolicy,
    inst: &SkiInstance,
    w: &WeightFunction,
    range: &PredictionRange,
    cfg: &SolverConfig,
) -> Result<f64> {
    inst.check_robust(policy)?;
    if !range.is_bounded() {
        return Err(Error::UnboundedRange);
    }
    let t = policy.threshold;
    let (lo, hi) = (range.lower(), range.upper());
    if range.is_degenerate() {
        return Ok(inst.distance(t, lo, Side::At) * w.eval(lo));
    }
    let mut breaks = inst.breakpoints(t).to_vec();
    breaks.extend(w.kinks());
    let area = integrate(|x| inst.distance(t, x, Side::At) * w.eval(x), lo, hi, &breaks, &cfg.quadrature)?;
    Ok(area / (hi - lo))
}

pub fn optimize_t_avg(inst: &SkiInstance, w: &WeightFunction, range: &PredictionRange) -> Result<SkiPolicy> {
    optimize_t_avg_with(inst, w, range, &SolverConfig::default())
}

/// Minimizes `d_avg` over the robust interval; near-ties resolve to `T = b`.
pub fn optimize_t_avg_with(
    inst: &SkiInstance,
    w: &WeightFunction,
    range: &PredictionRange,
    cfg: &SolverConfig,
) -> Result<SkiPolicy> {
    if !range.is_bounded() {
        return Err(Error::UnboundedRange);
    }
    let objective = |t: f64| d_avg_with(&SkiPolicy { threshold: t }, inst, w, range, cfg).unwrap_or(f64::INFINITY);
    optimize_with_b_tiebreak(inst, range, cfg, objective)
}

/// Probability and first moment of `mu` on `[a, b)`.
fn half_open_moments(mu: &DistributionalPrediction, a: f64, b: f64) -> (f64, f64) {
    if b <= a {
        return (0.0, 0.0);
    }
    if mu.is_point_mass() {
        return if a <= mu.center && mu.center < b { (1.0, mu.center) } else { (0.0, 0.0) };
    }
    ((mu.cdf_left(b) - mu.cdf_left(a)).max(0.0), mu.partial_expectation(a, b))
}

/// CVaR at level `alpha` of the cost of `A_T` when the horizon follows `mu`.
///
/// The cost is `x` below `T` and jumps to `T + b` with probability `q`. If
/// the jump alone fills the tail the answer is `T + b`; otherwise the tail
/// starts at the horizon quantile `v < T` and the value is
/// `v + E[(cost - v)^+] / (1 - alpha)`.
pub fn cvar_cost(policy: &SkiPolicy, mu: &DistributionalPrediction, alpha: f64, b: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::param(format!("CVaR level alpha = {alpha} must lie in [0, 1)")));
    }
    let t = policy.threshold;
    let q = 1.0 - mu.cdf_left(t);
    let tail = 1.0 - alpha;
    if q >= tail {
        return Ok(t + b);
    }
    let v = if alpha == 0.0 { mu.lower() } else { mu.quantile(alpha)? }.min(t);
    let (p, m) = half_open_moments(mu, v, t);
    let excess = (m - v * p) + (t + b - v) * q;
    Ok(v + excess / tail)
}

/// The `alpha -> 1` limit of [`cvar_cost`]: the worst possible cost.
pub fn cvar_cost_limit(policy: &SkiPolicy, mu: &DistributionalPrediction, b: f64) -> f64 {
    let t = policy.threshold;
    if 1.0 - mu.cdf_left(t) > 0.0 {
        t + b
    } else {
        mu.upper()
    }
}

pub fn optimize_t_cvar(inst: &SkiInstance, mu: &DistributionalPrediction, alpha: f64) -> Result<SkiPolicy> {
    optimize_t_cvar_with(inst, mu, alpha, &SolverConfig::default())
}

/// Minimizes [`cvar_cost`] over the robust interval, preferring the largest
/// optimal threshold.
pub fn optimize_t_cvar_with(
    inst: &SkiInstance,
    mu: &DistributionalPrediction,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<SkiPolicy> {
    let b = inst.buy_cost;
    cvar_cost(&SkiPolicy { threshold: b }, mu, alpha, b)?;
    let iv = inst.robust_range();
    let objective = |t: f64| cvar_cost(&SkiPolicy { threshold: t }, mu, alpha, b).unwrap_or(f64::INFINITY);
    let mut extra = vec![mu.lower(), mu.upper(), mu.center, b];
    if alpha > 0.0 {
        extra.push(mu.quantile_closed(alpha));
    }
    let m = cfg.minimizer.with_tie(TieBreak::Rightmost).minimize(objective, iv.lo, iv.hi, &extra)?;
    Ok(SkiPolicy { threshold: m.arg })
}

/// `BP_rho`: buy at `b/(r-1)` if the prediction is at least `b`, else at `rho`.
pub fn baseline_bp(y: f64, rho: f64, inst: &SkiInstance) -> Result<SkiPolicy> {
    let (b, r) = (inst.buy_cost, inst.robustness);
    if !(rho >= b && rho <= b * (r - 1.0)) {
        return Err(Error::param(format!("rho = {rho} outside [b, b(r-1)] = [{b}, {}]", b * (r - 1.0))));
    }
    let threshold = if y >= b { b / (r - 1.0) } else { rho };
    Ok(SkiPolicy { threshold })
}
