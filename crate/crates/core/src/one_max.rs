//! One-max search with a prediction of the maximum price.
//!
//! A threshold policy `A_T` sells at the first price `>= T`. On the
//! worst-case input (prices rising to a maximum `x`, then dropping to 1) it
//! earns `T` if `x >= T` and 1 otherwise.

use std::sync::Once;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{
    find_roots, integrate, weighted_sup, DistributionalPrediction, Interval, PredictionRange, Side, SolverConfig,
    TieBreak, WeightFamily, WeightFunction,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneMaxInstance {
    pub price_bound: f64,
    pub robustness: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OneMaxPolicy {
    pub threshold: f64,
}

/// What a threshold policy receives when no price reaches the threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fallback {
    /// The worst-case final price 1.
    Synthetic,
    /// The lowest price of the series.
    RealData,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PriceSeries {
    prices: Vec<f64>,
    max: f64,
    min: f64,
}

impl PriceSeries {
    pub fn new(prices: Vec<f64>) -> Result<Self> {
        if prices.is_empty() {
            return Err(Error::param("price series is empty"));
        }
        if let Some(p) = prices.iter().find(|p| !(p.is_finite() && **p > 0.0)) {
            return Err(Error::param(format!("price {p} is not a positive finite number")));
        }
        let max = prices.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = prices.iter().copied().fold(f64::INFINITY, f64::min);
        Ok(Self { prices, max, min })
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn max(&self) -> f64 {
        self.max
    }

    pub fn min(&self) -> f64 {
        self.min
    }

    pub fn len(&self) -> usize {
        self.prices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prices.is_empty()
    }

    /// Divides every price by `scale`.
    pub fn scaled(&self, scale: f64) -> Result<Self> {
        Self::new(self.prices.iter().map(|p| p / scale).collect())
    }
}

/// The worst-case input family: prices rise to `x ~ mu`, then drop to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorstCaseModel {
    pub mu: DistributionalPrediction,
}

impl WorstCaseModel {
    pub fn new(mu: DistributionalPrediction) -> Self {
        Self { mu }
    }

    /// Profit guaranteed inside the prediction range, `(1-delta)y`.
    pub fn floor(&self) -> f64 {
        self.mu.lower()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Baselines {
    pub delta_tol: OneMaxPolicy,
    pub po1: OneMaxPolicy,
    pub po2: OneMaxPolicy,
}

impl OneMaxInstance {
    pub fn new(price_bound: f64, robustness: f64) -> Result<Self> {
        if !(price_bound > 1.0 && price_bound.is_finite()) {
            return Err(Error::param(format!("price bound M = {price_bound} must be > 1")));
        }
        if !(robustness.is_finite() && robustness >= price_bound.sqrt() * (1.0 - 1e-12)) {
            return Err(Error::param(format!(
                "robustness r = {robustness} must be >= sqrt(M) = {}",
                price_bound.sqrt()
            )));
        }
        Ok(Self { price_bound, robustness })
    }

    pub fn t1(&self) -> f64 {
        (self.price_bound / self.robustness).min(self.robustness)
    }

    pub fn t2(&self) -> f64 {
        self.robustness
    }

    pub fn robust_range(&self) -> Interval {
        Interval { lo: self.t1(), hi: self.t2() }
    }

    pub fn ideal_pr(&self, x: f64) -> Result<f64> {
        if !(1.0..=self.price_bound).contains(&x) {
            return Err(Error::param(format!("price {x} outside [1, {}]", self.price_bound)));
        }
        Ok(self.ideal_pr_side(x, Side::At))
    }

    pub(crate) fn ideal_pr_side(&self, x: f64, side: Side) -> f64 {
        let (t1, t2) = (self.t1(), self.t2());
        let below = match side {
            Side::Left => x <= t1,
            _ => x < t1,
        };
        let flat = match side {
            Side::Right => x < t2,
            _ => x <= t2,
        };
        if below {
            x
        } else if flat {
            1.0
        } else {
            x / t2
        }
    }

    fn ideal_slope(&self, x: f64) -> f64 {
        if x < self.t1() {
            1.0
        } else if x <= self.t2() {
            0.0
        } else {
            1.0 / self.t2()
        }
    }

    fn distance(&self, t: f64, x: f64, side: Side) -> f64 {
        perf_ratio_side(t, x, side) - self.ideal_pr_side(x, side)
    }

    fn distance_slope(&self, t: f64, x: f64) -> f64 {
        let ratio_slope = if x < t { 1.0 } else { 1.0 / t };
        ratio_slope - self.ideal_slope(x)
    }

    fn domain(&self, range: &PredictionRange) -> Option<Interval> {
        range.clip(1.0, self.price_bound)
    }
}

/// Sells at the first price reaching `t`.
pub fn run_threshold(t: f64, prices: &PriceSeries, fallback: Fallback) -> f64 {
    match prices.prices.iter().find(|&&p| p >= t) {
        Some(&p) => p,
        None => match fallback {
            Fallback::Synthetic => 1.0,
            Fallback::RealData => prices.min,
        },
    }
}

/// Profit of `A_T` on the worst-case sequence with maximum `x`.
pub fn worst_case_profit(t: f64, x: f64) -> f64 {
    if x >= t {
        t
    } else {
        1.0
    }
}

pub fn perf_ratio(t: f64, x: f64) -> f64 {
    x / worst_case_profit(t, x)
}

pub fn perf_ratio_side(t: f64, x: f64, side: Side) -> f64 {
    let sells = match side {
        Side::Left => x > t,
        _ => x >= t,
    };
    if sells {
        x / t
    } else {
        x
    }
}

pub fn d_max(policy: &OneMaxPolicy, inst: &OneMaxInstance, w: &WeightFunction, range: &PredictionRange) -> Result<f64> {
    d_max_with(policy, inst, w, range, &SolverConfig::default())
}

/// Weighted maximum distance to the ideal curve over the range (clipped to `[1, M]`).
pub fn d_max_with(
    policy: &OneMaxPolicy,
    inst: &OneMaxInstance,
    w: &WeightFunction,
    range: &PredictionRange,
    cfg: &SolverConfig,
) -> Result<f64> {
    if !range.is_bounded() {
        return Err(Error::UnboundedRange);
    }
    let t = policy.threshold;
    let Some(dom) = inst.domain(range) else {
        return Ok(0.0);
    };
    let breaks = [t, inst.t1(), inst.t2(), range.center()];
    Ok(weighted_sup(
        dom.lo,
        dom.hi,
        &breaks,
        w,
        |x, side| inst.distance(t, x, side),
        |x| inst.distance_slope(t, x),
        cfg.root_scan,
    )
    .max(0.0))
}

/// Minimax threshold for uniform weights in closed form.
///
/// Balances the loss of rejecting prices just below `T` against the loss of
/// accepting `T` when the maximum is `(1+delta)y`; when the balance point
/// falls below `max{(1-delta)y, t1}` that lower end is optimal instead.
pub fn optimize_t_max_unweighted(inst: &OneMaxInstance, y: f64, delta: f64) -> Result<OneMaxPolicy> {
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::param(format!("delta = {delta} outside [0, 1]")));
    }
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::param(format!("prediction y = {y} must be > 0")));
    }
    let (t1, t2) = (inst.t1(), inst.t2());
    let lo = (1.0 - delta) * y;
    // Prices never exceed M, so neither does the adversary's best maximum.
    let hi = ((1.0 + delta) * y).min(inst.price_bound);
    if hi <= t1 {
        return Ok(OneMaxPolicy { threshold: t1 });
    }
    if lo >= t2 {
        return Ok(OneMaxPolicy { threshold: t2 });
    }
    let floor = lo.max(t1);
    let c = if hi <= t2 { 1.0 } else { hi / t2 };
    let balance = ((1.0 - c) + ((c - 1.0).powi(2) + 4.0 * hi).sqrt()) / 2.0;
    Ok(OneMaxPolicy { threshold: balance.max(floor).min(t2) })
}

/// Adversary payoff for choosing maximum price `x` against threshold `T`.
pub fn game_payoff(t: f64, x: f64, inst: &OneMaxInstance, w: &WeightFunction) -> f64 {
    let t2 = inst.t2();
    let wx = w.eval(x);
    if x < t {
        (t - 1.0) * wx
    } else if x <= t2 {
        (x / t - 1.0) * wx
    } else {
        (x / t - x / t2) * wx
    }
}

pub fn optimize_t_max_weighted(
    inst: &OneMaxInstance,
    w: &WeightFunction,
    range: &PredictionRange,
) -> Result<OneMaxPolicy> {
    optimize_t_max_weighted_with(inst, w, range, &SolverConfig::default())
}

/// Minimax threshold for a general weight.
///
/// The linear weight on a range inside `[t1, t2]` is solved as the
/// equalizer of the two adversary moves; everything else goes through a
/// numeric minimax over `[t1, t2]`.
pub fn optimize_t_max_weighted_with(
    inst: &OneMaxInstance,
    w: &WeightFunction,
    range: &PredictionRange,
    cfg: &SolverConfig,
) -> Result<OneMaxPolicy> {
    if !range.is_bounded() {
        return Err(Error::UnboundedRange);
    }
    let iv = inst.robust_range();
    let (lo, hi, y) = (range.lower(), range.upper(), range.center());
    if range.is_degenerate() {
        return Ok(OneMaxPolicy { threshold: iv.clamp(y) });
    }
    if w.family == WeightFamily::LinearSymmetric && lo >= iv.lo && hi <= iv.hi && (y - lo) == (hi - y) {
        let h = y - lo;
        let v1 = |t: f64| (t - 1.0) * (t - lo) / h;
        let v4 = |t: f64| (hi - t).powi(2) / (4.0 * h * t);
        if let Some(&root) = find_roots(|t| v1(t) - v4(t), lo, y, &[], cfg.root_scan).first() {
            return Ok(OneMaxPolicy { threshold: iv.clamp(root) });
        }
    }
    let objective = |t: f64| d_max_with(&OneMaxPolicy { threshold: t }, inst, w, range, cfg).unwrap_or(f64::INFINITY);
    let extra = [lo, y, hi, iv.lo, iv.hi];
    let m = cfg.minimizer.with_tie(TieBreak::Leftmost).minimize(objective, iv.lo, iv.hi, &extra)?;
    Ok(OneMaxPolicy { threshold: m.arg })
}

pub fn d_avg(policy: &OneMaxPolicy, inst: &OneMaxInstance, w: &WeightFunction, range: &PredictionRange) -> Result<f64> {
    d_avg_with(policy, inst, w, range, &SolverConfig::default())
}

/// Weighted average distance, normalized by the range width.
///
/// A zero-width range returns the pointwise distance at the prediction.
pub fn d_avg_with(
    policy: &OneMaxPolicy,
    inst: &OneMaxInstance,
    w: &WeightFunction,
    range: &PredictionRange,
    cfg: &SolverConfig,
) -> Result<f64> {
    if !range.is_bounded() {
        return Err(Error::UnboundedRange);
    }
    let t = policy.threshold;
    if range.is_degenerate() {
        let y = range.lower();
        return Ok(inst.distance(t, y, Side::At) * w.eval(y));
    }
    let Some(dom) = inst.domain(range) else {
        return Ok(0.0);
    };
    let mut breaks = vec![t, inst.t1(), inst.t2()];
    breaks.extend(w.kinks());
    let area = integrate(|x| inst.distance(t, x, Side::At) * w.eval(x), dom.lo, dom.hi, &breaks, &cfg.quadrature)?;
    Ok(area / range.width())
}

pub fn optimize_t_avg(inst: &OneMaxInstance, w: &WeightFunction, range: &PredictionRange) -> Result<OneMaxPolicy> {
    optimize_t_avg_with(inst, w, range, &SolverConfig::default())
}

pub fn optimize_t_avg_with(
    inst: &OneMaxInstance,
    w: &WeightFunction,
    range: &PredictionRange,
    cfg: &SolverConfig,
) -> Result<OneMaxPolicy> {
    if !range.is_bounded() {
        return Err(Error::UnboundedRange);
    }
    let iv = inst.robust_range();
    let objective = |t: f64| d_avg_with(&OneMaxPolicy { threshold: t }, inst, w, range, cfg).unwrap_or(f64::INFINITY);
    let extra = [range.lower(), range.center(), range.upper(), iv.lo, iv.hi];
    let m = cfg.minimizer.with_tie(TieBreak::Leftmost).minimize(objective, iv.lo, iv.hi, &extra)?;
    Ok(OneMaxPolicy { threshold: m.arg })
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::param(format!("CVaR level alpha = {alpha} must lie in [0, 1)")));
    }
    Ok(())
}

/// CVaR of the profit before applying the in-range floor.
pub fn cvar_profit_tail(policy: &OneMaxPolicy, model: &WorstCaseModel, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let t = policy.threshold;
    let q = model.mu.cdf_left(t);
    Ok((t * (1.0 - alpha - q) + q) / (1.0 - alpha))
}

/// CVaR of the profit of `A_T` under the worst-case distribution family.
pub fn cvar_profit(policy: &OneMaxPolicy, model: &WorstCaseModel, alpha: f64) -> Result<f64> {
    Ok(cvar_profit_tail(policy, model, alpha)?.max(model.floor()))
}

/// The `alpha -> 1` limit of [`cvar_profit`].
pub fn cvar_profit_limit(model: &WorstCaseModel) -> f64 {
    model.floor()
}

pub fn optimize_t_cvar(inst: &OneMaxInstance, model: &WorstCaseModel, alpha: f64) -> Result<OneMaxPolicy> {
    optimize_t_cvar_with(inst, model, alpha, &SolverConfig::default())
}

/// Maximizes [`cvar_profit`] over `[t1, t2]`.
///
/// When the floor dominates (the objective is flat), the threshold
/// maximizing the pre-floor tail value is returned.
pub fn optimize_t_cvar_with(
    inst: &OneMaxInstance,
    model: &WorstCaseModel,
    alpha: f64,
    cfg: &SolverConfig,
) -> Result<OneMaxPolicy> {
    check_alpha(alpha)?;
    let iv = inst.robust_range();
    let mu = &model.mu;
    let extra = [mu.lower(), mu.center, mu.upper(), iv.lo, iv.hi];
    let minimizer = cfg.minimizer.with_tie(TieBreak::Leftmost);
    let tail = |t: f64| cvar_profit_tail(&OneMaxPolicy { threshold: t }, model, alpha).unwrap_or(f64::NEG_INFINITY);
    let m = minimizer.minimize(|t| -tail(t).max(model.floor()), iv.lo, iv.hi, &extra)?;
    if tail(m.arg) > model.floor() {
        return Ok(OneMaxPolicy { threshold: m.arg });
    }
    let m = minimizer.minimize(|t| -tail(t), iv.lo, iv.hi, &extra)?;
    Ok(OneMaxPolicy { threshold: m.arg })
}

pub fn alpha_consistency(policy: &OneMaxPolicy, model: &WorstCaseModel, alpha: f64) -> Result<f64> {
    Ok(model.mu.expectation() / cvar_profit(policy, model, alpha)?)
}

static PO1_WARNING: Once = Once::new();

/// Stand-in for the external PO1 threshold: PO2's rule, with a warning.
pub fn default_po1_rule(y: f64, inst: &OneMaxInstance, _delta: f64) -> f64 {
    PO1_WARNING.call_once(|| {
        log::warn!("PO1 threshold rule not configured; falling back to the PO2 rule min(t2, max(t1, y))");
    });
    inst.robust_range().clamp(y)
}

pub fn baselines(y: f64, inst: &OneMaxInstance, delta: f64) -> Baselines {
    baselines_with(y, inst, delta, &default_po1_rule)
}

pub fn baselines_with(
    y: f64,
    inst: &OneMaxInstance,
    delta: f64,
    po1: &dyn Fn(f64, &OneMaxInstance, f64) -> f64,
) -> Baselines {
    let iv = inst.robust_range();
    Baselines {
        delta_tol: OneMaxPolicy { threshold: iv.clamp((1.0 - delta) * y) },
        po1: OneMaxPolicy { threshold: po1(y, inst, delta) },
        po2: OneMaxPolicy { threshold: iv.clamp(y) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(m: f64, r: f64) -> OneMaxInstance {
        OneMaxInstance::new(m, r).unwrap()
    }

    fn series() -> PriceSeries {
        PriceSeries::new(vec![10.0, 60.0, 90.0]).unwrap()
    }

    fn model(lo: f64, hi: f64) -> WorstCaseModel {
        WorstCaseModel::new(DistributionalPrediction::uniform(PredictionRange::new(lo, hi).unwrap()).unwrap())
    }

    fn pol(t: f64) -> OneMaxPolicy {
        OneMaxPolicy { threshold: t }
    }

    #[test]
    fn run_threshold_examples() {
        assert_eq!(run_threshold(50.0, &series(), Fallback::Synthetic), 60.0);
        assert_eq!(run_threshold(95.0, &series(), Fallback::Synthetic), 1.0);
        assert_eq!(run_threshold(95.0, &series(), Fallback::RealData), 10.0);
        assert!(PriceSeries::new(vec![]).is_err());
        assert!(PriceSeries::new(vec![1.0, -2.0]).is_err());
    }

    #[test]
    fn ideal_examples() {
        let i = inst(1000.0, 100.0);
        assert_eq!(i.ideal_pr(5.0).unwrap(), 5.0);
        assert_eq!(i.ideal_pr(50.0).unwrap(), 1.0);
        assert_eq!(i.ideal_pr(200.0).unwrap(), 2.0);
        assert!(i.ideal_pr(0.5).is_err());
        assert!(i.ideal_pr(1001.0).is_err());
    }

    #[test]
    fn instance_validation() {
        assert!(OneMaxInstance::new(1.0, 10.0).is_err());
        assert!(OneMaxInstance::new(1000.0, 10.0).is_err());
    }

    #[test]
    fn unweighted_closed_form() {
        // sqrt(36) = 6 < (1-delta)y = 24, so buying at the range floor wins.
        let t = optimize_t_max_unweighted(&inst(1000.0, 200.0), 30.0, 0.2).unwrap().threshold;
        assert_eq!(t, 24.0);
        let t = optimize_t_max_unweighted(&inst(1000.0, 100.0), 50.0, 0.5).unwrap().threshold;
        assert_eq!(t, 25.0);
        let t = optimize_t_max_unweighted(&inst(1000.0, 100.0), 5.0, 0.5).unwrap().threshold;
        assert_eq!(t, 10.0);
        // Interior balance point.
        let t = optimize_t_max_unweighted(&inst(1000.0, 500.0), 20.0, 0.9).unwrap().threshold;
        assert!((t - 38f64.sqrt()).abs() < 1e-12);
        assert!(optimize_t_max_unweighted(&inst(1000.0, 100.0), 20.0, 1.5).is_err());
    }

    #[test]
    fn unweighted_beyond_t2() {
        let i = inst(1000.0, 100.0);
        let (y, delta) = (90.0, 0.9);
        let t = optimize_t_max_unweighted(&i, y, delta).unwrap().threshold;
        let hi = (1.0 + delta) * y;
        let lhs = t - 1.0;
        let rhs = hi / t - hi / 100.0;
        assert!((lhs - rhs).abs() < 1e-9, "{t}");
        let t = optimize_t_max_unweighted(&i, 500.0, 0.5).unwrap().threshold;
        assert_eq!(t, 100.0);
    }

    #[test]
    fn game_payoff_examples() {
        let r = PredictionRange::new(1.0, 1000.0).unwrap();
        let w = WeightFunction::uniform(r);
        let i = inst(1000.0, 200.0);
        assert!((game_payoff(6.0, 36.0, &i, &w) - 5.0).abs() < 1e-12);
        assert_eq!(game_payoff(6.0, 5.0, &i, &w), 5.0);
        assert!((game_payoff(50.0, 200.0, &inst(1000.0, 100.0), &w) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn weighted_linear_game() {
        let i = inst(4.0, 3.0);
        let r = PredictionRange::around(2.0, 0.5).unwrap();
        let w = WeightFunction::linear(2.0, r).unwrap();
        let t = optimize_t_max_weighted(&i, &w, &r).unwrap().threshold;
        assert!((t - 1.571).abs() < 1e-3, "{t}");
        let numeric = {
            let f = |s: f64| d_max(&pol(s), &i, &w, &r).unwrap();
            let mut best = (f64::INFINITY, 0.0);
            for k in 0..=2000 {
                let s = i.t1() + (i.t2() - i.t1()) * k as f64 / 2000.0;
                let v = f(s);
                if v < best.0 {
                    best = (v, s);
                }
            }
            best.1
        };
        assert!((t - numeric).abs() < 1e-3);
    }

    #[test]
    fn weighted_uniform_matches_closed_form() {
        let i = inst(1000.0, 100.0);
        for &(y, delta) in &[(20.0, 0.9), (50.0, 0.5), (90.0, 0.9), (30.0, 0.2)] {
            let r = PredictionRange::around(y, delta).unwrap();
            let w = WeightFunction::uniform(r);
            let numeric = optimize_t_max_weighted(&i, &w, &r).unwrap();
            let closed = optimize_t_max_unweighted(&i, y, delta).unwrap();
            let dn = d_max(&numeric, &i, &w, &r).unwrap();
            let dc = d_max(&closed, &i, &w, &r).unwrap();
            assert!((dn - dc).abs() < 1e-6, "y={y} delta={delta}: {dn} vs {dc}");
        }
    }

    #[test]
    fn weighted_zero_width() {
        let i = inst(1000.0, 100.0);
        let r = PredictionRange::around(50.0, 0.0).unwrap();
        let w = WeightFunction::linear(50.0, r).unwrap();
        assert_eq!(optimize_t_max_weighted(&i, &w, &r).unwrap().threshold, 50.0);
    }

    #[test]
    fn d_avg_examples() {
        let i = inst(1000.0, 100.0);
        let r = PredictionRange::around(50.0, 0.2).unwrap();
        let w = WeightFunction::uniform(r);
        assert!((d_avg(&pol(40.0), &i, &w, &r).unwrap() - 0.25).abs() < 1e-12);
        let r0 = PredictionRange::around(50.0, 0.0).unwrap();
        assert_eq!(d_avg(&pol(50.0), &i, &WeightFunction::uniform(r0), &r0).unwrap(), 0.0);
        let ru = PredictionRange::unbounded(1.0).unwrap();
        assert!(d_avg(&pol(50.0), &i, &WeightFunction::uniform(ru), &ru).is_err());
    }

    fn d_avg_below_peak(t: f64, y: f64, d: f64) -> f64 {
        let h = y * d;
        (-(h.powi(3)) * (t - 1.0)
            + 3.0 * h * h * ((y - 2.0) * t + y)
            + 3.0 * h * (t - 1.0) * (t * t - y * y)
            + (t - 1.0) * (y - t).powi(2) * (y + 2.0 * t))
            / (12.0 * h * h * t)
    }

    fn d_avg_above_peak(t: f64, y: f64, d: f64) -> f64 {
        let (t2, t3, t4) = (t * t, t * t * t, t * t * t * t);
        let (y2, y3) = (y * y, y * y * y);
        let (d2, d3) = (d * d, d * d * d);
        -(2.0 * t4 - 3.0 * t3 * d * y - 3.0 * t3 * y - 2.0 * t3 + 3.0 * t2 * d * y + 3.0 * t2 * y + t * d3 * y3
            - 3.0 * t * d2 * y3
            + 6.0 * t * d2 * y2
            + 3.0 * t * d * y3
            + t * y3
            - d3 * y3
            - 3.0 * d2 * y3
            - 3.0 * d * y3
            - y3)
            / (12.0 * t * d2 * y2)
    }

    #[test]
    fn d_avg_linear_closed_forms() {
        let i = inst(1000.0, 100.0);
        let (y, delta) = (50.0, 0.5);
        let r = PredictionRange::around(y, delta).unwrap();
        let w = WeightFunction::linear(y, r).unwrap();
        for t in [26.0, 33.3, 41.0, 50.0] {
            let q = d_avg(&pol(t), &i, &w, &r).unwrap();
            assert!((q - d_avg_below_peak(t, y, delta)).abs() < 1e-8, "T={t}");
        }
        for t in [55.0, 62.5, 74.0] {
            let q = d_avg(&pol(t), &i, &w, &r).unwrap();
            assert!((q - d_avg_above_peak(t, y, delta)).abs() < 1e-8, "T={t}");
        }
    }

    #[test]
    fn optimize_avg_examples() {
        let i = inst(1000.0, 100.0);
        let r = PredictionRange::around(50.0, 1e-9).unwrap();
        let t = optimize_t_avg(&i, &WeightFunction::uniform(r), &r).unwrap().threshold;
        assert!((t - 50.0).abs() < 1e-6);
        let r = PredictionRange::around(200.0, 0.4).unwrap();
        assert_eq!(optimize_t_avg(&i, &WeightFunction::uniform(r), &r).unwrap().threshold, 100.0);
    }

    #[test]
    fn cvar_examples() {
        let m = model(25.0, 75.0);
        assert!((cvar_profit(&pol(38.0), &m, 0.0).unwrap() - 28.38).abs() < 1e-12);
        assert_eq!(cvar_profit(&pol(30.0), &m, 0.9).unwrap(), 25.0);
        assert!(cvar_profit(&pol(30.0), &m, 1.0).is_err());
        let r0 = PredictionRange::around(50.0, 0.0).unwrap();
        let point = WorstCaseModel::new(DistributionalPrediction::uniform(r0).unwrap());
        assert_eq!(cvar_profit(&pol(20.0), &point, 0.3).unwrap(), 50.0);
        assert_eq!(cvar_profit_limit(&m), 25.0);
    }

    #[test]
    fn optimize_cvar_examples() {
        let i = inst(1000.0, 100.0);
        let m = model(25.0, 75.0);
        assert!((optimize_t_cvar(&i, &m, 0.0).unwrap().threshold - 38.0).abs() < 1e-6);

        let p = optimize_t_cvar(&i, &m, 0.99).unwrap();
        assert_eq!(cvar_profit(&p, &m, 0.99).unwrap(), 25.0);
        assert_eq!(p.threshold, 25.0);

        let r0 = PredictionRange::around(50.0, 0.0).unwrap();
        let point = WorstCaseModel::new(DistributionalPrediction::uniform(r0).unwrap());
        assert_eq!(optimize_t_cvar(&i, &point, 0.5).unwrap().threshold, 50.0);
    }

    #[test]
    fn consistency_examples() {
        let m = model(25.0, 75.0);
        let c = alpha_consistency(&pol(38.0), &m, 0.0).unwrap();
        assert!((c - 50.0 / 28.38).abs() < 1e-12);
        let r0 = PredictionRange::around(50.0, 0.0).unwrap();
        let point = WorstCaseModel::new(DistributionalPrediction::uniform(r0).unwrap());
        assert_eq!(alpha_consistency(&pol(50.0), &point, 0.5).unwrap(), 1.0);
        assert!((alpha_consistency(&pol(60.0), &m, 0.999).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn baseline_examples() {
        let i = inst(1000.0, 100.0);
        assert_eq!(baselines(50.0, &i, 0.9).delta_tol.threshold, 10.0);
        assert_eq!(baselines(50.0, &i, 0.9).po2.threshold, 50.0);
        assert_eq!(baselines(500.0, &i, 0.9).po2.threshold, 100.0);
        assert_eq!(baselines(500.0, &i, 0.9).po1.threshold, 100.0);
        let custom = baselines_with(50.0, &i, 0.9, &|y, _, _| y / 2.0);
        assert_eq!(custom.po1.threshold, 25.0);
    }
}
