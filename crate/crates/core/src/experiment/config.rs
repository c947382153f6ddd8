use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::SolverConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Problem {
    Ski,
    OneMax,
    Contract,
}

impl Problem {
    pub fn name(self) -> &'static str {
        match self {
            Problem::Ski => "ski",
            Problem::OneMax => "onemax",
            Problem::Contract => "contract",
        }
    }
}

/// Weight family used by the distance-based algorithms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightKind {
    Uniform,
    Linear,
    /// Truncated Gaussian with `sigma = delta*y/4`.
    Gaussian,
}

/// Family of the distributional prediction used by CVaR and expected values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionKind {
    Uniform,
    Triangular,
    /// Truncated Gaussian with `sigma = delta*y/4`.
    Gaussian,
}

/// How the ski-rental `BP_rho` columns pick their threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BpRule {
    /// Buy at `rho`.
    FixedRho,
    /// Buy at `b/(r-1)` when the prediction is at least `b`, else at `rho`.
    PredictionSwitch,
}

/// Where the per-repetition evaluation points come from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerSampling {
    /// Uniform over the prediction range.
    Uniform,
    /// Drawn from the distributional prediction.
    Prediction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: Problem,
    /// Ski buying cost `b`.
    pub buy_cost: f64,
    /// `None` selects the problem default: 5 for ski, `M^(2/3)` for one-max.
    pub robustness: Option<f64>,
    /// One-max price bound `M` (synthetic mode).
    pub price_bound: f64,
    /// Spread of the prediction draw: `y ~ U[b/z, bz]` or `U[z, M/z]`.
    pub z: f64,
    pub delta: f64,
    pub alphas: Vec<f64>,
    pub weight: WeightKind,
    pub distribution: DistributionKind,
    pub repetitions: usize,
    pub inner_samples: usize,
    pub seed: u64,
    /// Price CSV for the one-max real-data protocol.
    pub real_data: Option<PathBuf>,
    pub bp_rule: BpRule,
    /// Clamp the one-max delta-tolerant threshold into `[t1, t2]`.
    pub clamp_delta_tol: bool,
    pub inner_sampling: InnerSampling,
    /// Contract predictions are drawn uniformly from this interval.
    pub contract_y_range: [f64; 2],
    pub ci_level: f64,
    pub bootstrap_resamples: usize,
    /// Use coarser numeric settings inside the repetition loop.
    pub fast_solver: bool,
}

impl ExperimentConfig {
    /// Defaults reproducing the published tables for each problem.
    pub fn preset(problem: Problem) -> Self {
        let base = Self {
            problem,
            buy_cost: 10.0,
            robustness: None,
            price_bound: 1000.0,
            z: 4.0,
            delta: 0.9,
            alphas: vec![0.1, 0.5, 0.9],
            weight: WeightKind::Linear,
            distribution: DistributionKind::Gaussian,
            repetitions: 1000,
            inner_samples: 512,
            seed: 0,
            real_data: None,
            bp_rule: BpRule::FixedRho,
            clamp_delta_tol: false,
            inner_sampling: InnerSampling::Uniform,
            contract_y_range: [0.8e6, 1.2e6],
            ci_level: 0.95,
            bootstrap_resamples: 1000,
            fast_solver: true,
        };
        match problem {
            Problem::Ski => base,
            Problem::OneMax => Self { z: 10.0, ..base },
            Problem::Contract => Self {
                delta: 1.0 / 3.0,
                weight: WeightKind::Gaussian,
                inner_sampling: InnerSampling::Prediction,
                ..base
            },
        }
    }

    /// One-max on a price series file, 10000 runs.
    pub fn real_data(path: impl Into<PathBuf>) -> Self {
        Self { real_data: Some(path.into()), repetitions: 10_000, ..Self::preset(Problem::OneMax) }
    }

    /// Parses a JSON document naming a `problem` and any fields to override.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::param(format!("config is not valid JSON: {e}")))?;
        let overrides = value.as_object().ok_or_else(|| Error::param("config must be a JSON object"))?;
        let problem: Problem = match overrides.get("problem") {
            Some(p) => serde_json::from_value(p.clone()).map_err(|e| Error::param(format!("config: {e}")))?,
            None => return Err(Error::param("config: missing field `problem`")),
        };
        let mut base = if overrides.contains_key("real_data") && !overrides.contains_key("repetitions") {
            serde_json::to_value(Self::real_data(PathBuf::new()))
        } else {
            serde_json::to_value(Self::preset(problem))
        }
        .map_err(|e| Error::param(e.to_string()))?;
        if let Some(obj) = base.as_object_mut() {
            for (k, v) in overrides {
                obj.insert(k.clone(), v.clone());
            }
        }
        let cfg: Self = serde_json::from_value(base).map_err(|e| Error::param(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::param(msg));
        if self.repetitions < 1 {
            return fail("repetitions must be >= 1".into());
        }
        if self.inner_samples < 1 {
            return fail("inner_samples must be >= 1".into());
        }
        if !(0.0..=1.0).contains(&self.delta) {
            return fail(format!("delta = {} outside [0, 1]", self.delta));
        }
        if let Some(a) = self.alphas.iter().find(|a| !(0.0..1.0).contains(*a)) {
            return fail(format!("CVaR level alpha = {a} must lie in [0, 1)"));
        }
        if !(self.ci_level > 0.0 && self.ci_level < 1.0) {
            return fail(format!("ci_level = {} outside (0, 1)", self.ci_level));
        }
        if self.bootstrap_resamples < 1 {
            return fail("bootstrap_resamples must be >= 1".into());
        }
        if self.real_data.is_some() && self.problem != Problem::OneMax {
            return fail("real-data mode is only defined for one-max".into());
        }
        match self.problem {
            Problem::Ski => {
                if !(self.z >= 1.0 && self.z.is_finite()) {
                    return fail(format!("z = {} must be >= 1", self.z));
                }
            }
            Problem::OneMax if self.real_data.is_none() => {
                let m = self.price_bound;
                if !(self.z >= 1.0 && self.z * self.z <= m) {
                    return fail(format!("z = {} must lie in [1, sqrt(M)]", self.z));
                }
            }
            Problem::OneMax => {}
            Problem::Contract => {
                let [lo, hi] = self.contract_y_range;
                if !(lo > 0.0 && hi >= lo && hi.is_finite()) {
                    return fail(format!("contract prediction interval [{lo}, {hi}] must be positive"));
                }
                if self.delta >= 1.0 {
                    return fail("contract delta must be < 1 so interruption times stay positive".into());
                }
            }
        }
        Ok(())
    }

    pub fn solver(&self) -> SolverConfig {
        if self.fast_solver {
            SolverConfig::fast()
        } else {
            SolverConfig::default()
        }
    }

    /// Ski robustness, defaulting to 5.
    pub fn ski_robustness(&self) -> f64 {
        self.robustness.unwrap_or(5.0)
    }

    /// One-max robustness for price bound `m`, defaulting to `m^(2/3)`.
    pub fn one_max_robustness(&self, m: f64) -> f64 {
        self.robustness.unwrap_or_else(|| m.powf(2.0 / 3.0))
    }
}
