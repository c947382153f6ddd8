//! Shared fixtures for the criterion benches.

use lad_core::experiment::{ExperimentConfig, Problem};
use lad_core::numerics::{DistributionalPrediction, PredictionRange, WeightFunction};
use lad_core::one_max::OneMaxInstance;
use lad_core::ski_rental::SkiInstance;

/// Prediction range and linear weight around `y`.
pub fn linear_around(y: f64, delta: f64) -> (PredictionRange, WeightFunction) {
    let range = PredictionRange::around(y, delta).expect("valid range");
    let w = WeightFunction::linear(y, range).expect("valid weight");
    (range, w)
}

pub fn gaussian_around(y: f64, delta: f64) -> (PredictionRange, WeightFunction) {
    let range = PredictionRange::around(y, delta).expect("valid range");
    let w = WeightFunction::gaussian_default(y, range).expect("valid weight");
    (range, w)
}

/// Truncated Gaussian with the experiments' default width.
pub fn gaussian_mu(y: f64, delta: f64) -> DistributionalPrediction {
    let range = PredictionRange::around(y, delta).expect("valid range");
    DistributionalPrediction::gaussian_default(range).expect("valid distribution")
}

pub fn ski() -> SkiInstance {
    SkiInstance::new(10.0, 5.0).expect("valid instance")
}

pub fn one_max() -> OneMaxInstance {
    OneMaxInstance::new(1000.0, 100.0).expect("valid instance")
}

/// A preset scaled down to `reps` repetitions for timing.
pub fn small_experiment(problem: Problem, reps: usize) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::preset(problem);
    cfg.repetitions = reps;
    cfg.bootstrap_resamples = 200;
    cfg
}
