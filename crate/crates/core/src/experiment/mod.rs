//! Experiment harness: prediction sampling, repetition loops, bootstrap
//! confidence intervals, price-series ingestion and report emission.

mod config;
mod curves;
mod data;
mod report;
mod run;
mod stats;

pub use config::{BpRule, DistributionKind, ExperimentConfig, InnerSampling, Problem, WeightKind};
pub use curves::{emit_curves, CurveProblem};
pub use data::{
    gen_real_prediction, load_price_series, parse_price_series, real_prediction_with, sample_error, segment_spread,
    PriceDataset, SEGMENTS,
};
pub use report::{emit_report, format_sig, ExperimentReport, ReportFormat, ReportRow};
pub use run::{algorithms, evaluate_algorithm, evaluate_algorithms, run_experiment, sample_prediction, Algorithm};
pub use stats::{confidence_interval, mean};
