//! Distance- and risk-based evaluation and optimization of learning-augmented
//! online algorithms for ski rental, one-max search and contract scheduling.

pub mod contract;
pub mod error;
pub mod experiment;
pub mod numerics;
pub mod one_max;
pub mod ski_rental;

pub use error::{Error, Result};
pub use numerics::{
    DistributionFamily, DistributionalPrediction, Interval, PredictionRange, Side, SolverConfig, WeightFamily,
    WeightFunction,
};
