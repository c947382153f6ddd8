//! Weight functions, bounded distributions, quadrature, root finding and
//! scalar minimization shared by the problem modules.

mod distribution;
mod minimize;
mod quadrature;
mod range;
mod roots;
mod sup;
mod weight;

use serde::{Deserialize, Serialize};

pub use distribution::{DistributionFamily, DistributionalPrediction};
pub use minimize::{minimize_scalar, Minimizer, Minimum, TieBreak, DEFAULT_GRID};
pub use quadrature::{integrate, Quadrature};
pub use range::{Interval, PredictionRange};
pub use roots::{find_roots, DEFAULT_SCAN};
pub use sup::Side;
pub use weight::{Slope, WeightFamily, WeightFunction};

pub(crate) use sup::weighted_sup;

/// Numeric knobs shared by every evaluator and optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub quadrature: Quadrature,
    /// Scan points per smooth piece when locating derivative roots.
    pub root_scan: usize,
    pub minimizer: Minimizer,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self { quadrature: Quadrature::default(), root_scan: DEFAULT_SCAN, minimizer: Minimizer::default() }
    }
}

impl SolverConfig {
    /// Coarser scans for inner loops of large experiments.
    pub fn fast() -> Self {
        Self {
            quadrature: Quadrature { abs_tol: 1e-7, rel_tol: 1e-10, max_depth: 30 },
            root_scan: 48,
            minimizer: Minimizer { grid: 1024, ..Minimizer::default() },
        }
    }
}
