use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::range::PredictionRange;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum WeightFamily {
    Uniform,
    LinearSymmetric,
    GaussianTruncated { sigma: f64 },
}

/// Derivative of a weight function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Slope {
    Smooth(f64),
    Kink { left: f64, right: f64 },
}

/// Bitonic importance weight over a prediction range, zero outside it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightFunction {
    pub family: WeightFamily,
    pub peak: f64,
    pub range: PredictionRange,
}

impl WeightFunction {
    pub fn uniform(range: PredictionRange) -> Self {
        Self { family: WeightFamily::Uniform, peak: range.center(), range }
    }

    /// Linear ramp from 0 at the range ends to 1 at `peak`.
    pub fn linear(peak: f64, range: PredictionRange) -> Result<Self> {
        Self::check_peak(peak, &range)?;
        if !range.is_bounded() {
            return Err(Error::UnboundedRange);
        }
        Ok(Self { family: WeightFamily::LinearSymmetric, peak, range })
    }

    pub fn gaussian(peak: f64, sigma: f64, range: PredictionRange) -> Result<Self> {
        Self::check_peak(peak, &range)?;
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(Error::param(format!("gaussian sigma {sigma} must be > 0")));
        }
        if !range.is_bounded() {
            return Err(Error::UnboundedRange);
        }
        Ok(Self { family: WeightFamily::GaussianTruncated { sigma }, peak, range })
    }

    /// Gaussian with `sigma = delta*y/4`, i.e. an eighth of the range width.
    pub fn gaussian_default(peak: f64, range: PredictionRange) -> Result<Self> {
        let sigma = match range.prediction() {
            Some((y, delta)) => delta * y / 4.0,
            None => range.width() / 8.0,
        };
        Self::gaussian(peak, sigma, range)
    }

    fn check_peak(peak: f64, range: &PredictionRange) -> Result<()> {
        if !range.contains(peak) {
            return Err(Error::param(format!(
                "weight peak {peak} outside range [{}, {}]",
                range.lower(),
                range.upper()
            )));
        }
        Ok(())
    }

    pub fn eval(&self, x: f64) -> f64 {
        if !self.range.contains(x) {
            return 0.0;
        }
        self.eval_inside(x)
    }

    fn eval_inside(&self, x: f64) -> f64 {
        let (lo, hi, y) = (self.range.lower(), self.range.upper(), self.peak);
        match self.family {
            WeightFamily::Uniform => 1.0,
            WeightFamily::LinearSymmetric => {
                if x == y {
                    1.0
                } else if x < y {
                    (x - lo) / (y - lo)
                } else {
                    (hi - x) / (hi - y)
                }
            }
            WeightFamily::GaussianTruncated { sigma } => gaussian_density(x, y, sigma),
        }
    }

    /// Derivative of the smooth piece containing `x`, treating `x` as interior.
    pub fn piece_slope(&self, x: f64) -> f64 {
        if !self.range.contains(x) {
            return 0.0;
        }
        let (lo, hi, y) = (self.range.lower(), self.range.upper(), self.peak);
        match self.family {
            WeightFamily::Uniform => 0.0,
            WeightFamily::LinearSymmetric => {
                if x < y {
                    1.0 / (y - lo)
                } else if x > y {
                    -1.0 / (hi - y)
                } else {
                    0.0
                }
            }
            WeightFamily::GaussianTruncated { sigma } => -(x - y) / (sigma * sigma) * gaussian_density(x, y, sigma),
        }
    }

    /// Analytic derivative; kinks (range ends, the linear peak) return both sides.
    pub fn derivative(&self, x: f64) -> Slope {
        let (lo, hi, y) = (self.range.lower(), self.range.upper(), self.peak);
        let inside_left = |s: &Self| if x > lo { s.piece_slope_toward(x, true) } else { 0.0 };
        let inside_right = |s: &Self| if x < hi { s.piece_slope_toward(x, false) } else { 0.0 };
        if x == lo || x == hi {
            return Slope::Kink { left: inside_left(self), right: inside_right(self) };
        }
        if x == y && self.family == WeightFamily::LinearSymmetric {
            return Slope::Kink { left: inside_left(self), right: inside_right(self) };
        }
        Slope::Smooth(self.piece_slope(x))
    }

    fn piece_slope_toward(&self, x: f64, from_left: bool) -> f64 {
        let (lo, hi, y) = (self.range.lower(), self.range.upper(), self.peak);
        match self.family {
            WeightFamily::LinearSymmetric => {
                if x < y || (x == y && from_left) {
                    1.0 / (y - lo)
                } else {
                    -1.0 / (hi - y)
                }
            }
            _ => self.piece_slope(x),
        }
    }

    /// Interior points where the weight is not smooth.
    pub fn kinks(&self) -> Vec<f64> {
        match self.family {
            WeightFamily::LinearSymmetric => vec![self.peak],
            _ => Vec::new(),
        }
    }
}

pub(crate) fn gaussian_density(x: f64, mean: f64, sigma: f64) -> f64 {
    let z = (x - mean) / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * PI).sqrt())
}
