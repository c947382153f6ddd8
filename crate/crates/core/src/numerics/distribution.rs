use rand::Rng;
use serde::{Deserialize, Serialize};
use statrs::function::erf::{erfc, erfc_inv};

use super::range::PredictionRange;
use super::weight::gaussian_density;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum DistributionFamily {
    UniformOnRange,
    TruncatedGaussian { sigma: f64 },
    LinearTriangular,
}

/// A bounded density over the prediction range (the predicted distribution).
///
/// A zero-width support is treated as a point mass at the center.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionalPrediction {
    pub family: DistributionFamily,
    pub support: PredictionRange,
    pub center: f64,
}

pub(crate) fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z / std::f64::consts::SQRT_2)
}

fn std_normal_quantile(p: f64) -> f64 {
    -std::f64::consts::SQRT_2 * erfc_inv(2.0 * p)
}

fn std_normal_pdf(z: f64) -> f64 {
    gaussian_density(z, 0.0, 1.0)
}

impl DistributionalPrediction {
    pub fn new(family: DistributionFamily, support: PredictionRange, center: f64) -> Result<Self> {
        if !support.is_bounded() {
            return Err(Error::UnboundedRange);
        }
        if !support.contains(center) {
            return Err(Error::param(format!(
                "center {center} outside support [{}, {}]",
                support.lower(),
                support.upper()
            )));
        }
        if let DistributionFamily::TruncatedGaussian { sigma } = family {
            if !(sigma > 0.0 && sigma.is_finite()) {
                return Err(Error::param(format!("gaussian sigma {sigma} must be > 0")));
            }
        }
        Ok(Self { family, support, center })
    }

    pub fn uniform(support: PredictionRange) -> Result<Self> {
        Self::new(DistributionFamily::UniformOnRange, support, support.center())
    }

    pub fn truncated_gaussian(center: f64, sigma: f64, support: PredictionRange) -> Result<Self> {
        Self::new(DistributionFamily::TruncatedGaussian { sigma }, support, center)
    }

    /// Truncated Gaussian centred on the prediction with `sigma = delta*y/4`.
    pub fn gaussian_default(support: PredictionRange) -> Result<Self> {
        let sigma = match support.prediction() {
            Some((y, delta)) => delta * y / 4.0,
            None => support.width() / 8.0,
        };
        if sigma == 0.0 {
            return Self::uniform(support);
        }
        Self::truncated_gaussian(support.center(), sigma, support)
    }

    pub fn triangular(peak: f64, support: PredictionRange) -> Result<Self> {
        Self::new(DistributionFamily::LinearTriangular, support, peak)
    }

    pub fn lower(&self) -> f64 {
        self.support.lower()
    }

    pub fn upper(&self) -> f64 {
        self.support.upper()
    }

    pub fn is_point_mass(&self) -> bool {
        self.support.is_degenerate()
    }

    fn gauss_bounds(&self, sigma: f64) -> (f64, f64, f64) {
        let a = (self.lower() - self.center) / sigma;
        let b = (self.upper() - self.center) / sigma;
        let pa = std_normal_cdf(a);
        (a, pa, std_normal_cdf(b) - pa)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let (lo, hi, c) = (self.lower(), self.upper(), self.center);
        if x < lo || x > hi || self.is_point_mass() {
            return 0.0;
        }
        match self.family {
            DistributionFamily::UniformOnRange => 1.0 / (hi - lo),
            DistributionFamily::TruncatedGaussian { sigma } => {
                let (_, _, z) = self.gauss_bounds(sigma);
                gaussian_density(x, c, sigma) / z
            }
            DistributionFamily::LinearTriangular => {
                if x < c || (x == c && c > lo) {
                    2.0 * (x - lo) / ((hi - lo) * (c - lo))
                } else {
                    2.0 * (hi - x) / ((hi - lo) * (hi - c))
                }
            }
        }
    }

    /// `P(X <= x)`.
    pub fn cdf(&self, x: f64) -> f64 {
        let (lo, hi, c) = (self.lower(), self.upper(), self.center);
        if self.is_point_mass() {
            return if x >= c { 1.0 } else { 0.0 };
        }
        if x <= lo {
            return 0.0;
        }
        if x >= hi {
            return 1.0;
        }
        let v = match self.family {
            DistributionFamily::UniformOnRange => (x - lo) / (hi - lo),
            DistributionFamily::TruncatedGaussian { sigma } => {
                let (_, pa, z) = self.gauss_bounds(sigma);
                (std_normal_cdf((x - c) / sigma) - pa) / z
            }
            DistributionFamily::LinearTriangular => {
                if x <= c {
                    (x - lo).powi(2) / ((hi - lo) * (c - lo))
                } else {
                    1.0 - (hi - x).powi(2) / ((hi - lo) * (hi - c))
                }
            }
        };
        v.clamp(0.0, 1.0)
    }

    /// `P(X < x)`; differs from [`cdf`](Self::cdf) only for a point mass.
    pub fn cdf_left(&self, x: f64) -> f64 {
        if self.is_point_mass() {
            return if x > self.center { 1.0 } else { 0.0 };
        }
        self.cdf(x)
    }

    pub fn quantile(&self, alpha: f64) -> Result<f64> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::param(format!("quantile level {alpha} outside (0, 1)")));
        }
        Ok(self.quantile_closed(alpha))
    }

    /// Quantile on the closed unit interval (0 and 1 map to the support ends).
    pub(crate) fn quantile_closed(&self, alpha: f64) -> f64 {
        let (lo, hi, c) = (self.lower(), self.upper(), self.center);
        if self.is_point_mass() {
            return c;
        }
        if alpha <= 0.0 {
            return lo;
        }
        if alpha >= 1.0 {
            return hi;
        }
        match self.family {
            DistributionFamily::UniformOnRange => lo + alpha * (hi - lo),
            DistributionFamily::TruncatedGaussian { sigma } => {
                let (_, pa, z) = self.gauss_bounds(sigma);
                let mut x = (c + sigma * std_normal_quantile(pa + alpha * z)).clamp(lo, hi);
                for _ in 0..4 {
                    let p = self.pdf(x);
                    if p <= 0.0 {
                        break;
                    }
                    let step = (self.cdf(x) - alpha) / p;
                    if step == 0.0 {
                        break;
                    }
                    x = (x - step).clamp(lo, hi);
                }
                x
            }
            DistributionFamily::LinearTriangular => {
                let split = (c - lo) / (hi - lo);
                if alpha <= split {
                    lo + (alpha * (hi - lo) * (c - lo)).sqrt()
                } else {
                    hi - ((1.0 - alpha) * (hi - lo) * (hi - c)).sqrt()
                }
            }
        }
    }

    pub fn expectation(&self) -> f64 {
        self.partial_expectation(self.lower(), self.upper())
    }

    /// `P(a <= X <= b)`.
    pub fn probability(&self, a: f64, b: f64) -> f64 {
        if b < a {
            return 0.0;
        }
        if self.is_point_mass() {
            return if a <= self.center && self.center <= b { 1.0 } else { 0.0 };
        }
        (self.cdf(b) - self.cdf(a)).max(0.0)
    }

    /// `∫_a^b z·pdf(z) dz`, with the limits clipped to the support.
    pub fn partial_expectation(&self, a: f64, b: f64) -> f64 {
        let (lo, hi, c) = (self.lower(), self.upper(), self.center);
        if self.is_point_mass() {
            return if a <= c && c <= b { c } else { 0.0 };
        }
        let a = a.max(lo);
        let b = b.min(hi);
        if b <= a {
            return 0.0;
        }
        match self.family {
            DistributionFamily::UniformOnRange => (b * b - a * a) / (2.0 * (hi - lo)),
            DistributionFamily::TruncatedGaussian { sigma } => {
                let (_, _, z) = self.gauss_bounds(sigma);
                let (za, zb) = ((a - c) / sigma, (b - c) / sigma);
                let mass = std_normal_cdf(zb) - std_normal_cdf(za);
                (c * mass - sigma * (std_normal_pdf(zb) - std_normal_pdf(za))) / z
            }
            DistributionFamily::LinearTriangular => {
                let w = hi - lo;
                let left = |x: f64| 2.0 / (w * (c - lo)) * (x * x * x / 3.0 - lo * x * x / 2.0);
                let right = |x: f64| 2.0 / (w * (hi - c)) * (hi * x * x / 2.0 - x * x * x / 3.0);
                let mut total = 0.0;
                if a < c {
                    total += left(b.min(c)) - left(a);
                }
                if b > c {
                    total += right(b) - right(a.max(c));
                }
                total
            }
        }
    }

    /// Inverse-cdf draw.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.random();
        self.quantile_closed(u)
    }

    /// Interior points where the density is not smooth.
    pub fn kinks(&self) -> Vec<f64> {
        match self.family {
            DistributionFamily::LinearTriangular => vec![self.center],
            _ => Vec::new(),
        }
    }
}
