use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return Err(Error::param(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// The set of values the predicted quantity is guaranteed to fall in.
///
/// An unbounded range carries `upper = +inf` explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictionRange {
    lower: f64,
    upper: f64,
    prediction: Option<(f64, f64)>,
}

impl PredictionRange {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !lower.is_finite() || lower < 0.0 {
            return Err(Error::param(format!("range lower bound {lower} must be finite and >= 0")));
        }
        if upper.is_nan() || upper < lower {
            return Err(Error::param(format!("range upper bound {upper} below lower bound {lower}")));
        }
        Ok(Self { lower, upper, prediction: None })
    }

    /// `[(1-delta)y, (1+delta)y]`.
    pub fn around(y: f64, delta: f64) -> Result<Self> {
        if !y.is_finite() || y < 0.0 {
            return Err(Error::param(format!("prediction {y} must be finite and >= 0")));
        }
        if !(0.0..=1.0).contains(&delta) {
            return Err(Error::param(format!("delta {delta} outside [0, 1]")));
        }
        Ok(Self { lower: (1.0 - delta) * y, upper: (1.0 + delta) * y, prediction: Some((y, delta)) })
    }

    pub fn unbounded(lower: f64) -> Result<Self> {
        Self::new(lower, f64::INFINITY)
    }

    pub fn lower(&self) -> f64 {
        self.lower
    }

    pub fn upper(&self) -> f64 {
        self.upper
    }

    pub fn is_bounded(&self) -> bool {
        self.upper.is_finite()
    }

    pub fn is_degenerate(&self) -> bool {
        self.upper == self.lower
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }

    /// The `(y, delta)` pair when built with [`PredictionRange::around`].
    pub fn prediction(&self) -> Option<(f64, f64)> {
        self.prediction
    }

    /// The prediction if known, otherwise the midpoint (or lower bound when unbounded).
    pub fn center(&self) -> f64 {
        match self.prediction {
            Some((y, _)) => y,
            None if self.is_bounded() => 0.5 * (self.lower + self.upper),
            None => self.lower,
        }
    }

    pub fn interval(&self) -> Interval {
        Interval { lo: self.lower, hi: self.upper }
    }

    /// Intersection with `[lo, hi]`; `None` when empty.
    pub fn clip(&self, lo: f64, hi: f64) -> Option<Interval> {
        let a = self.lower.max(lo);
        let b = self.upper.min(hi);
        (a <= b).then_some(Interval { lo: a, hi: b })
    }
}
