//! Parsers for the `--range`, `--w` and `--mu` flag grammars.

use lad_core::numerics::{DistributionalPrediction, PredictionRange, WeightFunction};
use lad_core::{Error, Result};

fn numbers(parts: &[&str], flag: &str) -> Result<Vec<f64>> {
    parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|_| Error::InvalidParameter(format!("{flag}: `{p}` is not a number"))))
        .collect()
}

/// `lo:hi`, where `hi` may be `inf`.
pub fn parse_range(text: &str) -> Result<PredictionRange> {
    let parts: Vec<&str> = text.split(':').collect();
    let [lo, hi] = numbers(&parts, "--range")?[..] else {
        return Err(Error::InvalidParameter(format!("--range expects LO:HI, got `{text}`")));
    };
    if hi.is_infinite() {
        PredictionRange::unbounded(lo)
    } else {
        PredictionRange::new(lo, hi)
    }
}

/// `uniform`, `linear[:peak]` or `gaussian[:peak[:sigma]]` over `range`.
pub fn parse_weight(text: &str, range: PredictionRange) -> Result<WeightFunction> {
    let mut parts = text.split(':');
    let family = parts.next().unwrap_or_default();
    let params = numbers(&parts.collect::<Vec<_>>(), "--w")?;
    let peak = params.first().copied().unwrap_or_else(|| range.center());
    match (family, params.len()) {
        ("uniform", 0) => Ok(WeightFunction::uniform(range)),
        ("linear", 0 | 1) => WeightFunction::linear(peak, range),
        ("gaussian", 0 | 1) => WeightFunction::gaussian_default(peak, range),
        ("gaussian", 2) => WeightFunction::gaussian(peak, params[1], range),
        _ => Err(Error::InvalidParameter(format!(
            "--w expects uniform, linear[:peak] or gaussian[:peak[:sigma]], got `{text}`"
        ))),
    }
}

/// `uniform[:lo:hi]`, `gaussian[:lo:hi]`, `gaussian:center:sigma:lo:hi` or
/// `triangular[:peak][:lo:hi]`; without bounds the support is `range`.
pub fn parse_distribution(text: &str, range: Option<PredictionRange>) -> Result<DistributionalPrediction> {
    let mut parts = text.split(':');
    let family = parts.next().unwrap_or_default();
    let params = numbers(&parts.collect::<Vec<_>>(), "--mu")?;
    let support = |lo: f64, hi: f64| PredictionRange::new(lo, hi);
    let default_support = || {
        range.ok_or_else(|| Error::InvalidParameter("--mu needs a support: give LO:HI or --y/--delta/--range".into()))
    };
    match (family, params.as_slice()) {
        ("uniform", []) => DistributionalPrediction::uniform(default_support()?),
        ("uniform", &[lo, hi]) => DistributionalPrediction::uniform(support(lo, hi)?),
        ("gaussian", []) => DistributionalPrediction::gaussian_default(default_support()?),
        ("gaussian", &[lo, hi]) => DistributionalPrediction::gaussian_default(support(lo, hi)?),
        ("gaussian", &[c, sigma, lo, hi]) => DistributionalPrediction::truncated_gaussian(c, sigma, support(lo, hi)?),
        ("triangular", []) => {
            let s = default_support()?;
            DistributionalPrediction::triangular(s.center(), s)
        }
        ("triangular", &[peak]) => DistributionalPrediction::triangular(peak, default_support()?),
        ("triangular", &[peak, lo, hi]) => DistributionalPrediction::triangular(peak, support(lo, hi)?),
        _ => Err(Error::InvalidParameter(format!(
            "--mu expects uniform[:lo:hi], gaussian[:lo:hi], gaussian:center:sigma:lo:hi or triangular[:peak][:lo:hi], got `{text}`"
        ))),
    }
}
