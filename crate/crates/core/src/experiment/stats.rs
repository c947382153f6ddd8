use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub fn mean(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// Percentile bootstrap interval for the mean, as `(upper - mean, mean - lower)`.
pub fn confidence_interval(samples: &[f64], level: f64, resamples: usize, seed: u64) -> Result<(f64, f64)> {
    if samples.len() < 2 {
        return Err(Error::param("a confidence interval needs at least 2 samples"));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::param(format!("confidence level {level} outside (0, 1)")));
    }
    if resamples < 1 {
        return Err(Error::param("bootstrap needs at least one resample"));
    }
    let m = mean(samples);
    if samples.iter().all(|&s| s == samples[0]) {
        return Ok((0.0, 0.0));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = samples.len();
    let mut means: Vec<f64> =
        (0..resamples).map(|_| (0..n).map(|_| samples[rng.random_range(0..n)]).sum::<f64>() / n as f64).collect();
    means.sort_by(f64::total_cmp);
    let tail = (1.0 - level) / 2.0;
    let lo = percentile(&means, tail);
    let hi = percentile(&means, 1.0 - tail);
    Ok(((hi - m).max(0.0), (m - lo).max(0.0)))
}

/// Linear-interpolated percentile of sorted data.
fn percentile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    match sorted.get(i + 1) {
        Some(&next) => sorted[i] + frac * (next - sorted[i]),
        None => sorted[i],
    }
}
