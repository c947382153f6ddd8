use std::io::Read;
use std::path::Path;

use rand::Rng;

use crate::error::{Error, Result};
use crate::numerics::{DistributionalPrediction, PredictionRange};
use crate::one_max::PriceSeries;

/// Number of equal-length segments used to estimate the prediction error.
pub const SEGMENTS: usize = 8;

/// A price series with its maximum `x` and error scale `δ·x`.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceDataset {
    pub name: String,
    pub prices: PriceSeries,
    pub max: f64,
    /// Largest minus smallest segment maximum over eight equal segments.
    pub spread: f64,
}

impl PriceDataset {
    pub fn new(name: impl Into<String>, prices: Vec<f64>) -> Result<Self> {
        if prices.len() < SEGMENTS {
            return Err(Error::Data(format!("price series needs at least {SEGMENTS} prices, got {}", prices.len())));
        }
        let prices = PriceSeries::new(prices).map_err(|e| Error::Data(e.to_string()))?;
        let spread = segment_spread(prices.prices());
        Ok(Self { name: name.into(), max: prices.max(), spread, prices })
    }

    /// Relative error `δ = δ·x / x`.
    pub fn delta(&self) -> f64 {
        self.spread / self.max
    }

    /// The same series divided by its minimum, so prices lie in `[1, max/min]`.
    pub fn normalized(&self) -> Result<Self> {
        let scale = self.prices.min();
        let prices = self.prices.scaled(scale)?;
        Ok(Self { name: self.name.clone(), max: prices.max(), spread: self.spread / scale, prices })
    }
}

/// Spread of the segment maxima; segment `i` covers `[i n/8, (i+1) n/8)`.
pub fn segment_spread(prices: &[f64]) -> f64 {
    let n = prices.len();
    let maxima: Vec<f64> = (0..SEGMENTS)
        .map(|i| prices[i * n / SEGMENTS..(i + 1) * n / SEGMENTS].iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let hi = maxima.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lo = maxima.iter().copied().fold(f64::INFINITY, f64::min);
    hi - lo
}

pub fn load_price_series(path: &Path) -> Result<PriceDataset> {
    let file = std::fs::File::open(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    parse_price_series(name, file)
}

/// Reads one price per row, or `timestamp,price` rows (second column used).
/// A non-numeric first row is treated as a header.
pub fn parse_price_series<R: Read>(name: impl Into<String>, reader: R) -> Result<PriceDataset> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).flexible(true).trim(csv::Trim::All).from_reader(reader);
    let mut prices = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Io(e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let field = if rec.len() >= 2 { &rec[1] } else { &rec[0] };
        match field.parse::<f64>() {
            Ok(p) => prices.push(p),
            Err(_) if i == 0 => continue,
            Err(_) => return Err(Error::Data(format!("row {}: `{field}` is not a number", i + 1))),
        }
    }
    PriceDataset::new(name, prices)
}

/// `y = x + δx·z` for a given standardized error `z ∈ [-1, 1]`.
pub fn real_prediction_with(x: f64, spread: f64, z: f64) -> f64 {
    x + spread * z
}

/// Draws `z ~ N(0, 1/2)` truncated to `[-1, 1]`.
pub fn sample_error<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    // Shifted to [0, 2] because prediction supports are nonnegative.
    let support = PredictionRange::new(0.0, 2.0).expect("static support");
    let z = DistributionalPrediction::truncated_gaussian(1.0, 0.5, support).expect("static distribution");
    z.sample(rng) - 1.0
}

pub fn gen_real_prediction<R: Rng + ?Sized>(x: f64, spread: f64, rng: &mut R) -> f64 {
    real_prediction_with(x, spread, sample_error(rng))
}
