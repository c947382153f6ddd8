//! Adaptive Gauss–Kronrod (7/15) quadrature with caller-supplied breakpoints.

#![allow(clippy::excessive_precision)]

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { abs_tol: 1e-9, rel_tol: 1e-12, max_depth: 40 }
    }
}

fn checked<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { x })
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = checked(f, c)?;
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let s = checked(f, c - dx)? + checked(f, c + dx)?;
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    Ok((k * h, ((k - g) * h).abs()))
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, q: &Quadrature) -> Result<f64> {
    let mut total = 0.0;
    let mut stack = vec![(a, b, 0u32)];
    let span = b - a;
    while let Some((lo, hi, depth)) = stack.pop() {
        let (est, err) = kronrod(f, lo, hi)?;
        let local = tol * (hi - lo) / span;
        let mid = 0.5 * (lo + hi);
        if err <= local.max(q.rel_tol * est.abs()) || depth >= q.max_depth || mid <= lo || mid >= hi {
            total += est;
        } else {
            stack.push((mid, hi, depth + 1));
            stack.push((lo, mid, depth + 1));
        }
    }
    Ok(total)
}

/// `∫_a^b f`, split at every breakpoint strictly inside `(a, b)`.
///
/// `f` is only evaluated at interior points of each piece.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breakpoints: &[f64], q: &Quadrature) -> Result<f64> {
    if a.is_nan() || b.is_nan() || a > b {
        return Err(Error::param(format!("integration bounds [{a}, {b}] are invalid")));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::UnboundedRange);
    }
    if a == b {
        return Ok(0.0);
    }
    let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&p| p > a && p < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let mut total = 0.0;
    let mut lo = a;
    for hi in cuts.into_iter().chain(std::iter::once(b)) {
        total += adaptive(&f, lo, hi, q.abs_tol, q)?;
        lo = hi;
    }
    Ok(total)
}
