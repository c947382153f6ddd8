//! Brute-force oracles built only from pointwise public functions.

#![allow(dead_code)]

use lad_core::numerics::{integrate, DistributionalPrediction, Quadrature};

/// Relative nudge used to approach a jump from either side.
const NUDGE: f64 = 1e-11;

/// Sup of `f` over an `n`-interval grid on `[lo, hi]`, plus both sides of
/// each point in `jumps` (where `f` may be discontinuous or kinked).
pub fn dense_sup<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize, jumps: &[f64]) -> f64 {
    let mut best = f64::NEG_INFINITY;
    for i in 0..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        best = best.max(f(x));
    }
    for &p in jumps.iter().filter(|&&p| p >= lo && p <= hi) {
        let eps = NUDGE * p.abs().max(1.0);
        best = best.max(f(p));
        if p - eps >= lo {
            best = best.max(f(p - eps));
        }
        if p + eps <= hi {
            best = best.max(f(p + eps));
        }
    }
    best
}

/// Grid minimum of `f` on `[lo, hi]`, refined by golden-section search in
/// the bracket around the best grid point.
pub fn grid_argmin<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, n: usize) -> (f64, f64) {
    let h = (hi - lo) / n as f64;
    let (mut arg, mut val) = (lo, f(lo));
    for i in 1..=n {
        let x = lo + h * i as f64;
        let v = f(x);
        if v < val {
            (arg, val) = (x, v);
        }
    }
    let (mut a, mut b) = ((arg - h).max(lo), (arg + h).min(hi));
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..200 {
        let (c, d) = (b - g * (b - a), a + g * (b - a));
        if f(c) <= f(d) {
            b = d;
        } else {
            a = c;
        }
        if b - a < 1e-14 * b.abs().max(1.0) {
            break;
        }
    }
    for x in [a, 0.5 * (a + b), b] {
        let v = f(x);
        if v < val {
            (arg, val) = (x, v);
        }
    }
    (arg, val)
}

/// `E[g(X)]` for `X ~ mu` by adaptive quadrature against the density.
pub fn expectation<G: Fn(f64) -> f64>(g: G, mu: &DistributionalPrediction, breaks: &[f64]) -> f64 {
    let q = Quadrature { abs_tol: 1e-12, rel_tol: 1e-13, max_depth: 50 };
    let mut pts = breaks.to_vec();
    pts.extend(mu.kinks());
    integrate(|x| g(x) * mu.pdf(x), mu.lower(), mu.upper(), &pts, &q).expect("finite integrand")
}

/// Upper-tail mean of the worst `1 - alpha` fraction of `samples` (losses).
pub fn empirical_cvar_upper(mut samples: Vec<f64>, alpha: f64) -> f64 {
    samples.sort_by(|a, b| b.total_cmp(a));
    let k = ((1.0 - alpha) * samples.len() as f64).round().max(1.0) as usize;
    samples[..k].iter().sum::<f64>() / k as f64
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}
