use super::roots::find_roots;
use super::weight::WeightFunction;

/// Which one-sided limit to take at a point. `At` is the value itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    At,
    Right,
}

pub(crate) fn weight_side(w: &WeightFunction, x: f64, side: Side) -> f64 {
    match side {
        Side::At => w.eval(x),
        Side::Left if x <= w.range.lower() => 0.0,
        Side::Right if x >= w.range.upper() => 0.0,
        _ => w.eval(x),
    }
}

/// Sup over `[lo, hi]` of `value(x)·w(x)` for a piecewise-smooth `value`.
///
/// `breakpoints` must contain every discontinuity of `value` or its slope;
/// `slope(x)` is the derivative of the piece containing `x`. Every breakpoint
/// is evaluated from both sides, interior extrema come from the roots of the
/// product's derivative. With `hi = +inf`, `value·w` must be constant beyond
/// the last breakpoint.
pub(crate) fn weighted_sup<V, S>(
    lo: f64,
    hi: f64,
    breakpoints: &[f64],
    w: &WeightFunction,
    value: V,
    slope: S,
    scan: usize,
) -> f64
where
    V: Fn(f64, Side) -> f64,
    S: Fn(f64) -> f64,
{
    let mut pts: Vec<f64> = vec![lo];
    if hi.is_finite() {
        pts.push(hi);
    }
    let extra = [w.range.lower(), w.range.upper()];
    pts.extend(
        breakpoints
            .iter()
            .chain(w.kinks().iter())
            .chain(extra.iter())
            .copied()
            .filter(|&p| p.is_finite() && p > lo && p < hi),
    );
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let mut sup = f64::NEG_INFINITY;
    let mut take = |v: f64| {
        if v > sup {
            sup = v;
        }
    };
    for &p in &pts {
        take(value(p, Side::At) * w.eval(p));
        if p > lo {
            take(value(p, Side::Left) * weight_side(w, p, Side::Left));
        }
        if p < hi {
            take(value(p, Side::Right) * weight_side(w, p, Side::Right));
        }
    }
    for pair in pts.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let dh = |x: f64| slope(x) * w.eval(x) + value(x, Side::At) * w.piece_slope(x);
        for r in find_roots(dh, a, b, &[a, b], scan) {
            take(value(r, Side::At) * w.eval(r));
        }
    }
    if !hi.is_finite() {
        if let Some(&last) = pts.last() {
            let far = 2.0 * last + 1.0;
            take(value(far, Side::At) * w.eval(far));
        }
    }
    sup
}
