/// Default number of scan points per smooth piece.
pub const DEFAULT_SCAN: usize = 2048;

/// All sign-change roots of `f` on `[a, b]`, scanning each piece between
/// breakpoints at `scan` points and refining by bisection.
///
/// `f` is never evaluated at a breakpoint.
pub fn find_roots<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, breakpoints: &[f64], scan: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    if a.is_nan() || b.is_nan() || a >= b {
        return roots;
    }
    let scan = scan.max(2);
    let width_tol = 1e-12 * (b - a);
    let mut cuts: Vec<f64> = breakpoints.iter().copied().filter(|&p| p > a && p < b).collect();
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();
    let is_break = |x: f64| breakpoints.contains(&x);

    let mut lo = a;
    for hi in cuts.iter().copied().chain(std::iter::once(b)) {
        let mut prev: Option<(f64, f64)> = None;
        for i in 0..=scan {
            let x = if i == scan { hi } else { lo + (hi - lo) * (i as f64) / (scan as f64) };
            if (i == 0 || i == scan) && is_break(x) {
                continue;
            }
            let fx = f(x);
            if !fx.is_finite() {
                prev = None;
                continue;
            }
            if fx == 0.0 {
                roots.push(x);
            } else if let Some((px, pf)) = prev {
                if pf != 0.0 && pf.signum() != fx.signum() {
                    roots.push(bisect(&f, px, x, pf, width_tol));
                }
            }
            prev = Some((x, fx));
        }
        lo = hi;
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup();
    roots
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, mut flo: f64, width_tol: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= width_tol || mid <= lo || mid >= hi {
            return mid;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
