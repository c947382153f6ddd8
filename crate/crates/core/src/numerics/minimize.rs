use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default grid resolution of [`minimize_scalar`].
pub const DEFAULT_GRID: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TieBreak {
    Leftmost,
    Rightmost,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub arg: f64,
    pub value: f64,
}

/// Grid scan followed by golden-section refinement of the best bracket.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Minimizer {
    pub grid: usize,
    pub tie: TieBreak,
    /// Values within `tie_tol * max(1, |v|)` count as equal.
    pub tie_tol: f64,
    /// Golden-section stops once the bracket is below `refine_tol * (b - a)`.
    pub refine_tol: f64,
}

impl Default for Minimizer {
    fn default() -> Self {
        Self { grid: DEFAULT_GRID, tie: TieBreak::Leftmost, tie_tol: 1e-12, refine_tol: 1e-10 }
    }
}

impl Minimizer {
    pub fn with_tie(mut self, tie: TieBreak) -> Self {
        self.tie = tie;
        self
    }

    pub fn with_grid(mut self, grid: usize) -> Self {
        self.grid = grid;
        self
    }

    fn better(&self, cand: Minimum, cur: Minimum) -> bool {
        let tol = self.tie_tol * cur.value.abs().max(1.0);
        if cand.value < cur.value - tol {
            return true;
        }
        if cand.value <= cur.value + tol {
            return match self.tie {
                TieBreak::Leftmost => cand.arg < cur.arg,
                TieBreak::Rightmost => cand.arg > cur.arg,
            };
        }
        false
    }

    /// Minimizes `f` on `[a, b]`; `extra` points inside the interval are
    /// evaluated as additional candidates (useful at known jumps).
    pub fn minimize<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64, extra: &[f64]) -> Result<Minimum> {
        if a.is_nan() || b.is_nan() || a > b {
            return Err(Error::param(format!("minimization interval [{a}, {b}] is invalid")));
        }
        let eval = |x: f64| {
            let v = f(x);
            if v.is_nan() {
                f64::INFINITY
            } else {
                v
            }
        };
        if a == b {
            return Ok(Minimum { arg: a, value: eval(a) });
        }
        let n = self.grid.max(2);
        let xs: Vec<f64> = (0..=n).map(|i| if i == n { b } else { a + (b - a) * (i as f64) / (n as f64) }).collect();
        let vs: Vec<f64> = xs.iter().map(|&x| eval(x)).collect();
        let mut best = Minimum { arg: xs[0], value: vs[0] };
        let mut best_i = 0;
        for i in 1..=n {
            let cand = Minimum { arg: xs[i], value: vs[i] };
            if self.better(cand, best) {
                best = cand;
                best_i = i;
            }
        }

        let lo = xs[best_i.saturating_sub(1)];
        let hi = xs[(best_i + 1).min(n)];
        let refined = golden(&eval, lo, hi, self.refine_tol * (b - a));
        if self.better(refined, best) {
            best = refined;
        }
        for &x in extra {
            if a <= x && x <= b {
                let cand = Minimum { arg: x, value: eval(x) };
                if self.better(cand, best) {
                    best = cand;
                }
            }
        }
        Ok(best)
    }
}

fn golden<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64, tol: f64) -> Minimum {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        Minimum { arg: x1, value: f1 }
    } else {
        Minimum { arg: x2, value: f2 }
    }
}

/// [`Minimizer::default`] on `[a, b]`.
pub fn minimize_scalar<F: Fn(f64) -> f64>(f: F, a: f64, b: f64) -> Result<Minimum> {
    Minimizer::default().minimize(f, a, b, &[])
}
