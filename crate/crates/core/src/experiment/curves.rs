//! Performance-ratio curves of policies against the ideal curve.

use serde::{Deserialize, Serialize};

use super::report::format_sig;
use crate::contract::Schedule;
use crate::error::{Error, Result};
use crate::numerics::Side;
use crate::one_max::{self, OneMaxInstance};
use crate::ski_rental::{self, SkiInstance};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CurveProblem {
    Ski(SkiInstance),
    OneMax(OneMaxInstance),
    /// Policies are schedule parameters; the ideal ratio is the constant 2.
    Contract,
}

impl CurveProblem {
    fn column(&self, policy: f64) -> String {
        match self {
            CurveProblem::Contract => format!("lambda={}", format_sig(policy)),
            _ => format!("T={}", format_sig(policy)),
        }
    }

    fn ratio(&self, policy: f64, x: f64, side: Side) -> f64 {
        match self {
            CurveProblem::Ski(inst) => ski_rental::perf_ratio_side(policy, x, inst.buy_cost, side),
            CurveProblem::OneMax(_) => one_max::perf_ratio_side(policy, x, side),
            CurveProblem::Contract => Schedule { lambda: policy }.ratio_side(x, side),
        }
    }

    fn ideal(&self, x: f64, side: Side) -> f64 {
        match self {
            CurveProblem::Ski(inst) => inst.ideal_pr_side(x, side),
            CurveProblem::OneMax(inst) => inst.ideal_pr_side(x, side),
            CurveProblem::Contract => 2.0,
        }
    }

    /// Points where some column may jump.
    fn discontinuities(&self, policies: &[f64], lo: f64, hi: f64) -> Vec<f64> {
        match self {
            CurveProblem::Ski(inst) => {
                let mut v = policies.to_vec();
                v.extend([inst.buy_cost, inst.ideal_knee()]);
                v
            }
            CurveProblem::OneMax(inst) => {
                let mut v = policies.to_vec();
                v.extend([inst.t1(), inst.t2()]);
                v
            }
            CurveProblem::Contract => {
                policies.iter().flat_map(|&l| Schedule { lambda: l }.completions_in(lo, hi)).collect()
            }
        }
    }

    fn validate(&self, policies: &[f64], lo: f64, hi: f64) -> Result<()> {
        match self {
            CurveProblem::Ski(_) if lo < 0.0 => Err(Error::param("ski horizons must be >= 0")),
            CurveProblem::OneMax(inst) if lo < 1.0 || hi > inst.price_bound => {
                Err(Error::param(format!("one-max prices must lie in [1, {}]", inst.price_bound)))
            }
            CurveProblem::Contract if lo <= 0.0 => Err(Error::param("interruption times must be positive")),
            CurveProblem::Contract => {
                for &l in policies {
                    Schedule::new(l)?;
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// CSV of `x`, one ratio column per policy, then the ideal ratio.
///
/// Where any column jumps, the left limit is emitted on its own row just
/// before the value at the point.
pub fn emit_curves(problem: &CurveProblem, policies: &[f64], lo: f64, hi: f64, resolution: usize) -> Result<String> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::param(format!("invalid curve range [{lo}, {hi}]")));
    }
    if resolution < 1 {
        return Err(Error::param("curve resolution must be >= 1"));
    }
    problem.validate(policies, lo, hi)?;

    let mut xs: Vec<f64> = (0..=resolution).map(|i| lo + (hi - lo) * i as f64 / resolution as f64).collect();
    let jumps: Vec<f64> =
        problem.discontinuities(policies, lo, hi).into_iter().filter(|&d| d > lo && d <= hi).collect();
    xs.extend(&jumps);
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let row = |x: f64, side: Side| -> Vec<f64> {
        let mut v: Vec<f64> = policies.iter().map(|&p| problem.ratio(p, x, side)).collect();
        v.push(problem.ideal(x, side));
        v
    };

    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["x".to_string()];
    header.extend(policies.iter().map(|&p| problem.column(p)));
    header.push("ideal".into());
    w.write_record(&header).map_err(|e| Error::Io(e.to_string()))?;
    for &x in &xs {
        let at = row(x, Side::At);
        if x > lo && jumps.contains(&x) {
            let left = row(x, Side::Left);
            if left != at {
                write_row(&mut w, x, &left)?;
            }
        }
        write_row(&mut w, x, &at)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

fn write_row(w: &mut csv::Writer<Vec<u8>>, x: f64, values: &[f64]) -> Result<()> {
    let mut rec = vec![format_sig(x)];
    rec.extend(values.iter().map(|&v| format_sig(v)));
    w.write_record(&rec).map_err(|e| Error::Io(e.to_string()))
}
