//! Least-squares fits of `log v` against `log t`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Fewest points a [`RateFit`] is computed from.
pub const MIN_POINTS: usize = 5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { got: usize, need: usize },

    #[error("invalid window ({0}, {1})")]
    InvalidWindow(f64, f64),
}

/// A straight line in log-log coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub window: (f64, f64),
    pub points: usize,
}

/// Ordinary least squares on `(log t, log v)`. Needs two points with distinct
/// `t` and positive values.
pub fn loglog_fit(points: &[(f64, f64)]) -> Result<LineFit, FitError> {
    if points.len() < 2 {
        return Err(FitError::TooFewPoints { got: points.len(), need: 2 });
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(t, v)| (t.ln(), v.ln())).collect();
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(FitError::InvalidWindow(points[0].0, points[points.len() - 1].0));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = logs.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    // A flat series is fitted exactly by the zero-slope line.
    let r_squared = if syy <= f64::EPSILON * n * my.abs().max(1.0) { 1.0 } else { (1.0 - sse / syy).clamp(0.0, 1.0) };
    Ok(LineFit { slope, intercept, r_squared })
}

/// Fits the points with `t` in `window`.
///
/// Nonpositive or non-finite values cannot be logged, so the window is shrunk
/// to the longest run of usable values inside it and a warning is logged.
pub fn fit_rate(values: &[(f64, f64)], window: (f64, f64)) -> Result<RateFit, FitError> {
    let (lo, hi) = window;
    if !(lo > 0.0 && lo <= hi) {
        return Err(FitError::InvalidWindow(lo, hi));
    }
    let inside: Vec<(f64, f64)> = values.iter().copied().filter(|&(t, _)| t >= lo && t <= hi).collect();
    let usable = |v: f64| v > 0.0 && v.is_finite();
    let mut best = 0..0;
    let mut start = 0;
    for i in 0..=inside.len() {
        if i == inside.len() || !usable(inside[i].1) {
            if i - start > best.len() {
                best = start..i;
            }
            start = i + 1;
        }
    }
    let kept = &inside[best];
    if kept.len() < inside.len() {
        log::warn!(
            "window ({lo}, {hi}) holds nonpositive values; fitting {} of {} points",
            kept.len(),
            inside.len()
        );
    }
    if kept.len() < MIN_POINTS {
        return Err(FitError::TooFewPoints { got: kept.len(), need: MIN_POINTS });
    }
    let line = loglog_fit(kept)?;
    Ok(RateFit {
        slope: line.slope,
        intercept: line.intercept,
        r_squared: line.r_squared,
        window: (kept[0].0, kept[kept.len() - 1].0),
        points: kept.len(),
    })
}

/// Running minimum of a series, skipping absent entries.
pub fn min_so_far(values: impl IntoIterator<Item = (f64, Option<f64>)>) -> Vec<(f64, f64)> {
    let mut best = f64::INFINITY;
    values
        .into_iter()
        .filter_map(|(t, v)| {
            let v = v?;
            best = best.min(v);
            Some((t, best))
        })
        .collect()
}

/// The last decade `[T/10, T]` of a run.
pub fn last_decade(horizon: usize) -> (f64, f64) {
    let t = horizon as f64;
    ((t / 10.0).max(1.0), t)
}
