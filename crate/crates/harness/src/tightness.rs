//! GDA on `f(x, y) = x^2 y / 2` started at `(sqrt(2 eps), 1)`: the gap cannot
//! fall faster than `(1 - eta)^(2t) eps`.

use dsogda::problems::{make_instance, InstanceSpec};
use dsogda::runner::trajectory;
use dsogda::{saddle_gap, AlgorithmKind, Regime, SolverParams};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Allowed shortfall of the gap below the bound.
pub const BOUND_SLACK: f64 = 1e-12;
/// Allowed relative error of the scalar recurrence.
pub const RECURRENCE_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightnessRow {
    pub t: usize,
    pub x: f64,
    pub y: f64,
    pub gap: f64,
    pub bound: f64,
    /// `|x^t - (1 - eta y^(t-1)) x^(t-1)| / |x^t|`; zero at `t = 0`.
    pub recurrence_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub eta: f64,
    pub eps: f64,
    pub horizon: usize,
    pub rows: Vec<TightnessRow>,
    pub bound_holds: bool,
    pub recurrence_holds: bool,
}

impl TightnessReport {
    pub fn holds(&self) -> bool {
        self.bound_holds && self.recurrence_holds
    }
}

pub fn tightness(eta: f64, eps: f64, horizon: usize) -> Result<TightnessReport> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(HarnessError::Config(format!("eta must lie in (0, 1), got {eta}")));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(HarnessError::Config(format!("eps must be positive, got {eps}")));
    }
    let problem = make_instance(&InstanceSpec::HardGda { boxed: false })?;
    let params = SolverParams::symmetric(0.0, eta, 0.0, Regime::Manual)?;
    let x0 = (2.0 * eps).sqrt();
    let states = trajectory(AlgorithmKind::Gda, &problem, &params, &[x0], &[1.0], horizon)?;
    let mut rows = Vec::with_capacity(states.len());
    for (t, s) in states.iter().enumerate() {
        let (x, y) = (s.x()[0], s.y()[0]);
        let gap = saddle_gap(&problem, s.x(), s.y(), dsogda::measures::DEFAULT_TOL)?.value;
        let recurrence_error = if t == 0 {
            0.0
        } else {
            let p = &states[t - 1];
            let predicted = (1.0 - eta * p.y()[0]) * p.x()[0];
            (x - predicted).abs() / x.abs().max(f64::MIN_POSITIVE)
        };
        let bound = (1.0 - eta).powi(2 * t as i32) * eps;
        rows.push(TightnessRow { t, x, y, gap, bound, recurrence_error });
    }
    let bound_holds = rows.iter().all(|r| r.gap >= r.bound - BOUND_SLACK);
    let recurrence_holds = rows.iter().all(|r| r.recurrence_error <= RECURRENCE_TOL);
    Ok(TightnessReport { eta, eps, horizon, rows, bound_holds, recurrence_holds })
}
