use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostics::lyapunov;
use crate::error::{Error, Result};
use crate::measures::{game_stationarity, os_stationarity, saddle_gap, DEFAULT_TOL};
use crate::operator::{step, AlgorithmKind, SolverState};
use crate::params::SolverParams;
use crate::problem::MinimaxProblem;

/// One row of a trace. `t` counts completed iterations.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub t: usize,
    pub f_val: f64,
    pub gap: Option<f64>,
    pub gs_x: Option<f64>,
    pub gs_y: Option<f64>,
    pub os_res: Option<f64>,
    pub lyapunov: Option<f64>,
    pub elapsed: Duration,
}

impl IterationRecord {
    pub fn gs(&self) -> Option<f64> {
        Some(self.gs_x?.max(self.gs_y?))
    }
}

/// Which measures to evaluate and how often.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureSchedule {
    pub stride: usize,
    pub gap: bool,
    pub gs: bool,
    /// Proximal weight for the optimization-stationarity residual.
    pub os_weight: Option<f64>,
    pub lyapunov: bool,
    pub tol: f64,
}

impl Default for MeasureSchedule {
    fn default() -> Self {
        MeasureSchedule { stride: 1, gap: true, gs: true, os_weight: None, lyapunov: false, tol: DEFAULT_TOL }
    }
}

impl MeasureSchedule {
    pub fn is_due(&self, t: usize, horizon: usize) -> bool {
        t == horizon || t.is_multiple_of(self.stride.max(1))
    }
}

/// Iteration index (not row index) at which each measure was smallest.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Argmins {
    pub gap: Option<usize>,
    pub gs: Option<usize>,
    pub os: Option<usize>,
    pub lyapunov: Option<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub records: Vec<IterationRecord>,
    pub argmins: Argmins,
    pub final_state: SolverState,
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("{error}")]
pub struct RunFailure {
    #[source]
    pub error: Error,
    pub partial: Vec<IterationRecord>,
}

fn argmin_by(records: &[IterationRecord], key: impl Fn(&IterationRecord) -> Option<f64>) -> Option<usize> {
    records
        .iter()
        .filter_map(|r| key(r).map(|v| (r.t, v)))
        .fold(None, |best: Option<(usize, f64)>, (t, v)| match best {
            Some((_, b)) if b <= v => best,
            _ => Some((t, v)),
        })
        .map(|(t, _)| t)
}

pub fn argmins(records: &[IterationRecord]) -> Argmins {
    Argmins {
        gap: argmin_by(records, |r| r.gap),
        gs: argmin_by(records, IterationRecord::gs),
        os: argmin_by(records, |r| r.os_res),
        lyapunov: argmin_by(records, |r| r.lyapunov),
    }
}

/// Runs `horizon` iterations, recording measures on the schedule.
///
/// The optimization-stationarity residual is taken at the anchor `z` for the
/// smoothed rules and at `x` for the plain ones.
pub fn run(
    kind: AlgorithmKind,
    problem: &MinimaxProblem,
    params: &SolverParams,
    x0: &[f64],
    y0: &[f64],
    horizon: usize,
    schedule: &MeasureSchedule,
) -> Result<RunOutput, RunFailure> {
    let fail = |error, partial| RunFailure { error, partial };
    if horizon == 0 {
        return Err(fail(Error::InvalidInput("horizon must be at least 1".into()), vec![]));
    }
    let start = Instant::now();
    let mut records = Vec::new();
    let mut state = match SolverState::initial(kind, problem, params, x0, y0) {
        Ok(s) => s,
        Err(e) => return Err(fail(e, records)),
    };
    for t in 1..=horizon {
        let next = match step(kind, problem, params, &state) {
            Ok(s) => s,
            Err(e) => return Err(fail(e, records)),
        };
        if schedule.is_due(t, horizon) {
            match record(kind, problem, params, &next, &state, schedule, start) {
                Ok(r) => records.push(r),
                Err(e) => return Err(fail(e, records)),
            }
        }
        state = next;
    }
    let argmins = argmins(&records);
    Ok(RunOutput { records, argmins, final_state: state })
}

fn record(
    kind: AlgorithmKind,
    problem: &MinimaxProblem,
    params: &SolverParams,
    state: &SolverState,
    prev: &SolverState,
    schedule: &MeasureSchedule,
    start: Instant,
) -> Result<IterationRecord> {
    let (x, y) = (state.x(), state.y());
    let f_val = problem.eval_f(x, y);
    let gap = if schedule.gap { Some(saddle_gap(problem, x, y, schedule.tol)?.value) } else { None };
    let (gs_x, gs_y) = if schedule.gs {
        let (a, b) = game_stationarity(problem, x, y)?;
        (Some(a.value), Some(b.value))
    } else {
        (None, None)
    };
    let os_res = match schedule.os_weight {
        Some(r) => {
            let anchor = if kind.is_smoothed() { state.z() } else { state.x() };
            Some(os_stationarity(problem, anchor, r, schedule.tol)?.value)
        }
        None => None,
    };
    let lyapunov = if schedule.lyapunov { Some(lyapunov(problem, params, state, prev, schedule.tol)?.phi) } else { None };
    Ok(IterationRecord { t: state.t(), f_val, gap, gs_x, gs_y, os_res, lyapunov, elapsed: start.elapsed() })
}

/// All states `u^0, ..., u^horizon`.
pub fn trajectory(
    kind: AlgorithmKind,
    problem: &MinimaxProblem,
    params: &SolverParams,
    x0: &[f64],
    y0: &[f64],
    horizon: usize,
) -> Result<Vec<SolverState>> {
    let mut states = Vec::with_capacity(horizon + 1);
    states.push(SolverState::initial(kind, problem, params, x0, y0)?);
    for _ in 0..horizon {
        let next = step(kind, problem, params, states.last().expect("nonempty"))?;
        states.push(next);
    }
    Ok(states)
}
