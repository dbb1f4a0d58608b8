//! The regularized function, its four-block operator and the step rules.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::SolverParams;
use crate::problem::MinimaxProblem;
use crate::vector::{check_dim, linalg, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgorithmKind {
    DsOgda,
    DsGda,
    Ogda,
    Eg,
    Gda,
}

impl AlgorithmKind {
    pub const ALL: [AlgorithmKind; 5] =
        [AlgorithmKind::DsOgda, AlgorithmKind::DsGda, AlgorithmKind::Ogda, AlgorithmKind::Eg, AlgorithmKind::Gda];

    pub fn as_str(self) -> &'static str {
        match self {
            AlgorithmKind::DsOgda => "ds_ogda",
            AlgorithmKind::DsGda => "ds_gda",
            AlgorithmKind::Ogda => "ogda",
            AlgorithmKind::Eg => "eg",
            AlgorithmKind::Gda => "gda",
        }
    }

    /// Whether the anchors `z`, `v` move.
    pub fn is_smoothed(self) -> bool {
        matches!(self, AlgorithmKind::DsOgda | AlgorithmKind::DsGda)
    }

    /// The parameters the rule actually uses.
    pub fn effective_params(self, params: &SolverParams) -> SolverParams {
        if self.is_smoothed() {
            *params
        } else {
            params.unsmoothed()
        }
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AlgorithmKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown algorithm '{s}'")))
    }
}

/// `G = (grad_x F, -grad_y F, grad_z F, -grad_v F)`.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorValue {
    pub g_x: Vector,
    pub g_y: Vector,
    pub g_z: Vector,
    pub g_v: Vector,
}

/// Iterate `(x, y, z, v)` with the operator value from the previous step.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverState {
    x: Vector,
    y: Vector,
    z: Vector,
    v: Vector,
    prev_g: OperatorValue,
    t: usize,
}

impl SolverState {
    /// Starting state with anchors at the initial point and `G^{-1} = G^0`.
    pub fn initial(
        kind: AlgorithmKind,
        problem: &MinimaxProblem,
        params: &SolverParams,
        x0: &[f64],
        y0: &[f64],
    ) -> Result<Self> {
        Self::at(problem, &kind.effective_params(params), x0, y0, x0, y0)
    }

    /// A state at an arbitrary point, with the stored operator evaluated there.
    pub fn at(
        problem: &MinimaxProblem,
        params: &SolverParams,
        x: &[f64],
        y: &[f64],
        z: &[f64],
        v: &[f64],
    ) -> Result<Self> {
        problem.require_feasible(x, y)?;
        check_dim(z.len(), problem.dim_x())?;
        check_dim(v.len(), problem.dim_y())?;
        let prev_g = operator_raw(problem, params, x, y, z, v)?;
        Ok(SolverState {
            x: Vector::from_slice(x)?,
            y: Vector::from_slice(y)?,
            z: Vector::from_slice(z)?,
            v: Vector::from_slice(v)?,
            prev_g,
            t: 0,
        })
    }

    pub fn x(&self) -> &Vector {
        &self.x
    }

    pub fn y(&self) -> &Vector {
        &self.y
    }

    pub fn z(&self) -> &Vector {
        &self.z
    }

    pub fn v(&self) -> &Vector {
        &self.v
    }

    pub fn prev_g(&self) -> &OperatorValue {
        &self.prev_g
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// The same state seen from the transposed problem.
    pub fn transposed(&self) -> SolverState {
        let g = &self.prev_g;
        SolverState {
            x: self.y.clone(),
            y: self.x.clone(),
            z: self.v.clone(),
            v: self.z.clone(),
            prev_g: OperatorValue { g_x: g.g_y.clone(), g_y: g.g_x.clone(), g_z: g.g_v.clone(), g_v: g.g_z.clone() },
            t: self.t,
        }
    }
}

/// `F(x,y,z,v) = f(x,y) + r_x/2 |x - z|^2 - r_y/2 |y - v|^2`.
pub fn regularized_value(
    problem: &MinimaxProblem,
    params: &SolverParams,
    x: &[f64],
    y: &[f64],
    z: &[f64],
    v: &[f64],
) -> Result<f64> {
    problem.require_feasible(x, y)?;
    check_dim(z.len(), problem.dim_x())?;
    check_dim(v.len(), problem.dim_y())?;
    Ok(regularized_raw(problem, params, x, y, z, v))
}

pub(crate) fn regularized_raw(
    problem: &MinimaxProblem,
    params: &SolverParams,
    x: &[f64],
    y: &[f64],
    z: &[f64],
    v: &[f64],
) -> f64 {
    problem.eval_f(x, y) + 0.5 * params.r_x * linalg::dist_sq(x, z) - 0.5 * params.r_y * linalg::dist_sq(y, v)
}

pub fn eval_operator(problem: &MinimaxProblem, params: &SolverParams, state: &SolverState) -> Result<OperatorValue> {
    problem.require_feasible(&state.x, &state.y)?;
    operator_raw(problem, params, &state.x, &state.y, &state.z, &state.v)
}

fn operator_raw(
    problem: &MinimaxProblem,
    params: &SolverParams,
    x: &[f64],
    y: &[f64],
    z: &[f64],
    v: &[f64],
) -> Result<OperatorValue> {
    let gx = problem.grad_x(x, y);
    let gy = problem.grad_y(x, y);
    check_dim(gx.len(), x.len())?;
    check_dim(gy.len(), y.len())?;
    let g_x = gx.iter().zip(x.iter().zip(z)).map(|(g, (a, b))| g + params.r_x * (a - b)).collect();
    let g_y = gy.iter().zip(y.iter().zip(v)).map(|(g, (a, b))| -g + params.r_y * (a - b)).collect();
    let g_z = z.iter().zip(x).map(|(a, b)| params.r_x * (a - b)).collect();
    let g_v = v.iter().zip(y).map(|(a, b)| params.r_y * (a - b)).collect();
    Ok(OperatorValue {
        g_x: Vector::new(g_x)?,
        g_y: Vector::new(g_y)?,
        g_z: Vector::new(g_z)?,
        g_v: Vector::new(g_v)?,
    })
}

/// One iteration of the chosen rule.
pub fn step(
    kind: AlgorithmKind,
    problem: &MinimaxProblem,
    params: &SolverParams,
    state: &SolverState,
) -> Result<SolverState> {
    let p = kind.effective_params(params);
    let next_t = state.t + 1;
    let diverged = |e: Error| match e {
        Error::NonFinite { .. } => Error::Diverged { iteration: next_t },
        other => other,
    };
    let current = operator_raw(problem, &p, &state.x, &state.y, &state.z, &state.v).map_err(diverged)?;
    let finish = |x: Vec<f64>, y: Vec<f64>, z: Vec<f64>, v: Vec<f64>, g: OperatorValue| -> Result<SolverState> {
        let wrap = |raw: Vec<f64>| Vector::new(raw).map_err(diverged);
        Ok(SolverState { x: wrap(x)?, y: wrap(y)?, z: wrap(z)?, v: wrap(v)?, prev_g: g, t: next_t })
    };
    let (sx, sy) = (problem.set_x(), problem.set_y());

    match kind {
        AlgorithmKind::DsOgda | AlgorithmKind::Ogda => {
            let prev = &state.prev_g;
            let x: Vec<f64> = state
                .x
                .iter()
                .zip(current.g_x.iter().zip(prev.g_x.iter()))
                .map(|(a, (g, h))| a - 2.0 * p.eta_x * g + p.eta_x * h)
                .collect();
            let y: Vec<f64> = state
                .y
                .iter()
                .zip(current.g_y.iter().zip(prev.g_y.iter()))
                .map(|(a, (g, h))| a - 2.0 * p.eta_y * g + p.eta_y * h)
                .collect();
            let (z, v) = anchors(state, &p);
            finish(sx.project_raw(&x), sy.project_raw(&y), z, v, current)
        }
        AlgorithmKind::DsGda | AlgorithmKind::Gda => {
            let x = linalg::axpy(&state.x, -p.eta_x, &current.g_x);
            let y = linalg::axpy(&state.y, -p.eta_y, &current.g_y);
            let (z, v) = anchors(state, &p);
            finish(sx.project_raw(&x), sy.project_raw(&y), z, v, current)
        }
        AlgorithmKind::Eg => {
            let xh = sx.project_raw(&linalg::axpy(&state.x, -p.eta_x, &current.g_x));
            let yh = sy.project_raw(&linalg::axpy(&state.y, -p.eta_y, &current.g_y));
            let mid = operator_raw(problem, &p, &xh, &yh, &state.z, &state.v).map_err(diverged)?;
            let x = linalg::axpy(&state.x, -p.eta_x, &mid.g_x);
            let y = linalg::axpy(&state.y, -p.eta_y, &mid.g_y);
            finish(sx.project_raw(&x), sy.project_raw(&y), state.z.to_vec(), state.v.to_vec(), current)
        }
    }
}

/// `z + beta_x (x - z)` and `v + beta_y (y - v)`, using the old `x`, `y`.
fn anchors(state: &SolverState, p: &SolverParams) -> (Vec<f64>, Vec<f64>) {
    let z = state.z.iter().zip(state.x.iter()).map(|(z, x)| z + p.beta_x * (x - z)).collect();
    let v = state.v.iter().zip(state.y.iter()).map(|(v, y)| v + p.beta_y * (y - v)).collect();
    (z, v)
}

/// The inexact proximal-point error of three consecutive smoothed states:
/// `eta * [G_pd^{t+1} - 2 G_pd^t + G_pd^{t-1}; G_ex^{t+1} - G_ex^t]`,
/// concatenated in the order `(x, y, z, v)`.
pub fn ppm_error(
    problem: &MinimaxProblem,
    params: &SolverParams,
    prev: &SolverState,
    curr: &SolverState,
    next: &SolverState,
) -> Result<Vector> {
    let g0 = eval_operator(problem, params, prev)?;
    let g1 = eval_operator(problem, params, curr)?;
    let g2 = eval_operator(problem, params, next)?;
    let second = |eta: f64, a: &Vector, b: &Vector, c: &Vector| -> Vec<f64> {
        a.iter().zip(b.iter().zip(c.iter())).map(|(a, (b, c))| eta * (c - 2.0 * b + a)).collect()
    };
    let first = |eta: f64, b: &Vector, c: &Vector| -> Vec<f64> {
        b.iter().zip(c.iter()).map(|(b, c)| eta * (c - b)).collect()
    };
    let mut out = second(params.eta_x, &g0.g_x, &g1.g_x, &g2.g_x);
    out.extend(second(params.eta_y, &g0.g_y, &g1.g_y, &g2.g_y));
    out.extend(first(params.eta_x, &g1.g_z, &g2.g_z));
    out.extend(first(params.eta_y, &g1.g_v, &g2.g_v));
    Vector::new(out)
}

/// Alias kept next to the step rules: see [`MinimaxProblem::transposed`].
pub fn transpose_problem(problem: &MinimaxProblem) -> MinimaxProblem {
    problem.transposed()
}
