//! The potential function of the smoothed iteration and its descent check.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::{regularized_raw, SolverState};
use crate::params::SolverParams;
use crate::problem::{MinimaxProblem, StructureInfo};
use crate::solve::{inner_solve_strongly_convex, maximize, Smooth};
use crate::vector::linalg;

/// Inner solves nested inside another solve use this much tighter tolerance.
const NESTED_FACTOR: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LyapunovBreakdown {
    /// `F` at the current state.
    pub f_val: f64,
    /// `d(y, z, v) = min_x F`.
    pub d_val: f64,
    /// `q(z) = max_y min_x f + r_x/2 |x - z|^2`.
    pub q_val: f64,
    /// Proximity terms for `x`, `y`, `z`, `v` against the previous state.
    pub quad_terms: [f64; 4],
    pub phi: f64,
}

/// Solutions of the auxiliary subproblems built from `F`.
struct Subproblems<'a> {
    problem: &'a MinimaxProblem,
    params: &'a SolverParams,
    tol: f64,
}

impl Subproblems<'_> {
    fn l(&self) -> f64 {
        self.problem.lipschitz()
    }

    /// `x(y, z, v) = argmin_x F`.
    fn x_given_y(&self, y: &[f64], z: &[f64], tol: f64) -> Result<Vec<f64>> {
        let (p, rx) = (self.problem, self.params.r_x);
        let grad = |x: &[f64]| linalg::axpy(&p.grad_x(x, y), rx, &linalg::sub(x, z));
        let sol = inner_solve_strongly_convex(grad, p.set_x(), rx - self.l(), rx + self.l(), z, tol)?;
        Ok(sol.point.into_inner())
    }

    /// `y(x, z, v) = argmax_y F`.
    fn y_given_x(&self, x: &[f64], v: &[f64], tol: f64) -> Result<Vec<f64>> {
        let (p, ry) = (self.problem, self.params.r_y);
        let grad = |y: &[f64]| {
            let g = p.grad_y(x, y);
            g.iter().zip(y.iter().zip(v)).map(|(g, (a, b))| -g + ry * (a - b)).collect()
        };
        let sol = inner_solve_strongly_convex(grad, p.set_y(), ry - self.l(), ry + self.l(), v, tol)?;
        Ok(sol.point.into_inner())
    }

    /// `x(z, v) = argmin_x max_y F`.
    fn x_given_anchors(&self, z: &[f64], v: &[f64]) -> Result<Vec<f64>> {
        let (p, rx, ry, l) = (self.problem, self.params.r_x, self.params.r_y, self.l());
        let inner_tol = self.tol * NESTED_FACTOR;
        let mut failure = None;
        let grad = |x: &[f64]| match self.y_given_x(x, v, inner_tol) {
            Ok(y) => linalg::axpy(&p.grad_x(x, &y), rx, &linalg::sub(x, z)),
            Err(e) => {
                failure.get_or_insert(e);
                vec![f64::NAN; x.len()]
            }
        };
        let smoothness = l + rx + l * l / (ry - l);
        let sol = inner_solve_strongly_convex(grad, p.set_x(), rx - l, smoothness, z, self.tol);
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(sol?.point.into_inner())
    }

    /// `d(y, z, v) = min_x F(x, y, z, v)`.
    fn d(&self, y: &[f64], z: &[f64], v: &[f64]) -> Result<f64> {
        let x = self.x_given_y(y, z, self.tol)?;
        Ok(regularized_raw(self.problem, self.params, &x, y, z, v))
    }

    /// `q(z)` through the reduced form `max_y min_x f + r_x/2 |x - z|^2`.
    fn q(&self, z: &[f64]) -> Result<f64> {
        let (p, rx, l) = (self.problem, self.params.r_x, self.l());
        let sy = p.set_y();
        if !sy.is_bounded() {
            return Err(Error::DiagnosticUnavailable("q needs a bounded Y".into()));
        }
        let concave = p.structure().concave_in_y;
        if !concave && sy.dim() > 2 {
            return Err(Error::DiagnosticUnavailable(format!(
                "q needs concavity in y or dim_y <= 2 (got {})",
                sy.dim()
            )));
        }
        let inner_tol = self.tol * NESTED_FACTOR;
        let value = |y: &[f64]| -> Result<f64> {
            let x = self.x_given_y(y, z, inner_tol)?;
            Ok(p.eval_f(&x, y) + 0.5 * rx * linalg::dist_sq(&x, z))
        };
        let grad = |y: &[f64]| -> Result<Vec<f64>> {
            let x = self.x_given_y(y, z, inner_tol)?;
            Ok(p.grad_y(&x, y))
        };
        let start = sy.project_raw(&vec![0.0; sy.dim()]);
        let opt = maximize(&Smooth { value: &value, grad: &grad }, sy, l + l * l / (rx - l), concave, &start, self.tol)
            .map_err(|e| match e {
                Error::MeasureUnavailable(m) => Error::DiagnosticUnavailable(m),
                other => other,
            })?;
        Ok(opt.value)
    }
}

fn require_weights(problem: &MinimaxProblem, params: &SolverParams) -> Result<()> {
    let l = problem.lipschitz();
    if params.r_x < 2.0 * l || params.r_y < 2.0 * l {
        return Err(Error::InvalidInput(format!(
            "potential needs r_x, r_y >= 2L = {} (got {}, {})",
            2.0 * l,
            params.r_x,
            params.r_y
        )));
    }
    Ok(())
}

/// `c * |a - b|^2` with the convention that an infinite coefficient on a zero
/// rate drops the term.
fn weighted(coefficient_num: f64, rate: f64, a: &[f64], b: &[f64]) -> f64 {
    if rate == 0.0 {
        0.0
    } else {
        coefficient_num / rate * linalg::dist_sq(a, b)
    }
}

/// `F - 2d + 2q` plus proximity terms with `prev` as the primed point.
pub fn lyapunov(
    problem: &MinimaxProblem,
    params: &SolverParams,
    curr: &SolverState,
    prev: &SolverState,
    tol: f64,
) -> Result<LyapunovBreakdown> {
    require_weights(problem, params)?;
    let sub = Subproblems { problem, params, tol };
    breakdown(&sub, curr, prev)
}

fn breakdown(sub: &Subproblems<'_>, curr: &SolverState, prev: &SolverState) -> Result<LyapunovBreakdown> {
    let p = sub.params;
    let (x, y, z, v) = (curr.x(), curr.y(), curr.z(), curr.v());
    let f_val = regularized_raw(sub.problem, p, x, y, z, v);
    let d_val = sub.d(y, z, v)?;
    let q_val = sub.q(z)?;
    let quad_terms = [
        weighted(0.5, p.eta_x, x, prev.x()),
        weighted(0.5, p.eta_y, y, prev.y()),
        weighted(0.5 * p.r_x, p.beta_x, z, prev.z()),
        weighted(0.5 * p.r_y, p.beta_y, v, prev.v()),
    ];
    let phi = f_val - 2.0 * d_val + 2.0 * q_val + quad_terms.iter().sum::<f64>();
    if !phi.is_finite() {
        return Err(Error::DiagnosticUnavailable("potential is not finite".into()));
    }
    Ok(LyapunovBreakdown { f_val, d_val, q_val, quad_terms, phi })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DescentRecord {
    pub t: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Evaluates the per-iteration decrease of the potential against the
/// guaranteed lower bound along consecutive states `u^0, u^1, ...`.
///
/// `slack` is relative: the check holds when
/// `lhs >= rhs - slack * (1 + |lhs|)`. Inner solves run at `inner_tol`.
pub fn descent_check(
    problem: &MinimaxProblem,
    params: &SolverParams,
    states: &[SolverState],
    slack: f64,
    inner_tol: f64,
) -> Result<Vec<DescentRecord>> {
    require_weights(problem, params)?;
    if states.len() < 2 {
        return Ok(Vec::new());
    }
    let diam_x = problem.set_x().diameter();
    if !diam_x.is_finite() && params.beta_x > 0.0 {
        return Err(Error::DiagnosticUnavailable("descent bound needs a bounded X".into()));
    }
    let sub = Subproblems { problem, params, tol: inner_tol };
    let p = params;
    let mut phis = Vec::with_capacity(states.len());
    for t in 0..states.len() {
        let prev = &states[t.saturating_sub(1)];
        phis.push(breakdown(&sub, &states[t], prev)?.phi);
    }
    let mut out = Vec::with_capacity(states.len() - 1);
    for t in 0..states.len() - 1 {
        let (prev, curr, next) = (&states[t.saturating_sub(1)], &states[t], &states[t + 1]);
        let (x, y, z, v) = (curr.x(), curr.y(), curr.z(), curr.v());

        let x_star = sub.x_given_y(y, z, inner_tol)?;
        let gy = problem.grad_y(&x_star, y);
        let ascent: Vec<f64> = gy.iter().zip(y.iter().zip(v.iter())).map(|(g, (a, b))| g - p.r_y * (a - b)).collect();
        let y_plus = problem.set_y().project_raw(&linalg::axpy(y, p.eta_y, &ascent));

        let z_next = next.z();
        let x_anchor = sub.x_given_anchors(z_next, v)?;
        let y_anchor = sub.y_given_x(&x_anchor, v, inner_tol)?;
        let v_plus: Vec<f64> = v.iter().zip(&y_anchor).map(|(a, b)| a + p.beta_y * (b - a)).collect();

        let rhs = weighted(0.25, p.eta_x, x, next.x())
            + weighted(1.0 / 60.0, p.eta_y, y, &y_plus)
            + weighted(p.r_x / 8.0, p.beta_x, z, z_next)
            + weighted(p.r_y / 16.0, p.beta_y, v, &v_plus)
            + weighted(0.125, p.eta_x, x, prev.x())
            + weighted(0.125, p.eta_y, y, prev.y())
            + weighted(p.r_x / 8.0, p.beta_x, z, prev.z())
            + weighted(p.r_y / 8.0, p.beta_y, v, prev.v())
            - if p.beta_x > 0.0 { 8.0 * p.r_x * p.beta_x * diam_x * diam_x } else { 0.0 };
        let lhs = phis[t] - phis[t + 1];
        out.push(DescentRecord { t, lhs, rhs, holds: lhs >= rhs - slack * (1.0 + lhs.abs()) });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorBoundConstants {
    pub omega0: f64,
    pub omega1: Option<f64>,
}

/// Constants of the primal-dual error bound; the second one needs
/// Łojasiewicz data in y.
pub fn error_bound_constants(
    params: &SolverParams,
    structure: &StructureInfo,
    diam_y: f64,
) -> Result<ErrorBoundConstants> {
    let l = structure.lipschitz();
    let (rx, ry, by) = (params.r_x, params.r_y, params.beta_y);
    if !(rx > l && ry > l) {
        return Err(Error::DegenerateConstants(format!("need r_x, r_y > L = {l}")));
    }
    if !(by > 0.0 && by < 1.0) {
        return Err(Error::InvalidInput(format!("beta_y must lie in (0, 1), got {by}")));
    }
    let omega0 = 4.0 * ry * diam_y / (rx - l) * ((1.0 - by) / by + ry / (ry - l));
    let omega1 = structure
        .kl_y
        .map(|kl| 2.0 / ((rx - l) * kl.tau) * (ry * (1.0 - by) / by + ry * ry / (ry - l)).powf(1.0 / kl.theta));
    Ok(ErrorBoundConstants { omega0, omega1 })
}
