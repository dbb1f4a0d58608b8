//! Saddle gap, game stationarity and optimization stationarity.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::MinimaxProblem;
use crate::solve::{bisect_min, golden_max, inner_solve_strongly_convex, maximize, Smooth};
use crate::vector::{check_dim, linalg};

pub const DEFAULT_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureResult {
    pub value: f64,
    pub exact: bool,
    pub inner_iterations: usize,
    pub tolerance_used: f64,
}

/// Optimal value of an inner problem together with its solution.
pub(crate) struct InnerValue {
    pub value: f64,
    pub point: Vec<f64>,
    pub unique: bool,
    pub exact: bool,
    pub iterations: usize,
}

/// `max_{y in Y} f(x, y)`.
pub(crate) fn inner_max(problem: &MinimaxProblem, x: &[f64], tol: f64) -> Result<InnerValue> {
    if let Some(sol) = problem.argmax_y(x) {
        return Ok(InnerValue {
            value: problem.eval_f(x, &sol.point),
            point: sol.point,
            unique: sol.unique,
            exact: true,
            iterations: 0,
        });
    }
    let set = problem.set_y();
    if !set.is_bounded() {
        return Err(Error::MeasureUnavailable("inner maximization over an unbounded set".into()));
    }
    let value = |y: &[f64]| Ok(problem.eval_f(x, y));
    let grad = |y: &[f64]| Ok(problem.grad_y(x, y));
    let start = set.project_raw(&vec![0.0; set.dim()]);
    let opt = maximize(
        &Smooth { value: &value, grad: &grad },
        set,
        problem.lipschitz(),
        problem.structure().concave_in_y,
        &start,
        tol,
    )?;
    Ok(InnerValue { value: opt.value, point: opt.point, unique: false, exact: false, iterations: opt.iterations })
}

/// `min_{x in X} f(x, y)`.
pub(crate) fn inner_min(problem: &MinimaxProblem, y: &[f64], tol: f64) -> Result<InnerValue> {
    let t = problem.transposed();
    let v = inner_max(&t, y, tol)?;
    Ok(InnerValue { value: -v.value, ..v })
}

/// `max_y f(x, y) - min_x f(x, y)`, clamped at zero.
pub fn saddle_gap(problem: &MinimaxProblem, x: &[f64], y: &[f64], tol: f64) -> Result<MeasureResult> {
    problem.require_feasible(x, y)?;
    let upper = inner_max(problem, x, tol)?;
    let lower = inner_min(problem, y, tol)?;
    Ok(MeasureResult {
        value: (upper.value - lower.value).max(0.0),
        exact: upper.exact && lower.exact,
        inner_iterations: upper.iterations + lower.iterations,
        tolerance_used: if upper.exact && lower.exact { 0.0 } else { tol },
    })
}

/// Normal-cone residuals of `grad_x f` on X and `-grad_y f` on Y.
pub fn game_stationarity(problem: &MinimaxProblem, x: &[f64], y: &[f64]) -> Result<(MeasureResult, MeasureResult)> {
    problem.require_feasible(x, y)?;
    let gx = problem.grad_x(x, y);
    let gy: Vec<f64> = problem.grad_y(x, y).into_iter().map(|g| -g).collect();
    let wrap = |d: crate::sets::NormalConeDistance| MeasureResult {
        value: d.value,
        exact: d.exact,
        inner_iterations: 0,
        tolerance_used: 0.0,
    };
    Ok((
        wrap(problem.set_x().normal_cone_distance(x, &gx)?),
        wrap(problem.set_y().normal_cone_distance(y, &gy)?),
    ))
}

/// `|prox_{phi/r}(z) - z|` with `phi(x) = max_y f(x, y)` restricted to X.
pub fn os_stationarity(problem: &MinimaxProblem, z: &[f64], r: f64, tol: f64) -> Result<MeasureResult> {
    let w = os_prox(problem, z, r, tol)?;
    Ok(MeasureResult {
        value: linalg::dist(&w.point, z),
        exact: false,
        inner_iterations: w.iterations,
        tolerance_used: tol,
    })
}

pub(crate) struct ProxPoint {
    pub point: Vec<f64>,
    pub iterations: usize,
}

pub(crate) fn os_prox(problem: &MinimaxProblem, z: &[f64], r: f64, tol: f64) -> Result<ProxPoint> {
    check_dim(z.len(), problem.dim_x())?;
    let l = problem.lipschitz();
    if !(r > l) {
        return Err(Error::InvalidInput(format!("proximal weight r = {r} must exceed L = {l}")));
    }
    if !problem.set_y().is_bounded() {
        return Err(Error::MeasureUnavailable("value function needs a bounded Y".into()));
    }
    let sx = problem.set_x();
    let mu = r - l;
    if sx.dim() == 1 {
        return prox_1d(problem, z[0], r, mu, tol);
    }
    if problem.structure().concave_in_y {
        return prox_by_duality(problem, z, r, tol);
    }
    // primal projected gradient with the Danskin direction
    let mut failure = None;
    let grad = |x: &[f64]| -> Vec<f64> {
        match inner_max(problem, x, tol * 1e-2) {
            Ok(inner) => {
                let g = problem.grad_x(x, &inner.point);
                linalg::axpy(&g, r, &linalg::sub(x, z))
            }
            Err(e) => {
                failure.get_or_insert(e);
                vec![f64::NAN; x.len()]
            }
        }
    };
    let smoothness = r + l + l * l / mu;
    let sol = inner_solve_strongly_convex(grad, sx, mu, smoothness, z, tol);
    if let Some(e) = failure {
        return Err(e);
    }
    let sol = sol?;
    Ok(ProxPoint { point: sol.point.into_inner(), iterations: sol.iterations })
}

fn prox_1d(problem: &MinimaxProblem, z: f64, r: f64, mu: f64, tol: f64) -> Result<ProxPoint> {
    let sx = problem.set_x();
    // a subgradient of phi at the projected anchor bounds the prox displacement
    let anchor = sx.project_raw(&[z])[0];
    let at_anchor = inner_max(problem, &[anchor], tol)?;
    let g = problem.grad_x(&[anchor], &at_anchor.point)[0] + r * (anchor - z);
    let radius = 2.0 * g.abs() / mu + 1e-12 * (1.0 + anchor.abs());
    let (mut lo, mut hi) = (anchor - radius, anchor + radius);
    if let Some((a, b)) = sx.interval() {
        lo = lo.max(a);
        hi = hi.min(b);
    }
    let oracle_unique = problem.argmax_y(&[anchor]).is_some_and(|s| s.unique);
    if oracle_unique {
        let deriv = |x: f64| -> Result<f64> {
            let inner = inner_max(problem, &[x], tol)?;
            if !inner.unique {
                return Err(Error::MeasureUnavailable("tie in the inner maximizer".into()));
            }
            Ok(problem.grad_x(&[x], &inner.point)[0] + r * (x - z))
        };
        if let Ok((w, iterations)) = bisect_min(&deriv, lo, hi) {
            return Ok(ProxPoint { point: vec![w], iterations });
        }
    }
    let neg_psi = |x: f64| -> Result<f64> {
        let inner = inner_max(problem, &[x], tol)?;
        Ok(-(inner.value + 0.5 * r * (x - z) * (x - z)))
    };
    let opt = golden_max(&neg_psi, lo, hi)?;
    Ok(ProxPoint { point: opt.point, iterations: opt.iterations })
}

/// Swaps min and max: for concave inner problems the prox point is the
/// primal solution at the maximizer of the concave dual
/// `h(y) = min_x f(x, y) + r/2 |x - z|^2`.
fn prox_by_duality(problem: &MinimaxProblem, z: &[f64], r: f64, tol: f64) -> Result<ProxPoint> {
    let l = problem.lipschitz();
    let mu = r - l;
    let primal = |y: &[f64]| -> Result<Vec<f64>> {
        let grad = |x: &[f64]| linalg::axpy(&problem.grad_x(x, y), r, &linalg::sub(x, z));
        let sol = inner_solve_strongly_convex(grad, problem.set_x(), mu, l + r, z, tol * 1e-2)?;
        Ok(sol.point.into_inner())
    };
    let value = |y: &[f64]| -> Result<f64> {
        let x = primal(y)?;
        Ok(problem.eval_f(&x, y) + 0.5 * r * linalg::dist_sq(&x, z))
    };
    let grad = |y: &[f64]| -> Result<Vec<f64>> {
        let x = primal(y)?;
        Ok(problem.grad_y(&x, y))
    };
    let sy = problem.set_y();
    let start = sy.project_raw(&vec![0.0; sy.dim()]);
    let opt = maximize(&Smooth { value: &value, grad: &grad }, sy, l + l * l / mu, true, &start, tol)?;
    Ok(ProxPoint { point: primal(&opt.point)?, iterations: opt.iterations })
}
