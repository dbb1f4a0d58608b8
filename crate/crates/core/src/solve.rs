//! Inner solvers shared by the measures and the Lyapunov diagnostic.

use crate::error::{Error, Result};
use crate::sets::ConvexSet;
use crate::vector::{check_dim, linalg, Vector};

pub const INNER_ITERATION_CAP: usize = 1_000_000;
const ACCELERATED_CAP: usize = 200_000;
const POLISH_CAP: usize = 20_000;
const GRID_SPACING_1D: f64 = 1e-3;
const GRID_SIDE_2D: usize = 101;

#[derive(Clone, Debug, PartialEq)]
pub struct InnerSolve {
    pub point: Vector,
    pub iterations: usize,
    /// Gradient-mapping norm at the returned point.
    pub residual: f64,
}

/// Projected gradient with step `1/smoothness` on a strongly convex objective.
///
/// Stops once `smoothness * |x - proj(x - grad/smoothness)| <= tol`. With the
/// smoothness clamped to at least one this also bounds the unit-step residual
/// `|x - proj(x - grad)|`.
pub fn inner_solve_strongly_convex<G>(
    mut grad: G,
    set: &ConvexSet,
    modulus: f64,
    smoothness: f64,
    start: &[f64],
    tol: f64,
) -> Result<InnerSolve>
where
    G: FnMut(&[f64]) -> Vec<f64>,
{
    if !(modulus > 0.0) || !(smoothness > 0.0) || !(tol > 0.0) {
        return Err(Error::InvalidInput(format!(
            "inner solve needs positive modulus, smoothness and tolerance (got {modulus}, {smoothness}, {tol})"
        )));
    }
    check_dim(start.len(), set.dim())?;
    let lip = smoothness.max(modulus).max(1.0);
    let mut x = set.project_raw(start);
    let mut residual = f64::INFINITY;
    for k in 0..INNER_ITERATION_CAP {
        let g = grad(&x);
        if !linalg::all_finite(&g) {
            return Err(Error::NonFinite { index: g.iter().position(|v| !v.is_finite()).unwrap_or(0) });
        }
        let next = set.project_raw(&linalg::axpy(&x, -1.0 / lip, &g));
        residual = lip * linalg::dist(&x, &next);
        if residual <= tol {
            return Ok(InnerSolve { point: Vector::new(x)?, iterations: k, residual });
        }
        x = next;
    }
    Err(Error::ConvergenceFailure { iterations: INNER_ITERATION_CAP, residual })
}

pub(crate) struct Optimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
}

/// A scalar objective with gradient, both fallible so nested solves can
/// report failure.
pub(crate) struct Smooth<'a> {
    pub value: &'a dyn Fn(&[f64]) -> Result<f64>,
    pub grad: &'a dyn Fn(&[f64]) -> Result<Vec<f64>>,
}

/// Maximizes over `set`.
///
/// Concave objectives are solved globally: golden section on intervals,
/// accelerated projected ascent otherwise. Without concavity only one- and
/// two-dimensional bounded sets are handled, by a grid followed by a local
/// polish.
pub(crate) fn maximize(
    obj: &Smooth<'_>,
    set: &ConvexSet,
    smoothness: f64,
    concave: bool,
    start: &[f64],
    tol: f64,
) -> Result<Optimum> {
    if let Some((lo, hi)) = set.interval() {
        let f = |t: f64| (obj.value)(&[t]);
        return if concave {
            golden_max(&f, lo, hi)
        } else {
            let n = (((hi - lo) / GRID_SPACING_1D).ceil() as usize).max(200);
            let h = (hi - lo) / n as f64;
            let mut best = (f64::NEG_INFINITY, lo);
            for k in 0..=n {
                let t = if k == n { hi } else { lo + h * k as f64 };
                let val = f(t)?;
                if val > best.0 {
                    best = (val, t);
                }
            }
            let refined = golden_max(&f, (best.1 - h).max(lo), (best.1 + h).min(hi))?;
            Ok(Optimum { iterations: refined.iterations + n + 1, ..refined })
        };
    }
    if concave {
        return accelerated_ascent(obj, set, smoothness, start, tol);
    }
    if set.dim() <= 2 {
        if let Some((lower, upper)) = set.bounding_box() {
            return grid_then_polish(obj, set, smoothness, &lower, &upper, tol);
        }
    }
    Err(Error::MeasureUnavailable(format!(
        "nonconcave maximization over a {}-dimensional set without an oracle",
        set.dim()
    )))
}

/// Golden-section search for the maximum of a unimodal function on `[lo, hi]`.
pub(crate) fn golden_max(f: &dyn Fn(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<Optimum> {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let width0 = (b - a).abs().max(1e-300);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    let mut iterations = 2;
    while b - a > 1e-13 * width0.max(1.0) && iterations < 400 {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
        iterations += 1;
    }
    let mut best = Optimum { point: vec![0.5 * (a + b)], value: f(0.5 * (a + b))?, iterations: iterations + 1 };
    for end in [lo, hi] {
        let val = f(end)?;
        if val > best.value {
            best = Optimum { point: vec![end], value: val, iterations: best.iterations + 1 };
        }
    }
    Ok(best)
}

/// Root of a nondecreasing derivative on `[lo, hi]`, i.e. the minimizer of a
/// convex function; clamps to an endpoint when the sign does not change.
pub(crate) fn bisect_min(deriv: &dyn Fn(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<(f64, usize)> {
    if deriv(lo)? >= 0.0 {
        return Ok((lo, 1));
    }
    if deriv(hi)? <= 0.0 {
        return Ok((hi, 2));
    }
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 2;
    while iterations < 200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if deriv(m)? > 0.0 {
            b = m;
        } else {
            a = m;
        }
        iterations += 1;
    }
    Ok((0.5 * (a + b), iterations))
}

fn ascent_residual(set: &ConvexSet, y: &[f64], g: &[f64], lip: f64) -> (Vec<f64>, f64) {
    let next = set.project_raw(&linalg::axpy(y, 1.0 / lip, g));
    let res = lip * linalg::dist(y, &next);
    (next, res)
}

fn accelerated_ascent(obj: &Smooth<'_>, set: &ConvexSet, smoothness: f64, start: &[f64], tol: f64) -> Result<Optimum> {
    let lip = smoothness.max(1.0);
    let mut y = set.project_raw(start);
    let mut w = y.clone();
    let mut momentum = 1.0f64;
    let mut last_value = (obj.value)(&y)?;
    for k in 0..ACCELERATED_CAP {
        let g = (obj.grad)(&w)?;
        let (next, res) = ascent_residual(set, &w, &g, lip);
        if res <= tol {
            let value = (obj.value)(&next)?;
            return Ok(Optimum { point: next, value, iterations: k + 1 });
        }
        let value = (obj.value)(&next)?;
        let m_next = 0.5 * (1.0 + (1.0 + 4.0 * momentum * momentum).sqrt());
        if value < last_value {
            // restart the momentum when the objective drops
            momentum = 1.0;
            w = y.clone();
            continue;
        }
        let coeff = (momentum - 1.0) / m_next;
        w = next.iter().zip(&y).map(|(a, b)| a + coeff * (a - b)).collect();
        y = next;
        momentum = m_next;
        last_value = value;
    }
    Err(Error::ConvergenceFailure { iterations: ACCELERATED_CAP, residual: tol })
}

fn grid_then_polish(
    obj: &Smooth<'_>,
    set: &ConvexSet,
    smoothness: f64,
    lower: &[f64],
    upper: &[f64],
    tol: f64,
) -> Result<Optimum> {
    let side = if set.dim() == 1 { 2001 } else { GRID_SIDE_2D };
    let axis = |i: usize, k: usize| lower[i] + (upper[i] - lower[i]) * k as f64 / (side - 1) as f64;
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut evaluations = 0;
    let mut consider = |p: Vec<f64>| -> Result<()> {
        let q = set.project_raw(&p);
        let val = (obj.value)(&q)?;
        evaluations += 1;
        if best.as_ref().is_none_or(|(b, _)| val > *b) {
            best = Some((val, q));
        }
        Ok(())
    };
    if set.dim() == 1 {
        for k in 0..side {
            consider(vec![axis(0, k)])?;
        }
    } else {
        for i in 0..side {
            for j in 0..side {
                consider(vec![axis(0, i), axis(1, j)])?;
            }
        }
    }
    let (mut value, mut y) = best.expect("grid is nonempty");
    let lip = smoothness.max(1.0);
    let mut iterations = evaluations;
    for _ in 0..POLISH_CAP {
        let g = (obj.grad)(&y)?;
        let (next, res) = ascent_residual(set, &y, &g, lip);
        iterations += 1;
        let next_value = (obj.value)(&next)?;
        if next_value < value {
            break;
        }
        y = next;
        value = next_value;
        if res <= tol {
            break;
        }
    }
    Ok(Optimum { point: y, value, iterations })
}
