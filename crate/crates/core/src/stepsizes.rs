//! Step-size conditions, the symmetric feasibility interval and the regime
//! selectors.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{Regime, SolverParams};
use crate::problem::MinimaxProblem;

/// Shrink factor applied when a selector sits on a bound, so that rounding
/// never pushes a value across it.
const SAFETY: f64 = 0.99;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedConstants {
    pub sigma: f64,
    pub l_d: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub sigma3: f64,
    pub sigma5: f64,
    pub sigma6: f64,
    pub sigma8: f64,
    pub kappa: f64,
    pub s1x: f64,
    pub s2x: f64,
    pub s1y: f64,
    pub s2y: f64,
    pub s1z: f64,
    pub s2z: f64,
    pub s1v: f64,
    pub s2v: f64,
}

impl DerivedConstants {
    pub fn compute(l: f64, p: &SolverParams) -> Result<Self> {
        let (rx, ry, ex, ey, bx, by) = (p.r_x, p.r_y, p.eta_x, p.eta_y, p.beta_x, p.beta_y);
        if !(rx > l && ry > l) {
            return Err(Error::DegenerateConstants(format!(
                "smoothing weights must exceed L = {l} (got r_x = {rx}, r_y = {ry})"
            )));
        }
        let sigma = (3.0 * ex * rx + 1.0) / (ex * (rx - l));
        let l_d = (l / (rx - l) + 2.0) * l + ry;
        let sigma1 = rx / (rx - l);
        let sigma2 = sigma1;
        let sigma3 = rx * sigma1 / (ry - l) + 1.0;
        let sigma5 = ry / (ry - l);
        let sigma6 = (1.0 + 2.0 * ex * rx) / (ex * (rx - l));
        let sigma8 = (1.0 + ey * l_d) / (ey * (ry - l));
        let kappa = 4.0 * bx;
        Ok(DerivedConstants {
            sigma,
            l_d,
            sigma1,
            sigma2,
            sigma3,
            sigma5,
            sigma6,
            sigma8,
            kappa,
            s1x: 1.0 / (2.0 * ex) - (6.0 * l + 3.0 * rx + 2.0 * ry) / 2.0,
            s2x: 1.0 / (2.0 * ex) - 3.0 * (2.0 * l + rx + ry) / 2.0 - l * (rx + l) / (rx - l),
            s1y: 1.0 / (2.0 * ey)
                - l_d
                - l * sigma6 * sigma6
                - (ry + 3.0 * l) / 2.0
                - 6.0 * rx * kappa * sigma1 * sigma1
                - 2.0 * l * (rx + l) / (rx - l),
            s2y: 1.0 / (2.0 * ey) - 3.0 * (2.0 * l + rx + ry) / 2.0 - l * l / (rx - l),
            s1z: (1.0 - bx * (2.0 + 4.0 * sigma2)) * rx / (2.0 * bx)
                - rx / kappa
                - 12.0 * rx * kappa * sigma1 * sigma1 * sigma3 * sigma3,
            s2z: rx / (2.0 * bx) - 3.0 * (l + rx) / 2.0 - l * rx / (rx - l),
            s1v: (1.0 - by) * ry / (2.0 * by) - l - ry,
            s2v: ry / (2.0 * by) - 3.0 * (l + ry) / 2.0,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub satisfied: bool,
    pub violations: Vec<Violation>,
    pub constants: Option<DerivedConstants>,
}

struct Checks(Vec<Violation>);

impl Checks {
    fn le(&mut self, name: &str, lhs: f64, rhs: f64) {
        if !(lhs <= rhs) {
            self.0.push(Violation { name: name.to_string(), lhs, rhs });
        }
    }

    fn gt(&mut self, name: &str, lhs: f64, rhs: f64) {
        if !(lhs > rhs) {
            self.0.push(Violation { name: name.to_string(), lhs, rhs });
        }
    }

    fn report(self, constants: Option<DerivedConstants>) -> ValidationReport {
        ValidationReport { satisfied: self.0.is_empty(), violations: self.0, constants }
    }
}

/// Every upper bound of the descent step-size condition, by constraint name.
fn condition1_bounds(l: f64, p: &SolverParams, c: &DerivedConstants) -> [(&'static str, f64, f64); 9] {
    let (rx, ry) = (p.r_x, p.r_y);
    [
        ("eta_x <= 1/(6(4L+r_x+r_y))", p.eta_x, 1.0 / (6.0 * (4.0 * l + rx + ry))),
        ("eta_x <= 1/(320 r_y^2 eta_y)", p.eta_x, 1.0 / (320.0 * ry * ry * p.eta_y)),
        ("eta_y <= 1/(6(3L+r_x+r_y))", p.eta_y, 1.0 / (6.0 * (3.0 * l + rx + ry))),
        ("eta_y <= 1/(6 L sigma^2)", p.eta_y, 1.0 / (6.0 * l * c.sigma * c.sigma)),
        ("eta_y <= 1/(3(2L_d+15L+r_y))", p.eta_y, 1.0 / (3.0 * (2.0 * c.l_d + 15.0 * l + ry))),
        ("eta_y <= 1/(20L(5L+2))", p.eta_y, 1.0 / (20.0 * l * (5.0 * l + 2.0))),
        (
            "beta_x <= 2r_x/(80r_x+6r_x^2+3L^2+12r_xL)",
            p.beta_x,
            2.0 * rx / (80.0 * rx + 6.0 * rx * rx + 3.0 * l * l + 12.0 * rx * l),
        ),
        ("beta_x <= eta_y L^2/(7680 r_x)", p.beta_x, p.eta_y * l * l / (7680.0 * rx)),
        ("beta_y <= eta_y L^2/(240 r_y)", p.beta_y, p.eta_y * l * l / (240.0 * ry)),
    ]
}

/// Checks the descent step-size condition verbatim.
pub fn validate_condition1(l: f64, params: &SolverParams) -> Result<ValidationReport> {
    if !(l >= 1.0) {
        return Err(Error::InvalidInput(format!("L must be at least 1, got {l}")));
    }
    let constants = DerivedConstants::compute(l, params)?;
    let mut checks = Checks(Vec::new());
    checks.le("r_x >= 2L", 2.0 * l, params.r_x);
    checks.le("r_y >= 2L", 2.0 * l, params.r_y);
    checks.gt("eta_x > 0", params.eta_x, 0.0);
    checks.gt("eta_y > 0", params.eta_y, 0.0);
    checks.gt("beta_x > 0", params.beta_x, 0.0);
    checks.gt("beta_y > 0", params.beta_y, 0.0);
    for (name, lhs, rhs) in condition1_bounds(l, params, &constants) {
        checks.le(name, lhs, rhs);
    }
    Ok(checks.report(Some(constants)))
}

/// Checks the convex-concave regime: symmetric parameters with
/// `eta <= 1/(7(L+r))`, `beta = r eta` and `r <= c_r / T`.
pub fn validate_cc(l: f64, params: &SolverParams, horizon: usize, c_r: f64) -> ValidationReport {
    let p = params;
    let mut checks = Checks(Vec::new());
    let rel = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
    for (name, a, b) in [("r_x = r_y", p.r_x, p.r_y), ("eta_x = eta_y", p.eta_x, p.eta_y), ("beta_x = beta_y", p.beta_x, p.beta_y)]
    {
        if !rel(a, b) && a != b {
            checks.0.push(Violation { name: name.into(), lhs: a, rhs: b });
        }
    }
    checks.le("r >= 0", 0.0, p.r_x);
    checks.le("r <= c_r/T", p.r_x, c_r / horizon as f64);
    checks.gt("eta > 0", p.eta_x, 0.0);
    checks.le("eta <= 1/(7(L+r))", p.eta_x, 1.0 / (7.0 * (l + p.r_x)));
    if !rel(p.beta_x, p.r_x * p.eta_x) && p.beta_x != p.r_x * p.eta_x {
        checks.0.push(Violation { name: "beta = r eta".into(), lhs: p.beta_x, rhs: p.r_x * p.eta_x });
    }
    checks.report(None)
}

/// Inputs to [`symmetric_feasibility`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityQuery {
    pub lipschitz: f64,
    /// `(tau, eps_underbar)` for the Łojasiewicz-dependent rate bound.
    pub kl: Option<(f64, f64)>,
    pub diam_x: f64,
    pub diam_y: f64,
    /// Fixed smoothing weight; searched when absent.
    pub r: Option<f64>,
}

impl FeasibilityQuery {
    pub fn new(lipschitz: f64) -> Self {
        FeasibilityQuery { lipschitz, kl: None, diam_x: f64::INFINITY, diam_y: f64::INFINITY, r: None }
    }

    pub fn with_r(mut self, r: f64) -> Self {
        self.r = Some(r);
        self
    }
}

/// Step-size interval for equal parameters on both blocks.
///
/// `beta_upper` is evaluated at the midpoint step, which is the step the
/// universal selector uses.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityInterval {
    pub eta_lower: f64,
    pub eta_upper: f64,
    pub beta_upper: f64,
    pub r_used: f64,
    pub nonempty: bool,
}

impl FeasibilityInterval {
    pub fn eta_mid(&self) -> f64 {
        0.5 * (self.eta_lower + self.eta_upper)
    }
}

/// Smaller root of `54 L r^2 eta^2 + (36 L r - (r-L)^2) eta + 6L = 0`.
pub fn eta_lower_root(l: f64, r: f64) -> f64 {
    let disc = l * l - 74.0 * l * r + r * r;
    (-(r - l) * disc.max(0.0).sqrt() + l * l - 38.0 * l * r + r * r) / (108.0 * l * r * r)
}

fn eta_upper_bound(l: f64, r: f64) -> f64 {
    (1.0 / (8.0 * 5f64.sqrt() * r)).min(1.0 / (20.0 * l * (5.0 * l + 2.0)))
}

fn interval_at(q: &FeasibilityQuery, r: f64) -> Result<FeasibilityInterval> {
    let l = q.lipschitz;
    let eta_lower = eta_lower_root(l, r);
    let eta_upper = eta_upper_bound(l, r);
    let eta = 0.5 * (eta_lower + eta_upper);
    let mut beta_upper = (2.0 * r / (80.0 * r + 6.0 * r * r + 3.0 * l * l + 12.0 * r * l)).min(eta * l * l / (7680.0 * r));
    if let Some((tau, eps)) = q.kl {
        let diam = q.diam_x.max(q.diam_y);
        if !diam.is_finite() {
            return Err(Error::RegimeUnavailable("rate bound with KL data needs bounded sets".into()));
        }
        beta_upper = beta_upper.min(kl_beta_bound(l, r, tau, eps, diam));
    }
    let nonempty = eta_lower > 0.0 && eta_lower <= eta_upper && beta_upper > 0.0;
    Ok(FeasibilityInterval { eta_lower, eta_upper, beta_upper, r_used: r, nonempty })
}

/// Largest `beta` in (0, 1) with `beta <= B(beta)`, where `B` is the
/// Łojasiewicz-dependent bound (it contains `beta` itself).
pub fn kl_beta_bound(l: f64, r: f64, tau: f64, eps: f64, diam: f64) -> f64 {
    let log_gap = |beta: f64| {
        let log_rhs = 0.5 * ((r - l) * tau).ln() + ((beta * (r - l)).ln()) / (2.0 * eps)
            - 8f64.ln()
            - 0.5 * (2f64.ln() + (2.0 * r * (r - l + r * beta)).ln() / eps + (1.0 / eps - 2.0) * diam.ln());
        log_rhs - beta.ln()
    };
    // scan downward for the largest feasible grid point, then bisect
    let grid = |k: usize| 10f64.powf(-(k as f64) / 8.0);
    let mut upper_infeasible = 1.0 - 1e-12;
    if log_gap(upper_infeasible) >= 0.0 {
        return upper_infeasible;
    }
    for k in 1..=2400 {
        let b = grid(k);
        if log_gap(b) >= 0.0 {
            let mut lo = b;
            while (upper_infeasible - lo) > 1e-12 * upper_infeasible {
                let mid = 0.5 * (lo + upper_infeasible);
                if log_gap(mid) >= 0.0 {
                    lo = mid;
                } else {
                    upper_infeasible = mid;
                }
            }
            return lo;
        }
        upper_infeasible = b;
    }
    0.0
}

/// The feasibility interval at a given weight, or the smallest weight on a
/// geometric grid over `[74L, 1e4 L]` whose interval is nonempty.
pub fn symmetric_feasibility(q: &FeasibilityQuery) -> Result<FeasibilityInterval> {
    let l = q.lipschitz;
    if !(l >= 1.0) {
        return Err(Error::InvalidInput(format!("L must be at least 1, got {l}")));
    }
    if let Some(r) = q.r {
        if !(r > l) {
            return Err(Error::InvalidInput(format!("r = {r} must exceed L = {l}")));
        }
        return interval_at(q, r);
    }
    const POINTS: usize = 4000;
    let (lo, hi) = (74.0 * l, 1e4 * l);
    let mut best: Option<FeasibilityInterval> = None;
    for k in 0..=POINTS {
        let r = lo * (hi / lo).powf(k as f64 / POINTS as f64);
        let iv = interval_at(q, r)?;
        if iv.nonempty {
            return Ok(iv);
        }
        let ratio = |iv: &FeasibilityInterval| iv.eta_lower / iv.eta_upper;
        if best.as_ref().is_none_or(|b| ratio(&iv) < ratio(b)) {
            best = Some(iv);
        }
    }
    let best = best.expect("grid is nonempty");
    Err(Error::NoFeasibleWeight { best_r: best.r_used, eta_lower: best.eta_lower, eta_upper: best.eta_upper })
}

/// Optional adjustments to the default constants of the selectors.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectOverrides {
    /// Upper cap on the smoothing weight (cc) or a fixed weight (universal).
    pub r: Option<f64>,
    /// Numerator of `r = c_r / T` in the cc regime.
    pub c_r: Option<f64>,
    /// Constant of the `c * T^(-p)` cap on the averaging rate.
    pub c_beta: Option<f64>,
}

/// Parameters for a regime, checked against the regime's own validator.
pub fn select_params(
    regime: Regime,
    problem: &MinimaxProblem,
    horizon: usize,
    overrides: &SelectOverrides,
) -> Result<SolverParams> {
    if horizon < 2 {
        return Err(Error::InvalidInput("horizon must be at least 2".into()));
    }
    let s = problem.structure();
    let l = s.lipschitz();
    let t = horizon as f64;
    match regime {
        Regime::Universal => {
            let kl = match (s.kl_y.or(s.kl_x), s.epsilon_underbar) {
                (Some(k), Some(eps)) => Some((k.tau, eps.min(k.theta))),
                (Some(k), None) => Some((k.tau, k.theta)),
                _ => None,
            };
            let query = FeasibilityQuery {
                lipschitz: l,
                kl,
                diam_x: problem.set_x().diameter(),
                diam_y: problem.set_y().diameter(),
                r: overrides.r,
            };
            let iv = symmetric_feasibility(&query)?;
            if !iv.nonempty {
                return Err(Error::NoFeasibleWeight {
                    best_r: iv.r_used,
                    eta_lower: iv.eta_lower,
                    eta_upper: iv.eta_upper,
                });
            }
            let c_beta = overrides.c_beta.unwrap_or(iv.beta_upper);
            let beta = iv.beta_upper.min(c_beta / t.sqrt());
            let p = SolverParams::symmetric(iv.r_used, iv.eta_mid(), beta, Regime::Universal)?;
            ensure_valid(validate_condition1(l, &p)?)?;
            Ok(p)
        }
        Regime::Cc => {
            if !(s.convex_in_x && s.concave_in_y) {
                return Err(Error::RegimeUnavailable("cc needs a convex-concave problem".into()));
            }
            let c_r = overrides.c_r.unwrap_or(1.0);
            let r = match overrides.r {
                Some(cap) => (c_r / t).min(cap),
                None => c_r / t,
            };
            let eta = 1.0 / (7.0 * (l + r));
            let p = SolverParams::symmetric(r, eta, r * eta, Regime::Cc)?;
            ensure_valid(validate_cc(l, &p, horizon, c_r))?;
            Ok(p)
        }
        Regime::NcC => {
            if !s.concave_in_y {
                return Err(Error::RegimeUnavailable("nc_c needs concavity in y".into()));
            }
            if !problem.set_y().is_bounded() {
                return Err(Error::RegimeUnavailable("nc_c needs a bounded Y".into()));
            }
            nonconvex_params(l, t.powf(-0.5), overrides.c_beta, Regime::NcC)
        }
        Regime::NcKl => {
            let kl = s.kl_y.ok_or_else(|| Error::RegimeUnavailable("nc_kl needs KL data in y".into()))?;
            if !problem.set_x().is_bounded() {
                return Err(Error::RegimeUnavailable("nc_kl needs a bounded X".into()));
            }
            let exponent = (2.0 * kl.theta - 1.0).max(0.0) / (2.0 * kl.theta);
            nonconvex_params(l, t.powf(-exponent), overrides.c_beta, Regime::NcKl)
        }
        Regime::CNc | Regime::KlNc => {
            let mirrored = if regime == Regime::CNc { Regime::NcC } else { Regime::NcKl };
            Ok(select_params(mirrored, &problem.transposed(), horizon, overrides)?.transposed())
        }
        Regime::Manual => Err(Error::RegimeUnavailable("manual parameters are not selected".into())),
    }
}

fn ensure_valid(report: ValidationReport) -> Result<()> {
    match report.violations.first() {
        None => Ok(()),
        Some(v) => Err(Error::DegenerateConstants(format!(
            "selected parameters violate '{}' ({:e} vs {:e})",
            v.name, v.lhs, v.rhs
        ))),
    }
}

/// Largest step for the y-block allowed by the descent condition at a given
/// x-step.
fn eta_y_cap(l: f64, rx: f64, ry: f64, eta_x: f64) -> f64 {
    let sigma = (3.0 * eta_x * rx + 1.0) / (eta_x * (rx - l));
    let l_d = (l / (rx - l) + 2.0) * l + ry;
    (1.0 / (6.0 * (3.0 * l + rx + ry)))
        .min(1.0 / (6.0 * l * sigma * sigma))
        .min(1.0 / (3.0 * (2.0 * l_d + 15.0 * l + ry)))
        .min(1.0 / (20.0 * l * (5.0 * l + 2.0)))
}

/// Steps `(eta_x, eta_y)` satisfying the descent condition for given weights.
fn condition1_steps(l: f64, rx: f64, ry: f64) -> (f64, f64) {
    let mut eta_x = SAFETY / (6.0 * (4.0 * l + rx + ry));
    let mut eta_y = SAFETY * eta_y_cap(l, rx, ry, eta_x);
    for _ in 0..200 {
        let cap = 1.0 / (320.0 * ry * ry * eta_y);
        if eta_x <= cap {
            break;
        }
        eta_x = SAFETY * cap;
        eta_y = SAFETY * eta_y_cap(l, rx, ry, eta_x);
    }
    (eta_x, eta_y)
}

/// Asymmetric parameters for the nonconvex regimes; the weights are picked on
/// a grid to maximize the y-step, and the x-rate is scaled by `decay`.
fn nonconvex_params(l: f64, decay: f64, c_beta: Option<f64>, regime: Regime) -> Result<SolverParams> {
    let mut best: Option<(f64, f64, f64, f64)> = None;
    for i in 0..24 {
        for j in 0..24 {
            let rx = 2.0 * l * 1.25f64.powi(i);
            let ry = 2.0 * l * 1.25f64.powi(j);
            let (ex, ey) = condition1_steps(l, rx, ry);
            if best.is_none_or(|b| ey > b.3) {
                best = Some((rx, ry, ex, ey));
            }
        }
    }
    let (rx, ry, ex, ey) = best.expect("grid is nonempty");
    let bx_bound = (2.0 * rx / (80.0 * rx + 6.0 * rx * rx + 3.0 * l * l + 12.0 * rx * l)).min(ey * l * l / (7680.0 * rx));
    let by_bound = ey * l * l / (240.0 * ry);
    let c = c_beta.unwrap_or(bx_bound);
    let beta_x = SAFETY * bx_bound.min(c * decay);
    let beta_y = SAFETY * by_bound;
    let p = SolverParams::new(rx, ry, ex, ey, beta_x, beta_y, regime)?;
    ensure_valid(validate_condition1(l, &p)?)?;
    Ok(p)
}

/// Symmetric parameters with `r = L`, `eta = c T^(-1/2) / (L + r)` and
/// `beta = r eta`: the smoothed plain-gradient baseline.
pub fn ds_gda_params(l: f64, horizon: usize, c: f64) -> Result<SolverParams> {
    let r = l;
    let eta = c / (horizon as f64).sqrt() / (l + r);
    SolverParams::symmetric(r, eta, r * eta, Regime::Manual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn interval_midpoint_satisfies_the_descent_condition() {
        let iv = symmetric_feasibility(&FeasibilityQuery::new(1.0).with_r(240.0)).unwrap();
        let p = SolverParams::symmetric(240.0, iv.eta_mid(), iv.beta_upper, Regime::Manual).unwrap();
        let report = validate_condition1(1.0, &p).unwrap();
        assert!(report.satisfied, "{:?}", report.violations);
    }

    #[test]
    fn unit_rate_violates_the_y_rate_bound() {
        let p = SolverParams { beta_y: 1.0, ..SolverParams::symmetric(2.0, 1e-3, 1e-9, Regime::Manual).unwrap() };
        let report = validate_condition1(1.0, &p).unwrap();
        assert!(report.violations.iter().any(|v| v.name == "beta_y <= eta_y L^2/(240 r_y)"));
    }

    #[test]
    fn zero_step_reports_positivity() {
        let p = SolverParams { eta_x: 0.0, ..SolverParams::symmetric(148.0, 1e-5, 1e-12, Regime::Manual).unwrap() };
        let report = validate_condition1(1.0, &p).unwrap();
        assert!(report.violations.iter().any(|v| v.name == "eta_x > 0"));
    }

    #[test]
    fn degenerate_weights_are_rejected() {
        let p = SolverParams::symmetric(1.0, 1e-5, 1e-12, Regime::Manual).unwrap();
        assert!(matches!(validate_condition1(1.0, &p), Err(Error::DegenerateConstants(_))));
    }

    #[test]
    fn feasibility_at_fixed_weights() {
        let empty = symmetric_feasibility(&FeasibilityQuery::new(1.0).with_r(74.0)).unwrap();
        assert_relative_eq!(empty.eta_lower, 2592.0 / 591408.0, max_relative = 1e-12);
        assert_relative_eq!(empty.eta_upper, 1.0 / (8.0 * 5f64.sqrt() * 74.0), max_relative = 1e-12);
        assert!(!empty.nonempty);

        let full = symmetric_feasibility(&FeasibilityQuery::new(1.0).with_r(240.0)).unwrap();
        assert!(full.nonempty);
        assert!(full.eta_lower <= full.eta_upper);
    }

    #[test]
    fn cc_selection_example() {
        let l = 1.0;
        let t = 1000.0;
        let r = 1.0 / t;
        let eta = 1.0 / (7.0 * (l + r));
        assert_relative_eq!(eta, 1.0 / 7.007, max_relative = 1e-12);
        assert_relative_eq!(r * eta, 1e-3 / 7.007, max_relative = 1e-12);
    }

    #[test]
    fn kl_bound_is_a_fixed_point() {
        let b = kl_beta_bound(1.0, 300.0, 1.0, 0.75, 2.0);
        assert!(b > 0.0 && b < 1.0);
        let rhs = |beta: f64| {
            let (l, r, tau, eps, d) = (1.0f64, 300.0f64, 1.0f64, 0.75f64, 2.0f64);
            ((r - l) * tau).sqrt() * (beta * (r - l)).powf(1.0 / (2.0 * eps))
                / (8.0 * (2.0 * (2.0 * r * (r - l + r * beta)).powf(1.0 / eps) * d.powf(1.0 / eps - 2.0)).sqrt())
        };
        assert!(b <= rhs(b) * (1.0 + 1e-9));
        assert!(b * (1.0 + 1e-6) > rhs(b * (1.0 + 1e-6)));
    }
}
