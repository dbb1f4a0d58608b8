//! Projectable convex feasible sets.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vector::{check_dim, linalg, Vector};

/// Absolute tolerance for membership and active-bound detection.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SetKind {
    Whole,
    Box { lower: Vector, upper: Vector },
    Ball { center: Vector, radius: f64 },
    /// The probability simplex `{x >= 0, sum x = 1}`.
    Simplex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexSet {
    kind: SetKind,
    dim: usize,
}

/// Distance from the origin to `g + N(x)`, or a surrogate when `exact` is false.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalConeDistance {
    pub value: f64,
    pub exact: bool,
}

impl ConvexSet {
    pub fn whole(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("set dimension must be positive".into()));
        }
        Ok(ConvexSet { kind: SetKind::Whole, dim })
    }

    pub fn boxed(lower: Vector, upper: Vector) -> Result<Self> {
        check_dim(upper.dim(), lower.dim())?;
        if lower.iter().zip(upper.iter()).any(|(l, u)| l > u) {
            return Err(Error::InvalidInput("box requires lower <= upper".into()));
        }
        let dim = lower.dim();
        Ok(ConvexSet { kind: SetKind::Box { lower, upper }, dim })
    }

    /// The cube `[lo, hi]^dim`.
    pub fn cube(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("set dimension must be positive".into()));
        }
        Self::boxed(Vector::new(vec![lo; dim])?, Vector::new(vec![hi; dim])?)
    }

    pub fn ball(center: Vector, radius: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidInput(format!("ball radius must be positive, got {radius}")));
        }
        let dim = center.dim();
        Ok(ConvexSet { kind: SetKind::Ball { center, radius }, dim })
    }

    pub fn simplex(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidInput("simplex needs dimension >= 2".into()));
        }
        Ok(ConvexSet { kind: SetKind::Simplex, dim })
    }

    pub fn kind(&self) -> &SetKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self.kind, SetKind::Whole)
    }

    /// Euclidean diameter; `f64::INFINITY` for the whole space.
    pub fn diameter(&self) -> f64 {
        match &self.kind {
            SetKind::Whole => f64::INFINITY,
            SetKind::Box { lower, upper } => linalg::dist(lower, upper),
            SetKind::Ball { radius, .. } => 2.0 * radius,
            SetKind::Simplex => std::f64::consts::SQRT_2,
        }
    }

    /// Largest constraint violation of `p`; zero for members.
    pub fn violation(&self, p: &[f64]) -> Result<f64> {
        check_dim(p.len(), self.dim)?;
        Ok(match &self.kind {
            SetKind::Whole => 0.0,
            SetKind::Box { lower, upper } => p
                .iter()
                .zip(lower.iter().zip(upper.iter()))
                .map(|(x, (l, u))| (l - x).max(x - u).max(0.0))
                .fold(0.0, f64::max),
            SetKind::Ball { center, radius } => (linalg::dist(p, center) - radius).max(0.0),
            SetKind::Simplex => {
                let neg = p.iter().map(|x| (-x).max(0.0)).fold(0.0, f64::max);
                neg.max((p.iter().sum::<f64>() - 1.0).abs())
            }
        })
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        matches!(self.violation(p), Ok(v) if v <= MEMBERSHIP_TOL)
    }

    pub(crate) fn require_member(&self, p: &[f64]) -> Result<()> {
        let violation = self.violation(p)?;
        if violation > MEMBERSHIP_TOL {
            return Err(Error::Infeasible { violation });
        }
        Ok(())
    }

    /// Euclidean projection.
    pub fn project(&self, p: &[f64]) -> Result<Vector> {
        check_dim(p.len(), self.dim)?;
        Vector::new(self.project_raw(p))
    }

    /// Projection without dimension or finiteness checks.
    pub(crate) fn project_raw(&self, p: &[f64]) -> Vec<f64> {
        match &self.kind {
            SetKind::Whole => p.to_vec(),
            SetKind::Box { lower, upper } => p
                .iter()
                .zip(lower.iter().zip(upper.iter()))
                .map(|(x, (l, u))| x.clamp(*l, *u))
                .collect(),
            SetKind::Ball { center, radius } => {
                let offset = linalg::sub(p, center);
                let n = linalg::norm(&offset);
                if n <= *radius {
                    p.to_vec()
                } else {
                    linalg::axpy(center, radius / n, &offset)
                }
            }
            SetKind::Simplex => project_simplex(p),
        }
    }

    /// `dist(0, g + N(x))` at a member `x`.
    pub fn normal_cone_distance(&self, x: &[f64], g: &[f64]) -> Result<NormalConeDistance> {
        check_dim(g.len(), self.dim)?;
        self.require_member(x)?;
        let exact = |value| Ok(NormalConeDistance { value, exact: true });
        match &self.kind {
            SetKind::Whole => exact(linalg::norm(g)),
            SetKind::Box { lower, upper } => {
                let mut sq = 0.0;
                for i in 0..self.dim {
                    let at_upper = x[i] >= upper[i] - MEMBERSHIP_TOL;
                    let at_lower = x[i] <= lower[i] + MEMBERSHIP_TOL;
                    let c = match (at_lower, at_upper) {
                        (true, true) => 0.0,
                        (false, true) => g[i].max(0.0),
                        (true, false) => (-g[i]).max(0.0),
                        (false, false) => g[i].abs(),
                    };
                    sq += c * c;
                }
                exact(sq.sqrt())
            }
            SetKind::Ball { center, radius } => {
                let d = linalg::sub(x, center);
                let dn2 = linalg::norm_sq(&d);
                if dn2.sqrt() < radius - MEMBERSHIP_TOL {
                    return exact(linalg::norm(g));
                }
                let lambda = (-linalg::dot(g, &d) / dn2).max(0.0);
                exact(linalg::norm(&linalg::axpy(g, lambda, &d)))
            }
            SetKind::Simplex => {
                let stepped = linalg::sub(x, g);
                let value = linalg::dist(x, &project_simplex(&stepped));
                Ok(NormalConeDistance { value, exact: false })
            }
        }
    }

    /// Bounds of a one-dimensional bounded set.
    pub(crate) fn interval(&self) -> Option<(f64, f64)> {
        if self.dim != 1 {
            return None;
        }
        match &self.kind {
            SetKind::Box { lower, upper } => Some((lower[0], upper[0])),
            SetKind::Ball { center, radius } => Some((center[0] - radius, center[0] + radius)),
            _ => None,
        }
    }

    /// Axis-aligned bounding box of a bounded set.
    pub(crate) fn bounding_box(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        match &self.kind {
            SetKind::Whole => None,
            SetKind::Box { lower, upper } => Some((lower.to_vec(), upper.to_vec())),
            SetKind::Ball { center, radius } => Some((
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            )),
            SetKind::Simplex => Some((vec![0.0; self.dim], vec![1.0; self.dim])),
        }
    }

    /// A random member; the whole space is sampled from a unit-scale box.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Vector {
        let raw: Vec<f64> = match &self.kind {
            SetKind::Whole => (0..self.dim).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            SetKind::Box { lower, upper } => lower
                .iter()
                .zip(upper.iter())
                .map(|(l, u)| if l < u { rng.gen_range(*l..*u) } else { *l })
                .collect(),
            SetKind::Ball { center, radius } => loop {
                let d: Vec<f64> = (0..self.dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
                if linalg::norm(&d) <= 1.0 {
                    break linalg::axpy(center, *radius, &d);
                }
            },
            SetKind::Simplex => {
                let e: Vec<f64> = (0..self.dim).map(|_| -rng.gen_range(f64::EPSILON..1.0).ln()).collect();
                let s: f64 = e.iter().sum();
                e.iter().map(|v| v / s).collect()
            }
        };
        Vector::new(self.project_raw(&raw)).expect("projection of a finite point is finite")
    }
}

/// Sort-based projection onto the probability simplex.
fn project_simplex(p: &[f64]) -> Vec<f64> {
    let mut sorted = p.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumulative = 0.0;
    let mut shift = 0.0;
    for (k, s) in sorted.iter().enumerate() {
        cumulative += s;
        let candidate = (cumulative - 1.0) / (k as f64 + 1.0);
        if s - candidate > 0.0 {
            shift = candidate;
        }
    }
    p.iter().map(|x| (x - shift).max(0.0)).collect()
}
