//! Benchmark instances with closed-form oracles where available.

mod bilinear;
mod dense;
mod hard;
mod kl;
mod polynomial;
mod quadratic;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problem::MinimaxProblem;
use crate::vector::Vector;

pub use bilinear::BilinearGame;
pub use hard::HardGda;
pub use kl::KlQuadratic;
pub use polynomial::PolynomialGame;
pub use quadratic::QuadraticGame;

/// Generator used for every randomized family.
pub type InstanceRng = ChaCha8Rng;

pub fn rng_for(seed: u64, stream: u64) -> InstanceRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SetShape {
    #[default]
    Box,
    Ball,
}

fn one() -> f64 {
    1.0
}

fn third() -> f64 {
    1.0 / 3.0
}

fn quarter() -> f64 {
    0.25
}

fn three_halves() -> f64 {
    1.5
}

fn half() -> f64 {
    0.5
}

fn default_spectrum() -> Vec<f64> {
    vec![1.0, 0.0]
}

/// Serializable description of an instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum InstanceSpec {
    /// `x^T A y + b^T x - c^T y` with `|A| = scale` on boxes `[-radius, radius]`
    /// or balls of that radius; `offset` sets `|b| = |c|`.
    BilinearCc {
        n: usize,
        d: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "one")]
        scale: f64,
        #[serde(default)]
        shape: SetShape,
        #[serde(default = "one")]
        radius: f64,
        #[serde(default)]
        offset: f64,
    },
    /// `x^T P x / 2 + x^T A y - y^T Q y / 2` with positive diagonal `P`, `Q`
    /// drawn from `[min_curvature, 1]` on `[-1, 1]` boxes.
    QuadraticCc {
        n: usize,
        d: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "one")]
        scale: f64,
        #[serde(default = "half")]
        min_curvature: f64,
    },
    /// `x^2 y / 2` with `y in [0, 1]` and `x` free or in `[-1, 1]`.
    HardGda {
        #[serde(default)]
        boxed: bool,
    },
    /// `scale * sum (x_i^3 - 3 x_i) y_i + coupling * sum x_i y_{i+1} - |y|^2 / 2`.
    PolynomialNcC {
        #[serde(default = "default_one_dim")]
        n: usize,
        #[serde(default = "third")]
        scale: f64,
        #[serde(default = "quarter")]
        coupling: f64,
        #[serde(default = "three_halves")]
        x_bound: f64,
        #[serde(default = "one")]
        y_bound: f64,
    },
    /// Double-well in `x` plus `y^T B x - y^T Q y / 2` with diagonal `Q >= 0`
    /// given by `spectrum`; rows of `B` vanish on the null space of `Q`.
    KlQuadratic {
        n: usize,
        #[serde(default)]
        seed: u64,
        #[serde(default = "default_spectrum")]
        spectrum: Vec<f64>,
        #[serde(default = "half")]
        coupling: f64,
        #[serde(default = "half")]
        well: f64,
    },
    Transposed {
        inner: Box<InstanceSpec>,
    },
}

fn default_one_dim() -> usize {
    1
}

impl InstanceSpec {
    pub fn seed(&self) -> u64 {
        match self {
            InstanceSpec::BilinearCc { seed, .. }
            | InstanceSpec::QuadraticCc { seed, .. }
            | InstanceSpec::KlQuadratic { seed, .. } => *seed,
            InstanceSpec::Transposed { inner } => inner.seed(),
            _ => 0,
        }
    }

    pub fn family_name(&self) -> String {
        match self {
            InstanceSpec::BilinearCc { .. } => "bilinear_cc".into(),
            InstanceSpec::QuadraticCc { .. } => "quadratic_cc".into(),
            InstanceSpec::HardGda { .. } => "hard_gda".into(),
            InstanceSpec::PolynomialNcC { .. } => "polynomial_nc_c".into(),
            InstanceSpec::KlQuadratic { .. } => "kl_quadratic".into(),
            InstanceSpec::Transposed { inner } => format!("transposed:{}", inner.family_name()),
        }
    }
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{name} must be positive and finite, got {v}")))
    }
}

fn dims(n: usize, d: usize) -> Result<()> {
    if n == 0 || d == 0 {
        return Err(Error::InvalidInput("dimensions must be at least 1".into()));
    }
    Ok(())
}

pub fn make_instance(spec: &InstanceSpec) -> Result<MinimaxProblem> {
    match spec {
        InstanceSpec::BilinearCc { n, d, seed, scale, shape, radius, offset } => {
            dims(*n, *d)?;
            positive("scale", *scale)?;
            positive("radius", *radius)?;
            if !(offset.is_finite() && *offset >= 0.0) {
                return Err(Error::InvalidInput(format!("offset must be nonnegative, got {offset}")));
            }
            bilinear::build(*n, *d, *seed, *scale, *shape, *radius, *offset)
        }
        InstanceSpec::QuadraticCc { n, d, seed, scale, min_curvature } => {
            dims(*n, *d)?;
            positive("scale", *scale)?;
            positive("min_curvature", *min_curvature)?;
            if *min_curvature > 1.0 {
                return Err(Error::InvalidInput("min_curvature must not exceed 1".into()));
            }
            quadratic::build(*n, *d, *seed, *scale, *min_curvature)
        }
        InstanceSpec::HardGda { boxed } => hard::build(*boxed),
        InstanceSpec::PolynomialNcC { n, scale, coupling, x_bound, y_bound } => {
            dims(*n, *n)?;
            positive("scale", *scale)?;
            positive("x_bound", *x_bound)?;
            positive("y_bound", *y_bound)?;
            if !(coupling.is_finite() && *coupling >= 0.0) {
                return Err(Error::InvalidInput("coupling must be nonnegative".into()));
            }
            polynomial::build(*n, *scale, *coupling, *x_bound, *y_bound)
        }
        InstanceSpec::KlQuadratic { n, seed, spectrum, coupling, well } => {
            dims(*n, spectrum.len())?;
            if spectrum.iter().any(|s| !(s.is_finite() && *s >= 0.0)) || spectrum.iter().all(|s| *s == 0.0) {
                return Err(Error::InvalidInput("spectrum must be nonnegative with a positive entry".into()));
            }
            positive("well", *well)?;
            if !(coupling.is_finite() && *coupling >= 0.0) {
                return Err(Error::InvalidInput("coupling must be nonnegative".into()));
            }
            kl::build(*n, *seed, spectrum, *coupling, *well)
        }
        InstanceSpec::Transposed { inner } => Ok(make_instance(inner)?.transposed()),
    }
}

/// Closed-form saddle point and value, where one is known.
pub fn reference_solution(problem: &MinimaxProblem) -> Option<(Vector, Vector, f64)> {
    let (x, y) = problem.saddle()?;
    let value = problem.eval_f(&x, &y);
    Some((Vector::new(x).ok()?, Vector::new(y).ok()?, value))
}

/// Reproducible starting point drawn from the feasible sets.
pub fn initial_point(problem: &MinimaxProblem, seed: u64) -> (Vector, Vector) {
    let mut rng = rng_for(seed, 1);
    (problem.set_x().sample(&mut rng), problem.set_y().sample(&mut rng))
}

/// Central-difference gradients, for checking.
pub fn finite_difference_gradients(problem: &MinimaxProblem, x: &[f64], y: &[f64], h: f64) -> (Vec<f64>, Vec<f64>) {
    let mut gx = Vec::with_capacity(x.len());
    let mut xp = x.to_vec();
    for i in 0..x.len() {
        let orig = xp[i];
        xp[i] = orig + h;
        let up = problem.eval_f(&xp, y);
        xp[i] = orig - h;
        let down = problem.eval_f(&xp, y);
        xp[i] = orig;
        gx.push((up - down) / (2.0 * h));
    }
    let mut gy = Vec::with_capacity(y.len());
    let mut yp = y.to_vec();
    for j in 0..y.len() {
        let orig = yp[j];
        yp[j] = orig + h;
        let up = problem.eval_f(x, &yp);
        yp[j] = orig - h;
        let down = problem.eval_f(x, &yp);
        yp[j] = orig;
        gy.push((up - down) / (2.0 * h));
    }
    (gx, gy)
}

/// The standard suite: one instance per family at small dimensions.
pub fn standard_specs() -> Vec<InstanceSpec> {
    vec![
        InstanceSpec::BilinearCc { n: 1, d: 1, seed: 0, scale: 1.0, shape: SetShape::Box, radius: 1.0, offset: 0.0 },
        InstanceSpec::BilinearCc { n: 2, d: 2, seed: 7, scale: 1.0, shape: SetShape::Box, radius: 1.0, offset: 0.0 },
        InstanceSpec::BilinearCc { n: 3, d: 2, seed: 3, scale: 2.0, shape: SetShape::Ball, radius: 1.0, offset: 0.5 },
        InstanceSpec::QuadraticCc { n: 1, d: 1, seed: 1, scale: 1.0, min_curvature: 0.5 },
        InstanceSpec::QuadraticCc { n: 3, d: 2, seed: 2, scale: 1.0, min_curvature: 0.5 },
        InstanceSpec::HardGda { boxed: false },
        InstanceSpec::HardGda { boxed: true },
        InstanceSpec::PolynomialNcC { n: 1, scale: third(), coupling: quarter(), x_bound: 1.5, y_bound: 1.0 },
        InstanceSpec::PolynomialNcC { n: 2, scale: third(), coupling: quarter(), x_bound: 1.5, y_bound: 1.0 },
        InstanceSpec::KlQuadratic { n: 1, seed: 4, spectrum: vec![1.0], coupling: 0.5, well: 0.5 },
        InstanceSpec::KlQuadratic { n: 2, seed: 5, spectrum: vec![1.0, 0.0], coupling: 0.5, well: 0.5 },
        InstanceSpec::Transposed {
            inner: Box::new(InstanceSpec::PolynomialNcC {
                n: 1,
                scale: third(),
                coupling: quarter(),
                x_bound: 1.5,
                y_bound: 1.0,
            }),
        },
    ]
}
