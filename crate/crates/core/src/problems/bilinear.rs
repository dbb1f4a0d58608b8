use std::sync::Arc;

use nalgebra::DVector;

use super::dense::{random_direction, Matrix};
use super::{rng_for, SetShape};
use crate::error::Result;
use crate::problem::{InnerSolution, MinimaxProblem, Objective, StructureInfo};
use crate::sets::ConvexSet;
use crate::vector::{linalg, Vector};

/// `x^T A y + b^T x - c^T y` over boxes or balls centred at the origin.
#[derive(Clone, Debug)]
pub struct BilinearGame {
    a: Matrix,
    b: Vec<f64>,
    c: Vec<f64>,
    shape: SetShape,
    radius: f64,
}

impl BilinearGame {
    pub fn coupling(&self) -> (usize, usize, &[f64]) {
        (self.a.rows, self.a.cols, &self.a.data)
    }

    /// Linear response over the set: minimizer of `<g, p>` when `minimize`.
    fn extreme_point(&self, g: &[f64], minimize: bool) -> InnerSolution {
        let sign = if minimize { -1.0 } else { 1.0 };
        match self.shape {
            SetShape::Box => {
                let unique = g.iter().all(|v| *v != 0.0);
                let point = g
                    .iter()
                    .map(|v| if *v == 0.0 { 0.0 } else { sign * v.signum() * self.radius })
                    .collect();
                InnerSolution { point, unique }
            }
            SetShape::Ball => {
                let n = linalg::norm(g);
                if n == 0.0 {
                    InnerSolution { point: vec![0.0; g.len()], unique: false }
                } else {
                    InnerSolution { point: linalg::scale(g, sign * self.radius / n), unique: true }
                }
            }
        }
    }
}

impl Objective for BilinearGame {
    fn value(&self, x: &[f64], y: &[f64]) -> f64 {
        linalg::dot(x, &self.a.mul(y)) + linalg::dot(&self.b, x) - linalg::dot(&self.c, y)
    }

    fn grad_x(&self, _x: &[f64], y: &[f64]) -> Vec<f64> {
        self.a.mul(y).iter().zip(&self.b).map(|(u, v)| u + v).collect()
    }

    fn grad_y(&self, x: &[f64], _y: &[f64]) -> Vec<f64> {
        self.a.mul_t(x).iter().zip(&self.c).map(|(u, v)| u - v).collect()
    }

    fn argmax_y(&self, x: &[f64]) -> Option<InnerSolution> {
        Some(self.extreme_point(&self.grad_y(x, &[]), false))
    }

    fn argmin_x(&self, y: &[f64]) -> Option<InnerSolution> {
        Some(self.extreme_point(&self.grad_x(&[], y), true))
    }

    fn saddle(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let (n, d) = (self.a.rows, self.a.cols);
        if self.b.iter().chain(&self.c).all(|v| *v == 0.0) {
            return Some((vec![0.0; n], vec![0.0; d]));
        }
        if n != d {
            return None;
        }
        // Interior stationary point: A y = -b, A^T x = c.
        let lu = self.a.to_nalgebra().lu();
        let y = lu.solve(&(-DVector::from_column_slice(&self.b)))?;
        let x = self.a.to_nalgebra().transpose().lu().solve(&DVector::from_column_slice(&self.c))?;
        let inside = |p: &[f64]| match self.shape {
            SetShape::Box => p.iter().all(|v| v.abs() <= self.radius),
            SetShape::Ball => linalg::norm(p) <= self.radius,
        };
        let (x, y) = (x.as_slice().to_vec(), y.as_slice().to_vec());
        (inside(&x) && inside(&y)).then_some((x, y))
    }
}

pub(super) fn build(
    n: usize,
    d: usize,
    seed: u64,
    scale: f64,
    shape: SetShape,
    radius: f64,
    offset: f64,
) -> Result<MinimaxProblem> {
    let mut rng = rng_for(seed, 0);
    let a = if n == 1 && d == 1 {
        Matrix::from_fn(1, 1, |_, _| scale)
    } else {
        let g = Matrix::gaussian(n, d, &mut rng);
        let norm = g.spectral_norm();
        g.scaled(scale / norm)
    };
    let (b, c) = if offset > 0.0 {
        (random_direction(n, offset, &mut rng), random_direction(d, offset, &mut rng))
    } else {
        (vec![0.0; n], vec![0.0; d])
    };
    let set = |dim: usize| match shape {
        SetShape::Box => ConvexSet::cube(dim, -radius, radius),
        SetShape::Ball => ConvexSet::ball(Vector::zeros(dim), radius),
    };
    let game = BilinearGame { a, b, c, shape, radius };
    let structure = StructureInfo::new(scale)?.convex_concave();
    Ok(MinimaxProblem::new(format!("bilinear_cc(n={n},d={d},seed={seed})"), Arc::new(game), set(n)?, set(d)?, structure))
}
