use std::sync::Arc;

use nalgebra::DMatrix;
use rand::Rng;

use super::dense::Matrix;
use super::rng_for;
use crate::error::Result;
use crate::problem::{InnerSolution, MinimaxProblem, Objective, StructureInfo};
use crate::sets::ConvexSet;
use crate::vector::linalg;

/// `x^T P x / 2 + x^T A y - y^T Q y / 2` with diagonal `P, Q > 0` on `[-1, 1]` boxes.
#[derive(Clone, Debug)]
pub struct QuadraticGame {
    p: Vec<f64>,
    q: Vec<f64>,
    a: Matrix,
}

impl QuadraticGame {
    fn hessian_norm(&self) -> f64 {
        let (n, d) = (self.p.len(), self.q.len());
        let h = DMatrix::from_fn(n + d, n + d, |i, j| match (i < n, j < n) {
            (true, true) if i == j => self.p[i],
            (false, false) if i == j => -self.q[i - n],
            (true, false) => self.a.get(i, j - n),
            (false, true) => self.a.get(j, i - n),
            _ => 0.0,
        });
        h.singular_values().max()
    }
}

fn clamp_unit(v: f64) -> f64 {
    v.clamp(-1.0, 1.0)
}

impl Objective for QuadraticGame {
    fn value(&self, x: &[f64], y: &[f64]) -> f64 {
        let px: f64 = x.iter().zip(&self.p).map(|(u, p)| p * u * u).sum();
        let qy: f64 = y.iter().zip(&self.q).map(|(u, q)| q * u * u).sum();
        0.5 * px + linalg::dot(x, &self.a.mul(y)) - 0.5 * qy
    }

    fn grad_x(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.a.mul(y).iter().zip(x.iter().zip(&self.p)).map(|(ay, (u, p))| p * u + ay).collect()
    }

    fn grad_y(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.a.mul_t(x).iter().zip(y.iter().zip(&self.q)).map(|(ax, (u, q))| ax - q * u).collect()
    }

    fn argmax_y(&self, x: &[f64]) -> Option<InnerSolution> {
        let point = self.a.mul_t(x).iter().zip(&self.q).map(|(ax, q)| clamp_unit(ax / q)).collect();
        Some(InnerSolution { point, unique: true })
    }

    fn argmin_x(&self, y: &[f64]) -> Option<InnerSolution> {
        let point = self.a.mul(y).iter().zip(&self.p).map(|(ay, p)| clamp_unit(-ay / p)).collect();
        Some(InnerSolution { point, unique: true })
    }

    fn saddle(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        Some((vec![0.0; self.p.len()], vec![0.0; self.q.len()]))
    }
}

pub(super) fn build(n: usize, d: usize, seed: u64, scale: f64, min_curvature: f64) -> Result<MinimaxProblem> {
    let mut rng = rng_for(seed, 0);
    let mut curvature = |k: usize| -> Vec<f64> {
        (0..k).map(|_| scale * rng.gen_range(min_curvature..=1.0)).collect()
    };
    let p = curvature(n);
    let q = curvature(d);
    let a = if n == 1 && d == 1 {
        Matrix::from_fn(1, 1, |_, _| scale)
    } else {
        let g = Matrix::gaussian(n, d, &mut rng);
        let norm = g.spectral_norm();
        g.scaled(scale / norm)
    };
    let game = QuadraticGame { p, q, a };
    let structure = StructureInfo::new(game.hessian_norm())?.convex_concave();
    Ok(MinimaxProblem::new(
        format!("quadratic_cc(n={n},d={d},seed={seed})"),
        Arc::new(game),
        ConvexSet::cube(n, -1.0, 1.0)?,
        ConvexSet::cube(d, -1.0, 1.0)?,
        structure,
    ))
}
