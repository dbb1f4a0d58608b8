use std::sync::Arc;

use crate::error::Result;
use crate::problem::{InnerSolution, MinimaxProblem, Objective, StructureInfo};
use crate::sets::ConvexSet;

/// `s * sum (x_i^3 - 3 x_i) y_i + g * sum x_i y_{i+1} - |y|^2 / 2` with cyclic indices.
#[derive(Clone, Debug)]
pub struct PolynomialGame {
    n: usize,
    scale: f64,
    coupling: f64,
    y_bound: f64,
}

impl PolynomialGame {
    fn next(&self, i: usize) -> usize {
        (i + 1) % self.n
    }

    fn prev(&self, j: usize) -> usize {
        (j + self.n - 1) % self.n
    }

    /// Unconstrained maximizer in `y`, coordinatewise.
    fn y_response(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|j| self.scale * (x[j].powi(3) - 3.0 * x[j]) + self.coupling * x[self.prev(j)])
            .collect()
    }
}

impl Objective for PolynomialGame {
    fn value(&self, x: &[f64], y: &[f64]) -> f64 {
        (0..self.n)
            .map(|i| {
                self.scale * (x[i].powi(3) - 3.0 * x[i]) * y[i] + self.coupling * x[i] * y[self.next(i)]
                    - 0.5 * y[i] * y[i]
            })
            .sum()
    }

    fn grad_x(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.scale * (3.0 * x[i] * x[i] - 3.0) * y[i] + self.coupling * y[self.next(i)])
            .collect()
    }

    fn grad_y(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.y_response(x).iter().zip(y).map(|(a, v)| a - v).collect()
    }

    fn argmax_y(&self, x: &[f64]) -> Option<InnerSolution> {
        let point = self.y_response(x).iter().map(|a| a.clamp(-self.y_bound, self.y_bound)).collect();
        Some(InnerSolution { point, unique: true })
    }
}

pub(super) fn build(n: usize, scale: f64, coupling: f64, x_bound: f64, y_bound: f64) -> Result<MinimaxProblem> {
    // Gershgorin bound on the Hessian over the boxes.
    let cross = scale * 3f64.max((3.0 * x_bound * x_bound - 3.0).abs()) + coupling;
    let lipschitz = (6.0 * scale * x_bound * y_bound + cross).max(1.0 + cross);
    let mut structure = StructureInfo::new(lipschitz)?;
    structure.concave_in_y = true;
    let game = PolynomialGame { n, scale, coupling, y_bound };
    Ok(MinimaxProblem::new(
        format!("polynomial_nc_c(n={n})"),
        Arc::new(game),
        ConvexSet::cube(n, -x_bound, x_bound)?,
        ConvexSet::cube(n, -y_bound, y_bound)?,
        structure,
    ))
}
