use std::sync::Arc;

use super::dense::Matrix;
use super::rng_for;
use crate::error::Result;
use crate::problem::{InnerSolution, KlData, MinimaxProblem, Objective, StructureInfo};
use crate::sets::ConvexSet;
use crate::vector::linalg;

const X_BOUND: f64 = 1.5;
const Y_BOUND: f64 = 1.0;

/// `w * sum (x_i^4 / 4 - x_i^2 / 2) + y^T B x - y^T Q y / 2` with `Q = diag(spectrum)`.
#[derive(Clone, Debug)]
pub struct KlQuadratic {
    well: f64,
    spectrum: Vec<f64>,
    /// `d x n`, zero rows on the null space of `Q`.
    b: Matrix,
}

impl KlQuadratic {
    pub fn spectrum(&self) -> &[f64] {
        &self.spectrum
    }

    /// Smallest positive eigenvalue of `Q`.
    pub fn smallest_positive_eigenvalue(&self) -> f64 {
        self.spectrum.iter().copied().filter(|l| *l > 0.0).fold(f64::INFINITY, f64::min)
    }
}

impl Objective for KlQuadratic {
    fn value(&self, x: &[f64], y: &[f64]) -> f64 {
        let well: f64 = x.iter().map(|u| u.powi(4) / 4.0 - u * u / 2.0).sum();
        let qy: f64 = y.iter().zip(&self.spectrum).map(|(v, l)| l * v * v).sum();
        self.well * well + linalg::dot(y, &self.b.mul(x)) - 0.5 * qy
    }

    fn grad_x(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let by = self.b.mul_t(y);
        x.iter().zip(by).map(|(u, c)| self.well * (u.powi(3) - u) + c).collect()
    }

    fn grad_y(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        let bx = self.b.mul(x);
        bx.iter().zip(y.iter().zip(&self.spectrum)).map(|(c, (v, l))| c - l * v).collect()
    }

    fn argmax_y(&self, x: &[f64]) -> Option<InnerSolution> {
        let bx = self.b.mul(x);
        let unique = self.spectrum.iter().all(|l| *l > 0.0);
        let point = bx
            .iter()
            .zip(&self.spectrum)
            .map(|(c, l)| if *l > 0.0 { (c / l).clamp(-Y_BOUND, Y_BOUND) } else { 0.0 })
            .collect();
        Some(InnerSolution { point, unique })
    }
}

/// `x` lives in `[-1.5, 1.5]^n`, `y` in `[-1, 1]^d` with `d = spectrum.len()`.
pub(super) fn build(n: usize, seed: u64, spectrum: &[f64], coupling: f64, well: f64) -> Result<MinimaxProblem> {
    let d = spectrum.len();
    let mut rng = rng_for(seed, 0);
    let raw = Matrix::gaussian(d, n, &mut rng);
    let masked = Matrix::from_fn(d, n, |i, j| if spectrum[i] > 0.0 { raw.get(i, j) } else { 0.0 });
    let norm = masked.spectral_norm();
    let b = if norm > 0.0 { masked.scaled(coupling / norm) } else { masked };
    let game = KlQuadratic { well, spectrum: spectrum.to_vec(), b };

    let curvature_x = well * (3.0 * X_BOUND * X_BOUND - 1.0).max(1.0);
    let curvature_y = spectrum.iter().copied().fold(0.0, f64::max);
    let mut structure = StructureInfo::new(curvature_x.max(curvature_y) + coupling)?;
    structure.concave_in_y = true;
    // Q does not depend on x, so the bound holds uniformly over X.
    let tau = (2.0 * game.smallest_positive_eigenvalue()).sqrt();
    structure.kl_y = Some(KlData::new(0.5, tau, true)?);
    Ok(MinimaxProblem::new(
        format!("kl_quadratic(n={n},d={d},seed={seed})"),
        Arc::new(game),
        ConvexSet::cube(n, -X_BOUND, X_BOUND)?,
        ConvexSet::cube(d, -Y_BOUND, Y_BOUND)?,
        structure,
    ))
}
