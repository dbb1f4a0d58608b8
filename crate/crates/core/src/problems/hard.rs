use std::sync::Arc;

use crate::error::Result;
use crate::problem::{InnerSolution, MinimaxProblem, Objective, StructureInfo};
use crate::sets::ConvexSet;

/// `f(x, y) = x^2 y / 2` with `y in [0, 1]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct HardGda;

impl HardGda {
    /// Gradient Lipschitz constant over `[-1, 1] x [0, 1]`: the largest
    /// Hessian norm, attained at `|x| = 1, y = 1`.
    pub fn box_lipschitz() -> f64 {
        (1.0 + 5f64.sqrt()) / 2.0
    }
}

impl Objective for HardGda {
    fn value(&self, x: &[f64], y: &[f64]) -> f64 {
        0.5 * x[0] * x[0] * y[0]
    }

    fn grad_x(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        vec![x[0] * y[0]]
    }

    fn grad_y(&self, x: &[f64], _y: &[f64]) -> Vec<f64> {
        vec![0.5 * x[0] * x[0]]
    }

    fn argmax_y(&self, x: &[f64]) -> Option<InnerSolution> {
        Some(InnerSolution { point: vec![1.0], unique: x[0] != 0.0 })
    }

    fn argmin_x(&self, y: &[f64]) -> Option<InnerSolution> {
        Some(InnerSolution { point: vec![0.0], unique: y[0] > 0.0 })
    }

    fn saddle(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        Some((vec![0.0], vec![0.5]))
    }
}

/// The unconstrained form has no global gradient Lipschitz constant; both
/// forms carry the box value so the selectors stay usable.
pub(super) fn build(boxed: bool) -> Result<MinimaxProblem> {
    let set_x = if boxed { ConvexSet::cube(1, -1.0, 1.0)? } else { ConvexSet::whole(1)? };
    let name = if boxed { "hard_gda(box)" } else { "hard_gda" };
    let mut structure = StructureInfo::new(HardGda::box_lipschitz())?.convex_concave();
    structure.lower_bound_known = Some(0.0);
    Ok(MinimaxProblem::new(name, Arc::new(HardGda), set_x, ConvexSet::cube(1, 0.0, 1.0)?, structure))
}
