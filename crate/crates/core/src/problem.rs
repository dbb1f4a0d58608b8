use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sets::ConvexSet;
use crate::vector::check_dim;

/// Łojasiewicz-type data for one side of the problem.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KlData {
    pub theta: f64,
    pub tau: f64,
    /// False when the inequality is declared but not verified uniformly
    /// over the other block.
    pub certified: bool,
}

impl KlData {
    pub fn new(theta: f64, tau: f64, certified: bool) -> Result<Self> {
        if !(theta > 0.0 && theta <= 1.0) || !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::InvalidInput(format!("bad KL data theta={theta}, tau={tau}")));
        }
        Ok(KlData { theta, tau, certified })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureInfo {
    lipschitz_l: f64,
    pub convex_in_x: bool,
    pub concave_in_y: bool,
    pub kl_x: Option<KlData>,
    pub kl_y: Option<KlData>,
    pub lower_bound_known: Option<f64>,
    pub epsilon_underbar: Option<f64>,
}

impl StructureInfo {
    /// `lipschitz` is raised to 1 when smaller.
    pub fn new(lipschitz: f64) -> Result<Self> {
        if !(lipschitz.is_finite() && lipschitz >= 0.0) {
            return Err(Error::InvalidInput(format!("Lipschitz constant must be finite, got {lipschitz}")));
        }
        Ok(StructureInfo {
            lipschitz_l: lipschitz.max(1.0),
            convex_in_x: false,
            concave_in_y: false,
            kl_x: None,
            kl_y: None,
            lower_bound_known: None,
            epsilon_underbar: None,
        })
    }

    pub fn lipschitz(&self) -> f64 {
        self.lipschitz_l
    }

    pub fn convex_concave(mut self) -> Self {
        self.convex_in_x = true;
        self.concave_in_y = true;
        self
    }

    /// The same information seen from the transposed problem.
    pub fn mirrored(&self) -> Self {
        StructureInfo {
            lipschitz_l: self.lipschitz_l,
            convex_in_x: self.concave_in_y,
            concave_in_y: self.convex_in_x,
            kl_x: self.kl_y,
            kl_y: self.kl_x,
            lower_bound_known: None,
            epsilon_underbar: self.epsilon_underbar,
        }
    }
}

/// A point returned by an inner oracle; `unique` is false on ties.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerSolution {
    pub point: Vec<f64>,
    pub unique: bool,
}

/// A smooth objective `f(x, y)`, minimized in `x` and maximized in `y`.
///
/// The oracles solve the inner problems over the sets the objective was
/// built with; returning `None` means no closed form is known.
pub trait Objective: Send + Sync + fmt::Debug {
    fn value(&self, x: &[f64], y: &[f64]) -> f64;
    fn grad_x(&self, x: &[f64], y: &[f64]) -> Vec<f64>;
    fn grad_y(&self, x: &[f64], y: &[f64]) -> Vec<f64>;

    fn argmax_y(&self, _x: &[f64]) -> Option<InnerSolution> {
        None
    }

    fn argmin_x(&self, _y: &[f64]) -> Option<InnerSolution> {
        None
    }

    fn saddle(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        None
    }
}

#[derive(Clone)]
pub struct MinimaxProblem {
    name: String,
    objective: Arc<dyn Objective>,
    set_x: ConvexSet,
    set_y: ConvexSet,
    structure: StructureInfo,
}

impl MinimaxProblem {
    pub fn new(
        name: impl Into<String>,
        objective: Arc<dyn Objective>,
        set_x: ConvexSet,
        set_y: ConvexSet,
        structure: StructureInfo,
    ) -> Self {
        MinimaxProblem { name: name.into(), objective, set_x, set_y, structure }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_x(&self) -> &ConvexSet {
        &self.set_x
    }

    pub fn set_y(&self) -> &ConvexSet {
        &self.set_y
    }

    pub fn structure(&self) -> &StructureInfo {
        &self.structure
    }

    pub fn lipschitz(&self) -> f64 {
        self.structure.lipschitz()
    }

    pub fn dim_x(&self) -> usize {
        self.set_x.dim()
    }

    pub fn dim_y(&self) -> usize {
        self.set_y.dim()
    }

    pub fn objective(&self) -> &Arc<dyn Objective> {
        &self.objective
    }

    pub fn eval_f(&self, x: &[f64], y: &[f64]) -> f64 {
        self.objective.value(x, y)
    }

    pub fn grad_x(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.objective.grad_x(x, y)
    }

    pub fn grad_y(&self, x: &[f64], y: &[f64]) -> Vec<f64> {
        self.objective.grad_y(x, y)
    }

    pub fn argmax_y(&self, x: &[f64]) -> Option<InnerSolution> {
        self.objective.argmax_y(x)
    }

    pub fn argmin_x(&self, y: &[f64]) -> Option<InnerSolution> {
        self.objective.argmin_x(y)
    }

    pub fn saddle(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        self.objective.saddle()
    }

    pub(crate) fn check_dims(&self, x: &[f64], y: &[f64]) -> Result<()> {
        check_dim(x.len(), self.dim_x())?;
        check_dim(y.len(), self.dim_y())
    }

    pub(crate) fn require_feasible(&self, x: &[f64], y: &[f64]) -> Result<()> {
        self.check_dims(x, y)?;
        self.set_x.require_member(x)?;
        self.set_y.require_member(y)
    }

    /// `g(a, b) = -f(b, a)`: the max-min problem written as a min-max one.
    pub fn transposed(&self) -> MinimaxProblem {
        let name = match self.name.strip_prefix("transposed:") {
            Some(inner) => inner.to_string(),
            None => format!("transposed:{}", self.name),
        };
        MinimaxProblem {
            name,
            objective: Arc::new(Transposed(self.objective.clone())),
            set_x: self.set_y.clone(),
            set_y: self.set_x.clone(),
            structure: self.structure.mirrored(),
        }
    }
}

impl fmt::Debug for MinimaxProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MinimaxProblem")
            .field("name", &self.name)
            .field("set_x", &self.set_x)
            .field("set_y", &self.set_y)
            .field("structure", &self.structure)
            .finish()
    }
}

#[derive(Debug)]
struct Transposed(Arc<dyn Objective>);

fn negated(v: Vec<f64>) -> Vec<f64> {
    v.into_iter().map(|e| -e).collect()
}

impl Objective for Transposed {
    fn value(&self, a: &[f64], b: &[f64]) -> f64 {
        -self.0.value(b, a)
    }

    fn grad_x(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        negated(self.0.grad_y(b, a))
    }

    fn grad_y(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        negated(self.0.grad_x(b, a))
    }

    fn argmax_y(&self, a: &[f64]) -> Option<InnerSolution> {
        self.0.argmin_x(a)
    }

    fn argmin_x(&self, b: &[f64]) -> Option<InnerSolution> {
        self.0.argmax_y(b)
    }

    fn saddle(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        self.0.saddle().map(|(x, y)| (y, x))
    }
}
