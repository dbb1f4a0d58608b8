//! Doubly smoothed optimistic gradient descent ascent (DS-OGDA) and its
//! baselines for constrained minimax problems `min_x max_y f(x, y)`.
//!
//! The pieces fit together as follows: a [`MinimaxProblem`] couples an
//! [`Objective`] with two [`ConvexSet`]s, [`stepsizes`] turns the problem
//! class into [`SolverParams`], [`step`] advances a [`SolverState`], and
//! [`measures`] scores the iterates.
//!
//! ```
//! use dsogda::problems::{initial_point, make_instance, InstanceSpec, SetShape};
//! use dsogda::stepsizes::{select_params, SelectOverrides};
//! use dsogda::{run, AlgorithmKind, MeasureSchedule, Regime};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let spec = InstanceSpec::BilinearCc { n: 2, d: 2, seed: 0, scale: 1.0, shape: SetShape::Box, radius: 1.0, offset: 0.0 };
//! let problem = make_instance(&spec)?;
//! let params = select_params(Regime::Cc, &problem, 1000, &SelectOverrides::default())?;
//! let (x0, y0) = initial_point(&problem, 0);
//! let out = run(AlgorithmKind::DsOgda, &problem, &params, &x0, &y0, 1000, &MeasureSchedule::default())?;
//! let best = out.records.iter().filter_map(|r| r.gap).fold(f64::INFINITY, f64::min);
//! assert!(best < 0.1);
//! # Ok(())
//! # }
//! ```

// `!(a > b)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod diagnostics;
pub mod error;
pub mod measures;
pub mod operator;
pub mod params;
pub mod problem;
pub mod problems;
pub mod runner;
pub mod sets;
pub mod solve;
pub mod stepsizes;
pub mod vector;

pub use error::{Error, Result};
pub use measures::{game_stationarity, os_stationarity, saddle_gap, MeasureResult};
pub use operator::{eval_operator, ppm_error, regularized_value, step, AlgorithmKind, OperatorValue, SolverState};
pub use params::{Regime, SolverParams};
pub use problem::{InnerSolution, KlData, MinimaxProblem, Objective, StructureInfo};
pub use runner::{run, trajectory, IterationRecord, MeasureSchedule, RunFailure, RunOutput};
pub use sets::{ConvexSet, SetKind};
pub use vector::Vector;
