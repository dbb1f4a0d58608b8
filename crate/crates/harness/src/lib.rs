//! Experiment plumbing for the `dsogda` solvers: configuration files, CSV
//! traces, JSON summaries, log-log rate fits, comparison tables and the GDA
//! lower-bound experiment.

pub mod compare;
pub mod config;
pub mod error;
pub mod experiment;
pub mod fit;
pub mod io;
pub mod params_report;
pub mod plot;
pub mod summary;
pub mod tightness;
pub mod trace;

pub use compare::{compare, Comparison, ComparisonRow};
pub use config::{ExperimentConfig, MeasuresConfig, OutputConfig, ParamsConfig};
pub use error::{HarnessError, Result};
pub use experiment::{execute, run_experiment, ExperimentResult, OutputPaths};
pub use fit::{fit_rate, loglog_fit, min_so_far, FitError, LineFit, RateFit};
pub use summary::{PerMeasure, RunStatus, Summary, SCHEMA_VERSION};
pub use tightness::{tightness, TightnessReport};
