use std::path::Path;

use dsogda::problems::InstanceSpec;
use dsogda::{AlgorithmKind, SolverParams};
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::fit::RateFit;
use crate::io::{read_to_string, write_atomic};

/// Bumped whenever a field of [`Summary`] changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    Diverged,
    Failed,
}

/// One slot per measure column of the trace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PerMeasure<T> {
    pub gap: Option<T>,
    pub gs: Option<T>,
    pub os: Option<T>,
    pub lyapunov: Option<T>,
}

impl<T> Default for PerMeasure<T> {
    fn default() -> Self {
        PerMeasure { gap: None, gs: None, os: None, lyapunov: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summary {
    pub schema_version: u32,
    pub code_version: String,
    pub name: String,
    pub status: RunStatus,
    pub error: Option<String>,
    pub algorithm: AlgorithmKind,
    pub instance: InstanceSpec,
    pub instance_name: String,
    pub instance_seed: u64,
    pub init_seed: u64,
    pub horizon: usize,
    pub lipschitz: f64,
    /// Parameters as resolved from the config.
    pub params: SolverParams,
    /// What the update rule actually used.
    pub effective_params: SolverParams,
    pub os_weight: Option<f64>,
    pub rows: usize,
    pub last_t: usize,
    pub min_so_far: PerMeasure<f64>,
    pub argmin: PerMeasure<usize>,
    /// Fits of the min-so-far envelope on the last decade.
    pub fits: PerMeasure<RateFit>,
    pub final_x: Option<Vec<f64>>,
    pub final_y: Option<Vec<f64>>,
    pub config: ExperimentConfig,
}

impl Summary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Summary = serde_json::from_str(text).map_err(|e| HarnessError::Summary(e.to_string()))?;
        if s.schema_version != SCHEMA_VERSION {
            return Err(HarnessError::Summary(format!(
                "schema version {} (expected {SCHEMA_VERSION})",
                s.schema_version
            )));
        }
        Ok(s)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json().as_bytes())
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&read_to_string(path)?)
    }
}
