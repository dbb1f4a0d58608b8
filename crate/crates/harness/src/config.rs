//! Experiment configuration: a flat TOML file of dotted keys.
//!
//! ```toml
//! algorithm = "ds_ogda"
//! T = 1000
//! instance.family = "bilinear_cc"
//! instance.n = 2
//! instance.d = 2
//! params.regime = "cc"
//! measures.stride = 10
//! output.dir = "out"
//! ```

use std::path::{Path, PathBuf};

use dsogda::problems::InstanceSpec;
use dsogda::stepsizes::{ds_gda_params, select_params, SelectOverrides};
use dsogda::{AlgorithmKind, MinimaxProblem, Regime, SolverParams};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::io::read_to_string;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub instance: InstanceSpec,
    pub algorithm: AlgorithmKind,
    #[serde(default)]
    pub params: ParamsConfig,
    #[serde(rename = "T")]
    pub horizon: usize,
    #[serde(default)]
    pub measures: MeasuresConfig,
    #[serde(default)]
    pub init: InitConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Either a regime with optional overrides, the `sqrt_t` schedule, or all six
/// scalars given by hand.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsConfig {
    pub regime: Option<Regime>,
    pub schedule: Option<Schedule>,
    /// Constant of the `sqrt_t` schedule.
    pub c: Option<f64>,
    pub r: Option<f64>,
    pub c_r: Option<f64>,
    pub c_beta: Option<f64>,
    pub r_x: Option<f64>,
    pub r_y: Option<f64>,
    pub eta_x: Option<f64>,
    pub eta_y: Option<f64>,
    pub beta_x: Option<f64>,
    pub beta_y: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Schedule {
    /// `r = L`, `eta = c T^(-1/2) / (2L)`, `beta = r eta`.
    SqrtT,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MeasuresConfig {
    pub stride: usize,
    pub gap: bool,
    pub gs: bool,
    pub os: bool,
    /// Proximal weight of the OS residual; `2L` when absent.
    pub os_weight: Option<f64>,
    pub lyapunov: bool,
    pub tol: f64,
}

impl Default for MeasuresConfig {
    fn default() -> Self {
        MeasuresConfig {
            stride: 1,
            gap: true,
            gs: true,
            os: false,
            os_weight: None,
            lyapunov: false,
            tol: dsogda::measures::DEFAULT_TOL,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InitConfig {
    pub seed: u64,
    pub x: Option<Vec<f64>>,
    pub y: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub name: Option<String>,
    /// Fill the `elapsed_ms` column. Off by default so reruns are identical.
    pub timing: bool,
    pub plot: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: PathBuf::from("out"), name: None, timing: false, plot: false }
    }
}

impl ExperimentConfig {
    pub fn from_toml_str(s: &str) -> Result<Self> {
        let config: ExperimentConfig = toml::from_str(s).map_err(|e| HarnessError::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&read_to_string(path)?)
            .map_err(|e| match e {
                HarnessError::Config(m) => HarnessError::Config(format!("{}: {m}", path.display())),
                other => other,
            })
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(HarnessError::Config(m.to_string()));
        if self.horizon < 2 {
            return bad("T must be at least 2");
        }
        let m = &self.measures;
        if m.stride == 0 {
            return bad("measures.stride must be at least 1");
        }
        if !(m.tol > 0.0 && m.tol.is_finite()) {
            return bad("measures.tol must be positive");
        }
        if m.os_weight.is_some_and(|r| !(r > 0.0 && r.is_finite())) {
            return bad("measures.os_weight must be positive");
        }
        if let Some(name) = &self.output.name {
            if name.is_empty() || name.contains(['/', '\\']) {
                return bad("output.name must be a plain file stem");
            }
        }
        self.params.check_shape()
    }

    /// File stem for the outputs.
    pub fn name(&self) -> String {
        match &self.output.name {
            Some(n) => n.clone(),
            None => format!("{}_{}_T{}", self.algorithm, self.instance.family_name().replace(':', "-"), self.horizon),
        }
    }
}

impl ParamsConfig {
    fn manual(&self) -> [Option<f64>; 6] {
        [self.r_x, self.r_y, self.eta_x, self.eta_y, self.beta_x, self.beta_y]
    }

    fn check_shape(&self) -> Result<()> {
        let manual = self.manual();
        let given = manual.iter().filter(|v| v.is_some()).count();
        let overrides = self.r.is_some() || self.c_r.is_some() || self.c_beta.is_some();
        let err = |m: &str| Err(HarnessError::Config(m.to_string()));
        if given > 0 {
            if given < 6 {
                return err("manual params need all of r_x, r_y, eta_x, eta_y, beta_x, beta_y");
            }
            if self.schedule.is_some() || overrides || self.c.is_some() {
                return err("manual params cannot be combined with a schedule or overrides");
            }
            return Ok(());
        }
        if self.schedule.is_some() {
            if self.regime.is_some() || overrides {
                return err("params.schedule cannot be combined with a regime or overrides");
            }
            return Ok(());
        }
        if self.c.is_some() {
            return err("params.c belongs to params.schedule");
        }
        if self.regime == Some(Regime::Manual) {
            return err("regime 'manual' needs the six scalars");
        }
        Ok(())
    }

    /// Concrete parameters for `problem` at horizon `horizon`.
    pub fn resolve(&self, problem: &MinimaxProblem, horizon: usize) -> Result<SolverParams> {
        self.check_shape()?;
        if let [Some(r_x), Some(r_y), Some(eta_x), Some(eta_y), Some(beta_x), Some(beta_y)] = self.manual() {
            let regime = self.regime.unwrap_or(Regime::Manual);
            return Ok(SolverParams::new(r_x, r_y, eta_x, eta_y, beta_x, beta_y, regime)?);
        }
        if let Some(Schedule::SqrtT) = self.schedule {
            return Ok(ds_gda_params(problem.lipschitz(), horizon, self.c.unwrap_or(1.0))?);
        }
        let overrides = SelectOverrides { r: self.r, c_r: self.c_r, c_beta: self.c_beta };
        Ok(select_params(self.regime.unwrap_or(Regime::Universal), problem, horizon, &overrides)?)
    }
}
