use std::fmt::Write;
use std::path::Path;

use dsogda::problems::InstanceSpec;
use dsogda::{AlgorithmKind, Regime};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::experiment::execute;
use crate::io::write_atomic;
use crate::summary::{PerMeasure, RunStatus, SCHEMA_VERSION};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonRow {
    pub name: String,
    pub algorithm: AlgorithmKind,
    pub regime: Regime,
    pub horizon: usize,
    pub status: RunStatus,
    pub slopes: PerMeasure<f64>,
    pub min_so_far: PerMeasure<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Comparison {
    pub schema_version: u32,
    pub instance: InstanceSpec,
    pub rows: Vec<ComparisonRow>,
}

/// Runs every config in parallel; rows keep the input order.
pub fn compare(configs: &[ExperimentConfig]) -> Result<Comparison> {
    if configs.len() < 2 {
        return Err(HarnessError::Config(format!("compare needs at least 2 configs, got {}", configs.len())));
    }
    let instance = &configs[0].instance;
    if let Some(c) = configs.iter().find(|c| &c.instance != instance) {
        return Err(HarnessError::Config(format!("config '{}' uses a different instance", c.name())));
    }
    let rows = configs
        .par_iter()
        .map(|c| {
            let s = execute(c)?.summary;
            let f = &s.fits;
            Ok(ComparisonRow {
                name: s.name,
                algorithm: s.algorithm,
                regime: s.params.regime,
                horizon: s.horizon,
                status: s.status,
                slopes: PerMeasure {
                    gap: f.gap.as_ref().map(|r| r.slope),
                    gs: f.gs.as_ref().map(|r| r.slope),
                    os: f.os.as_ref().map(|r| r.slope),
                    lyapunov: None,
                },
                min_so_far: s.min_so_far,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Comparison { schema_version: SCHEMA_VERSION, instance: instance.clone(), rows })
}

impl Comparison {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("comparison serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json().as_bytes())
    }

    /// Aligned plain-text table.
    pub fn render(&self) -> String {
        let cell = |v: Option<f64>, prec: usize| v.map_or("-".to_string(), |v| format!("{v:.prec$}"));
        let header = ["name", "algorithm", "regime", "T", "status", "gap slope", "gs slope", "os slope", "min gap", "min gs", "min os"];
        let mut table: Vec<Vec<String>> = vec![header.iter().map(|s| s.to_string()).collect()];
        for r in &self.rows {
            table.push(vec![
                r.name.clone(),
                r.algorithm.to_string(),
                r.regime.to_string(),
                r.horizon.to_string(),
                format!("{:?}", r.status).to_lowercase(),
                cell(r.slopes.gap, 3),
                cell(r.slopes.gs, 3),
                cell(r.slopes.os, 3),
                r.min_so_far.gap.map_or("-".into(), |v| format!("{v:.3e}")),
                r.min_so_far.gs.map_or("-".into(), |v| format!("{v:.3e}")),
                r.min_so_far.os.map_or("-".into(), |v| format!("{v:.3e}")),
            ]);
        }
        let widths: Vec<usize> = (0..header.len()).map(|j| table.iter().map(|row| row[j].len()).max().unwrap_or(0)).collect();
        let mut out = String::new();
        for row in &table {
            let line: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        out
    }
}
