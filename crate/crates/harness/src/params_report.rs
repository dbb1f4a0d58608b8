//! Resolved parameters plus the validator's verdict, for the `params` command.

use dsogda::problems::{make_instance, InstanceSpec};
use dsogda::stepsizes::{select_params, validate_cc, validate_condition1, SelectOverrides, ValidationReport};
use dsogda::{Regime, SolverParams};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamsReport {
    pub instance: InstanceSpec,
    pub instance_name: String,
    pub lipschitz: f64,
    pub regime: Regime,
    pub horizon: usize,
    pub params: SolverParams,
    pub validation: ValidationReport,
}

pub fn params_report(
    regime: Regime,
    instance: &InstanceSpec,
    horizon: usize,
    overrides: &SelectOverrides,
) -> Result<ParamsReport> {
    let problem = make_instance(instance)?;
    let l = problem.lipschitz();
    let params = select_params(regime, &problem, horizon, overrides)?;
    let validation = match regime {
        Regime::Cc => validate_cc(l, &params, horizon, overrides.c_r.unwrap_or(1.0)),
        Regime::CNc | Regime::KlNc => validate_condition1(l, &params.transposed())?,
        _ => validate_condition1(l, &params)?,
    };
    Ok(ParamsReport {
        instance: instance.clone(),
        instance_name: problem.name().to_string(),
        lipschitz: l,
        regime,
        horizon,
        params,
        validation,
    })
}

/// Reads an instance from `family=bilinear_cc,n=2,d=2` or from a TOML file
/// holding either `instance.*` keys or the bare spec keys.
pub fn parse_instance_arg(arg: &str) -> Result<InstanceSpec> {
    let path = std::path::Path::new(arg);
    let text = if path.is_file() {
        crate::io::read_to_string(path)?
    } else {
        arg.split(',')
            .map(|kv| {
                let (k, v) = kv
                    .split_once('=')
                    .ok_or_else(|| HarnessError::Config(format!("expected key=value, got '{kv}'")))?;
                let v = v.trim();
                let value = if v.parse::<toml::Value>().is_ok() || v.starts_with('[') { v.to_string() } else { format!("{v:?}") };
                Ok(format!("{} = {value}", k.trim()))
            })
            .collect::<Result<Vec<_>>>()?
            .join("\n")
    };
    let table: toml::Table = toml::from_str(&text).map_err(|e| HarnessError::Config(e.to_string()))?;
    let value = match table.get("instance") {
        Some(inner) => inner.clone(),
        None => toml::Value::Table(table),
    };
    value.try_into().map_err(|e: toml::de::Error| HarnessError::Config(e.to_string()))
}
