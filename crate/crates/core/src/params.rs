use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Where a parameter set came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Universal,
    Cc,
    NcC,
    CNc,
    NcKl,
    KlNc,
    Manual,
}

impl Regime {
    pub const ALL: [Regime; 7] = [
        Regime::Universal,
        Regime::Cc,
        Regime::NcC,
        Regime::CNc,
        Regime::NcKl,
        Regime::KlNc,
        Regime::Manual,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Universal => "universal",
            Regime::Cc => "cc",
            Regime::NcC => "nc_c",
            Regime::CNc => "c_nc",
            Regime::NcKl => "nc_kl",
            Regime::KlNc => "kl_nc",
            Regime::Manual => "manual",
        }
    }

    /// Regimes whose analysis allows frozen anchors.
    pub fn allows_zero_beta(self) -> bool {
        matches!(self, Regime::Cc | Regime::Manual)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown regime '{s}'")))
    }
}

/// The six scalars driving one run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverParams {
    pub r_x: f64,
    pub r_y: f64,
    pub eta_x: f64,
    pub eta_y: f64,
    pub beta_x: f64,
    pub beta_y: f64,
    pub regime: Regime,
}

impl SolverParams {
    pub fn new(
        r_x: f64,
        r_y: f64,
        eta_x: f64,
        eta_y: f64,
        beta_x: f64,
        beta_y: f64,
        regime: Regime,
    ) -> Result<Self> {
        let p = SolverParams { r_x, r_y, eta_x, eta_y, beta_x, beta_y, regime };
        p.validate()?;
        Ok(p)
    }

    /// Equal weights, steps and rates on both blocks.
    pub fn symmetric(r: f64, eta: f64, beta: f64, regime: Regime) -> Result<Self> {
        Self::new(r, r, eta, eta, beta, beta, regime)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.r_x, self.r_y, self.eta_x, self.eta_y, self.beta_x, self.beta_y];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("parameters must be finite".into()));
        }
        if self.r_x < 0.0 || self.r_y < 0.0 {
            return Err(Error::InvalidInput("smoothing weights must be nonnegative".into()));
        }
        if self.eta_x <= 0.0 || self.eta_y <= 0.0 {
            return Err(Error::InvalidInput("step sizes must be positive".into()));
        }
        let beta_floor_ok = if self.regime.allows_zero_beta() {
            self.beta_x >= 0.0 && self.beta_y >= 0.0
        } else {
            self.beta_x > 0.0 && self.beta_y > 0.0
        };
        if !beta_floor_ok || self.beta_x >= 1.0 || self.beta_y >= 1.0 {
            return Err(Error::InvalidInput(format!(
                "averaging rates ({}, {}) out of range for regime {}",
                self.beta_x, self.beta_y, self.regime
            )));
        }
        Ok(())
    }

    /// Parameters for the transposed problem: the x and y roles swap.
    pub fn transposed(&self) -> Self {
        let regime = match self.regime {
            Regime::NcC => Regime::CNc,
            Regime::CNc => Regime::NcC,
            Regime::NcKl => Regime::KlNc,
            Regime::KlNc => Regime::NcKl,
            other => other,
        };
        SolverParams {
            r_x: self.r_y,
            r_y: self.r_x,
            eta_x: self.eta_y,
            eta_y: self.eta_x,
            beta_x: self.beta_y,
            beta_y: self.beta_x,
            regime,
        }
    }

    /// Smoothing switched off, as used by the plain baselines.
    pub fn unsmoothed(&self) -> Self {
        SolverParams { r_x: 0.0, r_y: 0.0, beta_x: 0.0, beta_y: 0.0, ..*self }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_zero_only_in_cc_and_manual() {
        assert!(SolverParams::symmetric(0.0, 0.1, 0.0, Regime::Cc).is_ok());
        assert!(SolverParams::symmetric(0.0, 0.1, 0.0, Regime::Manual).is_ok());
        assert!(SolverParams::symmetric(1.0, 0.1, 0.0, Regime::Universal).is_err());
        assert!(SolverParams::symmetric(1.0, 0.1, 1.0, Regime::Manual).is_err());
        assert!(SolverParams::symmetric(1.0, 0.0, 0.1, Regime::Manual).is_err());
    }

    #[test]
    fn regime_names_round_trip() {
        for r in Regime::ALL {
            assert_eq!(r.as_str().parse::<Regime>().unwrap(), r);
        }
    }
}
