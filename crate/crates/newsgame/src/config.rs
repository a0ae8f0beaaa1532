//! Run configuration: a single TOML file with sections `[model]`,
//! `[sweep]`, `[simulate]`, `[regulate]` and `[verify]`. Unknown keys are
//! rejected so typos cannot silently fall back to defaults; sections are
//! only required by the commands that read them.

use std::path::Path;
use std::str::FromStr;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::{ModelParams, Primitives};
use crate::sim::SimulationConfig;
use crate::welfare::NuExtensionParams;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub model: ModelSection,
    pub sweep: Option<SweepSection>,
    pub simulate: Option<SimulateSection>,
    pub regulate: Option<RegulateSection>,
    pub verify: Option<VerifySection>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSection {
    pub phi_v: f64,
    pub phi_m: f64,
    pub gamma: f64,
    pub xi: f64,
    pub phi: f64,
    /// Misreporting cost; optional because sweeps and regulation treat it
    /// as the variable of interest.
    pub k: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub k_min: f64,
    pub k_max: f64,
    pub points: usize,
    #[serde(default = "default_spacing")]
    pub spacing: Spacing,
    /// Keep rows whose evaluation fails, recording the error, instead of
    /// aborting the whole sweep.
    #[serde(default)]
    pub keep_errors: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateSection {
    pub n_draws: u64,
    /// Base seed; the command line `--seed` takes precedence.
    pub seed: Option<u64>,
    pub lambda: Option<f64>,
    pub q_i: Option<f64>,
    pub q_c: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegulateSection {
    pub curve_k_min: Option<f64>,
    pub curve_k_max: Option<f64>,
    pub curve_points: Option<usize>,
    pub y: Option<f64>,
    pub x: Option<f64>,
    pub k_v: Option<f64>,
    pub sigma: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub ks: Vec<f64>,
    #[serde(default = "default_step")]
    pub step: f64,
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Offset added to the equilibrium q_i before checking; for exercising
    /// the oracle on a profile that should fail.
    pub perturb_q_i: Option<f64>,
}

fn default_spacing() -> Spacing {
    Spacing::Log
}

fn default_step() -> f64 {
    1e-3
}

fn default_tol() -> f64 {
    1e-2
}

impl FromStr for Config {
    type Err = Error;

    fn from_str(s: &str) -> Result<Config> {
        toml::from_str(s).map_err(|e| Error::config(format!("config parse: {e}")))
    }
}

impl Config {
    pub fn from_path(path: &Path) -> Result<Config> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("cannot read {}: {e}", path.display())))?;
        text.parse()
    }

    /// Model primitives without the cost, validated.
    pub fn primitives(&self) -> Result<Primitives> {
        let m = &self.model;
        let prim = Primitives {
            phi_v: m.phi_v,
            phi_m: m.phi_m,
            gamma: m.gamma,
            xi: m.xi,
            phi: m.phi,
        };
        prim.with_cost(1.0)?;
        Ok(prim)
    }

    /// Full model parameters; requires `model.k`.
    pub fn model_params(&self) -> Result<ModelParams> {
        let k = self
            .model
            .k
            .ok_or_else(|| Error::config("model.k is required by this command"))?;
        self.primitives()?.with_cost(k)
    }

    pub fn sweep(&self) -> Result<&SweepSection> {
        self.sweep
            .as_ref()
            .ok_or_else(|| Error::config("missing [sweep] section"))
    }

    pub fn simulate(&self) -> Result<&SimulateSection> {
        self.simulate
            .as_ref()
            .ok_or_else(|| Error::config("missing [simulate] section"))
    }

    pub fn regulate(&self) -> Result<&RegulateSection> {
        self.regulate
            .as_ref()
            .ok_or_else(|| Error::config("missing [regulate] section"))
    }

    pub fn verify(&self) -> Result<&VerifySection> {
        self.verify
            .as_ref()
            .ok_or_else(|| Error::config("missing [verify] section"))
    }
}

impl SweepSection {
    /// The k grid this sweep runs on.
    pub fn grid(&self) -> Result<Vec<f64>> {
        if self.points == 0 {
            return Err(Error::config("sweep.points must be at least 1"));
        }
        if !self.k_min.is_finite() || self.k_min <= 0.0 {
            return Err(Error::config(format!(
                "sweep.k_min must be positive and finite, got {}",
                self.k_min
            )));
        }
        if !self.k_max.is_finite() || self.k_max < self.k_min {
            return Err(Error::config(format!(
                "sweep.k_max must be finite and at least k_min, got {}",
                self.k_max
            )));
        }
        if self.points == 1 {
            return Ok(vec![self.k_min]);
        }
        if self.k_max == self.k_min {
            return Err(Error::config(
                "sweep.points > 1 requires k_max > k_min",
            ));
        }
        let n = self.points;
        Ok(match self.spacing {
            Spacing::Log => {
                let ratio = self.k_max / self.k_min;
                let mut g: Vec<f64> = (0..n)
                    .map(|j| self.k_min * ratio.powf(j as f64 / (n - 1) as f64))
                    .collect();
                g[0] = self.k_min;
                g[n - 1] = self.k_max;
                g
            }
            Spacing::Linear => (0..n)
                .map(|j| {
                    self.k_min + (self.k_max - self.k_min) * j as f64 / (n - 1) as f64
                })
                .collect(),
        })
    }
}

impl SimulateSection {
    /// Assemble the simulation config; `seed_override` comes from `--seed`.
    pub fn to_sim_config(&self, seed_override: Option<u64>) -> Result<SimulationConfig> {
        if self.n_draws == 0 {
            return Err(Error::config("simulate.n_draws must be at least 1"));
        }
        let policy_override = match (self.q_i, self.q_c) {
            (Some(q_i), Some(q_c)) => Some(crate::model::PolicyPair::new(q_i, q_c)),
            (None, None) => None,
            _ => {
                return Err(Error::config(
                    "simulate.q_i and simulate.q_c must be given together",
                ))
            }
        };
        Ok(SimulationConfig {
            n_draws: self.n_draws,
            seed: seed_override.or(self.seed).unwrap_or(0),
            policy_override,
            lambda_override: self.lambda,
        })
    }
}

impl RegulateSection {
    /// The ν adjustment, if its parameters are given (all four or none).
    pub fn nu_params(&self) -> Result<Option<NuExtensionParams>> {
        match (self.y, self.x, self.k_v, self.sigma) {
            (Some(y), Some(x), Some(k_v), Some(sigma)) => {
                Ok(Some(NuExtensionParams { y, x, k_v, sigma }))
            }
            (None, None, None, None) => Ok(None),
            _ => Err(Error::config(
                "regulate.{y, x, k_v, sigma} must be given together or not at all",
            )),
        }
    }
}

impl VerifySection {
    pub fn validate(&self) -> Result<()> {
        if self.ks.is_empty() {
            return Err(Error::config("verify.ks must list at least one cost"));
        }
        if self.step.is_nan() || self.step <= 0.0 {
            return Err(Error::config(format!(
                "verify.step must be positive, got {}",
                self.step
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::config(format!(
                "verify.tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }
}
