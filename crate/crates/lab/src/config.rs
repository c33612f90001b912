//! Experiment configuration files.

use std::path::PathBuf;

use ogp_core::branching::BranchingMode;
use ogp_core::localalg::LocalAlgorithmSpec;
use ogp_core::qaoa::{BellAngles, BellBaseline, InitialState, QaoaParams};
use ogp_core::rng::Seed;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InitialConfig {
    #[default]
    Plus,
    Zero,
}

impl From<InitialConfig> for InitialState {
    fn from(v: InitialConfig) -> Self {
        match v {
            InitialConfig::Plus => InitialState::Plus,
            InitialConfig::Zero => InitialState::Zero,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlgorithmConfig {
    Threshold {
        radius: usize,
        threshold: f64,
    },
    Parity {
        radius: usize,
        cut: f64,
    },
    Qaoa {
        beta: Vec<f64>,
        gamma: Vec<f64>,
        #[serde(default)]
        initial: InitialConfig,
    },
}

impl AlgorithmConfig {
    pub fn spec(&self, dense_cap: usize) -> Result<LocalAlgorithmSpec> {
        let spec = match self {
            AlgorithmConfig::Threshold { radius, threshold } => {
                LocalAlgorithmSpec::threshold(*radius, *threshold)?
            }
            AlgorithmConfig::Parity { radius, cut } => LocalAlgorithmSpec::parity(*radius, *cut)?,
            AlgorithmConfig::Qaoa {
                beta,
                gamma,
                initial,
            } => LocalAlgorithmSpec::qaoa(
                QaoaParams::new(beta.clone(), gamma.clone())?,
                (*initial).into(),
            ),
        };
        Ok(spec.with_dense_cap(dense_cap))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModeConfig {
    Scaled,
    #[default]
    Dominating,
}

impl From<ModeConfig> for BranchingMode {
    fn from(v: ModeConfig) -> Self {
        match v {
            ModeConfig::Scaled => BranchingMode::Scaled,
            ModeConfig::Dominating => BranchingMode::Dominating,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum BaselineConfig {
    #[default]
    Quantum,
    Lhv,
}

impl From<BaselineConfig> for BellBaseline {
    fn from(v: BaselineConfig) -> Self {
        match v {
            BaselineConfig::Quantum => BellBaseline::Quantum,
            BaselineConfig::Lhv => BellBaseline::LocalHiddenVariable,
        }
    }
}

/// What to run. `trials` in [`ExperimentConfig`] means instances, pairs,
/// Monte Carlo samples or shots depending on the kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Experiment {
    OverlapCurve {
        n: usize,
        d: f64,
        k: usize,
        t_grid: Vec<f64>,
        #[serde(default)]
        t_plus: Option<f64>,
        algorithm: AlgorithmConfig,
    },
    Mcdiarmid {
        n: Vec<usize>,
        p: Vec<f64>,
        c: Vec<f64>,
        eps: Vec<f64>,
        /// Also estimate the tail of the biased count by simulation.
        #[serde(default)]
        empirical: bool,
    },
    Branching {
        d: Vec<f64>,
        k: Vec<usize>,
        x: Vec<usize>,
        u: Vec<f64>,
        #[serde(default)]
        mode: ModeConfig,
    },
    Concentration {
        n: Vec<usize>,
        d: f64,
        k: usize,
        algorithm: AlgorithmConfig,
        #[serde(default)]
        signed: bool,
        /// Coupling parameter of the overlap metric.
        #[serde(default = "default_overlap_t")]
        t: f64,
    },
    OgpProbe {
        n: usize,
        d: f64,
        k: usize,
        eta: f64,
        t: f64,
        #[serde(default)]
        signed: bool,
    },
    Bell {
        /// `[alice, bob, bob_offset]`; the grid optimum when absent.
        #[serde(default)]
        angles: Option<[f64; 3]>,
        #[serde(default)]
        baseline: BaselineConfig,
    },
    LightconeCheck {
        n: usize,
        d: f64,
        k: usize,
        beta: Vec<f64>,
        gamma: Vec<f64>,
        #[serde(default)]
        signed: bool,
    },
    NbhdStats {
        n: usize,
        d: f64,
        k: usize,
        /// Radius; derived from the depth budget at `tau` when absent.
        #[serde(default)]
        p: Option<usize>,
        #[serde(default = "default_tau")]
        tau: f64,
        exponent: f64,
    },
}

fn default_overlap_t() -> f64 {
    0.5
}

fn default_tau() -> f64 {
    0.1
}

impl Experiment {
    pub fn name(&self) -> &'static str {
        match self {
            Experiment::OverlapCurve { .. } => "overlap-curve",
            Experiment::Mcdiarmid { .. } => "mcdiarmid",
            Experiment::Branching { .. } => "branching",
            Experiment::Concentration { .. } => "concentration",
            Experiment::OgpProbe { .. } => "ogp-probe",
            Experiment::Bell { .. } => "bell",
            Experiment::LightconeCheck { .. } => "lightcone-check",
            Experiment::NbhdStats { .. } => "nbhd-stats",
        }
    }
}

pub fn bell_angles(angles: Option<[f64; 3]>) -> BellAngles {
    match angles {
        Some([alice, bob, bob_offset]) => BellAngles {
            alice,
            bob,
            bob_offset,
        },
        None => ogp_core::qaoa::optimal_angles().0,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub trials: usize,
    pub seed: [u64; 2],
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub format: OutputFormat,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment, trials: usize, seed: Seed) -> Self {
        Self {
            experiment,
            trials,
            seed: [seed.hi, seed.lo],
            output: None,
            format: OutputFormat::Csv,
        }
    }

    pub fn seed(&self) -> Seed {
        Seed::new(self.seed[0], self.seed[1])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// SHA-256 over the compact JSON of the experiment, trial count and
    /// seed. Output location and format do not enter.
    pub fn hash(&self) -> Result<String> {
        let key = serde_json::to_string(&(&self.experiment, self.trials, self.seed))?;
        let digest = Sha256::digest(key.as_bytes());
        Ok(digest.iter().map(|b| format!("{b:02x}")).collect())
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(LabError::Config("trials must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ExperimentConfig {
        ExperimentConfig::new(
            Experiment::OverlapCurve {
                n: 50,
                d: 3.0,
                k: 2,
                t_grid: vec![0.0, 0.1, 1.0 / 3.0],
                t_plus: None,
                algorithm: AlgorithmConfig::Qaoa {
                    beta: vec![0.1],
                    gamma: vec![0.7],
                    initial: InitialConfig::Plus,
                },
            },
            100,
            Seed::new(u64::MAX, 7),
        )
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let c = sample();
        let back = ExperimentConfig::from_json(&c.to_json().unwrap()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.hash().unwrap(), c.hash().unwrap());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = sample().to_json().unwrap();
        let top = text.replacen("\"trials\"", "\"bogus\": 1, \"trials\"", 1);
        assert!(ExperimentConfig::from_json(&top).is_err());
        let inner = text.replacen("\"n\"", "\"bogus\": 1, \"n\"", 1);
        assert!(ExperimentConfig::from_json(&inner).is_err());
        let rule = text.replacen("\"beta\"", "\"bogus\": 1, \"beta\"", 1);
        assert!(ExperimentConfig::from_json(&rule).is_err());
    }

    #[test]
    fn hash_ignores_output_location() {
        let a = sample();
        let mut b = a.clone();
        b.output = Some("x.csv".into());
        b.format = OutputFormat::Json;
        assert_eq!(a.hash().unwrap(), b.hash().unwrap());
        let mut c = a.clone();
        c.trials += 1;
        assert_ne!(a.hash().unwrap(), c.hash().unwrap());
    }
}
