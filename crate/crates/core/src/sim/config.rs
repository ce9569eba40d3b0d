use std::path::Path;

use serde::{Deserialize, Serialize};

use super::profile::BehaviorProfile;
use crate::fuzzy::{EngineConfig, FuzzyEngine};
use crate::trust::{ThresholdPolicy, Window};
use crate::{Error, Result};

/// Full description of one simulation scenario.
///
/// Identical configs (seed included) produce bit-identical reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    /// Population size N.
    pub n_nodes: usize,
    /// Fraction of the population using the malicious profile.
    #[serde(default)]
    pub malicious_fraction: f64,
    /// Probability that a consumer picks its provider from the current
    /// power-node set instead of uniformly.
    #[serde(default)]
    pub greedy_alpha: f64,
    /// Number of transaction rounds.
    pub rounds: u64,
    /// Size of the power-node set; defaults to `max(1, n_nodes / 20)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_node_count: Option<usize>,
    /// RNG seed for the whole scenario.
    #[serde(default)]
    pub seed: u64,
    /// Super-peer classification threshold.
    #[serde(default = "default_theta")]
    pub theta: f64,
    /// Ledger history considered by trust computations.
    #[serde(default)]
    pub window: Window,
    #[serde(default = "BehaviorProfile::default_honest")]
    pub honest_profile: BehaviorProfile,
    #[serde(default = "BehaviorProfile::default_malicious")]
    pub malicious_profile: BehaviorProfile,
    /// Optional inference-engine overrides.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<EngineConfig>,
}

fn default_theta() -> f64 {
    ThresholdPolicy::default().theta
}

impl ScenarioConfig {
    /// Minimal valid scenario with library defaults everywhere else.
    pub fn new(n_nodes: usize, rounds: u64, seed: u64) -> Self {
        Self {
            n_nodes,
            malicious_fraction: 0.0,
            greedy_alpha: 0.0,
            rounds,
            power_node_count: None,
            seed,
            theta: default_theta(),
            window: Window::Full,
            honest_profile: BehaviorProfile::default_honest(),
            malicious_profile: BehaviorProfile::default_malicious(),
            engine: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_nodes < 2 {
            return Err(Error::Config("scenario needs at least two nodes".into()));
        }
        if self.rounds == 0 {
            return Err(Error::Config("scenario needs at least one round".into()));
        }
        for (what, value) in [
            ("malicious_fraction", self.malicious_fraction),
            ("greedy_alpha", self.greedy_alpha),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::Config(format!("{what} = {value} is outside [0, 1]")));
            }
        }
        if let Some(k) = self.power_node_count {
            if k == 0 || k > self.n_nodes {
                return Err(Error::Config(format!(
                    "power_node_count = {k} must be in 1..={}",
                    self.n_nodes
                )));
            }
        }
        ThresholdPolicy::new(self.theta)?;
        BehaviorProfile::new(
            self.honest_profile.quality_mean,
            self.honest_profile.quality_spread,
            self.honest_profile.honesty,
        )?;
        BehaviorProfile::new(
            self.malicious_profile.quality_mean,
            self.malicious_profile.quality_spread,
            self.malicious_profile.honesty,
        )?;
        if let Some(engine) = &self.engine {
            engine.build()?;
        }
        Ok(())
    }

    /// Number of nodes assigned the malicious profile.
    pub fn malicious_count(&self) -> usize {
        (self.n_nodes as f64 * self.malicious_fraction).round() as usize
    }

    /// Effective power-node set size.
    pub fn power_count(&self) -> usize {
        self.power_node_count
            .unwrap_or_else(|| (self.n_nodes / 20).max(1))
            .min(self.n_nodes)
    }

    pub fn threshold(&self) -> ThresholdPolicy {
        ThresholdPolicy { theta: self.theta }
    }

    pub fn build_engine(&self) -> Result<FuzzyEngine> {
        match &self.engine {
            Some(config) => config.build(),
            None => Ok(FuzzyEngine::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_json_uses_defaults() {
        let config = ScenarioConfig::from_json(r#"{"n_nodes": 10, "rounds": 3}"#).unwrap();
        assert_eq!(config.seed, 0);
        assert_eq!(config.theta, 0.35);
        assert_eq!(config.power_count(), 1);
        assert_eq!(config.window, Window::Full);
        assert_eq!(config.malicious_count(), 0);
    }

    #[test]
    fn zero_rounds_rejected() {
        assert!(ScenarioConfig::from_json(r#"{"n_nodes": 10, "rounds": 0}"#).is_err());
    }

    #[test]
    fn bad_fraction_rejected() {
        let text = r#"{"n_nodes": 10, "rounds": 1, "malicious_fraction": 1.5}"#;
        assert!(ScenarioConfig::from_json(text).is_err());
    }

    #[test]
    fn oversized_power_set_rejected() {
        let text = r#"{"n_nodes": 10, "rounds": 1, "power_node_count": 11}"#;
        assert!(ScenarioConfig::from_json(text).is_err());
    }

    #[test]
    fn unknown_key_rejected() {
        assert!(ScenarioConfig::from_json(r#"{"n_nodes": 10, "rounds": 1, "x": 1}"#).is_err());
    }

    #[test]
    fn window_round_trips() {
        let text = r#"{"n_nodes": 10, "rounds": 1, "window": {"last_rounds": 4}}"#;
        let config = ScenarioConfig::from_json(text).unwrap();
        assert_eq!(config.window, Window::LastRounds(4));
        let echoed = serde_json::to_string(&config).unwrap();
        let parsed = ScenarioConfig::from_json(&echoed).unwrap();
        assert_eq!(parsed.window, config.window);
    }
}
