//! JSON configuration for the inference engine.
//!
//! ```json
//! {
//!   "partition": {
//!     "low":    [0.0, 0.0, 0.0, 0.5],
//!     "medium": [0.35, 0.5, 0.7, 0.85],
//!     "high":   [0.5, 0.7, 1.0, 1.0]
//!   },
//!   "rules": [["L", "L", "L", "L"], ["M", "M", "H", "H"]],
//!   "resolution": 1000
//! }
//! ```
//!
//! Every field is optional. Rules are four label letters (three antecedents
//! and the consequent); antecedents not listed fall back to the built-in
//! rows and then to the median-label default.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{
    FuzzyEngine, FuzzyPartition, FuzzyRule, LinguisticLabel, MembershipFunction, RuleBase,
    DEFAULT_RESOLUTION,
};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionConfig {
    pub low: [f64; 4],
    pub medium: [f64; 4],
    pub high: [f64; 4],
}

impl PartitionConfig {
    pub fn build(&self) -> Result<FuzzyPartition> {
        let mf = |bp: [f64; 4]| MembershipFunction::new(bp[0], bp[1], bp[2], bp[3]);
        FuzzyPartition::new(mf(self.low)?, mf(self.medium)?, mf(self.high)?)
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EngineConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<PartitionConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rules: Option<Vec<[String; 4]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
}

impl EngineConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn build(&self) -> Result<FuzzyEngine> {
        let partition = match &self.partition {
            Some(config) => config.build()?,
            None => FuzzyPartition::default(),
        };
        let rules = match &self.rules {
            Some(rows) => {
                let parsed = rows
                    .iter()
                    .map(|row| {
                        Ok(FuzzyRule::new(
                            (
                                LinguisticLabel::parse_letter(&row[0])?,
                                LinguisticLabel::parse_letter(&row[1])?,
                                LinguisticLabel::parse_letter(&row[2])?,
                            ),
                            LinguisticLabel::parse_letter(&row[3])?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()?;
                RuleBase::with_overrides(&parsed)?
            }
            None => RuleBase::default(),
        };
        FuzzyEngine::new(
            partition,
            rules,
            self.resolution.unwrap_or(DEFAULT_RESOLUTION),
        )
    }
}

/// Loads an engine from an optional config path, falling back to defaults.
pub fn engine_from_optional_path(path: Option<&Path>) -> Result<FuzzyEngine> {
    match path {
        Some(p) => EngineConfig::from_path(p)?.build(),
        None => Ok(FuzzyEngine::default()),
    }
}

impl TryFrom<&EngineConfig> for FuzzyEngine {
    type Error = Error;

    fn try_from(config: &EngineConfig) -> Result<Self> {
        config.build()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_config_builds_default_engine() {
        let engine = EngineConfig::from_json("{}").unwrap().build().unwrap();
        assert_eq!(engine, FuzzyEngine::default());
    }

    #[test]
    fn partition_and_rules_override() {
        let text = r#"{
            "partition": {
                "low": [0.0, 0.0, 0.0, 0.5],
                "medium": [0.0, 0.5, 0.5, 1.0],
                "high": [0.5, 1.0, 1.0, 1.0]
            },
            "rules": [["L", "L", "L", "H"]],
            "resolution": 500
        }"#;
        let engine = EngineConfig::from_json(text).unwrap().build().unwrap();
        assert_eq!(engine.resolution(), 500);
        assert_eq!(
            engine.rules().consequent((
                LinguisticLabel::Low,
                LinguisticLabel::Low,
                LinguisticLabel::Low
            )),
            LinguisticLabel::High
        );
        assert_eq!(
            engine.partition().medium.breakpoints(),
            (0.0, 0.5, 0.5, 1.0)
        );
    }

    #[test]
    fn bad_label_rejected() {
        let text = r#"{"rules": [["L", "L", "L", "X"]]}"#;
        assert!(EngineConfig::from_json(text).unwrap().build().is_err());
    }

    #[test]
    fn unknown_field_rejected() {
        assert!(EngineConfig::from_json(r#"{"granularity": 3}"#).is_err());
    }
}
