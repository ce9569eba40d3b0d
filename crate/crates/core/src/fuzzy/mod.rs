//! Three-term Mamdani fuzzy inference.
//!
//! The pipeline is the classical one: crisp inputs are fuzzified against a
//! [`FuzzyPartition`] of Low/Medium/High trapezoids, every rule in a complete
//! 27-entry [`RuleBase`] fires at the minimum of its antecedent degrees, each
//! consequent set is clipped at its rule's strength, the clipped sets are
//! merged by pointwise maximum into an [`OutputCurve`], and the curve's
//! centroid is the crisp result.

mod config;
mod engine;
mod label;
mod membership;
mod rules;

pub use config::{engine_from_optional_path, EngineConfig, PartitionConfig};
pub use engine::{FuzzyEngine, OutputCurve, TrustValue, DEFAULT_RESOLUTION};
pub use label::LinguisticLabel;
pub use membership::{FuzzyPartition, MembershipFunction};
pub use rules::{FuzzyRule, RuleBase, RULE_COUNT};

/// Smallest supported output-curve resolution (sample count minus one).
pub const MIN_RESOLUTION: usize = 100;
