use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Whether a node reports service quality truthfully.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Honesty {
    Honest,
    /// Reports `1 - true_quality`.
    Liar,
}

/// How a node behaves, both as a service provider and as a rater.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BehaviorProfile {
    /// Mean service quality; doubles as the node's ground-truth reputation.
    pub quality_mean: f64,
    /// Standard deviation of the quality noise before clamping to `[0, 1]`.
    pub quality_spread: f64,
    pub honesty: Honesty,
}

impl BehaviorProfile {
    pub fn new(quality_mean: f64, quality_spread: f64, honesty: Honesty) -> Result<Self> {
        if !(0.0..=1.0).contains(&quality_mean) {
            return Err(Error::Domain {
                what: "quality mean",
                value: quality_mean,
            });
        }
        if quality_spread.is_nan() || quality_spread < 0.0 {
            return Err(Error::Domain {
                what: "quality spread",
                value: quality_spread,
            });
        }
        Ok(Self {
            quality_mean,
            quality_spread,
            honesty,
        })
    }

    /// Default well-behaved population member.
    pub fn default_honest() -> Self {
        Self {
            quality_mean: 0.85,
            quality_spread: 0.1,
            honesty: Honesty::Honest,
        }
    }

    /// Default low-quality provider that also lies when rating others.
    pub fn default_malicious() -> Self {
        Self {
            quality_mean: 0.15,
            quality_spread: 0.1,
            honesty: Honesty::Liar,
        }
    }

    pub fn is_liar(&self) -> bool {
        self.honesty == Honesty::Liar
    }

    /// One service-quality sample: symmetric uniform noise around the mean
    /// with standard deviation `quality_spread`, clamped to `[0, 1]`.
    pub fn draw_quality<R: Rng>(&self, rng: &mut R) -> f64 {
        let u: f64 = rng.gen();
        let half_width = self.quality_spread * 3f64.sqrt();
        (self.quality_mean + half_width * (2.0 * u - 1.0)).clamp(0.0, 1.0)
    }

    /// The score this node reports after observing `true_quality`.
    pub fn report(&self, true_quality: f64) -> f64 {
        match self.honesty {
            Honesty::Honest => true_quality,
            Honesty::Liar => 1.0 - true_quality,
        }
    }
}
