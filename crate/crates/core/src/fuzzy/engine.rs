use serde::{Deserialize, Serialize};

use super::membership::check_unit;
use super::{FuzzyPartition, LinguisticLabel, RuleBase, MIN_RESOLUTION, RULE_COUNT};
use crate::{Error, Result};

/// Default number of intervals the output domain is sampled into.
///
/// At this resolution the trapezoidal centroid of any clipped-and-merged
/// piecewise-linear output differs from the exact integral by well under
/// 1e-3, which is the tolerance the library promises.
pub const DEFAULT_RESOLUTION: usize = 1000;

/// Aggregated output set, sampled at `resolution() + 1` equally spaced points
/// over `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputCurve {
    samples: Vec<f64>,
}

impl OutputCurve {
    /// Wraps raw samples; there must be at least `MIN_RESOLUTION + 1` of
    /// them and every value must lie in `[0, 1]`.
    pub fn from_samples(samples: Vec<f64>) -> Result<Self> {
        if samples.len() < MIN_RESOLUTION + 1 {
            return Err(Error::Resolution(samples.len().saturating_sub(1)));
        }
        for &s in &samples {
            check_unit("output curve sample", s)?;
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    /// Number of sample intervals (samples minus one).
    pub fn resolution(&self) -> usize {
        self.samples.len() - 1
    }

    /// Crisp value of the curve: centre of mass under trapezoidal
    /// integration. Fails with [`Error::NoRuleFired`] when the curve has zero
    /// area.
    pub fn centroid(&self) -> Result<f64> {
        let n = self.resolution();
        let mut num = 0.0;
        let mut den = 0.0;
        for i in 0..n {
            let z0 = i as f64 / n as f64;
            let z1 = (i + 1) as f64 / n as f64;
            let m0 = self.samples[i];
            let m1 = self.samples[i + 1];
            den += (m0 + m1) / 2.0;
            num += (z0 * m0 + z1 * m1) / 2.0;
        }
        if den == 0.0 {
            return Err(Error::NoRuleFired);
        }
        Ok(num / den)
    }
}

/// Crisp trust value together with its linguistic band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrustValue {
    pub crisp: f64,
    pub label: LinguisticLabel,
}

/// Complete Mamdani inference engine for three scores in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzyEngine {
    partition: FuzzyPartition,
    rules: RuleBase,
    resolution: usize,
}

impl FuzzyEngine {
    pub fn new(partition: FuzzyPartition, rules: RuleBase, resolution: usize) -> Result<Self> {
        if resolution < MIN_RESOLUTION {
            return Err(Error::Resolution(resolution));
        }
        Ok(Self {
            partition,
            rules,
            resolution,
        })
    }

    pub fn partition(&self) -> &FuzzyPartition {
        &self.partition
    }

    pub fn rules(&self) -> &RuleBase {
        &self.rules
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    /// Membership degrees of the three inputs, one triple per input.
    pub fn fuzzify(&self, inputs: [f64; 3]) -> Result<[[f64; 3]; 3]> {
        Ok([
            self.partition.fuzzify(inputs[0])?,
            self.partition.fuzzify(inputs[1])?,
            self.partition.fuzzify(inputs[2])?,
        ])
    }

    /// Merges every rule's consequent set, clipped at the rule's firing
    /// strength, into one output curve by pointwise maximum.
    pub fn aggregate(&self, strengths: &[f64; RULE_COUNT]) -> OutputCurve {
        // All rules sharing a consequent combine through max, so the curve
        // only depends on the strongest clip per output term.
        let mut clip = [0.0f64; 3];
        for (rule, &strength) in self.rules.rules().zip(strengths.iter()) {
            let slot = &mut clip[rule.consequent.index()];
            if strength > *slot {
                *slot = strength;
            }
        }
        let n = self.resolution;
        let mut samples = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let z = i as f64 / n as f64;
            let mut mu = 0.0f64;
            for label in LinguisticLabel::ALL {
                let clipped = self.partition.term(label).mu(z).min(clip[label.index()]);
                mu = mu.max(clipped);
            }
            samples.push(mu);
        }
        OutputCurve { samples }
    }

    /// Runs the full pipeline: fuzzify, fire, aggregate, defuzzify, label.
    pub fn evaluate(&self, inputs: [f64; 3]) -> Result<TrustValue> {
        let degrees = self.fuzzify(inputs)?;
        let strengths = self.rules.fire(&degrees);
        let curve = self.aggregate(&strengths);
        let crisp = curve.centroid()?;
        Ok(TrustValue {
            crisp,
            label: self.partition.label_of(crisp),
        })
    }
}

impl Default for FuzzyEngine {
    fn default() -> Self {
        Self {
            partition: FuzzyPartition::default(),
            rules: RuleBase::default(),
            resolution: DEFAULT_RESOLUTION,
        }
    }
}
