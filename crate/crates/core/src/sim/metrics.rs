use crate::{Error, Result};

/// Entries whose computed value falls below this are excluded from the RMS
/// denominator instead of blowing it up.
pub const RMS_EPSILON: f64 = 1e-6;

/// Root-mean-square relative aggregation error, plus how many entries were
/// excluded for a near-zero computed value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmsError {
    pub value: f64,
    pub excluded: usize,
}

/// `sqrt(mean(((v_i - u_i) / v_i)^2))` over the entries with
/// `v_i >= RMS_EPSILON`, where `v` are the computed and `u` the ground-truth
/// reputations.
pub fn rms_error(computed: &[f64], truth: &[f64]) -> Result<RmsError> {
    if computed.len() != truth.len() {
        return Err(Error::Config(format!(
            "rms inputs differ in length: {} vs {}",
            computed.len(),
            truth.len()
        )));
    }
    if computed.is_empty() {
        return Err(Error::Empty("rms input"));
    }
    for &v in computed.iter().chain(truth.iter()) {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain {
                what: "rms entry",
                value: v,
            });
        }
    }
    let mut sum = 0.0;
    let mut used = 0usize;
    for (&v, &u) in computed.iter().zip(truth.iter()) {
        if v < RMS_EPSILON {
            continue;
        }
        let rel = (v - u) / v;
        sum += rel * rel;
        used += 1;
    }
    if used == 0 {
        return Err(Error::RmsAllExcluded);
    }
    Ok(RmsError {
        value: (sum / used as f64).sqrt(),
        excluded: computed.len() - used,
    })
}

/// Precision and recall of a malicious-node classification. Either metric is
/// absent when its denominator is zero (nothing flagged, or no actual
/// malicious nodes).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectionMetrics {
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    pub true_positives: usize,
    pub false_positives: usize,
    pub false_negatives: usize,
}

/// Compares per-node flags against ground truth; `flagged[i]` is the
/// classifier's verdict for node `i` and `malicious[i]` the truth.
pub fn detection_metrics(flagged: &[bool], malicious: &[bool]) -> Result<DetectionMetrics> {
    if flagged.len() != malicious.len() {
        return Err(Error::Config(format!(
            "detection inputs differ in length: {} vs {}",
            flagged.len(),
            malicious.len()
        )));
    }
    let mut tp = 0;
    let mut fp = 0;
    let mut fn_ = 0;
    for (&f, &m) in flagged.iter().zip(malicious.iter()) {
        match (f, m) {
            (true, true) => tp += 1,
            (true, false) => fp += 1,
            (false, true) => fn_ += 1,
            (false, false) => {}
        }
    }
    let precision = (tp + fp > 0).then(|| tp as f64 / (tp + fp) as f64);
    let recall = (tp + fn_ > 0).then(|| tp as f64 / (tp + fn_) as f64);
    Ok(DetectionMetrics {
        precision,
        recall,
        true_positives: tp,
        false_positives: fp,
        false_negatives: fn_,
    })
}
