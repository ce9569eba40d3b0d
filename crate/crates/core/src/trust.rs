//! The trust agent hosted at a VO coordinator.
//!
//! Consumers submit per-transaction feedback scores to their coordinator's
//! append-only [`FeedbackLedger`]. When a node's trust is queried, all of its
//! in-window scores are reduced to the `(min, median, max)` order statistics
//! and run through the fuzzy engine; the crisp result is compared against the
//! super-peer threshold to classify the node. The module also carries the
//! weighted-sum reputation baseline and multiplicative transitive trust for
//! the comparison experiments.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fuzzy::{FuzzyEngine, LinguisticLabel};
use crate::{Error, NodeId, Result};

/// Trust assigned to nodes nobody has rated yet: the midpoint of the scale.
pub const NEUTRAL_TRUST: f64 = 0.5;

/// Default cap on transitive trust path length.
pub const DEFAULT_PATH_LENGTH: usize = 3;

/// One rating of a transaction, issued by `rater` about `ratee`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeedbackScore {
    pub rater: NodeId,
    pub ratee: NodeId,
    pub value: f64,
    pub round: u64,
}

impl FeedbackScore {
    pub fn new(rater: NodeId, ratee: NodeId, value: f64, round: u64) -> Result<Self> {
        if rater == ratee {
            return Err(Error::SelfRating(rater));
        }
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::Domain {
                what: "feedback score",
                value,
            });
        }
        Ok(Self {
            rater,
            ratee,
            value,
            round,
        })
    }
}

/// Append-only record of feedback scores, indexed by ratee.
#[derive(Debug, Clone, Default)]
pub struct FeedbackLedger {
    entries: Vec<FeedbackScore>,
    by_ratee: BTreeMap<NodeId, Vec<usize>>,
    latest_round: Option<u64>,
}

impl FeedbackLedger {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a score. Entries are never mutated or removed.
    pub fn submit(&mut self, score: FeedbackScore) -> Result<()> {
        // Re-validate so hand-built structs cannot corrupt the ledger.
        let score = FeedbackScore::new(score.rater, score.ratee, score.value, score.round)?;
        self.by_ratee
            .entry(score.ratee)
            .or_default()
            .push(self.entries.len());
        self.latest_round = Some(
            self.latest_round
                .map_or(score.round, |r| r.max(score.round)),
        );
        self.entries.push(score);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Highest round number seen so far.
    pub fn latest_round(&self) -> Option<u64> {
        self.latest_round
    }

    pub fn entries(&self) -> &[FeedbackScore] {
        &self.entries
    }

    /// All entries about `node`, in submission order.
    pub fn scores_for(&self, node: NodeId) -> impl Iterator<Item = &FeedbackScore> {
        self.by_ratee
            .get(&node)
            .into_iter()
            .flat_map(|ixs| ixs.iter().map(|&ix| &self.entries[ix]))
    }

    /// Serializes the ledger as `rater,ratee,value,round` CSV.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("rater,ratee,value,round\n");
        for entry in &self.entries {
            out.push_str(&format!(
                "{},{},{},{}\n",
                entry.rater, entry.ratee, entry.value, entry.round
            ));
        }
        out
    }

    /// Parses the CSV form produced by [`FeedbackLedger::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        match lines.next() {
            Some("rater,ratee,value,round") => {}
            other => {
                return Err(Error::Config(format!(
                    "bad ledger header: {:?}",
                    other.unwrap_or("")
                )))
            }
        }
        let mut ledger = Self::new();
        for (lineno, line) in lines.enumerate() {
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                return Err(Error::Config(format!(
                    "bad ledger row {}: {line}",
                    lineno + 2
                )));
            }
            let parse = |s: &str, what: &str| -> Result<f64> {
                s.parse::<f64>()
                    .map_err(|_| Error::Config(format!("bad {what} in ledger row: {line}")))
            };
            let rater = fields[0]
                .parse::<NodeId>()
                .map_err(|_| Error::Config(format!("bad rater in ledger row: {line}")))?;
            let ratee = fields[1]
                .parse::<NodeId>()
                .map_err(|_| Error::Config(format!("bad ratee in ledger row: {line}")))?;
            let value = parse(fields[2], "value")?;
            let round = fields[3]
                .parse::<u64>()
                .map_err(|_| Error::Config(format!("bad round in ledger row: {line}")))?;
            ledger.submit(FeedbackScore::new(rater, ratee, value, round)?)?;
        }
        Ok(ledger)
    }
}

/// How much ledger history a trust computation looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Window {
    /// Entire ledger. The trust agent keeps no decay or horizon by default.
    #[default]
    Full,
    /// Only entries from the last `n` rounds, counted back from the ledger's
    /// latest round.
    LastRounds(u64),
}

impl Window {
    fn admits(self, round: u64, latest: u64) -> bool {
        match self {
            Window::Full => true,
            Window::LastRounds(n) => round.saturating_add(n) > latest,
        }
    }
}

/// Crisp trust plus linguistic band for one node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrustRecord {
    pub node: NodeId,
    pub crisp: f64,
    pub label: LinguisticLabel,
    /// Latest ledger round the record reflects.
    pub round: u64,
}

/// Reduces arbitrarily many scores to the engine's three inputs:
/// `(min, median, max)`.
///
/// The median of an even count is the mean of the two central order
/// statistics; a single score is replicated across all three slots. Being
/// order statistics, the reduction is invariant under permutation of the
/// input, so trust depends only on the multiset of scores.
pub fn reduce_scores(scores: &[f64]) -> Result<(f64, f64, f64)> {
    if scores.is_empty() {
        return Err(Error::Empty("score list"));
    }
    let mut sorted = scores.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("scores are finite"));
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
    };
    Ok((sorted[0], median, sorted[n - 1]))
}

/// Computes the trust record of `node` from its in-window feedback.
///
/// Fails with [`Error::UnknownNode`] when the window holds no feedback for
/// the node; callers conventionally fall back to [`NEUTRAL_TRUST`].
pub fn compute_trust(
    ledger: &FeedbackLedger,
    node: NodeId,
    engine: &FuzzyEngine,
    window: Window,
) -> Result<TrustRecord> {
    let latest = ledger.latest_round().unwrap_or(0);
    let scores: Vec<f64> = ledger
        .scores_for(node)
        .filter(|entry| window.admits(entry.round, latest))
        .map(|entry| entry.value)
        .collect();
    if scores.is_empty() {
        return Err(Error::UnknownNode(node));
    }
    let (low, mid, high) = reduce_scores(&scores)?;
    let value = engine.evaluate([low, mid, high])?;
    Ok(TrustRecord {
        node,
        crisp: value.crisp,
        label: value.label,
        round: latest,
    })
}

/// Super-peer classification threshold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdPolicy {
    pub theta: f64,
}

impl ThresholdPolicy {
    pub fn new(theta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&theta) {
            return Err(Error::Domain {
                what: "threshold theta",
                value: theta,
            });
        }
        Ok(Self { theta })
    }
}

impl Default for ThresholdPolicy {
    fn default() -> Self {
        // Sits above the all-Low centroid (1/6) and below the Medium band,
        // so persistently low-rated nodes fall under it.
        Self { theta: 0.35 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    Trusted,
    Malicious,
}

/// A node is malicious iff its crisp trust is strictly below theta.
pub fn classify(record: &TrustRecord, policy: &ThresholdPolicy) -> Classification {
    if record.crisp < policy.theta {
        Classification::Malicious
    } else {
        Classification::Trusted
    }
}

/// Weighted-sum global reputation: `sum(s_i * R_i)` over `(score, rater
/// reputation)` pairs, kept unnormalized on purpose — the sum can exceed 1,
/// which is exactly the fragility the fuzzy pipeline avoids.
pub fn weighted_global_reputation(local_scores: &[(f64, f64)]) -> Result<f64> {
    if local_scores.is_empty() {
        return Err(Error::Empty("weighted reputation input"));
    }
    Ok(local_scores
        .iter()
        .map(|(score, reputation)| score * reputation)
        .sum())
}

/// Normalized variant: `sum(s_i * R_i) / sum(R_i)`.
pub fn weighted_global_reputation_normalized(local_scores: &[(f64, f64)]) -> Result<f64> {
    let total: f64 = local_scores.iter().map(|(_, reputation)| reputation).sum();
    if total == 0.0 {
        return Err(Error::Empty("rater reputations all zero"));
    }
    Ok(weighted_global_reputation(local_scores)? / total)
}

/// Trust propagated over one edge pair: if A trusts B at `x` and B trusts C
/// at `y`, A trusts C at `x * y`.
pub fn transitive_trust(x: f64, y: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
    x * y
}

/// Trust along a chain of edges: the product of the edge values.
pub fn chain_trust(edges: &[f64]) -> f64 {
    edges.iter().copied().fold(1.0, transitive_trust)
}

/// Directed graph of pairwise trust edges supporting capped-length path
/// queries (the web of trust).
#[derive(Debug, Clone, Default)]
pub struct TrustGraph {
    edges: BTreeMap<NodeId, Vec<(NodeId, f64)>>,
}

impl TrustGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_edge(&mut self, from: NodeId, to: NodeId, trust: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&trust) {
            return Err(Error::Domain {
                what: "edge trust",
                value: trust,
            });
        }
        self.edges.entry(from).or_default().push((to, trust));
        Ok(())
    }

    /// Best transitive trust from `from` to `to` over paths of at most
    /// `max_edges` edges; the maximum path product wins. `None` when no such
    /// path exists.
    pub fn path_trust(&self, from: NodeId, to: NodeId, max_edges: usize) -> Option<f64> {
        if from == to {
            return Some(1.0);
        }
        let mut best: Option<f64> = None;
        let mut visited = vec![from];
        self.search(from, to, max_edges, 1.0, &mut visited, &mut best);
        best
    }

    fn search(
        &self,
        at: NodeId,
        goal: NodeId,
        budget: usize,
        product: f64,
        visited: &mut Vec<NodeId>,
        best: &mut Option<f64>,
    ) {
        if budget == 0 {
            return;
        }
        let Some(neighbours) = self.edges.get(&at) else {
            return;
        };
        for &(next, trust) in neighbours {
            let reached = transitive_trust(product, trust);
            if next == goal {
                if best.is_none_or(|b| reached > b) {
                    *best = Some(reached);
                }
                continue;
            }
            if visited.contains(&next) {
                continue;
            }
            visited.push(next);
            self.search(next, goal, budget - 1, reached, visited, best);
            visited.pop();
        }
    }
}
