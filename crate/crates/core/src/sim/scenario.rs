use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::ScenarioConfig;
use super::metrics::{detection_metrics, rms_error};
use super::profile::BehaviorProfile;
use crate::fuzzy::{FuzzyPartition, LinguisticLabel};
use crate::trust::{
    classify, compute_trust, weighted_global_reputation, Classification, FeedbackLedger,
    FeedbackScore, NEUTRAL_TRUST,
};
use crate::{NodeId, Result};

/// Everything a finished scenario run exposes.
#[derive(Debug, Clone)]
pub struct ScenarioReport {
    pub seed: u64,
    pub n_nodes: usize,
    pub rounds: u64,
    pub theta: f64,
    /// Ground-truth malicious flag per node.
    pub is_malicious: Vec<bool>,
    /// Ground-truth reputation per node (the profile's mean quality).
    pub ground_truth: Vec<f64>,
    /// Crisp trust per node after every round: `snapshots[round][node]`.
    pub snapshots: Vec<Vec<f64>>,
    /// Crisp trust per node after the final round.
    pub final_trust: Vec<f64>,
    /// Nodes classified malicious at the end of the run.
    pub flagged: Vec<NodeId>,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    /// RMS relative aggregation error of `final_trust` against ground truth.
    pub rms: f64,
    pub rms_excluded: usize,
    /// Reputation queries issued (one per transaction).
    pub trust_queries: u64,
    /// Query messages under the coordinator model: two per query.
    pub messages_total: u64,
    /// Ratings each node received as a provider.
    pub ratings_received: Vec<u64>,
    /// Unnormalized weighted-sum reputation per node, with every rater at
    /// the neutral prior weight. Zero for nodes nobody rated.
    pub baseline: Vec<f64>,
    /// Partition the run used; keeps label assignment reproducible when
    /// rendering reports.
    pub partition: FuzzyPartition,
}

impl ScenarioReport {
    pub fn label_of(&self, crisp: f64) -> LinguisticLabel {
        self.partition.label_of(crisp)
    }
}

/// One replica of a multi-replica run.
#[derive(Debug, Clone)]
pub struct ReplicaReport {
    pub replica: usize,
    pub report: ScenarioReport,
}

/// Runs one scenario to completion.
pub fn run_scenario(config: &ScenarioConfig) -> Result<ScenarioReport> {
    config.validate()?;
    let engine = config.build_engine()?;
    let policy = config.threshold();
    let n = config.n_nodes;
    let malicious_count = config.malicious_count();
    let power_count = config.power_count();

    let profiles: Vec<BehaviorProfile> = (0..n)
        .map(|node| {
            if node < malicious_count {
                config.malicious_profile
            } else {
                config.honest_profile
            }
        })
        .collect();
    let is_malicious: Vec<bool> = (0..n).map(|node| node < malicious_count).collect();
    let ground_truth: Vec<f64> = profiles.iter().map(|p| p.quality_mean).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut ledger = FeedbackLedger::new();
    let mut trust = vec![NEUTRAL_TRUST; n];
    let mut snapshots = Vec::with_capacity(config.rounds as usize);
    let mut trust_queries = 0u64;
    let mut ratings_received = vec![0u64; n];

    for round in 0..config.rounds {
        // Power nodes: the current top-k by trust, ties broken by id.
        let mut ranked: Vec<usize> = (0..n).collect();
        ranked.sort_by(|&a, &b| {
            trust[b]
                .partial_cmp(&trust[a])
                .expect("trust is finite")
                .then(a.cmp(&b))
        });
        let power = &ranked[..power_count];

        for consumer in 0..n {
            let greedy: f64 = rng.gen();
            let provider = if greedy < config.greedy_alpha {
                let candidates: Vec<usize> =
                    power.iter().copied().filter(|&p| p != consumer).collect();
                if candidates.is_empty() {
                    uniform_other(&mut rng, n, consumer)
                } else {
                    candidates[rng.gen_range(0..candidates.len())]
                }
            } else {
                uniform_other(&mut rng, n, consumer)
            };

            let quality = profiles[provider].draw_quality(&mut rng);
            let reported = profiles[consumer].report(quality);
            ledger.submit(FeedbackScore::new(
                consumer as NodeId,
                provider as NodeId,
                reported,
                round,
            )?)?;
            trust_queries += 1;
            ratings_received[provider] += 1;

            let record = compute_trust(&ledger, provider as NodeId, &engine, config.window)?;
            trust[provider] = record.crisp;
        }
        snapshots.push(trust.clone());
    }

    let flagged_mask: Vec<bool> = (0..n)
        .map(|node| {
            let record = compute_trust(&ledger, node as NodeId, &engine, config.window);
            match record {
                Ok(record) => classify(&record, &policy) == Classification::Malicious,
                // Never-rated nodes keep the neutral prior and stay trusted.
                Err(_) => NEUTRAL_TRUST < policy.theta,
            }
        })
        .collect();
    let flagged: Vec<NodeId> = flagged_mask
        .iter()
        .enumerate()
        .filter_map(|(node, &f)| f.then_some(node as NodeId))
        .collect();

    let detection = detection_metrics(&flagged_mask, &is_malicious)?;
    let rms = rms_error(&trust, &ground_truth)?;

    let baseline: Vec<f64> = (0..n)
        .map(|node| {
            let pairs: Vec<(f64, f64)> = ledger
                .scores_for(node as NodeId)
                .map(|entry| (entry.value, NEUTRAL_TRUST))
                .collect();
            if pairs.is_empty() {
                0.0
            } else {
                weighted_global_reputation(&pairs).expect("pairs are nonempty")
            }
        })
        .collect();

    Ok(ScenarioReport {
        seed: config.seed,
        n_nodes: n,
        rounds: config.rounds,
        theta: policy.theta,
        is_malicious,
        ground_truth,
        final_trust: trust,
        snapshots,
        flagged,
        precision: detection.precision,
        recall: detection.recall,
        rms: rms.value,
        rms_excluded: rms.excluded,
        trust_queries,
        messages_total: 2 * trust_queries,
        ratings_received,
        baseline,
        partition: engine.partition().clone(),
    })
}

fn uniform_other<R: Rng>(rng: &mut R, n: usize, exclude: usize) -> usize {
    let raw = rng.gen_range(0..n - 1);
    if raw >= exclude {
        raw + 1
    } else {
        raw
    }
}

/// Deterministic per-replica seed derivation (splitmix64 over the base seed
/// and the replica index).
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    splitmix64(base ^ splitmix64(stream.wrapping_add(0x9E3779B97F4A7C15)))
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// Runs `replicas` copies of the scenario with per-replica derived seeds.
///
/// With `parallel` set the replicas execute on separate threads; reports are
/// assembled in replica order either way, so the output is identical to the
/// sequential run.
pub fn run_replicas(
    config: &ScenarioConfig,
    replicas: usize,
    parallel: bool,
) -> Result<Vec<ReplicaReport>> {
    if replicas == 0 {
        return Err(crate::Error::Config(
            "at least one replica is required".into(),
        ));
    }
    let configs: Vec<ScenarioConfig> = (0..replicas)
        .map(|replica| {
            let mut c = config.clone();
            c.seed = derive_seed(config.seed, replica as u64);
            c
        })
        .collect();

    if !parallel {
        return configs
            .iter()
            .enumerate()
            .map(|(replica, c)| {
                Ok(ReplicaReport {
                    replica,
                    report: run_scenario(c)?,
                })
            })
            .collect();
    }

    std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .map(|c| scope.spawn(move || run_scenario(c)))
            .collect();
        handles
            .into_iter()
            .enumerate()
            .map(|(replica, handle)| {
                let report = handle.join().expect("replica thread panicked")?;
                Ok(ReplicaReport { replica, report })
            })
            .collect()
    })
}
