//! The canned experiments: reference-sweep reproduction, error-injection
//! comparison, RMS and detection sweeps, ring cost curves, and the output
//! surface grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::config::ScenarioConfig;
use super::scenario::{derive_seed, run_scenario};
use crate::chord::{trust_query_cost, QueryModel, RingConfig};
use crate::fuzzy::FuzzyEngine;
use crate::{Error, Result};

/// Reference sweep: the first input runs through these values while the
/// second and third stay at 0.5 and 0.9, and the crisp output is compared
/// against the published reference column (the plateau rows are quoted at
/// roughly 0.8).
pub const TABLE2_REFERENCE: [([f64; 3], f64); 10] = [
    ([0.1, 0.5, 0.9], 0.5),
    ([0.2, 0.5, 0.9], 0.544),
    ([0.3, 0.5, 0.9], 0.613),
    ([0.4, 0.5, 0.9], 0.705),
    ([0.5, 0.5, 0.9], 0.8),
    ([0.6, 0.5, 0.9], 0.8),
    ([0.7, 0.5, 0.9], 0.8),
    ([0.8, 0.5, 0.9], 0.8),
    ([0.96, 0.5, 0.9], 0.8),
    ([1.0, 0.5, 0.9], 0.8),
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table2Row {
    pub inputs: [f64; 3],
    pub computed: f64,
    pub reference: f64,
}

/// Evaluates the engine over the reference sweep.
pub fn table2(engine: &FuzzyEngine) -> Result<Vec<Table2Row>> {
    TABLE2_REFERENCE
        .iter()
        .map(|&(inputs, reference)| {
            Ok(Table2Row {
                inputs,
                computed: engine.evaluate(inputs)?.crisp,
                reference,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table3Row {
    pub x: f64,
    /// Fuzzy output with the perturbed value substituted into the first
    /// input slot of the nominal `(0.2, 0.5, 0.8)` score triple.
    pub fuzzy: f64,
    /// Weighted-sum baseline `x + y_fixed`, which runs off the unit scale.
    pub baseline: f64,
}

/// Error-injection comparison: sweeps the perturbed contribution `x` and
/// reports the bounded fuzzy output next to the unbounded weighted sum.
pub fn table3(engine: &FuzzyEngine, y_fixed: f64, xs: &[f64]) -> Result<Vec<Table3Row>> {
    if !(0.0..=1.0).contains(&y_fixed) {
        return Err(Error::Domain {
            what: "fixed baseline contribution",
            value: y_fixed,
        });
    }
    xs.iter()
        .map(|&x| {
            let fuzzy = engine.evaluate([x, 0.5, 0.8])?.crisp;
            Ok(Table3Row {
                x,
                fuzzy,
                baseline: x + y_fixed,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RmsSweepCell {
    pub alpha: f64,
    pub malicious_fraction: f64,
    pub seeds: usize,
    pub mean_rms: f64,
}

/// RMS error matrix over greedy factors and malicious fractions, each cell
/// averaged over `n_seeds` derived seeds (at least five). The same seed set
/// is reused across cells so that cells differ only in their parameters.
pub fn rms_sweep(
    base: &ScenarioConfig,
    alphas: &[f64],
    fractions: &[f64],
    n_seeds: usize,
) -> Result<Vec<RmsSweepCell>> {
    if alphas.is_empty() || fractions.is_empty() {
        return Err(Error::Empty("sweep axis"));
    }
    if n_seeds < 5 {
        return Err(Error::Config(format!(
            "rms sweep needs at least 5 seeds per cell, got {n_seeds}"
        )));
    }
    let seeds: Vec<u64> = (0..n_seeds)
        .map(|i| derive_seed(base.seed, i as u64))
        .collect();
    let mut cells = Vec::with_capacity(alphas.len() * fractions.len());
    for &alpha in alphas {
        for &fraction in fractions {
            let mut total = 0.0;
            for &seed in &seeds {
                let mut config = base.clone();
                config.greedy_alpha = alpha;
                config.malicious_fraction = fraction;
                config.seed = seed;
                total += run_scenario(&config)?.rms;
            }
            cells.push(RmsSweepCell {
                alpha,
                malicious_fraction: fraction,
                seeds: n_seeds,
                mean_rms: total / n_seeds as f64,
            });
        }
    }
    Ok(cells)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectSeedRow {
    pub seed: u64,
    pub flagged: usize,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
    /// Recall of flagging the same number of nodes with the lowest
    /// weighted-sum baseline reputation.
    pub baseline_recall: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DetectReport {
    pub rows: Vec<DetectSeedRow>,
    pub mean_precision: Option<f64>,
    pub mean_recall: Option<f64>,
    pub mean_baseline_recall: Option<f64>,
}

/// Detection accuracy of the fuzzy classifier against quantile-thresholding
/// the weighted-sum baseline, averaged over `n_seeds` derived seeds.
pub fn detect_experiment(base: &ScenarioConfig, n_seeds: usize) -> Result<DetectReport> {
    if n_seeds == 0 {
        return Err(Error::Config(
            "detection experiment needs at least one seed".into(),
        ));
    }
    let mut rows = Vec::with_capacity(n_seeds);
    for i in 0..n_seeds {
        let mut config = base.clone();
        config.seed = derive_seed(base.seed, i as u64);
        let report = run_scenario(&config)?;

        // Baseline at the equivalent quantile: flag exactly as many nodes as
        // the fuzzy classifier did, picking the lowest baseline scores.
        let mut order: Vec<usize> = (0..report.n_nodes).collect();
        order.sort_by(|&a, &b| {
            report.baseline[a]
                .partial_cmp(&report.baseline[b])
                .expect("baseline is finite")
                .then(a.cmp(&b))
        });
        let cutoff = report.flagged.len();
        let malicious_total = report.is_malicious.iter().filter(|&&m| m).count();
        let baseline_hits = order
            .iter()
            .take(cutoff)
            .filter(|&&node| report.is_malicious[node])
            .count();
        let baseline_recall =
            (malicious_total > 0).then(|| baseline_hits as f64 / malicious_total as f64);

        rows.push(DetectSeedRow {
            seed: config.seed,
            flagged: cutoff,
            precision: report.precision,
            recall: report.recall,
            baseline_recall,
        });
    }

    let mean = |pick: fn(&DetectSeedRow) -> Option<f64>| -> Option<f64> {
        let values: Vec<f64> = rows.iter().filter_map(pick).collect();
        (!values.is_empty()).then(|| values.iter().sum::<f64>() / values.len() as f64)
    };
    Ok(DetectReport {
        mean_precision: mean(|r| r.precision),
        mean_recall: mean(|r| r.recall),
        mean_baseline_recall: mean(|r| r.baseline_recall),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChordCostRow {
    pub nodes: usize,
    pub bits: u32,
    /// Number of `(start, key)` pairs measured.
    pub pairs: u64,
    pub mean_hops: f64,
    pub max_hops: u32,
    /// Mean messages per reputation query routed over the ring.
    pub mean_dht_messages: f64,
    /// Messages per query when asking the coordinator directly.
    pub coordinator_messages: u64,
}

/// Measures lookup cost for each population size. Populations up to
/// `exhaustive_limit` nodes are measured over every `(start, key)` pair;
/// larger ones over `samples` seeded random pairs.
pub fn chord_cost(
    population_sizes: &[usize],
    bits: u32,
    exhaustive_limit: usize,
    samples: u64,
    seed: u64,
) -> Result<Vec<ChordCostRow>> {
    if samples == 0 {
        return Err(Error::Config(
            "chord experiment needs at least one sample".into(),
        ));
    }
    let mut rows = Vec::with_capacity(population_sizes.len());
    for &n in population_sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, n as u64));
        let space = 1u64 << bits;
        if (n as u64) > space {
            return Err(Error::Ring(format!("{n} nodes exceed a {bits}-bit ring")));
        }
        // Distinct random identifiers.
        let mut ids = std::collections::BTreeSet::new();
        while ids.len() < n {
            ids.insert(rng.gen_range(0..space));
        }
        let ring = RingConfig::new(bits, ids.into_iter().collect()).build()?;

        let mut total_hops = 0u64;
        let mut max_hops = 0u32;
        let mut pairs = 0u64;
        if n <= exhaustive_limit {
            for &start in ring.node_ids() {
                for key in 0..space {
                    let lookup = ring.lookup(start, key)?;
                    total_hops += u64::from(lookup.hops);
                    max_hops = max_hops.max(lookup.hops);
                    pairs += 1;
                }
            }
        } else {
            let ids = ring.node_ids().to_vec();
            for _ in 0..samples {
                let start = ids[rng.gen_range(0..ids.len())];
                let key = rng.gen_range(0..space);
                let lookup = ring.lookup(start, key)?;
                total_hops += u64::from(lookup.hops);
                max_hops = max_hops.max(lookup.hops);
                pairs += 1;
            }
        }
        let mean_hops = total_hops as f64 / pairs as f64;
        let start = ring.node_ids()[0];
        rows.push(ChordCostRow {
            nodes: n,
            bits,
            pairs,
            mean_hops,
            max_hops,
            mean_dht_messages: mean_hops + 1.0,
            coordinator_messages: trust_query_cost(QueryModel::Coordinator, &ring, start, start)?,
        });
    }
    Ok(rows)
}

/// Which of the three engine inputs the surface grid holds fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputSlot {
    P1,
    P2,
    P3,
}

impl InputSlot {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(InputSlot::P1),
            "p2" => Ok(InputSlot::P2),
            "p3" => Ok(InputSlot::P3),
            other => Err(Error::Config(format!(
                "unknown input slot `{other}` (expected p1, p2 or p3)"
            ))),
        }
    }

    fn index(self) -> usize {
        match self {
            InputSlot::P1 => 0,
            InputSlot::P2 => 1,
            InputSlot::P3 => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceRow {
    pub inputs: [f64; 3],
    pub crisp: f64,
}

/// Crisp output over a grid of the two free inputs with the third fixed —
/// plot-ready data for the output surface.
pub fn surface(
    engine: &FuzzyEngine,
    fixed: InputSlot,
    fixed_value: f64,
    step: f64,
) -> Result<Vec<SurfaceRow>> {
    if !(0.0..=1.0).contains(&fixed_value) {
        return Err(Error::Domain {
            what: "fixed surface input",
            value: fixed_value,
        });
    }
    if !(step > 0.0 && step <= 0.5) {
        return Err(Error::Config(format!(
            "surface step {step} must be in (0, 0.5]"
        )));
    }
    let cells = (1.0 / step).round() as usize;
    let free: Vec<usize> = (0..3).filter(|&i| i != fixed.index()).collect();
    let mut rows = Vec::with_capacity((cells + 1) * (cells + 1));
    for i in 0..=cells {
        for j in 0..=cells {
            let mut inputs = [fixed_value; 3];
            inputs[free[0]] = i as f64 / cells as f64;
            inputs[free[1]] = j as f64 / cells as f64;
            rows.push(SurfaceRow {
                inputs,
                crisp: engine.evaluate(inputs)?.crisp,
            });
        }
    }
    Ok(rows)
}
