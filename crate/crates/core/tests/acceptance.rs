//! Acceptance suite: one test per release criterion, each printing a
//! PASS line when it holds. Run with `cargo test --test acceptance --
//! --nocapture` to see the lines.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuzzytrust::chord::{trust_query_cost, QueryModel, RingConfig};
use fuzzytrust::fuzzy::{
    FuzzyEngine, FuzzyPartition, LinguisticLabel, MembershipFunction, RuleBase,
};
use fuzzytrust::semantic::{cluster, similarity, ConceptSet, SimilarityParams};
use fuzzytrust::sim::{
    detect_experiment, metrics_csv, rms_sweep, run_replicas, table2, table3, trust_csv,
    ScenarioConfig,
};

fn pass(criterion: u32, what: &str, started: Instant) {
    println!(
        "acceptance criterion {criterion} ({what}): PASS [{:.2}s]",
        started.elapsed().as_secs_f64()
    );
}

/// Criterion 1: the reference sweep matches the published outputs within
/// ±0.15 (rows 1-4 pointwise, rows 5-10 inside the ~0.8 plateau band) and is
/// non-decreasing in the swept input. Completes within a second.
#[test]
fn criterion_1_reference_sweep_reproduction() {
    let started = Instant::now();
    let rows = table2(&FuzzyEngine::default()).unwrap();
    assert_eq!(rows.len(), 10);
    for row in &rows[..4] {
        assert!(
            (row.computed - row.reference).abs() <= 0.15,
            "row {:?}: computed {} vs reference {}",
            row.inputs,
            row.computed,
            row.reference
        );
    }
    for row in &rows[4..] {
        assert!(
            (0.65..=0.9).contains(&row.computed),
            "plateau row {:?} escaped the band: {}",
            row.inputs,
            row.computed
        );
    }
    for pair in rows.windows(2) {
        assert!(
            pair[1].computed >= pair[0].computed - 1e-12,
            "sweep decreased between {:?} and {:?}: {} -> {}",
            pair[0].inputs,
            pair[1].inputs,
            pair[0].computed,
            pair[1].computed
        );
    }
    assert!(
        started.elapsed().as_secs_f64() < 1.0,
        "criterion 1 overran its budget"
    );
    pass(1, "reference sweep reproduction", started);
}

/// Criterion 2: over a 101-point sweep of the perturbed input the fuzzy
/// output stays inside [0, 1], while the weighted-sum baseline reproduces
/// 0.2, 0.3, ..., 1.2 exactly (to 1e-12). Completes within a second.
#[test]
fn criterion_2_boundedness_and_baseline_exactness() {
    let started = Instant::now();
    let engine = FuzzyEngine::default();

    let grid: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).collect();
    for row in table3(&engine, 0.2, &grid).unwrap() {
        assert!(
            (0.0..=1.0).contains(&row.fuzzy),
            "fuzzy output escaped the unit interval at x = {}: {}",
            row.x,
            row.fuzzy
        );
    }

    let coarse: Vec<f64> = (0..=10).map(|i| i as f64 / 10.0).collect();
    let rows = table3(&engine, 0.2, &coarse).unwrap();
    for (i, row) in rows.iter().enumerate() {
        let expected = (i as f64 + 2.0) / 10.0;
        assert!(
            (row.baseline - expected).abs() < 1e-12,
            "baseline at x = {} is {}, expected {}",
            row.x,
            row.baseline,
            expected
        );
    }
    assert!(
        rows.last().unwrap().baseline > 1.0,
        "baseline must run off the unit scale"
    );
    assert!(
        started.elapsed().as_secs_f64() < 1.0,
        "criterion 2 overran its budget"
    );
    pass(
        2,
        "bounded fuzzy output vs exact unbounded baseline",
        started,
    );
}

/// Analytic centroid of `min(mu, s)` for a trapezoid `(a, b, c, d)` — the
/// independent oracle for criterion 3. The clipped region decomposes into a
/// rising wedge, a flat slab, and a falling wedge.
fn clipped_trapezoid_centroid(mf: &MembershipFunction, s: f64) -> f64 {
    let (a, b, c, d) = mf.breakpoints();
    let mut area = 0.0;
    let mut moment = 0.0;
    if b > a {
        let w = s * (b - a);
        area += s * w / 2.0;
        moment += (w * w * w / 3.0 + a * w * w / 2.0) / (b - a);
    }
    let p = a + s * (b - a);
    let q = d - s * (d - c);
    area += s * (q - p);
    moment += s * (q * q - p * p) / 2.0;
    if d > c {
        let v = s * (d - c);
        area += s * v / 2.0;
        moment += (d * v * v / 2.0 - v * v * v / 3.0) / (d - c);
    }
    moment / area
}

fn sampled_centroid(mf: &MembershipFunction, clip: f64, resolution: usize) -> f64 {
    let samples: Vec<f64> = (0..=resolution)
        .map(|i| mf.eval(i as f64 / resolution as f64).unwrap().min(clip))
        .collect();
    fuzzytrust::fuzzy::OutputCurve::from_samples(samples)
        .unwrap()
        .centroid()
        .unwrap()
}

/// Criterion 3: the fully fired Low set defuzzifies to 1/6 within 1e-3 at
/// resolution 1000; 100 random firing configurations converge between
/// resolutions 1000 and 100000 to better than 1e-3; and single-rule curves
/// match the analytic trapezoid centroid within 1e-4. Completes within 10 s.
#[test]
fn criterion_3_centroid_correctness() {
    let started = Instant::now();
    let low = MembershipFunction::new(0.0, 0.0, 0.0, 0.5).unwrap();
    let got = sampled_centroid(&low, 1.0, 1000);
    assert!((got - 1.0 / 6.0).abs() < 1e-3, "low centroid {got}");

    let partition = FuzzyPartition::default();
    let rules = RuleBase::default();
    let coarse = FuzzyEngine::new(partition.clone(), rules.clone(), 1000).unwrap();
    let fine = FuzzyEngine::new(partition.clone(), rules.clone(), 100_000).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xC3);
    for round in 0..100 {
        let mut strengths = [0.0f64; fuzzytrust::fuzzy::RULE_COUNT];
        for s in strengths.iter_mut() {
            // Roughly half the rules stay silent so sparse firings are covered.
            *s = if rng.gen::<f64>() < 0.5 {
                rng.gen()
            } else {
                0.0
            };
        }
        if strengths.iter().all(|&s| s == 0.0) {
            strengths[round % strengths.len()] = rng.gen_range(0.1..1.0);
        }
        let at_1k = coarse.aggregate(&strengths).centroid().unwrap();
        let at_100k = fine.aggregate(&strengths).centroid().unwrap();
        assert!(
            (at_1k - at_100k).abs() < 1e-3,
            "configuration {round} did not converge: {at_1k} vs {at_100k}"
        );
    }

    // Single-rule curves against the closed-form trapezoid centroid.
    let terms = [
        partition.low,
        partition.medium,
        partition.high,
        MembershipFunction::new(0.5, 1.0, 1.0, 1.0).unwrap(),
    ];
    for mf in &terms {
        for &clip in &[0.25, 0.5, 0.75, 1.0] {
            let numeric = sampled_centroid(mf, clip, 1000);
            let analytic = clipped_trapezoid_centroid(mf, clip);
            assert!(
                (numeric - analytic).abs() < 1e-4,
                "clip {clip} of {:?}: {numeric} vs analytic {analytic}",
                mf.breakpoints()
            );
        }
    }
    assert!(
        started.elapsed().as_secs_f64() < 10.0,
        "criterion 3 overran its budget"
    );
    pass(3, "centroid correctness and convergence", started);
}

/// Criterion 4: the completed rule base holds exactly 27 rules, every
/// built-in row verbatim, and exactly one antecedent — (M, M, H) — deviating
/// from the median-label default.
#[test]
fn criterion_4_rule_base_completion() {
    let started = Instant::now();
    let base = RuleBase::default();
    let rules: Vec<_> = base.rules().collect();
    assert_eq!(rules.len(), 27);

    use LinguisticLabel::{High, Low, Medium};
    let expected_rows = [
        ((Low, Low, Low), Low),
        ((High, High, High), High),
        ((Low, Medium, Medium), Medium),
        ((High, High, Medium), High),
        ((Medium, Medium, Medium), Medium),
        ((Low, Medium, High), Medium),
        ((Low, Medium, Low), Low),
        ((High, Medium, High), High),
        ((Low, Low, High), Low),
        ((Medium, Medium, High), High),
    ];
    for (antecedent, consequent) in expected_rows {
        assert_eq!(
            base.consequent(antecedent),
            consequent,
            "row {antecedent:?}"
        );
    }

    let deviants: Vec<_> = rules
        .iter()
        .filter(|rule| {
            let (a, b, c) = rule.antecedent;
            rule.consequent != LinguisticLabel::median(a, b, c)
        })
        .collect();
    assert_eq!(deviants.len(), 1, "deviants: {deviants:?}");
    assert_eq!(deviants[0].antecedent, (Medium, Medium, High));
    pass(4, "rule base completion", started);
}

/// Criterion 5: on a 16-bit ring, mean lookup hops stay at or below
/// log2(N) + 1 for N in {16, 64, 256} (exhaustive pairs up to N = 64, 1e5
/// sampled pairs for N = 256), greedy routing owners agree with a linear
/// scan everywhere exhaustive, and the coordinator path always costs exactly
/// two messages. Completes within 30 s.
#[test]
fn criterion_5_ring_cost_shape() {
    let started = Instant::now();
    const BITS: u32 = 16;
    let space = 1u64 << BITS;

    let mut means = Vec::new();
    for &n in &[16usize, 64, 256] {
        let mut rng = ChaCha8Rng::seed_from_u64(0x51 + n as u64);
        let mut ids = std::collections::BTreeSet::new();
        while ids.len() < n {
            ids.insert(rng.gen_range(0..space));
        }
        let ids: Vec<u64> = ids.into_iter().collect();
        let ring = RingConfig::new(BITS, ids.clone()).build().unwrap();

        let mut total_hops = 0u64;
        let mut pairs = 0u64;
        if n <= 64 {
            // Linear-scan owner per key, computed independently of routing.
            let owner_oracle: Vec<u64> = (0..space)
                .map(|key| {
                    *ids.iter()
                        .min_by_key(|&&id| id.wrapping_sub(key) & (space - 1))
                        .unwrap()
                })
                .collect();
            for &start in &ids {
                for key in 0..space {
                    let lookup = ring.lookup(start, key).unwrap();
                    assert_eq!(
                        lookup.owner, owner_oracle[key as usize],
                        "owner mismatch at start {start}, key {key}"
                    );
                    assert!(lookup.hops <= BITS, "hop bound broken at key {key}");
                    total_hops += u64::from(lookup.hops);
                    pairs += 1;
                }
            }
        } else {
            for _ in 0..100_000 {
                let start = ids[rng.gen_range(0..ids.len())];
                let key = rng.gen_range(0..space);
                total_hops += u64::from(ring.lookup(start, key).unwrap().hops);
                pairs += 1;
            }
        }
        let mean = total_hops as f64 / pairs as f64;
        let bound = (n as f64).log2() + 1.0;
        assert!(mean <= bound, "N = {n}: mean hops {mean} above {bound}");
        if n == 16 {
            // The smallest population stays under log2(N) outright.
            assert!(mean <= 4.0, "N = 16: mean hops {mean} above log2(16)");
        }
        means.push(mean);

        for &start in ids.iter().take(8) {
            assert_eq!(
                trust_query_cost(QueryModel::Coordinator, &ring, start, ids[0]).unwrap(),
                2
            );
        }
    }
    // Routed cost grows with the population while the coordinator stays flat.
    assert!(
        means[0] < means[1] && means[1] < means[2],
        "means did not grow: {means:?}"
    );
    assert!(
        started.elapsed().as_secs_f64() < 30.0,
        "criterion 5 overran its budget"
    );
    pass(5, "ring lookup cost shape", started);
}

/// Criterion 6: with N = 100 and 20 rounds averaged over 10 seeds, the RMS
/// aggregation error at 40% malicious nodes is at least the error at 10%
/// for every greedy factor in {0.25, 0.5, 0.75}; a clean noiseless
/// population scores below 0.1. Completes within 60 s.
#[test]
fn criterion_6_rms_experiment_shape() {
    let started = Instant::now();
    let base = ScenarioConfig::new(100, 20, 0x46);
    let alphas = [0.25, 0.5, 0.75];
    let cells = rms_sweep(&base, &alphas, &[0.1, 0.4], 10).unwrap();
    for &alpha in &alphas {
        let at = |fraction: f64| {
            cells
                .iter()
                .find(|cell| cell.alpha == alpha && cell.malicious_fraction == fraction)
                .map(|cell| cell.mean_rms)
                .unwrap()
        };
        let low = at(0.1);
        let high = at(0.4);
        assert!(
            high >= low,
            "alpha {alpha}: rms at 40% malicious ({high}) below rms at 10% ({low})"
        );
    }

    let mut clean = ScenarioConfig::new(100, 20, 0x47);
    clean.honest_profile.quality_spread = 0.0;
    let clean_cells = rms_sweep(&clean, &[0.0], &[0.0], 10).unwrap();
    assert!(
        clean_cells[0].mean_rms < 0.1,
        "noiseless honest rms = {}",
        clean_cells[0].mean_rms
    );
    assert!(
        started.elapsed().as_secs_f64() < 60.0,
        "criterion 6 overran its budget"
    );
    pass(6, "rms experiment shape", started);
}

/// Criterion 7: N = 100, 30% malicious (quality means 0.15 vs 0.85, spread
/// 0.1), 20 rounds, theta = 0.35, averaged over 10 seeds: precision and
/// recall both reach 0.9, and the fuzzy classifier's recall is at least the
/// recall of quantile-thresholding the weighted-sum baseline. Completes
/// within 60 s.
#[test]
fn criterion_7_detection_accuracy() {
    let started = Instant::now();
    let mut base = ScenarioConfig::new(100, 20, 0x42);
    base.malicious_fraction = 0.3;
    base.theta = 0.35;
    let report = detect_experiment(&base, 10).unwrap();

    let precision = report.mean_precision.expect("flagged sets are nonempty");
    let recall = report.mean_recall.expect("malicious nodes exist");
    let baseline = report.mean_baseline_recall.expect("malicious nodes exist");
    assert!(precision >= 0.9, "mean precision {precision}");
    assert!(recall >= 0.9, "mean recall {recall}");
    assert!(
        recall >= baseline,
        "fuzzy recall {recall} fell below baseline quantile recall {baseline}"
    );
    assert!(
        started.elapsed().as_secs_f64() < 60.0,
        "criterion 7 overran its budget"
    );
    pass(7, "malicious-node detection accuracy", started);
}

/// Criterion 8: the similarity implementation matches a brute-force
/// set-arithmetic oracle exactly on 1000 random pairs, and clustering yields
/// a partition of 100 random profiles for every threshold in {0.1, ..., 0.9}.
#[test]
fn criterion_8_similarity_and_clustering_oracle() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x58);
    let universe: Vec<String> = (0..30).map(|i| format!("concept{i}")).collect();
    let random_set = |rng: &mut ChaCha8Rng| -> ConceptSet {
        universe
            .iter()
            .filter(|_| rng.gen::<f64>() < 0.3)
            .cloned()
            .collect()
    };

    for _ in 0..1000 {
        let a = random_set(&mut rng);
        let b = random_set(&mut rng);
        let alpha: f64 = rng.gen();
        let beta: f64 = rng.gen();
        let params = SimilarityParams::new(alpha, beta).unwrap();

        // Brute force: count by scanning the universe, no set machinery.
        let mut common = 0.0;
        let mut only_a = 0.0;
        let mut only_b = 0.0;
        for concept in &universe {
            match (a.contains(concept), b.contains(concept)) {
                (true, true) => common += 1.0,
                (true, false) => only_a += 1.0,
                (false, true) => only_b += 1.0,
                (false, false) => {}
            }
        }
        let denominator = common + (alpha * only_a + beta * only_b);
        let expected = if a.is_empty() && b.is_empty() {
            1.0
        } else if denominator == 0.0 {
            0.0
        } else {
            common / denominator
        };
        let got = similarity(&a, &b, params);
        assert!(
            got == expected,
            "similarity mismatch: got {got}, oracle {expected} (common {common}, \
             only_a {only_a}, only_b {only_b}, alpha {alpha}, beta {beta})"
        );
    }

    let nodes: Vec<(u64, ConceptSet)> = (0..100u64).map(|id| (id, random_set(&mut rng))).collect();
    for tenth in 1..=9u32 {
        let tau = f64::from(tenth) / 10.0;
        let vos = cluster(&nodes, tau, SimilarityParams::default()).unwrap();
        let mut seen = std::collections::BTreeSet::new();
        for vo in &vos {
            assert!(!vo.members.is_empty());
            assert!(vo.members.contains(&vo.coordinator));
            for &member in &vo.members {
                assert!(
                    seen.insert(member),
                    "node {member} in two organizations at tau {tau}"
                );
            }
        }
        assert_eq!(
            seen.len(),
            100,
            "partition does not cover all nodes at tau {tau}"
        );
    }
    pass(8, "similarity and clustering oracle", started);
}

/// Criterion 9: a scenario run twice with the same seed renders
/// byte-identical CSVs, with and without replica parallelism.
#[test]
fn criterion_9_deterministic_outputs() {
    let started = Instant::now();
    let mut config = ScenarioConfig::new(40, 6, 0x59);
    config.malicious_fraction = 0.25;
    config.greedy_alpha = 0.5;

    let first = run_replicas(&config, 4, true).unwrap();
    let second = run_replicas(&config, 4, true).unwrap();
    let sequential = run_replicas(&config, 4, false).unwrap();

    let csv =
        |reports: &[fuzzytrust::sim::ReplicaReport]| (metrics_csv(reports), trust_csv(reports));
    let (metrics_a, trust_a) = csv(&first);
    let (metrics_b, trust_b) = csv(&second);
    let (metrics_c, trust_c) = csv(&sequential);
    assert_eq!(
        metrics_a.as_bytes(),
        metrics_b.as_bytes(),
        "parallel reruns diverged"
    );
    assert_eq!(
        trust_a.as_bytes(),
        trust_b.as_bytes(),
        "parallel reruns diverged"
    );
    assert_eq!(
        metrics_a.as_bytes(),
        metrics_c.as_bytes(),
        "parallel vs sequential diverged"
    );
    assert_eq!(
        trust_a.as_bytes(),
        trust_c.as_bytes(),
        "parallel vs sequential diverged"
    );
    pass(9, "deterministic byte-identical outputs", started);
}
