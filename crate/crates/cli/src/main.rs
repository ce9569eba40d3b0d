//! `fuzzytrust` — run the fuzzy trust engine, seeded scenarios, and the
//! canned experiments from the command line.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on configuration or
//! domain errors.

mod output;

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use fuzzytrust::fuzzy::engine_from_optional_path;
use fuzzytrust::sim::{
    chord_cost, chord_csv, detect_csv, detect_experiment, metrics_csv, rms_csv, rms_sweep,
    run_replicas, surface, surface_csv, table2, table2_csv, table3, table3_csv, trust_csv,
    InputSlot, ScenarioConfig,
};
use fuzzytrust::Error;

use output::OutputDir;

#[derive(Parser)]
#[command(name = "fuzzytrust", version, about, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the inference engine on three scores and print the crisp
    /// trust value with its linguistic label.
    FisEval {
        p1: f64,
        p2: f64,
        p3: f64,
        /// JSON file overriding partition, rules or resolution.
        #[arg(long, value_name = "PATH")]
        engine_config: Option<PathBuf>,
    },
    /// Run a scenario from a JSON config and write metrics.csv, trust.csv
    /// and manifest.json into the output directory.
    Run {
        /// Scenario config (JSON).
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        /// Output directory (created if missing).
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
        /// Overrides the seed from the config file.
        #[arg(long)]
        seed: Option<u64>,
        /// Independent replicas with derived seeds, run in parallel.
        #[arg(long, default_value_t = 1)]
        replicas: usize,
    },
    /// Run a named experiment and write its CSV plus manifest.json.
    Experiment {
        #[command(subcommand)]
        experiment: Experiment,
    },
}

#[derive(Args)]
struct CommonOut {
    /// Output directory (created if missing).
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Base seed for anything randomized.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Experiment {
    /// Reference sweep of the first input against the published outputs.
    Table2 {
        #[command(flatten)]
        common: CommonOut,
        #[arg(long, value_name = "PATH")]
        engine_config: Option<PathBuf>,
    },
    /// Error-injection sweep: bounded fuzzy output vs unbounded weighted sum.
    Table3 {
        #[command(flatten)]
        common: CommonOut,
        /// Fixed contribution added to the perturbed value.
        #[arg(long, default_value_t = 0.2)]
        y: f64,
        /// Number of sweep points over [0, 1].
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long, value_name = "PATH")]
        engine_config: Option<PathBuf>,
    },
    /// RMS aggregation error over greedy factors and malicious fractions.
    Rms {
        #[command(flatten)]
        common: CommonOut,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.25, 0.5, 0.75])]
        alphas: Vec<f64>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.4])]
        fractions: Vec<f64>,
        /// Seeds averaged per cell (at least 5).
        #[arg(long, default_value_t = 10)]
        seeds: usize,
        #[arg(long, default_value_t = 100)]
        nodes: usize,
        #[arg(long, default_value_t = 20)]
        rounds: u64,
    },
    /// Malicious-node detection accuracy vs the weighted-sum baseline.
    Detect {
        #[command(flatten)]
        common: CommonOut,
        #[arg(long, default_value_t = 0.3)]
        malicious: f64,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 0.35)]
        theta: f64,
        #[arg(long, default_value_t = 10)]
        seeds: usize,
        #[arg(long, default_value_t = 100)]
        nodes: usize,
        #[arg(long, default_value_t = 20)]
        rounds: u64,
    },
    /// Mean ring-lookup cost per population size vs the constant
    /// coordinator round trip.
    Chord {
        #[command(flatten)]
        common: CommonOut,
        /// Population sizes, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = vec![16, 64, 256])]
        n: Vec<usize>,
        #[arg(long, default_value_t = 16)]
        bits: u32,
        /// Sampled (start, key) pairs for populations too large to
        /// enumerate exhaustively.
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        /// Largest population measured over every (start, key) pair.
        #[arg(long, default_value_t = 64)]
        exhaustive_limit: usize,
    },
    /// Crisp output over a grid of two inputs with the third fixed.
    Surface {
        #[command(flatten)]
        common: CommonOut,
        /// Which input stays fixed and at what value, e.g. `p3=0.5`.
        #[arg(long, default_value = "p3=0.5")]
        fixed: String,
        /// Grid pitch over [0, 1].
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        #[arg(long, value_name = "PATH")]
        engine_config: Option<PathBuf>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            if err.kind() == ErrorKind::InvalidSubcommand {
                if err.to_string().contains("fuzzytrust experiment") {
                    eprintln!("valid experiments: table2, table3, rms, detect, chord, surface");
                } else {
                    eprintln!("valid commands: fis-eval, run, experiment");
                }
            }
            std::process::exit(code);
        }
    };
    if let Err(err) = dispatch(cli) {
        eprintln!("error: {err}");
        std::process::exit(2);
    }
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::FisEval {
            p1,
            p2,
            p3,
            engine_config,
        } => {
            let engine = engine_from_optional_path(engine_config.as_deref())?;
            let value = engine.evaluate([p1, p2, p3])?;
            println!("crisp={:.6} label={}", value.crisp, value.label);
            Ok(())
        }
        Command::Run {
            config,
            out,
            seed,
            replicas,
        } => {
            let mut scenario = ScenarioConfig::from_path(&config)?;
            if let Some(seed) = seed {
                scenario.seed = seed;
            }
            let reports = run_replicas(&scenario, replicas, replicas > 1)?;
            let dir = OutputDir::create(&out)?;
            dir.write("metrics.csv", &metrics_csv(&reports))?;
            dir.write("trust.csv", &trust_csv(&reports))?;
            dir.manifest(
                "run",
                scenario.seed,
                Some(replicas),
                serde_json::to_value(&scenario)?,
                &["metrics.csv", "trust.csv"],
            )?;
            Ok(())
        }
        Command::Experiment { experiment } => run_experiment(experiment),
    }
}

fn run_experiment(experiment: Experiment) -> Result<(), Error> {
    match experiment {
        Experiment::Table2 {
            common,
            engine_config,
        } => {
            let engine = engine_from_optional_path(engine_config.as_deref())?;
            let csv = table2_csv(&table2(&engine)?);
            write_experiment(&common, "table2", "table2.csv", &csv, serde_json::json!({}))
        }
        Experiment::Table3 {
            common,
            y,
            points,
            engine_config,
        } => {
            if points < 2 {
                return Err(Error::Config(
                    "table3 needs at least two sweep points".into(),
                ));
            }
            let engine = engine_from_optional_path(engine_config.as_deref())?;
            let xs: Vec<f64> = (0..points)
                .map(|i| i as f64 / (points - 1) as f64)
                .collect();
            let csv = table3_csv(&table3(&engine, y, &xs)?);
            let config = serde_json::json!({ "y": y, "points": points });
            write_experiment(&common, "table3", "table3.csv", &csv, config)
        }
        Experiment::Rms {
            common,
            alphas,
            fractions,
            seeds,
            nodes,
            rounds,
        } => {
            let base = ScenarioConfig::new(nodes, rounds, common.seed);
            let cells = rms_sweep(&base, &alphas, &fractions, seeds)?;
            let config = serde_json::json!({
                "alphas": alphas, "fractions": fractions, "seeds": seeds,
                "nodes": nodes, "rounds": rounds,
            });
            write_experiment(&common, "rms", "rms.csv", &rms_csv(&cells), config)
        }
        Experiment::Detect {
            common,
            malicious,
            alpha,
            theta,
            seeds,
            nodes,
            rounds,
        } => {
            let mut base = ScenarioConfig::new(nodes, rounds, common.seed);
            base.malicious_fraction = malicious;
            base.greedy_alpha = alpha;
            base.theta = theta;
            let report = detect_experiment(&base, seeds)?;
            let config = serde_json::json!({
                "malicious": malicious, "alpha": alpha, "theta": theta,
                "seeds": seeds, "nodes": nodes, "rounds": rounds,
            });
            write_experiment(
                &common,
                "detect",
                "detect.csv",
                &detect_csv(&report),
                config,
            )
        }
        Experiment::Chord {
            common,
            n,
            bits,
            samples,
            exhaustive_limit,
        } => {
            let rows = chord_cost(&n, bits, exhaustive_limit, samples, common.seed)?;
            let config = serde_json::json!({
                "n": n, "bits": bits, "samples": samples,
                "exhaustive_limit": exhaustive_limit,
            });
            write_experiment(&common, "chord", "chord.csv", &chord_csv(&rows), config)
        }
        Experiment::Surface {
            common,
            fixed,
            step,
            engine_config,
        } => {
            let engine = engine_from_optional_path(engine_config.as_deref())?;
            let (slot, value) = parse_fixed(&fixed)?;
            let rows = surface(&engine, slot, value, step)?;
            let config = serde_json::json!({ "fixed": fixed, "step": step });
            write_experiment(
                &common,
                "surface",
                "surface.csv",
                &surface_csv(&rows),
                config,
            )
        }
    }
}

fn write_experiment(
    common: &CommonOut,
    name: &str,
    file: &str,
    csv: &str,
    config: serde_json::Value,
) -> Result<(), Error> {
    let dir = OutputDir::create(&common.out)?;
    dir.write(file, csv)?;
    dir.manifest(
        &format!("experiment {name}"),
        common.seed,
        None,
        config,
        &[file],
    )?;
    Ok(())
}

/// Parses `p1=0.5` style fixed-input designators.
fn parse_fixed(text: &str) -> Result<(InputSlot, f64), Error> {
    let (slot, value) = text
        .split_once('=')
        .ok_or_else(|| Error::Config(format!("expected <slot>=<value>, got `{text}`")))?;
    let slot = InputSlot::parse(slot)?;
    let value: f64 = value
        .parse()
        .map_err(|_| Error::Config(format!("bad fixed value `{value}`")))?;
    Ok((slot, value))
}
