//! Fixed-header CSV rendering for reports and experiment tables.
//!
//! Numbers are written with Rust's shortest round-trip float formatting, so
//! equal runs serialize to identical bytes.

use std::fmt::Write;

use super::experiments::{
    ChordCostRow, DetectReport, RmsSweepCell, SurfaceRow, Table2Row, Table3Row,
};
use super::scenario::ReplicaReport;

fn opt(value: Option<f64>) -> String {
    value.map_or_else(String::new, |v| v.to_string())
}

/// One summary row per replica.
pub fn metrics_csv(reports: &[ReplicaReport]) -> String {
    let mut out = String::from(
        "replica,seed,nodes,rounds,theta,rms,rms_excluded,precision,recall,flagged,trust_queries,messages_total\n",
    );
    for r in reports {
        let report = &r.report;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.replica,
            report.seed,
            report.n_nodes,
            report.rounds,
            report.theta,
            report.rms,
            report.rms_excluded,
            opt(report.precision),
            opt(report.recall),
            report.flagged.len(),
            report.trust_queries,
            report.messages_total,
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// Per-round trust snapshots of every replica.
pub fn trust_csv(reports: &[ReplicaReport]) -> String {
    let mut out = String::from("replica,round,node,crisp,label\n");
    for r in reports {
        for (round, snapshot) in r.report.snapshots.iter().enumerate() {
            for (node, &crisp) in snapshot.iter().enumerate() {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.replica,
                    round,
                    node,
                    crisp,
                    r.report.label_of(crisp)
                )
                .expect("writing to a String cannot fail");
            }
        }
    }
    out
}

pub fn table2_csv(rows: &[Table2Row]) -> String {
    let mut out = String::from("p1,p2,p3,computed,reference\n");
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            row.inputs[0], row.inputs[1], row.inputs[2], row.computed, row.reference
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn table3_csv(rows: &[Table3Row]) -> String {
    let mut out = String::from("x,fuzzy,baseline\n");
    for row in rows {
        writeln!(out, "{},{},{}", row.x, row.fuzzy, row.baseline)
            .expect("writing to a String cannot fail");
    }
    out
}

pub fn rms_csv(cells: &[RmsSweepCell]) -> String {
    let mut out = String::from("alpha,malicious_fraction,seeds,mean_rms\n");
    for cell in cells {
        writeln!(
            out,
            "{},{},{},{}",
            cell.alpha, cell.malicious_fraction, cell.seeds, cell.mean_rms
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn detect_csv(report: &DetectReport) -> String {
    let mut out = String::from("seed,flagged,precision,recall,baseline_recall\n");
    for row in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            row.seed,
            row.flagged,
            opt(row.precision),
            opt(row.recall),
            opt(row.baseline_recall)
        )
        .expect("writing to a String cannot fail");
    }
    writeln!(
        out,
        "mean,,{},{},{}",
        opt(report.mean_precision),
        opt(report.mean_recall),
        opt(report.mean_baseline_recall)
    )
    .expect("writing to a String cannot fail");
    out
}

pub fn chord_csv(rows: &[ChordCostRow]) -> String {
    let mut out = String::from(
        "nodes,bits,pairs,mean_hops,max_hops,mean_dht_messages,coordinator_messages\n",
    );
    for row in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.nodes,
            row.bits,
            row.pairs,
            row.mean_hops,
            row.max_hops,
            row.mean_dht_messages,
            row.coordinator_messages
        )
        .expect("writing to a String cannot fail");
    }
    out
}

pub fn surface_csv(rows: &[SurfaceRow]) -> String {
    let mut out = String::from("p1,p2,p3,crisp\n");
    for row in rows {
        writeln!(
            out,
            "{},{},{},{}",
            row.inputs[0], row.inputs[1], row.inputs[2], row.crisp
        )
        .expect("writing to a String cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::{run_replicas, ScenarioConfig};
    use super::*;

    #[test]
    fn csv_headers_are_stable() {
        assert!(metrics_csv(&[]).starts_with("replica,seed,nodes,rounds,theta,rms"));
        assert!(trust_csv(&[]).starts_with("replica,round,node,crisp,label"));
        assert!(table2_csv(&[]).starts_with("p1,p2,p3,computed,reference"));
        assert!(table3_csv(&[]).starts_with("x,fuzzy,baseline"));
    }

    #[test]
    fn replica_runs_render_parseable_rows() {
        let config = ScenarioConfig::new(6, 2, 17);
        let reports = run_replicas(&config, 2, false).unwrap();
        let metrics = metrics_csv(&reports);
        assert_eq!(metrics.lines().count(), 3);
        let trust = trust_csv(&reports);
        // header + 2 replicas * 2 rounds * 6 nodes
        assert_eq!(trust.lines().count(), 1 + 2 * 2 * 6);
        for line in trust.lines().skip(1) {
            assert_eq!(line.split(',').count(), 5);
        }
    }
}
