use std::fmt::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{DealStats, HarnessError, BUCKETS, BUCKET_LABELS};
use crate::deals::Shard;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown report format {other:?}, expected csv or json")),
        }
    }
}

/// Run parameters recorded alongside the numbers. Nothing here depends on
/// timing or worker count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportMetadata {
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shard: Option<Shard>,
    pub complete: bool,
    pub version: String,
}

impl ReportMetadata {
    pub fn sample(samples: u64, seed: u64) -> ReportMetadata {
        ReportMetadata {
            mode: "sample".into(),
            seed: Some(seed),
            samples: Some(samples),
            shard: None,
            complete: true,
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }

    pub fn exhaustive(shard: Shard, complete: bool) -> ReportMetadata {
        ReportMetadata {
            mode: "exhaustive".into(),
            seed: None,
            samples: None,
            shard: Some(shard),
            complete,
            version: env!("CARGO_PKG_VERSION").into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub plies: String,
    pub weighted_count: u64,
    pub percent: f64,
}

/// Proportions with binomial standard errors, for unweighted samples.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub red_win_proportion: f64,
    pub red_win_stderr: f64,
    pub bucket_proportion: [f64; BUCKETS],
    pub bucket_stderr: [f64; BUCKETS],
}

impl SampleSummary {
    pub fn from_stats(stats: &DealStats) -> Option<SampleSummary> {
        let n = stats.total_weight();
        if n == 0 {
            return None;
        }
        let n = n as f64;
        let prop = |count: u64| count as f64 / n;
        let stderr = |p: f64| (p * (1.0 - p) / n).sqrt();
        let red = prop(stats.red_wins);
        let bucket_proportion = stats.histogram.map(prop);
        Some(SampleSummary {
            red_win_proportion: red,
            red_win_stderr: stderr(red),
            bucket_proportion,
            bucket_stderr: bucket_proportion.map(stderr),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub metadata: ReportMetadata,
    pub stats: DealStats,
    pub table: Vec<TableRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample: Option<SampleSummary>,
}

fn percent(count: u64, total: u64) -> String {
    format!("{:.1}", 100.0 * count as f64 / total as f64)
}

fn table(stats: &DealStats) -> Vec<TableRow> {
    let total = stats.total_weight();
    if total == 0 {
        return Vec::new();
    }
    BUCKET_LABELS
        .iter()
        .zip(stats.histogram)
        .map(|(label, count)| TableRow {
            plies: label.to_string(),
            weighted_count: count,
            percent: percent(count, total).parse().expect("formatted float parses"),
        })
        .collect()
}

/// Renders stats as CSV (`plies,weighted_count,percent`, percentages to one
/// decimal place) or as a JSON [`Report`].
pub fn emit_report(stats: &DealStats, metadata: &ReportMetadata, format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => {
            let mut out = String::from("plies,weighted_count,percent\n");
            let total = stats.total_weight();
            if total > 0 {
                for (label, count) in BUCKET_LABELS.iter().zip(stats.histogram) {
                    writeln!(out, "{label},{count},{}", percent(count, total)).unwrap();
                }
            }
            out
        }
        ReportFormat::Json => {
            let sample = (metadata.mode == "sample")
                .then(|| SampleSummary::from_stats(stats))
                .flatten();
            let report = Report {
                metadata: metadata.clone(),
                stats: stats.clone(),
                table: table(stats),
                sample,
            };
            let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
            json.push('\n');
            json
        }
    }
}

pub fn parse_json_report(text: &str) -> Result<Report, HarnessError> {
    serde_json::from_str(text).map_err(|e| HarnessError::BadReport(e.to_string()))
}
