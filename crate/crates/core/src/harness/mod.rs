//! Batch solving of whole deal populations and the statistics they produce.

mod checkpoint;
mod report;
mod run;

pub use checkpoint::Checkpoint;
pub use report::{emit_report, parse_json_report, Report, ReportFormat, ReportMetadata, SampleSummary, TableRow};
pub use run::{run_exhaustive, run_sample, solve_fresh, ExhaustiveConfig, ExhaustiveOutcome, SampleConfig};

use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::score::Score;

/// Histogram slots: slot 0 is "at most 6 plies", slot `i` is `6 + i` plies.
pub const BUCKETS: usize = 9;
pub const BUCKET_LABELS: [&str; BUCKETS] = ["<=6", "7", "8", "9", "10", "11", "12", "13", "14"];

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("checkpoint {path} is corrupted: {reason}")]
    CorruptCheckpoint { path: PathBuf, reason: String },
    #[error("checkpoint {path} belongs to a different run: {reason}")]
    CheckpointMismatch { path: PathBuf, reason: String },
    #[error("could not start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error("invalid report: {0}")]
    BadReport(String),
}

/// Weighted game-length statistics over a set of fresh deals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DealStats {
    /// Weighted deal counts by game length; see [`BUCKET_LABELS`].
    pub histogram: [u64; BUCKETS],
    pub red_wins: u64,
    pub blue_wins: u64,
    /// Deals solved, unweighted.
    pub deals_processed: u64,
}

impl DealStats {
    pub fn bucket_of(plies: u32) -> usize {
        plies.saturating_sub(6) as usize
    }

    /// Records the perfect-play result of one fresh deal.
    pub fn record(&mut self, score: Score, weight: u64) {
        self.histogram[Self::bucket_of(score.plies_from_fresh())] += weight;
        if score.value() > 0 {
            self.red_wins += weight;
        } else {
            self.blue_wins += weight;
        }
        self.deals_processed += 1;
    }

    pub fn merge(&mut self, other: &DealStats) {
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        self.red_wins += other.red_wins;
        self.blue_wins += other.blue_wins;
        self.deals_processed += other.deals_processed;
    }

    pub fn merged(mut self, other: DealStats) -> DealStats {
        self.merge(&other);
        self
    }

    pub fn total_weight(&self) -> u64 {
        self.histogram.iter().sum()
    }

    pub fn count_for_plies(&self, plies: u32) -> u64 {
        self.histogram[Self::bucket_of(plies)]
    }

    /// Longest game length with a nonzero count.
    pub fn max_plies(&self) -> Option<u32> {
        self.histogram.iter().rposition(|&c| c > 0).map(|i| i as u32 + 6)
    }

    pub fn is_empty(&self) -> bool {
        self.deals_processed == 0
    }
}
