use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::checkpoint::Checkpoint;
use super::{DealStats, HarnessError};
use crate::deals::{self, Shard};
use crate::engine::Deal;
use crate::score::Score;
use crate::solver::solve_score;

/// Perfect-play result of a fresh deal.
pub fn solve_fresh(deal: &Deal) -> Score {
    solve_score(&deals::initial_state(deal)).score
}

fn pool(workers: usize) -> Result<rayon::ThreadPool, HarnessError> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build()?)
}

/// Rate-limited progress lines on standard error.
struct Progress {
    enabled: bool,
    started: Instant,
    done: AtomicU64,
    resumed_at: u64,
    total: u64,
}

impl Progress {
    fn new(enabled: bool, resumed_at: u64, total: u64) -> Progress {
        Progress {
            enabled,
            started: Instant::now(),
            done: AtomicU64::new(resumed_at),
            resumed_at,
            total,
        }
    }

    fn tick(&self, n: u64) {
        let done = self.done.fetch_add(n, Ordering::Relaxed) + n;
        if self.enabled && (done % 1000 < n || done == self.total) {
            let secs = self.started.elapsed().as_secs_f64().max(1e-9);
            let rate = (done - self.resumed_at) as f64 / secs;
            eprintln!("{done}/{} deals, {rate:.1} deals/s", self.total);
        }
    }
}

#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
    pub progress: bool,
}

/// Solves `samples` uniformly random deals drawn from a ChaCha8 stream seeded
/// with `seed`, each with weight 1.
pub fn run_sample(config: &SampleConfig) -> Result<DealStats, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let deals: Vec<Deal> = (0..config.samples).map(|_| deals::random_deal(&mut rng)).collect();
    let progress = Progress::new(config.progress, 0, config.samples);
    let stats = pool(config.workers)?.install(|| {
        deals
            .par_iter()
            .map(|d| {
                let mut s = DealStats::default();
                s.record(solve_fresh(d), 1);
                progress.tick(1);
                s
            })
            .reduce(DealStats::default, DealStats::merged)
    });
    Ok(stats)
}

#[derive(Clone, Debug)]
pub struct ExhaustiveConfig {
    pub shard: Shard,
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    /// Shard positions solved between checkpoints.
    pub block_size: u64,
    /// Return after this many blocks even if the shard is unfinished.
    pub stop_after_blocks: Option<u64>,
    pub progress: bool,
}

impl ExhaustiveConfig {
    pub const DEFAULT_BLOCK_SIZE: u64 = 10_000;

    pub fn new(shard: Shard) -> ExhaustiveConfig {
        ExhaustiveConfig {
            shard,
            workers: 1,
            checkpoint: None,
            block_size: Self::DEFAULT_BLOCK_SIZE,
            stop_after_blocks: None,
            progress: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveOutcome {
    pub stats: DealStats,
    pub next_position: u64,
    pub complete: bool,
}

/// Solves every deal of a shard, weighting each by its joker class.
///
/// With a checkpoint path the run resumes from the saved position and saves
/// after every block.
pub fn run_exhaustive(config: &ExhaustiveConfig) -> Result<ExhaustiveOutcome, HarnessError> {
    let block = config.block_size.max(1);
    let mut state = Checkpoint::new(config.shard, block);
    if let Some(path) = &config.checkpoint {
        if let Some(saved) = Checkpoint::load(path)? {
            if saved.shard != config.shard || saved.block_size != block {
                return Err(HarnessError::CheckpointMismatch {
                    path: path.clone(),
                    reason: format!(
                        "saved for shard {} with block size {}, requested shard {} with block size {}",
                        saved.shard, saved.block_size, config.shard, block
                    ),
                });
            }
            state = saved;
        }
    }

    let total = config.shard.len();
    let progress = Progress::new(config.progress, state.next_position, total);
    let pool = pool(config.workers)?;
    let mut blocks_run = 0;

    while state.next_position < total {
        if config.stop_after_blocks.is_some_and(|limit| blocks_run >= limit) {
            break;
        }
        let start = state.next_position;
        let end = (start + block).min(total);
        let batch: Vec<_> = deals::enumerate_range(config.shard, start, end).collect();
        let partial = pool.install(|| {
            batch
                .par_iter()
                .map(|e| {
                    let mut s = DealStats::default();
                    s.record(solve_fresh(&e.deal), e.weight);
                    progress.tick(1);
                    s
                })
                .reduce(DealStats::default, DealStats::merged)
        });
        state.stats.merge(&partial);
        state.next_position = end;
        blocks_run += 1;
        if let Some(path) = &config.checkpoint {
            state.save(path)?;
        }
    }

    Ok(ExhaustiveOutcome {
        complete: state.next_position >= total,
        next_position: state.next_position,
        stats: state.stats,
    })
}
