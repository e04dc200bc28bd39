use std::fs;
use std::io::{self, BufWriter, Write};
use std::net::{Ipv4Addr, SocketAddr};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use collapsi::deals::{self, enumeration_total, weighted_total, Shard};
use collapsi::harness::{
    emit_report, run_exhaustive, run_sample, ExhaustiveConfig, HarnessError, ReportFormat, ReportMetadata, SampleConfig,
};
use collapsi::solver::{count_games, solve_score_with, solve_win, SolveOptions};
use collapsi::{Deal, GameState, Move, Player};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "collapsi", version, about = "Exact solver and deal statistics for Collapsi")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a position under perfect play.
    Solve {
        /// `<deal> [mask:xxxx] r(r,c) b(r,c) r|b`, or a bare deal for its
        /// starting position. May be passed unquoted.
        #[arg(required = true, num_args = 1..)]
        state: Vec<String>,
        /// Only decide who wins.
        #[arg(long)]
        win_only: bool,
    },
    /// List the canonical deals of a shard, or count them.
    Enumerate {
        #[arg(long, default_value = "0/1")]
        shard: Shard,
        #[arg(long)]
        count_only: bool,
    },
    /// Solve every canonical deal of a shard and report weighted game lengths.
    Exhaustive {
        #[arg(long, default_value = "0/1")]
        shard: Shard,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        /// Resume from and periodically save to this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "csv")]
        format: ReportFormat,
        #[arg(long, default_value_t = ExhaustiveConfig::DEFAULT_BLOCK_SIZE)]
        block_size: u64,
        /// Stop after this many blocks, leaving the checkpoint to resume from.
        #[arg(long)]
        stop_after_blocks: Option<u64>,
        #[arg(long, short)]
        quiet: bool,
    },
    /// Solve uniformly random deals and report game lengths.
    Sample {
        #[arg(short = 'n', long = "samples")]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = default_workers())]
        workers: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "json")]
        format: ReportFormat,
        #[arg(long, short)]
        quiet: bool,
    },
    /// Count complete games from a deal's starting position.
    CountGames { deal: Deal },
    /// Run the HTTP game service on localhost.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        /// Listen on all interfaces instead of loopback only.
        #[arg(long)]
        public: bool,
    },
}

fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

enum Failure {
    BadInput(String),
    Io(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Failure {
        match e {
            HarnessError::CheckpointMismatch { .. } | HarnessError::BadReport(_) => Failure::BadInput(e.to_string()),
            _ => Failure::Io(e.to_string()),
        }
    }
}

fn io_failure(path: &Path) -> impl FnOnce(io::Error) -> Failure + '_ {
    move |e| Failure::Io(format!("{}: {e}", path.display()))
}

fn parse_state(words: &[String]) -> Result<GameState, Failure> {
    let text = words.join(" ");
    let bad = |e: collapsi::engine::Error| Failure::BadInput(format!("{text:?}: {e}"));
    if words.len() == 1 && !text.contains('(') {
        let deal: Deal = text.parse().map_err(bad)?;
        return Ok(deals::initial_state(&deal));
    }
    text.parse().map_err(bad)
}

#[derive(Serialize)]
struct SolveOutput {
    state: String,
    to_move: Player,
    score: i8,
    winner: Player,
    best_move: Option<Move>,
    principal_variation: Vec<Move>,
    /// Game length under perfect play; only for starting positions.
    #[serde(skip_serializing_if = "Option::is_none")]
    plies: Option<u32>,
}

#[derive(Serialize)]
struct WinOutput {
    state: String,
    to_move: Player,
    mover_wins: bool,
    witness: Option<Move>,
}

#[derive(Serialize)]
struct CountOutput {
    shard: Shard,
    deals: u64,
    weight: u64,
    enumeration_total: u64,
    weighted_total: u64,
}

fn print_json<T: Serialize>(value: &T) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).expect("output serializes");
    write_stdout(format!("{text}\n").as_bytes())
}

fn write_stdout(bytes: &[u8]) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    match out.write_all(bytes).and_then(|_| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Failure::Io(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(io_failure(path)),
        None => write_stdout(text.as_bytes()),
    }
}

fn solve(words: &[String], win_only: bool) -> Result<(), Failure> {
    let state = parse_state(words)?;
    if win_only {
        let r = solve_win(&state);
        return print_json(&WinOutput {
            state: state.to_string(),
            to_move: state.to_move(),
            mover_wins: r.mover_wins,
            witness: r.witness,
        });
    }
    let r = solve_score_with(
        &state,
        SolveOptions {
            principal_variation: true,
            ..SolveOptions::default()
        },
    );
    print_json(&SolveOutput {
        state: state.to_string(),
        to_move: state.to_move(),
        score: r.score.value(),
        winner: r.score.winner(),
        best_move: r.best_move,
        principal_variation: r.principal_variation.unwrap_or_default(),
        plies: state.is_fresh().then(|| r.score.plies_from_fresh()),
    })
}

fn enumerate(shard: Shard, count_only: bool) -> Result<(), Failure> {
    if count_only {
        let (deals, weight) = deals::enumerate(shard).fold((0, 0), |(n, w), e| (n + 1, w + e.weight));
        return print_json(&CountOutput {
            shard,
            deals,
            weight,
            enumeration_total: enumeration_total(),
            weighted_total: weighted_total(),
        });
    }
    let mut out = BufWriter::new(io::stdout().lock());
    for e in deals::enumerate(shard) {
        if let Err(err) = writeln!(out, "{}\t{}\t{}", e.index.flat(), e.deal, e.weight) {
            return match err.kind() {
                io::ErrorKind::BrokenPipe => Ok(()),
                _ => Err(Failure::Io(format!("stdout: {err}"))),
            };
        }
    }
    out.flush().map_err(|e| Failure::Io(format!("stdout: {e}")))
}

fn serve(port: u16, public: bool) -> Result<(), Failure> {
    let host = if public {
        Ipv4Addr::UNSPECIFIED
    } else {
        Ipv4Addr::LOCALHOST
    };
    let runtime = tokio::runtime::Runtime::new().map_err(|e| Failure::Io(e.to_string()))?;
    runtime
        .block_on(collapsi_service::serve(SocketAddr::from((host, port))))
        .map_err(|e| Failure::Io(format!("port {port}: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Solve { state, win_only } => solve(&state, win_only),
        Command::Enumerate { shard, count_only } => enumerate(shard, count_only),
        Command::Exhaustive {
            shard,
            workers,
            checkpoint,
            out,
            format,
            block_size,
            stop_after_blocks,
            quiet,
        } => {
            if block_size == 0 {
                return Err(Failure::BadInput("block size must be positive".into()));
            }
            let outcome = run_exhaustive(&ExhaustiveConfig {
                shard,
                workers,
                checkpoint,
                block_size,
                stop_after_blocks,
                progress: !quiet,
            })?;
            if !outcome.complete {
                eprintln!(
                    "stopped at position {} of {}; rerun with the same checkpoint to continue",
                    outcome.next_position,
                    shard.len()
                );
                return Ok(());
            }
            let metadata = ReportMetadata::exhaustive(shard, true);
            emit(&emit_report(&outcome.stats, &metadata, format), out.as_deref())
        }
        Command::Sample {
            samples,
            seed,
            workers,
            out,
            format,
            quiet,
        } => {
            let stats = run_sample(&SampleConfig {
                samples,
                seed,
                workers,
                progress: !quiet,
            })?;
            emit(
                &emit_report(&stats, &ReportMetadata::sample(samples, seed), format),
                out.as_deref(),
            )
        }
        Command::CountGames { deal } => {
            let games = count_games(&deals::initial_state(&deal));
            write_stdout(format!("{games}\n").as_bytes())
        }
        Command::Serve { port, public } => serve(port, public),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::BadInput(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
