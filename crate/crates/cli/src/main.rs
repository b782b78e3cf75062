//! `grabbing`: command-line front end for the solver, detectors, harness
//! and play service.

/// `print!` that stops quietly when stdout is closed early.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

/// Exit status when a check fails: a falsification event or a failed
/// certification.
const EXIT_FAILED: u8 = 1;
/// Exit status for usage and input errors.
const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "grabbing",
    version,
    about = "Exact engine and conjecture harness for the graph grabbing game"
)]
struct Cli {
    /// Worker threads for parallel searches; defaults to available parallelism.
    #[arg(long, global = true, env = "GRABBING_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve an instance: verdict, totals, principal variation, opening values.
    Solve {
        instance: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Bipartiteness, odd-corona and family-D detection with witnesses.
    Detect {
        instance: PathBuf,
        #[command(flatten)]
        budget: BudgetArg,
        #[arg(long)]
        json: bool,
    },
    /// Search graphs and weightings for Bob wins.
    Search(SearchArgs),
    /// Run a certification or proof-chain check.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Print a pattern graph as an instance document.
    Gen {
        #[command(subcommand)]
        pattern: GenPattern,
    },
    /// Serve the HTTP play API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Seconds of inactivity before a session is dropped.
        #[arg(long, default_value_t = 3600)]
        idle_secs: u64,
    },
}

#[derive(Debug, Args)]
struct BudgetArg {
    /// Node budget for induced-pattern searches.
    #[arg(long = "budget", env = "GRABBING_BUDGET", default_value_t = 50_000_000)]
    nodes: u64,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// Orders to enumerate: `N` for 1..=N, or `A..B` inclusive.
    #[arg(long, conflicts_with = "graphs", required_unless_present = "graphs")]
    n: Option<String>,
    /// Weight set, comma separated.
    #[arg(long, default_value = "0,1")]
    weights: String,
    /// Read graphs from a graph6 file instead of enumerating.
    #[arg(long)]
    graphs: Option<PathBuf>,
    /// Comma-separated filters: even, bipartite, codd-free, d-free.
    #[arg(long, value_delimiter = ',')]
    filter: Vec<String>,
    /// Write the JSON-lines report here; otherwise it goes to stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Draw this many random weightings per graph instead of enumerating all.
    #[arg(long)]
    sample: Option<usize>,
    /// Seed for sampled weightings.
    #[arg(long, env = "GRABBING_SEED", default_value_t = 0)]
    seed: u64,
    /// Campaign id recorded in the report header.
    #[arg(long, default_value = "search")]
    id: String,
    /// Largest number of weightings enumerated per graph.
    #[arg(long, env = "GRABBING_WEIGHT_BUDGET", default_value_t = 1 << 20)]
    weight_budget: u64,
    #[command(flatten)]
    budget: BudgetArg,
}

#[derive(Debug, Subcommand)]
enum VerifyTarget {
    /// Certify the eight-vertex counterexample.
    Fig1 {
        /// Instance to certify; defaults to the bundled one.
        #[arg(long)]
        instance: Option<PathBuf>,
        #[arg(long, default_value_t = 4)]
        weight_bound: u64,
        #[arg(long, default_value_t = 4)]
        max_nonzero: usize,
        #[arg(long, default_value_t = 7)]
        max_order: usize,
        /// Skip the sweep of same-order graphs with fewer edges.
        #[arg(long)]
        no_edge_sweep: bool,
        #[arg(long)]
        json: bool,
    },
    /// Solve every family-D member up to a cycle length.
    DFamily {
        #[arg(long, default_value_t = 7)]
        r_max: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check the pair-removal lemma and the proof chain on all {0,1} Bob wins.
    TheoremChain {
        #[arg(long, default_value_t = 8)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum GenPattern {
    /// Odd cycle C_r with one pendant per cycle vertex, all weights zero.
    Corona { r: usize },
    /// Member of family D with the standard weighting.
    DMember {
        r: usize,
        /// Bit j selects the chord from the hub to cycle vertex j + 2.
        #[arg(default_value_t = 0)]
        mask: u32,
    },
}

/// Outcome of a command that ran to completion.
pub enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(k) = cli.workers {
        if k == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(EXIT_USAGE);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .expect("global pool is set once");
    }
    match commands::run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(EXIT_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
