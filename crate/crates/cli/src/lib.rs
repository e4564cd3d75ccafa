//! Command-line driver: parses inputs, runs the library computations and
//! emits deterministic JSON reports (plus DOT for McKay graphs).

pub mod cache;
pub mod commands;
pub mod error;
pub mod report;
pub mod spec;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

pub use cache::Cache;
pub use error::CliError;
pub use report::Report;
pub use spec::{parse_group_spec, GroupSpecFile, SpecError};

#[derive(Debug, Parser)]
#[command(
    name = "mixquiver",
    version,
    about = "McKay graphs, invariant rings and Koszul sequences of finite subgroups of GL_2 over truncated p-adic rings"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Cache directory (overrides MF_CACHE_DIR).
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    /// Compute everything from scratch and write nothing to the cache.
    #[arg(long, global = true)]
    pub no_cache: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RingArgs {
    /// Residue characteristic; defaults to the group-spec file's value, else the
    /// smallest odd prime that works.
    #[arg(long)]
    pub p: Option<u64>,
    /// Residue field degree; 0 selects the smallest one containing the
    /// needed roots of unity.
    #[arg(long)]
    pub m: Option<usize>,
    /// Precision N of Z/p^N.
    #[arg(long)]
    pub precision: Option<u32>,
    /// Refuse to enumerate groups larger than this.
    #[arg(long, default_value_t = mixquiver::groups::DEFAULT_ORDER_CAP)]
    pub order_cap: usize,
}

#[derive(Debug, Clone, Args)]
pub struct GroupArgs {
    /// Group-spec JSON file.
    #[arg(long)]
    pub group_spec: PathBuf,
    #[command(flatten)]
    pub ring: RingArgs,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Lift a cyclotomic group spec to GL_2(V_N) and check reduction.
    LiftGroup(GroupArgs),
    /// McKay graph, computed from characters and from the lifted group.
    Mckay {
        #[command(flatten)]
        group: GroupArgs,
        /// Write the graph in Graphviz DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Write {"dims", "arrows"} JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Draw symmetric arrow pairs as single undirected edges.
        #[arg(long)]
        undirected: bool,
    },
    /// Degreewise invariants (and semi-invariants for abelian groups).
    Invariants {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 16)]
        degree_cap: u32,
    },
    /// Klein presentation, generation and containments for cyclic A_n.
    VerifyKlein {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long, default_value_t = 8)]
        precision: u32,
        /// Defaults to 4(n+1).
        #[arg(long)]
        degree_cap: Option<u32>,
    },
    /// Search for l0(A_n; α, γ).
    L0Bound {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        lmax: u32,
        #[arg(long)]
        p: Option<u64>,
        /// Defaults to max(16, lmax + 2(n+1)).
        #[arg(long)]
        degree_cap: Option<u32>,
    },
    /// Koszul strands, middle terms and the AR translate.
    ArMiddle {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 16)]
        degree_cap: u32,
    },
}

/// Runs one command and returns its report; side outputs (DOT, graph JSON)
/// are written along the way.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let cache = if cli.no_cache { Cache::disabled() } else { Cache::resolve(cli.cache_dir.as_deref()) };
    let mut report = match &cli.command {
        Command::LiftGroup(g) => commands::lift_group_cmd(g)?,
        Command::Mckay { group, dot, json, undirected } => {
            commands::mckay(group, dot.as_deref(), json.as_deref(), *undirected, &cache)?
        }
        Command::Invariants { group, degree_cap } => commands::invariants(group, *degree_cap, &cache)?,
        Command::VerifyKlein { n, p, precision, degree_cap } => {
            commands::verify_klein(*n, *p, *precision, *degree_cap)?
        }
        Command::L0Bound { n, lmax, p, degree_cap } => commands::l0_bound(*n, *lmax, *p, *degree_cap)?,
        Command::ArMiddle { group, degree_cap } => commands::ar_middle(group, *degree_cap, &cache)?,
    };
    report.timing.total_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}
