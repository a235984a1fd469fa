//! `tricount`: exact and approximate triangulation counting from the shell.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tricount::approx::{Caps, DpConfig};
use tricount::dp::{CellFamily, DpPointMode, VertexPool};
use tricount::exact::{ExactConfig, SeedOrder};
use tricount::geom::parse_rational;
use tricount::pointset::Generator;
use tricount::{Error, Rational};

/// Count triangulations of planar integer point sets.
///
/// Exit status: 0 success, 2 invalid input or usage, 3 capacity exceeded,
/// 4 internal invariant violation.
#[derive(Parser, Debug)]
#[command(name = "tricount", version)]
struct Cli {
    /// Emit results as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads (default: all cores); results do not depend on it.
    #[arg(long, global = true, env = "TRICOUNT_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact count by flip-graph traversal.
    Exact {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Seed::Lex)]
        seed: Seed,
        #[command(flatten)]
        caps: CapArgs,
    },
    /// Approximate count by the cell dynamic program.
    Approx {
        file: PathBuf,
        #[command(flatten)]
        dp: DpArgs,
        /// Include the per-cell count table in the JSON output.
        #[arg(long)]
        table: bool,
    },
    /// Estimate the base count^(1/n).
    Base {
        file: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        epsilon: f64,
        /// Use the approximate count instead of the exact one.
        #[arg(long)]
        approx: bool,
        #[command(flatten)]
        dp: DpArgs,
    },
    /// Write a generated point set (JSON format with --json).
    Gen {
        #[arg(value_enum)]
        kind: Kind,
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact vs approximate ratio, count table dump and a cut spot-check.
    Audit {
        file: PathBuf,
        #[command(flatten)]
        dp: DpArgs,
        #[command(flatten)]
        cut: CutArgs,
    },
    /// JSON-lines benchmark rows over generated inputs.
    Bench {
        #[arg(long, value_enum, default_value_t = Kind::Random)]
        kind: Kind,
        #[arg(long, value_delimiter = ',', default_values_t = [8usize, 10, 12])]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = [1u64])]
        seeds: Vec<u64>,
        /// Skip the exact count above this many points.
        #[arg(long, default_value_t = 12)]
        exact_max: usize,
        /// Record wall-clock times (makes rows non-reproducible byte for byte).
        #[arg(long)]
        timings: bool,
        /// Append rows to this file instead of printing them.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        dp: DpArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct CapArgs {
    #[arg(long, env = "TRICOUNT_MAX_TRIANGULATIONS", default_value_t = tricount::exact::DEFAULT_MAX_TRIANGULATIONS)]
    max_triangulations: usize,
    #[arg(long, env = "TRICOUNT_MAX_CELLS", default_value_t = tricount::dp::DEFAULT_MAX_CELLS)]
    max_cells: usize,
    #[arg(long, env = "TRICOUNT_MAX_PARTITIONS", default_value_t = 1_000_000)]
    max_partitions: usize,
    #[arg(long, env = "TRICOUNT_MAX_DP_POINTS", default_value_t = 1_000_000)]
    max_dp_points: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps {
            max_dp_points: self.max_dp_points,
            max_cells: self.max_cells,
            max_partitions: self.max_partitions,
            max_triangulations: self.max_triangulations,
        }
    }

    fn exact(&self, seed: Seed) -> ExactConfig {
        ExactConfig {
            max_triangulations: self.max_triangulations,
            seed: match seed {
                Seed::Lex => SeedOrder::Lexicographic,
                Seed::Rev => SeedOrder::ReverseLexicographic,
            },
        }
    }
}

#[derive(Args, Debug, Clone)]
struct DpArgs {
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, default_value_t = 5)]
    delta: usize,
    #[arg(long, value_enum, default_value_t = Family::BinaryCut)]
    family: Family,
    #[arg(long, value_enum, default_value_t = Pool::InputAndCorners)]
    pool: Pool,
    /// Also use crossings of segments between basic DP points.
    #[arg(long)]
    additional_dp_points: bool,
    #[command(flatten)]
    caps: CapArgs,
}

impl DpArgs {
    fn config(&self) -> DpConfig {
        DpConfig {
            k: self.k,
            delta: self.delta,
            family: match self.family {
                Family::TriQuad => CellFamily::TriQuad,
                Family::BinaryCut => CellFamily::BinaryCut,
                Family::Exhaustive => CellFamily::Exhaustive,
            },
            pool: match self.pool {
                Pool::InputAndCorners => VertexPool::InputAndCorners,
                Pool::Basic => VertexPool::Basic,
                Pool::All => VertexPool::All,
            },
            dp_points: if self.additional_dp_points {
                DpPointMode::BasicAndAdditional
            } else {
                DpPointMode::BasicOnly
            },
            caps: self.caps.caps(),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct CutArgs {
    /// Destroyed-weight bound of the spot-check cut, e.g. 1/2.
    #[arg(long, default_value = "1/2", value_parser = rational)]
    alpha: Rational,
    /// Edge bound of the spot-check cut.
    #[arg(long, default_value_t = 4)]
    l: usize,
    /// Search convex polygons with up to this many edges instead of rectangles.
    #[arg(long)]
    polygon_edges: Option<usize>,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Seed {
    Lex,
    Rev,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Family {
    TriQuad,
    BinaryCut,
    Exhaustive,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Pool {
    InputAndCorners,
    Basic,
    All,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Convex,
    Grid,
    Random,
}

impl From<Kind> for Generator {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Convex => Generator::Convex,
            Kind::Grid => Generator::Grid,
            Kind::Random => Generator::Random,
        }
    }
}

#[derive(Debug)]
pub enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 2,
            Failure::Core(Error::CapacityExceeded { .. }) => 3,
            Failure::Core(Error::InvariantViolation(_)) => 4,
            Failure::Core(_) => 2,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Core(e) => e.fmt(f),
            Failure::Io(s) => f.write_str(s),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| commands::run(&cli)) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
