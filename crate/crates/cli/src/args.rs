use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "blobshift", version, about = "Blob decompositions, substitutions, path spaces, automata and prime-window probes")]
pub struct Cli {
    /// Output format; `json` wraps the result in a run report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Pbm,
    SvgPaths,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate a substitution or build a block-hierarchy pattern.
    Gen(GenArgs),
    /// Blob decomposition of a pattern at radius r.
    Blobs {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        radius: u64,
    },
    /// Zero-glue two patterns.
    Glue {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        /// Translation applied to the right pattern, `dx` or `dx,dy`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        offset: Vec<i64>,
    },
    /// Row sparsity and the greedy width bound of a 2D pattern.
    Width {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        radius: u64,
    },
    /// Blob-fractal hierarchies.
    #[command(subcommand)]
    Fractal(FractalCommand),
    /// Bounded classification of a substitutive path space.
    ClassifyPath(ClassifyPathArgs),
    /// Paths drawn on pattern supports.
    #[command(subcommand)]
    Pathcover(PathcoverCommand),
    /// Cellular automaton probes.
    #[command(subcommand)]
    Ca(CaCommand),
    /// Topological full group elements.
    #[command(subcommand)]
    Tfg(TfgCommand),
    /// Prime-window probes.
    #[command(subcommand)]
    Primes(PrimesCommand),
    /// Render a pattern or a move word.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    /// Substitution file.
    #[arg(long, conflicts_with = "hierarchy")]
    pub subst: Option<PathBuf>,
    /// Seed word (1D) or seed symbol placed at the origin (2D).
    #[arg(long, conflicts_with = "seed_file")]
    pub seed: Option<String>,
    /// Seed pattern in text format.
    #[arg(long)]
    pub seed_file: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub iters: u32,
    /// Build `P_{i,j}` with canonical seeds for this `k`.
    #[arg(long, requires_all = ["level", "row"])]
    pub hierarchy: Option<usize>,
    #[arg(long)]
    pub level: Option<u32>,
    #[arg(long)]
    pub row: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RadiiArgs {
    #[arg(long)]
    pub pattern: PathBuf,
    /// Strictly increasing radii, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "auto")]
    pub radii: Vec<u64>,
    /// Choose radii by doubling from 1.
    #[arg(long)]
    pub auto: bool,
    #[arg(long, default_value_t = 8)]
    pub max_levels: usize,
}

#[derive(Debug, Subcommand)]
pub enum FractalCommand {
    Verify {
        #[command(flatten)]
        radii: RadiiArgs,
        /// Write one PBM per level showing the cells of complete blobs.
        #[arg(long)]
        render_dir: Option<PathBuf>,
    },
    Classify {
        #[command(flatten)]
        radii: RadiiArgs,
        #[arg(long, default_value_t = 50)]
        threshold: usize,
    },
}

#[derive(Debug, Args)]
pub struct ClassifyPathArgs {
    /// Substitution over the move symbols `0`, `+`, `-`.
    #[arg(long, conflicts_with = "builtin", required_unless_present = "builtin")]
    pub subst: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub builtin: Option<PathBuiltin>,
    #[arg(long, default_value = "+")]
    pub seed: char,
    #[arg(long, default_value_t = 256)]
    pub horizon: usize,
    #[arg(long)]
    pub min_returns: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathBuiltin {
    Tau1,
    Tau2,
    Tau3,
    Up,
    ThueMorse,
}

#[derive(Debug, Subcommand)]
pub enum PathcoverCommand {
    Geodesic {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        radius: u64,
    },
    Ascend {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        radius: u64,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
    },
    Guided {
        /// Vertical step sizes, comma separated, repeated cyclically.
        #[arg(long, value_delimiter = ',', required = true)]
        steps: Vec<u64>,
        /// Horizontal offsets, comma separated, repeated cyclically.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        offsets: Vec<i64>,
        #[arg(long)]
        length: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CaCommand {
    Glider {
        #[arg(long)]
        rule: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_width: usize,
        #[arg(long, default_value_t = 16)]
        max_time: usize,
    },
    Nilpotent {
        #[arg(long)]
        rule: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_width: usize,
        #[arg(long, default_value_t = 16)]
        max_time: usize,
    },
    Profile {
        #[arg(long)]
        rule: PathBuf,
        /// Initial word, placed at `--offset`.
        #[arg(long)]
        config: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        offset: i64,
        #[arg(long, default_value_t = 32)]
        steps: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum TfgCommand {
    Order {
        #[arg(long)]
        element: PathBuf,
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum PrimesCommand {
    Lang {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        threshold: u64,
        /// Also write the characteristic word in pattern text format.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    Crt {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',')]
        injection: Option<Vec<u64>>,
    },
    Isolated {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        limit: u64,
    },
    Dirichlet {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 100_000)]
        scan_limit: u64,
        #[arg(long, value_delimiter = ',')]
        injection: Option<Vec<u64>>,
    },
    Gaps {
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        threshold: u64,
    },
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    #[arg(long, conflicts_with_all = ["moves", "builtin"])]
    pub pattern: Option<PathBuf>,
    /// Move word such as `++-+2`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "builtin")]
    pub moves: Option<String>,
    /// Move word `τⁿ(seed)` of a built-in path substitution.
    #[arg(long, value_enum)]
    pub builtin: Option<PathBuiltin>,
    #[arg(long, default_value_t = 1)]
    pub iters: u32,
}
