use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "vqc", version, about = "Variational quantum compiling with double Q-learning")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for a circuit of exactly --max-gates gates compiling the target.
    Compile(CompileArgs),
    /// Run compile for every L in a range and tabulate the best costs.
    Sweep(SweepArgs),
    /// Exhaustively find the shortest structure reaching a cost threshold.
    Oracle(OracleArgs),
    /// Draw a circuit file as a wire diagram.
    Render(RenderArgs),
}

/// Search settings; anything left unset comes from --config, then from
/// width-dependent defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct SearchArgs {
    /// TOML settings file, or a manifest.json / SearchConfig JSON from a previous run.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Target name (cs, ch, cz, xx3pi2, qft2, ccnot, wsp3, identity2, layered4:7, ...) or matrix file.
    #[arg(long)]
    pub target: Option<String>,
    /// Alphabet preset (ibm2q, ibm3q, blocks, blocks_plus, rz_only), gate list, or file.
    #[arg(long)]
    pub alphabet: Option<String>,
    /// full, line, ibmq_ourense, or a topology JSON file.
    #[arg(long)]
    pub topology: Option<String>,
    #[arg(long = "max-gates")]
    pub max_gates: Option<usize>,
    /// table1, table3, eps:count list, or a schedule JSON file.
    #[arg(long)]
    pub schedule: Option<String>,
    /// Hyperparameter preset applied before --alpha/--gamma/--batch-size.
    #[arg(long, value_enum)]
    pub hyper: Option<HyperArg>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long = "batch-size")]
    pub batch_size: Option<usize>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, value_enum)]
    pub cost: Option<CostArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long = "q-init-samples")]
    pub q_init_samples: Option<usize>,
    /// Optimizer restarts per structure.
    #[arg(long)]
    pub restarts: Option<usize>,
    #[arg(long = "max-iterations")]
    pub max_iterations: Option<usize>,
    #[arg(long = "reward-shaping", value_enum)]
    pub reward_shaping: Option<ShapingArg>,
    /// Stop once the best cost falls below this value.
    #[arg(long = "early-stop-cost")]
    pub early_stop_cost: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HyperArg {
    SmallN,
    LargeN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CostArg {
    Global,
    Local,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapingArg {
    TerminalFull,
    Uniform,
}

#[derive(Debug, Args)]
pub struct CompileArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, default_value = "vqc-out")]
    pub out: PathBuf,
    /// Print one line per epsilon stage to stderr.
    #[arg(long, short)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    /// Inclusive gate-count range `lo:hi`.
    #[arg(long = "max-gates-range")]
    pub range: String,
    #[arg(long, default_value = "vqc-sweep")]
    pub out: PathBuf,
    #[arg(long, short)]
    pub verbose: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    pub target: String,
    #[arg(long, default_value = "ibm2q")]
    pub alphabet: String,
    #[arg(long, default_value = "full")]
    pub topology: String,
    /// Longest structure length to try.
    #[arg(long = "max", default_value_t = 5)]
    pub max_len: usize,
    #[arg(long, default_value_t = 1e-3)]
    pub threshold: f64,
    #[arg(long, value_enum)]
    pub cost: Option<CostArg>,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Refuse lengths above this.
    #[arg(long = "length-cap", default_value_t = 6)]
    pub length_cap: usize,
    /// Refuse targets wider than this.
    #[arg(long = "qubit-cap", default_value_t = 2)]
    pub qubit_cap: usize,
    /// Also write the report as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RenderArgs {
    pub circuit: PathBuf,
    /// Plain ASCII instead of box-drawing characters.
    #[arg(long)]
    pub ascii: bool,
    /// Angle decimals.
    #[arg(long, default_value_t = 4)]
    pub precision: usize,
}
