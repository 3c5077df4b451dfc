use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "sigflow", version, about = "Decompose integer flows on signed graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a graph file and its optional orientation and flow.
    Check(FileArgs),
    /// Split the file's flow into indecomposable terms.
    Decompose(DecomposeArgs),
    /// Recognize the edge set (or the flow support) as a cycle-tree.
    Classify(ClassifyArgs),
    /// Compare the brute-force and structural indecomposability tests.
    Oracle(OracleArgs),
}

#[derive(Args, Debug)]
pub struct FileArgs {
    pub file: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Args, Debug)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub file: FileArgs,
    /// Include the step-by-step record of each reduction run.
    #[arg(long)]
    pub trace: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub file: FileArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    /// Instance file; omit with --family.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    pub file: Option<PathBuf>,
    /// Sweep every connected signed multigraph with up to 4 vertices.
    #[arg(long)]
    pub family: bool,
    #[arg(long, default_value_t = 5)]
    pub max_edges: usize,
    /// Largest |f(e)| enumerated when no flow is given, and in family mode.
    #[arg(long, default_value_t = 3)]
    pub bound: i64,
    /// In family mode, include the full verdict table.
    #[arg(long)]
    pub trace: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
