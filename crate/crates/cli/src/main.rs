mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use skelgraph::lineage::Generator;
use skelgraph::skeletal::Ratio;

#[derive(Parser, Debug)]
#[command(
    name = "skelgraph",
    version,
    about = "Graph lineages, skeletal products and skeletal multigrid"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a lineage and write it as a manifest directory.
    Gen(GenArgs),
    /// Skeletal product of lineages read from manifest directories.
    Product(ProductArgs),
    /// Thicken a lineage.
    Thicken(ThickenArgs),
    /// Check a lineage for structural problems; exits 2 if any are found.
    Validate(ValidateArgs),
    /// Write one level (or the flattened lineage) in another format.
    Export(ExportArgs),
    /// Grid ⊠̂ complete lineage: the layer structure of a skeletal CNN.
    CnnStructure(CnnArgs),
    /// Multigrid work-vs-residual benchmark on the unit-square Dirichlet problems.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_parser = parse_generator)]
    pub generator: Generator,
    /// Top level L (the lineage has L + 1 levels).
    #[arg(long)]
    pub levels: usize,
    /// Output directory.
    #[arg(long, short, default_value = ".")]
    pub out: PathBuf,
    /// Drop the self-loop on the level-0 vertex.
    #[arg(long)]
    pub no_root_loop: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ProductKind {
    Box,
    Cross,
    Strong,
    NwayHat,
    NwayTilde,
    Dilated,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BaseKind {
    Box,
    Cross,
    Strong,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Weights {
    Pattern,
    Prolongation,
}

#[derive(Args, Debug)]
pub struct ProductArgs {
    #[arg(value_enum)]
    pub kind: ProductKind,
    /// Input manifest directories (two, or more for the n-way kinds).
    #[arg(required = true, num_args = 2..)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, short)]
    pub out: PathBuf,
    /// Also build the product by whole-matrix regrouping and fail (exit 2)
    /// unless both agree.
    #[arg(long)]
    pub oracle_check: bool,
    /// Level dilation factors ρ1 ρ2 for `dilated` (integers, decimals or p/q).
    #[arg(long, num_args = 2, value_parser = parse_ratio)]
    pub rho: Vec<Ratio>,
    /// Product used by `dilated`.
    #[arg(long, value_enum, default_value = "cross")]
    pub base: BaseKind,
    /// Top product level (default: the last level all factors fill).
    #[arg(long)]
    pub top: Option<usize>,
    #[arg(long, value_enum, default_value = "pattern")]
    pub weights: Weights,
}

#[derive(Args, Debug)]
pub struct ThickenArgs {
    pub input: PathBuf,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    pub input: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Mtx,
    Dot,
    Edges,
    Json,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub format: Format,
    /// Level to export; the whole lineage assembled into one graph if omitted.
    #[arg(long)]
    pub level: Option<usize>,
    /// Output file (stdout if omitted).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CnnArgs {
    /// Top level of the spatial grid lineage.
    #[arg(long)]
    pub grid_levels: usize,
    /// Top level of the feature (complete graph) lineage.
    #[arg(long)]
    pub feature_levels: usize,
    #[arg(long, short)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Refinement index: the grid has (2^k − 1)² unknowns.
    #[arg(long)]
    pub k: usize,
    /// Boundary condition: 1 (left and bottom edges) or 2 (alternating).
    #[arg(long, default_value = "1")]
    pub bc: String,
    /// Work budget in smoother nonzeros.
    #[arg(long, default_value_t = 1e6)]
    pub budget: f64,
    /// Comma-separated algorithms (default: gauss_seidel, classical_mg_v,
    /// skeletal_recursive_v, skeletal_levelwise_v).
    #[arg(long)]
    pub algorithms: Option<String>,
    /// CSV output file (stdout if omitted).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Also write the system as A.mtx and b.txt into this directory.
    #[arg(long)]
    pub problem_out: Option<PathBuf>,
    /// Accepted for scripts; runs are always deterministic.
    #[arg(long)]
    pub seedless: bool,
}

fn parse_generator(s: &str) -> Result<Generator, String> {
    s.parse().map_err(|e: skelgraph::Error| e.to_string())
}

fn parse_ratio(s: &str) -> Result<Ratio, String> {
    s.parse().map_err(|e: skelgraph::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
