mod commands;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bsat_arr::arrangement::Arrangement;
use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, CliResult};
use report::RunReport;

#[derive(Parser)]
#[command(
    name = "bsat-arr",
    version,
    about = "Bernstein-Sato polynomials and Milnor fiber cohomology of generic arrangements"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Generic-arrangement b-function candidates, or the isolated-singularity formula.
    Bfunction(BfunctionArgs),
    /// Graded dimensions of the Milnor fiber top cohomology.
    Milnor {
        #[arg(long)]
        input: PathBuf,
        /// Highest degree of the profile (default 2k-n).
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Run the proved-statement checks over a grid of generic arrangements or one input file.
    Verify {
        #[arg(long, conflicts_with = "input")]
        grid: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Holonomic length of the localization at the arrangement.
    Length {
        #[arg(long)]
        input: PathBuf,
    },
    /// Rewrite a standard product in the basis of Milnor fiber cohomology.
    Rewrite {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated 1-based hyperplane indices, repeated for powers.
        #[arg(long)]
        product: String,
        #[arg(long)]
        degree: u32,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Mode {
    #[arg(long, requires_all = ["n", "k"])]
    generic: bool,
    #[arg(long, requires = "input")]
    isolated: bool,
}

#[derive(Args)]
struct BfunctionArgs {
    #[command(flatten)]
    mode: Mode,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    input: Option<PathBuf>,
}

const DEFAULT_GRID: &str = "n=2..3,k=n..6";

fn read_input(path: &Path) -> CliResult<(Vec<u8>, Arrangement)> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::Usage("input is not UTF-8".into()))?;
    Ok((bytes, Arrangement::from_json(&text)?))
}

fn configure_threads() {
    if let Some(t) = std::env::var("BSAT_ARR_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global();
    }
}

fn run(command: Command, echo: Vec<String>) -> CliResult<RunReport> {
    match command {
        Command::Bfunction(args) => {
            if args.mode.generic {
                let (n, k) = (args.n.expect("required by clap"), args.k.expect("required by clap"));
                let mut report = RunReport::new(echo, format!("generic n={n} k={k}").as_bytes());
                commands::bfunction_generic(&mut report, n, k)?;
                Ok(report)
            } else {
                let (bytes, a) = read_input(&args.input.expect("required by clap"))?;
                let mut report = RunReport::new(echo, &bytes);
                commands::bfunction_isolated(&mut report, &a)?;
                Ok(report)
            }
        }
        Command::Milnor { input, max_degree } => {
            let (bytes, a) = read_input(&input)?;
            let mut report = RunReport::new(echo, &bytes);
            commands::milnor(&mut report, &a, max_degree)?;
            Ok(report)
        }
        Command::Verify { grid, input } => {
            let (bytes, instances) = match input {
                Some(path) => {
                    let (bytes, a) = read_input(&path)?;
                    (bytes, vec![a])
                }
                None => {
                    let spec = grid.unwrap_or_else(|| DEFAULT_GRID.to_string());
                    let instances = commands::grid_instances(&commands::parse_grid(&spec)?)?;
                    (spec.into_bytes(), instances)
                }
            };
            let mut report = RunReport::new(echo, &bytes);
            commands::verify(&mut report, instances)?;
            Ok(report)
        }
        Command::Length { input } => {
            let (bytes, a) = read_input(&input)?;
            let mut report = RunReport::new(echo, &bytes);
            commands::length(&mut report, &a)?;
            Ok(report)
        }
        Command::Rewrite { input, product, degree } => {
            let (bytes, a) = read_input(&input)?;
            let indices =
                product.split(',').map(|s| s.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>().map_err(|_| {
                    CliError::Usage(format!("--product must be comma-separated indices, got {product:?}"))
                })?;
            let mut report = RunReport::new(echo, &bytes);
            commands::rewrite(&mut report, &a, &indices, degree)?;
            Ok(report)
        }
    }
}

fn main() -> ExitCode {
    let echo: Vec<String> = std::iter::once("bsat-arr".to_string()).chain(std::env::args().skip(1)).collect();
    let cli = Cli::parse();
    configure_threads();
    let start = Instant::now();
    let outcome = run(cli.command, echo);
    eprintln!("wall-time: {:.3}s", start.elapsed().as_secs_f64());
    match outcome {
        Ok(report) => {
            match cli.format {
                Format::Json => println!("{}", report.to_json()),
                Format::Table => print!("{}", report.to_table()),
            }
            ExitCode::from(if report.theorem_failed() { 1 } else { 0 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
