use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use zone_cli::commands::{
    self, CertifyArgs, CoverArgs, DeepestArgs, GenSpec, OutFormat, Outcome, SolveArgs, SweepArgs,
};

#[derive(Parser)]
#[command(name = "zone-cli", version, about = "Great-circle arrangements: solver, coverage, and proof diagnostics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an arrangement file from a named generator
    Gen {
        #[command(subcommand)]
        spec: GenCommand,
        #[arg(long, env = "ZONE_CLI_OUTPUT")]
        output: Option<PathBuf>,
    },
    /// Maximize the product objective and check the depth bound
    Solve {
        input: PathBuf,
        #[arg(long, env = "ZONE_CLI_SEED", default_value_t = 0)]
        seed: u64,
        /// Multistart count; scales with the arrangement when omitted
        #[arg(long, env = "ZONE_CLI_RESTARTS")]
        restarts: Option<usize>,
        #[arg(long, env = "ZONE_CLI_GRAD_TOL", default_value_t = 1e-9)]
        grad_tol: f64,
        #[arg(long, env = "ZONE_CLI_FORMAT", value_enum, default_value_t)]
        format: OutFormat,
        #[arg(long, env = "ZONE_CLI_OUTPUT")]
        output: Option<PathBuf>,
    },
    /// Certified covering-radius bracket and the deepest point found
    Deepest {
        input: PathBuf,
        #[arg(long, env = "ZONE_CLI_MESH", default_value_t = 1e-3)]
        mesh: f64,
        /// Sample budget for the uncertified search used when dim >= 4
        #[arg(long, env = "ZONE_CLI_SAMPLES", default_value_t = 100_000)]
        samples: usize,
        #[arg(long, env = "ZONE_CLI_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "ZONE_CLI_FORMAT", value_enum, default_value_t)]
        format: OutFormat,
        #[arg(long, env = "ZONE_CLI_OUTPUT")]
        output: Option<PathBuf>,
    },
    /// Decide whether the zones cover the sphere
    Cover {
        input: PathBuf,
        /// Equal half-width for all zones; overrides file half_widths
        #[arg(long, env = "ZONE_CLI_HALF_WIDTH")]
        half_width: Option<f64>,
        #[arg(long, env = "ZONE_CLI_MESH", default_value_t = 1e-3)]
        mesh: f64,
        #[arg(long, env = "ZONE_CLI_SAMPLES", default_value_t = 100_000)]
        samples: usize,
        #[arg(long, env = "ZONE_CLI_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "ZONE_CLI_FORMAT", value_enum, default_value_t)]
        format: OutFormat,
        #[arg(long, env = "ZONE_CLI_OUTPUT")]
        output: Option<PathBuf>,
    },
    /// Emit the proof diagnostics and plot data at a point
    Certify {
        input: PathBuf,
        /// Evaluation point as comma-separated coordinates; the solved
        /// maximizer is used when omitted
        #[arg(long, env = "ZONE_CLI_AT", value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        at: Option<Vec<f64>>,
        #[arg(long, env = "ZONE_CLI_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "ZONE_CLI_RESTARTS")]
        restarts: Option<usize>,
        #[arg(long, env = "ZONE_CLI_GRAD_TOL", default_value_t = 1e-9)]
        grad_tol: f64,
        #[arg(long, env = "ZONE_CLI_PLOT_COUNT", default_value_t = 512)]
        plot_count: usize,
        #[arg(long, env = "ZONE_CLI_FORMAT", value_enum, default_value_t)]
        format: OutFormat,
        #[arg(long, env = "ZONE_CLI_OUTPUT")]
        output: Option<PathBuf>,
    },
    /// Solve and bracket the covering radius across a parameter grid
    Sweep {
        /// Dimensions, e.g. `2,3,4`
        #[arg(long, env = "ZONE_CLI_DIMS", default_value = "2,3")]
        dims: String,
        /// Circle counts, e.g. `1..8` (inclusive) or `2,4,6`
        #[arg(long, env = "ZONE_CLI_NS", default_value = "1..4")]
        ns: String,
        /// Seeds, e.g. `0..9` or `0,1,2`
        #[arg(long, env = "ZONE_CLI_SEEDS", default_value = "0..2")]
        seeds: String,
        /// Sweep the evenly spaced polar family instead of random draws
        #[arg(long, env = "ZONE_CLI_APPLE_PEEL")]
        apple_peel: bool,
        #[arg(long, env = "ZONE_CLI_MESH", default_value_t = 1e-2)]
        mesh: f64,
        #[arg(long, env = "ZONE_CLI_SAMPLES", default_value_t = 100_000)]
        samples: usize,
        #[arg(long, env = "ZONE_CLI_GRAD_TOL", default_value_t = 1e-9)]
        grad_tol: f64,
        #[arg(long, env = "ZONE_CLI_RESTARTS")]
        restarts: Option<usize>,
        #[arg(long, env = "ZONE_CLI_OUTPUT")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// `n` evenly spaced great circles through the poles
    ApplePeel { n: usize },
    /// `n` uniform random normals on the sphere in `R^d`
    Random { d: usize, n: usize, seed: u64 },
}

/// Parses `a..b` (inclusive) or a comma list of integers.
fn parse_range(text: &str) -> Result<Vec<u64>, String> {
    let text = text.trim();
    if let Some((a, b)) = text.split_once("..") {
        let a: u64 = a.trim().parse().map_err(|_| format!("bad range '{text}'"))?;
        let b: u64 = b.trim().parse().map_err(|_| format!("bad range '{text}'"))?;
        if a > b {
            return Err(format!("empty range '{text}'"));
        }
        return Ok((a..=b).collect());
    }
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<u64>().map_err(|_| format!("bad value '{t}'")))
        .collect()
}

fn read_input(path: &PathBuf) -> Result<(String, String), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok((path.display().to_string(), text))
}

fn emit(outcome: Outcome, output: Option<PathBuf>) -> ExitCode {
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, outcome.text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(commands::EXIT_INPUT as u8);
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.text.as_bytes());
        }
    }
    ExitCode::from(outcome.exit as u8)
}

fn run(cli: Cli) -> Result<(Outcome, Option<PathBuf>), String> {
    match cli.command {
        Command::Gen { spec, output } => {
            let spec = match spec {
                GenCommand::ApplePeel { n } => GenSpec::ApplePeel { n },
                GenCommand::Random { d, n, seed } => GenSpec::Random { d, n, seed },
            };
            Ok((commands::run_gen(&spec)?, output))
        }
        Command::Solve {
            input,
            seed,
            restarts,
            grad_tol,
            format,
            output,
        } => {
            let (input_name, input_text) = read_input(&input)?;
            let outcome = commands::run_solve(&SolveArgs {
                input_name,
                input_text,
                seed,
                restarts,
                grad_tol,
                format,
            })?;
            Ok((outcome, output))
        }
        Command::Deepest {
            input,
            mesh,
            samples,
            seed,
            format,
            output,
        } => {
            let (input_name, input_text) = read_input(&input)?;
            let outcome = commands::run_deepest(&DeepestArgs {
                input_name,
                input_text,
                mesh,
                samples,
                seed,
                format,
            })?;
            Ok((outcome, output))
        }
        Command::Cover {
            input,
            half_width,
            mesh,
            samples,
            seed,
            format,
            output,
        } => {
            let (input_name, input_text) = read_input(&input)?;
            let outcome = commands::run_cover(&CoverArgs {
                input_name,
                input_text,
                half_width,
                mesh,
                samples,
                seed,
                format,
            })?;
            Ok((outcome, output))
        }
        Command::Certify {
            input,
            at,
            seed,
            restarts,
            grad_tol,
            plot_count,
            format,
            output,
        } => {
            let (input_name, input_text) = read_input(&input)?;
            let outcome = commands::run_certify(&CertifyArgs {
                input_name,
                input_text,
                at,
                seed,
                restarts,
                grad_tol,
                plot_count,
                format,
            })?;
            Ok((outcome, output))
        }
        Command::Sweep {
            dims,
            ns,
            seeds,
            apple_peel,
            mesh,
            samples,
            grad_tol,
            restarts,
            output,
        } => {
            let dims: Vec<usize> = parse_range(&dims)?.into_iter().map(|x| x as usize).collect();
            let ns: Vec<usize> = parse_range(&ns)?.into_iter().map(|x| x as usize).collect();
            let seeds = parse_range(&seeds)?;
            let outcome = commands::run_sweep(&SweepArgs {
                dims,
                ns,
                seeds,
                apple_peel,
                mesh,
                samples,
                grad_tol,
                restarts,
            })?;
            Ok((outcome, output))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, output)) => emit(outcome, output),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(commands::EXIT_INPUT as u8)
        }
    }
}
