use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use skyferry::cli::{
    cmd_baseline, cmd_bench, cmd_gen, cmd_plot, cmd_solve, BaselineAlgo, BaselineOptions,
    BenchOptions, GenOptions, PlotOptions, SolveOptions,
};
use skyferry::generate::ParamsPreset;

/// Route planner for a ground vehicle that ferries and recharges a
/// survey drone.
#[derive(Parser)]
#[command(name = "skyferry", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Plan a mission: shortest tour, then tree search over energy levels
    Solve(SolveArgs),
    /// Run a reference planner instead of the tree search
    Baseline(BaselineArgs),
    /// Compare planners over seeded random instances, emitting CSV
    Bench(BenchArgs),
    /// Generate a seeded random instance
    Gen(GenArgs),
    /// Render a plan file as SVG
    Plot(PlotArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Instance JSON path
    instance: PathBuf,
    /// Search iterations (default 10000, or $SKYFERRY_ITERATIONS)
    #[arg(long)]
    iterations: Option<u64>,
    /// Random seed for tour restarts and rollouts
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// UCB exploration constant
    #[arg(long = "const", default_value_t = 1.414)]
    exploration_const: f64,
    /// Plan JSON output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render the plan to this SVG path
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Write per-iteration search trace as JSON lines
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args)]
struct BaselineArgs {
    /// Instance JSON path
    instance: PathBuf,
    /// Which reference planner to run: brute, dfs, or naive
    #[arg(long)]
    algo: String,
    /// Plan JSON output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also render the plan to this SVG path
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    /// Inclusive site-count range, e.g. 2..6
    #[arg(long = "sites-range", default_value = "2..6")]
    sites_range: String,
    /// Instances per site count
    #[arg(long, default_value_t = 3)]
    trials: u32,
    /// Base seed for instance generation and search
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Search iterations per instance
    #[arg(long)]
    iterations: Option<u64>,
    /// Vehicle parameter preset: default or ample
    #[arg(long, default_value = "default")]
    preset: String,
    /// CSV output path, appended when the file exists (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Number of sites
    #[arg(long, default_value_t = 5)]
    n: usize,
    /// Site box in km: W or WxH
    #[arg(long = "box", default_value = "10")]
    box_spec: String,
    /// Seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Vehicle parameter preset: default or ample
    #[arg(long, default_value = "default")]
    preset: String,
    /// Instance JSON output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct PlotArgs {
    /// Plan JSON path
    plan: PathBuf,
    /// SVG output path
    #[arg(long)]
    out: PathBuf,
}

fn parse_range(spec: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = spec.split("..").collect();
    match parts.as_slice() {
        [single] => {
            let n = single
                .parse()
                .map_err(|_| format!("bad site count '{single}'"))?;
            Ok((n, n))
        }
        [lo, hi] => {
            let lo = lo.parse().map_err(|_| format!("bad range start '{lo}'"))?;
            let hi = hi.parse().map_err(|_| format!("bad range end '{hi}'"))?;
            Ok((lo, hi))
        }
        _ => Err(format!(
            "--sites-range expects 'N' or 'LO..HI', got '{spec}'"
        )),
    }
}

fn run(cli: Cli) -> Result<(), skyferry::cli::CliError> {
    use skyferry::cli::CliError;
    match cli.command {
        Command::Solve(a) => cmd_solve(&SolveOptions {
            instance: a.instance,
            iterations: a.iterations,
            seed: a.seed,
            exploration_const: a.exploration_const,
            out: a.out,
            svg: a.svg,
            trace: a.trace,
        }),
        Command::Baseline(a) => {
            let algo: BaselineAlgo = a.algo.parse().map_err(CliError::Usage)?;
            cmd_baseline(&BaselineOptions {
                instance: a.instance,
                algo,
                out: a.out,
                svg: a.svg,
            })
        }
        Command::Bench(a) => {
            let sites_range = parse_range(&a.sites_range).map_err(CliError::Usage)?;
            let preset: ParamsPreset = a.preset.parse().map_err(CliError::Usage)?;
            cmd_bench(&BenchOptions {
                sites_range,
                trials: a.trials,
                seed: a.seed,
                iterations: a.iterations,
                preset,
                out: a.out,
            })
        }
        Command::Gen(a) => {
            let preset: ParamsPreset = a.preset.parse().map_err(CliError::Usage)?;
            cmd_gen(&GenOptions {
                n: a.n,
                box_spec: a.box_spec,
                seed: a.seed,
                preset,
                out: a.out,
            })
        }
        Command::Plot(a) => cmd_plot(&PlotOptions {
            plan: a.plan,
            out: a.out,
        }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
