//! Implementations behind the `skyferry` binary's subcommands. The
//! binary itself only parses arguments and maps errors to exit codes;
//! everything here is ordinary library code so the commands are equally
//! usable from tests and other programs.
//!
//! Exit codes: 0 success, 1 usage or parse failure, 2 no feasible plan,
//! 3 capacity guard.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use crate::baselines::{brute_force, naive, tsp_dfs, BaselineError};
use crate::bench::{run_bench, to_csv, BenchConfig};
use crate::files::{verify_plan_file, FileError, InstanceFile, PlanFile, PlannerAlgo, PlannerMeta};
use crate::generate::{random_instance_with, ParamsPreset, DEFAULT_LEVELS};
use crate::mcts::{
    search_both_orientations_traced, IterationTrace, MctsConfig, DEFAULT_ITERATIONS,
};
use crate::model::MissionInstance;
use crate::plot::plan_svg;
use crate::simulator::Plan;
use crate::tsp::solve_auto;

/// Environment variable overriding the default iteration budget when
/// the `--iterations` flag is absent.
pub const ITERATIONS_ENV: &str = "SKYFERRY_ITERATIONS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    File(#[from] FileError),
    #[error("invalid instance:\n  {}", .0.join("\n  "))]
    InvalidInstance(Vec<String>),
    #[error("{0}")]
    Usage(String),
    #[error("no feasible plan found ({0})")]
    NoPlan(String),
    #[error("{0}")]
    Capacity(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::File(_)
            | CliError::InvalidInstance(_)
            | CliError::Usage(_)
            | CliError::Io { .. } => 1,
            CliError::NoPlan(_) => 2,
            CliError::Capacity(_) => 3,
        }
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load_instance(path: &Path) -> Result<MissionInstance, CliError> {
    let inst = InstanceFile::read(path)?.into_instance();
    let violations = inst.validate();
    if !violations.is_empty() {
        return Err(CliError::InvalidInstance(violations));
    }
    Ok(inst)
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub instance: PathBuf,
    pub iterations: Option<u64>,
    pub seed: u64,
    pub exploration_const: f64,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub trace: Option<PathBuf>,
}

/// Effective iteration budget: flag, then environment, then default.
pub fn effective_iterations(flag: Option<u64>) -> Result<u64, CliError> {
    let budget = match flag {
        Some(n) => n,
        None => match std::env::var(ITERATIONS_ENV) {
            Ok(text) => text.parse::<u64>().map_err(|_| {
                CliError::Usage(format!(
                    "{ITERATIONS_ENV}={text} is not a valid iteration count"
                ))
            })?,
            Err(_) => DEFAULT_ITERATIONS,
        },
    };
    if budget == 0 {
        return Err(CliError::Usage(
            "iteration budget must be at least 1".into(),
        ));
    }
    Ok(budget)
}

/// `solve`: tour construction plus tree search, plan written as JSON.
pub fn cmd_solve(opts: &SolveOptions) -> Result<(), CliError> {
    let inst = load_instance(&opts.instance)?;
    let iterations = effective_iterations(opts.iterations)?;
    let config = MctsConfig {
        iterations,
        exploration_const: opts.exploration_const,
        reward_scale: None,
        seed: opts.seed,
        time_budget: None,
    };

    let started = Instant::now();
    let tour = solve_auto(inst.start, &inst.sites, opts.seed);
    let mut trace_rows: Vec<IterationTrace> = Vec::new();
    let result = search_both_orientations_traced(&inst, &tour.order, &config, |t| {
        if opts.trace.is_some() {
            trace_rows.push(*t);
        }
    });
    let wall = started.elapsed().as_secs_f64();

    if let Some(trace_path) = &opts.trace {
        let mut text = String::new();
        for row in &trace_rows {
            text.push_str(&serde_json::to_string(row).expect("trace serializes"));
            text.push('\n');
        }
        write_text(trace_path, &text)?;
    }

    let stats = &result.stats;
    let plan = result.best.as_ref().ok_or_else(|| {
        CliError::NoPlan(format!(
            "{} iterations, {} nodes, {} dead rollouts",
            stats.iterations, stats.tree_nodes, stats.early_terminations
        ))
    })?;

    let meta = PlannerMeta {
        algo: PlannerAlgo::Mcts,
        seed: Some(opts.seed),
        iterations: Some(iterations),
        exploration_const: Some(opts.exploration_const),
    };
    emit_plan(plan, &inst, meta, opts.out.as_deref(), opts.svg.as_deref())?;
    eprintln!(
        "solved {} sites: t_total {:.4} h, wait {:.4} h, ground {:.3} km \
         ({} iterations, {} nodes, {:.3} s)",
        inst.sites.len(),
        plan.t_total,
        plan.t_gwait,
        plan.d_ugv,
        stats.iterations,
        stats.tree_nodes,
        wall
    );
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineAlgo {
    Brute,
    Dfs,
    Naive,
}

impl std::str::FromStr for BaselineAlgo {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "brute" => Ok(BaselineAlgo::Brute),
            "dfs" => Ok(BaselineAlgo::Dfs),
            "naive" => Ok(BaselineAlgo::Naive),
            other => Err(format!(
                "unknown baseline '{other}' (try: brute, dfs, naive)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BaselineOptions {
    pub instance: PathBuf,
    pub algo: BaselineAlgo,
    pub out: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// `baseline`: one of the reference planners, same output contract as
/// `solve`.
pub fn cmd_baseline(opts: &BaselineOptions) -> Result<(), CliError> {
    let inst = load_instance(&opts.instance)?;
    let started = Instant::now();
    let capacity = |e: BaselineError| CliError::Capacity(e.to_string());
    let (plan, algo) = match opts.algo {
        BaselineAlgo::Brute => {
            let out = brute_force(&inst).map_err(capacity)?;
            let plan = out.best.ok_or_else(|| {
                CliError::NoPlan(format!("{} candidates enumerated", out.evaluated))
            })?;
            (plan, PlannerAlgo::BruteForce)
        }
        BaselineAlgo::Dfs => {
            let out = tsp_dfs(&inst).map_err(capacity)?;
            let explored = out.explored;
            let plan = out
                .best
                .ok_or_else(|| CliError::NoPlan(format!("{explored} prefixes explored")))?;
            (plan, PlannerAlgo::TspDfs)
        }
        BaselineAlgo::Naive => {
            let plan = naive(&inst);
            if !plan.feasible {
                let verdict = plan
                    .first_violation
                    .map(|v| format!("phase {}: {}", v.phase, v.reason))
                    .unwrap_or_default();
                // still write the trace before reporting failure
                let meta = PlannerMeta {
                    algo: PlannerAlgo::Naive,
                    seed: None,
                    iterations: None,
                    exploration_const: None,
                };
                emit_plan(&plan, &inst, meta, opts.out.as_deref(), opts.svg.as_deref())?;
                return Err(CliError::NoPlan(format!(
                    "naive plan infeasible at {verdict}"
                )));
            }
            (plan, PlannerAlgo::Naive)
        }
    };
    let wall = started.elapsed().as_secs_f64();
    let meta = PlannerMeta {
        algo,
        seed: None,
        iterations: None,
        exploration_const: None,
    };
    emit_plan(&plan, &inst, meta, opts.out.as_deref(), opts.svg.as_deref())?;
    eprintln!(
        "baseline {:?}: t_total {:.4} h over {} sites ({:.3} s)",
        opts.algo,
        plan.t_total,
        inst.sites.len(),
        wall
    );
    Ok(())
}

/// Verifies and writes the plan JSON (stdout if no path) plus the
/// optional SVG.
fn emit_plan(
    plan: &Plan,
    inst: &MissionInstance,
    meta: PlannerMeta,
    out: Option<&Path>,
    svg: Option<&Path>,
) -> Result<(), CliError> {
    let file = PlanFile::from_plan(plan, inst, meta);
    verify_plan_file(&file, inst)?;
    match out {
        Some(path) => file.write(path)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(file.canonical_json().as_bytes());
        }
    }
    if let Some(path) = svg {
        write_text(path, &plan_svg(&file))?;
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct BenchOptions {
    pub sites_range: (usize, usize),
    pub trials: u32,
    pub seed: u64,
    pub iterations: Option<u64>,
    pub preset: ParamsPreset,
    pub out: Option<PathBuf>,
}

/// `bench`: seeded sweep, CSV appended to `out` (header only when the
/// file is new or empty).
pub fn cmd_bench(opts: &BenchOptions) -> Result<(), CliError> {
    let cfg = BenchConfig {
        n_range: opts.sites_range,
        trials: opts.trials,
        seed: opts.seed,
        iterations: effective_iterations(opts.iterations)?,
        preset: opts.preset,
    };
    let rows = run_bench(&cfg);
    match &opts.out {
        Some(path) => {
            let existing = fs::metadata(path).map(|m| m.len()).unwrap_or(0);
            let csv = to_csv(&rows, existing == 0);
            let mut file = fs::OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            file.write_all(csv.as_bytes())
                .map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
            eprintln!("{} rows -> {}", rows.len(), path.display());
        }
        None => {
            print!("{}", to_csv(&rows, true));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct GenOptions {
    pub n: usize,
    /// Box spec `W` or `WxH` in km.
    pub box_spec: String,
    pub seed: u64,
    pub preset: ParamsPreset,
    pub out: Option<PathBuf>,
}

pub fn parse_box(spec: &str) -> Result<(f64, f64), CliError> {
    let err = || CliError::Usage(format!("--box expects 'W' or 'WxH' in km, got '{spec}'"));
    let parts: Vec<&str> = spec.split('x').collect();
    match parts.as_slice() {
        [w] => {
            let w: f64 = w.parse().map_err(|_| err())?;
            Ok((w, w))
        }
        [w, h] => {
            let w: f64 = w.parse().map_err(|_| err())?;
            let h: f64 = h.parse().map_err(|_| err())?;
            Ok((w, h))
        }
        _ => Err(err()),
    }
    .and_then(|(w, h)| {
        if w > 0.0 && h > 0.0 {
            Ok((w, h))
        } else {
            Err(err())
        }
    })
}

/// `gen`: seeded random instance as JSON.
pub fn cmd_gen(opts: &GenOptions) -> Result<(), CliError> {
    if opts.n < 1 {
        return Err(CliError::Usage("need at least one site".into()));
    }
    let (w, h) = parse_box(&opts.box_spec)?;
    let inst = random_instance_with(
        opts.n,
        w,
        h,
        opts.seed,
        opts.preset.params(),
        &DEFAULT_LEVELS,
    );
    let file = InstanceFile::from_instance(&inst);
    match &opts.out {
        Some(path) => {
            file.write(path)?;
            eprintln!(
                "{} sites in {w} x {h} km (seed {}, preset {}) -> {}",
                opts.n,
                opts.seed,
                opts.preset,
                path.display()
            );
        }
        None => print!("{}", file.canonical_json()),
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct PlotOptions {
    pub plan: PathBuf,
    pub out: PathBuf,
}

/// `plot`: plan JSON to SVG.
pub fn cmd_plot(opts: &PlotOptions) -> Result<(), CliError> {
    let plan = PlanFile::read(&opts.plan)?;
    write_text(&opts.out, &plan_svg(&plan))?;
    eprintln!("{} -> {}", opts.plan.display(), opts.out.display());
    Ok(())
}
