//! Pit the tree search against brute force, tour + DFS, and the
//! carry-and-wait reference on one small instance.
//!
//! ```bash
//! cargo run --release --example compare_baselines
//! ```

use std::time::Instant;

use skyferry::baselines::{brute_force, naive, tsp_dfs};
use skyferry::generate::{random_instance, ParamsPreset};
use skyferry::mcts::{search, MctsConfig};
use skyferry::tsp::solve_auto;

fn main() {
    let inst = random_instance(5, 10.0, 10.0, 42, ParamsPreset::Default);
    println!("5 random sites on a 10 km box, seed 42\n");
    println!(
        "{:<12} {:>12} {:>12}",
        "planner", "t_total (h)", "runtime (s)"
    );

    let started = Instant::now();
    let tour = solve_auto(inst.start, &inst.sites, 42);
    let result = search(
        &inst,
        &tour.order,
        &MctsConfig {
            seed: 42,
            ..MctsConfig::default()
        },
    );
    let mcts_time = started.elapsed().as_secs_f64();
    let mcts_t = result.best.as_ref().map(|p| p.t_total);
    print_row("tree search", mcts_t, mcts_time);

    let started = Instant::now();
    let brute = brute_force(&inst).expect("within capacity");
    print_row(
        "brute force",
        brute.best.as_ref().map(|p| p.t_total),
        started.elapsed().as_secs_f64(),
    );

    let started = Instant::now();
    let dfs = tsp_dfs(&inst).expect("within capacity");
    print_row(
        "tour + dfs",
        dfs.best.as_ref().map(|p| p.t_total),
        started.elapsed().as_secs_f64(),
    );

    let started = Instant::now();
    let nv = naive(&inst);
    print_row(
        "carry + wait",
        nv.feasible.then_some(nv.t_total),
        started.elapsed().as_secs_f64(),
    );

    if let (Some(m), Some(b)) = (mcts_t, brute.best.as_ref().map(|p| p.t_total)) {
        println!("\ngap to optimum: {:+.3}%", 100.0 * (m - b) / b);
    }
    println!(
        "dfs pruning: {} prefixes explored, {} cut by constraints, {} by the incumbent",
        dfs.explored, dfs.pruned_constraint, dfs.pruned_optimality
    );
}

fn print_row(name: &str, t_total: Option<f64>, runtime: f64) {
    match t_total {
        Some(t) => println!("{name:<12} {t:>12.4} {runtime:>12.4}"),
        None => println!("{name:<12} {:>12} {runtime:>12.4}", "infeasible"),
    }
}
