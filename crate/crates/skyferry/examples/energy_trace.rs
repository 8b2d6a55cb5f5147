//! Simulate a fixed (tour, allocation) pair and print the phase-by-phase
//! energy ledger, including an infeasible variant to show how violations
//! are reported as data.
//!
//! ```bash
//! cargo run --example energy_trace
//! ```

use skyferry::generate::{random_instance, ParamsPreset};
use skyferry::simulate;
use skyferry::tsp::solve_auto;

fn main() {
    let inst = random_instance(4, 9.0, 9.0, 11, ParamsPreset::Default);
    let tour = solve_auto(inst.start, &inst.sites, 0);

    let moderate = vec![0.4; 4];
    let plan = simulate(&inst, &tour.order, &moderate);
    println!("allocations {:?} -> feasible: {}", moderate, plan.feasible);
    println!("phase  charged   spend     e_ugv        e_uav     clock");
    for (k, p) in plan.phases.iter().enumerate() {
        println!(
            "{k:>5}  {:>8.1}  {:>8.1}  {:>9.1}  {:>9.1}  {:>7.4} h",
            p.charged, p.uav_spend, p.state_after.e_g, p.state_after.e_a, p.state_after.t
        );
    }
    println!(
        "return to start at t = {:.4} h with e_ugv {:.1} mAh, e_uav {:.1} mAh\n",
        plan.t_total, plan.final_state.e_g, plan.final_state.e_a
    );

    // greedy full-radius everywhere: the charger cannot keep up
    let greedy = vec![1.0; 4];
    let plan = simulate(&inst, &tour.order, &greedy);
    println!("allocations {:?} -> feasible: {}", greedy, plan.feasible);
    if let Some(v) = plan.first_violation {
        println!(
            "first violation: phase {} ({}) at t = {:.4} h",
            v.phase, v.reason, v.t
        );
        println!(
            "the trace still runs to completion: t_total {:.4} h",
            plan.t_total
        );
    }
}
