//! Plan a small mission end to end: build an instance in code, compute
//! the tour, search the energy allocations, print the schedule.
//!
//! ```bash
//! cargo run --release --example solve_mission
//! ```

use skyferry::mcts::{search, MctsConfig};
use skyferry::tsp::solve_auto;
use skyferry::{MissionInstance, Point, VehicleParams};

fn main() {
    let inst = MissionInstance {
        start: Point::new(0.0, 0.0),
        sites: vec![
            Point::new(2.5, 1.0),
            Point::new(5.5, 2.5),
            Point::new(4.0, 5.5),
            Point::new(1.0, 4.0),
            Point::new(7.0, 6.0),
        ],
        params: VehicleParams {
            e_gmax: 300_000.0,
            e_amax: 5_000.0,
            c_a: 1_000.0,
            c_s: 2_000.0,
            c_g: 600.0,
            c_ga: 800.0,
            r_c: 2_500.0,
            v_a: 40.0,
            v_g: 12.0,
            t_survey: 0.1,
        },
        levels: vec![0.2, 0.4, 0.6, 0.8, 1.0],
    };
    assert!(inst.validate().is_empty());

    let tour = solve_auto(inst.start, &inst.sites, 0);
    println!(
        "tour over {} sites: {:?} ({:.3} km center polyline)",
        inst.sites.len(),
        tour.order,
        tour.length
    );

    let config = MctsConfig {
        seed: 7,
        ..MctsConfig::default()
    };
    let result = search(&inst, &tour.order, &config);
    let plan = result.best.expect("instance is feasible");

    println!(
        "mission time {:.4} h  (ground {:.3} km, waiting {:.4} h)",
        plan.t_total, plan.d_ugv, plan.t_gwait
    );
    println!(
        "search: {} iterations, {} nodes, {} complete trajectories",
        result.stats.iterations, result.stats.tree_nodes, result.stats.complete_trajectories
    );
    println!("\nphase  site  level   radius  wait      landing");
    for (k, phase) in plan.phases.iter().enumerate() {
        println!(
            "{k:>5}  {:>4}  {:>5.2}  {:>6.3}  {:>7.4}  t={:.4} h at ({:.3}, {:.3})",
            phase.site,
            plan.allocations[k],
            phase.geometry.radius,
            phase.rendezvous.wait,
            phase.t_landing,
            phase.rendezvous.point.x,
            phase.rendezvous.point.y,
        );
    }
}
