//! Generate a random instance, solve it, and write instance, plan, and
//! SVG files under `target/`.
//!
//! ```bash
//! cargo run --release --example generate_and_plot
//! ```

use std::fs;

use skyferry::files::{InstanceFile, PlanFile, PlannerAlgo, PlannerMeta};
use skyferry::generate::{random_instance, ParamsPreset};
use skyferry::mcts::{search, MctsConfig};
use skyferry::plot::plan_svg;
use skyferry::tsp::solve_auto;

fn main() {
    let inst = random_instance(12, 12.0, 12.0, 2024, ParamsPreset::Default);
    let tour = solve_auto(inst.start, &inst.sites, 2024);
    let config = MctsConfig {
        seed: 2024,
        ..MctsConfig::default()
    };
    let plan = search(&inst, &tour.order, &config)
        .best
        .expect("seed 2024 is feasible");

    let out_dir = std::path::Path::new("target/mission");
    fs::create_dir_all(out_dir).expect("create output dir");

    let inst_file = InstanceFile::from_instance(&inst);
    fs::write(out_dir.join("instance.json"), inst_file.canonical_json()).unwrap();

    let meta = PlannerMeta {
        algo: PlannerAlgo::Mcts,
        seed: Some(2024),
        iterations: Some(config.iterations),
        exploration_const: Some(config.exploration_const),
    };
    let plan_file = PlanFile::from_plan(&plan, &inst, meta);
    fs::write(out_dir.join("plan.json"), plan_file.canonical_json()).unwrap();
    fs::write(out_dir.join("plan.svg"), plan_svg(&plan_file)).unwrap();

    println!(
        "12 sites, t_total {:.4} h, instance digest {}",
        plan.t_total,
        &plan_file.instance_digest[..12]
    );
    println!(
        "wrote {}/instance.json, plan.json, plan.svg",
        out_dir.display()
    );
}
