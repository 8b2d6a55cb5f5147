//! Route planning for a cooperative ground/air vehicle pair surveying a
//! set of sites.
//!
//! The ground vehicle (UGV) ferries a survey drone (UAV) between sites and
//! recharges it while driving. Each site is surveyed by the drone inside a
//! circle whose radius is fixed by the energy budgeted for that site; the
//! ground vehicle cuts a chord through the circle and the two vehicles meet
//! again at a rendezvous point on the chord. The planner minimizes total
//! mission time under hard battery budgets on both vehicles.
//!
//! Planning runs in two stages: a travelling-salesman tour over the site
//! centers fixes the visit order, then a Monte-Carlo tree search picks one
//! discrete energy level per site. Exhaustive baselines ([`baselines`])
//! provide ground truth for small instances.
//!
//! ## Modules
//!
//! - [`model`] - instance data, vehicle parameters, validation
//! - [`geometry`] - survey radius, chord construction, rendezvous solve
//! - [`simulator`] - deterministic forward simulation and energy bookkeeping
//! - [`tsp`] - exact (dynamic programming) and heuristic tour construction
//! - [`mcts`] - tree search over per-site energy allocations
//! - [`baselines`] - brute force, tour + depth-first search, carry-and-wait
//! - [`files`] - instance and plan JSON formats
//! - [`plot`] - SVG rendering of planned routes
//! - [`generate`] - seeded random instance generation
//! - [`bench`] - comparison harness emitting CSV
//!
//! ## Quick start
//!
//! ```
//! use skyferry::generate::{random_instance, ParamsPreset};
//! use skyferry::mcts::{search, MctsConfig};
//! use skyferry::tsp::solve_auto;
//!
//! let inst = random_instance(5, 8.0, 8.0, 7, ParamsPreset::Ample);
//! let tour = solve_auto(inst.start, &inst.sites, 7);
//! let result = search(&inst, &tour.order, &MctsConfig::default());
//! let plan = result.best.expect("feasible plan");
//! assert!(plan.feasible);
//! println!("mission time {:.2} h over {} sites", plan.t_total, plan.tour.len());
//! ```
//!
//! Runnable examples live under `examples/`, one per capability:
//!
//! ```bash
//! cargo run --example solve_mission
//! cargo run --example compare_baselines
//! cargo run --example rendezvous_geometry
//! cargo run --example energy_trace
//! cargo run --example generate_and_plot
//! cargo run --example benchmark_sweep
//! ```
//!
//! The same functionality is reachable from the `skyferry` binary
//! (`solve`, `baseline`, `bench`, `gen`, `plot` subcommands).

pub mod baselines;
pub mod bench;
pub mod cli;
pub mod files;
pub mod generate;
pub mod geometry;
pub mod mcts;
pub mod model;
pub mod plot;
pub mod simulator;
pub mod tsp;

pub use geometry::Point;
pub use model::{EnergyState, MissionInstance, VehicleParams};
pub use simulator::{simulate, Plan};
