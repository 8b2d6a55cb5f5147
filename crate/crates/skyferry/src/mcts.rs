//! Monte-Carlo tree search over per-site energy allocations along a
//! fixed tour.
//!
//! Tree depth equals tour position: the root is the launch state and a
//! node at depth `k` fixes the allocation for the first `k` sites.
//! Each iteration selects a leaf by UCB, expands it once with every
//! level (children created by a phase step; violating children are born
//! pruned), rolls out the remaining sites at random, and walks the
//! result back to the root. Rollouts that deplete a battery propagate
//! only their visit count. Two prunes keep the tree small: children
//! whose phase violates a constraint, and nodes whose elapsed time
//! already meets the best complete mission seen.
//!
//! The answer is the incumbent - the fastest feasible complete
//! trajectory observed anywhere during the search - not the most
//! visited path.

use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::baselines::naive;
use crate::model::{EnergyState, MissionInstance};
use crate::simulator::{finish_mission, phase_step, simulate, Plan};

/// Iteration budget used when the caller does not override it.
pub const DEFAULT_ITERATIONS: u64 = 10_000;
/// Exploration constant used when the caller does not override it.
pub const DEFAULT_EXPLORATION: f64 = 1.414;

/// Search knobs. `reward_scale` is the K in the reward `K / t_total`;
/// when unset it defaults to the carry-and-wait baseline's mission time,
/// which normalizes rewards near 1 across instances.
#[derive(Debug, Clone)]
pub struct MctsConfig {
    pub iterations: u64,
    pub exploration_const: f64,
    pub reward_scale: Option<f64>,
    pub seed: u64,
    /// Optional wall-clock cap; whichever budget runs out first stops
    /// the search.
    pub time_budget: Option<Duration>,
}

impl Default for MctsConfig {
    fn default() -> Self {
        MctsConfig {
            iterations: DEFAULT_ITERATIONS,
            exploration_const: DEFAULT_EXPLORATION,
            reward_scale: None,
            seed: 0,
            time_budget: None,
        }
    }
}

/// Upper confidence bound for one child: mean reward plus an
/// exploration bonus that shrinks with visits. Unvisited children score
/// infinite so each is tried once before any is revisited.
pub fn ucb_score(reward_sum: f64, visits: u64, parent_visits: u64, exploration: f64) -> f64 {
    debug_assert!(parent_visits >= 1);
    if visits == 0 {
        return f64::INFINITY;
    }
    let n = visits as f64;
    reward_sum / n + exploration * (2.0 * (parent_visits as f64).ln() / n).sqrt()
}

/// Optimality rule: a node whose elapsed time already meets the best
/// known complete mission cannot improve on it (every remaining phase
/// adds time).
pub fn prunes_on_incumbent(elapsed: f64, incumbent_t: f64) -> bool {
    elapsed >= incumbent_t
}

/// Counters reported alongside the result.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchStats {
    pub iterations: u64,
    pub tree_nodes: usize,
    pub complete_trajectories: u64,
    pub early_terminations: u64,
    pub constraint_pruned: u64,
    pub optimality_pruned: u64,
    pub incumbent_updates: u64,
}

/// Per-iteration snapshot for the optional trace stream.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct IterationTrace {
    pub iteration: u64,
    pub incumbent_t: Option<f64>,
    pub tree_nodes: usize,
    pub constraint_pruned: u64,
    pub optimality_pruned: u64,
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    /// Fastest feasible plan found, `None` when the budget ran out
    /// without completing any feasible trajectory.
    pub best: Option<Plan>,
    pub stats: SearchStats,
}

struct Node {
    depth: usize,
    level_idx: Option<usize>,
    state: EnergyState,
    visits: u64,
    reward_sum: f64,
    /// One child per level index once expanded.
    children: Option<Vec<usize>>,
    pruned: bool,
    parent: Option<usize>,
}

struct Tree {
    nodes: Vec<Node>,
}

impl Tree {
    fn new(root_state: EnergyState) -> Self {
        Tree {
            nodes: vec![Node {
                depth: 0,
                level_idx: None,
                state: root_state,
                visits: 0,
                reward_sum: 0.0,
                children: None,
                pruned: false,
                parent: None,
            }],
        }
    }

    fn add_child(
        &mut self,
        parent: usize,
        level_idx: usize,
        state: EnergyState,
        pruned: bool,
    ) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node {
            depth: self.nodes[parent].depth + 1,
            level_idx: Some(level_idx),
            state,
            visits: 0,
            reward_sum: 0.0,
            children: None,
            pruned,
            parent: Some(parent),
        });
        id
    }

    /// Adds one visit along `node -> root`; adds `reward` too when the
    /// trajectory completed.
    fn backpropagate(&mut self, node: usize, reward: Option<f64>) {
        let mut cur = Some(node);
        while let Some(id) = cur {
            self.nodes[id].visits += 1;
            if let Some(r) = reward {
                self.nodes[id].reward_sum += r;
            }
            cur = self.nodes[id].parent;
        }
    }

    /// Marks `node` pruned and walks up pruning every ancestor whose
    /// children are now all pruned.
    fn prune_and_propagate(&mut self, node: usize) {
        self.nodes[node].pruned = true;
        let mut cur = self.nodes[node].parent;
        while let Some(id) = cur {
            let all_pruned = match &self.nodes[id].children {
                Some(children) => children.iter().all(|&c| self.nodes[c].pruned),
                None => false,
            };
            if !all_pruned {
                break;
            }
            self.nodes[id].pruned = true;
            cur = self.nodes[id].parent;
        }
    }

    /// Allocation level indices along root -> node.
    fn level_path(&self, node: usize) -> Vec<usize> {
        let mut path = Vec::with_capacity(self.nodes[node].depth);
        let mut cur = Some(node);
        while let Some(id) = cur {
            if let Some(level) = self.nodes[id].level_idx {
                path.push(level);
            }
            cur = self.nodes[id].parent;
        }
        path.reverse();
        path
    }
}

/// Runs the search; see [`search_traced`] for the trace-emitting variant.
pub fn search(inst: &MissionInstance, tour: &[usize], config: &MctsConfig) -> SearchResult {
    search_traced(inst, tour, config, |_| {})
}

/// Runs the search over both traversal directions of the tour and keeps
/// the faster mission (ties go to the forward direction).
///
/// A cycle's two orientations have identical length, so the tour solver
/// cannot distinguish them, but the clipped chords and rendezvous points
/// differ once allocations are laid on top. Each direction gets the full
/// iteration budget; the returned stats sum both runs.
pub fn search_both_orientations(
    inst: &MissionInstance,
    tour: &[usize],
    config: &MctsConfig,
) -> SearchResult {
    search_both_orientations_traced(inst, tour, config, |_| {})
}

/// Trace-emitting variant of [`search_both_orientations`]; the callback
/// sees both runs back to back (the iteration counter restarts for the
/// reversed direction).
pub fn search_both_orientations_traced(
    inst: &MissionInstance,
    tour: &[usize],
    config: &MctsConfig,
    mut on_iteration: impl FnMut(&IterationTrace),
) -> SearchResult {
    let forward = search_traced(inst, tour, config, &mut on_iteration);
    if tour.len() < 2 {
        return forward;
    }
    let reversed_order: Vec<usize> = tour.iter().rev().copied().collect();
    let reversed = search_traced(inst, &reversed_order, config, &mut on_iteration);

    let stats = SearchStats {
        iterations: forward.stats.iterations + reversed.stats.iterations,
        tree_nodes: forward.stats.tree_nodes + reversed.stats.tree_nodes,
        complete_trajectories: forward.stats.complete_trajectories
            + reversed.stats.complete_trajectories,
        early_terminations: forward.stats.early_terminations + reversed.stats.early_terminations,
        constraint_pruned: forward.stats.constraint_pruned + reversed.stats.constraint_pruned,
        optimality_pruned: forward.stats.optimality_pruned + reversed.stats.optimality_pruned,
        incumbent_updates: forward.stats.incumbent_updates + reversed.stats.incumbent_updates,
    };
    let best = match (forward.best, reversed.best) {
        (Some(f), Some(r)) => Some(if r.t_total < f.t_total { r } else { f }),
        (f, r) => f.or(r),
    };
    SearchResult { best, stats }
}

/// Runs the search, invoking `on_iteration` after every iteration with
/// the incumbent, tree size, and prune counters.
pub fn search_traced(
    inst: &MissionInstance,
    tour: &[usize],
    config: &MctsConfig,
    mut on_iteration: impl FnMut(&IterationTrace),
) -> SearchResult {
    let n = tour.len();
    assert!(n >= 1, "mission needs at least one site");
    assert_eq!(n, inst.sites.len(), "tour must cover every site");
    assert!(config.iterations >= 1, "need at least one iteration");
    assert!(config.exploration_const >= 0.0);

    let reward_scale = config
        .reward_scale
        .unwrap_or_else(|| naive(inst).t_total)
        .max(f64::MIN_POSITIVE);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut tree = Tree::new(EnergyState::initial(inst));
    let mut stats = SearchStats::default();
    // Incumbent: fastest feasible complete trajectory seen anywhere.
    let mut incumbent: Option<(f64, Vec<usize>)> = None;

    let anchor = |depth: usize| {
        if depth + 1 < n {
            inst.sites[tour[depth + 1]]
        } else {
            inst.start
        }
    };

    let started = Instant::now();
    for iteration in 0..config.iterations {
        if let Some(budget) = config.time_budget {
            if started.elapsed() >= budget {
                break;
            }
        }
        if tree.nodes[0].pruned {
            // Whole space explored or cut; nothing left to search.
            break;
        }
        stats.iterations = iteration + 1;

        // Selection: descend by UCB through expanded nodes.
        let mut node = 0usize;
        let dead_end = loop {
            if tree.nodes[node].depth == n {
                break false;
            }
            let children = match &tree.nodes[node].children {
                None => break false,
                Some(c) => c.clone(),
            };
            // Apply the optimality rule lazily on the way down.
            if let Some((best_t, _)) = &incumbent {
                for &child in &children {
                    if !tree.nodes[child].pruned
                        && prunes_on_incumbent(tree.nodes[child].state.t, *best_t)
                    {
                        tree.nodes[child].pruned = true;
                        stats.optimality_pruned += 1;
                    }
                }
            }
            let parent_visits = tree.nodes[node].visits.max(1);
            let mut best_child = None;
            let mut best_score = f64::NEG_INFINITY;
            for &child in &children {
                if tree.nodes[child].pruned {
                    continue;
                }
                let score = ucb_score(
                    tree.nodes[child].reward_sum,
                    tree.nodes[child].visits,
                    parent_visits,
                    config.exploration_const,
                );
                // strict > keeps ties on the lowest level index
                if score > best_score {
                    best_score = score;
                    best_child = Some(child);
                }
            }
            match best_child {
                Some(child) => node = child,
                None => {
                    tree.prune_and_propagate(node);
                    break true;
                }
            }
        };
        if dead_end {
            tree.backpropagate(node, None);
            emit_trace(&mut on_iteration, iteration, &incumbent, &tree, &stats);
            continue;
        }

        let depth = tree.nodes[node].depth;
        if depth == n {
            // Terminal: the trajectory is fully decided; only the return
            // leg remains.
            match finish_mission(&tree.nodes[node].state, inst) {
                Ok((t_total, _)) => {
                    stats.complete_trajectories += 1;
                    update_incumbent(&mut incumbent, &mut stats, t_total, || {
                        tree.level_path(node)
                    });
                    tree.backpropagate(node, Some(reward_scale / t_total));
                }
                Err(_) => {
                    stats.constraint_pruned += 1;
                    tree.prune_and_propagate(node);
                    stats.early_terminations += 1;
                    tree.backpropagate(node, None);
                }
            }
            emit_trace(&mut on_iteration, iteration, &incumbent, &tree, &stats);
            continue;
        }

        // Expansion: one shot, every level; violating children are born
        // pruned and never selected.
        let site = tour[depth];
        let next_anchor = anchor(depth);
        let parent_state = tree.nodes[node].state;
        let mut child_ids = Vec::with_capacity(inst.levels.len());
        for (level_idx, &level) in inst.levels.iter().enumerate() {
            match phase_step(&parent_state, inst, site, level, next_anchor) {
                Ok((state, _)) => {
                    let mut pruned = false;
                    if let Some((best_t, _)) = &incumbent {
                        if prunes_on_incumbent(state.t, *best_t) {
                            pruned = true;
                            stats.optimality_pruned += 1;
                        }
                    }
                    child_ids.push(tree.add_child(node, level_idx, state, pruned));
                }
                Err(_) => {
                    stats.constraint_pruned += 1;
                    child_ids.push(tree.add_child(node, level_idx, parent_state, true));
                }
            }
        }
        tree.nodes[node].children = Some(child_ids.clone());

        let rollout_start = child_ids.iter().copied().find(|&c| !tree.nodes[c].pruned);
        let Some(start_child) = rollout_start else {
            tree.prune_and_propagate(node);
            stats.early_terminations += 1;
            tree.backpropagate(node, None);
            emit_trace(&mut on_iteration, iteration, &incumbent, &tree, &stats);
            continue;
        };

        // Rollout: random admissible levels to the end, then the return
        // leg. Depletion anywhere ends it early with a visit-only update.
        let mut state = tree.nodes[start_child].state;
        let mut suffix = Vec::with_capacity(n - tree.nodes[start_child].depth);
        let mut completed_t = None;
        loop {
            let d = tree.nodes[start_child].depth + suffix.len();
            if d == n {
                if let Ok((t_total, _)) = finish_mission(&state, inst) {
                    completed_t = Some(t_total);
                }
                break;
            }
            let admissible: Vec<usize> = (0..inst.levels.len())
                .filter(|&i| inst.level_energy(i) <= state.e_a)
                .collect();
            if admissible.is_empty() {
                break;
            }
            let level_idx = admissible[rng.random_range(0..admissible.len())];
            match phase_step(&state, inst, tour[d], inst.levels[level_idx], anchor(d)) {
                Ok((next, _)) => {
                    state = next;
                    suffix.push(level_idx);
                }
                Err(_) => break,
            }
        }

        match completed_t {
            Some(t_total) => {
                stats.complete_trajectories += 1;
                update_incumbent(&mut incumbent, &mut stats, t_total, || {
                    let mut path = tree.level_path(start_child);
                    path.extend_from_slice(&suffix);
                    path
                });
                tree.backpropagate(start_child, Some(reward_scale / t_total));
            }
            None => {
                stats.early_terminations += 1;
                tree.backpropagate(start_child, None);
            }
        }
        emit_trace(&mut on_iteration, iteration, &incumbent, &tree, &stats);
    }

    stats.tree_nodes = tree.nodes.len();
    let best = incumbent.map(|(_, level_idx)| {
        let allocations: Vec<f64> = level_idx.iter().map(|&i| inst.levels[i]).collect();
        simulate(inst, tour, &allocations)
    });
    SearchResult { best, stats }
}

fn update_incumbent(
    incumbent: &mut Option<(f64, Vec<usize>)>,
    stats: &mut SearchStats,
    t_total: f64,
    levels: impl FnOnce() -> Vec<usize>,
) {
    let improves = match incumbent {
        None => true,
        Some((best_t, _)) => t_total < *best_t,
    };
    if improves {
        *incumbent = Some((t_total, levels()));
        stats.incumbent_updates += 1;
    }
}

fn emit_trace(
    on_iteration: &mut impl FnMut(&IterationTrace),
    iteration: u64,
    incumbent: &Option<(f64, Vec<usize>)>,
    tree: &Tree,
    stats: &SearchStats,
) {
    on_iteration(&IterationTrace {
        iteration,
        incumbent_t: incumbent.as_ref().map(|(t, _)| *t),
        tree_nodes: tree.nodes.len(),
        constraint_pruned: stats.constraint_pruned,
        optimality_pruned: stats.optimality_pruned,
    });
}
