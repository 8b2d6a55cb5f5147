//! Exhaustive and trivial reference planners. `brute_force` and
//! `tsp_dfs` double as ground-truth oracles for the tree search;
//! `naive` is the carry-everywhere lower bar every planner must beat.

use crate::geometry::{PhaseGeometry, RendezvousKind, RendezvousSolution};
use crate::model::{EnergyState, MissionInstance};
use crate::simulator::{
    charge_amount, phase_step_traced, return_leg_traced, simulate, InfeasibleReason, PhaseRecord,
    Plan, Violation,
};
use crate::tsp::{solve_auto, Tour};

/// Brute force is capped at this many sites (factorial growth).
pub const BRUTE_MAX_SITES: usize = 6;
/// Brute force is capped at this many energy levels.
pub const BRUTE_MAX_LEVELS: usize = 5;
/// DFS is capped at this many allocation vectors.
pub const DFS_MAX_CANDIDATES: f64 = 1e7;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BaselineError {
    #[error("{algo}: {detail}")]
    Capacity { algo: &'static str, detail: String },
}

#[derive(Debug, Clone)]
pub struct BruteForceOutcome {
    /// Minimum-time feasible plan, or `None` when nothing is feasible.
    pub best: Option<Plan>,
    /// Number of (tour, allocation) candidates simulated.
    pub evaluated: u64,
}

#[derive(Debug, Clone)]
pub struct DfsOutcome {
    /// Optimal plan over the fixed tour, or `None` when nothing is feasible.
    pub best: Option<Plan>,
    pub tour: Tour,
    /// Allocation prefixes visited.
    pub explored: u64,
    pub pruned_constraint: u64,
    pub pruned_optimality: u64,
}

/// Enumerates every site permutation and every allocation vector,
/// simulating each. Candidates are visited in lexicographic order and
/// ties are broken toward the earlier candidate.
pub fn brute_force(inst: &MissionInstance) -> Result<BruteForceOutcome, BaselineError> {
    let n = inst.sites.len();
    let levels = inst.levels.len();
    if n > BRUTE_MAX_SITES || levels > BRUTE_MAX_LEVELS {
        return Err(BaselineError::Capacity {
            algo: "brute_force",
            detail: format!(
                "{n} sites x {levels} levels exceeds {BRUTE_MAX_SITES} x {BRUTE_MAX_LEVELS}"
            ),
        });
    }

    let mut evaluated = 0u64;
    let mut best: Option<(f64, Vec<usize>, Vec<usize>)> = None;

    let mut tour = Vec::with_capacity(n);
    let mut used = vec![false; n];
    permute_tours(inst, &mut tour, &mut used, &mut evaluated, &mut best);

    let best = best.map(|(_, tour, alloc_idx)| {
        let allocations: Vec<f64> = alloc_idx.iter().map(|&i| inst.levels[i]).collect();
        simulate(inst, &tour, &allocations)
    });
    Ok(BruteForceOutcome { best, evaluated })
}

fn permute_tours(
    inst: &MissionInstance,
    tour: &mut Vec<usize>,
    used: &mut [bool],
    evaluated: &mut u64,
    best: &mut Option<(f64, Vec<usize>, Vec<usize>)>,
) {
    let n = inst.sites.len();
    if tour.len() == n {
        let mut alloc_idx = vec![0usize; n];
        loop {
            *evaluated += 1;
            if let Some(t_total) = evaluate_levels(inst, tour, &alloc_idx) {
                let better = match best {
                    None => true,
                    Some((best_t, _, _)) => t_total < *best_t - 1e-9,
                };
                if better {
                    *best = Some((t_total, tour.clone(), alloc_idx.clone()));
                }
            }
            if !next_vector(&mut alloc_idx, inst.levels.len()) {
                break;
            }
        }
        return;
    }
    for site in 0..n {
        if used[site] {
            continue;
        }
        used[site] = true;
        tour.push(site);
        permute_tours(inst, tour, used, evaluated, best);
        tour.pop();
        used[site] = false;
    }
}

/// Odometer increment in lexicographic order; false on wrap-around.
fn next_vector(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Mission time of a candidate, or `None` at the first violated
/// constraint.
fn evaluate_levels(inst: &MissionInstance, tour: &[usize], alloc_idx: &[usize]) -> Option<f64> {
    let n = tour.len();
    let mut state = EnergyState::initial(inst);
    for k in 0..n {
        let anchor = if k + 1 < n {
            inst.sites[tour[k + 1]]
        } else {
            inst.start
        };
        let (next, _, violation) =
            phase_step_traced(&state, inst, tour[k], inst.levels[alloc_idx[k]], anchor);
        if violation.is_some() {
            return None;
        }
        state = next;
    }
    let (final_state, _, violation) = return_leg_traced(&state, inst);
    if violation.is_some() {
        return None;
    }
    Some(final_state.t)
}

/// Fixes the shortest tour, then depth-first enumerates allocation
/// vectors over it with constraint- and incumbent-based pruning.
pub fn tsp_dfs(inst: &MissionInstance) -> Result<DfsOutcome, BaselineError> {
    let n = inst.sites.len();
    let candidates = (inst.levels.len() as f64).powi(n as i32);
    if candidates > DFS_MAX_CANDIDATES {
        return Err(BaselineError::Capacity {
            algo: "tsp_dfs",
            detail: format!(
                "{}^{n} allocation vectors exceed {DFS_MAX_CANDIDATES:e}",
                inst.levels.len()
            ),
        });
    }
    let tour = solve_auto(inst.start, &inst.sites, 0);
    Ok(dfs_over_tour(inst, tour, true))
}

/// DFS over allocation vectors along a fixed tour. Levels are tried
/// largest-first so good incumbents appear early and sharpen the
/// optimality bound. `pruning` disables the incumbent cut (the
/// constraint cut stays: a violated prefix can never recover).
pub fn dfs_over_tour(inst: &MissionInstance, tour: Tour, pruning: bool) -> DfsOutcome {
    struct Ctx<'a> {
        inst: &'a MissionInstance,
        order: &'a [usize],
        pruning: bool,
        explored: u64,
        pruned_constraint: u64,
        pruned_optimality: u64,
        incumbent: Option<(f64, Vec<usize>)>,
        stack: Vec<usize>,
    }

    fn descend(ctx: &mut Ctx, state: &EnergyState, depth: usize) {
        let n = ctx.order.len();
        if depth == n {
            if let (final_state, _, None) = return_leg_traced(state, ctx.inst) {
                let t_total = final_state.t;
                let better = match &ctx.incumbent {
                    None => true,
                    Some((best_t, _)) => t_total < *best_t,
                };
                if better {
                    ctx.incumbent = Some((t_total, ctx.stack.clone()));
                }
            }
            return;
        }
        let anchor = if depth + 1 < n {
            ctx.inst.sites[ctx.order[depth + 1]]
        } else {
            ctx.inst.start
        };
        for level_idx in (0..ctx.inst.levels.len()).rev() {
            ctx.explored += 1;
            let level = ctx.inst.levels[level_idx];
            let (next, _, violation) =
                phase_step_traced(state, ctx.inst, ctx.order[depth], level, anchor);
            if violation.is_some() {
                ctx.pruned_constraint += 1;
                continue;
            }
            if ctx.pruning {
                if let Some((best_t, _)) = &ctx.incumbent {
                    if next.t >= *best_t {
                        ctx.pruned_optimality += 1;
                        continue;
                    }
                }
            }
            ctx.stack.push(level_idx);
            descend(ctx, &next, depth + 1);
            ctx.stack.pop();
        }
    }

    let mut ctx = Ctx {
        inst,
        order: &tour.order,
        pruning,
        explored: 0,
        pruned_constraint: 0,
        pruned_optimality: 0,
        incumbent: None,
        stack: Vec::with_capacity(tour.order.len()),
    };
    let initial = EnergyState::initial(inst);
    descend(&mut ctx, &initial, 0);

    let (explored, pruned_constraint, pruned_optimality) =
        (ctx.explored, ctx.pruned_constraint, ctx.pruned_optimality);
    let best = ctx.incumbent.map(|(_, alloc_idx)| {
        let allocations: Vec<f64> = alloc_idx.iter().map(|&i| inst.levels[i]).collect();
        simulate(inst, &tour.order, &allocations)
    });
    DfsOutcome {
        best,
        tour,
        explored,
        pruned_constraint,
        pruned_optimality,
    }
}

/// Carry-and-wait reference: the ground vehicle drives the plain tour
/// polyline with the drone aboard, halting at each site center while it
/// surveys from the deck (zero flight). Charging still runs on every
/// leg. Mission time is the polyline over ground speed plus one survey
/// dwell per site.
pub fn naive(inst: &MissionInstance) -> Plan {
    let params = &inst.params;
    let n = inst.sites.len();
    let tour = solve_auto(inst.start, &inst.sites, 0);
    let survey_cost = params.survey_cost();

    let mut state = EnergyState::initial(inst);
    let mut phases = Vec::with_capacity(n);
    let mut first_violation: Option<Violation> = None;
    let mut d_ugv = 0.0;
    let record_violation = |v: &mut Option<Violation>, phase, reason, t| {
        if v.is_none() {
            *v = Some(Violation { phase, reason, t });
        }
    };

    for (k, &site_idx) in tour.order.iter().enumerate() {
        let site = inst.sites[site_idx];
        let d = state.pos.dist(site);
        let mut e_g = state.e_g - params.c_ga * d;
        let reserve = params.c_g * site.dist(inst.start);
        let e_g_avail = (e_g - reserve).max(0.0);
        let charged = charge_amount(d, state.e_a, e_g_avail, params);
        let mut e_a = state.e_a + charged;
        e_g -= charged;
        let t_arrive = state.t + d / params.v_g;

        if e_g <= 0.0 {
            record_violation(
                &mut first_violation,
                k,
                InfeasibleReason::UgvDepleted,
                t_arrive,
            );
        }
        if e_a <= 0.0 {
            record_violation(
                &mut first_violation,
                k,
                InfeasibleReason::UavDepleted,
                t_arrive,
            );
        }
        if survey_cost > e_a {
            record_violation(
                &mut first_violation,
                k,
                InfeasibleReason::AllocInadmissible,
                t_arrive,
            );
        }

        e_a -= survey_cost;
        let t_done = t_arrive + params.t_survey;
        if e_a <= 0.0 {
            record_violation(
                &mut first_violation,
                k,
                InfeasibleReason::UavDepleted,
                t_done,
            );
        }

        let state_after = EnergyState {
            e_g,
            e_a,
            t: t_done,
            pos: site,
        };
        phases.push(PhaseRecord {
            site: site_idx,
            geometry: PhaseGeometry {
                center: site,
                radius: 0.0,
                takeoff: site,
                exit: site,
                mid: site,
                chord_len: 0.0,
            },
            rendezvous: RendezvousSolution {
                point: site,
                uav_flight_dist: 0.0,
                ugv_dist: 0.0,
                wait: params.t_survey,
                kind: RendezvousKind::Degenerate,
            },
            alloc: survey_cost,
            uav_spend: survey_cost,
            ugv_spend_alone: 0.0,
            ugv_spend_carry: params.c_ga * d,
            charged,
            t_takeoff: t_arrive,
            t_survey_start: t_arrive,
            t_survey_end: t_done,
            t_landing: t_done,
            state_after,
        });
        d_ugv += d;
        state = state_after;
    }

    let (final_state, _, violation) = return_leg_traced(&state, inst);
    if let Some((reason, t)) = violation {
        record_violation(&mut first_violation, n, reason, t);
    }
    d_ugv += state.pos.dist(inst.start);

    Plan {
        allocations: vec![survey_cost / params.e_amax; n],
        tour: tour.order,
        phases,
        t_total: final_state.t,
        t_gwait: params.t_survey * n as f64,
        d_ugv,
        final_state,
        feasible: first_violation.is_none(),
        first_violation,
    }
}
