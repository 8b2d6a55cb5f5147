//! Deterministic forward simulation of a (tour, allocation) pair.
//!
//! Every planner and baseline scores candidates through this module, so
//! total mission time and the feasibility verdict have a single
//! definition. A mission is a chain of phases - carry the drone to the
//! take-off point, fly the survey while the ground vehicle crosses the
//! chord, land at the rendezvous point - followed by a return leg to the
//! start.
//!
//! Infeasible inputs still produce a full trace with the first violating
//! event marked, so search code can score and prune uniformly instead of
//! handling errors.

use serde::{Deserialize, Serialize};

use crate::geometry::{
    chord_for_site, solve_rendezvous, survey_radius, PhaseGeometry, Point, RendezvousSolution,
};
use crate::model::{EnergyState, MissionInstance, VehicleParams};

/// Why a phase (or the return leg) failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfeasibleReason {
    /// Drone battery reached zero mid-mission (or below zero at return).
    UavDepleted,
    /// Ground battery reached zero mid-mission (or below zero at return).
    UgvDepleted,
    /// The chosen allocation exceeds the drone's charge at take-off.
    AllocInadmissible,
}

impl std::fmt::Display for InfeasibleReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            InfeasibleReason::UavDepleted => "UAV depleted",
            InfeasibleReason::UgvDepleted => "UGV depleted",
            InfeasibleReason::AllocInadmissible => "allocation inadmissible",
        };
        f.write_str(s)
    }
}

/// First event that broke a mission constraint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    /// Phase index in tour order; `phase == tour.len()` marks the return leg.
    pub phase: usize,
    pub reason: InfeasibleReason,
    /// Mission clock at the violating event (h).
    pub t: f64,
}

/// Full bookkeeping for one cooperative phase.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseRecord {
    /// Site index into the instance's site list.
    pub site: usize,
    pub geometry: PhaseGeometry,
    pub rendezvous: RendezvousSolution,
    /// Energy budgeted to the drone for this site (mAh).
    pub alloc: f64,
    /// Energy the drone actually spent: flight plus survey (mAh).
    pub uav_spend: f64,
    /// Ground energy spent driving the chord alone (mAh).
    pub ugv_spend_alone: f64,
    /// Ground energy spent carrying the drone to the take-off point (mAh).
    pub ugv_spend_carry: f64,
    /// Energy transferred to the drone during the carry leg (mAh).
    pub charged: f64,
    pub t_takeoff: f64,
    pub t_survey_start: f64,
    pub t_survey_end: f64,
    pub t_landing: f64,
    /// Joint state at landing, drone docked.
    pub state_after: EnergyState,
}

/// A fully simulated mission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Plan {
    /// Visit order: permutation of site indices.
    pub tour: Vec<usize>,
    /// Energy level fraction per tour position.
    pub allocations: Vec<f64>,
    pub phases: Vec<PhaseRecord>,
    /// Total mission time: travel plus all waiting (h).
    pub t_total: f64,
    /// Total ground-vehicle waiting time (h).
    pub t_gwait: f64,
    /// Total ground distance driven (km).
    pub d_ugv: f64,
    /// State on return to the start point.
    pub final_state: EnergyState,
    pub feasible: bool,
    pub first_violation: Option<Violation>,
}

/// Simulates a tour with one energy-level fraction per visited site.
///
/// Panics if `allocations` and `tour` disagree in length or `tour` is not
/// a permutation of `0..sites.len()`; these are caller bugs, not data
/// errors. Energy violations are reported in the returned plan.
pub fn simulate(inst: &MissionInstance, tour: &[usize], allocations: &[f64]) -> Plan {
    let n = inst.sites.len();
    assert!(n >= 1, "mission needs at least one site");
    assert_eq!(tour.len(), n, "tour must visit every site exactly once");
    assert_eq!(allocations.len(), n, "one allocation per tour position");
    {
        let mut seen = vec![false; n];
        for &s in tour {
            assert!(s < n && !seen[s], "tour is not a permutation of 0..{n}");
            seen[s] = true;
        }
    }

    let mut state = EnergyState::initial(inst);
    let mut phases = Vec::with_capacity(n);
    let mut first_violation: Option<Violation> = None;
    let mut d_ugv = 0.0;
    let mut t_gwait = 0.0;

    for k in 0..n {
        let next_anchor = if k + 1 < n {
            inst.sites[tour[k + 1]]
        } else {
            inst.start
        };
        let (next, record, violation) =
            phase_step_traced(&state, inst, tour[k], allocations[k], next_anchor);
        if first_violation.is_none() {
            if let Some((reason, t)) = violation {
                first_violation = Some(Violation {
                    phase: k,
                    reason,
                    t,
                });
            }
        }
        d_ugv += state.pos.dist(record.geometry.takeoff) + record.rendezvous.ugv_dist;
        t_gwait += record.rendezvous.wait;
        state = next;
        phases.push(record);
    }

    let (final_state, _ret_charged, violation) = return_leg_traced(&state, inst);
    if first_violation.is_none() {
        if let Some((reason, t)) = violation {
            first_violation = Some(Violation {
                phase: n,
                reason,
                t,
            });
        }
    }
    d_ugv += state.pos.dist(inst.start);

    Plan {
        tour: tour.to_vec(),
        allocations: allocations.to_vec(),
        phases,
        t_total: final_state.t,
        t_gwait,
        d_ugv,
        final_state,
        feasible: first_violation.is_none(),
        first_violation,
    }
}

/// Charge delivered over one carry leg: the minimum of what the charger
/// can transfer over the distance, the drone's deficit, and what the
/// ground battery can spare.
pub fn charge_amount(d_carry: f64, e_a: f64, e_g_avail: f64, params: &VehicleParams) -> f64 {
    let potential = params.r_c * d_carry;
    let deficit = params.e_amax - e_a;
    potential.min(deficit).min(e_g_avail).max(0.0)
}

/// Advances one cooperative phase: carry leg with en-route charging,
/// take-off, survey flight, chord crossing, rendezvous. Identical
/// arithmetic to the matching slice of [`simulate`]; folding this over a
/// full tour reproduces `simulate` exactly.
///
/// Errors carry the first constraint broken within the phase.
pub fn phase_step(
    state: &EnergyState,
    inst: &MissionInstance,
    site_idx: usize,
    level: f64,
    next_anchor: Point,
) -> Result<(EnergyState, PhaseRecord), InfeasibleReason> {
    let (next, record, violation) = phase_step_traced(state, inst, site_idx, level, next_anchor);
    match violation {
        None => Ok((next, record)),
        Some((reason, _)) => Err(reason),
    }
}

/// Phase arithmetic that always completes, reporting the first violation
/// (and its event time) alongside the trace.
pub(crate) fn phase_step_traced(
    state: &EnergyState,
    inst: &MissionInstance,
    site_idx: usize,
    level: f64,
    next_anchor: Point,
) -> (EnergyState, PhaseRecord, Option<(InfeasibleReason, f64)>) {
    let params = &inst.params;
    let site = inst.sites[site_idx];
    let alloc = params.allocation_energy(level);
    // A level too small to cover the survey cannot be flown at all;
    // instance validation rules this out for declared levels.
    let radius = match survey_radius(alloc, params) {
        Ok(r) => r,
        Err(_) => {
            // The phase cannot even start; emit an empty trace at the
            // current position.
            let geometry = PhaseGeometry {
                center: site,
                radius: 0.0,
                takeoff: state.pos,
                exit: state.pos,
                mid: state.pos,
                chord_len: 0.0,
            };
            let rendezvous = RendezvousSolution {
                point: state.pos,
                uav_flight_dist: 0.0,
                ugv_dist: 0.0,
                wait: 0.0,
                kind: crate::geometry::RendezvousKind::Degenerate,
            };
            let record = PhaseRecord {
                site: site_idx,
                geometry,
                rendezvous,
                alloc,
                uav_spend: 0.0,
                ugv_spend_alone: 0.0,
                ugv_spend_carry: 0.0,
                charged: 0.0,
                t_takeoff: state.t,
                t_survey_start: state.t,
                t_survey_end: state.t,
                t_landing: state.t,
                state_after: *state,
            };
            return (
                *state,
                record,
                Some((InfeasibleReason::AllocInadmissible, state.t)),
            );
        }
    };

    let geometry = chord_for_site(state.pos, site, next_anchor, radius);
    let d_carry = state.pos.dist(geometry.takeoff);
    let carry_cost = params.c_ga * d_carry;
    let mut e_g = state.e_g - carry_cost;

    // En-route charging, capped so the ground vehicle keeps enough to
    // drive straight home (empty) from the release point.
    let reserve = params.c_g * geometry.takeoff.dist(inst.start);
    let e_g_avail = (e_g - reserve).max(0.0);
    let charged = charge_amount(d_carry, state.e_a, e_g_avail, params);
    let mut e_a = state.e_a + charged;
    e_g -= charged;

    let t_takeoff = state.t + d_carry / params.v_g;
    let mut violation: Option<(InfeasibleReason, f64)> = None;
    let record_violation = |reason: InfeasibleReason, t: f64, slot: &mut Option<_>| {
        if slot.is_none() {
            *slot = Some((reason, t));
        }
    };
    if e_g <= 0.0 {
        record_violation(InfeasibleReason::UgvDepleted, t_takeoff, &mut violation);
    }
    if e_a <= 0.0 {
        record_violation(InfeasibleReason::UavDepleted, t_takeoff, &mut violation);
    }
    if alloc > e_a {
        record_violation(
            InfeasibleReason::AllocInadmissible,
            t_takeoff,
            &mut violation,
        );
    }

    // The drone departs with budget `alloc`; the actual spend depends on
    // where it lands and never exceeds the budget. Whatever the budget
    // left unspent simply stays in the battery.
    let rendezvous = solve_rendezvous(&geometry, params);
    let uav_spend = params.c_a * rendezvous.uav_flight_dist + params.survey_cost();
    e_a -= uav_spend;

    let d_solo = rendezvous.ugv_dist;
    let solo_cost = params.c_g * d_solo;
    e_g -= solo_cost;

    let t_landing = t_takeoff + d_solo / params.v_g + rendezvous.wait;
    if e_g <= 0.0 {
        record_violation(InfeasibleReason::UgvDepleted, t_landing, &mut violation);
    }
    if e_a <= 0.0 {
        record_violation(InfeasibleReason::UavDepleted, t_landing, &mut violation);
    }

    let state_after = EnergyState {
        e_g,
        e_a,
        t: t_landing,
        pos: rendezvous.point,
    };
    let record = PhaseRecord {
        site: site_idx,
        geometry,
        rendezvous,
        alloc,
        uav_spend,
        ugv_spend_alone: solo_cost,
        ugv_spend_carry: carry_cost,
        charged,
        t_takeoff,
        t_survey_start: t_takeoff + radius / params.v_a,
        t_survey_end: t_takeoff + radius / params.v_a + params.t_survey,
        t_landing,
        state_after,
    };
    (state_after, record, violation)
}

/// Final carry leg back to the start point. Charging still runs (it can
/// only help the drone's return constraint); at the return event both
/// batteries may legally sit at exactly zero.
pub(crate) fn return_leg_traced(
    state: &EnergyState,
    inst: &MissionInstance,
) -> (EnergyState, f64, Option<(InfeasibleReason, f64)>) {
    let params = &inst.params;
    let d = state.pos.dist(inst.start);
    let mut e_g = state.e_g - params.c_ga * d;
    let e_g_avail = e_g.max(0.0);
    let charged = charge_amount(d, state.e_a, e_g_avail, params);
    let e_a = state.e_a + charged;
    e_g -= charged;
    let t = state.t + d / params.v_g;

    let mut violation = None;
    if e_g < 0.0 {
        violation = Some((InfeasibleReason::UgvDepleted, t));
    } else if e_a < 0.0 {
        violation = Some((InfeasibleReason::UavDepleted, t));
    }
    let final_state = EnergyState {
        e_g,
        e_a,
        t,
        pos: inst.start,
    };
    (final_state, charged, violation)
}

/// Completes a mission from the post-last-phase state: runs the return
/// leg and yields the total mission time, or the violated constraint.
pub fn finish_mission(
    state: &EnergyState,
    inst: &MissionInstance,
) -> Result<(f64, EnergyState), InfeasibleReason> {
    let (final_state, _, violation) = return_leg_traced(state, inst);
    match violation {
        None => Ok((final_state.t, final_state)),
        Some((reason, _)) => Err(reason),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GEOM_EPS;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    /// Single site at (4, 0); level 0.5 of a 2000 mAh battery gives a
    /// 1 km radius at c_a = 500. An out-and-back landing on the circle
    /// spends the whole budget, so the battery must exceed it.
    fn single_site_instance(v_a: f64, v_g: f64) -> MissionInstance {
        MissionInstance {
            start: Point::new(0.0, 0.0),
            sites: vec![Point::new(4.0, 0.0)],
            params: VehicleParams {
                e_gmax: 1.0e6,
                e_amax: 2_000.0,
                c_a: 500.0,
                c_s: 1.0,
                c_g: 1.0,
                c_ga: 1.0,
                r_c: 1_000.0,
                v_a,
                v_g,
                t_survey: 0.0,
            },
            levels: vec![0.5],
        }
    }

    #[test]
    fn single_site_out_and_back_timeline() {
        let inst = single_site_instance(1.0, 1.0);
        let plan = simulate(&inst, &[0], &[0.5]);
        assert!(plan.feasible, "{:?}", plan.first_violation);
        assert!((plan.d_ugv - 6.0).abs() < GEOM_EPS);
        assert!((plan.t_gwait - 2.0).abs() < GEOM_EPS);
        assert!((plan.t_total - 8.0).abs() < GEOM_EPS);
        let rec = &plan.phases[0];
        assert!(rec.geometry.is_degenerate());
        assert!(rec.geometry.takeoff.dist(Point::new(3.0, 0.0)) < GEOM_EPS);
    }

    /// Doubling the radius shortens the drive more than the extra wait:
    /// t_total(r) = 2(4 - r)/v_g + 2r/v_a = 8 - r with v_g=1, v_a=2.
    #[test]
    fn two_level_tradeoff() {
        let mut inst = single_site_instance(2.0, 1.0);
        inst.params.e_amax = 4_000.0;
        inst.levels = vec![0.25, 0.5];
        let small = simulate(&inst, &[0], &[0.25]);
        let large = simulate(&inst, &[0], &[0.5]);
        assert!(small.feasible && large.feasible);
        assert!((small.t_total - 7.0).abs() < GEOM_EPS);
        assert!((large.t_total - 6.0).abs() < GEOM_EPS);
    }

    #[test]
    fn charge_amount_min_rule() {
        let params = VehicleParams {
            e_gmax: 1.0e6,
            e_amax: 100.0,
            c_a: 1.0,
            c_s: 1.0,
            c_g: 1.0,
            c_ga: 1.0,
            r_c: 50.0,
            v_a: 1.0,
            v_g: 1.0,
            t_survey: 0.0,
        };
        // potential 50, deficit 30, avail 100 -> deficit binds
        assert_eq!(charge_amount(1.0, 70.0, 100.0, &params), 30.0);
        // potential 50, deficit 80, avail 100 -> rate binds
        assert_eq!(charge_amount(1.0, 20.0, 100.0, &params), 50.0);
        // potential 50, deficit 80, avail 10 -> ground battery binds
        assert_eq!(charge_amount(1.0, 20.0, 10.0, &params), 10.0);
    }

    #[test]
    fn inadmissible_allocation_is_reported_not_thrown() {
        let mut inst = single_site_instance(1.0, 1.0);
        inst.params.r_c = 1e-6; // effectively no charging
        let mut state = EnergyState::initial(&inst);
        state.e_a = 400.0; // below the 1000 mAh budget of level 0.5
        let err = phase_step(&state, &inst, 0, 0.5, inst.start).unwrap_err();
        assert_eq!(err, InfeasibleReason::AllocInadmissible);
    }

    #[test]
    #[should_panic(expected = "at least one site")]
    fn empty_mission_violates_the_precondition() {
        let mut inst = single_site_instance(1.0, 1.0);
        inst.sites.clear();
        let _ = simulate(&inst, &[], &[]);
    }

    #[test]
    fn uav_depletion_at_landing() {
        // out-and-back spends the whole budget; taking off with exactly
        // the budget lands at zero, which is one mAh too few mid-mission
        let inst = single_site_instance(1.0, 1.0);
        let mut state = EnergyState::initial(&inst);
        state.e_a = 1_000.0; // equals the level-0.5 budget
        state.e_g = 6.0; // carry cost plus return reserve: nothing to spare
        let err = phase_step(&state, &inst, 0, 0.5, inst.start).unwrap_err();
        assert_eq!(err, InfeasibleReason::UavDepleted);
    }

    #[test]
    fn ugv_depletion_on_carry_leg() {
        let mut inst = single_site_instance(1.0, 1.0);
        inst.params.e_gmax = 2.0; // 3 km carry at 1 mAh/km drains it
        let state = EnergyState::initial(&inst);
        let err = phase_step(&state, &inst, 0, 0.5, inst.start).unwrap_err();
        assert_eq!(err, InfeasibleReason::UgvDepleted);
        // simulate returns the same verdict as data
        let plan = simulate(&inst, &[0], &[0.5]);
        assert!(!plan.feasible);
        assert_eq!(
            plan.first_violation.unwrap().reason,
            InfeasibleReason::UgvDepleted
        );
        assert_eq!(plan.first_violation.unwrap().phase, 0);
    }

    fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> MissionInstance {
        let sites = (0..n)
            .map(|_| Point::new(rng.random_range(0.5..9.5), rng.random_range(0.5..9.5)))
            .collect();
        MissionInstance {
            start: Point::new(0.0, 0.0),
            sites,
            params: VehicleParams {
                e_gmax: rng.random_range(5_000.0..200_000.0),
                e_amax: 5_000.0,
                c_a: 1_000.0,
                c_s: 2_000.0,
                c_g: 600.0,
                c_ga: 800.0,
                r_c: rng.random_range(500.0..3_000.0),
                v_a: rng.random_range(10.0..60.0),
                v_g: rng.random_range(4.0..20.0),
                t_survey: 0.1,
            },
            levels: vec![0.2, 0.4, 0.6, 0.8, 1.0],
        }
    }

    #[test]
    fn composing_phase_steps_reproduces_simulate() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let n = rng.random_range(1..=6);
            let inst = random_instance(&mut rng, n);
            let tour: Vec<usize> = {
                let mut t: Vec<usize> = (0..n).collect();
                t.shuffle(&mut rng);
                t
            };
            let allocs: Vec<f64> = (0..n)
                .map(|_| inst.levels[rng.random_range(0..inst.levels.len())])
                .collect();
            let plan = simulate(&inst, &tour, &allocs);

            let mut state = EnergyState::initial(&inst);
            let mut composed_ok = true;
            for k in 0..n {
                let anchor = if k + 1 < n {
                    inst.sites[tour[k + 1]]
                } else {
                    inst.start
                };
                match phase_step(&state, &inst, tour[k], allocs[k], anchor) {
                    Ok((next, record)) => {
                        // bit-for-bit agreement with the plan's record
                        assert_eq!(record, plan.phases[k]);
                        state = next;
                    }
                    Err(reason) => {
                        let v = plan.first_violation.expect("plan must record violation");
                        assert_eq!(v.phase, k);
                        assert_eq!(v.reason, reason);
                        composed_ok = false;
                        break;
                    }
                }
            }
            if composed_ok {
                match finish_mission(&state, &inst) {
                    Ok((t_total, final_state)) => {
                        assert!(plan.feasible, "composed feasible but plan says otherwise");
                        assert_eq!(t_total.to_bits(), plan.t_total.to_bits());
                        assert_eq!(final_state, plan.final_state);
                    }
                    Err(reason) => {
                        let v = plan.first_violation.expect("plan must record violation");
                        assert_eq!(v.phase, n);
                        assert_eq!(v.reason, reason);
                    }
                }
            }
        }
    }

    #[test]
    fn energy_conservation_per_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.random_range(1..=5);
            let inst = random_instance(&mut rng, n);
            let tour: Vec<usize> = (0..n).collect();
            let allocs: Vec<f64> = (0..n)
                .map(|_| inst.levels[rng.random_range(0..inst.levels.len())])
                .collect();
            let plan = simulate(&inst, &tour, &allocs);
            let mut prev = EnergyState::initial(&inst);
            for rec in &plan.phases {
                let de_g = rec.state_after.e_g - prev.e_g;
                let expected_g = -(rec.ugv_spend_carry + rec.ugv_spend_alone + rec.charged);
                assert!((de_g - expected_g).abs() < 1e-9, "{de_g} vs {expected_g}");
                let de_a = rec.state_after.e_a - prev.e_a;
                let expected_a = rec.charged - rec.uav_spend;
                assert!((de_a - expected_a).abs() < 1e-9);
                // spend matches the cost model and stays within budget
                let spend =
                    inst.params.c_a * rec.rendezvous.uav_flight_dist + inst.params.survey_cost();
                assert!((rec.uav_spend - spend).abs() < 1e-9);
                assert!(rec.uav_spend <= rec.alloc + 1e-9);
                prev = rec.state_after;
            }
        }
    }

    #[test]
    fn simulate_is_deterministic() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let inst = random_instance(&mut rng, 4);
        let tour = [2usize, 0, 3, 1];
        let allocs = [0.4, 0.6, 0.2, 1.0];
        let a = simulate(&inst, &tour, &allocs);
        let b = simulate(&inst, &tour, &allocs);
        assert_eq!(a, b);
    }

    proptest! {
        /// With the drone deficit and ground availability held fixed, a
        /// faster charger never delivers less in a phase.
        #[test]
        fn charging_is_monotone_in_rate(
            d in 0.0..20.0f64,
            e_a in 0.0..5_000.0f64,
            avail in 0.0..50_000.0f64,
            r_c in 100.0..3_000.0f64,
            bump in 1.0..4.0f64,
        ) {
            let mut params = random_instance(&mut ChaCha8Rng::seed_from_u64(0), 1).params;
            params.r_c = r_c;
            let base = charge_amount(d, e_a, avail, &params);
            params.r_c = r_c * bump;
            let more = charge_amount(d, e_a, avail, &params);
            prop_assert!(more >= base);
        }

        /// The ground vehicle may wait; the drone never hovers. Also the
        /// stated time identity t_total = d/v_g + waits.
        #[test]
        fn waits_are_ugv_side_only(seed in 0u64..500) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(1..=6);
            let inst = random_instance(&mut rng, n);
            let tour: Vec<usize> = (0..n).collect();
            let allocs: Vec<f64> = (0..n)
                .map(|_| inst.levels[rng.random_range(0..inst.levels.len())])
                .collect();
            let plan = simulate(&inst, &tour, &allocs);
            for rec in &plan.phases {
                prop_assert!(rec.rendezvous.wait >= 0.0);
                // drone arrival never later than the landing timestamp
                let uav_arrival = rec.t_takeoff
                    + rec.rendezvous.uav_flight_dist / inst.params.v_a
                    + inst.params.t_survey;
                prop_assert!(uav_arrival <= rec.t_landing + 1e-9);
            }
            let identity = plan.d_ugv / inst.params.v_g + plan.t_gwait;
            prop_assert!((plan.t_total - identity).abs() < 1e-9);
        }

        /// Feasible plans have strictly positive energy at every event
        /// and no violation hides before the marked one.
        #[test]
        fn prefix_of_feasible_plan_is_feasible(seed in 0u64..300) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = rng.random_range(2..=6);
            let inst = random_instance(&mut rng, n);
            let tour: Vec<usize> = (0..n).collect();
            let allocs: Vec<f64> = (0..n)
                .map(|_| inst.levels[rng.random_range(0..inst.levels.len())])
                .collect();
            let plan = simulate(&inst, &tour, &allocs);
            let upto = plan.first_violation.map_or(n, |v| v.phase);
            for rec in plan.phases.iter().take(upto) {
                prop_assert!(rec.state_after.e_g > 0.0);
                prop_assert!(rec.state_after.e_a > 0.0);
                // at take-off the budget was admissible
                let e_a_takeoff = rec.state_after.e_a + rec.uav_spend;
                prop_assert!(rec.alloc <= e_a_takeoff + 1e-9);
            }
            if plan.feasible {
                prop_assert!(plan.final_state.e_g >= 0.0);
                prop_assert!(plan.final_state.e_a >= 0.0);
            }
        }
    }
}
