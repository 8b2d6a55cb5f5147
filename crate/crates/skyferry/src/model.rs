//! Domain types shared by every planner: vehicle constants, mission
//! instances, per-vehicle energy state, and instance validation.
//!
//! Units are fixed crate-wide: kilometres, hours, milliamp-hours, km/h.
//! Coordinates are planar Euclidean. All types are immutable after
//! construction and safe to share across threads.

use serde::{Deserialize, Serialize};

use crate::geometry::Point;

/// Physical constants of the vehicle pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VehicleParams {
    /// UGV battery capacity (mAh).
    pub e_gmax: f64,
    /// UAV battery capacity (mAh).
    pub e_amax: f64,
    /// UAV flying cost (mAh per km).
    pub c_a: f64,
    /// UAV surveying cost (mAh per hour).
    pub c_s: f64,
    /// UGV driving cost without the UAV on board (mAh per km).
    pub c_g: f64,
    /// UGV driving cost while ferrying the UAV (mAh per km).
    pub c_ga: f64,
    /// Charging speed while ferrying (mAh per km driven).
    pub r_c: f64,
    /// UAV speed (km/h).
    pub v_a: f64,
    /// UGV speed (km/h).
    pub v_g: f64,
    /// Time to survey one site (h).
    pub t_survey: f64,
}

impl VehicleParams {
    /// Energy granted by an allocation level: `level * e_amax`.
    pub fn allocation_energy(&self, level: f64) -> f64 {
        level * self.e_amax
    }

    /// Energy one survey consumes regardless of flight distance.
    pub fn survey_cost(&self) -> f64 {
        self.c_s * self.t_survey
    }
}

/// One survey mission: start point, sites, vehicle constants, and the
/// discrete energy levels the UAV may be allocated per site.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MissionInstance {
    pub start: Point,
    pub sites: Vec<Point>,
    pub params: VehicleParams,
    /// Ascending fractions of `e_amax`, each in (0, 1].
    pub levels: Vec<f64>,
}

impl MissionInstance {
    pub fn site_count(&self) -> usize {
        self.sites.len()
    }

    /// Energy granted by the level at `idx`.
    pub fn level_energy(&self, idx: usize) -> f64 {
        self.params.allocation_energy(self.levels[idx])
    }

    /// Checks every instance invariant; see [`validate_instance`].
    pub fn validate(&self) -> Vec<String> {
        validate_instance(self)
    }
}

/// Joint vehicle state as carried through the simulation and the search
/// tree: both batteries, the mission clock, and the shared position
/// (the UAV is docked on the UGV between phases).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyState {
    /// UGV battery (mAh).
    pub e_g: f64,
    /// UAV battery (mAh).
    pub e_a: f64,
    /// Elapsed mission time (h).
    pub t: f64,
    /// Current position (km).
    pub pos: Point,
}

impl EnergyState {
    /// Both vehicles fully charged at the start point, clock at zero.
    pub fn initial(inst: &MissionInstance) -> Self {
        EnergyState {
            e_g: inst.params.e_gmax,
            e_a: inst.params.e_amax,
            t: 0.0,
            pos: inst.start,
        }
    }
}

/// Checks every instance invariant and returns one message per violation.
/// An empty list means the instance is well formed. Violations are data,
/// not errors: callers decide whether to reject.
// negated comparisons so NaN fields count as violations
#[allow(clippy::neg_cmp_op_on_partial_ord)]
pub fn validate_instance(inst: &MissionInstance) -> Vec<String> {
    let mut violations = Vec::new();
    let p = &inst.params;

    let positives = [
        ("params.e_gmax", p.e_gmax),
        ("params.e_amax", p.e_amax),
        ("params.c_a", p.c_a),
        ("params.c_s", p.c_s),
        ("params.c_g", p.c_g),
        ("params.c_ga", p.c_ga),
        ("params.r_c", p.r_c),
        ("params.v_a", p.v_a),
        ("params.v_g", p.v_g),
    ];
    for (name, value) in positives {
        if !(value > 0.0) {
            violations.push(format!("{name}: must be strictly positive, got {value}"));
        }
    }
    if !(p.t_survey >= 0.0) {
        violations.push(format!(
            "params.t_survey: must be non-negative, got {}",
            p.t_survey
        ));
    }
    if p.c_ga < p.c_g {
        violations.push(format!(
            "params.c_ga: carrying cost {} below empty driving cost {}",
            p.c_ga, p.c_g
        ));
    }

    if inst.sites.is_empty() {
        violations.push("sites: empty (need at least one site)".to_string());
    }
    for (i, site) in inst.sites.iter().enumerate() {
        if *site == inst.start {
            violations.push(format!("sites[{i}]: coincides with start"));
        }
        for (j, other) in inst.sites.iter().enumerate().skip(i + 1) {
            if site == other {
                violations.push(format!(
                    "sites: not pairwise distinct (sites {i} and {j} coincide)"
                ));
            }
        }
    }

    if inst.levels.is_empty() {
        violations.push("levels: empty (need at least one energy level)".to_string());
    }
    for (i, &level) in inst.levels.iter().enumerate() {
        if !(level > 0.0 && level <= 1.0) {
            violations.push(format!("levels[{i}]: must lie in (0, 1], got {level}"));
        }
        if i > 0 && level <= inst.levels[i - 1] {
            violations.push(format!(
                "levels[{i}]: not strictly ascending ({} after {})",
                level,
                inst.levels[i - 1]
            ));
        }
        // The smallest allocation must still pay for the survey itself,
        // otherwise the level grants no flight range at all.
        if !(p.allocation_energy(level) > p.survey_cost()) {
            violations.push(format!("levels[{i}]: level {level} cannot cover survey"));
        }
    }

    violations
}
