//! Closed-form geometry for one survey phase: converting an energy
//! allocation into a survey radius, clipping the tour polyline into a
//! chord across the survey circle, and solving for the rendezvous point
//! where the drone lands back on the ground vehicle.
//!
//! Everything here is a pure function over km-scale planar coordinates.

use std::ops::{Add, Mul, Neg, Sub};

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeTuple, Serializer};
use serde::{Deserialize, Serialize};

use crate::model::VehicleParams;

/// Absolute tolerance for geometric identities (km and h). Inputs are
/// assumed well scaled: km-range coordinates, hour-range times.
pub const GEOM_EPS: f64 = 1e-9;

/// Chords shorter than this are treated as a single point.
const DEGENERATE_CHORD: f64 = 1e-12;

/// A planar point, also used as a displacement vector.
/// Serializes as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// Squared Euclidean length.
    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn dist(self, other: Point) -> f64 {
        (self - other).norm()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut tup = serializer.serialize_tuple(2)?;
        tup.serialize_element(&self.x)?;
        tup.serialize_element(&self.y)?;
        tup.end()
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct PointVisitor;
        impl<'de> Visitor<'de> for PointVisitor {
            type Value = Point;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a two-element array [x, y]")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<Point, A::Error> {
                let x = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let y = seq
                    .next_element()?
                    .ok_or_else(|| de::Error::invalid_length(1, &self))?;
                if seq.next_element::<f64>()?.is_some() {
                    return Err(de::Error::invalid_length(3, &self));
                }
                Ok(Point::new(x, y))
            }
        }
        deserializer.deserialize_tuple(2, PointVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GeometryError {
    #[error("allocation cannot cover survey: {alloc} mAh <= {survey_cost} mAh")]
    AllocationTooSmall { alloc: f64, survey_cost: f64 },
}

/// Maximum circle radius such that the allocated energy covers an
/// out-and-back flight between the circle and its center plus the survey
/// at the center: `(alloc - c_s * t_survey) / (2 * c_a)`.
pub fn survey_radius(alloc: f64, params: &VehicleParams) -> Result<f64, GeometryError> {
    let flight_budget = alloc - params.survey_cost();
    if flight_budget <= 0.0 {
        return Err(GeometryError::AllocationTooSmall {
            alloc,
            survey_cost: params.survey_cost(),
        });
    }
    Ok(flight_budget / (2.0 * params.c_a))
}

/// Intersections of the segment `p0 -> p1` with the circle `(center, r)`,
/// ordered by parameter along the segment. Returns zero, one (tangency or
/// a single crossing), or two points.
pub fn segment_circle_intersections(p0: Point, p1: Point, center: Point, r: f64) -> Vec<Point> {
    debug_assert!(r > 0.0, "circle radius must be positive");
    debug_assert!(p0 != p1, "segment endpoints must differ");
    let d = p1 - p0;
    let f = p0 - center;
    let a = d.norm2();
    let b = 2.0 * f.dot(d);
    let c = f.norm2() - r * r;
    let disc = b * b - 4.0 * a * c;
    // Scale-relative tolerance so exact tangency survives rounding.
    let tol = 1e-12 * (b * b).max(4.0 * (a * c).abs()).max(1.0);

    let mut ts: Vec<f64> = Vec::new();
    if disc < -tol {
        return Vec::new();
    } else if disc <= tol {
        ts.push(-b / (2.0 * a));
    } else {
        // Numerically stable pair: avoid cancellation in -b +- sqrt(disc).
        let sq = disc.sqrt();
        let q = -0.5 * (b + b.signum() * sq);
        let (t1, t2) = (q / a, c / q);
        ts.push(t1.min(t2));
        ts.push(t1.max(t2));
    }

    ts.retain(|&t| (-1e-12..=1.0 + 1e-12).contains(&t));
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    ts.iter().map(|&t| p0 + d * t.clamp(0.0, 1.0)).collect()
}

/// One site's clipped geometry: the survey circle, the take-off point
/// where the ground vehicle releases the drone, and the chord it drives
/// while the drone surveys.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseGeometry {
    /// Site center (circle center).
    pub center: Point,
    /// Survey radius.
    pub radius: f64,
    /// Take-off point: where the inbound leg meets the circle.
    pub takeoff: Point,
    /// Chord exit point: where the outbound direction leaves the circle.
    pub exit: Point,
    /// Midpoint of the chord.
    pub mid: Point,
    /// Chord length `|takeoff -> exit|`.
    pub chord_len: f64,
}

impl PhaseGeometry {
    pub fn is_degenerate(&self) -> bool {
        self.chord_len <= DEGENERATE_CHORD
    }
}

/// Clips the polyline `entry_from -> center -> exit_to` to the survey
/// circle. The take-off point is the crossing nearest `entry_from`; the
/// exit point is the crossing on the outbound ray toward `exit_to`. An
/// anchor already inside the circle is kept as-is, which keeps the
/// construction defined when consecutive circles overlap.
pub fn chord_for_site(entry_from: Point, center: Point, exit_to: Point, r: f64) -> PhaseGeometry {
    debug_assert!(r > 0.0, "survey radius must be positive");
    let takeoff = clip_toward(center, entry_from, r);
    let exit = clip_toward(center, exit_to, r);
    let mid = (takeoff + exit) * 0.5;
    PhaseGeometry {
        center,
        radius: r,
        takeoff,
        exit,
        mid,
        chord_len: takeoff.dist(exit),
    }
}

/// The point where the segment from `anchor` to `center` crosses the
/// circle, or `anchor` itself when it already lies inside.
fn clip_toward(center: Point, anchor: Point, r: f64) -> Point {
    let d = anchor.dist(center);
    if d <= r {
        anchor
    } else {
        center + (anchor - center) * (r / d)
    }
}

/// Which rule produced the rendezvous point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RendezvousKind {
    /// Met on the take-off half of the chord, before the point nearest
    /// the center.
    MetBeforeMid,
    /// Met on the exit half of the chord.
    MetAfterMid,
    /// No meeting point on the chord: the ground vehicle waits at the
    /// chord exit for the drone.
    WaitAtExit,
    /// Zero-length chord: the ground vehicle holds at the take-off point
    /// for the whole out-and-back flight.
    Degenerate,
}

/// Where and how the two vehicles meet again after a survey.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RendezvousSolution {
    /// Landing point on the chord.
    pub point: Point,
    /// Drone flight distance for the phase: `r + |center -> point|`.
    pub uav_flight_dist: f64,
    /// Ground distance along the chord from take-off to the landing point.
    pub ugv_dist: f64,
    /// Time the ground vehicle waits at `point` before the drone lands (h).
    pub wait: f64,
    pub kind: RendezvousKind,
}

/// Solves for the rendezvous point on the chord.
///
/// The drone flies take-off -> center -> P (budgeted as `r` for the
/// inbound leg) and spends `t_survey` at the center; the ground vehicle
/// drives the chord. Equal arrival times give one equation; the
/// right triangle between the center, the chord, and P gives the other.
/// Squaring yields a quadratic along the chord whose spurious root is
/// rejected by requiring a non-negative drone leg. When no admissible
/// root exists the ground vehicle runs the whole chord and waits at the
/// exit point.
pub fn solve_rendezvous(geom: &PhaseGeometry, params: &VehicleParams) -> RendezvousSolution {
    let r = geom.radius;
    let (v_a, v_g, t_survey) = (params.v_a, params.v_g, params.t_survey);

    if geom.is_degenerate() {
        let op = geom.takeoff.dist(geom.center);
        return RendezvousSolution {
            point: geom.takeoff,
            uav_flight_dist: r + op,
            ugv_dist: 0.0,
            wait: (r + op) / v_a + t_survey,
            kind: RendezvousKind::Degenerate,
        };
    }

    let len = geom.chord_len;
    let dir = (geom.exit - geom.takeoff) * (1.0 / len);
    let rel = geom.center - geom.takeoff;
    // Foot of the center's perpendicular onto the chord line. For a true
    // chord (both endpoints on the circle) this is the chord midpoint.
    let foot = rel.dot(dir);
    let h2 = (rel.norm2() - foot * foot).max(0.0);

    let (roots, n) = meet_candidates(foot, h2, len, r, v_a, v_g, t_survey);
    if n > 0 {
        // Among admissible meeting points, the earliest along the chord
        // minimizes the ground distance.
        let s = roots[0];
        let point = geom.takeoff + dir * s;
        let op = point.dist(geom.center);
        let kind = if s <= foot {
            RendezvousKind::MetBeforeMid
        } else {
            RendezvousKind::MetAfterMid
        };
        return RendezvousSolution {
            point,
            uav_flight_dist: r + op,
            ugv_dist: s,
            wait: 0.0,
            kind,
        };
    }

    let ob = geom.exit.dist(geom.center);
    let wait = ((r + ob) / v_a + t_survey - len / v_g).max(0.0);
    RendezvousSolution {
        point: geom.exit,
        uav_flight_dist: r + ob,
        ugv_dist: len,
        wait,
        kind: RendezvousKind::WaitAtExit,
    }
}

/// Admissible meeting parameters along the chord, ascending. At most two.
///
/// `foot` is the chord parameter of the center's perpendicular foot and
/// `h2` its squared distance to the chord line. A parameter `s` is
/// admissible when it lies on the chord and the implied drone leg
/// `v_a * (s/v_g - c)` is non-negative (the squaring step otherwise
/// admits a mirror root with negative flight time).
fn meet_candidates(
    foot: f64,
    h2: f64,
    len: f64,
    r: f64,
    v_a: f64,
    v_g: f64,
    t_survey: f64,
) -> ([f64; 2], usize) {
    // Time equality (r + |OP(s)|)/v_a + t_survey = s/v_g with
    // |OP(s)|^2 = (s - foot)^2 + h2, squared into a quadratic in s.
    let c = r / v_a + t_survey;
    let ratio = v_a / v_g;
    let qa = ratio * ratio - 1.0;
    let qb = 2.0 * (foot - c * v_a * ratio);
    let qc = (v_a * c) * (v_a * c) - foot * foot - h2;

    let scale = (foot.abs() + c * v_a * ratio).max(1.0);
    let mut raw = [0.0f64; 2];
    let mut raw_n = 0;
    if qa.abs() <= 1e-12 * (ratio * ratio + 1.0) {
        if qb.abs() <= 1e-12 * scale {
            // Both vehicles cover chord distance at the same rate and the
            // center sits on the chord: every point past the foot meets
            // the time equality. The earliest is the foot itself.
            raw[0] = foot;
            raw_n = 1;
        } else {
            raw[0] = -qc / qb;
            raw_n = 1;
        }
    } else {
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            let q = -0.5 * (qb + qb.signum() * sq);
            let (s1, s2) = if q == 0.0 {
                (0.0, 0.0)
            } else {
                (q / qa, qc / q)
            };
            raw[0] = s1.min(s2);
            raw[1] = s1.max(s2);
            raw_n = if (s1 - s2).abs() < 1e-12 * scale {
                1
            } else {
                2
            };
        }
    }

    let mut out = [0.0f64; 2];
    let mut n = 0;
    for &s in raw.iter().take(raw_n) {
        if !(-GEOM_EPS..=len + GEOM_EPS).contains(&s) {
            continue;
        }
        let s = s.clamp(0.0, len);
        // Reject the mirror root introduced by squaring.
        if s / v_g - c < -GEOM_EPS {
            continue;
        }
        // Sanity: the landing point must stay inside the survey circle.
        let op = ((s - foot) * (s - foot) + h2).sqrt();
        if op > r + GEOM_EPS {
            continue;
        }
        out[n] = s;
        n += 1;
    }
    (out, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn params(v_a: f64, v_g: f64, t_survey: f64) -> VehicleParams {
        VehicleParams {
            e_gmax: 1.0e6,
            e_amax: 1_000.0,
            c_a: 100.0,
            c_s: 100.0,
            c_g: 1.0,
            c_ga: 1.0,
            r_c: 100.0,
            v_a,
            v_g,
            t_survey,
        }
    }

    #[test]
    fn survey_radius_hand_example() {
        let mut p = params(1.0, 1.0, 0.1);
        p.c_a = 10.0;
        p.c_s = 100.0;
        let r = survey_radius(30.0, &p).unwrap();
        assert!((r - 1.0).abs() < 1e-12);
    }

    #[test]
    fn survey_radius_zero_range_limit() {
        let p = params(1.0, 1.0, 0.1);
        let cost = p.survey_cost();
        assert!(survey_radius(cost, &p).is_err());
        let r = survey_radius(cost + 1e-9, &p).unwrap();
        assert!(r > 0.0 && r < 1e-10);
    }

    #[test]
    fn survey_radius_constructed_identity() {
        let mut p = params(1.0, 1.0, 0.1);
        p.c_a = 1.0;
        let alloc = 2.0 * p.c_a + p.survey_cost();
        assert!((survey_radius(alloc, &p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn segment_hits_diameter() {
        let pts = segment_circle_intersections(
            Point::new(-2.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(0.0, 0.0),
            1.0,
        );
        assert_eq!(pts.len(), 2);
        assert!((pts[0].x + 1.0).abs() < GEOM_EPS && pts[0].y.abs() < GEOM_EPS);
        assert!((pts[1].x - 1.0).abs() < GEOM_EPS && pts[1].y.abs() < GEOM_EPS);
    }

    #[test]
    fn segment_misses_circle() {
        let pts = segment_circle_intersections(
            Point::new(0.0, 2.0),
            Point::new(2.0, 2.0),
            Point::new(0.0, 0.0),
            1.0,
        );
        assert!(pts.is_empty());
    }

    #[test]
    fn segment_tangent_to_circle() {
        let pts = segment_circle_intersections(
            Point::new(-2.0, 1.0),
            Point::new(2.0, 1.0),
            Point::new(0.0, 0.0),
            1.0,
        );
        assert_eq!(pts.len(), 1);
        assert!(pts[0].dist(Point::new(0.0, 1.0)) < GEOM_EPS);
    }

    #[test]
    fn chord_collinear_construction() {
        let g = chord_for_site(
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(4.0, 0.0),
            1.0,
        );
        assert!(g.takeoff.dist(Point::new(1.0, 0.0)) < GEOM_EPS);
        assert!(g.exit.dist(Point::new(3.0, 0.0)) < GEOM_EPS);
        assert!(g.mid.dist(Point::new(2.0, 0.0)) < GEOM_EPS);
        assert!((g.chord_len - 2.0).abs() < GEOM_EPS);
    }

    #[test]
    fn chord_out_and_back_degenerates() {
        let g = chord_for_site(
            Point::new(0.0, 0.0),
            Point::new(2.0, 0.0),
            Point::new(0.0, 0.0),
            1.0,
        );
        assert!(g.is_degenerate());
        assert!(g.takeoff.dist(Point::new(1.0, 0.0)) < GEOM_EPS);
        assert_eq!(g.takeoff, g.exit);
    }

    #[test]
    fn chord_entry_inside_circle_is_kept() {
        let entry = Point::new(1.5, 0.1);
        let g = chord_for_site(entry, Point::new(2.0, 0.0), Point::new(5.0, 0.0), 1.0);
        assert_eq!(g.takeoff, entry);
    }

    fn diameter_geom(r: f64) -> PhaseGeometry {
        PhaseGeometry {
            center: Point::new(0.0, 0.0),
            radius: r,
            takeoff: Point::new(-r, 0.0),
            exit: Point::new(r, 0.0),
            mid: Point::new(0.0, 0.0),
            chord_len: 2.0 * r,
        }
    }

    #[test]
    fn rendezvous_hand_derived_point() {
        let sol = solve_rendezvous(&diameter_geom(1.0), &params(2.0, 1.0, 0.0));
        assert!(sol.point.dist(Point::new(-1.0 / 3.0, 0.0)) < GEOM_EPS);
        assert_eq!(sol.wait, 0.0);
        assert_eq!(sol.kind, RendezvousKind::MetBeforeMid);
        let t_uav = sol.uav_flight_dist / 2.0;
        let t_ugv = sol.ugv_dist / 1.0;
        assert!((t_uav - 2.0 / 3.0).abs() < GEOM_EPS);
        assert!((t_ugv - 2.0 / 3.0).abs() < GEOM_EPS);
    }

    #[test]
    fn rendezvous_equal_speeds_meet_at_center() {
        let sol = solve_rendezvous(&diameter_geom(1.0), &params(3.0, 3.0, 0.0));
        assert!(sol.point.dist(Point::new(0.0, 0.0)) < GEOM_EPS);
        assert_eq!(sol.wait, 0.0);
    }

    #[test]
    fn rendezvous_slow_drone_waits_at_exit() {
        let sol = solve_rendezvous(&diameter_geom(1.0), &params(1.0, 10.0, 1.0));
        assert_eq!(sol.kind, RendezvousKind::WaitAtExit);
        assert!(sol.point.dist(Point::new(1.0, 0.0)) < GEOM_EPS);
        assert!((sol.wait - 2.8).abs() < GEOM_EPS);
    }

    #[test]
    fn rendezvous_degenerate_chord() {
        let g = chord_for_site(
            Point::new(0.0, 0.0),
            Point::new(4.0, 0.0),
            Point::new(0.0, 0.0),
            1.0,
        );
        let sol = solve_rendezvous(&g, &params(1.0, 1.0, 0.0));
        assert_eq!(sol.kind, RendezvousKind::Degenerate);
        assert!((sol.wait - 2.0).abs() < GEOM_EPS);
        assert!((sol.uav_flight_dist - 2.0).abs() < GEOM_EPS);
        assert_eq!(sol.ugv_dist, 0.0);
    }

    /// Random proper chord on a random circle: two distinct boundary
    /// angles plus speeds and survey time.
    fn random_chord_case(
        seed: (f64, f64, f64, f64, f64),
        speeds: (f64, f64, f64),
    ) -> (PhaseGeometry, VehicleParams) {
        let (cx, cy, r, th1, th2) = seed;
        let center = Point::new(cx, cy);
        let takeoff = center + Point::new(th1.cos(), th1.sin()) * r;
        let exit = center + Point::new(th2.cos(), th2.sin()) * r;
        let geom = PhaseGeometry {
            center,
            radius: r,
            takeoff,
            exit,
            mid: (takeoff + exit) * 0.5,
            chord_len: takeoff.dist(exit),
        };
        let (v_a, v_g, t_survey) = speeds;
        (geom, params(v_a, v_g, t_survey))
    }

    proptest! {
        #[test]
        fn rendezvous_time_equality_when_no_wait(
            cx in -10.0..10.0f64,
            cy in -10.0..10.0f64,
            r in 0.05..5.0f64,
            th1 in 0.0..std::f64::consts::TAU,
            dth in 0.1..3.0f64,
            v_a in 1.0..60.0f64,
            v_g in 1.0..60.0f64,
            t_survey in 0.0..0.5f64,
        ) {
            let (geom, p) = random_chord_case((cx, cy, r, th1, th1 + dth), (v_a, v_g, t_survey));
            let sol = solve_rendezvous(&geom, &p);
            prop_assert!(sol.wait >= 0.0);
            // Flight never exceeds the budgeted out-and-back range.
            prop_assert!(sol.uav_flight_dist <= 2.0 * r + GEOM_EPS);
            // P on the chord segment.
            let on_chord = sol.point.dist(geom.takeoff) + sol.point.dist(geom.exit)
                - geom.chord_len;
            prop_assert!(on_chord.abs() < GEOM_EPS);
            prop_assert!(sol.point.dist(geom.center) <= r + GEOM_EPS);
            if sol.wait == 0.0 {
                let t_uav = sol.uav_flight_dist / p.v_a + p.t_survey;
                let t_ugv = sol.ugv_dist / p.v_g;
                prop_assert!((t_uav - t_ugv).abs() < GEOM_EPS,
                    "times diverge: {} vs {}", t_uav, t_ugv);
            }
        }

        /// With a faster drone the time-difference along the chord is
        /// strictly decreasing, so exactly one of the two squared-system
        /// roots survives the admissibility filter whenever they meet.
        #[test]
        fn exactly_one_branch_admits_a_root(
            cx in -10.0..10.0f64,
            cy in -10.0..10.0f64,
            r in 0.05..5.0f64,
            th1 in 0.0..std::f64::consts::TAU,
            dth in 0.1..3.0f64,
            v_g in 1.0..20.0f64,
            speedup in 1.05..5.0f64,
            t_survey in 0.0..0.5f64,
        ) {
            let v_a = v_g * speedup;
            let (geom, p) = random_chord_case((cx, cy, r, th1, th1 + dth), (v_a, v_g, t_survey));
            let sol = solve_rendezvous(&geom, &p);
            if sol.wait == 0.0 {
                let dir = (geom.exit - geom.takeoff) * (1.0 / geom.chord_len);
                let rel = geom.center - geom.takeoff;
                let foot = rel.dot(dir);
                let h2 = (rel.norm2() - foot * foot).max(0.0);
                let (_, n) = meet_candidates(foot, h2, geom.chord_len, r, v_a, v_g, t_survey);
                prop_assert_eq!(n, 1);
            }
        }

        #[test]
        fn rendezvous_invariant_under_rigid_motion(
            cx in -5.0..5.0f64,
            cy in -5.0..5.0f64,
            r in 0.1..3.0f64,
            th1 in 0.0..std::f64::consts::TAU,
            dth in 0.1..3.0f64,
            v_a in 2.0..40.0f64,
            v_g in 1.0..20.0f64,
            t_survey in 0.0..0.3f64,
            angle in 0.0..std::f64::consts::TAU,
            tx in -20.0..20.0f64,
            ty in -20.0..20.0f64,
        ) {
            let (geom, p) = random_chord_case((cx, cy, r, th1, th1 + dth), (v_a, v_g, t_survey));
            let rot = |q: Point| Point::new(
                q.x * angle.cos() - q.y * angle.sin() + tx,
                q.x * angle.sin() + q.y * angle.cos() + ty,
            );
            let moved = PhaseGeometry {
                center: rot(geom.center),
                radius: geom.radius,
                takeoff: rot(geom.takeoff),
                exit: rot(geom.exit),
                mid: rot(geom.mid),
                chord_len: geom.chord_len,
            };
            let a = solve_rendezvous(&geom, &p);
            let b = solve_rendezvous(&moved, &p);
            prop_assert!(rot(a.point).dist(b.point) < 1e-7);
            prop_assert!((a.wait - b.wait).abs() < 1e-7);
            prop_assert!((a.ugv_dist - b.ugv_dist).abs() < 1e-7);
        }

        /// The closed-form intersection agrees with a dense parametric
        /// scan for sign changes of the circle residual.
        #[test]
        fn intersections_match_parametric_scan(
            x0 in -8.0..8.0f64, y0 in -8.0..8.0f64,
            x1 in -8.0..8.0f64, y1 in -8.0..8.0f64,
            cx in -4.0..4.0f64, cy in -4.0..4.0f64,
            r in 0.2..4.0f64,
        ) {
            let p0 = Point::new(x0, y0);
            let p1 = Point::new(x1, y1);
            prop_assume!(p0.dist(p1) > 1e-6);
            let center = Point::new(cx, cy);
            let got = segment_circle_intersections(p0, p1, center, r);

            const SAMPLES: usize = 100_000;
            let residual = |t: f64| (p0 + (p1 - p0) * t).dist(center) - r;
            let mut crossings = Vec::new();
            let mut prev = residual(0.0);
            for i in 1..=SAMPLES {
                let t = i as f64 / SAMPLES as f64;
                let cur = residual(t);
                if prev == 0.0 || prev.signum() != cur.signum() {
                    // refine the bracket by bisection
                    let (mut lo, mut hi) = (t - 1.0 / SAMPLES as f64, t);
                    for _ in 0..60 {
                        let mid = 0.5 * (lo + hi);
                        if residual(lo).signum() == residual(mid).signum() {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    crossings.push(p0 + (p1 - p0) * (0.5 * (lo + hi)));
                }
                prev = cur;
            }
            // Every sign change has a reported intersection nearby and
            // every transversal intersection has a sign change nearby.
            for c in &crossings {
                prop_assert!(got.iter().any(|g| g.dist(*c) < 1e-4),
                    "scan crossing {:?} missing from {:?}", c, got);
            }
            for g in &got {
                let tangential = ((*g - center).norm() - r).abs() < 1e-9
                    && crossings.is_empty();
                prop_assert!(tangential || crossings.iter().any(|c| c.dist(*g) < 1e-4),
                    "reported {:?} not seen by scan", g);
            }
        }

        #[test]
        fn chord_right_triangle_identity(
            cx in -5.0..5.0f64,
            cy in -5.0..5.0f64,
            r in 0.2..3.0f64,
            d_entry in 1.01..4.0f64,
            d_exit in 1.01..4.0f64,
            th_e in 0.0..std::f64::consts::TAU,
            th_x in 0.0..std::f64::consts::TAU,
        ) {
            // Anchors strictly outside the circle give a true chord.
            let center = Point::new(cx, cy);
            let entry = center + Point::new(th_e.cos(), th_e.sin()) * (r * d_entry);
            let exit = center + Point::new(th_x.cos(), th_x.sin()) * (r * d_exit);
            let g = chord_for_site(entry, center, exit, r);
            prop_assert!((g.takeoff.dist(center) - r).abs() < GEOM_EPS);
            prop_assert!((g.exit.dist(center) - r).abs() < GEOM_EPS);
            prop_assert!(g.mid.dist((g.takeoff + g.exit) * 0.5) < GEOM_EPS);
            let om2 = g.mid.dist(center).powi(2);
            let half2 = (g.chord_len / 2.0).powi(2);
            prop_assert!((om2 + half2 - r * r).abs() < GEOM_EPS);
        }
    }
}
