//! Walk one survey phase's geometry by hand: radius from the energy
//! allocation, chord across the circle, rendezvous point on the chord.
//!
//! ```bash
//! cargo run --example rendezvous_geometry
//! ```

use skyferry::geometry::{
    chord_for_site, segment_circle_intersections, solve_rendezvous, survey_radius,
};
use skyferry::{Point, VehicleParams};

fn main() {
    let params = VehicleParams {
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
    };

    // 60% of the battery for this site
    let alloc = params.allocation_energy(0.6);
    let r = survey_radius(alloc, &params).expect("allocation covers the survey");
    println!(
        "allocation {alloc} mAh, survey cost {} mAh -> radius {r:.4} km",
        params.survey_cost()
    );

    // the tour passes the site center at (4, 3) on its way to (9, 4)
    let entry = Point::new(0.0, 0.0);
    let center = Point::new(4.0, 3.0);
    let exit_toward = Point::new(9.0, 4.0);
    let geom = chord_for_site(entry, center, exit_toward, r);
    println!(
        "take-off ({:.4}, {:.4})  chord exit ({:.4}, {:.4})  chord {:.4} km",
        geom.takeoff.x, geom.takeoff.y, geom.exit.x, geom.exit.y, geom.chord_len
    );

    let sol = solve_rendezvous(&geom, &params);
    println!(
        "rendezvous at ({:.4}, {:.4}) [{:?}]",
        sol.point.x, sol.point.y, sol.kind
    );
    println!(
        "drone flies {:.4} km in {:.4} h (plus {:.2} h surveying)",
        sol.uav_flight_dist,
        sol.uav_flight_dist / params.v_a,
        params.t_survey
    );
    println!(
        "ground drives {:.4} km of chord in {:.4} h, waits {:.4} h",
        sol.ugv_dist,
        sol.ugv_dist / params.v_g,
        sol.wait
    );

    // the same chord endpoints fall out of the raw segment/circle clip
    let hits = segment_circle_intersections(entry, center, center, r);
    println!(
        "inbound segment crosses the circle at {} point(s), first ({:.4}, {:.4})",
        hits.len(),
        hits[0].x,
        hits[0].y
    );
}
