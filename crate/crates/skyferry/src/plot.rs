//! SVG rendering of a planned route.
//!
//! Stroke classes follow the field convention: solid purple for legs
//! where the ground vehicle carries the drone, solid cyan for the solo
//! chord crossings, dashed yellow for the drone's takeoff -> center ->
//! landing flights. Survey circles are light grey, rendezvous points
//! red, the start a green square.

use std::fmt::Write;

use crate::files::PlanFile;
use crate::geometry::Point;

const CARRY_COLOR: &str = "#7b2d8e";
const SOLO_COLOR: &str = "#00a5b5";
const UAV_COLOR: &str = "#d4a800";
const CIRCLE_COLOR: &str = "#b0b0b0";
const RENDEZVOUS_COLOR: &str = "#d62728";
const START_COLOR: &str = "#2ca02c";

/// Renders the plan to a standalone SVG document. Pure function of the
/// plan file; identical inputs produce identical bytes.
pub fn plan_svg(plan: &PlanFile) -> String {
    let (min, max) = bounds(plan);
    let pad = 0.08 * (max.x - min.x).max(max.y - min.y).max(1.0);
    let view = (
        min.x - pad,
        min.y - pad,
        (max.x - min.x) + 2.0 * pad,
        (max.y - min.y) + 2.0 * pad,
    );
    // y grows north in mission coordinates, south in SVG: flip via a
    // group transform so labels stay upright is overkill here - flip
    // the whole viewBox instead.
    let flip = |p: Point| (p.x, view.1 + view.3 - (p.y - view.1));

    let stroke_w = view.2.max(view.3) / 250.0;
    let dot_r = 1.6 * stroke_w;

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="{:.4} {:.4} {:.4} {:.4}">"#,
        view.0, view.1, view.2, view.3
    );
    let _ = writeln!(
        svg,
        r#"  <desc>{} sites, mission time {:.4} h, ground distance {:.4} km</desc>"#,
        plan.phases.len(),
        plan.t_total,
        plan.d_ugv
    );

    // survey circles
    let _ = writeln!(
        svg,
        r#"  <g id="survey-circles" fill="none" stroke="{CIRCLE_COLOR}" stroke-width="{:.4}">"#,
        stroke_w * 0.6
    );
    for phase in &plan.phases {
        if phase.radius > 0.0 {
            let (cx, cy) = flip(phase.center);
            let _ = writeln!(
                svg,
                r#"    <circle cx="{cx:.4}" cy="{cy:.4}" r="{:.4}"/>"#,
                phase.radius
            );
        }
    }
    let _ = writeln!(svg, "  </g>");

    // ground path: carry legs (previous rendezvous -> takeoff) and solo
    // chord legs (takeoff -> rendezvous)
    let _ = writeln!(
        svg,
        r#"  <g id="ugv-carry" fill="none" stroke="{CARRY_COLOR}" stroke-width="{stroke_w:.4}" stroke-linecap="round">"#
    );
    let mut prev = plan.start;
    for phase in &plan.phases {
        let _ = writeln!(svg, "    {}", line(flip(prev), flip(phase.takeoff)));
        prev = phase.rendezvous;
    }
    let _ = writeln!(svg, "    {}", line(flip(prev), flip(plan.start)));
    let _ = writeln!(svg, "  </g>");

    let _ = writeln!(
        svg,
        r#"  <g id="ugv-solo" fill="none" stroke="{SOLO_COLOR}" stroke-width="{stroke_w:.4}" stroke-linecap="round">"#
    );
    for phase in &plan.phases {
        if dist(phase.takeoff, phase.rendezvous) > 1e-12 {
            let _ = writeln!(
                svg,
                "    {}",
                line(flip(phase.takeoff), flip(phase.rendezvous))
            );
        }
    }
    let _ = writeln!(svg, "  </g>");

    // drone flights: takeoff -> center -> rendezvous
    let _ = writeln!(
        svg,
        r#"  <g id="uav-flights" fill="none" stroke="{UAV_COLOR}" stroke-width="{:.4}" stroke-dasharray="{:.4} {:.4}">"#,
        stroke_w * 0.8,
        2.5 * stroke_w,
        1.5 * stroke_w
    );
    for phase in &plan.phases {
        if phase.radius > 0.0 {
            let (tx, ty) = flip(phase.takeoff);
            let (cx, cy) = flip(phase.center);
            let (rx, ry) = flip(phase.rendezvous);
            let _ = writeln!(
                svg,
                r#"    <path d="M {tx:.4} {ty:.4} L {cx:.4} {cy:.4} L {rx:.4} {ry:.4}"/>"#
            );
        }
    }
    let _ = writeln!(svg, "  </g>");

    // markers: sites, rendezvous points, start
    let _ = writeln!(svg, r##"  <g id="sites" fill="#000000">"##);
    for phase in &plan.phases {
        let (cx, cy) = flip(phase.center);
        let _ = writeln!(
            svg,
            r#"    <circle cx="{cx:.4}" cy="{cy:.4}" r="{:.4}"/>"#,
            dot_r
        );
    }
    let _ = writeln!(svg, "  </g>");
    let _ = writeln!(svg, r#"  <g id="rendezvous" fill="{RENDEZVOUS_COLOR}">"#);
    for phase in &plan.phases {
        let (rx, ry) = flip(phase.rendezvous);
        let _ = writeln!(
            svg,
            r#"    <circle cx="{rx:.4}" cy="{ry:.4}" r="{:.4}"/>"#,
            dot_r * 0.8
        );
    }
    let _ = writeln!(svg, "  </g>");
    let (sx, sy) = flip(plan.start);
    let _ = writeln!(
        svg,
        r#"  <rect id="start" x="{:.4}" y="{:.4}" width="{:.4}" height="{:.4}" fill="{START_COLOR}"/>"#,
        sx - 1.5 * dot_r,
        sy - 1.5 * dot_r,
        3.0 * dot_r,
        3.0 * dot_r
    );

    // legend
    let lx = view.0 + 2.0 * stroke_w;
    let mut ly = view.1 + 5.0 * stroke_w;
    let font = 4.0 * stroke_w;
    let _ = writeln!(
        svg,
        r#"  <g id="legend" font-family="sans-serif" font-size="{font:.4}">"#
    );
    for (color, dash, label) in [
        (CARRY_COLOR, false, "ground, carrying drone"),
        (SOLO_COLOR, false, "ground, solo chord"),
        (UAV_COLOR, true, "drone flight"),
    ] {
        let dash_attr = if dash {
            format!(
                r#" stroke-dasharray="{:.4} {:.4}""#,
                2.5 * stroke_w,
                1.5 * stroke_w
            )
        } else {
            String::new()
        };
        let _ = writeln!(
            svg,
            r#"    <line x1="{lx:.4}" y1="{ly:.4}" x2="{:.4}" y2="{ly:.4}" stroke="{color}" stroke-width="{stroke_w:.4}"{dash_attr}/>"#,
            lx + 8.0 * stroke_w
        );
        let _ = writeln!(
            svg,
            r##"    <text x="{:.4}" y="{:.4}" fill="#333333">{label}</text>"##,
            lx + 10.0 * stroke_w,
            ly + 0.35 * font
        );
        ly += 5.5 * stroke_w;
    }
    let _ = writeln!(svg, "  </g>");

    svg.push_str("</svg>\n");
    svg
}

fn line((x1, y1): (f64, f64), (x2, y2): (f64, f64)) -> String {
    format!(r#"<line x1="{x1:.4}" y1="{y1:.4}" x2="{x2:.4}" y2="{y2:.4}"/>"#)
}

fn dist(a: Point, b: Point) -> f64 {
    a.dist(b)
}

fn bounds(plan: &PlanFile) -> (Point, Point) {
    let mut min = plan.start;
    let mut max = plan.start;
    let mut extend = |p: Point, margin: f64| {
        min.x = min.x.min(p.x - margin);
        min.y = min.y.min(p.y - margin);
        max.x = max.x.max(p.x + margin);
        max.y = max.y.max(p.y + margin);
    };
    for phase in &plan.phases {
        extend(phase.center, phase.radius);
        extend(phase.takeoff, 0.0);
        extend(phase.exit, 0.0);
        extend(phase.rendezvous, 0.0);
    }
    (min, max)
}
