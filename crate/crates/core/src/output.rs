//! Trace serialization: CSV, JSON and per-tick SVG frames.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use crate::geometry::Vec2;
use crate::planner::{PlanTrace, TickRecord};
use crate::polyline::PolylineRef;
use crate::scenario::Obstacle;

pub const CSV_HEADER: [&str; 16] = [
    "record",
    "tick",
    "seed",
    "cost",
    "monotone",
    "self_intersection",
    "reversal",
    "discontinuity",
    "max_kappa_d",
    "bound_excess",
    "collision",
    "index",
    "s",
    "d",
    "x",
    "y",
];

/// Serde helper writing non-finite floats as the strings `"inf"`,
/// `"-inf"` and `"nan"` so JSON keeps them.
pub mod float_or_inf {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_str(&super::fmt_float(*v))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Shortest representation that parses back to the same value.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "nan".to_owned()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.to_owned()
    } else {
        format!("{v}")
    }
}

/// Writes the trace as CSV: one `candidate` row per candidate and tick,
/// then one `selected` row per point of the tick's selected trajectory.
pub fn write_csv<W: Write>(trace: &PlanTrace, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for t in &trace.ticks {
        write_tick(&mut w, t)?;
    }
    w.flush()?;
    Ok(())
}

fn write_tick<W: Write>(w: &mut csv::Writer<W>, t: &TickRecord) -> csv::Result<()> {
    let tick = t.tick.to_string();
    for c in &t.candidates {
        w.write_record([
            "candidate",
            &tick,
            &c.seed.to_string(),
            &fmt_float(c.cost),
            &c.monotone.to_string(),
            &c.self_intersection.to_string(),
            &c.reversal.to_string(),
            &c.discontinuity.to_string(),
            &fmt_float(c.max_kappa_d),
            &fmt_float(c.bound_excess),
            &c.collision.to_string(),
            "",
            "",
            "",
            "",
            "",
        ])?;
    }
    if let Some(sel) = &t.selected {
        let summary = t.candidates.iter().find(|c| c.seed == sel.seed);
        let excess = summary.map_or(String::new(), |c| fmt_float(c.bound_excess));
        let collision = summary.map_or(String::new(), |c| c.collision.to_string());
        for (i, (f, p)) in sel.frenet.iter().zip(&sel.cartesian).enumerate() {
            w.write_record([
                "selected",
                &tick,
                &sel.seed.to_string(),
                &fmt_float(sel.cost),
                &sel.report.monotone.to_string(),
                &sel.report.self_intersection.to_string(),
                &sel.report.following.reversal_detected.to_string(),
                &sel.report.following.discontinuity_detected.to_string(),
                &fmt_float(sel.report.max_kappa_d),
                &excess,
                &collision,
                &i.to_string(),
                &fmt_float(f.s),
                &fmt_float(f.d),
                &fmt_float(p.x),
                &fmt_float(p.y),
            ])?;
        }
    }
    Ok(())
}

/// JSON array of tick records.
pub fn write_json<W: Write>(trace: &PlanTrace, out: W) -> serde_json::Result<()> {
    serde_json::to_writer_pretty(out, &trace.ticks)
}

/// Scene elements drawn under every frame.
#[derive(Debug, Clone, Copy)]
pub struct Scene<'a> {
    pub polyline: &'a PolylineRef,
    pub obstacle: Option<&'a Obstacle>,
}

/// Renders one tick: reference in blue, selected trajectory in red,
/// obstacle in black and the agent as a triangle.
pub fn render_svg(scene: &Scene, tick: &TickRecord) -> String {
    let pts = scene.polyline.points();
    let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    let selected = tick.selected.as_ref().map_or(&[][..], |s| &s.cartesian[..]);
    for p in pts.iter().chain(selected).chain(std::iter::once(&tick.agent.position)) {
        lo = Vec2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Vec2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    let margin = 5.0;
    let (w, h) = (hi.x - lo.x + 2.0 * margin, hi.y - lo.y + 2.0 * margin);
    // Flip y so that the plot reads like a map.
    let tx = |p: Vec2| Vec2::new(p.x - lo.x + margin, hi.y - p.y + margin);
    let poly = |path: &[Vec2]| {
        path.iter().fold(String::new(), |mut acc, &p| {
            let q = tx(p);
            let _ = write!(acc, "{:.4},{:.4} ", q.x, q.y);
            acc
        })
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {w:.4} {h:.4}" width="{:.0}" height="{:.0}">"#,
        w * 10.0,
        h * 10.0
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<polyline points="{}" fill="none" stroke="blue" stroke-width="0.15"/>"#,
        poly(pts)
    );
    if let Some(o) = scene.obstacle {
        let c = tx(o.center);
        let r = o.radius;
        let _ = writeln!(
            svg,
            r#"<circle cx="{:.4}" cy="{:.4}" r="{r:.4}" fill="none" stroke="black" stroke-width="0.15"/>"#,
            c.x, c.y
        );
        let _ = writeln!(
            svg,
            r#"<path d="M {:.4} {:.4} L {:.4} {:.4} M {:.4} {:.4} L {:.4} {:.4}" stroke="black" stroke-width="0.1"/>"#,
            c.x - r,
            c.y - r,
            c.x + r,
            c.y + r,
            c.x - r,
            c.y + r,
            c.x + r,
            c.y - r
        );
    }
    if !selected.is_empty() {
        let _ = writeln!(
            svg,
            r#"<polyline points="{}" fill="none" stroke="red" stroke-width="0.15"/>"#,
            poly(selected)
        );
    }
    // Heading in screen space has its y flipped.
    let a = tx(tick.agent.position);
    let th = -tick.agent.heading;
    let corner = |ang: f64, r: f64| Vec2::new(a.x + r * (th + ang).cos(), a.y + r * (th + ang).sin());
    let (p0, p1, p2) = (corner(0.0, 1.2), corner(2.5, 0.8), corner(-2.5, 0.8));
    let _ = writeln!(
        svg,
        r#"<polygon points="{:.4},{:.4} {:.4},{:.4} {:.4},{:.4}" fill="green" stroke="black" stroke-width="0.05"/>"#,
        p0.x, p0.y, p1.x, p1.y, p2.x, p2.y
    );
    let _ = writeln!(
        svg,
        r#"<text x="1" y="3" font-size="2" font-family="monospace">tick {}</text>"#,
        tick.tick
    );
    svg.push_str("</svg>\n");
    svg
}

/// Writes `frames/tick_NNNN.svg` under `dir`, one per tick.
pub fn write_frames(scene: &Scene, trace: &PlanTrace, dir: &Path) -> std::io::Result<usize> {
    let frames = dir.join("frames");
    fs::create_dir_all(&frames)?;
    for t in &trace.ticks {
        fs::write(frames.join(format!("tick_{:04}.svg", t.tick)), render_svg(scene, t))?;
    }
    Ok(trace.ticks.len())
}
