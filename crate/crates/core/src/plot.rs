//! Static SVG rendering of verified cycles: the switching line, the two
//! half-plane arcs of each cycle in distinct strokes, and endpoint markers.

use std::fmt::Write as _;

use thiserror::Error;

use crate::report::Report;
use crate::scenario::ScenarioError;
use crate::sim::{integrate_half, HalfOrbit, IntegrateOpts};
use crate::Side;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlotError {
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error("could not retrace a verified arc: {0}")]
    Arc(String),
}

const RIGHT_STROKE: &str = "#b03a2e";
const LEFT_STROKE: &str = "#1f618d";
const AXIS_STROKE: &str = "#888888";
const MARKER_FILL: &str = "#222222";

fn smooth_arc(
    field: &crate::centers::VectorFieldPair,
    from: f64,
    side: Side,
) -> Result<HalfOrbit, PlotError> {
    let first = integrate_half(field, from, side, &IntegrateOpts::default())
        .map_err(|e| PlotError::Arc(e.to_string()))?;
    // Re-run with a step cap so the polyline is smooth regardless of how
    // few adaptive steps the arc needed.
    let cap = (first.terminal_time / 256.0).max(1e-6);
    integrate_half(
        field,
        from,
        side,
        &IntegrateOpts {
            max_step: Some(cap),
            ..Default::default()
        },
    )
    .map_err(|e| PlotError::Arc(e.to_string()))
}

fn fmt_num(v: f64) -> String {
    format!("{:.6}", v)
}

/// Renders the report's verified cycles as a standalone SVG document.
pub fn render_svg(report: &Report) -> Result<String, PlotError> {
    let mut arcs: Vec<(Side, Vec<(f64, f64)>)> = Vec::new();
    let mut markers: Vec<(f64, f64)> = Vec::new();

    let verified: Vec<&crate::report::CertificateReport> = report
        .certificates
        .iter()
        .filter(|c| c.status == "verified_crossing_cycle")
        .collect();
    if !verified.is_empty() {
        let system = report.scenario.to_system()?;
        let right_field = system.right.conjugated_field();
        let left_field = system.left.conjugated_field();
        for cert in verified {
            let cand = report
                .candidates
                .get(cert.candidate)
                .ok_or_else(|| PlotError::Arc("certificate index out of range".into()))?;
            let (y1, y2) = (cand.y1, cand.y2);
            let rightward_at_y1 = cert.crossing_at_y1.right > 0.0;
            let (right_from, left_from) = if rightward_at_y1 { (y1, y2) } else { (y2, y1) };
            let right_arc = smooth_arc(&right_field, right_from, Side::Right)?;
            let left_arc = smooth_arc(&left_field, left_from, Side::Left)?;
            arcs.push((
                Side::Right,
                right_arc.samples.iter().map(|&(_, x, y)| (x, y)).collect(),
            ));
            arcs.push((
                Side::Left,
                left_arc.samples.iter().map(|&(_, x, y)| (x, y)).collect(),
            ));
            markers.push((0.0, y1));
            markers.push((0.0, y2));
        }
    }

    // Bounding box in world coordinates.
    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for (_, points) in &arcs {
        for &(x, y) in points {
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
    }
    for &(x, y) in &markers {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    if !min_x.is_finite() {
        (min_x, max_x, min_y, max_y) = (-1.0, 1.0, -1.0, 1.0);
    }
    let pad_x = (0.1 * (max_x - min_x)).max(0.1);
    let pad_y = (0.1 * (max_y - min_y)).max(0.1);
    min_x -= pad_x;
    max_x += pad_x;
    min_y -= pad_y;
    max_y += pad_y;
    let width = max_x - min_x;
    let height = max_y - min_y;
    // SVG y grows downward: map (x, y) -> (x, -y).
    let view_y = -max_y;
    let stroke_width = (width.max(height) / 400.0).max(1e-6);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\">",
        fmt_num(min_x),
        fmt_num(view_y),
        fmt_num(width),
        fmt_num(height)
    );
    let _ = writeln!(
        svg,
        "  <line x1=\"0\" y1=\"{}\" x2=\"0\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>",
        fmt_num(-max_y),
        fmt_num(-min_y),
        AXIS_STROKE,
        fmt_num(stroke_width)
    );
    for (side, points) in &arcs {
        let stroke = match side {
            Side::Right => RIGHT_STROKE,
            Side::Left => LEFT_STROKE,
        };
        let coords: Vec<String> = points
            .iter()
            .map(|&(x, y)| format!("{},{}", fmt_num(x), fmt_num(-y)))
            .collect();
        let _ = writeln!(
            svg,
            "  <polyline fill=\"none\" stroke=\"{}\" stroke-width=\"{}\" points=\"{}\"/>",
            stroke,
            fmt_num(stroke_width * 1.5),
            coords.join(" ")
        );
    }
    for &(x, y) in &markers {
        let _ = writeln!(
            svg,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\"/>",
            fmt_num(x),
            fmt_num(-y),
            fmt_num(stroke_width * 2.5),
            MARKER_FILL
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
