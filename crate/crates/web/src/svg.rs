use std::collections::HashMap;
use std::fmt::Write as _;

use antimagic_core::graph::vertex_sums;
use antimagic_core::{CaterpillarSpec, Direction, LabeledOrientation, VertexRef};

const DY: f64 = 62.0;
/// Horizontal room per leg at a shared joint.
const LEG_GAP: f64 = 44.0;
const R: f64 = 15.0;
const MARGIN: f64 = 40.0;

fn spine_gap(spec: &CaterpillarSpec) -> f64 {
    let most = spec
        .joint_profile()
        .iter()
        .map(|j| j.leg_count)
        .max()
        .unwrap_or(1);
    (most as f64 * LEG_GAP + 10.0).max(74.0)
}

fn position(spec: &CaterpillarSpec, dx: f64, v: VertexRef) -> (f64, f64) {
    match v {
        VertexRef::Spine { index } => (MARGIN + index as f64 * dx, MARGIN),
        VertexRef::Leg { leg, index } => {
            let h = spec.legs()[leg];
            let at_joint: Vec<usize> = spec.legs_at(h).collect();
            let c = at_joint.len() as f64;
            let r = at_joint.iter().position(|&l| l == leg).unwrap() as f64;
            let x = MARGIN + h as f64 * dx + (r - (c - 1.0) / 2.0) * LEG_GAP;
            (x, MARGIN + index as f64 * DY)
        }
    }
}

/// Draws the caterpillar with arcs, labels and vertex sums. Vertices whose
/// sum is shared with another vertex are highlighted.
pub fn render(spec: &CaterpillarSpec, lo: &LabeledOrientation) -> String {
    let sums = vertex_sums(spec, lo).ok();
    let mut counts: HashMap<i64, usize> = HashMap::new();
    for &x in sums.iter().flatten() {
        *counts.entry(x).or_default() += 1;
    }
    let dx = spine_gap(spec);
    let width = 2.0 * MARGIN + spec.p() as f64 * dx;
    let height =
        2.0 * MARGIN + spec.k().max(1) as f64 * DY * (!spec.legs().is_empty()) as u8 as f64;

    let mut out = String::new();
    let _ = write!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {height}" width="{width}" height="{height}" font-family="sans-serif" font-size="11">
<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7" markerHeight="7" orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="#444"/></marker></defs>
"##
    );

    for (idx, edge) in spec.edges().enumerate() {
        let (lower, higher) = spec.endpoints(edge);
        let (tail, head) = match lo.direction(idx) {
            Direction::Forward => (lower, higher),
            Direction::Backward => (higher, lower),
        };
        let (x1, y1) = position(spec, dx, tail);
        let (x2, y2) = position(spec, dx, head);
        let len = ((x2 - x1).powi(2) + (y2 - y1).powi(2)).sqrt().max(1.0);
        let (ux, uy) = ((x2 - x1) / len, (y2 - y1) / len);
        let _ = writeln!(
            out,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#444" marker-end="url(#arrow)"/>"##,
            x1 + ux * R,
            y1 + uy * R,
            x2 - ux * (R + 2.0),
            y2 - uy * (R + 2.0)
        );
        let label = lo
            .label(idx)
            .map(|l| l.to_string())
            .unwrap_or_else(|| "?".into());
        let _ = writeln!(
            out,
            r##"<text x="{:.1}" y="{:.1}" fill="#1f5fbf" text-anchor="middle">{label}</text>"##,
            (x1 + x2) / 2.0 - uy * 9.0,
            (y1 + y2) / 2.0 + ux * 9.0 + 4.0
        );
    }

    for (i, v) in spec.vertices().enumerate() {
        let (x, y) = position(spec, dx, v);
        let sum = sums.as_ref().map(|s| s[i]);
        let clash = sum.is_some_and(|x| counts[&x] > 1);
        let fill = if clash { "#f6c1c1" } else { "#fff" };
        let text = sum.map(|x| x.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            r##"<g><title>{v}</title><circle cx="{x:.1}" cy="{y:.1}" r="{R}" fill="{fill}" stroke="#222"/><text x="{x:.1}" y="{:.1}" text-anchor="middle">{text}</text></g>"##,
            y + 4.0
        );
    }
    out.push_str("</svg>\n");
    out
}
