use std::fmt::Write;

use crate::bounds::Analysis;
use crate::rational::to_f64;

const SIZE: f64 = 480.0;
const PAD: f64 = 16.0;

fn shade(d: crate::bidegree::Bidegree, max: i64) -> String {
    let t = if max == 0 { 0.0 } else { (d.0 + d.1) as f64 / (2 * max) as f64 };
    let g = (235.0 - 150.0 * t).round() as u8;
    format!("rgb({g},{g},{})", g.saturating_add(10))
}

/// One drawing of level `i`: faces shaded by deficit, active region outlined, interior
/// maximal segments in red, islands marked.
pub fn render_level_svg(a: &Analysis, i: usize) -> String {
    let bb = a.mesh.bounding_box();
    let (x0, y0) = (to_f64(&bb.x0), to_f64(&bb.y0));
    let w = to_f64(&bb.x1) - x0;
    let h = to_f64(&bb.y1) - y0;
    let s = (SIZE - 2.0 * PAD) / w.max(h);
    let px = |x: f64| PAD + (x - x0) * s;
    let py = |y: f64| SIZE - PAD - (y - y0) * s;
    let level = &a.levels[i - 1];
    let ctx = &a.contexts[i - 1];
    let maxd = a.profile.face_deficit.iter().map(|d| d.0.max(d.1)).max().unwrap_or(0);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">
<title>level {i}: c={} h={}</title>"#,
        level.c, level.h
    );
    for (f, r) in a.mesh.faces.iter().enumerate() {
        let active = level.faces.binary_search(&f).is_ok();
        let _ = writeln!(
            out,
            r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{}" fill-opacity="{}" stroke="gray" stroke-width="0.5"/>"#,
            px(to_f64(&r.x0)),
            py(to_f64(&r.y1)),
            (to_f64(&r.x1) - to_f64(&r.x0)) * s,
            (to_f64(&r.y1) - to_f64(&r.y0)) * s,
            shade(a.profile.face_deficit[f], maxd),
            if active { "1" } else { "0.25" }
        );
    }
    for &e in &level.edges {
        let ed = &a.mesh.edges[e];
        let [u, v] = ed.ends;
        let (p, q) = (&a.mesh.vertices[u].point, &a.mesh.vertices[v].point);
        let width = if ed.boundary { 3.0 } else { 1.0 };
        let dash = if ed.boundary { "" } else { r#" stroke-dasharray="3,2""# };
        let _ = writeln!(
            out,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="black" stroke-width="{width}"{dash}/>"#,
            px(to_f64(&p.x)),
            py(to_f64(&p.y)),
            px(to_f64(&q.x)),
            py(to_f64(&q.y))
        );
    }
    for &k in &ctx.interior {
        let sg = &ctx.segments[k];
        let (l, lo, hi) = (to_f64(&sg.line), to_f64(&sg.lo), to_f64(&sg.hi));
        let (a1, b1, a2, b2) = match sg.orientation {
            crate::mesh::Orientation::Horizontal => (px(lo), py(l), px(hi), py(l)),
            crate::mesh::Orientation::Vertical => (px(l), py(lo), px(l), py(hi)),
        };
        let _ = writeln!(
            out,
            r#"<line x1="{a1:.3}" y1="{b1:.3}" x2="{a2:.3}" y2="{b2:.3}" stroke="crimson" stroke-width="2.5"><title>{}</title></line>"#,
            sg.label()
        );
    }
    for f in islands(a, i) {
        let r = &a.mesh.faces[f];
        let cx = px((to_f64(&r.x0) + to_f64(&r.x1)) / 2.0);
        let cy = py((to_f64(&r.y0) + to_f64(&r.y1)) / 2.0);
        let _ = writeln!(out, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="5" fill="gray"/>"#);
    }
    out.push_str("</svg>\n");
    out
}

/// One representative face per active component that avoids the domain boundary.
fn islands(a: &Analysis, i: usize) -> Vec<usize> {
    let level = &a.levels[i - 1];
    let n = level.faces.len();
    let idx = |f: usize| level.faces.binary_search(&f).ok();
    let mut comp = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for start in 0..n {
        if comp[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        comp[start] = start;
        let mut touches = false;
        while let Some(k) = stack.pop() {
            let f = level.faces[k];
            for &(e, _) in &a.mesh.face_edges[f] {
                let ed = &a.mesh.edges[e];
                touches |= ed.ends.iter().any(|&v| a.mesh.vertices[v].on_boundary());
                for &g in &ed.faces {
                    if let Some(j) = idx(g) {
                        if comp[j] == usize::MAX {
                            comp[j] = start;
                            stack.push(j);
                        }
                    }
                }
            }
        }
        if !touches {
            reps.push(level.faces[start]);
        }
    }
    reps
}
