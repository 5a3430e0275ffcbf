//! Diagnostic SVG drawings. Positions come from a small spring embedder;
//! the picture is not guaranteed to be planar.

use std::fmt::Write as _;

use num_traits::Float;

use crate::diagram::{Diagram, VertexKind};

/// Force-directed vertex positions in the unit square.
#[derive(Clone, Debug, PartialEq)]
pub struct ForceLayout<F> {
    pub positions: Vec<(F, F)>,
}

pub type Layout = ForceLayout<f64>;

fn c<F: Float>(x: f64) -> F {
    F::from(x).expect("representable constant")
}

impl<F: Float> ForceLayout<F> {
    /// Deterministic: starts on a circle and runs a fixed number of rounds.
    pub fn compute(d: &Diagram, rounds: usize) -> Self {
        let n = d.num_nodes();
        let tau = c::<F>(std::f64::consts::TAU);
        let half = c::<F>(0.5);
        let mut pos: Vec<(F, F)> = (0..n)
            .map(|i| {
                let t = tau * F::from(i).unwrap() / F::from(n.max(1)).unwrap();
                (half + c::<F>(0.4) * t.cos(), half + c::<F>(0.4) * t.sin())
            })
            .collect();
        let mut edges = Vec::new();
        for x in 0..d.num_darts() as u32 {
            let (u, v) = (d.vertex_of(x), d.vertex_of(d.mate(x)));
            if x < d.mate(x) && u != v {
                edges.push((u, v));
            }
        }
        let k = c::<F>(1.0) / F::from(n.max(1)).unwrap().sqrt();
        let eps = c::<F>(1e-6);
        let mut temp = c::<F>(0.1);
        for _ in 0..rounds {
            let mut disp = vec![(F::zero(), F::zero()); n];
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let (dx, dy) = (pos[i].0 - pos[j].0, pos[i].1 - pos[j].1);
                    let dist = (dx * dx + dy * dy).sqrt().max(eps);
                    let f = k * k / dist;
                    disp[i].0 = disp[i].0 + dx / dist * f;
                    disp[i].1 = disp[i].1 + dy / dist * f;
                }
            }
            for &(u, v) in &edges {
                let (dx, dy) = (pos[u].0 - pos[v].0, pos[u].1 - pos[v].1);
                let dist = (dx * dx + dy * dy).sqrt().max(eps);
                let f = dist * dist / k;
                disp[u].0 = disp[u].0 - dx / dist * f;
                disp[u].1 = disp[u].1 - dy / dist * f;
                disp[v].0 = disp[v].0 + dx / dist * f;
                disp[v].1 = disp[v].1 + dy / dist * f;
            }
            for i in 0..n {
                let len = (disp[i].0 * disp[i].0 + disp[i].1 * disp[i].1).sqrt().max(eps);
                let step = len.min(temp);
                let lo = c::<F>(0.05);
                let hi = c::<F>(0.95);
                pos[i].0 = (pos[i].0 + disp[i].0 / len * step).max(lo).min(hi);
                pos[i].1 = (pos[i].1 + disp[i].1 / len * step).max(lo).min(hi);
            }
            temp = temp * c::<F>(0.95);
        }
        ForceLayout { positions: pos }
    }
}

const SIZE: f64 = 400.0;

/// SVG 1.1 drawing: `class="crossing"` groups with a broken under-strand,
/// `class="marker"` segments on marked vertices, `class="loop"` circles for
/// free loops.
pub fn render_svg(d: &Diagram) -> String {
    let layout = Layout::compute(d, 200);
    let p = |v: usize| (layout.positions[v].0 * SIZE, layout.positions[v].1 * SIZE);
    // point of a dart's edge a short way out of its vertex
    let stub = |x: u32, t: f64| {
        let (ax, ay) = p(d.vertex_of(x));
        let m = d.mate(x);
        let (bx, by) = p(d.vertex_of(m));
        if d.vertex_of(m) == d.vertex_of(x) {
            let a = std::f64::consts::FRAC_PI_2 * d.pos(x) as f64;
            return (ax + 40.0 * t * a.cos(), ay + 40.0 * t * a.sin());
        }
        (ax + (bx - ax) * t * 0.5, ay + (by - ay) * t * 0.5)
    };
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="2">"#);
    for x in 0..d.num_darts() as u32 {
        let m = d.mate(x);
        if x > m || d.kind(d.vertex_of(x)) == VertexKind::Loop {
            continue;
        }
        let (ax, ay) = stub(x, 0.25);
        let (bx, by) = stub(m, 0.25);
        let _ = writeln!(s, r#"<line class="edge" x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}"/>"#);
    }
    for v in 0..d.num_nodes() {
        let (vx, vy) = p(v);
        match d.kind(v) {
            VertexKind::Loop => {
                let _ = writeln!(s, r#"<circle class="loop" cx="{vx:.2}" cy="{vy:.2}" r="30"/>"#);
            }
            VertexKind::Crossing => {
                let f = d.first_dart(v);
                let _ = writeln!(s, r#"<g class="crossing">"#);
                for i in [1, 3] {
                    let (ex, ey) = stub(f + i, 0.25);
                    let _ = writeln!(s, r#"<line x1="{vx:.2}" y1="{vy:.2}" x2="{ex:.2}" y2="{ey:.2}"/>"#);
                }
                for i in [0, 2] {
                    let (gx, gy) = stub(f + i, 0.08);
                    let (ex, ey) = stub(f + i, 0.25);
                    let _ = writeln!(s, r#"<line x1="{gx:.2}" y1="{gy:.2}" x2="{ex:.2}" y2="{ey:.2}"/>"#);
                }
                let _ = writeln!(s, "</g>");
            }
            VertexKind::Marked => {
                let f = d.first_dart(v);
                let _ = writeln!(s, r#"<g class="vertex">"#);
                for i in 0..4 {
                    let (ex, ey) = stub(f + i, 0.25);
                    let _ = writeln!(s, r#"<line x1="{vx:.2}" y1="{vy:.2}" x2="{ex:.2}" y2="{ey:.2}"/>"#);
                }
                let _ = writeln!(s, "</g>");
                // the marker spans the d1-d2 and d3-d4 corners
                let (ax, ay) = stub(f, 0.1);
                let (bx, by) = stub(f + 1, 0.1);
                let (cx, cy) = stub(f + 2, 0.1);
                let (ex, ey) = stub(f + 3, 0.1);
                let (m1x, m1y) = ((ax + bx) / 2.0, (ay + by) / 2.0);
                let (m2x, m2y) = ((cx + ex) / 2.0, (cy + ey) / 2.0);
                let _ = writeln!(
                    s,
                    r#"<line class="marker" stroke="red" stroke-width="4" x1="{m1x:.2}" y1="{m1y:.2}" x2="{m2x:.2}" y2="{m2y:.2}"/>"#
                );
            }
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, "</svg>");
    s
}
