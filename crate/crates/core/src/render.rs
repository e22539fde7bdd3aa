//! SVG drawings of reconstructed laminations in the standard disk model.

use std::fmt::Write as _;

use crate::coords::{strip_stats, StripStats, TriangleCoords};
use crate::error::{Error, Result};
use crate::oracle::{CurveDiagram, Region, Transit, TransitKind};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    pub show_arcs: bool,
    pub show_labels: bool,
    pub stroke_width: String,
    /// Cycled over components.
    pub component_colors: Vec<String>,
    pub arc_color: String,
    pub arc_width: String,
    pub puncture_color: String,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            width: 800,
            height: 400,
            show_arcs: true,
            show_labels: true,
            stroke_width: "1.5".into(),
            component_colors: ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            arc_color: "#bbbbbb".into(),
            arc_width: "0.75".into(),
            puncture_color: "#000000".into(),
        }
    }
}

const MARGIN: f64 = 20.0;

#[derive(Debug, Clone, Copy)]
struct Point {
    x: f64,
    y: f64,
}

struct Layout {
    n: usize,
    spacing: f64,
    mid: f64,
    pitch: f64,
    bulge: f64,
    coords: TriangleCoords,
    stats: Vec<StripStats>,
}

impl Layout {
    fn puncture_x(&self, p: usize) -> f64 {
        MARGIN + (p as f64 - 0.5) * self.spacing
    }

    fn arc_x(&self, i: usize) -> f64 {
        MARGIN + i as f64 * self.spacing
    }

    fn on_beta(&self, arc: usize, lane: u64) -> Point {
        let count = self.coords.beta_at(arc) as f64;
        Point {
            x: self.arc_x(arc),
            y: self.mid + (lane as f64 - (count - 1.0) / 2.0) * self.pitch,
        }
    }

    /// `depth` 0 is the crossing nearest the puncture.
    fn on_alpha(&self, puncture: usize, up: bool, depth: i64) -> Point {
        let off = (depth + 1) as f64 * self.pitch / 2.0;
        Point {
            x: self.puncture_x(puncture),
            y: if up { self.mid - off } else { self.mid + off },
        }
    }

    fn turn(&self, puncture: usize, right: bool, depth: i64) -> Point {
        let off = (depth + 1) as f64 * self.bulge;
        Point {
            x: self.puncture_x(puncture) + if right { off } else { -off },
            y: self.mid,
        }
    }

    /// Waypoints strictly inside the region, in travel order, for a transit
    /// entering through `arc` at `lane`.
    fn interior(&self, tr: &Transit, arc: usize) -> Vec<Point> {
        let lane = tr.lane as i64;
        match tr.strip {
            Region::LeftEnd | Region::RightEnd => {
                let (puncture, right, count) = match tr.strip {
                    Region::LeftEnd => (1, false, self.coords.beta_at(1)),
                    _ => (self.n, true, self.coords.beta_at(self.n - 1)),
                };
                let half = count / 2;
                let from_top = lane < half;
                let nest = lane.min(count - 1 - lane);
                let depth = half - 1 - nest;
                self.loop_points(puncture, right, depth, from_top)
            }
            Region::Strip(k) => {
                let s = &self.stats[k - 1];
                let loops = s.loops();
                let puncture = k + 1;
                let entered_left = arc == k;
                match tr.kind {
                    TransitKind::Above => {
                        vec![self.on_alpha(puncture, true, s.above + loops - 1 - lane)]
                    }
                    TransitKind::Below => {
                        let side_loops = if entered_left { s.b.max(0) } else { (-s.b).max(0) };
                        let q = lane - s.above - 2 * side_loops;
                        vec![self.on_alpha(puncture, false, loops + q)]
                    }
                    TransitKind::RightLoop | TransitKind::LeftLoop => {
                        let rel = lane - s.above;
                        let from_top = rel < loops;
                        let nest = rel.min(2 * loops - 1 - rel);
                        let depth = loops - 1 - nest;
                        let right = tr.kind == TransitKind::RightLoop;
                        self.loop_points(puncture, right, depth, from_top)
                    }
                }
            }
        }
    }

    fn loop_points(&self, puncture: usize, right: bool, depth: i64, from_top: bool) -> Vec<Point> {
        let up = self.on_alpha(puncture, true, depth);
        let down = self.on_alpha(puncture, false, depth);
        let turn = self.turn(puncture, right, depth);
        if from_top {
            vec![up, turn, down]
        } else {
            vec![down, turn, up]
        }
    }
}

fn region_index(r: Region, n: usize) -> usize {
    match r {
        Region::LeftEnd => 0,
        Region::Strip(k) => k,
        Region::RightEnd => n - 1,
    }
}

/// Closed Catmull-Rom spline through `pts`, as cubic Bezier segments.
fn closed_spline(pts: &[Point]) -> String {
    let m = pts.len();
    let at = |k: isize| pts[k.rem_euclid(m as isize) as usize];
    let mut d = String::new();
    write!(d, "M{:.2},{:.2}", pts[0].x, pts[0].y).unwrap();
    for k in 0..m as isize {
        let (p0, p1, p2, p3) = (at(k - 1), at(k), at(k + 1), at(k + 2));
        let c1 = Point {
            x: p1.x + (p2.x - p0.x) / 6.0,
            y: p1.y + (p2.y - p0.y) / 6.0,
        };
        let c2 = Point {
            x: p2.x - (p3.x - p1.x) / 6.0,
            y: p2.y - (p3.y - p1.y) / 6.0,
        };
        write!(
            d,
            " C{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}",
            c1.x, c1.y, c2.x, c2.y, p2.x, p2.y
        )
        .unwrap();
    }
    d.push_str(" Z");
    d
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders a diagram as a standalone SVG 1.1 document. Each component is one
/// `<g class="component">` group holding a single closed path.
pub fn render_svg(d: &CurveDiagram, o: &RenderOptions) -> Result<String> {
    if o.width == 0 || o.height == 0 {
        return Err(Error::InvalidRenderOptions("width and height must be positive"));
    }
    let coords = d.arc_crossings()?;
    let n = d.n.get();
    let stats = (1..=n - 2)
        .map(|k| strip_stats(&coords, k))
        .collect::<Result<Vec<_>>>()?;

    let (w, h) = (f64::from(o.width), f64::from(o.height));
    let spacing = (w - 2.0 * MARGIN) / n as f64;
    let max_crossings = coords.alpha().iter().chain(coords.beta()).copied().max().unwrap_or(0);
    let pitch = (h - 2.0 * MARGIN) / (max_crossings + 1) as f64;
    let layout = Layout {
        n,
        spacing,
        mid: h / 2.0,
        pitch,
        bulge: 0.4 * spacing / (max_crossings + 1) as f64,
        coords,
        stats,
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    )
    .unwrap();
    writeln!(
        out,
        "<rect class=\"boundary\" x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" rx=\"{:.2}\" fill=\"none\" stroke=\"{}\"/>",
        MARGIN / 2.0,
        MARGIN / 2.0,
        w - MARGIN,
        h - MARGIN,
        MARGIN,
        escape(&o.puncture_color)
    )
    .unwrap();

    let (top, bottom) = (MARGIN, h - MARGIN);
    if o.show_arcs {
        writeln!(
            out,
            "<g class=\"arcs\" stroke=\"{}\" stroke-width=\"{}\" fill=\"none\">",
            escape(&o.arc_color),
            escape(&o.arc_width)
        )
        .unwrap();
        for i in 1..n {
            let x = layout.arc_x(i);
            writeln!(
                out,
                "<line class=\"beta\" x1=\"{x:.2}\" y1=\"{top:.2}\" x2=\"{x:.2}\" y2=\"{bottom:.2}\" stroke-dasharray=\"4 3\"/>"
            )
            .unwrap();
        }
        for p in 2..n {
            let x = layout.puncture_x(p);
            let mid = layout.mid;
            writeln!(
                out,
                "<line class=\"alpha\" x1=\"{x:.2}\" y1=\"{top:.2}\" x2=\"{x:.2}\" y2=\"{mid:.2}\"/>"
            )
            .unwrap();
            writeln!(
                out,
                "<line class=\"alpha\" x1=\"{x:.2}\" y1=\"{mid:.2}\" x2=\"{x:.2}\" y2=\"{bottom:.2}\"/>"
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    for (idx, cycle) in d.components.iter().enumerate() {
        let len = cycle.len();
        let mut pts = Vec::new();
        for (k, tr) in cycle.iter().enumerate() {
            let prev = &cycle[(k + len - 1) % len];
            let arc = region_index(tr.strip, n).max(region_index(prev.strip, n));
            pts.push(layout.on_beta(arc, tr.lane));
            pts.extend(layout.interior(tr, arc));
        }
        let color = if o.component_colors.is_empty() {
            "#000000".to_string()
        } else {
            escape(&o.component_colors[idx % o.component_colors.len()])
        };
        writeln!(
            out,
            "<g class=\"component\" id=\"component-{}\"><path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/></g>",
            idx + 1,
            closed_spline(&pts),
            color,
            escape(&o.stroke_width)
        )
        .unwrap();
    }

    writeln!(out, "<g class=\"punctures\" fill=\"{}\">", escape(&o.puncture_color)).unwrap();
    for p in 1..=n {
        writeln!(
            out,
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\"/>",
            layout.puncture_x(p),
            layout.mid
        )
        .unwrap();
    }
    out.push_str("</g>\n");

    if o.show_labels {
        out.push_str("<g class=\"labels\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">\n");
        for p in 1..=n {
            writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\">{p}</text>",
                layout.puncture_x(p) - 6.0,
                layout.mid - 6.0
            )
            .unwrap();
        }
        for i in 1..n {
            writeln!(
                out,
                "<text x=\"{:.2}\" y=\"{:.2}\">&#946;{i}</text>",
                layout.arc_x(i),
                bottom + 12.0
            )
            .unwrap();
        }
        out.push_str("</g>\n");
    }

    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coords::PunctureCount;
    use crate::intersection::{FamilyMember, IntervalFamily, RelaxedCurve};
    use crate::oracle::{family_triangle, reconstruct};

    fn n(k: usize) -> PunctureCount {
        PunctureCount::new(k).unwrap()
    }

    fn groups(svg: &str) -> usize {
        let doc = roxmltree::Document::parse(svg).expect("well-formed XML");
        doc.descendants()
            .filter(|e| e.attribute("class") == Some("component"))
            .count()
    }

    #[test]
    fn single_curve_one_group() {
        let t = RelaxedCurve::new(n(4), 1, 2).unwrap().to_triangle();
        let svg = render_svg(&reconstruct(&t).unwrap(), &RenderOptions::default()).unwrap();
        assert_eq!(groups(&svg), 1);
    }

    #[test]
    fn parallel_copies_two_groups() {
        let f = IntervalFamily::new(n(4), vec![FamilyMember { i: 1, j: 2, mult: 2 }]).unwrap();
        let d = reconstruct(&family_triangle(&f).unwrap()).unwrap();
        assert_eq!(groups(&render_svg(&d, &RenderOptions::default()).unwrap()), 2);
    }

    #[test]
    fn example_one_groups_and_determinism() {
        let t = TriangleCoords::new(n(5), vec![2, 6, 3, 5, 4, 4], vec![4, 8, 8, 4]).unwrap();
        let d = reconstruct(&t).unwrap();
        let o = RenderOptions::default();
        let svg = render_svg(&d, &o).unwrap();
        assert_eq!(groups(&svg), d.component_count());
        assert_eq!(svg, render_svg(&d, &o).unwrap());
    }

    #[test]
    fn options_are_escaped_and_toggled() {
        let t = RelaxedCurve::new(n(3), 1, 2).unwrap().to_triangle();
        let d = reconstruct(&t).unwrap();
        let o = RenderOptions {
            show_arcs: false,
            show_labels: false,
            component_colors: vec!["red\"><x".into()],
            ..RenderOptions::default()
        };
        let svg = render_svg(&d, &o).unwrap();
        assert_eq!(groups(&svg), 1);
        assert!(!svg.contains("class=\"arcs\""));
        assert!(!svg.contains("class=\"labels\""));
    }

    #[test]
    fn zero_size_rejected() {
        let t = RelaxedCurve::new(n(3), 1, 2).unwrap().to_triangle();
        let d = reconstruct(&t).unwrap();
        let o = RenderOptions {
            width: 0,
            ..RenderOptions::default()
        };
        assert!(matches!(render_svg(&d, &o), Err(Error::InvalidRenderOptions(_))));
    }

    #[test]
    fn waypoints_do_not_collide_on_arcs() {
        // every crossing point on every arc is used exactly once per side
        let t = TriangleCoords::new(n(5), vec![2, 6, 3, 5, 4, 4], vec![4, 8, 8, 4]).unwrap();
        let d = reconstruct(&t).unwrap();
        let mut seen = std::collections::HashSet::new();
        for cycle in &d.components {
            for (k, tr) in cycle.iter().enumerate() {
                let prev = &cycle[(k + cycle.len() - 1) % cycle.len()];
                let arc = region_index(tr.strip, 5).max(region_index(prev.strip, 5));
                assert!(seen.insert((arc, tr.lane)), "arc {arc} lane {} twice", tr.lane);
            }
        }
        assert_eq!(seen.len() as i64, t.beta().iter().sum::<i64>());
    }
}
