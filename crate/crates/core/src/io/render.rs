//! Static SVG figures of planar instances.

use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};

use crate::geometry::{Point, Rational};
use crate::lifting::Instance;
use crate::transversal::Hyperplane;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    /// Padding around the data, in data units.
    pub margin: f64,
    pub stroke_width: f64,
    pub draw_witness: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            width: 480,
            height: 480,
            margin: 1.0,
            stroke_width: 1.5,
            draw_witness: true,
        }
    }
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn cross(o: &Point, a: &Point, b: &Point) -> Rational {
    let (o, a, b) = (o.coords(), a.coords(), b.coords());
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

/// Counter-clockwise hull vertices without collinear points (monotone chain).
pub fn convex_hull_2d(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for p in iter {
            while hull.len() >= start + 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= Rational::zero() {
                hull.pop();
            }
            hull.push(p.clone());
        }
        hull.pop();
    }
    hull
}

struct View {
    min: (f64, f64),
    scale: f64,
    height: f64,
    bounds: (f64, f64, f64, f64),
}

impl View {
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        ((x - self.min.0) * self.scale, self.height - (y - self.min.1) * self.scale)
    }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// The witness line `a x + b y = c` clipped to the box, as two endpoints.
fn clip_line(h: &Hyperplane, (x0, y0, x1, y1): (f64, f64, f64, f64)) -> Option<((f64, f64), (f64, f64))> {
    let a = to_f64(&h.normal[0]);
    let b = to_f64(&h.normal[1]);
    let c = to_f64(&h.offset);
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if b != 0.0 {
        for x in [x0, x1] {
            let y = (c - a * x) / b;
            if (y0..=y1).contains(&y) {
                hits.push((x, y));
            }
        }
    }
    if a != 0.0 {
        for y in [y0, y1] {
            let x = (c - b * y) / a;
            if (x0..=x1).contains(&x) {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).expect("finite"));
    hits.dedup();
    match (hits.first(), hits.last()) {
        (Some(&p), Some(&q)) if p != q => Some((p, q)),
        _ => None,
    }
}

/// Deterministic SVG of a planar instance, with the witness line if given.
pub fn render_svg(inst: &Instance, witness: Option<&Hyperplane>, spec: &RenderSpec) -> Result<String> {
    if inst.d != 2 {
        return Err(Error::InvalidInstance(format!("rendering needs d = 2, got d = {}", inst.d)));
    }
    let all: Vec<(f64, f64)> = inst
        .family
        .iter()
        .flat_map(|p| p.vertices.iter())
        .map(|v| (to_f64(&v[0]), to_f64(&v[1])))
        .collect();
    let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| all.iter().map(pick).fold(init, f);
    let (mut x0, mut x1) = (fold(f64::min, f64::INFINITY, |p| p.0), fold(f64::max, f64::NEG_INFINITY, |p| p.0));
    let (mut y0, mut y1) = (fold(f64::min, f64::INFINITY, |p| p.1), fold(f64::max, f64::NEG_INFINITY, |p| p.1));
    if all.is_empty() {
        (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    (x0, x1, y0, y1) = (x0 - spec.margin, x1 + spec.margin, y0 - spec.margin, y1 + spec.margin);
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let view = View {
        min: (x0, y0),
        scale: f64::from(spec.width.min(spec.height)) / span,
        height: f64::from(spec.height),
        bounds: (x0, y0, x1, y1),
    };

    let mut svg = String::new();
    let w = spec.stroke_width;
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (i, p) in inst.family.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let hull = convex_hull_2d(&p.vertices);
        let coords: Vec<String> = hull
            .iter()
            .map(|v| {
                let (x, y) = view.map(to_f64(&v[0]), to_f64(&v[1]));
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let id = &p.id;
        match hull.len() {
            1 => {
                let (x, y) = view.map(to_f64(&hull[0][0]), to_f64(&hull[0][1]));
                let _ = writeln!(
                    svg,
                    r#"<circle class="point" data-id="{id}" cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="{color}"/>"#,
                    2.0 * w
                );
            }
            2 => {
                let _ = writeln!(
                    svg,
                    r#"<polyline class="segment" data-id="{id}" points="{}" fill="none" stroke="{color}" stroke-width="{w:.3}"/>"#,
                    coords.join(" ")
                );
            }
            _ => {
                let _ = writeln!(
                    svg,
                    r#"<polygon class="polygon" data-id="{id}" points="{}" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="{w:.3}"/>"#,
                    coords.join(" ")
                );
            }
        }
    }
    if let (true, Some(h)) = (spec.draw_witness, witness) {
        if let Some((p, q)) = clip_line(h, view.bounds) {
            let (ax, ay) = view.map(p.0, p.1);
            let (bx, by) = view.map(q.0, q.1);
            let _ = writeln!(
                svg,
                r#"<line class="witness" x1="{ax:.3}" y1="{ay:.3}" x2="{bx:.3}" y2="{by:.3}" stroke="black" stroke-width="{w:.3}" stroke-dasharray="6 3"/>"#
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
