//! SVG drawing of a divisor of `c` in the annulus: `X` points on the outer
//! circle, `Ξ` points on the inner one, one `<g class="factor">` per
//! elementary divisor.

use std::f64::consts::PI;
use std::fmt::Write;

use atilde::{CoxeterSystem, ElementaryDivisor, Side};

#[derive(Clone, Copy, Debug)]
pub struct RenderSpec {
    pub outer_radius: f64,
    pub inner_radius: f64,
    pub stroke_width: f64,
}

impl RenderSpec {
    pub fn new(outer_radius: f64, inner_radius: f64, stroke_width: f64) -> Result<Self, String> {
        if !(inner_radius > 0.0 && inner_radius < outer_radius && stroke_width > 0.0) {
            return Err(format!(
                "need 0 < inner < outer and a positive stroke, got {inner_radius}, {outer_radius}, {stroke_width}"
            ));
        }
        Ok(Self {
            outer_radius,
            inner_radius,
            stroke_width,
        })
    }
}

const PALETTE: [&str; 8] = [
    "#1b6ca8", "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085", "#7f8c8d", "#b7950b",
];

struct Layout<'a> {
    spec: &'a RenderSpec,
    n: f64,
    centre: f64,
}

impl Layout<'_> {
    /// Residue `r` sits at angle `2πr/n`; raw integers keep winding.
    fn angle(&self, z: f64) -> f64 {
        2.0 * PI * z / self.n - PI / 2.0
    }

    fn point(&self, z: f64, radius: f64) -> (f64, f64) {
        let a = self.angle(z);
        (self.centre + radius * a.cos(), self.centre + radius * a.sin())
    }

    fn middle(&self) -> f64 {
        (self.spec.outer_radius + self.spec.inner_radius) / 2.0
    }

    fn radius(&self, side: Side) -> f64 {
        match side {
            Side::X => self.spec.outer_radius,
            Side::Xi => self.spec.inner_radius,
        }
    }
}

fn fmt_point((x, y): (f64, f64)) -> String {
    format!("{x:.2},{y:.2}")
}

fn closed_path(points: &[(f64, f64)]) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let _ = write!(d, "{}{} ", if i == 0 { "M" } else { "L" }, fmt_point(*p));
    }
    d.push('Z');
    d
}

/// A finite cycle: successive points joined by arcs bowing into the annulus.
fn finite_loop(layout: &Layout, sys: &CoxeterSystem, f: &ElementaryDivisor) -> String {
    let stops: Vec<(f64, f64)> = f
        .xs()
        .iter()
        .chain(f.xis().iter().rev())
        .map(|&z| (z as f64, layout.radius(sys.side(z))))
        .collect();
    let mut samples = Vec::new();
    for i in 0..stops.len() {
        let (z0, r0) = stops[i];
        let (z1, r1) = stops[(i + 1) % stops.len()];
        for s in 0..16 {
            let t = s as f64 / 16.0;
            let r = r0 + (r1 - r0) * t;
            let r = r + (layout.middle() - r) * (PI * t).sin() * 0.6;
            samples.push(layout.point(z0 + (z1 - z0) * t, r));
        }
    }
    format!(r#"<path d="{}"/>"#, closed_path(&samples))
}

/// The infinite pair: one loop around the annulus near each boundary.
fn infinite_loops(layout: &Layout) -> String {
    let gap = (layout.spec.outer_radius - layout.spec.inner_radius) * 0.15;
    let ring = |radius: f64| {
        let pts: Vec<(f64, f64)> = (0..96)
            .map(|i| layout.point(i as f64 * layout.n / 96.0, radius))
            .collect();
        format!(r#"<path d="{}"/>"#, closed_path(&pts))
    };
    format!(
        "{}{}",
        ring(layout.spec.outer_radius - gap),
        ring(layout.spec.inner_radius + gap)
    )
}

pub fn render_svg(sys: &CoxeterSystem, factors: &[ElementaryDivisor], spec: &RenderSpec) -> String {
    let margin = 30.0;
    let size = 2.0 * (spec.outer_radius + margin);
    let layout = Layout {
        spec,
        n: sys.n() as f64,
        centre: size / 2.0,
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(
        out,
        r##"<g class="annulus" fill="none" stroke="#444" stroke-width="1"><circle cx="{c}" cy="{c}" r="{o}"/><circle cx="{c}" cy="{c}" r="{i}"/></g>"##,
        c = layout.centre,
        o = spec.outer_radius,
        i = spec.inner_radius
    );
    for (i, f) in factors.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let body = if f.is_finite() {
            finite_loop(&layout, sys, f)
        } else {
            infinite_loops(&layout)
        };
        let _ = writeln!(
            out,
            r#"<g class="factor" data-cycles="{f}" fill="none" stroke="{colour}" stroke-width="{}">{body}</g>"#,
            spec.stroke_width
        );
    }
    let _ = writeln!(out, r#"<g class="points" font-family="sans-serif" font-size="12">"#);
    for r in 1..=sys.n() as i64 {
        let side = sys.side(r);
        let radius = layout.radius(side);
        let (x, y) = layout.point(r as f64, radius);
        let label_radius = match side {
            Side::X => radius + 16.0,
            Side::Xi => radius - 16.0,
        };
        let (lx, ly) = layout.point(r as f64, label_radius);
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="4"/><text x="{lx:.2}" y="{ly:.2}" text-anchor="middle" dominant-baseline="middle">{r}</text>"#
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
