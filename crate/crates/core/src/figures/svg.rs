//! A small scene model and its SVG 1.1 serialisation.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::document::CycleSetDocument;
use crate::cycle::{CycleQuadruple, FsccContext};
use crate::error::{Error, Result};
use crate::hypercomplex::SpaceSign;
use crate::scalar::{format_number as fmt, Scalar};

/// Width of every emitted picture in pixels.
const WIDTH_PX: f64 = 480.0;
/// Samples per hyperbola branch.
pub const HYPERBOLA_SAMPLES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Viewport {
    pub umin: f64,
    pub umax: f64,
    pub vmin: f64,
    pub vmax: f64,
}

impl Viewport {
    pub fn new(umin: f64, umax: f64, vmin: f64, vmax: f64) -> Result<Self> {
        if !(umin < umax && vmin < vmax) {
            return Err(Error::Usage(format!("empty viewport [{umin}, {umax}] × [{vmin}, {vmax}]")));
        }
        Ok(Viewport { umin, umax, vmin, vmax })
    }

    pub fn width(&self) -> f64 {
        self.umax - self.umin
    }

    pub fn height(&self) -> f64 {
        self.vmax - self.vmin
    }

    pub fn contains(&self, (u, v): (f64, f64)) -> bool {
        let eu = 1e-9 * self.width();
        let ev = 1e-9 * self.height();
        u >= self.umin - eu && u <= self.umax + eu && v >= self.vmin - ev && v <= self.vmax + ev
    }

    fn corners(&self) -> [(f64, f64); 4] {
        [(self.umin, self.vmin), (self.umin, self.vmax), (self.umax, self.vmin), (self.umax, self.vmax)]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Style {
    pub stroke: String,
    pub dash: bool,
}

impl Default for Style {
    fn default() -> Self {
        Style { stroke: "black".into(), dash: false }
    }
}

impl Style {
    pub fn new(stroke: &str) -> Self {
        Style { stroke: stroke.into(), dash: false }
    }

    pub fn dashed(stroke: &str) -> Self {
        Style { stroke: stroke.into(), dash: true }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Item {
    Cycle { cycle: CycleQuadruple<f64>, sigma: SpaceSign, style: Style },
    Dot { at: (f64, f64), fill: String },
    Polyline { points: Vec<(f64, f64)>, style: Style, class: Option<String> },
    Text { at: (f64, f64), text: String },
    Comment(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scene {
    pub viewport: Viewport,
    pub title: Option<String>,
    /// Draw the real axis underneath everything else.
    pub axis: bool,
    pub items: Vec<Item>,
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn comment_text(text: &str) -> String {
    let mut t = text.replace("--", "- -");
    if t.ends_with('-') {
        t.push(' ');
    }
    t
}

/// Real solutions of `a x² + b x + c = 0`.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return Vec::new();
    }
    if a.abs() <= 1e-14 * scale {
        return if b == 0.0 { Vec::new() } else { vec![-c / b] };
    }
    let disc = b * b - 4.0 * a * c;
    if disc < -1e-14 * b.abs().max((4.0 * a * c).abs()) {
        return Vec::new();
    }
    let root = disc.max(0.0).sqrt();
    // avoid cancellation between -b and the root
    let q = -0.5 * (b + b.signum() * root);
    if q == 0.0 {
        return vec![0.0];
    }
    let mut r = vec![q / a, c / q];
    r.sort_by(|x, y| x.total_cmp(y));
    r.dedup();
    r
}

/// Endpoints of `a u + b v = c` inside the viewport.
fn clip_line(a: f64, b: f64, c: f64, vp: &Viewport) -> Option<((f64, f64), (f64, f64))> {
    let mut hits: Vec<(f64, f64)> = Vec::new();
    if b != 0.0 {
        for u in [vp.umin, vp.umax] {
            hits.push((u, (c - a * u) / b));
        }
    }
    if a != 0.0 {
        for v in [vp.vmin, vp.vmax] {
            hits.push(((c - b * v) / a, v));
        }
    }
    hits.retain(|&p| vp.contains(p));
    if hits.len() < 2 {
        return None;
    }
    // the two hits farthest apart along the line direction (-b, a)
    let key = |p: &(f64, f64)| -b * p.0 + a * p.1;
    hits.sort_by(|x, y| key(x).total_cmp(&key(y)));
    Some((hits[0], hits[hits.len() - 1]))
}

struct Pen {
    unit: f64,
    out: String,
}

impl Pen {
    fn stroke(&self, style: &Style) -> String {
        let mut s = format!(
            r#" fill="none" stroke="{}" stroke-width="{}""#,
            escape(&style.stroke),
            fmt(1.5 * self.unit)
        );
        if style.dash {
            let _ = write!(s, r#" stroke-dasharray="{},{}""#, fmt(6.0 * self.unit), fmt(4.0 * self.unit));
        }
        s
    }

    fn line(&mut self, p: (f64, f64), q: (f64, f64), style: &Style) {
        let _ = writeln!(
            self.out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}"{}/>"#,
            fmt(p.0),
            fmt(-p.1),
            fmt(q.0),
            fmt(-q.1),
            self.stroke(style)
        );
    }

    fn polyline(&mut self, points: &[(f64, f64)], style: &Style, class: Option<&str>) {
        let pts: Vec<String> = points.iter().map(|p| format!("{},{}", fmt(p.0), fmt(-p.1))).collect();
        let class = class.map(|c| format!(r#" class="{}""#, escape(c))).unwrap_or_default();
        let _ = writeln!(self.out, r#"<polyline{} points="{}"{}/>"#, class, pts.join(" "), self.stroke(style));
    }

    fn dot(&mut self, at: (f64, f64), fill: &str) {
        let _ = writeln!(
            self.out,
            r#"<circle class="dot" cx="{}" cy="{}" r="{}" fill="{}"/>"#,
            fmt(at.0),
            fmt(-at.1),
            fmt(2.0 * self.unit),
            escape(fill)
        );
    }

    fn comment(&mut self, text: &str) {
        let _ = writeln!(self.out, "<!-- {} -->", comment_text(text));
    }

    fn text(&mut self, at: (f64, f64), text: &str) {
        let _ = writeln!(
            self.out,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="{}" fill="black">{}</text>"#,
            fmt(at.0),
            fmt(-at.1),
            fmt(12.0 * self.unit),
            escape(text)
        );
    }

    fn clipped_line(&mut self, a: f64, b: f64, c: f64, vp: &Viewport, style: &Style, what: &str) {
        match clip_line(a, b, c, vp) {
            Some((p, q)) => self.line(p, q, style),
            None => self.comment(&format!("{what} misses the viewport")),
        }
    }

    fn cycle(&mut self, c: &CycleQuadruple<f64>, sigma: SpaceSign, style: &Style, vp: &Viewport) -> Result<()> {
        if c.k == 0.0 && c.l == 0.0 && c.n == 0.0 {
            return Err(Error::Degenerate(format!("{c} has no points")));
        }
        let scale = c.max_component();
        let zero_radius = c.det(&FsccContext::new(sigma, 1)?).near_zero(&(scale * scale));
        let centre = c.centre(sigma).as_finite().map(|p| (p.u, p.v));
        let (k, l, n, m) = (c.k, c.l, c.n, c.m);
        match sigma {
            SpaceSign::Elliptic if k == 0.0 => self.clipped_line(-2.0 * l, -2.0 * n, -m, vp, style, "line"),
            SpaceSign::Elliptic => {
                let (u0, v0) = centre.expect("k ≠ 0");
                let r2 = (l * l + n * n - m * k) / (k * k);
                if zero_radius {
                    self.dot((u0, v0), &style.stroke);
                } else if r2 < 0.0 {
                    self.comment(&format!("{c} has imaginary radius"));
                } else {
                    let _ = writeln!(
                        self.out,
                        r#"<circle cx="{}" cy="{}" r="{}"{}/>"#,
                        fmt(u0),
                        fmt(-v0),
                        fmt(r2.sqrt()),
                        self.stroke(style)
                    );
                }
            }
            SpaceSign::Parabolic => {
                if n == 0.0 {
                    let roots = quadratic_roots(k, -2.0 * l, m);
                    if roots.is_empty() {
                        self.comment(&format!("{c} has no real points"));
                    }
                    for u in roots {
                        self.clipped_line(1.0, 0.0, u, vp, style, "vertical line");
                    }
                } else {
                    self.parabola(c, style, vp);
                }
                if zero_radius {
                    if let Some(p) = centre {
                        self.dot(p, &style.stroke);
                    }
                }
            }
            SpaceSign::Hyperbolic if k == 0.0 => self.clipped_line(-2.0 * l, -2.0 * n, -m, vp, style, "line"),
            SpaceSign::Hyperbolic => {
                let (u0, v0) = centre.expect("k ≠ 0");
                let r2 = (l * l - n * n - m * k) / (k * k);
                if zero_radius {
                    // light cone through the centre
                    self.clipped_line(1.0, -1.0, u0 - v0, vp, style, "null line");
                    self.clipped_line(1.0, 1.0, u0 + v0, vp, style, "null line");
                    self.dot((u0, v0), &style.stroke);
                } else {
                    let rho = r2.abs().sqrt();
                    let reach = vp
                        .corners()
                        .iter()
                        .map(|&(u, v)| (u - u0).hypot(v - v0))
                        .fold(0.0, f64::max);
                    let t_max = (reach / rho).asinh() + 0.1;
                    for branch in [1.0, -1.0] {
                        let pts: Vec<(f64, f64)> = (0..HYPERBOLA_SAMPLES)
                            .map(|j| {
                                let t = -t_max + 2.0 * t_max * j as f64 / (HYPERBOLA_SAMPLES - 1) as f64;
                                let (a, b) = (branch * rho * t.cosh(), rho * t.sinh());
                                if r2 > 0.0 {
                                    (u0 + a, v0 + b)
                                } else {
                                    (u0 + b, v0 + a)
                                }
                            })
                            .collect();
                        self.polyline(&pts, style, None);
                    }
                }
            }
        }
        Ok(())
    }

    /// `v = (ku² - 2lu + m)/(2n)` as quadratic Bézier pieces inside the viewport.
    fn parabola(&mut self, c: &CycleQuadruple<f64>, style: &Style, vp: &Viewport) {
        let (k, l, n, m) = (c.k, c.l, c.n, c.m);
        let f = |u: f64| (k * u * u - 2.0 * l * u + m) / (2.0 * n);
        let df = |u: f64| (k * u - l) / n;
        let mut cuts = vec![vp.umin, vp.umax];
        for level in [vp.vmin, vp.vmax] {
            cuts.extend(quadratic_roots(k, -2.0 * l, m - 2.0 * n * level).into_iter().filter(|u| *u > vp.umin && *u < vp.umax));
        }
        cuts.sort_by(|x, y| x.total_cmp(y));
        cuts.dedup();
        let mut drawn = false;
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mid = f((a + b) / 2.0);
            if mid < vp.vmin || mid > vp.vmax {
                continue;
            }
            let ctrl = ((a + b) / 2.0, f(a) + df(a) * (b - a) / 2.0);
            let _ = writeln!(
                self.out,
                r#"<path d="M {} {} Q {} {} {} {}"{}/>"#,
                fmt(a),
                fmt(-f(a)),
                fmt(ctrl.0),
                fmt(-ctrl.1),
                fmt(b),
                fmt(-f(b)),
                self.stroke(style)
            );
            drawn = true;
        }
        if !drawn {
            self.comment(&format!("{c} misses the viewport"));
        }
    }
}

impl Scene {
    pub fn new(viewport: Viewport) -> Self {
        Scene { viewport, title: None, axis: false, items: Vec::new() }
    }

    pub fn titled(mut self, title: &str) -> Self {
        self.title = Some(title.into());
        self
    }

    pub fn with_axis(mut self) -> Self {
        self.axis = true;
        self
    }

    pub fn cycle<S: Scalar>(&mut self, c: &CycleQuadruple<S>, sigma: SpaceSign, style: Style) {
        self.items.push(Item::Cycle { cycle: c.to_f64(), sigma, style });
    }

    pub fn dot(&mut self, at: (f64, f64), fill: &str) {
        self.items.push(Item::Dot { at, fill: fill.into() });
    }

    pub fn polyline(&mut self, points: Vec<(f64, f64)>, style: Style, class: Option<String>) {
        self.items.push(Item::Polyline { points, style, class });
    }

    pub fn text(&mut self, at: (f64, f64), text: &str) {
        self.items.push(Item::Text { at, text: text.into() });
    }

    pub fn comment(&mut self, text: &str) {
        self.items.push(Item::Comment(text.into()));
    }

    pub fn render(&self) -> Result<String> {
        let vp = &self.viewport;
        let unit = vp.width() / WIDTH_PX;
        let mut pen = Pen { unit, out: String::new() };
        let _ = writeln!(pen.out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            pen.out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
            fmt(WIDTH_PX),
            fmt(WIDTH_PX * vp.height() / vp.width()),
            fmt(vp.umin),
            fmt(-vp.vmax),
            fmt(vp.width()),
            fmt(vp.height())
        );
        if let Some(t) = &self.title {
            let _ = writeln!(pen.out, "<title>{}</title>", escape(t));
        }
        if self.axis && vp.vmin <= 0.0 && vp.vmax >= 0.0 {
            let _ = writeln!(
                pen.out,
                r##"<line class="axis" x1="{}" y1="0" x2="{}" y2="0" stroke="#999999" stroke-width="{}"/>"##,
                fmt(vp.umin),
                fmt(vp.umax),
                fmt(0.75 * unit)
            );
        }
        for item in &self.items {
            match item {
                Item::Cycle { cycle, sigma, style } => pen.cycle(cycle, *sigma, style, vp)?,
                Item::Dot { at, fill } => pen.dot(*at, fill),
                Item::Polyline { points, style, class } => pen.polyline(points, style, class.as_deref()),
                Item::Text { at, text } => pen.text(*at, text),
                Item::Comment(t) => pen.comment(t),
            }
        }
        pen.out.push_str("</svg>\n");
        Ok(pen.out)
    }
}

/// Draws every cycle of the document in its σ-style, plus its points as dots.
pub fn render_svg<S: Scalar>(doc: &CycleSetDocument<S>) -> Result<String> {
    let v: Vec<f64> = doc.viewport.iter().map(|x| x.to_f64_lossy()).collect();
    let mut scene = Scene::new(Viewport::new(v[0], v[1], v[2], v[3])?);
    for c in &doc.cycles {
        scene.cycle(&c.cycle, doc.sigma, c.style.clone());
    }
    for p in &doc.points {
        scene.dot(p.to_f64(), "black");
    }
    scene.render()
}
