//! The figure recipes: each produces one SVG per panel.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::svg::{Scene, Style, Viewport};
use crate::cycle::{cycle_from_constraints, pencil_basis, Constraint, CycleQuadruple, FsccContext};
use crate::error::{Error, Result};
use crate::hypercomplex::SpaceSign;
use crate::moebius::{k_orbit, subgroup_element, Point, PointOrInfinity, Subgroup};
use crate::relations::{
    ghost_cycle, orthogonal_family, orthogonal_family_partner, s_ghost, s_orthogonal_family,
    s_orthogonal_family_partner, s_orthogonal_focus,
};
use crate::scalar::{Exact, Scalar};
use num::{One, Zero};

const RED: &str = "#d62728";
const GREEN: &str = "#2ca02c";
const BLUE: &str = "#1f77b4";
const GREY: &str = "#8c8c8c";
const ORANGE: &str = "#ff7f0e";

const SIGNS: [SpaceSign; 3] = [SpaceSign::Elliptic, SpaceSign::Parabolic, SpaceSign::Hyperbolic];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FigureName {
    KOrbits,
    EphCycle,
    ZeroRadius,
    Ortho1,
    Ortho2,
    Distances,
}

impl FigureName {
    pub const ALL: [FigureName; 6] = [
        FigureName::KOrbits,
        FigureName::EphCycle,
        FigureName::ZeroRadius,
        FigureName::Ortho1,
        FigureName::Ortho2,
        FigureName::Distances,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FigureName::KOrbits => "fig-k-orbits",
            FigureName::EphCycle => "fig-eph-cycle",
            FigureName::ZeroRadius => "fig-zero-radius",
            FigureName::Ortho1 => "fig-ortho1",
            FigureName::Ortho2 => "fig-ortho2",
            FigureName::Distances => "fig-distances",
        }
    }

    /// Parameter names accepted by the recipe, with their defaults.
    pub fn parameters(self) -> &'static [(&'static str, &'static str)] {
        match self {
            FigureName::KOrbits | FigureName::ZeroRadius | FigureName::Distances => &[],
            FigureName::EphCycle => &[("cycle", "1,1,1/2,-1")],
            FigureName::Ortho1 | FigureName::Ortho2 => &[("cycle", "1,0,1,0"), ("b", "1,1"), ("count", "8")],
        }
    }
}

impl fmt::Display for FigureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FigureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = FigureName::ALL.iter().map(|n| n.as_str()).collect();
            Error::Usage(format!("unknown figure `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FigureRecipe {
    pub name: FigureName,
    params: BTreeMap<String, String>,
}

impl FigureRecipe {
    pub fn new(name: FigureName) -> Self {
        FigureRecipe { name, params: BTreeMap::new() }
    }

    /// Builds a recipe from a figure name and `key=value` overrides.
    pub fn parse(name: &str, overrides: &[String]) -> Result<Self> {
        let mut recipe = FigureRecipe::new(name.parse()?);
        for item in overrides {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("parameter `{item}` is not of the form key=value")))?;
            recipe = recipe.with(key, value)?;
        }
        Ok(recipe)
    }

    pub fn with(mut self, key: &str, value: &str) -> Result<Self> {
        if !self.name.parameters().iter().any(|(k, _)| *k == key) {
            return Err(Error::Usage(format!("{} has no parameter `{key}`", self.name)));
        }
        self.params.insert(key.into(), value.into());
        Ok(self)
    }

    fn raw(&self, key: &str) -> &str {
        self.params.get(key).map(String::as_str).unwrap_or_else(|| {
            self.name.parameters().iter().find(|(k, _)| *k == key).map(|(_, v)| *v).expect("declared parameter")
        })
    }

    fn cycle(&self) -> Result<CycleQuadruple<Exact>> {
        CycleQuadruple::parse_text(self.raw("cycle"))
    }

    fn point(&self, key: &str) -> Result<Point<Exact>> {
        Point::parse_text(self.raw(key))
    }

    fn count(&self) -> Result<usize> {
        let raw = self.raw("count");
        match raw.parse::<usize>() {
            Ok(n) if (1..=64).contains(&n) => Ok(n),
            _ => Err(Error::Usage(format!("count must be an integer in 1..=64, got `{raw}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Panel {
    pub file_name: String,
    pub svg: String,
}

fn pt<S: Scalar>(p: &Point<S>) -> (f64, f64) {
    p.to_f64()
}

fn sigma_name(s: SpaceSign) -> &'static str {
    match s {
        SpaceSign::Elliptic => "elliptic",
        SpaceSign::Parabolic => "parabolic",
        SpaceSign::Hyperbolic => "hyperbolic",
    }
}

fn ctx(sigma_cycle: SpaceSign) -> FsccContext {
    FsccContext::new(sigma_cycle, 1).expect("s = 1")
}

/// `(1, 0, (1 - σv₀²)/(2v₀), 1)`: the K-orbit through `(0, v₀)` in the σ-plane.
pub fn k_orbit_cycle(v0: &Exact, sigma: SpaceSign) -> CycleQuadruple<Exact> {
    let sig: Exact = sigma.scalar();
    let n = (Exact::one() - sig * v0.clone() * v0.clone()) / (Exact::int(2) * v0.clone());
    CycleQuadruple { k: Exact::one(), l: Exact::zero(), n, m: Exact::one() }
}

/// Base points `(0, v₀)` of the orbits drawn by `fig-k-orbits`.
pub fn k_orbit_bases() -> [Exact; 3] {
    [Exact::ratio(1, 2), Exact::one(), Exact::int(2)]
}

/// Points whose zero-radius cycles `fig-zero-radius` draws.
pub fn zero_radius_points() -> [Point<Exact>; 3] {
    [
        Point::new(Exact::ratio(-3, 2), Exact::ratio(1, 2)),
        Point::new(Exact::zero(), Exact::one()),
        Point::new(Exact::ratio(3, 2), Exact::ratio(-1, 2)),
    ]
}

const K_ORBIT_SAMPLES: usize = 512;

fn k_orbits() -> Result<Vec<Panel>> {
    let vp = Viewport::new(-3.0, 3.0, -3.0, 3.0)?;
    // parameter t = tan(φ/2) on a uniform φ-grid that avoids φ = π
    let params: Vec<f64> = (0..K_ORBIT_SAMPLES)
        .map(|j| (0.5 * (-PI + 2.0 * PI * (j as f64 + 0.5) / K_ORBIT_SAMPLES as f64)).tan())
        .collect();
    let colours = [BLUE, GREEN, RED];
    let mut panels = Vec::new();
    for sigma in SIGNS {
        let mut scene = Scene::new(vp).titled(&format!("K-orbits, {} point space", sigma_name(sigma))).with_axis();
        for j in -11i32..=11 {
            let t = (PI * j as f64 / 24.0).tan();
            let g = subgroup_element(Subgroup::K, &t)?;
            let axis = CycleQuadruple::new(0.0, 1.0, 0.0, 0.0)?;
            scene.cycle(&axis.similarity_transform(&g, &ctx(sigma)), sigma, Style::new("#c7c7c7"));
        }
        for (i, v0) in k_orbit_bases().iter().enumerate() {
            let base = Point::new(0.0, v0.to_f64_lossy());
            let mut pieces: Vec<Vec<(f64, f64)>> = vec![Vec::new()];
            for z in k_orbit(&base, sigma, &params) {
                let keep = match &z {
                    PointOrInfinity::Finite(p) => p.u.abs() <= 4.0 && p.v.abs() <= 4.0,
                    PointOrInfinity::Infinity => false,
                };
                let current = pieces.last_mut().expect("non-empty");
                if keep {
                    let p = pt(z.as_finite().expect("finite"));
                    if let Some(q) = current.last() {
                        if (p.0 - q.0).hypot(p.1 - q.1) > 2.0 {
                            pieces.push(vec![p]);
                            continue;
                        }
                    }
                    current.push(p);
                } else if !current.is_empty() {
                    pieces.push(Vec::new());
                }
            }
            for (j, piece) in pieces.into_iter().filter(|p| p.len() > 1).enumerate() {
                scene.polyline(piece, Style::new(colours[i]), Some(format!("orbit-{i} piece-{j}")));
            }
            scene.dot(pt(&base), colours[i]);
        }
        panels.push(Panel { file_name: format!("fig-k-orbits-{}.svg", sigma.letter()), svg: scene.render()? });
    }
    Ok(panels)
}

fn bounding_viewport(points: &[(f64, f64)], margin: f64) -> Result<Viewport> {
    let (mut umin, mut umax, mut vmin, mut vmax) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for &(u, v) in points {
        umin = umin.min(u);
        umax = umax.max(u);
        vmin = vmin.min(v);
        vmax = vmax.max(v);
    }
    Viewport::new(umin - margin, umax + margin, vmin - margin, vmax + margin)
}

fn eph_cycle(recipe: &FigureRecipe) -> Result<Vec<Panel>> {
    let c = recipe.cycle()?;
    let colours = [RED, GREEN, BLUE];
    let mut features: Vec<(f64, f64)> = Vec::new();
    let mut marks: Vec<((f64, f64), &str, String)> = Vec::new();
    for (sc, colour) in SIGNS.into_iter().zip(colours) {
        if let PointOrInfinity::Finite(p) = c.centre(sc) {
            features.push(pt(&p));
            marks.push((pt(&p), colour, format!("c{}", sc.letter())));
        }
        if let Ok(f) = c.focus(sc) {
            features.push(pt(&f));
            marks.push((pt(&f), colour, format!("f{}", sc.letter())));
        }
    }
    if let Ok(roots) = c.roots() {
        features.extend(roots.iter().map(|r| (r.to_f64_lossy(), 0.0)));
    }
    if features.is_empty() {
        features.push((0.0, 0.0));
    }
    let vp = bounding_viewport(&features, 2.0)?;
    let mut scene = Scene::new(vp).titled(&format!("the cycle {c} in three point spaces")).with_axis();
    for (sigma, colour) in SIGNS.into_iter().zip(colours) {
        scene.cycle(&c, sigma, Style::new(colour));
    }
    for (at, colour, label) in marks {
        scene.dot(at, colour);
        scene.text((at.0 + 0.08 * vp.width() / 6.0, at.1), &label);
    }
    Ok(vec![Panel { file_name: "fig-eph-cycle.svg".into(), svg: scene.render()? }])
}

fn zero_radius() -> Result<Vec<Panel>> {
    let vp = Viewport::new(-3.0, 3.0, -3.0, 3.0)?;
    let colours = [RED, GREEN, BLUE];
    let mut panels = Vec::new();
    for sc in SIGNS {
        for sigma in SIGNS {
            let mut scene = Scene::new(vp)
                .titled(&format!("{}-zero-radius cycles, {} point space", sc.letter(), sigma_name(sigma)))
                .with_axis();
            for (z, colour) in zero_radius_points().iter().zip(colours) {
                let c = CycleQuadruple::zero_radius(z, &ctx(sc));
                scene.comment(&format!("zero-radius cycle {c} of {z}"));
                scene.cycle(&c, sigma, Style::new(colour));
                scene.dot(pt(z), "black");
            }
            panels.push(Panel {
                file_name: format!("fig-zero-radius-{}-{}.svg", sc.letter(), sigma.letter()),
                svg: scene.render()?,
            });
        }
    }
    Ok(panels)
}

fn ortho(recipe: &FigureRecipe, second_kind: bool) -> Result<Vec<Panel>> {
    let c = recipe.cycle()?;
    let b = recipe.point("b")?;
    let count = recipe.count()?;
    let sigma = SpaceSign::Elliptic;
    let vp = Viewport::new(-4.0, 4.0, -3.0, 5.0)?;
    let stem = if second_kind { "fig-ortho2" } else { "fig-ortho1" };
    let mut panels = Vec::new();
    for sc in SIGNS {
        let title = if second_kind {
            format!("cycles to which {c} is s-orthogonal, σ̆ = {}", sc.value())
        } else {
            format!("cycles orthogonal to {c}, σ̆ = {}", sc.value())
        };
        let mut scene = Scene::new(vp).titled(&title).with_axis();
        if second_kind && sc.is_degenerate() {
            scene.comment("degenerate panel: for σ̆ = 0 the s-orthogonality trace vanishes for every pair");
            scene.cycle(&c, sigma, Style::new(RED));
            scene.text((vp.umin + 0.2, vp.vmax - 0.5), "s-orthogonality is vacuous for σ̆ = 0");
        } else {
            let (family, ghost, partner) = if second_kind {
                (
                    s_orthogonal_family(&c, &b, sigma, &ctx(sc), count)?,
                    s_ghost(&c, sigma, sc)?,
                    s_orthogonal_family_partner(&c, &b, sigma, sc),
                )
            } else {
                (
                    orthogonal_family(&c, &b, sigma, &ctx(sc), count)?,
                    ghost_cycle(&c, sigma, sc),
                    orthogonal_family_partner(&c, &b, sigma, sc),
                )
            };
            for x in &family {
                scene.cycle(x, sigma, Style::new(GREEN));
            }
            scene.cycle(&c, sigma, Style::new(RED));
            scene.cycle(&ghost, sigma, Style::dashed(ORANGE));
            if second_kind {
                if let Ok(f) = s_orthogonal_focus(&c, sc) {
                    scene.dot(pt(&f), ORANGE);
                }
            }
            scene.dot(pt(&b), "black");
            match partner {
                Some(PointOrInfinity::Finite(d)) => {
                    scene.comment(&format!("second common point d = {d}"));
                    scene.dot(pt(&d), BLUE);
                }
                Some(PointOrInfinity::Infinity) => scene.comment("second common point at infinity"),
                None => scene.comment("no second common point"),
            }
        }
        panels.push(Panel { file_name: format!("{stem}-{}.svg", sc.letter()), svg: scene.render()? });
    }
    Ok(panels)
}

fn distances() -> Result<Vec<Panel>> {
    let mut panels = Vec::new();

    // a parabola of the parabolic plane and its real roots
    let parabola = CycleQuadruple::<Exact>::from_ints(1, 1, 1, 0)?;
    let mut scene = Scene::new(Viewport::new(-2.0, 4.0, -2.0, 3.0)?)
        .titled("parabolic distance between the real roots of (1, 1, 1, 0)")
        .with_axis();
    scene.cycle(&parabola, SpaceSign::Parabolic, Style::new(BLUE));
    for r in parabola.roots()? {
        scene.dot((r.to_f64_lossy(), 0.0), RED);
    }
    panels.push(Panel { file_name: "fig-distances-a.svg".into(), svg: scene.render()? });

    // circles through A and B; the one of least diameter is centred at the midpoint
    let sigma = SpaceSign::Elliptic;
    let a = Point::new(Exact::int(-1), Exact::one());
    let b = Point::new(Exact::one(), Exact::int(2));
    let (b0, b1) = pencil_basis(&[
        Constraint::PassesThrough { point: a.clone(), sigma },
        Constraint::PassesThrough { point: b.clone(), sigma },
    ])?;
    let mut scene = Scene::new(Viewport::new(-5.0, 5.0, -3.0, 6.0)?)
        .titled("circles through A and B; the smallest has AB as diameter")
        .with_axis();
    for j in -4i64..=4 {
        let t = Exact::ratio(j, 2);
        let x: [Exact; 4] = std::array::from_fn(|i| b0[i].clone() + t.clone() * b1[i].clone());
        if let Ok(c) = CycleQuadruple::from_components(x) {
            scene.cycle(&c, sigma, Style::new(GREY));
        }
    }
    let mid = a.add(&b).scaled(&Exact::ratio(1, 2));
    let smallest = cycle_from_constraints(&[
        Constraint::HasCentre { centre: mid, kind: sigma },
        Constraint::PassesThrough { point: a.clone(), sigma },
        Constraint::NormalisedK,
    ])?;
    for c in &smallest {
        scene.cycle(c, sigma, Style::new(RED));
    }
    scene.dot(pt(&a), "black");
    scene.dot(pt(&b), "black");
    panels.push(Panel { file_name: "fig-distances-b.svg".into(), svg: scene.render()? });

    // both focal cycles with e-focus A through B
    let focus = Point::new(0.0, 1.0);
    let through = Point::new(0.0, -1.0);
    let focal = cycle_from_constraints(&[
        Constraint::HasFocus { focus: focus.clone(), sigma_cycle: sigma },
        Constraint::PassesThrough { point: through.clone(), sigma },
        Constraint::NormalisedK,
    ])?;
    let mut scene = Scene::new(Viewport::new(-5.0, 5.0, -6.0, 4.0)?)
        .titled("the two circles with e-focus A passing through B")
        .with_axis();
    for (c, colour) in focal.iter().zip([RED, BLUE]) {
        scene.comment(&format!("focal cycle {c}"));
        scene.cycle(c, sigma, Style::new(colour));
    }
    scene.dot(pt(&focus), ORANGE);
    scene.dot(pt(&through), "black");
    panels.push(Panel { file_name: "fig-distances-c.svg".into(), svg: scene.render()? });
    Ok(panels)
}

/// Renders every panel of the recipe in memory.
pub fn render_figure(recipe: &FigureRecipe) -> Result<Vec<Panel>> {
    match recipe.name {
        FigureName::KOrbits => k_orbits(),
        FigureName::EphCycle => eph_cycle(recipe),
        FigureName::ZeroRadius => zero_radius(),
        FigureName::Ortho1 => ortho(recipe, false),
        FigureName::Ortho2 => ortho(recipe, true),
        FigureName::Distances => distances(),
    }
}

/// Renders the recipe and writes one file per panel into `out_dir`.
pub fn run_figure(recipe: &FigureRecipe, out_dir: &Path) -> Result<Vec<PathBuf>> {
    let panels = render_figure(recipe)?;
    std::fs::create_dir_all(out_dir)?;
    panels
        .into_iter()
        .map(|p| {
            let path = out_dir.join(&p.file_name);
            std::fs::write(&path, p.svg)?;
            Ok(path)
        })
        .collect()
}
