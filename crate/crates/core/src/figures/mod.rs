//! SVG rendering of cycle sets and the figure recipes.

pub mod document;
pub mod recipes;
pub mod svg;

pub use document::{CycleSetDocument, StyledCycle};
pub use recipes::{
    k_orbit_bases, k_orbit_cycle, render_figure, run_figure, zero_radius_points, FigureName, FigureRecipe, Panel,
};
pub use svg::{render_svg, Scene, Style, Viewport};
