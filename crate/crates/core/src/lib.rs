//! Cycles in the elliptic, parabolic and hyperbolic planes under the
//! Möbius action of SL₂(ℝ), with exact rational or floating-point arithmetic.
//!
//! A cycle is a projective quadruple `(k, l, n, m)` whose σ-realisation is the
//! curve `k(u² - σv²) - 2lu - 2nv + m = 0`. Relations between cycles
//! (orthogonality, s-orthogonality, ghost cycles) are computed from their
//! 2×2 matrix representation in [`cycle::FsccMatrix`].

pub mod cycle;
pub mod error;
pub mod figures;
pub mod hypercomplex;
pub mod metric;
pub mod moebius;
pub mod relations;
pub mod scalar;

pub use cycle::{cycle_from_constraints, Constraint, CycleQuadruple, FsccContext, FsccMatrix, Normalisation};
pub use error::{Error, Result};
pub use hypercomplex::{HMatrix, HNumber, SpaceSign};
pub use metric::{DirectedInterval, LengthKind};
pub use moebius::{GroupElement, Point, PointOrInfinity, Subgroup};
pub use scalar::{Exact, NumericMode, Scalar};
