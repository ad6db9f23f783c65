//! Joint invariants of pairs of cycles: the trace pairing and orthogonality,
//! ghost cycles, reflections and s-orthogonality.

use crate::cycle::pencil_basis;
use crate::cycle::{Constraint, CycleQuadruple, FsccContext, FsccMatrix};
use crate::error::{Error, Result};
use crate::hypercomplex::{HMatrix, HNumber, SpaceSign};
use crate::moebius::{Point, PointOrInfinity};
use crate::scalar::{one_if_zero, Scalar};

/// Output of the Heaviside step `χ(t) = 1` for `t ≥ 0`, `-1` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeavisideSign {
    Plus,
    Minus,
}

impl HeavisideSign {
    pub fn value(self) -> i8 {
        match self {
            HeavisideSign::Plus => 1,
            HeavisideSign::Minus => -1,
        }
    }

    /// The same sign read as a (non-parabolic) space sign.
    pub fn as_space_sign(self) -> SpaceSign {
        match self {
            HeavisideSign::Plus => SpaceSign::Hyperbolic,
            HeavisideSign::Minus => SpaceSign::Elliptic,
        }
    }
}

pub fn heaviside(t: SpaceSign) -> HeavisideSign {
    if t.value() >= 0 {
        HeavisideSign::Plus
    } else {
        HeavisideSign::Minus
    }
}

fn basis<S: Scalar>() -> [CycleQuadruple<S>; 4] {
    std::array::from_fn(|i| {
        let mut c = [S::zero(), S::zero(), S::zero(), S::zero()];
        c[i] = S::one();
        CycleQuadruple::from_components(c).expect("basis vector")
    })
}

/// `Re tr(C₁ · C̄₂)` with `C̄₂` the entry-wise `ῐ`-conjugate:
/// `2l₁l₂ - 2σ̆s²n₁n₂ - m₁k₂ - k₁m₂`.
///
/// The conjugate makes the elliptic-elliptic case agree with the angle
/// between tangent lines. The imaginary part vanishes identically.
pub fn pairing<S: Scalar>(c1: &CycleQuadruple<S>, c2: &CycleQuadruple<S>, ctx: &FsccContext) -> S {
    let m1 = c1.to_fscc(ctx);
    let m2 = c2.to_fscc(ctx);
    let t = m1.matrix().mul(&m2.matrix().conj()).trace();
    debug_assert!(t.im.is_zero());
    t.re
}

/// Coefficients `a` with `pairing(c, x) = a · (k, l, n, m)`.
pub fn pairing_functional<S: Scalar>(c: &CycleQuadruple<S>, ctx: &FsccContext) -> [S; 4] {
    basis::<S>().map(|e| pairing(c, &e, ctx))
}

pub fn is_orthogonal<S: Scalar>(c1: &CycleQuadruple<S>, c2: &CycleQuadruple<S>, ctx: &FsccContext) -> bool {
    let scale = one_if_zero(c1.max_component()) * one_if_zero(c2.max_component());
    pairing(c1, c2, ctx).near_zero(&scale)
}

/// `(k, l, χ(σ)·σ̆·n, m)`: σ̆-orthogonality to `c` is ordinary χ(σ)-orthogonality
/// to this cycle.
pub fn ghost_cycle<S: Scalar>(c: &CycleQuadruple<S>, sigma: SpaceSign, sigma_cycle: SpaceSign) -> CycleQuadruple<S> {
    let factor = S::int((heaviside(sigma).value() * sigma_cycle.value()) as i64);
    CycleQuadruple { k: c.k.clone(), l: c.l.clone(), n: factor * c.n.clone(), m: c.m.clone() }
}

fn triple_product<S: Scalar>(a: &HMatrix<S>, b: &HMatrix<S>, ctx: &FsccContext) -> Result<CycleQuadruple<S>> {
    let product = a.mul(b).mul(a);
    if product.is_zero() {
        return Err(Error::DegenerateReflection("the product vanishes".into()));
    }
    let m = FsccMatrix::from_matrix(product, *ctx).expect("a product C·X·C of FSCc matrices has FSCc shape");
    m.to_quadruple()
}

/// The matrix product `M·C·M`, the reflection used by s-orthogonality.
pub fn reflect_cycle<S: Scalar>(
    mirror: &CycleQuadruple<S>,
    c: &CycleQuadruple<S>,
    ctx: &FsccContext,
) -> Result<CycleQuadruple<S>> {
    triple_product(mirror.to_fscc(ctx).matrix(), c.to_fscc(ctx).matrix(), ctx)
}

/// Inversion in `mirror`: `M·C̄·M`, with `C̄` the `ῐ`-conjugate matrix.
///
/// Agrees with [`reflect_cycle`] when `c` has `n = 0` and, unlike it, is an
/// involution for every non-isotropic mirror.
pub fn invert_cycle<S: Scalar>(
    mirror: &CycleQuadruple<S>,
    c: &CycleQuadruple<S>,
    ctx: &FsccContext,
) -> Result<CycleQuadruple<S>> {
    triple_product(mirror.to_fscc(ctx).matrix(), &c.to_fscc(ctx).matrix().conj(), ctx)
}

/// The inverse of `b` in `c`: the σ̆-centre of the inverted zero-radius cycle
/// centred at `b`.
pub fn invert_point<S: Scalar>(c: &CycleQuadruple<S>, b: &Point<S>, ctx: &FsccContext) -> PointOrInfinity<S> {
    let z = CycleQuadruple::zero_radius_centred(b, ctx.sigma_cycle);
    match invert_cycle(c, &z, ctx) {
        Ok(img) => img.centre(ctx.sigma_cycle),
        Err(_) => PointOrInfinity::Infinity,
    }
}

/// `tr(M_C · M_X · M_C · M_R)` with `R` the real line.
pub fn s_orthogonality_trace<S: Scalar>(
    c: &CycleQuadruple<S>,
    x: &CycleQuadruple<S>,
    ctx: &FsccContext,
) -> HNumber<S> {
    let mc = c.to_fscc(ctx);
    let mx = x.to_fscc(ctx);
    let mr = CycleQuadruple::<S>::real_line().to_fscc(ctx);
    mc.matrix().mul(mx.matrix()).mul(mc.matrix()).mul(mr.matrix()).trace()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SOrthogonality {
    pub holds: bool,
    /// Set for `σ̆ = 0`, where the trace vanishes for every pair.
    pub degenerate: bool,
}

pub fn s_orthogonality<S: Scalar>(c: &CycleQuadruple<S>, x: &CycleQuadruple<S>, ctx: &FsccContext) -> SOrthogonality {
    if ctx.sigma_cycle.is_degenerate() {
        return SOrthogonality { holds: true, degenerate: true };
    }
    let t = s_orthogonality_trace(c, x, ctx);
    let cm = one_if_zero(c.max_component());
    let scale = cm.clone() * cm.clone() * cm * one_if_zero(x.max_component());
    SOrthogonality { holds: t.re.near_zero(&scale) && t.im.near_zero(&scale), degenerate: false }
}

/// Whether `c` is s-orthogonal *to* `x`; not symmetric.
pub fn is_s_orthogonal<S: Scalar>(c: &CycleQuadruple<S>, x: &CycleQuadruple<S>, ctx: &FsccContext) -> bool {
    s_orthogonality(c, x, ctx).holds
}

/// Coefficients `a` with `Re tr(C·X·C·R) = a · (k, l, n, m)` for every `X`.
pub fn s_orthogonality_functional<S: Scalar>(c: &CycleQuadruple<S>, ctx: &FsccContext) -> [S; 4] {
    basis::<S>().map(|e| s_orthogonality_trace(c, &e, ctx).re)
}

/// Reflection of the real line in `c`: s-orthogonality to `c` is ordinary
/// χ(σ)-orthogonality to the result.
///
/// Computed as `M'·R·M'` in the context `(σ̆, s = -σ̆·χ(σ))` and read back
/// with `s = 1`. The result has the same real roots as `c`.
pub fn s_ghost<S: Scalar>(c: &CycleQuadruple<S>, sigma: SpaceSign, sigma_cycle: SpaceSign) -> Result<CycleQuadruple<S>> {
    if sigma_cycle.is_degenerate() {
        return Err(Error::DegenerateReflection("s-ghost needs σ̆ = ±1".into()));
    }
    let s = -(sigma_cycle.value() * heaviside(sigma).value());
    let inner = FsccContext::new(sigma_cycle, s)?;
    let m = c.to_fscc(&inner);
    let r = CycleQuadruple::<S>::real_line().to_fscc(&inner);
    let product = m.matrix().mul(r.matrix()).mul(m.matrix());
    if product.is_zero() {
        return Err(Error::DegenerateReflection(format!("{c} reflects the real line to nothing")));
    }
    FsccMatrix::from_matrix(product, FsccContext::new(sigma_cycle, 1)?)?.to_quadruple()
}

/// The point `(l/k, -det(C; -σ̆)/(2nk))` that every line s-orthogonal to `c`
/// passes through. It is the χ(σ)-centre of [`s_ghost`] and coincides with
/// [`CycleQuadruple::focus`] when `c` touches the real axis (`l² = km`).
pub fn s_orthogonal_focus<S: Scalar>(c: &CycleQuadruple<S>, sigma_cycle: SpaceSign) -> Result<Point<S>> {
    if c.k.is_zero() || c.n.is_zero() {
        return Err(Error::FocusUndefined(format!("{c} needs k ≠ 0 and n ≠ 0")));
    }
    let opposite = SpaceSign::new(-(sigma_cycle.value() as i64))?;
    let det = c.det(&FsccContext::new(opposite, 1)?);
    let two = S::int(2);
    Ok(Point::new(c.l.clone() / c.k.clone(), -det / (two * c.n.clone() * c.k.clone())))
}

fn sample_pencil<S: Scalar>(b0: &[S; 4], b1: &[S; 4], count: usize) -> Vec<CycleQuadruple<S>> {
    // (1 - t², 2t) for t in (-1, 1] visits distinct points of the projective line
    (0..count)
        .filter_map(|i| {
            let t = S::ratio(2 * (i as i64 + 1) - count as i64, count as i64);
            let a = S::one() - t.clone() * t.clone();
            let b = S::int(2) * t;
            let x: [S; 4] = std::array::from_fn(|j| a.clone() * b0[j].clone() + b.clone() * b1[j].clone());
            CycleQuadruple::from_components(x).ok().map(|c| c.canonical())
        })
        .collect()
}

/// `count` cycles through `through` (in the σ-plane) that are σ̆-orthogonal to `c`.
///
/// For `σ ≠ 0` they share a second point: the inverse of `through` in the
/// ghost cycle, which for `σ̆ = σ` is [`invert_point`] in `c` itself.
pub fn orthogonal_family<S: Scalar>(
    c: &CycleQuadruple<S>,
    through: &Point<S>,
    sigma: SpaceSign,
    ctx: &FsccContext,
    count: usize,
) -> Result<Vec<CycleQuadruple<S>>> {
    let (b0, b1) = pencil_basis(&[
        Constraint::OrthogonalTo { cycle: c.clone(), ctx: *ctx },
        Constraint::PassesThrough { point: through.clone(), sigma },
    ])?;
    Ok(sample_pencil(&b0, &b1, count))
}

/// `count` cycles through `through` to which `c` is s-orthogonal.
pub fn s_orthogonal_family<S: Scalar>(
    c: &CycleQuadruple<S>,
    through: &Point<S>,
    sigma: SpaceSign,
    ctx: &FsccContext,
    count: usize,
) -> Result<Vec<CycleQuadruple<S>>> {
    if ctx.sigma_cycle.is_degenerate() {
        return Err(Error::DegenerateReflection("s-orthogonality is vacuous for σ̆ = 0".into()));
    }
    let (b0, b1) = pencil_basis(&[
        Constraint::Linear { coefficients: s_orthogonality_functional(c, ctx) },
        Constraint::PassesThrough { point: through.clone(), sigma },
    ])?;
    Ok(sample_pencil(&b0, &b1, count))
}

/// Second common point of [`orthogonal_family`]; `None` in the parabolic plane.
pub fn orthogonal_family_partner<S: Scalar>(
    c: &CycleQuadruple<S>,
    through: &Point<S>,
    sigma: SpaceSign,
    sigma_cycle: SpaceSign,
) -> Option<PointOrInfinity<S>> {
    if sigma.is_degenerate() {
        return None;
    }
    let ghost = ghost_cycle(c, sigma, sigma_cycle);
    let ctx = FsccContext::new(heaviside(sigma).as_space_sign(), 1).expect("s = 1");
    Some(invert_point(&ghost, through, &ctx))
}

/// Second common point of [`s_orthogonal_family`]; `None` when undefined.
pub fn s_orthogonal_family_partner<S: Scalar>(
    c: &CycleQuadruple<S>,
    through: &Point<S>,
    sigma: SpaceSign,
    sigma_cycle: SpaceSign,
) -> Option<PointOrInfinity<S>> {
    if sigma.is_degenerate() {
        return None;
    }
    let ghost = s_ghost(c, sigma, sigma_cycle).ok()?;
    let ctx = FsccContext::new(heaviside(sigma).as_space_sign(), 1).expect("s = 1");
    Some(invert_point(&ghost, through, &ctx))
}
