//! Distances and lengths of directed intervals, perpendicularity and the
//! conformality check.

use std::cmp::Ordering;

use crate::cycle::{cycle_from_constraints, pencil_basis, Constraint, CycleQuadruple, FsccContext};
use crate::error::{Error, Result};
use crate::hypercomplex::SpaceSign;
use crate::moebius::{GroupElement, Point, PointOrInfinity};
use crate::scalar::Scalar;

/// An ordered pair of points; `A→B` and `B→A` are different intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedInterval<S> {
    pub a: Point<S>,
    pub b: Point<S>,
}

impl<S: Scalar> DirectedInterval<S> {
    pub fn new(a: Point<S>, b: Point<S>) -> Self {
        DirectedInterval { a, b }
    }

    pub fn reversed(&self) -> Self {
        DirectedInterval { a: self.b.clone(), b: self.a.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthKind {
    Distance(SpaceSign),
    /// Radius of the σ̆-centred cycle at `A` through `B` in the σ-plane.
    FromCentre(SpaceSign, SpaceSign),
    /// Radius of the cycle with σ̆-focus `A` through `B` in the σ-plane.
    FromFocus(SpaceSign, SpaceSign),
}

/// `u² - σv²` for `(u, v) = B - A`; negative values are kept.
pub fn distance_sq<S: Scalar>(a: &Point<S>, b: &Point<S>, sigma: SpaceSign) -> S {
    b.sub(a).to_hnumber(sigma).modsq()
}

/// Squared radii of every cycle selected by `kind`, ascending.
pub fn length<S: Scalar>(interval: &DirectedInterval<S>, kind: LengthKind) -> Result<Vec<S>> {
    let DirectedInterval { a, b } = interval;
    let (sigma, sigma_cycle, anchor) = match kind {
        LengthKind::Distance(sigma) => return Ok(vec![distance_sq(a, b, sigma)]),
        LengthKind::FromCentre(sigma, sc) => {
            if sc.is_degenerate() && !a.v.is_zero() {
                return Err(Error::Inconsistent(format!("p-centres lie on the real axis, {a} does not")));
            }
            if sc.is_degenerate() {
                // a p-centre fixes only l; the radius is still determined when B is real
                if !b.v.is_zero() {
                    return Err(Error::UnderDetermined);
                }
                let du = b.u.clone() - a.u.clone();
                return Ok(vec![du.clone() * du]);
            }
            (sigma, sc, Constraint::HasCentre { centre: a.clone(), kind: sc })
        }
        LengthKind::FromFocus(sigma, sc) => {
            if a.v.is_zero() {
                return Err(Error::DegenerateFocalPoint);
            }
            (sigma, sc, Constraint::HasFocus { focus: a.clone(), sigma_cycle: sc })
        }
    };
    let cycles = cycle_from_constraints(&[
        anchor,
        Constraint::PassesThrough { point: b.clone(), sigma },
        Constraint::NormalisedK,
    ])?;
    let ctx = FsccContext::new(sigma_cycle, 1)?;
    let mut out = cycles.iter().map(|c| c.radius_sq(&ctx)).collect::<Result<Vec<S>>>()?;
    out.sort_by(|x, y| x.partial_cmp(y).unwrap_or(Ordering::Equal));
    out.dedup();
    Ok(out)
}

fn first_branch(interval: &DirectedInterval<f64>, kind: LengthKind) -> Result<f64> {
    length(interval, kind)?.first().copied().ok_or_else(|| Error::Inconsistent("no branch".into()))
}

/// Whether `ε ↦ length(A → B + ε·CD)` (first branch) has a local extremum at
/// `ε = 0`.
pub fn is_perpendicular(ab: &DirectedInterval<f64>, cd: (f64, f64), kind: LengthKind) -> Result<bool> {
    is_perpendicular_on_branch(ab, cd, kind, 0)
}

/// [`is_perpendicular`] for the `index`-th branch in ascending order.
///
/// The branch must exist at `ε = 0` and `ε = ±h` and keep its index.
pub fn is_perpendicular_on_branch(
    ab: &DirectedInterval<f64>,
    cd: (f64, f64),
    kind: LengthKind,
    index: usize,
) -> Result<bool> {
    const H: f64 = 1e-5;
    let norm_cd = cd.0.hypot(cd.1);
    if norm_cd == 0.0 {
        return Err(Error::Usage("direction CD must be non-zero".into()));
    }
    let lengths = |eps: f64| {
        let b = Point::new(ab.b.u + eps * cd.0, ab.b.v + eps * cd.1);
        length(&DirectedInterval::new(ab.a.clone(), b), kind)
    };
    let f0 = lengths(0.0)?;
    let f0 = *f0.get(index).ok_or_else(|| Error::Inconsistent(format!("no branch {index}")))?;
    let mut around = [0.0; 4];
    for (slot, eps) in around.iter_mut().zip([2.0 * H, H, -H, -2.0 * H]) {
        *slot = match lengths(eps) {
            Ok(v) if v.len() > index => v[index],
            _ => return Err(Error::BranchInstability),
        };
    }
    let [fpp, fp, fm, fmm] = around;
    let (du, dv) = ab.b.sub(&ab.a).to_f64();
    let scale = f0.abs().sqrt().max(du.hypot(dv)).max(f64::MIN_POSITIVE) * norm_cd;
    // five-point stencil: the truncation error is O(h⁴)
    let slope = (8.0 * (fp - fm) - (fpp - fmm)) / (12.0 * H);
    Ok(slope.abs() < 1e-9 * scale && (fp - f0) * (fm - f0) >= 0.0)
}

fn image(g: &GroupElement<f64>, p: &Point<f64>, sigma: SpaceSign) -> Result<Point<f64>> {
    match g.apply(&PointOrInfinity::Finite(p.clone()), sigma) {
        PointOrInfinity::Finite(q) => Ok(q),
        PointOrInfinity::Infinity => Err(Error::Degenerate(format!("{p} is sent to infinity"))),
    }
}

fn point_sigma(kind: LengthKind) -> SpaceSign {
    match kind {
        LengthKind::Distance(s) | LengthKind::FromCentre(s, _) | LengthKind::FromFocus(s, _) => s,
    }
}

/// `length(g·y → g·(y + t·y'))/ length(y → y + t·y')` for each direction `y'`,
/// square-rooted when the quotient is non-negative.
pub fn conformality_ratios(
    g: &GroupElement<f64>,
    y: &Point<f64>,
    dirs: &[(f64, f64)],
    t: f64,
    kind: LengthKind,
) -> Result<Vec<f64>> {
    let sigma = point_sigma(kind);
    let gy = image(g, y, sigma)?;
    dirs.iter()
        .map(|&(du, dv)| {
            let moved = Point::new(y.u + t * du, y.v + t * dv);
            let num = first_branch(&DirectedInterval::new(gy.clone(), image(g, &moved, sigma)?), kind)?;
            let den = first_branch(&DirectedInterval::new(y.clone(), moved), kind)?;
            if den == 0.0 {
                return Err(Error::Degenerate(format!("zero length along ({du}, {dv})")));
            }
            let q = num / den;
            Ok(if q >= 0.0 { q.sqrt() } else { q })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Supported,
    Experimental,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    /// Squared extremal diameter; `NaN` when the family has no extremum.
    pub value: f64,
    pub regime: Regime,
}

/// Extremises the diameter over the cycles with `k = 1` through `A` and `B`
/// by golden-section search and returns its square.
pub fn variational_distance_oracle(
    a: &Point<f64>,
    b: &Point<f64>,
    sigma: SpaceSign,
    sigma_cycle: SpaceSign,
) -> Result<OracleValue> {
    let regime = if sigma == SpaceSign::Elliptic && sigma_cycle == SpaceSign::Elliptic {
        Regime::Supported
    } else {
        Regime::Experimental
    };
    if a == b {
        return Ok(OracleValue { value: 0.0, regime });
    }
    let (b0, b1) = pencil_basis(&[
        Constraint::PassesThrough { point: a.clone(), sigma },
        Constraint::PassesThrough { point: b.clone(), sigma },
    ])?;
    // split the pencil into a k = 1 member and the member with k = 0
    let (base, line) = if b0[0].abs() >= b1[0].abs() { (b0, b1) } else { (b1, b0) };
    let r = line[0] / base[0];
    let line: [f64; 4] = std::array::from_fn(|i| line[i] - r * base[i]);
    let base: [f64; 4] = std::array::from_fn(|i| base[i] / base[0]);
    let ctx = FsccContext::new(sigma_cycle, 1)?;
    let diameter_sq = |t: f64| {
        let c = CycleQuadruple { k: 1.0, l: base[1] + t * line[1], n: base[2] + t * line[2], m: base[3] + t * line[3] };
        4.0 * c.radius_sq(&ctx).expect("k = 1")
    };

    let span = 1e3 * (1.0 + a.u.abs() + a.v.abs() + b.u.abs() + b.v.abs());
    let curvature = diameter_sq(span) + diameter_sq(-span) - 2.0 * diameter_sq(0.0);
    if curvature.abs() <= 1e-12 * span * span {
        return Ok(OracleValue { value: f64::NAN, regime: Regime::Experimental });
    }
    let sign = curvature.signum();
    let f = |t: f64| sign * diameter_sq(t);
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (-span, span);
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = f(x2);
        }
    }
    Ok(OracleValue { value: diameter_sq((lo + hi) / 2.0), regime })
}
