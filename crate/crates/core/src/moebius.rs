//! SL(2,R), its fractional-linear action on the three point planes, the
//! Iwasawa decomposition `g = A(α)·N(ν)·K(φ)` and K-orbits.

use std::fmt;

use crate::cycle::{CycleQuadruple, FsccContext};
use crate::error::{Error, Result};
use crate::hypercomplex::{HNumber, SpaceSign};
use crate::scalar::{parse_list, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Point<S> {
    pub u: S,
    pub v: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(u: S, v: S) -> Self {
        Point { u, v }
    }

    /// Parses `u,v`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut it = parse_list::<S>(text, 2)?.into_iter();
        Ok(Point::new(it.next().expect("two"), it.next().expect("two")))
    }

    pub fn to_hnumber(&self, sign: SpaceSign) -> HNumber<S> {
        HNumber::new(self.u.clone(), self.v.clone(), sign)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.u.to_f64_lossy(), self.v.to_f64_lossy())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Point::new(self.u.clone() - other.u.clone(), self.v.clone() - other.v.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        Point::new(self.u.clone() + other.u.clone(), self.v.clone() + other.v.clone())
    }

    pub fn scaled(&self, t: &S) -> Self {
        Point::new(self.u.clone() * t.clone(), self.v.clone() * t.clone())
    }
}

impl<S: Scalar> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// A point of the plane compactified by a single unsigned point at infinity.
#[derive(Debug, Clone, PartialEq)]
pub enum PointOrInfinity<S> {
    Finite(Point<S>),
    Infinity,
}

impl<S: Scalar> PointOrInfinity<S> {
    pub fn finite(u: S, v: S) -> Self {
        PointOrInfinity::Finite(Point::new(u, v))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointOrInfinity::Infinity)
    }

    pub fn as_finite(&self) -> Option<&Point<S>> {
        match self {
            PointOrInfinity::Finite(p) => Some(p),
            PointOrInfinity::Infinity => None,
        }
    }
}

impl<S: Scalar> From<Point<S>> for PointOrInfinity<S> {
    fn from(p: Point<S>) -> Self {
        PointOrInfinity::Finite(p)
    }
}

/// A real 2×2 matrix `(a, b; c, d)` with `ad - bc = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement<S> {
    a: S,
    b: S,
    c: S,
    d: S,
}

impl<S: Scalar> GroupElement<S> {
    /// Builds an element from any matrix of positive determinant, dividing
    /// the entries by `sqrt(det)`.
    ///
    /// In exact mode the determinant must be the square of a rational.
    pub fn new(a: S, b: S, c: S, d: S) -> Result<Self> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if det <= S::zero() {
            return Err(Error::NonPositiveDeterminant(det.to_string()));
        }
        let root = det
            .sqrt_checked()
            .ok_or_else(|| Error::NotRational(format!("sqrt of determinant {det}")))?;
        Ok(GroupElement { a: a / root.clone(), b: b / root.clone(), c: c / root.clone(), d: d / root })
    }

    pub fn identity() -> Self {
        GroupElement { a: S::one(), b: S::zero(), c: S::zero(), d: S::one() }
    }

    /// Entries `[a, b, c, d]`, row-major.
    pub fn entries(&self) -> [&S; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn a(&self) -> &S {
        &self.a
    }
    pub fn b(&self) -> &S {
        &self.b
    }
    pub fn c(&self) -> &S {
        &self.c
    }
    pub fn d(&self) -> &S {
        &self.d
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (e, f, g, h) = (&rhs.a, &rhs.b, &rhs.c, &rhs.d);
        GroupElement {
            a: a.clone() * e.clone() + b.clone() * g.clone(),
            b: a.clone() * f.clone() + b.clone() * h.clone(),
            c: c.clone() * e.clone() + d.clone() * g.clone(),
            d: c.clone() * f.clone() + d.clone() * h.clone(),
        }
    }

    pub fn invert(&self) -> Self {
        GroupElement { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    pub fn det(&self) -> S {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// Möbius action `z ↦ (az + b)/(cz + d)` in the plane with `ι² = sigma`.
    ///
    /// Points where `cz + d` is a zero divisor go to infinity; infinity goes
    /// to `a/c` on the real axis.
    pub fn apply(&self, z: &PointOrInfinity<S>, sigma: SpaceSign) -> PointOrInfinity<S> {
        match z {
            PointOrInfinity::Infinity => {
                if self.c.is_zero() {
                    PointOrInfinity::Infinity
                } else {
                    PointOrInfinity::finite(self.a.clone() / self.c.clone(), S::zero())
                }
            }
            PointOrInfinity::Finite(p) => {
                let w = p.to_hnumber(sigma);
                let num = &w.scale(&self.a) + &HNumber::real(self.b.clone(), sigma);
                let den = &w.scale(&self.c) + &HNumber::real(self.d.clone(), sigma);
                match den.inv() {
                    Ok(inv) => {
                        let q = &num * &inv;
                        PointOrInfinity::finite(q.re, q.im)
                    }
                    Err(_) => PointOrInfinity::Infinity,
                }
            }
        }
    }

    pub fn to_f64(&self) -> GroupElement<f64> {
        GroupElement {
            a: self.a.to_f64_lossy(),
            b: self.b.to_f64_lossy(),
            c: self.c.to_f64_lossy(),
            d: self.d.to_f64_lossy(),
        }
    }

    pub fn max_entry_distance(&self, other: &Self) -> S {
        let diffs = [
            (self.a.clone() - other.a.clone()).abs(),
            (self.b.clone() - other.b.clone()).abs(),
            (self.c.clone() - other.c.clone()).abs(),
            (self.d.clone() - other.d.clone()).abs(),
        ];
        diffs.into_iter().fold(S::zero(), |m, x| if x > m { x } else { m })
    }
}

impl<S: Scalar> fmt::Display for GroupElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}; {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// Free-function form of [`GroupElement::apply`].
pub fn mobius_apply<S: Scalar>(g: &GroupElement<S>, z: &PointOrInfinity<S>, sigma: SpaceSign) -> PointOrInfinity<S> {
    g.apply(z, sigma)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subgroup {
    /// Dilations `(α, 0; 0, 1/α)`.
    A,
    /// Shifts `(1, ν; 0, 1)`.
    N,
    /// Rotations, parametrised by `t = tan(φ/2)`.
    K,
}

/// One-parameter subgroup element. `K(t)` uses the rational point
/// `((1-t²)/(1+t²), 2t/(1+t²))` of the unit circle.
pub fn subgroup_element<S: Scalar>(kind: Subgroup, param: &S) -> Result<GroupElement<S>> {
    let o = S::one();
    let z = S::zero();
    Ok(match kind {
        Subgroup::A => {
            if *param <= S::zero() {
                return Err(Error::Usage(format!("A(α) needs α > 0, got {param}")));
            }
            GroupElement { a: param.clone(), b: z.clone(), c: z, d: o / param.clone() }
        }
        Subgroup::N => GroupElement { a: o.clone(), b: param.clone(), c: z, d: o },
        Subgroup::K => {
            let (cos, sin) = rational_rotation(param);
            rotation(cos, sin)
        }
    })
}

fn rational_rotation<S: Scalar>(t: &S) -> (S, S) {
    let t2 = t.clone() * t.clone();
    let den = S::one() + t2.clone();
    let cos = (S::one() - t2) / den.clone();
    let sin = (S::int(2) * t.clone()) / den;
    (cos, sin)
}

fn rotation<S: Scalar>(cos: S, sin: S) -> GroupElement<S> {
    GroupElement { a: cos.clone(), b: sin.clone(), c: -sin, d: cos }
}

/// The generator `(0, 1; -1, 0)` of the rotation subgroup, `K(t = 1)`.
pub fn k_generator<S: Scalar>() -> GroupElement<S> {
    rotation(S::zero(), S::one())
}

#[derive(Debug, Clone, PartialEq)]
pub struct IwasawaFactors<S> {
    pub alpha: S,
    pub nu: S,
    pub cos_phi: S,
    pub sin_phi: S,
}

impl<S: Scalar> IwasawaFactors<S> {
    /// Multiplies the three factors back together.
    pub fn recompose(&self) -> GroupElement<S> {
        let a = subgroup_element(Subgroup::A, &self.alpha).expect("alpha > 0");
        let n = subgroup_element(Subgroup::N, &self.nu).expect("shift");
        let k = rotation(self.cos_phi.clone(), self.sin_phi.clone());
        a.compose(&n).compose(&k)
    }
}

/// Factors `g = A(α)·N(ν)·K(φ)`.
///
/// The bottom row of `A·N·K` is `(-sin φ, cos φ)/α`, so `α = 1/sqrt(c² + d²)`;
/// then `ν = (b·cos φ - a·sin φ)/α`.
pub fn iwasawa_decompose<S: Scalar>(g: &GroupElement<S>) -> Result<IwasawaFactors<S>> {
    let norm_sq = g.c.clone() * g.c.clone() + g.d.clone() * g.d.clone();
    let norm = norm_sq.sqrt_checked().ok_or_else(|| {
        Error::NotRational(format!("Iwasawa factors of {g}: c² + d² = {norm_sq} is not a rational square"))
    })?;
    let alpha = S::one() / norm;
    let cos_phi = g.d.clone() * alpha.clone();
    let sin_phi = -(g.c.clone() * alpha.clone());
    let nu = (g.b.clone() * cos_phi.clone() - g.a.clone() * sin_phi.clone()) / alpha.clone();
    Ok(IwasawaFactors { alpha, nu, cos_phi, sin_phi })
}

/// Images of `base` under `K(t)` for each parameter `t`.
pub fn k_orbit<S: Scalar>(base: &Point<S>, sigma: SpaceSign, params: &[S]) -> Vec<PointOrInfinity<S>> {
    let z = PointOrInfinity::Finite(base.clone());
    params
        .iter()
        .map(|t| subgroup_element(Subgroup::K, t).expect("K is total").apply(&z, sigma))
        .collect()
}

/// Finds `(ν, α)` such that `A(α)·N(-ν)` moves `cycle` onto a K-orbit, i.e.
/// a quadruple with `l = 0` and `k = m`.
pub fn reduce_to_k_orbit<S: Scalar>(cycle: &CycleQuadruple<S>, sigma_cycle: SpaceSign) -> Result<(S, S)> {
    if cycle.k.is_zero() {
        return Err(Error::NotAKOrbit(format!("{cycle} is a line")));
    }
    let ctx = FsccContext::new(sigma_cycle, 1)?;
    let nu = cycle.l.clone() / cycle.k.clone();
    let shifted = cycle.similarity_transform(&subgroup_element(Subgroup::N, &-nu.clone())?, &ctx);
    let ratio = shifted.m.clone() / shifted.k.clone();
    if ratio <= S::zero() {
        return Err(Error::NotAKOrbit(format!("{cycle}: shifted m/k = {ratio} is not positive")));
    }
    // A(α) sends (k, 0, n, m) to (k/α², 0, n, α²m); equality needs α⁴ = k/m.
    let alpha = (S::one() / ratio.clone())
        .sqrt_checked()
        .and_then(|r| r.sqrt_checked())
        .ok_or_else(|| Error::NotRational(format!("fourth root of {}", S::one() / ratio)))?;
    Ok((nu, alpha))
}
