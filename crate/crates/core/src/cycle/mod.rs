//! Cycles as points `(k, l, n, m)` of the projective cycle space, their FSCc
//! matrices and the invariants read off those matrices.
//!
//! A quadruple stands for the locus `k(u² - σv²) - 2lu - 2nv + m = 0` in the
//! plane with `ι² = σ`. The same quadruple is a circle, a parabola or an
//! equilateral hyperbola depending on the plane it is drawn in; the
//! cycle-space sign `σ̆` and the parameter `s` only enter through the FSCc
//! matrix
//!
//! ```text
//! ( l + ῐ·s·n    -m        )
//! ( k            -l + ῐ·s·n )     ῐ² = σ̆
//! ```

mod solver;

use std::fmt;

pub use solver::{cycle_from_constraints, Constraint};
pub(crate) use solver::pencil_basis;

use crate::error::{Error, Result};
use crate::hypercomplex::{HMatrix, HNumber, SpaceSign};
use crate::moebius::{GroupElement, Point, PointOrInfinity};
use crate::scalar::{max_abs, one_if_zero, parse_list, Scalar};

#[derive(Debug, Clone)]
pub struct CycleQuadruple<S> {
    pub k: S,
    pub l: S,
    pub n: S,
    pub m: S,
}

/// Projective equality: `(k, l, n, m) == (λk, λl, λn, λm)` for `λ ≠ 0`.
impl<S: Scalar> PartialEq for CycleQuadruple<S> {
    fn eq(&self, other: &Self) -> bool {
        let a = self.components();
        let b = other.components();
        (0..4).all(|i| (0..4).all(|j| a[i].clone() * b[j].clone() == a[j].clone() * b[i].clone()))
    }
}

impl<S: Scalar> fmt::Display for CycleQuadruple<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.k, self.l, self.n, self.m)
    }
}

/// Cycle-space sign `σ̆` together with the FSCc parameter `s ∈ {1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FsccContext {
    pub sigma_cycle: SpaceSign,
    s: i8,
}

impl FsccContext {
    pub fn new(sigma_cycle: SpaceSign, s: i8) -> Result<Self> {
        if s != 1 && s != -1 {
            return Err(Error::Usage(format!("s must be 1 or -1, got {s}")));
        }
        Ok(FsccContext { sigma_cycle, s })
    }

    pub fn s(&self) -> i8 {
        self.s
    }

    /// All six combinations of `σ̆` and `s`.
    pub fn all() -> Vec<FsccContext> {
        SpaceSign::ALL
            .into_iter()
            .flat_map(|sc| [1, -1].map(|s| FsccContext { sigma_cycle: sc, s }))
            .collect()
    }
}

/// A matrix of FSCc shape: real off-diagonal entries and
/// `a22 = -Re(a11) + ῐ·Im(a11)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FsccMatrix<S> {
    matrix: HMatrix<S>,
    ctx: FsccContext,
}

impl<S: Scalar> FsccMatrix<S> {
    pub fn from_matrix(matrix: HMatrix<S>, ctx: FsccContext) -> Result<Self> {
        if matrix.sign() != ctx.sigma_cycle {
            return Err(Error::SignMismatch(matrix.sign().value(), ctx.sigma_cycle.value()));
        }
        let [[a11, a12], [a21, a22]] = &matrix.entries;
        if !a12.is_real() || !a21.is_real() {
            return Err(Error::Shape("off-diagonal entries must be real".into()));
        }
        if a22.re != -a11.re.clone() || a22.im != a11.im {
            return Err(Error::Shape(format!("diagonal {a11} / {a22} is not of the form (z, -z̄)")));
        }
        Ok(FsccMatrix { matrix, ctx })
    }

    pub fn matrix(&self) -> &HMatrix<S> {
        &self.matrix
    }

    pub fn context(&self) -> FsccContext {
        self.ctx
    }

    pub fn to_quadruple(&self) -> Result<CycleQuadruple<S>> {
        let [[a11, a12], [a21, _]] = &self.matrix.entries;
        let s = S::int(self.ctx.s as i64);
        CycleQuadruple::new(a21.re.clone(), a11.re.clone(), a11.im.clone() / s, -a12.re.clone())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalisation {
    /// Divide by `k`.
    KOne,
    /// Scale so that the FSCc determinant equals 1.
    DetOne,
}

impl<S: Scalar> CycleQuadruple<S> {
    pub fn new(k: S, l: S, n: S, m: S) -> Result<Self> {
        if k.is_zero() && l.is_zero() && n.is_zero() && m.is_zero() {
            return Err(Error::Usage("quadruple (0, 0, 0, 0) is not a point of P³".into()));
        }
        Ok(CycleQuadruple { k, l, n, m })
    }

    /// Parses `k,l,n,m`.
    pub fn parse_text(text: &str) -> Result<Self> {
        let v = parse_list::<S>(text, 4)?;
        Self::from_components(v.try_into().expect("four values")).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_ints(k: i64, l: i64, n: i64, m: i64) -> Result<Self> {
        Self::new(S::int(k), S::int(l), S::int(n), S::int(m))
    }

    /// The real line `v = 0`, i.e. `(0, 0, 1, 0)`.
    pub fn real_line() -> Self {
        CycleQuadruple { k: S::zero(), l: S::zero(), n: S::one(), m: S::zero() }
    }

    pub fn components(&self) -> [&S; 4] {
        [&self.k, &self.l, &self.n, &self.m]
    }

    pub fn from_components(c: [S; 4]) -> Result<Self> {
        let [k, l, n, m] = c;
        Self::new(k, l, n, m)
    }

    pub fn max_component(&self) -> S {
        max_abs(&self.components())
    }

    /// `(0, 0, 0, m)`: no finite equation survives.
    pub fn is_degenerate(&self) -> bool {
        self.k.is_zero() && self.l.is_zero() && self.n.is_zero()
    }

    pub fn scale(&self, lambda: &S) -> Self {
        CycleQuadruple {
            k: self.k.clone() * lambda.clone(),
            l: self.l.clone() * lambda.clone(),
            n: self.n.clone() * lambda.clone(),
            m: self.m.clone() * lambda.clone(),
        }
    }

    pub fn to_f64(&self) -> CycleQuadruple<f64> {
        CycleQuadruple {
            k: self.k.to_f64_lossy(),
            l: self.l.to_f64_lossy(),
            n: self.n.to_f64_lossy(),
            m: self.m.to_f64_lossy(),
        }
    }

    /// Left-hand side `k(u² - σv²) - 2lu - 2nv + m`.
    pub fn eval(&self, z: &Point<S>, sigma: SpaceSign) -> S {
        let two = S::int(2);
        let (u, v) = (&z.u, &z.v);
        let sig: S = sigma.scalar();
        self.k.clone() * (u.clone() * u.clone() - sig * v.clone() * v.clone())
            - two.clone() * self.l.clone() * u.clone()
            - two * self.n.clone() * v.clone()
            + self.m.clone()
    }

    /// Incidence in the σ-plane; infinity lies on every line (`k = 0`).
    pub fn passes_through(&self, z: &PointOrInfinity<S>, sigma: SpaceSign) -> bool {
        match z {
            PointOrInfinity::Infinity => self.k.is_zero(),
            PointOrInfinity::Finite(p) => {
                let r = one_if_zero(max_abs(&[&S::one(), &p.u, &p.v]));
                let scale = one_if_zero(self.max_component()) * r.clone() * r;
                self.eval(p, sigma).near_zero(&scale)
            }
        }
    }

    pub fn to_fscc(&self, ctx: &FsccContext) -> FsccMatrix<S> {
        let sc = ctx.sigma_cycle;
        let sn = self.n.clone() * S::int(ctx.s as i64);
        let matrix = HMatrix::new(
            HNumber::new(self.l.clone(), sn.clone(), sc),
            HNumber::real(-self.m.clone(), sc),
            HNumber::real(self.k.clone(), sc),
            HNumber::new(-self.l.clone(), sn, sc),
        );
        FsccMatrix { matrix, ctx: *ctx }
    }

    pub fn from_fscc(m: &FsccMatrix<S>) -> Result<Self> {
        m.to_quadruple()
    }

    /// Image under the Möbius map `g`, computed as `g·C·g⁻¹`.
    pub fn similarity_transform(&self, g: &GroupElement<S>, ctx: &FsccContext) -> Self {
        let sc = ctx.sigma_cycle;
        let [a, b, c, d] = g.entries();
        let gm = HMatrix::from_real(a.clone(), b.clone(), c.clone(), d.clone(), sc);
        let gi = g.invert();
        let [a, b, c, d] = gi.entries();
        let gim = HMatrix::from_real(a.clone(), b.clone(), c.clone(), d.clone(), sc);
        let product = gm.mul(&self.to_fscc(ctx).matrix).mul(&gim);
        FsccMatrix::from_matrix(product, *ctx)
            .and_then(|m| m.to_quadruple())
            .expect("similarity by a real matrix preserves FSCc shape")
    }

    /// Whether the FSCc matrix commutes with the real matrix `g`.
    pub fn commutes_with(&self, g: &GroupElement<S>, ctx: &FsccContext) -> bool {
        let [a, b, c, d] = g.entries();
        let gm = HMatrix::from_real(a.clone(), b.clone(), c.clone(), d.clone(), ctx.sigma_cycle);
        let m = self.to_fscc(ctx).matrix;
        gm.mul(&m) == m.mul(&gm)
    }

    /// `(l/k, -κ·n/k)`, or infinity for lines.
    pub fn centre(&self, kind: SpaceSign) -> PointOrInfinity<S> {
        if self.k.is_zero() {
            return PointOrInfinity::Infinity;
        }
        let kappa: S = kind.scalar();
        PointOrInfinity::finite(self.l.clone() / self.k.clone(), -(kappa * self.n.clone()) / self.k.clone())
    }

    /// Determinant of the FSCc matrix, `σ̆s²n² - l² + mk`.
    pub fn det(&self, ctx: &FsccContext) -> S {
        let d = self.to_fscc(ctx).matrix.det();
        debug_assert!(d.is_real());
        d.re
    }

    /// The `ῐ`-coefficient `2sn` of the trace; the real part vanishes by shape.
    pub fn trace_part(&self, ctx: &FsccContext) -> S {
        let t = self.to_fscc(ctx).matrix.trace();
        debug_assert!(t.re.is_zero());
        t.im
    }

    /// `-det/k²`: the squared radius for circles; for `σ̆ = 0` a quarter of
    /// the squared distance between the real roots.
    pub fn radius_sq(&self, ctx: &FsccContext) -> Result<S> {
        if self.k.is_zero() {
            return Err(Error::LineHasNoRadius);
        }
        Ok(-self.det(ctx) / (self.k.clone() * self.k.clone()))
    }

    /// `(l/k, det/(2nk))` with the determinant taken at `s = 1`.
    ///
    /// For a parabola `v = (ku² - 2lu + m)/(2n)` the p-, h- and e-foci are the
    /// vertex, the focus and the foot of the directrix respectively.
    pub fn focus(&self, sigma_cycle: SpaceSign) -> Result<Point<S>> {
        if self.k.is_zero() || self.n.is_zero() {
            return Err(Error::FocusUndefined(format!("{self} needs k ≠ 0 and n ≠ 0")));
        }
        let ctx = FsccContext { sigma_cycle, s: 1 };
        let two = S::int(2);
        Ok(Point::new(
            self.l.clone() / self.k.clone(),
            self.det(&ctx) / (two * self.n.clone() * self.k.clone()),
        ))
    }

    /// `(1, x, y, x² - σ̆y²)`: the matrix `(z, -z z̄; 1, -z̄)` with `z = x + ῐy`.
    /// Its σ̆-centre is `(x, -σ̆y)`.
    pub fn zero_radius(z: &Point<S>, ctx: &FsccContext) -> Self {
        let sig: S = ctx.sigma_cycle.scalar();
        let m = z.u.clone() * z.u.clone() - sig * z.v.clone() * z.v.clone();
        CycleQuadruple { k: S::one(), l: z.u.clone(), n: z.v.clone(), m }
    }

    /// The zero-radius cycle whose σ̆-centre is `centre`.
    ///
    /// For `σ̆ = 0` every p-centre lies on the real axis; the `v` coordinate
    /// is then carried in `n` unchanged.
    pub fn zero_radius_centred(centre: &Point<S>, sigma_cycle: SpaceSign) -> Self {
        let sig: S = sigma_cycle.scalar();
        let n = match sigma_cycle {
            SpaceSign::Parabolic => centre.v.clone(),
            _ => -(sig.clone() * centre.v.clone()),
        };
        let m = centre.u.clone() * centre.u.clone() - sig * centre.v.clone() * centre.v.clone();
        CycleQuadruple { k: S::one(), l: centre.u.clone(), n, m }
    }

    /// Real solutions of `ku² - 2lu + m = 0`, ascending, without repetition.
    pub fn roots(&self) -> Result<Vec<S>> {
        let two = S::int(2);
        if self.k.is_zero() {
            if self.l.is_zero() {
                return Err(if self.m.is_zero() { Error::EverywhereZero } else { Error::NoRealAxisIntersection });
            }
            return Ok(vec![self.m.clone() / (two * self.l.clone())]);
        }
        let disc = self.l.clone() * self.l.clone() - self.k.clone() * self.m.clone();
        let scale = one_if_zero(max_abs(&[&(self.l.clone() * self.l.clone()), &(self.k.clone() * self.m.clone())]));
        if disc.near_zero(&scale) {
            return Ok(vec![self.l.clone() / self.k.clone()]);
        }
        if disc < S::zero() {
            return Ok(Vec::new());
        }
        let root = disc
            .sqrt_checked()
            .ok_or_else(|| Error::NotRational(format!("roots of {self}: sqrt({disc})")))?;
        let r1 = (self.l.clone() - root.clone()) / self.k.clone();
        let r2 = (self.l.clone() + root) / self.k.clone();
        Ok(if r1 < r2 { vec![r1, r2] } else { vec![r2, r1] })
    }

    /// Projective equality; tolerant in `f64` mode.
    pub fn projective_eq(&self, other: &Self) -> bool {
        let a = self.components();
        let b = other.components();
        let scale = one_if_zero(self.max_component()) * one_if_zero(other.max_component());
        (0..4).all(|i| {
            (0..4).all(|j| (a[i].clone() * b[j].clone() - a[j].clone() * b[i].clone()).near_zero(&scale))
        })
    }

    pub fn normalize(&self, mode: Normalisation, ctx: &FsccContext) -> Result<Self> {
        match mode {
            Normalisation::KOne => {
                if self.k.is_zero() {
                    return Err(Error::Usage(format!("cannot normalise {self} to k = 1: k = 0")));
                }
                Ok(self.scale(&(S::one() / self.k.clone())))
            }
            Normalisation::DetOne => {
                let det = self.det(ctx);
                if det <= S::zero() {
                    return Err(Error::Usage(format!("cannot normalise {self} to det = 1: det = {det}")));
                }
                let root = det.sqrt_checked().ok_or_else(|| Error::NotRational(format!("sqrt({det})")))?;
                Ok(self.scale(&(S::one() / root)))
            }
        }
    }

    /// Divides by the first non-zero component among `k`, `l`, `n`, `m`.
    pub fn canonical(&self) -> Self {
        let lead = self
            .components()
            .into_iter()
            .find(|c| !c.is_zero())
            .cloned()
            .expect("quadruple is non-zero");
        self.scale(&(S::one() / lead))
    }

    /// Divides by the largest component magnitude.
    pub fn unit_max(&self) -> Self {
        self.scale(&(S::one() / one_if_zero(self.max_component())))
    }
}

pub fn cycle_eval<S: Scalar>(c: &CycleQuadruple<S>, z: &Point<S>, sigma: SpaceSign) -> S {
    c.eval(z, sigma)
}

pub fn similarity_transform<S: Scalar>(c: &CycleQuadruple<S>, g: &GroupElement<S>, ctx: &FsccContext) -> CycleQuadruple<S> {
    c.similarity_transform(g, ctx)
}
