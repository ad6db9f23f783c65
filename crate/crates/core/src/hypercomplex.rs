//! Complex, dual and double numbers `x + ιy` with `ι² ∈ {-1, 0, 1}`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The value of `ι²`: elliptic (-1), parabolic (0) or hyperbolic (+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceSign {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl SpaceSign {
    pub const ALL: [SpaceSign; 3] = [SpaceSign::Elliptic, SpaceSign::Parabolic, SpaceSign::Hyperbolic];

    pub fn new(value: i64) -> Result<Self> {
        match value {
            -1 => Ok(SpaceSign::Elliptic),
            0 => Ok(SpaceSign::Parabolic),
            1 => Ok(SpaceSign::Hyperbolic),
            v => Err(Error::Usage(format!("space sign must be -1, 0 or 1, got {v}"))),
        }
    }

    pub fn value(self) -> i8 {
        match self {
            SpaceSign::Elliptic => -1,
            SpaceSign::Parabolic => 0,
            SpaceSign::Hyperbolic => 1,
        }
    }

    pub fn scalar<S: Scalar>(self) -> S {
        S::int(self.value() as i64)
    }

    pub fn letter(self) -> char {
        match self {
            SpaceSign::Elliptic => 'e',
            SpaceSign::Parabolic => 'p',
            SpaceSign::Hyperbolic => 'h',
        }
    }

    pub fn is_degenerate(self) -> bool {
        self == SpaceSign::Parabolic
    }
}

impl fmt::Display for SpaceSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for SpaceSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "e" | "elliptic" | "-1" => Ok(SpaceSign::Elliptic),
            "p" | "parabolic" | "0" => Ok(SpaceSign::Parabolic),
            "h" | "hyperbolic" | "1" | "+1" => Ok(SpaceSign::Hyperbolic),
            other => Err(Error::Usage(format!("expected e|p|h, got `{other}`"))),
        }
    }
}

/// A two-component number `re + ι·im` with `ι² = sign`.
#[derive(Debug, Clone, PartialEq)]
pub struct HNumber<S> {
    pub re: S,
    pub im: S,
    pub sign: SpaceSign,
}

impl<S: Scalar> HNumber<S> {
    pub fn new(re: S, im: S, sign: SpaceSign) -> Self {
        HNumber { re, im, sign }
    }

    pub fn real(re: S, sign: SpaceSign) -> Self {
        HNumber { re, im: S::zero(), sign }
    }

    pub fn zero(sign: SpaceSign) -> Self {
        Self::real(S::zero(), sign)
    }

    pub fn one(sign: SpaceSign) -> Self {
        Self::real(S::one(), sign)
    }

    /// The imaginary unit `ι` itself.
    pub fn unit(sign: SpaceSign) -> Self {
        HNumber { re: S::zero(), im: S::one(), sign }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    fn check_sign(&self, other: &Self) -> Result<()> {
        if self.sign == other.sign {
            Ok(())
        } else {
            Err(Error::SignMismatch(self.sign.value(), other.sign.value()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_sign(other)?;
        Ok(HNumber::new(
            self.re.clone() + other.re.clone(),
            self.im.clone() + other.im.clone(),
            self.sign,
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_sign(other)?;
        Ok(HNumber::new(
            self.re.clone() - other.re.clone(),
            self.im.clone() - other.im.clone(),
            self.sign,
        ))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_sign(other)?;
        let sigma: S = self.sign.scalar();
        let re = self.re.clone() * other.re.clone() + sigma * self.im.clone() * other.im.clone();
        let im = self.re.clone() * other.im.clone() + self.im.clone() * other.re.clone();
        Ok(HNumber::new(re, im, self.sign))
    }

    pub fn scale(&self, factor: &S) -> Self {
        HNumber::new(self.re.clone() * factor.clone(), self.im.clone() * factor.clone(), self.sign)
    }

    pub fn conj(&self) -> Self {
        HNumber::new(self.re.clone(), -self.im.clone(), self.sign)
    }

    /// `re² - σ·im²`, which may be zero or negative outside the elliptic case.
    pub fn modsq(&self) -> S {
        let sigma: S = self.sign.scalar();
        self.re.clone() * self.re.clone() - sigma * self.im.clone() * self.im.clone()
    }

    pub fn conj_modsq(&self) -> (Self, S) {
        (self.conj(), self.modsq())
    }

    pub fn inv(&self) -> Result<Self> {
        let m = self.modsq();
        if m.is_zero() {
            return Err(Error::ZeroDivisor(self.to_string()));
        }
        let c = self.conj();
        Ok(HNumber::new(c.re / m.clone(), c.im / m, self.sign))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }
}

impl<S: Scalar> fmt::Display for HNumber<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})ι [ι²={}]", self.re, self.im, self.sign.value())
    }
}

// Operator sugar for internal code where signs agree by construction. A sign
// mismatch here is a bug and panics; public APIs take the checked variants.
impl<S: Scalar> Add for &HNumber<S> {
    type Output = HNumber<S>;
    fn add(self, rhs: Self) -> HNumber<S> {
        self.checked_add(rhs).expect("hypercomplex add")
    }
}

impl<S: Scalar> Sub for &HNumber<S> {
    type Output = HNumber<S>;
    fn sub(self, rhs: Self) -> HNumber<S> {
        self.checked_sub(rhs).expect("hypercomplex sub")
    }
}

impl<S: Scalar> Mul for &HNumber<S> {
    type Output = HNumber<S>;
    fn mul(self, rhs: Self) -> HNumber<S> {
        self.checked_mul(rhs).expect("hypercomplex mul")
    }
}

impl<S: Scalar> Neg for &HNumber<S> {
    type Output = HNumber<S>;
    fn neg(self) -> HNumber<S> {
        HNumber::new(-self.re.clone(), -self.im.clone(), self.sign)
    }
}

/// A 2×2 matrix with hypercomplex entries, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HMatrix<S> {
    pub entries: [[HNumber<S>; 2]; 2],
}

impl<S: Scalar> HMatrix<S> {
    pub fn new(a: HNumber<S>, b: HNumber<S>, c: HNumber<S>, d: HNumber<S>) -> Self {
        HMatrix { entries: [[a, b], [c, d]] }
    }

    pub fn from_real(a: S, b: S, c: S, d: S, sign: SpaceSign) -> Self {
        HMatrix::new(
            HNumber::real(a, sign),
            HNumber::real(b, sign),
            HNumber::real(c, sign),
            HNumber::real(d, sign),
        )
    }

    pub fn sign(&self) -> SpaceSign {
        self.entries[0][0].sign
    }

    pub fn get(&self, row: usize, col: usize) -> &HNumber<S> {
        &self.entries[row][col]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let e = &self.entries;
        let o = &other.entries;
        let cell = |i: usize, j: usize| &(&e[i][0] * &o[0][j]) + &(&e[i][1] * &o[1][j]);
        HMatrix::new(cell(0, 0), cell(0, 1), cell(1, 0), cell(1, 1))
    }

    pub fn trace(&self) -> HNumber<S> {
        &self.entries[0][0] + &self.entries[1][1]
    }

    pub fn det(&self) -> HNumber<S> {
        let e = &self.entries;
        &(&e[0][0] * &e[1][1]) - &(&e[0][1] * &e[1][0])
    }

    /// Entry-wise conjugation `ι ↦ -ι`.
    pub fn conj(&self) -> Self {
        let e = &self.entries;
        HMatrix::new(e[0][0].conj(), e[0][1].conj(), e[1][0].conj(), e[1][1].conj())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(HNumber::is_zero)
    }
}
