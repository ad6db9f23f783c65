//! Scalar fields used throughout the crate.
//!
//! Every algorithm is generic over [`Scalar`]. Two implementations exist:
//! [`Exact`] (arbitrary precision rationals) and `f64`. Exact mode decides
//! every predicate exactly; `f64` mode compares against a relative tolerance.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num::bigint::BigInt;
use num::traits::{FromPrimitive, Signed, ToPrimitive};
use num::{BigRational, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational scalar.
pub type Exact = BigRational;

/// Relative tolerance used by `f64` predicates.
pub const APPROX_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumericMode {
    Exact,
    Approx,
}

impl FromStr for NumericMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(NumericMode::Exact),
            "float" | "approx" => Ok(NumericMode::Approx),
            other => Err(Error::Usage(format!("unknown numeric mode `{other}`"))),
        }
    }
}

pub trait Scalar:
    Signed + PartialOrd + Clone + Debug + Display + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    const MODE: NumericMode;

    fn int(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 is representable")
    }

    fn ratio(p: i64, q: i64) -> Self {
        Self::int(p) / Self::int(q)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Zero test: exact for rationals, `|self| <= APPROX_TOL * scale` for floats.
    fn near_zero(&self, scale: &Self) -> bool;

    /// Square root, when it exists in the field.
    ///
    /// Rationals only have square roots when numerator and denominator are
    /// perfect squares.
    fn sqrt_checked(&self) -> Option<Self>;

    /// Parses `p/q`, integers and decimal literals (with optional exponent).
    fn parse_text(text: &str) -> Result<Self>;

    /// Textual form used in JSON output and CLI results.
    fn to_text(&self) -> String;
}

impl Scalar for f64 {
    const MODE: NumericMode = NumericMode::Approx;

    fn near_zero(&self, scale: &Self) -> bool {
        self.abs() <= APPROX_TOL * scale.abs().max(f64::MIN_POSITIVE)
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if *self >= 0.0 {
            Some(f64::sqrt(*self))
        } else {
            None
        }
    }

    fn parse_text(text: &str) -> Result<Self> {
        let q = parse_rational(text)?;
        Ok(q.to_f64().unwrap_or(f64::NAN))
    }

    fn to_text(&self) -> String {
        format_number(*self)
    }
}

impl Scalar for Exact {
    const MODE: NumericMode = NumericMode::Exact;

    fn near_zero(&self, _scale: &Self) -> bool {
        self.is_zero()
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = exact_isqrt(self.numer())?;
        let d = exact_isqrt(self.denom())?;
        Some(BigRational::new(n, d))
    }

    fn parse_text(text: &str) -> Result<Self> {
        parse_rational(text)
    }

    fn to_text(&self) -> String {
        self.to_string()
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Parses `p/q`, `-12`, `0.125`, `1e-3` and `2.5E+2` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not a scalar: `{text}`"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_rational(p)?;
        let q = parse_rational(q)?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{text}`")));
        }
        return Ok(p / q);
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = t[i + 1..].parse().map_err(|_| bad())?;
            (&t[..i], e)
        }
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer: BigInt = if all.is_empty() {
        BigInt::zero()
    } else {
        all.parse().map_err(|_| bad())?
    };
    let scale = exponent - frac_part.len() as i32;
    if scale.unsigned_abs() > 4096 {
        return Err(Error::Parse(format!("exponent out of range in `{text}`")));
    }
    let ten = BigInt::from(10);
    let mut q = if scale >= 0 {
        BigRational::from_integer(numer * num::pow(ten, scale as usize))
    } else {
        BigRational::new(numer, num::pow(ten, (-scale) as usize))
    };
    if negative {
        q = -q;
    }
    Ok(q)
}

/// Shortest decimal representation within 12 significant digits.
///
/// `-0` prints as `0`; non-finite values print as `NaN`/`inf` for diagnostics.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        return "0".to_string();
    }
    let plain = format!("{rounded}");
    let sci = format!("{rounded:e}");
    if sci.len() < plain.len() {
        sci
    } else {
        plain
    }
}

/// Parses exactly `count` comma-separated scalars, e.g. `1,0,-1/2,3`.
/// Surrounding parentheses and spaces are ignored.
pub fn parse_list<S: Scalar>(text: &str, count: usize) -> Result<Vec<S>> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    let values = inner.split(',').map(S::parse_text).collect::<Result<Vec<S>>>()?;
    if values.len() != count {
        return Err(Error::Parse(format!("expected {count} comma-separated values, got `{text}`")));
    }
    Ok(values)
}

pub(crate) fn max_abs<S: Scalar>(values: &[&S]) -> S {
    values
        .iter()
        .map(|v| v.abs())
        .fold(S::zero(), |acc, v| if v > acc { v } else { acc })
}

pub(crate) fn one_if_zero<S: Scalar>(s: S) -> S {
    if s.is_zero() {
        S::one()
    } else {
        s
    }
}
