//! Exact scalars: arbitrary-precision rationals, square roots of rationals
//! and an extended rational with a `+inf` point.
//!
//! No floating point is used anywhere in a decision. Decimal strings are
//! produced by exact integer rounding and are for display only.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator. Displays as `p/q`, or `p` when the denominator is one.
pub type Rational = BigRational;

/// Integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The rational `n/d`. Panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    Rational::from_str(s.trim()).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

/// Either a rational or the nonnegative square root of a rational.
#[derive(Clone, Debug)]
pub enum ExactValue {
    Rat(Rational),
    Sqrt(Rational),
}

impl ExactValue {
    /// `sqrt(radicand)`; rejects negative radicands.
    pub fn sqrt(radicand: Rational) -> Result<Self> {
        if radicand.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        Ok(ExactValue::Sqrt(radicand))
    }

    /// The rational value when this is one (including perfect-square radicands).
    pub fn as_rational(&self) -> Option<Rational> {
        match self {
            ExactValue::Rat(r) => Some(r.clone()),
            ExactValue::Sqrt(r) => rational_sqrt(r),
        }
    }

    /// Multiply by a nonnegative rational factor.
    pub fn scale(&self, factor: &Rational) -> Self {
        debug_assert!(!factor.is_negative());
        match self {
            ExactValue::Rat(r) => ExactValue::Rat(r * factor),
            ExactValue::Sqrt(r) => ExactValue::Sqrt(r * factor * factor),
        }
    }

    /// Decimal rendering rounded half away from zero to `digits` places.
    pub fn approx(&self, digits: usize) -> String {
        match self {
            ExactValue::Rat(r) => approx_rational(r, digits),
            ExactValue::Sqrt(r) => approx_sqrt(r, digits),
        }
    }
}

impl From<Rational> for ExactValue {
    fn from(r: Rational) -> Self {
        ExactValue::Rat(r)
    }
}

impl fmt::Display for ExactValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactValue::Rat(r) => write!(f, "{r}"),
            ExactValue::Sqrt(r) => write!(f, "sqrt({r})"),
        }
    }
}

impl FromStr for ExactValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.strip_prefix("sqrt(").and_then(|rest| rest.strip_suffix(')')) {
            Some(inner) => ExactValue::sqrt(parse_rational(inner)?),
            None => Ok(ExactValue::Rat(parse_rational(s)?)),
        }
    }
}

/// Exact order between two values.
///
/// A rational is compared against a square root by sign first and then by
/// comparing its square with the radicand.
pub fn cmp(x: &ExactValue, y: &ExactValue) -> Ordering {
    match (x, y) {
        (ExactValue::Rat(p), ExactValue::Rat(q)) => p.cmp(q),
        (ExactValue::Sqrt(p), ExactValue::Sqrt(q)) => p.cmp(q),
        (ExactValue::Rat(p), ExactValue::Sqrt(q)) => cmp_rat_sqrt(p, q),
        (ExactValue::Sqrt(p), ExactValue::Rat(q)) => cmp_rat_sqrt(q, p).reverse(),
    }
}

fn cmp_rat_sqrt(p: &Rational, radicand: &Rational) -> Ordering {
    if p.is_negative() {
        // sqrt is never negative
        return Ordering::Less;
    }
    (p * p).cmp(radicand)
}

impl PartialEq for ExactValue {
    fn eq(&self, other: &Self) -> bool {
        cmp(self, other) == Ordering::Equal
    }
}

impl Eq for ExactValue {}

impl PartialOrd for ExactValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactValue {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp(self, other)
    }
}

/// A rational or `+inf`. The derived order puts `PlusInfinity` above every
/// finite value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedRational {
    Finite(Rational),
    PlusInfinity,
}

impl ExtendedRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(r) => Some(r),
            ExtendedRational::PlusInfinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedRational::PlusInfinity)
    }
}

impl From<Rational> for ExtendedRational {
    fn from(r: Rational) -> Self {
        ExtendedRational::Finite(r)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::Finite(r) => write!(f, "{r}"),
            ExtendedRational::PlusInfinity => f.write_str("inf"),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" => Ok(ExtendedRational::PlusInfinity),
            other => Ok(ExtendedRational::Finite(parse_rational(other)?)),
        }
    }
}

/// Largest integer `n` with `n^2 <= r`.
pub fn isqrt_floor(r: &Rational) -> Result<BigInt> {
    if r.is_negative() {
        return Err(Error::NegativeRadicand);
    }
    // floor(sqrt(p/q)) = floor(isqrt(p*q) / q)
    let pq = r.numer() * r.denom();
    Ok(pq.sqrt().div_floor(r.denom()))
}

/// `sqrt(r)` when it is rational.
pub fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (p, q) = (r.numer().sqrt(), r.denom().sqrt());
    (&p * &p == *r.numer() && &q * &q == *r.denom()).then(|| Rational::new(p, q))
}

/// Selection index for the S_{-1} family: `m + 1` where `m` is the largest
/// nonnegative integer with `m^2 * rho <= (m + 1)^2`. Equivalent to
/// `floor(1 / (sqrt(rho) - 1)) + 1` without ever forming the square root.
pub fn index_from_rho(rho: &ExtendedRational) -> Result<BigInt> {
    let rho = match rho {
        ExtendedRational::PlusInfinity => return Ok(BigInt::one()),
        ExtendedRational::Finite(r) => r,
    };
    if *rho <= Rational::one() {
        return Err(Error::IndexUndefined);
    }
    let fits = |m: &BigInt| {
        let m = Rational::from_integer(m.clone());
        &m * &m * rho <= (&m + Rational::one()) * (&m + Rational::one())
    };
    // fits(0) always holds; double until it fails, then bisect.
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one();
    while fits(&hi) {
        lo = hi.clone();
        hi *= 2;
    }
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1;
        if fits(&mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + 1)
}

/// Round `r` to `digits` decimal places, half away from zero.
pub fn approx_rational(r: &Rational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let (p, q) = (r.numer().abs(), r.denom().clone());
    let two = BigInt::from(2);
    let scaled = (&two * p * &scale + &q).div_floor(&(&two * &q));
    render_scaled(r.is_negative() && !scaled.is_zero(), &scaled, digits)
}

/// Round `sqrt(r)` to `digits` decimal places, half up.
pub fn approx_sqrt(r: &Rational, digits: usize) -> String {
    debug_assert!(!r.is_negative());
    // sqrt(p/q) * 10^d = sqrt(p q 10^(2d)) / q, rounded via floor((sqrt(4N) + q) / 2q).
    let scale = BigInt::from(10).pow(2 * digits as u32);
    let n = r.numer() * r.denom() * scale;
    let q = r.denom().clone();
    let two = BigInt::from(2);
    let scaled = (BigInt::from(4) * n).sqrt() + &q;
    let scaled = scaled.div_floor(&(&two * &q));
    render_scaled(false, &scaled, digits)
}

fn render_scaled(negative: bool, scaled: &BigInt, digits: usize) -> String {
    let mut s = scaled.to_string();
    if digits > 0 {
        if s.len() <= digits {
            s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
        }
        s.insert(s.len() - digits, '.');
    }
    if negative {
        s.insert(0, '-');
    }
    s
}
