//! Elementary transformations of a ruled surface centred at a point: the
//! action on curve classes with their multiplicities and on influence areas.
//!
//! Influence areas are intervals in `rho`. They are stored at the square-root
//! level `lambda = sqrt(rho)`, where every catalog endpoint is rational and the
//! transform acts by the rational involution `lambda -> lambda / (lambda - 1)`.

use std::fmt;

use num_traits::{One, Signed};

use crate::divisor::DivisorClass;
use crate::error::{Error, Result};
use crate::exactnum::{int, ExtendedRational, Rational};

/// An interval of `lambda = sqrt(rho)` values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InfluenceInterval {
    pub lower: Rational,
    pub upper: ExtendedRational,
    pub lower_open: bool,
    /// Always true when `upper` is infinite.
    pub upper_open: bool,
}

impl InfluenceInterval {
    pub fn open(lower: Rational, upper: ExtendedRational) -> Result<Self> {
        Self::with_flags(lower, upper, true, true)
    }

    pub fn with_flags(
        lower: Rational,
        upper: ExtendedRational,
        lower_open: bool,
        upper_open: bool,
    ) -> Result<Self> {
        if lower.is_negative() {
            return Err(Error::LambdaOutOfRange(lower.to_string()));
        }
        let nonempty = match &upper {
            ExtendedRational::PlusInfinity => true,
            ExtendedRational::Finite(u) => {
                *u > lower || (*u == lower && !lower_open && !upper_open)
            }
        };
        if !nonempty {
            return Err(Error::EmptyInterval);
        }
        let upper_open = upper_open || upper.is_infinite();
        Ok(InfluenceInterval { lower, upper, lower_open, upper_open })
    }

    /// Whether the class with ratio coordinate `rho` lies in the interval.
    pub fn contains_rho(&self, rho: &ExtendedRational) -> bool {
        let lo_sq = &self.lower * &self.lower;
        let above_lower = match rho {
            ExtendedRational::PlusInfinity => true,
            ExtendedRational::Finite(r) => {
                if self.lower_open {
                    *r > lo_sq
                } else {
                    *r >= lo_sq
                }
            }
        };
        let below_upper = match (&self.upper, rho) {
            (ExtendedRational::PlusInfinity, _) => true,
            (ExtendedRational::Finite(_), ExtendedRational::PlusInfinity) => false,
            (ExtendedRational::Finite(u), ExtendedRational::Finite(r)) => {
                let hi_sq = u * u;
                if self.upper_open {
                    *r < hi_sq
                } else {
                    *r <= hi_sq
                }
            }
        };
        above_lower && below_upper
    }
}

impl fmt::Display for InfluenceInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lower_open { '(' } else { '[' };
        let r = if self.upper_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lower, self.upper)
    }
}

/// Strict transform of a curve of class `c` through the centre with
/// multiplicity `m`, from a surface with invariant `e` to one with `e_prime`.
/// Returns the new class and the multiplicity at the new base point.
pub fn elm_curve(c: &DivisorClass, m: u64, e: i64, e_prime: i64) -> Result<(DivisorClass, u64)> {
    if !c.a.is_positive() {
        return Err(Error::FibreTransform);
    }
    let m_r = int(m as i64);
    if m_r > c.a {
        return Err(Error::MultiplicityExceedsDegree);
    }
    let b = &c.b - &m_r + &c.a * int(1 - e + e_prime) / int(2);
    let a_minus_m = &c.a - &m_r;
    let m_prime = a_minus_m
        .to_integer()
        .try_into()
        .map_err(|_| Error::MultiplicityExceedsDegree)?;
    Ok((DivisorClass::new(c.a.clone(), b), m_prime))
}

/// `lambda / (lambda - 1)` for `lambda > 1`.
pub fn elm_lambda(lambda: &Rational) -> Result<Rational> {
    if *lambda <= Rational::one() {
        return Err(Error::LambdaOutOfRange(lambda.to_string()));
    }
    Ok(lambda / (lambda - Rational::one()))
}

// Extended version: +inf -> 1 and 1 -> +inf.
fn elm_endpoint(x: &ExtendedRational) -> Result<ExtendedRational> {
    match x {
        ExtendedRational::PlusInfinity => Ok(ExtendedRational::Finite(Rational::one())),
        ExtendedRational::Finite(l) if l.is_one() => Ok(ExtendedRational::PlusInfinity),
        ExtendedRational::Finite(l) => Ok(ExtendedRational::Finite(elm_lambda(l)?)),
    }
}

/// Image of an influence interval under the transform. Endpoints swap order.
/// A lower endpoint of exactly 1 is accepted when open and maps to `+inf`.
pub fn elm_influence(i: &InfluenceInterval) -> Result<InfluenceInterval> {
    if i.lower < Rational::one() || (i.lower.is_one() && !i.lower_open) {
        return Err(Error::LambdaOutOfRange(i.lower.to_string()));
    }
    if let ExtendedRational::Finite(u) = &i.upper {
        if *u <= i.lower {
            return Err(Error::EmptyInterval);
        }
    }
    let new_lower = match elm_endpoint(&i.upper)? {
        ExtendedRational::Finite(r) => r,
        ExtendedRational::PlusInfinity => unreachable!("finite upper endpoints exceed 1"),
    };
    let new_upper = elm_endpoint(&ExtendedRational::Finite(i.lower.clone()))?;
    InfluenceInterval::with_flags(new_lower, new_upper, i.upper_open, i.lower_open)
}

/// `C^2 - m^2`, the quantity preserved by the transform.
pub fn exceptional_defect(c: &DivisorClass, m: u64, e: i64) -> Rational {
    let m = int(m as i64);
    crate::divisor::self_int(c, e) - &m * &m
}
