//! Numerical classes `a X0 + b f` on a ruled surface with invariant `e`.
//!
//! The pairing is `X0^2 = -e`, `X0.f = 1`, `f^2 = 0`. Most quantities are
//! cleaner in the shifted coordinate `s = b - a e / 2`, in which
//! `A^2 = 2 a s` and the nef cone is `a >= 0, s >= 0` for `e <= 0`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int, ExtendedRational, Rational};
use crate::surface::SurfaceModel;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    /// Coefficient of `X0`.
    pub a: Rational,
    /// Coefficient of `f`.
    pub b: Rational,
}

impl DivisorClass {
    pub fn new(a: Rational, b: Rational) -> Self {
        DivisorClass { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        DivisorClass { a: int(a), b: int(b) }
    }

    pub fn fibre() -> Self {
        DivisorClass::from_ints(0, 1)
    }

    pub fn section() -> Self {
        DivisorClass::from_ints(1, 0)
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    pub fn scale(&self, m: &Rational) -> Self {
        DivisorClass { a: &self.a * m, b: &self.b * m }
    }

    /// `b - a e / 2`.
    pub fn shifted_b(&self, e: i64) -> Rational {
        &self.b - &self.a * Rational::new(BigInt::from(e), BigInt::from(2))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.a, self.b)
    }
}

pub fn intersect(c: &DivisorClass, d: &DivisorClass, e: i64) -> Rational {
    -(&c.a * &d.a * int(e)) + &c.a * &d.b + &d.a * &c.b
}

pub fn self_int(c: &DivisorClass, e: i64) -> Rational {
    intersect(c, c, e)
}

pub fn is_nef(c: &DivisorClass, s: &SurfaceModel) -> bool {
    if c.a.is_negative() {
        return false;
    }
    if s.e > 0 {
        c.b >= &c.a * int(s.e)
    } else {
        !c.shifted_b(s.e).is_negative()
    }
}

pub fn is_ample(c: &DivisorClass, s: &SurfaceModel) -> bool {
    if !c.a.is_positive() {
        return false;
    }
    if s.e > 0 {
        c.b > &c.a * int(s.e)
    } else {
        c.shifted_b(s.e).is_positive()
    }
}

/// Necessary numerical condition for `c` to be the class of an irreducible
/// curve.
pub fn irreducible_class_feasible(c: &DivisorClass, s: &SurfaceModel) -> bool {
    if *c == DivisorClass::section() || *c == DivisorClass::fibre() {
        return true;
    }
    if s.e > 0 {
        c.a.is_positive() && c.b > &c.a * int(s.e)
    } else if c.a.is_one() {
        !c.b.is_negative()
    } else {
        c.a > Rational::one() && !c.shifted_b(s.e).is_negative()
    }
}

/// Ratio coordinate `a / (2 (b - a e / 2))` of a nef class; `+inf` on the
/// boundary ray `b = a e / 2` and `0` when `a = 0`.
pub fn rho(c: &DivisorClass, e: i64) -> ExtendedRational {
    if c.a.is_zero() {
        return ExtendedRational::Finite(Rational::zero());
    }
    let s = c.shifted_b(e);
    if s.is_zero() {
        ExtendedRational::PlusInfinity
    } else {
        ExtendedRational::Finite(&c.a / (s * int(2)))
    }
}

/// Largest `m >= 0` with `m (m - 1) <= 2 (a - 1)(b - a e / 2)`; a negative
/// right-hand side gives 0.
pub fn mult_bound_cota(c: &DivisorClass, e: i64) -> Result<u64> {
    if c.a < int(2) {
        return Err(Error::LemmaPrecondition("a ≥ 2"));
    }
    let rhs = int(2) * (&c.a - int(1)) * c.shifted_b(e);
    let f = rhs.floor().to_integer();
    if f.is_negative() {
        return Ok(0);
    }
    // m (m - 1) <= F  <=>  2m - 1 <= isqrt(4F + 1)
    let disc: BigInt = BigInt::from(4) * f + 1;
    let m: BigInt = (Roots::sqrt(&disc) + 1) / 2;
    Ok(m.to_u64().unwrap_or(u64::MAX))
}

/// `(b - a e / 2) + a / 2`, an upper bound for the multiplicity of an
/// irreducible curve with `a > 1` at any point.
pub fn mult_bound_simple(c: &DivisorClass, e: i64) -> Result<Rational> {
    if c.a <= Rational::one() {
        return Err(Error::LemmaPrecondition("a > 1"));
    }
    Ok(c.shifted_b(e) + &c.a / int(2))
}

pub fn canonical_class(s: &SurfaceModel) -> DivisorClass {
    DivisorClass::from_ints(-2, 2 * s.genus as i64 - 2 - s.e)
}

/// `1 + C.(K + C) / 2`.
pub fn arithmetic_genus(c: &DivisorClass, s: &SurfaceModel) -> Rational {
    let k = canonical_class(s);
    let kc = DivisorClass::new(&k.a + &c.a, &k.b + &c.b);
    Rational::one() + intersect(c, &kc, s.e) / int(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use crate::surface::Torsion;
    use proptest::prelude::*;

    fn d(a: i64, b: i64) -> DivisorClass {
        DivisorClass::from_ints(a, b)
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(intersect(&d(1, 0), &d(0, 1), -1), int(1));
        assert_eq!(intersect(&d(1, 0), &d(1, 0), 2), int(-2));
        assert_eq!(intersect(&d(9, 1), &d(12, 1), 0), int(21));
        assert_eq!(self_int(&d(9, 1), 0), int(18));
        assert_eq!(self_int(&d(6, -1), -1), int(24));
        assert_eq!(self_int(&d(0, 7), 5), int(0));
    }

    #[test]
    fn nef_examples() {
        let e2 = SurfaceModel::unstable(1, 2);
        assert!(is_nef(&d(1, 2), &e2));
        assert!(!is_nef(&d(1, 1), &e2));
        assert!(!is_ample(&d(1, 2), &e2));
        let em1 = SurfaceModel::ell_sm1();
        assert!(is_nef(&d(2, -1), &em1));
        assert!(!is_ample(&d(2, -1), &em1));
        assert!(is_ample(&d(6, -1), &em1));
        // rational coefficients
        let z = DivisorClass::new(int(1), ratio(-1, 2));
        assert!(is_nef(&z, &em1));
        assert!(!is_nef(&d(-1, 5), &em1));
    }

    #[test]
    fn feasibility_examples() {
        let e2 = SurfaceModel::unstable(1, 2);
        let em1 = SurfaceModel::ell_sm1();
        assert!(irreducible_class_feasible(&d(1, 0), &e2));
        assert!(irreducible_class_feasible(&d(1, 0), &em1));
        assert!(!irreducible_class_feasible(&d(2, 1), &e2));
        assert!(irreducible_class_feasible(&d(2, 5), &e2));
        assert!(irreducible_class_feasible(&d(3, -1), &em1));
        assert!(!irreducible_class_feasible(&d(1, -1), &em1));
        assert!(!irreducible_class_feasible(&d(3, -2), &em1));
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(&d(9, 1), 0), ExtendedRational::Finite(ratio(9, 2)));
        assert_eq!(rho(&d(6, -1), -1), ExtendedRational::Finite(ratio(3, 2)));
        assert_eq!(rho(&d(5, 0), 0), ExtendedRational::PlusInfinity);
        assert_eq!(rho(&d(0, 3), 0), ExtendedRational::Finite(int(0)));
        assert_eq!(rho(&d(0, 0), -1), ExtendedRational::Finite(int(0)));
    }

    #[test]
    fn multiplicity_bounds() {
        assert_eq!(mult_bound_cota(&d(4, 1), 0).unwrap(), 3);
        assert_eq!(mult_bound_cota(&d(12, 1), 0).unwrap(), 5);
        assert_eq!(mult_bound_cota(&d(2, -1), -1).unwrap(), 1);
        assert_eq!(mult_bound_cota(&d(3, -2), -1).unwrap(), 0);
        assert!(mult_bound_cota(&d(1, 5), 0).is_err());

        assert_eq!(mult_bound_simple(&d(4, 1), 0).unwrap(), int(3));
        assert_eq!(mult_bound_simple(&d(12, -4), -1).unwrap(), int(8));
        assert!(mult_bound_simple(&d(1, 4), 0).is_err());
        for n in 1..=50i64 {
            let c = d(2 * n * (n + 1), 1);
            assert_eq!(mult_bound_simple(&c, 0).unwrap(), int(n * (n + 1) + 1));
        }
    }

    #[test]
    fn cota_matches_brute_force() {
        for e in -3..=3i64 {
            for a in 2..=12i64 {
                for b in -10..=20i64 {
                    let c = d(a, b);
                    let rhs = int(2) * int(a - 1) * c.shifted_b(e);
                    let brute = (0..200u64)
                        .filter(|&m| int((m * m) as i64 - m as i64) <= rhs)
                        .max()
                        .unwrap_or(0);
                    let brute = if rhs.is_negative() { 0 } else { brute };
                    assert_eq!(mult_bound_cota(&c, e).unwrap(), brute, "{c} e={e}");
                }
            }
        }
    }

    #[test]
    fn genus_examples() {
        let g1 = SurfaceModel::ell_dec(Torsion::NonTorsion);
        assert_eq!(arithmetic_genus(&d(0, 1), &g1), int(0));
        assert_eq!(arithmetic_genus(&d(0, 1), &SurfaceModel::unstable(3, 2)), int(0));
        assert_eq!(arithmetic_genus(&d(1, 0), &g1), int(1));
        assert_eq!(arithmetic_genus(&d(2, 0), &g1), int(1));
        // sections are isomorphic to the base curve
        assert_eq!(arithmetic_genus(&d(1, 0), &SurfaceModel::unstable(4, 3)), int(4));
    }

    proptest! {
        #[test]
        fn pairing_is_symmetric_and_bilinear(
            a1 in -30i64..30, b1 in -30i64..30,
            a2 in -30i64..30, b2 in -30i64..30,
            a3 in -30i64..30, b3 in -30i64..30,
            e in -5i64..5, k in -7i64..7,
        ) {
            let (x, y, z) = (d(a1, b1), d(a2, b2), d(a3, b3));
            prop_assert_eq!(intersect(&x, &y, e), intersect(&y, &x, e));
            let xz = DivisorClass::new(&x.a * int(k) + &z.a, &x.b * int(k) + &z.b);
            prop_assert_eq!(
                intersect(&xz, &y, e),
                intersect(&x, &y, e) * int(k) + intersect(&z, &y, e)
            );
        }

        #[test]
        fn nef_classes_have_nonnegative_square(
            a in 0i64..60, b in -60i64..60, e in -4i64..5,
        ) {
            let s = if e > 0 { SurfaceModel::unstable(1, e) } else { SurfaceModel::semistable(1, e) };
            let c = d(a, b);
            if is_nef(&c, &s) {
                prop_assert!(!self_int(&c, e).is_negative());
            }
        }
    }
}
