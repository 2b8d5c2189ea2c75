//! Seshadri-exceptional curves based at a point of each stratum, with their
//! multiplicities and influence areas.
//!
//! Names follow the usual notation: `f` the fibre, `X0`/`X1` the
//! zero-self-intersection sections, `B_k = kX0` on torsion surfaces,
//! `C_n = 2n(n+1)X0 + f`, and on `S_{-1}` their strict transforms
//! `Bp_k = kX0 - f` and `Cp_n = 2n(n+1)X0 - 2nf`.

use std::fmt;

use num_traits::One;

use crate::divisor::{
    intersect, irreducible_class_feasible, mult_bound_cota, mult_bound_simple, self_int,
    DivisorClass,
};
use crate::error::{Error, Result};
use crate::exactnum::{int, ratio, ExtendedRational, Rational};
use crate::surface::{PointStratum, SurfaceKind, SurfaceModel, Torsion};
use crate::transform::InfluenceInterval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveName {
    Fibre,
    X0,
    X1,
    B(u64),
    C(u64),
    Bp(u64),
    Cp(u64),
    /// Irreducible n-secant with zero self-intersection.
    NSecant(u64),
}

impl CurveName {
    pub fn family_index(&self) -> Option<u64> {
        match *self {
            CurveName::B(i)
            | CurveName::C(i)
            | CurveName::Bp(i)
            | CurveName::Cp(i)
            | CurveName::NSecant(i) => Some(i),
            _ => None,
        }
    }
}

impl fmt::Display for CurveName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveName::Fibre => f.write_str("f"),
            CurveName::X0 => f.write_str("X0"),
            CurveName::X1 => f.write_str("X1"),
            CurveName::B(k) => write!(f, "B_{k}"),
            CurveName::C(n) => write!(f, "C_{n}"),
            CurveName::Bp(k) => write!(f, "Bp_{k}"),
            CurveName::Cp(n) => write!(f, "Cp_{n}"),
            CurveName::NSecant(n) => write!(f, "Nsec_{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExceptionalCurve {
    pub name: CurveName,
    pub cls: DivisorClass,
    /// Multiplicity at the base point.
    pub mult: u64,
}

impl ExceptionalCurve {
    pub fn family_index(&self) -> Option<u64> {
        self.name.family_index()
    }

    pub fn fibre() -> Self {
        ExceptionalCurve { name: CurveName::Fibre, cls: DivisorClass::fibre(), mult: 1 }
    }

    pub fn x0() -> Self {
        ExceptionalCurve { name: CurveName::X0, cls: DivisorClass::section(), mult: 1 }
    }

    /// Numerically `X1 = X0` when `e = 0`.
    pub fn x1() -> Self {
        ExceptionalCurve { name: CurveName::X1, cls: DivisorClass::section(), mult: 1 }
    }

    pub fn b_k(k: u64) -> Self {
        ExceptionalCurve {
            name: CurveName::B(k),
            cls: DivisorClass::from_ints(k as i64, 0),
            mult: 1,
        }
    }

    pub fn c_n(n: u64) -> Self {
        let n_i = n as i64;
        ExceptionalCurve {
            name: CurveName::C(n),
            cls: DivisorClass::from_ints(2 * n_i * (n_i + 1), 1),
            mult: 2 * n + 1,
        }
    }

    pub fn bp_k(k: u64) -> Self {
        ExceptionalCurve {
            name: CurveName::Bp(k),
            cls: DivisorClass::from_ints(k as i64, -1),
            mult: k - 1,
        }
    }

    pub fn cp_n(n: u64) -> Self {
        let n_i = n as i64;
        ExceptionalCurve {
            name: CurveName::Cp(n),
            cls: DivisorClass::from_ints(2 * n_i * (n_i + 1), -2 * n_i),
            mult: 2 * n * n - 1,
        }
    }

    /// `C = nX0 + (ne/2) f`; requires `n e` even.
    pub fn nsecant(n: u64, e: i64) -> Self {
        let n_i = n as i64;
        ExceptionalCurve {
            name: CurveName::NSecant(n),
            cls: DivisorClass::from_ints(n_i, n_i * e / 2),
            mult: 1,
        }
    }
}

impl fmt::Display for ExceptionalCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} mult {}", self.name, self.cls, self.mult)
    }
}

/// The exceptional curves based at a point of stratum `x`. Infinite families
/// are truncated to indices `<= n_max`; torsion catalogs are finite and
/// ignore `n_max`.
pub fn catalog(s: &SurfaceModel, x: PointStratum, n_max: u64) -> Result<Vec<ExceptionalCurve>> {
    use PointStratum::*;
    use SurfaceKind::*;
    s.ensure_admissible(x)?;
    let f = ExceptionalCurve::fibre();
    let c_family = |f: ExceptionalCurve| {
        std::iter::once(f).chain((1..=n_max).map(ExceptionalCurve::c_n)).collect::<Vec<_>>()
    };
    let list = match (s.kind, x) {
        (RationalRuled | UnstablePositiveE, OnX0) => vec![f, ExceptionalCurve::x0()],
        (RationalRuled, Generic) if s.e == 0 => vec![f, ExceptionalCurve::x0()],
        (RationalRuled | UnstablePositiveE, Generic) => vec![f],
        (ProductTrivial, Generic) => vec![f, ExceptionalCurve::x0()],
        (SemistableGeneral, OnX0) => vec![f, ExceptionalCurve::x0()],
        (SemistableGeneral, Generic) => vec![f],
        (SemistableGeneral, OnNSecantZero(n)) => vec![f, ExceptionalCurve::nsecant(n, s.e)],
        (Decomposable2Torsion | EllipticDecomposableE0(_) | EllipticIndecomposableE0, OnX0) => {
            vec![f, ExceptionalCurve::x0()]
        }
        (Decomposable2Torsion | EllipticDecomposableE0(_), OnX1) => {
            vec![f, ExceptionalCurve::x1()]
        }
        (Decomposable2Torsion, Generic) => vec![f, ExceptionalCurve::b_k(2)],
        (EllipticDecomposableE0(Torsion::NonTorsion) | EllipticIndecomposableE0, Generic) => {
            c_family(f)
        }
        (EllipticDecomposableE0(Torsion::Torsion(k)), Generic) => {
            let mut v = vec![f, ExceptionalCurve::b_k(k)];
            v.extend((1..=(k - 1) / 2).map(ExceptionalCurve::c_n));
            v
        }
        (EllipticIndecomposableEm1, OnTk(k)) => {
            let mut v = vec![f, ExceptionalCurve::bp_k(k)];
            v.extend((1..=(k - 1) / 2).map(ExceptionalCurve::cp_n));
            v
        }
        (EllipticIndecomposableEm1, OnT1 | GenericNotT) => std::iter::once(f)
            .chain((1..=n_max).map(ExceptionalCurve::cp_n))
            .collect(),
        _ => unreachable!("admissibility checked above"),
    };
    Ok(list)
}

/// Whether the catalog is the full list of exceptional curves at `x`
/// (up to truncation of an infinite family).
pub fn is_complete(s: &SurfaceModel, x: PointStratum) -> bool {
    !(s.kind == SurfaceKind::SemistableGeneral && x != PointStratum::OnX0)
}

/// When the catalog at `x` is an infinite family, the union of the influence
/// areas of the members dropped by truncating at `n_max`.
pub fn family_tail(
    s: &SurfaceModel,
    x: PointStratum,
    n_max: u64,
) -> Result<Option<InfluenceInterval>> {
    use PointStratum::*;
    use SurfaceKind::*;
    s.ensure_admissible(x)?;
    let next = n_max as i64 + 1;
    let tail = match (s.kind, x) {
        (EllipticDecomposableE0(Torsion::NonTorsion) | EllipticIndecomposableE0, Generic) => {
            Some(InfluenceInterval::open(int(next), ExtendedRational::PlusInfinity)?)
        }
        (EllipticIndecomposableEm1, OnT1 | GenericNotT) => {
            // members n > n_max telescope down to lambda = 1
            Some(InfluenceInterval::open(int(1), ratio(next, next - 1).into())?)
        }
        _ => None,
    };
    Ok(tail)
}

/// `A.C / mult(C)`.
pub fn q_value(c: &ExceptionalCurve, a: &DivisorClass, e: i64) -> Rational {
    intersect(a, &c.cls, e) / int(c.mult as i64)
}

/// The influence area of `c` as a `lambda = sqrt(rho)` interval.
pub fn influence(c: &ExceptionalCurve, s: &SurfaceModel) -> Result<InfluenceInterval> {
    let unknown = || Error::UnknownInfluence(format!("{} on {s}", c.name));
    let inf = ExtendedRational::PlusInfinity;
    match c.name {
        CurveName::Fibre => InfluenceInterval::with_flags(int(0), int(1).into(), false, true),
        CurveName::X0 | CurveName::X1 if s.e == 0 => InfluenceInterval::open(ratio(1, 2), inf),
        CurveName::C(n) if s.e == 0 && s.is_exact_kind() => {
            let n = n as i64;
            InfluenceInterval::open(int(n), int(n + 1).into())
        }
        CurveName::B(k) if s.e == 0 && s.is_exact_kind() => {
            InfluenceInterval::open(ratio(k as i64, 2), inf)
        }
        CurveName::Cp(n) if s.kind == SurfaceKind::EllipticIndecomposableEm1 => {
            let n = n as i64;
            let upper = if n == 1 { inf } else { ratio(n, n - 1).into() };
            InfluenceInterval::open(ratio(n + 1, n), upper)
        }
        CurveName::Bp(k) if s.kind == SurfaceKind::EllipticIndecomposableEm1 => {
            let k = k as i64;
            let upper = if k == 2 { inf } else { ratio(k, k - 2).into() };
            InfluenceInterval::open(int(1), upper)
        }
        _ => Err(unknown()),
    }
}

/// `C^2 < mult^2`, together with the multiplicity bounds that apply to the
/// class.
pub fn check_exceptional(c: &ExceptionalCurve, e: i64) -> bool {
    let m = int(c.mult as i64);
    if c.mult == 0 || self_int(&c.cls, e) >= &m * &m {
        return false;
    }
    if c.cls.a >= int(2) {
        match mult_bound_cota(&c.cls, e) {
            Ok(bound) if c.mult <= bound => {}
            _ => return false,
        }
    }
    if c.cls.a > Rational::one() {
        match mult_bound_simple(&c.cls, e) {
            Ok(bound) if m <= bound.floor() => {}
            _ => return false,
        }
    }
    true
}

/// Whether `c` is numerically admissible as an irreducible exceptional curve
/// on `s`.
pub fn is_catalog_consistent(c: &ExceptionalCurve, s: &SurfaceModel) -> bool {
    irreducible_class_feasible(&c.cls, s) && check_exceptional(c, s.e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{cmp, isqrt_floor, ExactValue};
    use num_bigint::BigInt;
    use num_traits::Signed;
    use std::cmp::Ordering;

    fn d(a: i64, b: i64) -> DivisorClass {
        DivisorClass::from_ints(a, b)
    }

    fn summary(v: &[ExceptionalCurve]) -> Vec<(String, DivisorClass, u64)> {
        v.iter().map(|c| (c.name.to_string(), c.cls.clone(), c.mult)).collect()
    }

    #[test]
    fn catalog_examples() {
        let s = SurfaceModel::ell_dec(Torsion::Torsion(5));
        let got = summary(&catalog(&s, PointStratum::Generic, 10).unwrap());
        assert_eq!(
            got,
            vec![
                ("f".into(), d(0, 1), 1),
                ("B_5".into(), d(5, 0), 1),
                ("C_1".into(), d(4, 1), 3),
                ("C_2".into(), d(12, 1), 5),
            ]
        );

        let got = summary(&catalog(&SurfaceModel::ell_sm1(), PointStratum::OnTk(4), 10).unwrap());
        assert_eq!(
            got,
            vec![("f".into(), d(0, 1), 1), ("Bp_4".into(), d(4, -1), 3), ("Cp_1".into(), d(4, -2), 1)]
        );

        let got = catalog(&SurfaceModel::unstable(1, 2), PointStratum::Generic, 10).unwrap();
        assert_eq!(got, vec![ExceptionalCurve::fibre()]);

        let nt = SurfaceModel::ell_dec(Torsion::NonTorsion);
        assert_eq!(catalog(&nt, PointStratum::Generic, 7).unwrap().len(), 8);
        assert!(catalog(&nt, PointStratum::OnT1, 7).is_err());
    }

    #[test]
    fn q_value_examples() {
        let a = d(9, 1);
        assert_eq!(q_value(&ExceptionalCurve::fibre(), &a, 0), int(9));
        assert_eq!(q_value(&ExceptionalCurve::c_n(2), &a, 0), ratio(21, 5));
        assert_eq!(q_value(&ExceptionalCurve::bp_k(4), &d(6, -1), -1), ratio(14, 3));
        for n in 1..=20i64 {
            let (a, b) = (17, 3);
            let want = ratio(2 * n * (n + 1) * b + a, 2 * n + 1);
            assert_eq!(q_value(&ExceptionalCurve::c_n(n as u64), &d(a, b), 0), want);
            let want = ratio(2 * n * (n * a + (n + 1) * b), 2 * n * n - 1);
            assert_eq!(q_value(&ExceptionalCurve::cp_n(n as u64), &d(a, b), -1), want);
        }
    }

    #[test]
    fn influence_examples() {
        let nt = SurfaceModel::ell_dec(Torsion::NonTorsion);
        let sm1 = SurfaceModel::ell_sm1();
        let f = influence(&ExceptionalCurve::fibre(), &nt).unwrap();
        assert_eq!(f.to_string(), "[0, 1)");
        assert_eq!(influence(&ExceptionalCurve::c_n(3), &nt).unwrap().to_string(), "(3, 4)");
        assert_eq!(influence(&ExceptionalCurve::bp_k(6), &sm1).unwrap().to_string(), "(1, 3/2)");
        assert_eq!(influence(&ExceptionalCurve::bp_k(2), &sm1).unwrap().to_string(), "(1, inf)");
        assert_eq!(influence(&ExceptionalCurve::cp_n(1), &sm1).unwrap().to_string(), "(2, inf)");
        assert_eq!(influence(&ExceptionalCurve::cp_n(3), &sm1).unwrap().to_string(), "(4/3, 3/2)");
        let semi = SurfaceModel::semistable(2, -2);
        assert!(influence(&ExceptionalCurve::nsecant(3, -2), &semi).is_err());
        assert!(influence(&ExceptionalCurve::x0(), &SurfaceModel::unstable(1, 1)).is_err());
    }

    /// Independent route: the influence area of a curve with class `(k, l)`
    /// and multiplicity `m` is where `2 t lambda^2 - 2 m lambda + k < 0`,
    /// `t = l - k e / 2` (normalising `b - ae/2 = 1`). Its roots are
    /// `(m +- sqrt(m^2 - C^2)) / (2t)`.
    fn quadratic_interval(c: &ExceptionalCurve, e: i64) -> (Rational, ExtendedRational) {
        let t2 = c.cls.shifted_b(e) * int(2);
        let m = int(c.mult as i64);
        let k = c.cls.a.clone();
        if t2 == int(0) {
            // linear: -2 m lambda + k < 0
            return (k / (int(2) * m), ExtendedRational::PlusInfinity);
        }
        let disc = &m * &m - &t2 * &k;
        let root = crate::exactnum::rational_sqrt(&disc).expect("rational endpoints");
        ((&m - &root) / &t2, ((&m + &root) / &t2).into())
    }

    #[test]
    fn influence_matches_quadratic_roots() {
        let nt = SurfaceModel::ell_dec(Torsion::NonTorsion);
        let sm1 = SurfaceModel::ell_sm1();
        let mut curves: Vec<(ExceptionalCurve, SurfaceModel)> = Vec::new();
        for n in 1..=60 {
            curves.push((ExceptionalCurve::c_n(n), nt));
            curves.push((ExceptionalCurve::cp_n(n), sm1));
        }
        for k in 2..=60 {
            curves.push((ExceptionalCurve::b_k(k), SurfaceModel::ell_dec(Torsion::Torsion(k))));
            curves.push((ExceptionalCurve::bp_k(k), sm1));
        }
        curves.push((ExceptionalCurve::x0(), nt));
        for (c, s) in curves {
            let i = influence(&c, &s).unwrap();
            let (lo, hi) = quadratic_interval(&c, s.e);
            assert_eq!((i.lower.clone(), i.upper.clone()), (lo, hi), "{}", c.name);
        }
    }

    #[test]
    fn exceptionality_checks() {
        assert!(check_exceptional(&ExceptionalCurve::fibre(), 0));
        assert!(check_exceptional(&ExceptionalCurve::c_n(2), 0));
        let bad = ExceptionalCurve { mult: 4, ..ExceptionalCurve::c_n(2) };
        assert!(!check_exceptional(&bad, 0));
        let zero = ExceptionalCurve { mult: 0, ..ExceptionalCurve::fibre() };
        assert!(!check_exceptional(&zero, 0));
    }

    fn all_strata_catalogs(n_max: u64) -> Vec<(SurfaceModel, PointStratum, Vec<ExceptionalCurve>)> {
        let mut surfaces = vec![
            SurfaceModel::rational(0),
            SurfaceModel::rational(2),
            SurfaceModel::unstable(1, 1),
            SurfaceModel::unstable(2, 3),
            SurfaceModel::product(2),
            SurfaceModel::dec2tor(3),
            SurfaceModel::ell_dec(Torsion::NonTorsion),
            SurfaceModel::ell_s0(),
            SurfaceModel::ell_sm1(),
            SurfaceModel::semistable(2, -2),
        ];
        surfaces.extend((2..=12).map(|k| SurfaceModel::ell_dec(Torsion::Torsion(k))));
        let mut out = Vec::new();
        for s in surfaces {
            for x in s.strata(12).unwrap() {
                out.push((s, x, catalog(&s, x, n_max).unwrap()));
            }
        }
        out
    }

    #[test]
    fn catalog_curves_are_consistent() {
        for (s, x, cat) in all_strata_catalogs(100) {
            for c in &cat {
                assert!(is_catalog_consistent(c, &s), "{c} at {x} on {s}");
                let sq = self_int(&c.cls, s.e);
                if sq.is_positive() {
                    let floor = isqrt_floor(&sq).unwrap();
                    assert_eq!(BigInt::from(c.mult), floor + 1, "{c}");
                }
            }
        }
    }

    #[test]
    fn distinct_curves_stay_out_of_each_others_closure() {
        for (s, x, cat) in all_strata_catalogs(30) {
            for c in &cat {
                for dcur in &cat {
                    if c.name == dcur.name {
                        continue;
                    }
                    let q = ExactValue::Rat(q_value(c, &dcur.cls, s.e));
                    let root = ExactValue::Sqrt(self_int(&dcur.cls, s.e).max(int(0)));
                    assert_eq!(cmp(&q, &root), Ordering::Greater, "{} vs {} at {x} on {s}", c.name, dcur.name);
                }
            }
        }
    }

    #[test]
    fn tails_are_unions_of_dropped_members() {
        let sm1 = SurfaceModel::ell_sm1();
        for n_max in [1u64, 5, 25] {
            let tail = family_tail(&sm1, PointStratum::GenericNotT, n_max).unwrap().unwrap();
            let first = influence(&ExceptionalCurve::cp_n(n_max + 1), &sm1).unwrap();
            assert_eq!(tail.upper, first.upper);
            // consecutive members share endpoints all the way down
            for n in n_max + 1..n_max + 200 {
                let hi = influence(&ExceptionalCurve::cp_n(n + 1), &sm1).unwrap();
                let lo = influence(&ExceptionalCurve::cp_n(n), &sm1).unwrap();
                assert_eq!(hi.upper, ExtendedRational::Finite(lo.lower.clone()));
                assert!(lo.lower > tail.lower);
            }
        }
        let nt = SurfaceModel::ell_dec(Torsion::NonTorsion);
        let tail = family_tail(&nt, PointStratum::Generic, 9).unwrap().unwrap();
        assert_eq!(tail.lower, int(10));
        assert!(family_tail(&nt, PointStratum::OnX0, 9).unwrap().is_none());
    }
}
