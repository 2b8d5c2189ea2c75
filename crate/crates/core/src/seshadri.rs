//! Closed-form Seshadri constants `eps(A, x)` for every surface kind and point
//! stratum, grid scans, and the family of near-maximal examples on `S_{-1}`.
//!
//! Inputs are nef classes. On the nef boundary the value is the limit of the
//! ample formula; when that limit is an infimum over a family that is not
//! attained, no witness is returned.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::catalog::{q_value, CurveName, ExceptionalCurve};
use crate::divisor::{is_nef, rho, self_int, DivisorClass};
use crate::error::{Error, Result};
use crate::exactnum::{cmp, index_from_rho, int, isqrt_floor, ratio, ExactValue, ExtendedRational, Rational};
use crate::par::{self, Execution};
use crate::surface::{PointStratum, SurfaceKind, SurfaceModel, Torsion};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeshadriValue {
    Exact(Rational),
    /// `lower <= eps <= upper`.
    Interval { lower: Rational, upper: ExactValue },
}

impl SeshadriValue {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            SeshadriValue::Exact(v) => Some(v),
            SeshadriValue::Interval { .. } => None,
        }
    }

    /// Multiply by a nonnegative rational.
    pub fn scale(&self, m: &Rational) -> Self {
        match self {
            SeshadriValue::Exact(v) => SeshadriValue::Exact(v * m),
            SeshadriValue::Interval { lower, upper } => {
                SeshadriValue::Interval { lower: lower * m, upper: upper.scale(m) }
            }
        }
    }
}

impl fmt::Display for SeshadriValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeshadriValue::Exact(v) => write!(f, "{v}"),
            SeshadriValue::Interval { lower, upper } => write!(f, "[{lower}, {upper}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeshadriResult {
    pub value: SeshadriValue,
    /// The catalog curve attaining an exact value, when attained.
    pub witness: Option<ExceptionalCurve>,
    pub regime: String,
}

impl SeshadriResult {
    fn by_curve(c: ExceptionalCurve, a: &DivisorClass, e: i64) -> Self {
        let value = SeshadriValue::Exact(q_value(&c, a, e));
        SeshadriResult { regime: regime_label(&c.name), value, witness: Some(c) }
    }

    fn unattained(value: Rational, regime: &str) -> Self {
        SeshadriResult { value: SeshadriValue::Exact(value), witness: None, regime: regime.into() }
    }

    /// An interval, collapsed to an exact value when its endpoints coincide.
    fn bounds(lower: Rational, upper: ExactValue, regime: &str) -> Self {
        if cmp(&ExactValue::Rat(lower.clone()), &upper).is_eq() {
            return SeshadriResult::unattained(lower, regime);
        }
        SeshadriResult {
            value: SeshadriValue::Interval { lower, upper },
            witness: None,
            regime: regime.into(),
        }
    }
}

pub fn regime_label(name: &CurveName) -> String {
    match name {
        CurveName::Fibre => "fibre".into(),
        CurveName::X0 => "X0".into(),
        CurveName::X1 => "X1".into(),
        CurveName::B(k) => format!("B_k k={k}"),
        CurveName::C(n) => format!("C_n n={n}"),
        CurveName::Bp(k) => format!("Bp_k k={k}"),
        CurveName::Cp(n) => format!("Cp_n n={n}"),
        CurveName::NSecant(n) => format!("n-secant n={n}"),
    }
}

pub const REGIME_NEF_BOUNDARY: &str = "nef-boundary";
pub const REGIME_SEMISTABLE_BOUNDS: &str = "semistable-bounds";
pub const REGIME_NSECANT_BOUNDS: &str = "n-secant-bounds";

/// Smallest `q`, ties going to the earliest curve.
fn least(curves: Vec<ExceptionalCurve>, a: &DivisorClass, e: i64) -> SeshadriResult {
    let mut best: Option<(Rational, ExceptionalCurve)> = None;
    for c in curves {
        let q = q_value(&c, a, e);
        if best.as_ref().is_none_or(|(b, _)| q < *b) {
            best = Some((q, c));
        }
    }
    let (_, c) = best.expect("nonempty candidate list");
    SeshadriResult::by_curve(c, a, e)
}

fn to_u64(n: &BigInt) -> u64 {
    n.to_u64().expect("family index fits in u64")
}

/// `rho >= k^2/4` (even k) or `rho >= (k^2+1)/4` (odd k) selects `B_k`.
pub fn torsion_threshold(k: u64) -> Rational {
    let k = k as i64;
    if k % 2 == 0 {
        ratio(k * k, 4)
    } else {
        ratio(k * k + 1, 4)
    }
}

/// Upper end of the `Bp_k` regime on `S_{-1}`: `k^2/(k-2)^2` (even k,
/// infinite for `k = 2`) or `(k^2+1)/(k^2-4k+5)` (odd k).
pub fn sm1_torsion_threshold(k: u64) -> ExtendedRational {
    let k = k as i64;
    if k == 2 {
        ExtendedRational::PlusInfinity
    } else if k % 2 == 0 {
        ratio(k * k, (k - 2) * (k - 2)).into()
    } else {
        ratio(k * k + 1, k * k - 4 * k + 5).into()
    }
}

fn e0_family(a: &DivisorClass) -> SeshadriResult {
    let r = match rho(a, 0) {
        ExtendedRational::PlusInfinity => return SeshadriResult::unattained(int(0), REGIME_NEF_BOUNDARY),
        ExtendedRational::Finite(r) => r,
    };
    let n = to_u64(&isqrt_floor(&r).expect("nef classes have rho >= 0"));
    let c = if n == 0 { ExceptionalCurve::fibre() } else { ExceptionalCurve::c_n(n) };
    SeshadriResult::by_curve(c, a, 0)
}

fn e0_torsion(k: u64, a: &DivisorClass) -> SeshadriResult {
    let r = rho(a, 0);
    if r >= ExtendedRational::Finite(torsion_threshold(k)) {
        return SeshadriResult::by_curve(ExceptionalCurve::b_k(k), a, 0);
    }
    let r = r.finite().expect("below a finite threshold").clone();
    let n = to_u64(&isqrt_floor(&r).expect("nef classes have rho >= 0"));
    let c = if n == 0 { ExceptionalCurve::fibre() } else { ExceptionalCurve::c_n(n) };
    SeshadriResult::by_curve(c, a, 0)
}

fn sm1(tk: Option<u64>, a: &DivisorClass) -> SeshadriResult {
    let r = rho(a, -1);
    if r <= ExtendedRational::Finite(int(1)) {
        return SeshadriResult::by_curve(ExceptionalCurve::fibre(), a, -1);
    }
    if let Some(k) = tk {
        if r <= sm1_torsion_threshold(k) {
            return SeshadriResult::by_curve(ExceptionalCurve::bp_k(k), a, -1);
        }
    }
    let n = to_u64(&index_from_rho(&r).expect("rho exceeds 1"));
    SeshadriResult::by_curve(ExceptionalCurve::cp_n(n), a, -1)
}

fn semistable_generic(s: &SurfaceModel, a: &DivisorClass) -> SeshadriResult {
    let sh = a.shifted_b(s.e);
    let two_s = &sh * int(2);
    if two_s >= a.a {
        return SeshadriResult::by_curve(ExceptionalCurve::fibre(), a, s.e);
    }
    SeshadriResult::bounds(two_s, ExactValue::Sqrt(self_int(a, s.e)), REGIME_SEMISTABLE_BOUNDS)
}

fn semistable_nsecant(s: &SurfaceModel, n: u64, a: &DivisorClass) -> SeshadriResult {
    let sh = a.shifted_b(s.e);
    if &sh * int(2) >= a.a {
        return SeshadriResult::by_curve(ExceptionalCurve::fibre(), a, s.e);
    }
    let n_i = n as i64;
    let lower = &a.a / int(n_i) + int(2) * (int(1) - ratio(1, n_i)) * &sh;
    let ns = &sh * int(n_i);
    if &sh * int(n_i * n_i) >= &a.a * int(2) {
        return SeshadriResult::bounds(lower, ExactValue::Sqrt(self_int(a, s.e)), REGIME_NSECANT_BOUNDS);
    }
    if &sh * int(n_i * n_i - 2 * n_i + 2) > a.a {
        return SeshadriResult::bounds(lower, ExactValue::Rat(ns), REGIME_NSECANT_BOUNDS);
    }
    SeshadriResult::by_curve(ExceptionalCurve::nsecant(n, s.e), a, s.e)
}

/// `eps(A, x)` for a nef class `A` at a point of stratum `x`.
pub fn compute(s: &SurfaceModel, x: PointStratum, a: &DivisorClass) -> Result<SeshadriResult> {
    use PointStratum::*;
    use SurfaceKind::*;
    s.ensure_admissible(x)?;
    if !is_nef(a, s) {
        return Err(Error::NotNef);
    }
    let e = s.e;
    let f = ExceptionalCurve::fibre;
    let res = match (s.kind, x) {
        (RationalRuled | UnstablePositiveE, OnX0) => least(vec![f(), ExceptionalCurve::x0()], a, e),
        (RationalRuled, Generic) if e == 0 => least(vec![f(), ExceptionalCurve::x0()], a, e),
        (RationalRuled | UnstablePositiveE, Generic) => SeshadriResult::by_curve(f(), a, e),
        (ProductTrivial, Generic) => least(vec![f(), ExceptionalCurve::x0()], a, e),
        (SemistableGeneral, OnX0) => least(vec![f(), ExceptionalCurve::x0()], a, e),
        (SemistableGeneral, Generic) => semistable_generic(s, a),
        (SemistableGeneral, OnNSecantZero(n)) => semistable_nsecant(s, n, a),
        (Decomposable2Torsion | EllipticDecomposableE0(_) | EllipticIndecomposableE0, OnX0) => {
            least(vec![f(), ExceptionalCurve::x0()], a, e)
        }
        (Decomposable2Torsion | EllipticDecomposableE0(_), OnX1) => {
            least(vec![f(), ExceptionalCurve::x1()], a, e)
        }
        (Decomposable2Torsion, Generic) => e0_torsion(2, a),
        (EllipticDecomposableE0(Torsion::Torsion(k)), Generic) => e0_torsion(k, a),
        (EllipticDecomposableE0(Torsion::NonTorsion) | EllipticIndecomposableE0, Generic) => {
            e0_family(a)
        }
        (EllipticIndecomposableEm1, OnTk(k)) => sm1(Some(k), a),
        (EllipticIndecomposableEm1, OnT1 | GenericNotT) => sm1(None, a),
        _ => unreachable!("admissibility checked above"),
    };
    Ok(res)
}

/// `sqrt(A^2)` for a nef class.
pub fn sqrt_self_int(a: &DivisorClass, e: i64) -> ExactValue {
    ExactValue::Sqrt(self_int(a, e).max(Rational::zero()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NearMaximal {
    pub surface: SurfaceModel,
    pub stratum: PointStratum,
    pub class: DivisorClass,
    pub epsilon: Rational,
    pub sqrt_a2: ExactValue,
}

/// The class `A = (n, -1)` of `Bp_n` at a point of `T_n` on `S_{-1}`, whose
/// Seshadri constant `n(n-2)/(n-1)` lies strictly within `1/(n-1)` of
/// `sqrt(A^2)`.
pub fn near_maximal_example(n: u64) -> Result<NearMaximal> {
    if n < 3 {
        return Err(Error::LemmaPrecondition("n ≥ 3"));
    }
    let n_i = n as i64;
    let class = DivisorClass::from_ints(n_i, -1);
    let surface = SurfaceModel::ell_sm1();
    let epsilon = ratio(n_i * (n_i - 2), n_i - 1);
    let sqrt_a2 = ExactValue::Sqrt(self_int(&class, surface.e));
    let eps = ExactValue::Rat(epsilon.clone());
    assert!(cmp(&eps, &sqrt_a2).is_lt());
    // sqrt(A^2) < eps + 1/(n-1)
    let shifted = ExactValue::Rat(&epsilon + ratio(1, n_i - 1));
    assert!(cmp(&sqrt_a2, &shifted).is_lt());
    Ok(NearMaximal { surface, stratum: PointStratum::OnTk(n), class, epsilon, sqrt_a2 })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRow {
    pub a: i64,
    pub b: i64,
    /// `None` for classes that are not nef.
    pub result: Option<SeshadriResult>,
    pub sqrt_a2: Option<ExactValue>,
}

impl ScanRow {
    pub fn nef(&self) -> bool {
        self.result.is_some()
    }
}

/// One row per integer pair, ordered by `a` then `b`.
pub fn scan(
    s: &SurfaceModel,
    x: PointStratum,
    a_range: RangeInclusive<i64>,
    b_range: RangeInclusive<i64>,
    exec: Execution,
) -> Result<Vec<ScanRow>> {
    s.ensure_admissible(x)?;
    let pairs: Vec<(i64, i64)> =
        a_range.flat_map(|a| b_range.clone().map(move |b| (a, b))).collect();
    let rows = par::map(exec, &pairs, |&(a, b)| {
        let cls = DivisorClass::from_ints(a, b);
        match compute(s, x, &cls) {
            Ok(r) => ScanRow { a, b, result: Some(r), sqrt_a2: Some(sqrt_self_int(&cls, s.e)) },
            Err(_) => ScanRow { a, b, result: None, sqrt_a2: None },
        }
    });
    Ok(rows)
}
