//! Independent checks of the closed forms: brute-force minimisation over the
//! curve catalog, influence-coverage sweeps, transform consistency between
//! `e = 0` and `e = -1` catalogs, and a numerical feasibility grid that gives
//! a lower-bound diagnostic.

use std::cmp::Ordering;

use num_integer::{Integer, Roots};
use num_traits::{ToPrimitive, Zero};

use crate::catalog::{catalog, family_tail, influence, q_value, CurveName, ExceptionalCurve};
use crate::divisor::{is_ample, rho, self_int, DivisorClass};
use crate::error::{Error, Result};
use crate::exactnum::{cmp, int, ExactValue, ExtendedRational, Rational};
use crate::par::{self, Execution};
use crate::surface::{PointStratum, SurfaceKind, SurfaceModel, Torsion};
use crate::transform::{elm_curve, elm_influence, exceptional_defect};

/// Exact minimum of `q_C(A)` over the catalog truncated at `n_max`, together
/// with `sqrt(A^2)`. The argmin is `None` when `sqrt(A^2)` is strictly
/// smallest; ties go to the earlier catalog curve.
///
/// Fails with [`Error::TruncationTooShallow`] when the truncation could hide
/// the minimiser: the minimiser is the last family member, or `rho(A)` lies
/// in the union of the dropped members' open influence areas (unless
/// `A^2 = 0`). Outside its open influence area a curve never undercuts
/// `sqrt(A^2)`, so it cannot be the minimiser there.
pub fn catalog_min(
    s: &SurfaceModel,
    x: PointStratum,
    a: &DivisorClass,
    n_max: u64,
) -> Result<(ExactValue, Option<ExceptionalCurve>)> {
    let cat = catalog(s, x, n_max)?;
    let sq = self_int(a, s.e);
    let mut best = ExactValue::Sqrt(sq.clone().max(Rational::zero()));
    let mut arg: Option<ExceptionalCurve> = None;
    for c in cat {
        let q = ExactValue::Rat(q_value(&c, a, s.e));
        let better = match &arg {
            None => cmp(&q, &best) != Ordering::Greater,
            Some(_) => cmp(&q, &best) == Ordering::Less,
        };
        if better {
            best = q;
            arg = Some(c);
        }
    }
    if let Some(tail) = family_tail(s, x, n_max)? {
        let at_edge = arg.as_ref().is_some_and(|c| {
            c.family_index() == Some(n_max) && matches!(c.name, CurveName::C(_) | CurveName::Cp(_))
        });
        if !sq.is_zero() && (at_edge || tail.contains_rho(&rho(a, s.e))) {
            return Err(Error::TruncationTooShallow(n_max));
        }
    }
    Ok((best, arg))
}

/// [`catalog_min`] with the depth doubled from 8 until the truncation is
/// deep enough.
pub fn catalog_min_auto(
    s: &SurfaceModel,
    x: PointStratum,
    a: &DivisorClass,
) -> Result<(ExactValue, Option<ExceptionalCurve>)> {
    let mut n_max = 8u64;
    loop {
        match catalog_min(s, x, a, n_max) {
            Err(Error::TruncationTooShallow(_)) if n_max < 1 << 20 => n_max *= 2,
            other => return other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageOptions {
    /// Curves left out of the union, for diagnostics.
    pub exclude: Vec<CurveName>,
    /// Whether the dropped members of an infinite family count towards the
    /// union.
    pub include_tail: bool,
}

impl Default for CoverageOptions {
    fn default() -> Self {
        CoverageOptions { exclude: Vec::new(), include_tail: true }
    }
}

/// Open `lambda` intervals inside `[0, lambda_max]` (intersected with the
/// nef cone) that no closed influence area covers. Curves whose influence
/// area is not known in closed form are skipped, which can only add gaps.
///
/// For `e > 0` the nef cone ends at `lambda = 1/sqrt(e)`; the sweep uses the
/// larger bound `1`.
pub fn coverage_check(
    s: &SurfaceModel,
    x: PointStratum,
    lambda_max: &Rational,
    n_max: u64,
    opts: &CoverageOptions,
) -> Result<Vec<(Rational, Rational)>> {
    if s.kind == SurfaceKind::SemistableGeneral {
        return Err(Error::CoverageUnknown(s.to_string()));
    }
    let cap = if s.e > 0 { lambda_max.clone().min(int(1)) } else { lambda_max.clone() };
    let mut intervals: Vec<(Rational, ExtendedRational)> = Vec::new();
    for c in catalog(s, x, n_max)? {
        if opts.exclude.contains(&c.name) {
            continue;
        }
        match influence(&c, s) {
            Ok(i) => intervals.push((i.lower, i.upper)),
            Err(Error::UnknownInfluence(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if opts.include_tail {
        if let Some(t) = family_tail(s, x, n_max)? {
            intervals.push((t.lower, t.upper));
        }
    }
    intervals.sort();
    let mut gaps = Vec::new();
    let mut reach = ExtendedRational::Finite(Rational::zero());
    for (lo, hi) in intervals {
        let covered_to = match &reach {
            ExtendedRational::PlusInfinity => break,
            ExtendedRational::Finite(r) => r.clone(),
        };
        if covered_to >= cap {
            break;
        }
        if lo > covered_to {
            gaps.push((covered_to, lo.clone().min(cap.clone())));
        }
        if hi > reach {
            reach = hi;
        }
    }
    if let ExtendedRational::Finite(r) = reach {
        if r < cap {
            gaps.push((r, cap));
        }
    }
    gaps.retain(|(lo, hi)| lo < hi);
    Ok(gaps)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransformReport {
    pub checked: usize,
    pub mismatches: Vec<String>,
}

/// Transforms `B_k` (`k <= k_max`) and `C_n` (`n <= n_max`) from the
/// decomposable `e = 0` surfaces to `S_{-1}` and compares classes,
/// multiplicities, influence areas and the defect `C^2 - m^2` with the
/// `S_{-1}` catalog.
pub fn transform_consistency(k_max: u64, n_max: u64) -> TransformReport {
    let sm1 = SurfaceModel::ell_sm1();
    let mut pairs: Vec<(ExceptionalCurve, SurfaceModel, ExceptionalCurve)> = Vec::new();
    for k in 2..=k_max {
        pairs.push((ExceptionalCurve::b_k(k), SurfaceModel::ell_dec(Torsion::Torsion(k)), ExceptionalCurve::bp_k(k)));
    }
    for n in 1..=n_max {
        pairs.push((ExceptionalCurve::c_n(n), SurfaceModel::ell_dec(Torsion::NonTorsion), ExceptionalCurve::cp_n(n)));
    }
    let mut report = TransformReport::default();
    for (src, src_surface, want) in pairs {
        report.checked += 1;
        let mut fail = |what: &str| report.mismatches.push(format!("{} -> {}: {what}", src.name, want.name));
        match elm_curve(&src.cls, src.mult, 0, -1) {
            Ok((cls, m)) => {
                if cls != want.cls || m != want.mult {
                    fail(&format!("got {cls} mult {m}"));
                }
                if exceptional_defect(&cls, m, -1) != exceptional_defect(&src.cls, src.mult, 0) {
                    fail("defect changed");
                }
            }
            Err(e) => fail(&e.to_string()),
        }
        let mapped = influence(&src, &src_surface).and_then(|i| elm_influence(&i));
        match (mapped, influence(&want, &sm1)) {
            (Ok(got), Ok(expect)) if got == expect => {}
            (got, expect) => fail(&format!("influence {got:?} vs {expect:?}")),
        }
    }
    report
}

/// Which multiplicity bounds the feasibility grid applies. The bound
/// `m <= D.f` is always applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityConstraints {
    /// Restrict classes to those numerically allowed for irreducible curves.
    pub class_rules: bool,
    /// `m (m - 1) <= 2 (k - 1)(l - k e / 2)`.
    pub cota: bool,
    /// `m <= (l - k e / 2) + k / 2`.
    pub simple: bool,
    /// `D.C >= m mult(C)` for every listed curve `C` of a different class.
    pub catalog: Vec<ExceptionalCurve>,
}

impl FeasibilityConstraints {
    pub fn all(s: &SurfaceModel, x: PointStratum, depth: u64) -> Result<Self> {
        Ok(FeasibilityConstraints { class_rules: true, cota: true, simple: true, catalog: catalog(s, x, depth)? })
    }

    pub fn class_rules_only() -> Self {
        FeasibilityConstraints { class_rules: true, cota: false, simple: false, catalog: Vec::new() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.class_rules || self.cota || self.simple || !self.catalog.is_empty() {
            Ok(())
        } else {
            Err(Error::NoConstraints)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleMin {
    pub value: Rational,
    /// `(k, l, m)`: class `k X0 + l f` with multiplicity `m`.
    pub argmin: (i64, i64, u64),
}

// q = num / den with den > 0
#[derive(Clone, Copy)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn lt(self, o: Frac) -> bool {
        self.num * o.den < o.num * self.den
    }
}

fn feasible_class(k: i128, l: i128, e: i128) -> bool {
    if (k, l) == (1, 0) || (k, l) == (0, 1) {
        return true;
    }
    if e > 0 {
        k > 0 && l > k * e
    } else if k == 1 {
        l >= 0
    } else {
        k > 1 && 2 * l - k * e >= 0
    }
}

/// Largest `m` allowed for `D = (k, l)`, or `None` when no `m >= 1` is.
fn max_mult(k: i128, l: i128, e: i128, cons: &FeasibilityConstraints, cat: &[(i128, i128, i128)]) -> Option<i128> {
    let mut m = k;
    let two_t = 2 * l - k * e;
    if cons.cota && k >= 2 {
        let f = (k - 1) * two_t;
        let cap = if f < 0 { 0 } else { (Roots::sqrt(&(4 * f + 1)) + 1) / 2 };
        m = m.min(cap);
    }
    if cons.simple && k >= 2 {
        m = m.min(Integer::div_floor(&(two_t + k), &2));
    }
    for &(ck, cl, cm) in cat {
        if (ck, cl) == (k, l) {
            continue;
        }
        let dc = -k * ck * e + k * cl + ck * l;
        m = m.min(Integer::div_floor(&dc, &cm));
    }
    (m >= 1).then_some(m)
}

/// Exact minimum of `A.D / m` over integer triples `(k, l, m)` with
/// `1 <= k <= k_max` and `m` at most every enabled bound, together with the
/// fibre row `(0, 1, 1)`. Ties go to the lexicographically smallest triple.
///
/// For fixed `k`, `A.D` grows with `l` and `m <= k`, so `l` stops once
/// `A.D / k` reaches the running minimum.
pub fn feasible_min(
    s: &SurfaceModel,
    x: PointStratum,
    a: &DivisorClass,
    k_max: u64,
    cons: &FeasibilityConstraints,
    exec: Execution,
) -> Result<FeasibleMin> {
    s.ensure_admissible(x)?;
    cons.validate()?;
    if !is_ample(a, s) {
        return Err(Error::LemmaPrecondition("ample A"));
    }
    // Clear denominators; the minimiser is unchanged and the value rescales.
    let den = a.a.denom().lcm(a.b.denom());
    let scaled = a.scale(&Rational::from_integer(den.clone()));
    let to_i = |r: &Rational| r.to_integer().to_i128().expect("class fits in i128");
    let (aa, ab, e) = (to_i(&scaled.a), to_i(&scaled.b), s.e as i128);
    let cat: Vec<(i128, i128, i128)> = cons
        .catalog
        .iter()
        .map(|c| (to_i(&c.cls.a), to_i(&c.cls.b), c.mult as i128))
        .collect();
    let pair = |k: i128, l: i128| -aa * k * e + aa * l + k * ab;
    let fibre = Frac { num: aa, den: 1 };

    let ks: Vec<i128> = (1..=k_max as i128).collect();
    let rows = par::map(exec, &ks, |&k| {
        let l_start = if e > 0 {
            if cons.class_rules && k == 1 { 0 } else if cons.class_rules { k * e + 1 } else { 0 }
        } else {
            Integer::div_ceil(&(k * e), &2)
        };
        let mut best = fibre;
        let mut arg: Option<(i128, i128, i128)> = None;
        let mut l = l_start;
        loop {
            let ad = pair(k, l);
            if !(Frac { num: ad, den: k }).lt(best) {
                break;
            }
            if !cons.class_rules || feasible_class(k, l, e) {
                if let Some(m) = max_mult(k, l, e, cons, &cat) {
                    let q = Frac { num: ad, den: m };
                    if q.lt(best) {
                        best = q;
                        arg = Some((k, l, m));
                    }
                }
            }
            l += 1;
        }
        arg.map(|t| (best, t))
    });

    let mut best = fibre;
    let mut arg = (0i128, 1i128, 1i128);
    for (q, t) in rows.into_iter().flatten() {
        // rows arrive in increasing k, so a strict improvement keeps ties lexicographic
        if q.lt(best) {
            best = q;
            arg = t;
        }
    }
    let value = Rational::new(best.num.into(), (best.den * den_to_i128(&den)).into());
    Ok(FeasibleMin { value, argmin: (arg.0 as i64, arg.1 as i64, arg.2 as u64) })
}

fn den_to_i128(d: &num_bigint::BigInt) -> i128 {
    let v = d.to_i128().expect("denominator fits in i128");
    debug_assert!(v.is_positive());
    v
}
