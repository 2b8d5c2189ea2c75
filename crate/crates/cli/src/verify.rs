//! Verification suites: the closed forms checked against the brute-force
//! oracles. Each suite yields a [`Report`]; a suite passes iff it records no
//! failures.

use serde_json::{json, Map, Value};

use seshadri_core::catalog::{catalog, influence, q_value};
use seshadri_core::divisor::{is_ample, is_nef};
use seshadri_core::exactnum::{cmp, int, ratio};
use seshadri_core::oracle::{
    catalog_min_auto, coverage_check, feasible_min, transform_consistency, CoverageOptions,
    FeasibilityConstraints,
};
use seshadri_core::par::{self, Execution};
use seshadri_core::{
    compute, DivisorClass, ExactValue, ExtendedRational, PointStratum, Rational, SeshadriValue,
    SurfaceModel, Torsion,
};

/// Failures listed in full in a report; the count is always complete.
const LISTED_FAILURES: usize = 20;

/// Highest torsion order and stratum depth in the exact-case list.
const TORSION_MAX: u64 = 8;

#[derive(Debug)]
pub struct Report {
    pub suite: &'static str,
    pub params: Map<String, Value>,
    pub checked: usize,
    pub failures: Vec<String>,
    pub diagnostics: Map<String, Value>,
}

impl Report {
    fn new(suite: &'static str, params: Value) -> Self {
        let params = match params {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Report { suite, params, checked: 0, failures: Vec::new(), diagnostics: Map::new() }
    }

    fn absorb(&mut self, (checked, failures): (usize, Vec<String>)) {
        self.checked += checked;
        self.failures.extend(failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let listed = &self.failures[..self.failures.len().min(LISTED_FAILURES)];
        json!({
            "suite": self.suite,
            "passed": self.passed(),
            "params": self.params,
            "checked": self.checked,
            "failure_count": self.failures.len(),
            "failures": listed,
            "diagnostics": self.diagnostics,
        })
    }
}

/// Every exact-case surface kind and each of its strata, with torsion
/// orders up to [`TORSION_MAX`].
pub fn exact_cases() -> Vec<(SurfaceModel, PointStratum)> {
    let mut surfaces = vec![
        SurfaceModel::unstable(1, 1),
        SurfaceModel::unstable(1, 2),
        SurfaceModel::unstable(1, 3),
        SurfaceModel::rational(0),
        SurfaceModel::rational(1),
        SurfaceModel::rational(2),
        SurfaceModel::product(1),
        SurfaceModel::dec2tor(2),
        SurfaceModel::ell_dec(Torsion::NonTorsion),
    ];
    surfaces.extend((2..=TORSION_MAX).map(|k| SurfaceModel::ell_dec(Torsion::Torsion(k))));
    surfaces.push(SurfaceModel::ell_s0());
    surfaces.push(SurfaceModel::ell_sm1());
    surfaces
        .into_iter()
        .flat_map(|s| {
            let strata = s.strata(TORSION_MAX).expect("exact kinds list their strata");
            strata.into_iter().map(move |x| (s, x))
        })
        .collect()
}

/// Nef integer classes with `a in [0, max]` and `b in [ceil(ae/2) - 5, max]`.
fn nef_grid(s: &SurfaceModel, max: i64) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    for a in 0..=max {
        let lo = (a * s.e).div_euclid(2) + (a * s.e).rem_euclid(2) - 5;
        out.extend((lo..=max).map(|b| DivisorClass::from_ints(a, b)).filter(|c| is_nef(c, s)));
    }
    out
}

/// `rows` ample classes in each row `a = 1..=rows`, starting at
/// `b = floor(ae/2) - 1`.
fn ample_grid(s: &SurfaceModel, rows: i64) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    for a in 1..=rows {
        let mut b = (a * s.e).div_euclid(2) - 1;
        let mut found = 0;
        while found < rows {
            let c = DivisorClass::from_ints(a, b);
            if is_ample(&c, s) {
                out.push(c);
                found += 1;
            }
            b += 1;
        }
    }
    out
}

fn exact_value(s: &SurfaceModel, x: PointStratum, a: &DivisorClass) -> Result<Rational, String> {
    match compute(s, x, a) {
        Ok(r) => match r.value {
            SeshadriValue::Exact(v) => Ok(v),
            other => Err(format!("{s} {x} {a}: not exact: {other}")),
        },
        Err(e) => Err(format!("{s} {x} {a}: {e}")),
    }
}

fn over_cases<F>(f: F) -> Vec<(usize, Vec<String>)>
where
    F: Fn(&SurfaceModel, PointStratum) -> (usize, Vec<String>) + Sync + Send,
{
    par::map(Execution::default(), &exact_cases(), |(s, x)| f(s, *x))
}

/// Closed form equals the catalog minimum on every nef class of the grid,
/// and the witness attains the value.
pub fn catalog_min(grid: i64) -> Report {
    let mut report = Report::new("catalog-min", json!({ "grid": grid }));
    for part in over_cases(|s, x| {
        let classes = nef_grid(s, grid);
        let mut failures = Vec::new();
        for a in &classes {
            let formula = match compute(s, x, a) {
                Ok(r) => r,
                Err(e) => {
                    failures.push(format!("{s} {x} {a}: {e}"));
                    continue;
                }
            };
            let (best, _) = match catalog_min_auto(s, x, a) {
                Ok(m) => m,
                Err(e) => {
                    failures.push(format!("{s} {x} {a}: oracle: {e}"));
                    continue;
                }
            };
            let agrees = match &formula.value {
                SeshadriValue::Exact(v) => {
                    cmp(&ExactValue::Rat(v.clone()), &best).is_eq()
                        && formula.witness.as_ref().is_none_or(|w| q_value(w, a, s.e) == *v)
                }
                SeshadriValue::Interval { .. } => false,
            };
            if !agrees {
                failures.push(format!("{s} {x} {a}: formula {} vs oracle {best}", formula.value));
            }
        }
        (classes.len(), failures)
    }) {
        report.absorb(part);
    }
    report
}

/// Transformed `e = 0` curves and influence areas match the `S_{-1}` catalog.
pub fn transform(k_max: u64, n_max: u64) -> Report {
    let mut report = Report::new("transform", json!({ "kmax": k_max, "nmax": n_max }));
    let r = transform_consistency(k_max, n_max);
    report.absorb((r.checked, r.mismatches));
    report
}

/// Influence areas cover `[0, lambda_max]` for every exact case.
pub fn coverage(lambda_max: i64, n_max: u64, include_tail: bool) -> Report {
    let mut report = Report::new(
        "coverage",
        json!({ "lmax": lambda_max, "nmax": n_max, "include_tail": include_tail }),
    );
    let opts = CoverageOptions { include_tail, ..CoverageOptions::default() };
    for part in over_cases(|s, x| match coverage_check(s, x, &int(lambda_max), n_max, &opts) {
        Ok(gaps) if gaps.is_empty() => (1, Vec::new()),
        Ok(gaps) => {
            let listed: Vec<String> = gaps.iter().map(|(l, h)| format!("({l}, {h})")).collect();
            (1, vec![format!("{s} {x}: gaps {}", listed.join(" "))])
        }
        Err(e) => (1, vec![format!("{s} {x}: {e}")]),
    }) {
        report.absorb(part);
    }
    report
}

/// At each finite endpoint `lambda` of a known influence area, the curve's
/// `q` equals `sqrt(A^2) = 2 lambda t` on the class with `rho = lambda^2` and
/// shifted coordinate `t`, and the closed form equals the catalog minimum.
/// Endpoints outside the nef cone are skipped.
pub fn continuity(n_max: u64) -> Report {
    let mut report = Report::new("continuity", json!({ "nmax": n_max }));
    let samples = [int(1), ratio(2, 3), ratio(5, 2)];
    for part in over_cases(|s, x| {
        let (mut checked, mut failures) = (0, Vec::new());
        let curves = match catalog(s, x, n_max) {
            Ok(c) => c,
            Err(e) => return (1, vec![format!("{s} {x}: {e}")]),
        };
        for c in &curves {
            let Ok(area) = influence(c, s) else { continue };
            let mut ends = vec![area.lower.clone()];
            if let ExtendedRational::Finite(u) = &area.upper {
                ends.push(u.clone());
            }
            for lambda in ends.into_iter().filter(|l| *l > Rational::default()) {
                for t in &samples {
                    let a_coef = int(2) * &lambda * &lambda * t;
                    let a = DivisorClass::new(a_coef.clone(), t + &a_coef * int(s.e) / int(2));
                    // for e > 0 the endpoint can lie past the nef boundary
                    if !is_nef(&a, s) {
                        continue;
                    }
                    checked += 1;
                    let edge = int(2) * &lambda * t;
                    let q = q_value(c, &a, s.e);
                    if q != edge {
                        failures.push(format!("{s} {x} {} at lambda {lambda}: q {q} vs {edge}", c.name));
                    }
                    let oracle = catalog_min_auto(s, x, &a).map(|(v, _)| v);
                    match (exact_value(s, x, &a), oracle) {
                        (Ok(v), Ok(best)) if cmp(&ExactValue::Rat(v.clone()), &best).is_eq() => {
                            if v > edge {
                                failures.push(format!("{s} {x} {a}: {v} exceeds sqrt(A^2) {edge}"));
                            }
                        }
                        (Ok(v), Ok(best)) => failures.push(format!("{s} {x} {a}: formula {v} vs oracle {best}")),
                        (Err(e), _) => failures.push(e),
                        (_, Err(e)) => failures.push(format!("{s} {x} {a}: oracle: {e}")),
                    }
                }
            }
        }
        (checked, failures)
    }) {
        report.absorb(part);
    }
    report
}

/// The feasibility minimum never exceeds the closed form and never decreases
/// as constraint families are added. The equality margin is reported only.
pub fn feasible(k_max: u64, depth: u64, grid: i64) -> Report {
    let mut report =
        Report::new("feasible", json!({ "kmax": k_max, "depth": depth, "grid": grid }));
    let cases = exact_cases();
    let per_case = par::map(Execution::default(), &cases, |(s, x)| {
        let (s, x) = (s, *x);
        let mut failures = Vec::new();
        let mut equal = 0usize;
        let mut margin = Rational::default();
        let all = match FeasibilityConstraints::all(s, x, depth) {
            Ok(c) => c,
            Err(e) => return (0, vec![format!("{s} {x}: {e}")], 0, margin),
        };
        let base = FeasibilityConstraints::class_rules_only();
        let ladder = [
            base.clone(),
            FeasibilityConstraints { cota: true, ..base.clone() },
            FeasibilityConstraints { cota: true, simple: true, ..base },
            all,
        ];
        let classes = ample_grid(s, grid);
        for a in &classes {
            let eps = match exact_value(s, x, a) {
                Ok(v) => v,
                Err(e) => {
                    failures.push(e);
                    continue;
                }
            };
            let values: Result<Vec<_>, _> = ladder
                .iter()
                .map(|cons| feasible_min(s, x, a, k_max, cons, Execution::Sequential))
                .collect();
            let values = match values {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("{s} {x} {a}: {e}"));
                    continue;
                }
            };
            if values.windows(2).any(|w| w[0].value > w[1].value) {
                failures.push(format!("{s} {x} {a}: not monotone under added constraints"));
            }
            let best = &values[ladder.len() - 1];
            if best.value > eps {
                failures.push(format!(
                    "{s} {x} {a}: feasible {} at {:?} exceeds {eps}",
                    best.value, best.argmin
                ));
            } else if best.value == eps {
                equal += 1;
            } else {
                margin = margin.max(&eps - &best.value);
            }
        }
        (classes.len(), failures, equal, margin)
    });
    let mut equal = 0;
    let mut margin = Rational::default();
    for (checked, failures, eq, m) in per_case {
        report.absorb((checked, failures));
        equal += eq;
        margin = margin.max(m);
    }
    report.diagnostics.insert("equal".into(), json!(equal));
    report.diagnostics.insert("largest_margin".into(), json!(margin.to_string()));
    report
}
