#![allow(dead_code)]

use seshadri_core::divisor::is_nef;
use seshadri_core::{DivisorClass, PointStratum, SurfaceModel, Torsion};

/// Every exact-case surface kind with the parameters the acceptance grids use.
pub fn exact_surfaces() -> Vec<SurfaceModel> {
    let mut v = vec![
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
    v.extend((2..=8).map(|k| SurfaceModel::ell_dec(Torsion::Torsion(k))));
    v.push(SurfaceModel::ell_s0());
    v.push(SurfaceModel::ell_sm1());
    v
}

/// `(surface, stratum)` for every stratum of every exact-case kind, with
/// `T_k` for `k <= 8`.
pub fn exact_cases() -> Vec<(SurfaceModel, PointStratum)> {
    exact_surfaces()
        .into_iter()
        .flat_map(|s| s.strata(8).unwrap().into_iter().map(move |x| (s, x)))
        .collect()
}

/// Nef integer classes with `a in [0, a_max]`, `b in [ceil(ae/2) - 5, b_max]`.
pub fn nef_grid(s: &SurfaceModel, a_max: i64, b_max: i64) -> Vec<DivisorClass> {
    let mut out = Vec::new();
    for a in 0..=a_max {
        let b_lo = (a * s.e).div_euclid(2) + (a * s.e).rem_euclid(2) - 5;
        for b in b_lo..=b_max {
            let c = DivisorClass::from_ints(a, b);
            if is_nef(&c, s) {
                out.push(c);
            }
        }
    }
    out
}
