//! Ruled-surface configurations and the point strata the closed forms
//! distinguish.
//!
//! A surface is identified by its base genus, the invariant `e` and a
//! structural kind. Points are identified only by the stratum they lie on.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Torsion order of the line bundle defining a decomposable elliptic surface
/// with `e = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Torsion {
    NonTorsion,
    /// Strict `k`-torsion, `k >= 2`.
    Torsion(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SurfaceKind {
    /// Hirzebruch surface, genus 0, `e >= 0`.
    RationalRuled,
    /// Genus >= 1, `e > 0`.
    UnstablePositiveE,
    /// `X x P^1`, genus >= 1, `e = 0`.
    ProductTrivial,
    /// Genus >= 1, `e <= 0`; only bounds are available in general.
    SemistableGeneral,
    /// Decomposable over a 2-torsion bundle, genus >= 1, `e = 0`.
    Decomposable2Torsion,
    /// Decomposable elliptic ruled surface with `e = 0`.
    EllipticDecomposableE0(Torsion),
    /// The indecomposable elliptic surface `S_0`.
    EllipticIndecomposableE0,
    /// The indecomposable elliptic surface `S_{-1}`.
    EllipticIndecomposableEm1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceModel {
    pub genus: u32,
    pub e: i64,
    pub kind: SurfaceKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointStratum {
    OnX0,
    OnX1,
    Generic,
    /// On an irreducible `n`-secant curve `C = nX0 + (ne/2) f` with `C^2 = 0`.
    OnNSecantZero(u64),
    OnT1,
    OnTk(u64),
    GenericNotT,
}

impl SurfaceModel {
    pub fn rational(e: i64) -> Self {
        SurfaceModel { genus: 0, e, kind: SurfaceKind::RationalRuled }
    }

    pub fn unstable(genus: u32, e: i64) -> Self {
        SurfaceModel { genus, e, kind: SurfaceKind::UnstablePositiveE }
    }

    pub fn product(genus: u32) -> Self {
        SurfaceModel { genus, e: 0, kind: SurfaceKind::ProductTrivial }
    }

    pub fn semistable(genus: u32, e: i64) -> Self {
        SurfaceModel { genus, e, kind: SurfaceKind::SemistableGeneral }
    }

    pub fn dec2tor(genus: u32) -> Self {
        SurfaceModel { genus, e: 0, kind: SurfaceKind::Decomposable2Torsion }
    }

    pub fn ell_dec(torsion: Torsion) -> Self {
        SurfaceModel { genus: 1, e: 0, kind: SurfaceKind::EllipticDecomposableE0(torsion) }
    }

    pub fn ell_s0() -> Self {
        SurfaceModel { genus: 1, e: 0, kind: SurfaceKind::EllipticIndecomposableE0 }
    }

    pub fn ell_sm1() -> Self {
        SurfaceModel { genus: 1, e: -1, kind: SurfaceKind::EllipticIndecomposableEm1 }
    }

    /// Every violated kind constraint; empty when the model is valid.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let (g, e) = (self.genus, self.e);
        let mut need = |ok: bool, msg: &str| {
            if !ok {
                out.push(msg.to_string());
            }
        };
        match self.kind {
            SurfaceKind::RationalRuled => {
                need(g == 0, "rational ruled surfaces have genus 0");
                need(e >= 0, "rational ruled surfaces have e ≥ 0");
            }
            SurfaceKind::UnstablePositiveE => {
                need(g >= 1, "genus ≥ 1 required");
                need(e > 0, "unstable surfaces have e > 0");
            }
            SurfaceKind::ProductTrivial | SurfaceKind::Decomposable2Torsion => {
                need(g >= 1, "genus ≥ 1 required");
                need(e == 0, "e = 0 required");
            }
            SurfaceKind::SemistableGeneral => {
                need(g >= 1, "genus ≥ 1 required");
                need(e <= 0, "semi-stable surfaces have e ≤ 0");
            }
            SurfaceKind::EllipticDecomposableE0(t) => {
                need(g == 1, "elliptic surfaces have genus 1");
                need(e == 0, "e = 0 required");
                if let Torsion::Torsion(k) = t {
                    need(k >= 2, "k ≥ 2 required");
                }
            }
            SurfaceKind::EllipticIndecomposableE0 => {
                need(g == 1, "elliptic surfaces have genus 1");
                need(e == 0, "e = 0 required");
            }
            SurfaceKind::EllipticIndecomposableEm1 => {
                need(g == 1, "elliptic surfaces have genus 1");
                need(e == -1, "e = -1 required");
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidSurface(v))
        }
    }

    /// False only for the bounds-only kind.
    pub fn is_exact_kind(&self) -> bool {
        self.kind != SurfaceKind::SemistableGeneral
    }

    /// Whether `x` is a stratum the theorems distinguish on this surface.
    pub fn admits(&self, x: PointStratum) -> bool {
        use PointStratum::*;
        use SurfaceKind::*;
        match (self.kind, x) {
            (RationalRuled, OnX0) => self.e > 0,
            (RationalRuled, Generic) => true,
            (UnstablePositiveE, OnX0 | Generic) => true,
            (ProductTrivial, Generic) => true,
            (SemistableGeneral, Generic) => true,
            (SemistableGeneral, OnX0) => self.e == 0,
            (SemistableGeneral, OnNSecantZero(n)) => n >= 2 && (n as i64 * self.e) % 2 == 0,
            (Decomposable2Torsion | EllipticDecomposableE0(_), OnX0 | OnX1 | Generic) => true,
            (EllipticIndecomposableE0, OnX0 | Generic) => true,
            (EllipticIndecomposableEm1, OnT1 | GenericNotT) => true,
            (EllipticIndecomposableEm1, OnTk(k)) => k >= 2,
            _ => false,
        }
    }

    pub fn ensure_admissible(&self, x: PointStratum) -> Result<()> {
        self.validate()?;
        if self.admits(x) {
            Ok(())
        } else {
            Err(Error::InadmissibleStratum { surface: self.to_string(), stratum: x.to_string() })
        }
    }

    /// The strata distinguished on this surface. Families indexed by `n` or
    /// `k` (n-secant curves, `T_k`) are listed for indices `2..=depth`.
    pub fn strata(&self, depth: u64) -> Result<Vec<PointStratum>> {
        use PointStratum::*;
        self.validate()?;
        let list = match self.kind {
            SurfaceKind::RationalRuled if self.e > 0 => vec![OnX0, Generic],
            SurfaceKind::RationalRuled | SurfaceKind::ProductTrivial => vec![Generic],
            SurfaceKind::UnstablePositiveE | SurfaceKind::EllipticIndecomposableE0 => {
                vec![OnX0, Generic]
            }
            SurfaceKind::Decomposable2Torsion | SurfaceKind::EllipticDecomposableE0(_) => {
                vec![OnX0, OnX1, Generic]
            }
            SurfaceKind::SemistableGeneral => {
                let mut v = if self.e == 0 { vec![OnX0, Generic] } else { vec![Generic] };
                v.extend((2..=depth).map(OnNSecantZero).filter(|&x| self.admits(x)));
                v
            }
            SurfaceKind::EllipticIndecomposableEm1 => {
                let mut v = vec![OnT1];
                v.extend((2..=depth).map(OnTk));
                v.push(GenericNotT);
                v
            }
        };
        Ok(list)
    }
}

/// The surface obtained from `S_{-1}` by an elementary transformation centred
/// at a point of stratum `x`.
pub fn transform_surface(s: &SurfaceModel, x: PointStratum) -> Result<SurfaceModel> {
    s.ensure_admissible(x)?;
    let out = match (s.kind, x) {
        (SurfaceKind::EllipticIndecomposableEm1, PointStratum::OnT1) => SurfaceModel::ell_s0(),
        (SurfaceKind::EllipticIndecomposableEm1, PointStratum::OnTk(k)) => {
            SurfaceModel::ell_dec(Torsion::Torsion(k))
        }
        (SurfaceKind::EllipticIndecomposableEm1, PointStratum::GenericNotT) => {
            SurfaceModel::ell_dec(Torsion::NonTorsion)
        }
        _ => {
            return Err(Error::InadmissibleStratum {
                surface: s.to_string(),
                stratum: x.to_string(),
            })
        }
    };
    Ok(out)
}

impl fmt::Display for SurfaceModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g, e) = (self.genus, self.e);
        match self.kind {
            SurfaceKind::RationalRuled => write!(f, "rational:e={e}"),
            SurfaceKind::UnstablePositiveE => write!(f, "unstable:g={g},e={e}"),
            SurfaceKind::ProductTrivial => write!(f, "product:g={g}"),
            SurfaceKind::SemistableGeneral => write!(f, "semistable:g={g},e={e}"),
            SurfaceKind::Decomposable2Torsion => write!(f, "dec2tor:g={g}"),
            SurfaceKind::EllipticDecomposableE0(Torsion::NonTorsion) => {
                f.write_str("ell-dec:nontorsion")
            }
            SurfaceKind::EllipticDecomposableE0(Torsion::Torsion(k)) => {
                write!(f, "ell-dec:torsion={k}")
            }
            SurfaceKind::EllipticIndecomposableE0 => f.write_str("ell-S0"),
            SurfaceKind::EllipticIndecomposableEm1 => f.write_str("ell-Sm1"),
        }
    }
}

fn parse_params(body: &str) -> Result<Vec<(&str, i64)>> {
    body.split(',')
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {kv:?}")))?;
            let v = v
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer for {k}: {v:?}")))?;
            Ok((k.trim(), v))
        })
        .collect()
}

fn param(params: &[(&str, i64)], key: &str, spec: &str) -> Result<i64> {
    params
        .iter()
        .find(|(k, _)| *k == key)
        .map(|&(_, v)| v)
        .ok_or_else(|| Error::Parse(format!("surface {spec:?} is missing {key}=")))
}

fn to_genus(g: i64) -> Result<u32> {
    u32::try_from(g).map_err(|_| Error::Parse(format!("genus must be a nonnegative integer, got {g}")))
}

impl FromStr for SurfaceModel {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let (head, body) = spec.split_once(':').unwrap_or((spec, ""));
        let surface = match (head, body) {
            ("ell-S0", "") => SurfaceModel::ell_s0(),
            ("ell-Sm1", "") => SurfaceModel::ell_sm1(),
            ("ell-dec", "nontorsion") => SurfaceModel::ell_dec(Torsion::NonTorsion),
            ("ell-dec", b) => {
                let k = param(&parse_params(b)?, "torsion", spec)?;
                let k = u64::try_from(k)
                    .map_err(|_| Error::Parse(format!("torsion order must be positive, got {k}")))?;
                SurfaceModel::ell_dec(Torsion::Torsion(k))
            }
            ("rational", b) => SurfaceModel::rational(param(&parse_params(b)?, "e", spec)?),
            ("unstable", b) => {
                let p = parse_params(b)?;
                SurfaceModel::unstable(to_genus(param(&p, "g", spec)?)?, param(&p, "e", spec)?)
            }
            ("product", b) => SurfaceModel::product(to_genus(param(&parse_params(b)?, "g", spec)?)?),
            ("semistable", b) => {
                let p = parse_params(b)?;
                SurfaceModel::semistable(to_genus(param(&p, "g", spec)?)?, param(&p, "e", spec)?)
            }
            ("dec2tor", b) => SurfaceModel::dec2tor(to_genus(param(&parse_params(b)?, "g", spec)?)?),
            _ => return Err(Error::Parse(format!("unknown surface spec {spec:?}"))),
        };
        Ok(surface)
    }
}

impl fmt::Display for PointStratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointStratum::OnX0 => f.write_str("X0"),
            PointStratum::OnX1 => f.write_str("X1"),
            PointStratum::Generic => f.write_str("generic"),
            PointStratum::OnNSecantZero(n) => write!(f, "nsec={n}"),
            PointStratum::OnT1 => f.write_str("T1"),
            PointStratum::OnTk(k) => write!(f, "Tk={k}"),
            PointStratum::GenericNotT => f.write_str("notT"),
        }
    }
}

impl FromStr for PointStratum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let index = |v: &str| {
            v.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad stratum index in {s:?}")))
        };
        match s.trim() {
            "X0" => Ok(PointStratum::OnX0),
            "X1" => Ok(PointStratum::OnX1),
            "generic" => Ok(PointStratum::Generic),
            "T1" => Ok(PointStratum::OnT1),
            "notT" => Ok(PointStratum::GenericNotT),
            other => {
                if let Some(n) = other.strip_prefix("nsec=") {
                    Ok(PointStratum::OnNSecantZero(index(n)?))
                } else if let Some(k) = other.strip_prefix("Tk=") {
                    Ok(PointStratum::OnTk(index(k)?))
                } else {
                    Err(Error::Parse(format!("unknown stratum {s:?}")))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use PointStratum::*;

    #[test]
    fn validate_examples() {
        let bad = SurfaceModel::ell_dec(Torsion::Torsion(1));
        assert_eq!(bad.violations(), vec!["k ≥ 2 required".to_string()]);
        let bad = SurfaceModel::rational(-1);
        assert_eq!(bad.violations(), vec!["rational ruled surfaces have e ≥ 0".to_string()]);
        assert!(SurfaceModel::ell_sm1().validate().is_ok());
        assert!(SurfaceModel { genus: 2, ..SurfaceModel::ell_sm1() }.validate().is_err());
        assert!(SurfaceModel::unstable(1, 0).validate().is_err());
        assert!(SurfaceModel::semistable(2, 1).validate().is_err());
    }

    #[test]
    fn strata_examples() {
        assert_eq!(
            SurfaceModel::ell_dec(Torsion::NonTorsion).strata(4).unwrap(),
            vec![OnX0, OnX1, Generic]
        );
        assert_eq!(SurfaceModel::unstable(1, 2).strata(4).unwrap(), vec![OnX0, Generic]);
        assert_eq!(
            SurfaceModel::semistable(2, -2).strata(4).unwrap(),
            vec![Generic, OnNSecantZero(2), OnNSecantZero(3), OnNSecantZero(4)]
        );
        // odd n needs ne even
        assert_eq!(
            SurfaceModel::semistable(2, -1).strata(5).unwrap(),
            vec![Generic, OnNSecantZero(2), OnNSecantZero(4)]
        );
        assert_eq!(SurfaceModel::product(3).strata(4).unwrap(), vec![Generic]);
        assert_eq!(SurfaceModel::rational(0).strata(4).unwrap(), vec![Generic]);
        assert_eq!(
            SurfaceModel::ell_sm1().strata(3).unwrap(),
            vec![OnT1, OnTk(2), OnTk(3), GenericNotT]
        );
    }

    #[test]
    fn strata_are_admissible() {
        let surfaces = [
            SurfaceModel::rational(0),
            SurfaceModel::rational(2),
            SurfaceModel::unstable(2, 3),
            SurfaceModel::product(1),
            SurfaceModel::semistable(3, -3),
            SurfaceModel::semistable(1, 0),
            SurfaceModel::dec2tor(2),
            SurfaceModel::ell_dec(Torsion::Torsion(4)),
            SurfaceModel::ell_s0(),
            SurfaceModel::ell_sm1(),
        ];
        for s in surfaces {
            let strata = s.strata(6).unwrap();
            assert!(!strata.is_empty());
            assert!(strata.iter().all(|&x| s.admits(x)), "{s}");
        }
        assert!(!SurfaceModel::ell_s0().admits(OnX1));
        assert!(!SurfaceModel::ell_sm1().admits(OnTk(1)));
        assert!(!SurfaceModel::product(1).admits(OnT1));
    }

    #[test]
    fn transform_examples() {
        let s = SurfaceModel::ell_sm1();
        assert_eq!(transform_surface(&s, OnT1).unwrap(), SurfaceModel::ell_s0());
        assert_eq!(
            transform_surface(&s, OnTk(5)).unwrap(),
            SurfaceModel::ell_dec(Torsion::Torsion(5))
        );
        assert_eq!(
            transform_surface(&s, GenericNotT).unwrap(),
            SurfaceModel::ell_dec(Torsion::NonTorsion)
        );
        assert!(transform_surface(&s, Generic).is_err());
        assert!(transform_surface(&SurfaceModel::ell_s0(), OnT1).is_err());
    }

    #[test]
    fn spec_strings_round_trip() {
        for spec in [
            "rational:e=2",
            "unstable:g=1,e=3",
            "product:g=2",
            "semistable:g=2,e=-1",
            "dec2tor:g=2",
            "ell-dec:nontorsion",
            "ell-dec:torsion=5",
            "ell-S0",
            "ell-Sm1",
        ] {
            let s: SurfaceModel = spec.parse().unwrap();
            assert_eq!(s.to_string(), spec);
        }
        for spec in ["X0", "X1", "generic", "nsec=3", "T1", "Tk=4", "notT"] {
            let x: PointStratum = spec.parse().unwrap();
            assert_eq!(x.to_string(), spec);
        }
        assert!("unstable:g=1".parse::<SurfaceModel>().is_err());
        assert!("hirzebruch".parse::<SurfaceModel>().is_err());
        assert!("Tk=x".parse::<PointStratum>().is_err());
    }
}
