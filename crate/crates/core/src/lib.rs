//! Exact Seshadri constants of ample line bundles on geometrically ruled
//! surfaces.
//!
//! Classes live in `Num(S) = Z X0 + Z f`. For each surface kind and point
//! stratum [`seshadri::compute`] evaluates the closed form and names the
//! curve attaining it. [`oracle`] re-derives the same numbers by brute force
//! over the catalogs of exceptional curves in [`catalog`].

pub mod catalog;
pub mod divisor;
pub mod error;
pub mod exactnum;
pub mod oracle;
pub mod par;
pub mod render;
pub mod seshadri;
pub mod surface;
pub mod transform;

pub use catalog::{CurveName, ExceptionalCurve};
pub use divisor::DivisorClass;
pub use error::{Error, Result};
pub use exactnum::{ExactValue, ExtendedRational, Rational};
pub use par::Execution;
pub use seshadri::{compute, SeshadriResult, SeshadriValue};
pub use surface::{PointStratum, SurfaceKind, SurfaceModel, Torsion};
