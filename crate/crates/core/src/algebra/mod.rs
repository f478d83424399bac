//! Field and curve arithmetic for the signing curve, the two auxiliary curves
//! over `F_q`, and their lift over `F_{q^2}`, plus the curve profiles that
//! bundle all parameters.

pub mod edwards;
pub mod field;
pub mod fq2;
pub mod profile;
pub mod weierstrass;

pub use edwards::{EdPoint, EdwardsCurve};
pub use field::FieldElement;
pub use fq2::{Fq2Element, QuadExt};
pub use profile::{CurveProfile, HashMode, ProfileConfig, PurifyParams};
pub use weierstrass::{CurveField, WPoint, WeierstrassCurve};

/// Point on the auxiliary curve over `F_{q^2}`.
pub type AuxPoint = WPoint<Fq2Element>;
/// Point on one of the auxiliary curves over `F_q`.
pub type BasePoint = WPoint<FieldElement>;
