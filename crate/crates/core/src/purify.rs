//! Deterministic verifiable nonce generation over the auxiliary curves: the
//! splitting isomorphism between the lifted curve and the curve/twist pair,
//! domain-separated hash-to-curve, the x0-extraction map into `Z_q`, and the
//! nonce derivation itself.

use num_bigint::BigUint;
use sha2::{Digest as _, Sha512};

use crate::algebra::{
    AuxPoint, BasePoint, Fq2Element, FieldElement, PurifyParams, QuadExt, WPoint,
};
use crate::error::Error;
use crate::wire;

use std::sync::Arc;

/// A lifted point split into its curve and twist components.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitPoint {
    pub p1: BasePoint,
    pub p2: BasePoint,
}

/// Embeds a point of the base-field curve into the lifted curve (coordinates
/// are already in `F_q`).
pub fn lift_base(ext: &Arc<QuadExt>, pt: &BasePoint) -> AuxPoint {
    match pt {
        WPoint::Infinity => WPoint::Infinity,
        WPoint::Affine { x, y } => WPoint::Affine {
            x: Fq2Element::from_base(x.clone(), ext.clone()),
            y: Fq2Element::from_base(y.clone(), ext.clone()),
        },
    }
}

/// Inverse of [`lift_base`]; fails when a coordinate leaves the base field.
pub fn project_base(pt: &AuxPoint) -> Result<BasePoint, Error> {
    match pt {
        WPoint::Infinity => Ok(WPoint::Infinity),
        WPoint::Affine { x, y } => {
            if !x.is_base() || !y.is_base() {
                return Err(Error::NotOnCurve);
            }
            Ok(WPoint::Affine { x: x.c0().clone(), y: y.c0().clone() })
        }
    }
}

/// Maps a twist point (x, y) to the lifted curve via (x/delta, y/(delta*sqrt(delta))).
pub fn twist_point_to_eprime(ext: &Arc<QuadExt>, pt: &BasePoint) -> AuxPoint {
    match pt {
        WPoint::Infinity => WPoint::Infinity,
        WPoint::Affine { x, y } => {
            let delta_inv = ext.delta().invert().expect("delta nonzero");
            let x_lift = Fq2Element::from_base(x.mul(&delta_inv), ext.clone());
            // 1/(delta*sqrt(delta)) = sqrt(delta) / delta^2
            let d2_inv = delta_inv.square();
            let y_lift = Fq2Element::new(
                FieldElement::zero(ext.modulus().clone()),
                y.mul(&d2_inv),
                ext.clone(),
            );
            WPoint::Affine { x: x_lift, y: y_lift }
        }
    }
}

/// Maps a lifted point of the twist component back to the twist curve via
/// (delta*x, delta*sqrt(delta)*y); the result must land in the base field.
pub fn twist_point_from_eprime(ext: &Arc<QuadExt>, pt: &AuxPoint) -> Result<BasePoint, Error> {
    match pt {
        WPoint::Infinity => Ok(WPoint::Infinity),
        WPoint::Affine { x, y } => {
            let delta = ext.delta();
            let x_tw = x.mul_base(delta);
            // delta*sqrt(delta) = (0, delta)
            let dsqrtd = Fq2Element::new(
                FieldElement::zero(ext.modulus().clone()),
                delta.clone(),
                ext.clone(),
            );
            let y_tw = y.mul(&dsqrtd);
            if !x_tw.is_base() || !y_tw.is_base() {
                return Err(Error::NotOnCurve);
            }
            Ok(WPoint::Affine { x: x_tw.c0().clone(), y: y_tw.c0().clone() })
        }
    }
}

/// The splitting isomorphism: CRT-decompose the (cyclic, order q1*q2) lifted
/// group into its order-q1 part, which descends to the base-field curve, and
/// its order-q2 part, which the twist map carries onto the twist curve.
pub fn phi(params: &PurifyParams, pt: &AuxPoint) -> Result<SplitPoint, Error> {
    if !params.eprime().is_on_curve(pt) {
        return Err(Error::NotOnCurve);
    }
    let part1 = params.eprime().mul(params.crt_c1(), pt);
    let part2 = params.eprime().mul(params.crt_c2(), pt);
    Ok(SplitPoint {
        p1: project_base(&part1)?,
        p2: twist_point_from_eprime(params.ext(), &part2)?,
    })
}

/// Inverse isomorphism: lift both components and add them in the big group.
pub fn phi_inv(params: &PurifyParams, split: &SplitPoint) -> Result<AuxPoint, Error> {
    if !params.e1().is_on_curve(&split.p1) || !params.e2().is_on_curve(&split.p2) {
        return Err(Error::NotOnCurve);
    }
    Ok(params.eprime().add(
        &lift_base(params.ext(), &split.p1),
        &twist_point_to_eprime(params.ext(), &split.p2),
    ))
}

const HASH_TO_CURVE_BOUND: u32 = 256;

/// Try-and-increment hash onto one of the base-field curves: hash the framed
/// input with a counter, take the candidate x mod q, accept when x^3+ax+b is
/// a square; a digest bit fixes the root's parity.
fn hash_to_curve(
    params: &PurifyParams,
    curve_tag: &str,
    e2: bool,
    parts: &[&[u8]],
) -> BasePoint {
    let q = params.ext().modulus();
    let curve = if e2 { params.e2() } else { params.e1() };
    for counter in 0..HASH_TO_CURVE_BOUND {
        let mut owned: Vec<&[u8]> = parts.to_vec();
        let ctr = counter.to_be_bytes();
        owned.push(&ctr);
        let digest = Sha512::digest(&wire::framed(curve_tag, &owned));
        let x = FieldElement::new(BigUint::from_bytes_le(&digest[..48]), q.clone());
        let rhs = x.square().mul(&x).add(&curve.a.mul(&x)).add(&curve.b);
        if rhs.is_zero() {
            // would be a 2-torsion point; the groups have odd prime order
            continue;
        }
        if let Some(mut y) = rhs.sqrt() {
            let want_odd = digest[63] & 0x80 != 0;
            if y.value().bit(0) != want_odd {
                y = y.neg();
            }
            return WPoint::Affine { x, y };
        }
    }
    // 256 misses each with probability ~1/2 cannot happen for honest q
    panic!("hash-to-curve exceeded {HASH_TO_CURVE_BOUND} attempts");
}

/// The combined hash onto the lifted curve.
pub fn h_pur(params: &PurifyParams, parts: &[&[u8]]) -> AuxPoint {
    let h1 = hash_to_curve(params, "FS/H2C/H1", false, parts);
    let h2 = hash_to_curve(params, "FS/H2C/H2", true, parts);
    phi_inv(params, &SplitPoint { p1: h1, p2: h2 }).expect("hashed points are on-curve")
}

/// Extraction map into `Z_q`: 0 at infinity, otherwise the base-field
/// component x0 of the x-coordinate.
pub fn extract_f(params: &PurifyParams, pt: &AuxPoint) -> FieldElement {
    match pt {
        WPoint::Infinity => FieldElement::zero(params.ext().modulus().clone()),
        WPoint::Affine { x, .. } => x.c0().clone(),
    }
}

/// Nonce derivation r = f(r' V').
pub fn derive_nonce(
    params: &PurifyParams,
    seed: &FieldElement,
    session_point: &AuxPoint,
) -> FieldElement {
    let prod = params.eprime().mul(seed.value(), session_point);
    extract_f(params, &prod)
}
