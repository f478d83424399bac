//! The twisted Edwards signing curve `a x^2 + y^2 = 1 + d x^2 y^2` with the
//! canonical b-bit point encoding.
//!
//! Profiles only use curves with `a` a square and `d` a non-square, so the
//! affine addition law is complete. Scalar multiplication runs on extended
//! homogeneous coordinates to avoid a field inversion per addition.

use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::error::Error;

use super::field::FieldElement;

#[derive(Clone, Debug)]
pub struct EdwardsCurve {
    p: Arc<BigUint>,
    a: FieldElement,
    d: FieldElement,
}

/// Affine point on the signing curve.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EdPoint {
    pub x: FieldElement,
    pub y: FieldElement,
}

impl EdwardsCurve {
    pub fn new(p: Arc<BigUint>, a: FieldElement, d: FieldElement) -> Self {
        Self { p, a, d }
    }

    pub fn p(&self) -> &Arc<BigUint> {
        &self.p
    }

    pub fn a(&self) -> &FieldElement {
        &self.a
    }

    pub fn d(&self) -> &FieldElement {
        &self.d
    }

    /// The neutral element (0, 1).
    pub fn identity(&self) -> EdPoint {
        EdPoint {
            x: FieldElement::zero(self.p.clone()),
            y: FieldElement::one(self.p.clone()),
        }
    }

    pub fn is_on_curve(&self, pt: &EdPoint) -> bool {
        let x2 = pt.x.square();
        let y2 = pt.y.square();
        let lhs = self.a.mul(&x2).add(&y2);
        let rhs = FieldElement::one(self.p.clone()).add(&self.d.mul(&x2).mul(&y2));
        lhs == rhs
    }

    pub fn neg(&self, pt: &EdPoint) -> EdPoint {
        EdPoint { x: pt.x.neg(), y: pt.y.clone() }
    }

    /// Complete affine addition.
    pub fn add(&self, p1: &EdPoint, p2: &EdPoint) -> EdPoint {
        let xx = p1.x.mul(&p2.x);
        let yy = p1.y.mul(&p2.y);
        let xy = p1.x.mul(&p2.y);
        let yx = p1.y.mul(&p2.x);
        let t = self.d.mul(&xx).mul(&yy);
        let one = FieldElement::one(self.p.clone());
        // denominators 1 +- t never vanish for a square, d non-square
        let x = xy.add(&yx).mul(&one.add(&t).invert().expect("complete law"));
        let y = yy.sub(&self.a.mul(&xx)).mul(&one.sub(&t).invert().expect("complete law"));
        EdPoint { x, y }
    }

    pub fn sub(&self, p1: &EdPoint, p2: &EdPoint) -> EdPoint {
        self.add(p1, &self.neg(p2))
    }

    /// Scalar multiplication by an arbitrary non-negative integer (not reduced:
    /// callers that pass cofactor multiples of possibly small-order points rely
    /// on that).
    pub fn mul(&self, k: &BigUint, pt: &EdPoint) -> EdPoint {
        let mut acc = self.ext_identity();
        let p = self.to_ext(pt);
        for i in (0..k.bits()).rev() {
            acc = self.ext_double(&acc);
            if k.bit(i) {
                acc = self.ext_add(&acc, &p);
            }
        }
        self.from_ext(&acc)
    }

    pub fn mul_base_scalar(&self, k: &FieldElement, pt: &EdPoint) -> EdPoint {
        self.mul(k.value(), pt)
    }

    // ---- extended homogeneous coordinates (x = X/Z, y = Y/Z, T = XY/Z) ----

    fn ext_identity(&self) -> ExtPoint {
        ExtPoint {
            x: FieldElement::zero(self.p.clone()),
            y: FieldElement::one(self.p.clone()),
            z: FieldElement::one(self.p.clone()),
            t: FieldElement::zero(self.p.clone()),
        }
    }

    fn to_ext(&self, pt: &EdPoint) -> ExtPoint {
        ExtPoint {
            x: pt.x.clone(),
            y: pt.y.clone(),
            z: FieldElement::one(self.p.clone()),
            t: pt.x.mul(&pt.y),
        }
    }

    fn from_ext(&self, pt: &ExtPoint) -> EdPoint {
        let zi = pt.z.invert().expect("Z never vanishes");
        EdPoint { x: pt.x.mul(&zi), y: pt.y.mul(&zi) }
    }

    // add-2008-hwcd, valid for any twisted Edwards curve
    fn ext_add(&self, p: &ExtPoint, q: &ExtPoint) -> ExtPoint {
        let a = p.x.mul(&q.x);
        let b = p.y.mul(&q.y);
        let c = self.d.mul(&p.t).mul(&q.t);
        let dd = p.z.mul(&q.z);
        let e = p.x.add(&p.y).mul(&q.x.add(&q.y)).sub(&a).sub(&b);
        let f = dd.sub(&c);
        let g = dd.add(&c);
        let h = b.sub(&self.a.mul(&a));
        ExtPoint {
            x: e.mul(&f),
            y: g.mul(&h),
            t: e.mul(&h),
            z: f.mul(&g),
        }
    }

    // dbl-2008-hwcd
    fn ext_double(&self, p: &ExtPoint) -> ExtPoint {
        let a = p.x.square();
        let b = p.y.square();
        let c = p.z.square().double();
        let d = self.a.mul(&a);
        let e = p.x.add(&p.y).square().sub(&a).sub(&b);
        let g = d.add(&b);
        let f = g.sub(&c);
        let h = d.sub(&b);
        ExtPoint {
            x: e.mul(&f),
            y: g.mul(&h),
            t: e.mul(&h),
            z: f.mul(&g),
        }
    }

    // ---- canonical encoding ----

    /// b-bit encoding: (b-1)-bit little-endian y, then one sign bit. For the
    /// little-endian bit encoding the lexicographic comparison between x and
    /// -x is decided by bit 0 (p is odd, so they differ in parity), hence the
    /// sign bit is the parity of x.
    pub fn encode(&self, pt: &EdPoint, b_bits: u32) -> Vec<u8> {
        let len = (b_bits / 8) as usize;
        let mut out = pt.y.to_le_bytes(len);
        debug_assert_eq!(out[len - 1] & 0x80, 0, "p must be < 2^(b-1)");
        if pt.x.value().is_odd() {
            out[len - 1] |= 0x80;
        }
        out
    }

    /// Inverse of [`encode`]: recovers x from the curve equation and the sign
    /// bit. `NonCanonical` for out-of-range y (or a zero x with the sign bit
    /// set), `NotOnCurve` when y admits no x.
    pub fn decode(&self, bytes: &[u8], b_bits: u32) -> Result<EdPoint, Error> {
        let len = (b_bits / 8) as usize;
        if bytes.len() != len {
            return Err(Error::Length { expected: len, got: bytes.len() });
        }
        let sign = bytes[len - 1] >> 7 == 1;
        let mut y_bytes = bytes.to_vec();
        y_bytes[len - 1] &= 0x7f;
        let y_int = BigUint::from_bytes_le(&y_bytes);
        if &y_int >= self.p.as_ref() {
            return Err(Error::NonCanonical);
        }
        let y = FieldElement::new(y_int, self.p.clone());
        // x^2 = (1 - y^2) / (a - d y^2)
        let one = FieldElement::one(self.p.clone());
        let y2 = y.square();
        let den = self.a.sub(&self.d.mul(&y2));
        let den_inv = den.invert().map_err(|_| Error::NotOnCurve)?;
        let x2 = one.sub(&y2).mul(&den_inv);
        let mut x = x2.sqrt().ok_or(Error::NotOnCurve)?;
        if x.is_zero() && sign {
            return Err(Error::NonCanonical);
        }
        if x.value().is_odd() != sign {
            x = x.neg();
        }
        Ok(EdPoint { x, y })
    }
}

#[derive(Clone)]
struct ExtPoint {
    x: FieldElement,
    y: FieldElement,
    z: FieldElement,
    t: FieldElement,
}
