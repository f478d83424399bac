//! Short Weierstrass arithmetic `y^2 = x^3 + a x + b`, generic over the
//! coordinate field so the same code serves the auxiliary curves over `F_q`
//! and their lift over `F_{q^2}`. Only used at verifiable-nonce scale, so the
//! group law stays affine.

use num_bigint::BigUint;

use super::field::FieldElement;
use super::fq2::Fq2Element;

/// The handful of field operations the chord-tangent law needs.
pub trait CurveField: Clone + PartialEq + std::fmt::Debug {
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn invert_opt(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn small(&self, k: u64) -> Self;

    fn square(&self) -> Self {
        self.mul(self)
    }
}

impl CurveField for FieldElement {
    fn add(&self, rhs: &Self) -> Self {
        FieldElement::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        FieldElement::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        FieldElement::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
    fn invert_opt(&self) -> Option<Self> {
        FieldElement::invert(self).ok()
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn small(&self, k: u64) -> Self {
        FieldElement::from_u64(k, self.modulus().clone())
    }
}

impl CurveField for Fq2Element {
    fn add(&self, rhs: &Self) -> Self {
        Fq2Element::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Fq2Element::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Fq2Element::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        Fq2Element::neg(self)
    }
    fn invert_opt(&self) -> Option<Self> {
        Fq2Element::invert(self).ok()
    }
    fn is_zero(&self) -> bool {
        Fq2Element::is_zero(self)
    }
    fn small(&self, k: u64) -> Self {
        let fe = FieldElement::from_u64(k, self.ext().modulus().clone());
        Fq2Element::from_base(fe, self.ext().clone())
    }
}

#[derive(Clone, Debug)]
pub struct WeierstrassCurve<F: CurveField> {
    pub a: F,
    pub b: F,
}

/// Point on a short Weierstrass curve; the group identity is `Infinity`.
#[derive(Clone, PartialEq, Debug)]
pub enum WPoint<F: CurveField> {
    Infinity,
    Affine { x: F, y: F },
}

impl<F: CurveField> WPoint<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, WPoint::Infinity)
    }

    pub fn coords(&self) -> Option<(&F, &F)> {
        match self {
            WPoint::Infinity => None,
            WPoint::Affine { x, y } => Some((x, y)),
        }
    }
}

impl<F: CurveField> WeierstrassCurve<F> {
    pub fn new(a: F, b: F) -> Self {
        Self { a, b }
    }

    pub fn is_on_curve(&self, pt: &WPoint<F>) -> bool {
        match pt {
            WPoint::Infinity => true,
            WPoint::Affine { x, y } => {
                let rhs = x.square().mul(x).add(&self.a.mul(x)).add(&self.b);
                y.square() == rhs
            }
        }
    }

    pub fn neg(&self, pt: &WPoint<F>) -> WPoint<F> {
        match pt {
            WPoint::Infinity => WPoint::Infinity,
            WPoint::Affine { x, y } => WPoint::Affine { x: x.clone(), y: y.neg() },
        }
    }

    pub fn add(&self, p: &WPoint<F>, q: &WPoint<F>) -> WPoint<F> {
        let (x1, y1) = match p {
            WPoint::Infinity => return q.clone(),
            WPoint::Affine { x, y } => (x, y),
        };
        let (x2, y2) = match q {
            WPoint::Infinity => return p.clone(),
            WPoint::Affine { x, y } => (x, y),
        };
        let lambda = if x1 == x2 {
            if y1.add(y2).is_zero() {
                return WPoint::Infinity;
            }
            // tangent: (3 x^2 + a) / (2 y)
            let num = x1.square().mul(&x1.small(3)).add(&self.a);
            let den = y1.mul(&y1.small(2));
            num.mul(&den.invert_opt().expect("tangent denominator"))
        } else {
            let num = y2.sub(y1);
            let den = x2.sub(x1);
            num.mul(&den.invert_opt().expect("chord denominator"))
        };
        let x3 = lambda.square().sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        WPoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &WPoint<F>) -> WPoint<F> {
        self.add(p, p)
    }

    pub fn mul(&self, k: &BigUint, p: &WPoint<F>) -> WPoint<F> {
        let mut acc = WPoint::Infinity;
        for i in (0..k.bits()).rev() {
            acc = self.double(&acc);
            if k.bit(i) {
                acc = self.add(&acc, p);
            }
        }
        acc
    }
}
