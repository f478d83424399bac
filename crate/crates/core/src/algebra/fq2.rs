//! The quadratic extension `F_{q^2} = F_q(sqrt(delta))` for a configured
//! non-residue `delta`. Elements are `c0 + c1*sqrt(delta)`; the adjoined root
//! itself is the element `(0, 1)`, which makes the curve/twist scaling maps
//! exact by construction.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;

use crate::error::Error;

use super::field::FieldElement;

/// Shared context for an `F_{q^2}` instance: the base modulus and delta.
#[derive(Debug)]
pub struct QuadExt {
    modulus: Arc<BigUint>,
    delta: FieldElement,
}

impl QuadExt {
    pub fn new(modulus: Arc<BigUint>, delta: FieldElement) -> Arc<Self> {
        assert_eq!(delta.modulus().as_ref(), modulus.as_ref());
        assert!(!delta.is_square(), "delta must be a quadratic non-residue");
        Arc::new(Self { modulus, delta })
    }

    pub fn modulus(&self) -> &Arc<BigUint> {
        &self.modulus
    }

    pub fn delta(&self) -> &FieldElement {
        &self.delta
    }
}

#[derive(Clone)]
pub struct Fq2Element {
    c0: FieldElement,
    c1: FieldElement,
    ext: Arc<QuadExt>,
}

impl Fq2Element {
    pub fn new(c0: FieldElement, c1: FieldElement, ext: Arc<QuadExt>) -> Self {
        assert_eq!(c0.modulus().as_ref(), ext.modulus.as_ref());
        assert_eq!(c1.modulus().as_ref(), ext.modulus.as_ref());
        Self { c0, c1, ext }
    }

    pub fn from_base(c0: FieldElement, ext: Arc<QuadExt>) -> Self {
        let zero = FieldElement::zero(ext.modulus.clone());
        Self::new(c0, zero, ext)
    }

    pub fn zero(ext: Arc<QuadExt>) -> Self {
        let z = FieldElement::zero(ext.modulus.clone());
        Self { c0: z.clone(), c1: z, ext }
    }

    pub fn one(ext: Arc<QuadExt>) -> Self {
        let z = FieldElement::zero(ext.modulus.clone());
        let o = FieldElement::one(ext.modulus.clone());
        Self { c0: o, c1: z, ext }
    }

    /// The adjoined root sqrt(delta) = (0, 1).
    pub fn sqrt_delta(ext: Arc<QuadExt>) -> Self {
        let z = FieldElement::zero(ext.modulus.clone());
        let o = FieldElement::one(ext.modulus.clone());
        Self { c0: z, c1: o, ext }
    }

    pub fn random<R: Rng + ?Sized>(ext: Arc<QuadExt>, rng: &mut R) -> Self {
        let c0 = FieldElement::random(ext.modulus.clone(), rng);
        let c1 = FieldElement::random(ext.modulus.clone(), rng);
        Self { c0, c1, ext }
    }

    pub fn c0(&self) -> &FieldElement {
        &self.c0
    }

    pub fn c1(&self) -> &FieldElement {
        &self.c1
    }

    pub fn ext(&self) -> &Arc<QuadExt> {
        &self.ext
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    /// True when the element lies in the base field (c1 = 0).
    pub fn is_base(&self) -> bool {
        self.c1.is_zero()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            c0: self.c0.add(&rhs.c0),
            c1: self.c1.add(&rhs.c1),
            ext: self.ext.clone(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self {
            c0: self.c0.sub(&rhs.c0),
            c1: self.c1.sub(&rhs.c1),
            ext: self.ext.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // (a0 + a1 r)(b0 + b1 r) = a0 b0 + delta a1 b1 + (a0 b1 + a1 b0) r
        let delta = self.ext.delta();
        let c0 = self.c0.mul(&rhs.c0).add(&delta.mul(&self.c1.mul(&rhs.c1)));
        let c1 = self.c0.mul(&rhs.c1).add(&self.c1.mul(&rhs.c0));
        Self { c0, c1, ext: self.ext.clone() }
    }

    pub fn mul_base(&self, s: &FieldElement) -> Self {
        Self {
            c0: self.c0.mul(s),
            c1: self.c1.mul(s),
            ext: self.ext.clone(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            c0: self.c0.neg(),
            c1: self.c1.neg(),
            ext: self.ext.clone(),
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Norm to the base field: (c0 + c1 r)(c0 - c1 r) = c0^2 - delta c1^2.
    pub fn norm(&self) -> FieldElement {
        let delta = self.ext.delta();
        self.c0.square().sub(&delta.mul(&self.c1.square()))
    }

    /// Inverse via the conjugate; fails only at (0, 0).
    pub fn invert(&self) -> Result<Self, Error> {
        let n = self.norm().invert()?;
        Ok(Self {
            c0: self.c0.mul(&n),
            c1: self.c1.neg().mul(&n),
            ext: self.ext.clone(),
        })
    }

    pub fn pow(&self, exp: &BigUint) -> Self {
        let mut acc = Self::one(self.ext.clone());
        for i in (0..exp.bits()).rev() {
            acc = acc.square();
            if exp.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Euler criterion in `F_{q^2}`: x is a square iff its norm is a square
    /// in `F_q` (because x^((q^2-1)/2) = norm(x)^((q-1)/2)).
    pub fn is_square(&self) -> bool {
        if self.is_zero() {
            return true;
        }
        self.norm().is_square()
    }
}

impl PartialEq for Fq2Element {
    fn eq(&self, other: &Self) -> bool {
        self.c0 == other.c0 && self.c1 == other.c1
    }
}

impl Eq for Fq2Element {}

impl fmt::Debug for Fq2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + ({:?})*r", self.c0.value(), self.c1.value())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn ext79() -> Arc<QuadExt> {
        let q = Arc::new(BigUint::from(79u32));
        QuadExt::new(q.clone(), FieldElement::from_u64(3, q))
    }

    #[test]
    fn thousand_random_inverses() {
        let ext = ext79();
        let mut rng = ChaCha20Rng::seed_from_u64(7);
        let one = Fq2Element::one(ext.clone());
        let mut done = 0;
        while done < 1000 {
            let x = Fq2Element::random(ext.clone(), &mut rng);
            if x.is_zero() {
                continue;
            }
            assert_eq!(x.mul(&x.invert().unwrap()), one);
            done += 1;
        }
    }

    #[test]
    fn inversion_fails_only_at_zero() {
        let ext = ext79();
        assert_eq!(Fq2Element::zero(ext).invert(), Err(Error::ZeroInverse));
    }

    #[test]
    fn sqrt_delta_squares_to_delta() {
        let ext = ext79();
        let r = Fq2Element::sqrt_delta(ext.clone());
        let d = Fq2Element::from_base(ext.delta().clone(), ext);
        assert_eq!(r.square(), d);
    }

    #[test]
    fn norm_is_multiplicative() {
        let ext = ext79();
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        for _ in 0..200 {
            let x = Fq2Element::random(ext.clone(), &mut rng);
            let y = Fq2Element::random(ext.clone(), &mut rng);
            assert_eq!(x.mul(&y).norm(), x.norm().mul(&y.norm()));
        }
    }

    #[test]
    fn euler_criterion_matches_exhaustive_squares() {
        let ext = ext79();
        let q = 79u64;
        let mut squares = std::collections::HashSet::new();
        for a in 0..q {
            for b in 0..q {
                let x = Fq2Element::new(
                    FieldElement::from_u64(a, ext.modulus().clone()),
                    FieldElement::from_u64(b, ext.modulus().clone()),
                    ext.clone(),
                );
                let s = x.square();
                squares.insert((s.c0().value().clone(), s.c1().value().clone()));
            }
        }
        for a in 0..q {
            for b in 0..q {
                let x = Fq2Element::new(
                    FieldElement::from_u64(a, ext.modulus().clone()),
                    FieldElement::from_u64(b, ext.modulus().clone()),
                    ext.clone(),
                );
                let listed = squares.contains(&(x.c0().value().clone(), x.c1().value().clone()));
                assert_eq!(x.is_square(), listed, "mismatch at ({a},{b})");
            }
        }
    }
}
