//! Prime-field arithmetic with a runtime modulus.
//!
//! The modulus travels with each element (behind an `Arc`) so that the
//! ed25519 and toy profiles, which use wildly different field sizes, can share
//! one code path. Values are kept canonically reduced after every operation.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, RandBigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::Error;

/// Element of `Z_m` with its canonical representative in `[0, m)`.
#[derive(Clone)]
pub struct FieldElement {
    value: BigUint,
    modulus: Arc<BigUint>,
}

impl FieldElement {
    pub fn new(value: BigUint, modulus: Arc<BigUint>) -> Self {
        let value = value % modulus.as_ref();
        Self { value, modulus }
    }

    pub fn from_u64(value: u64, modulus: Arc<BigUint>) -> Self {
        Self::new(BigUint::from(value), modulus)
    }

    pub fn zero(modulus: Arc<BigUint>) -> Self {
        Self { value: BigUint::zero(), modulus }
    }

    pub fn one(modulus: Arc<BigUint>) -> Self {
        Self::new(BigUint::one(), modulus)
    }

    /// Uniform element of `[0, m)`.
    pub fn random<R: Rng + ?Sized>(modulus: Arc<BigUint>, rng: &mut R) -> Self {
        let value = rng.gen_biguint_below(modulus.as_ref());
        Self { value, modulus }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn modulus(&self) -> &Arc<BigUint> {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn check_same(&self, rhs: &Self) {
        assert_eq!(
            self.modulus.as_ref(),
            rhs.modulus.as_ref(),
            "mixed moduli in field arithmetic"
        );
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        Self::new(&self.value + &rhs.value, self.modulus.clone())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        let m = self.modulus.as_ref();
        let v = (m + &self.value - &rhs.value) % m;
        Self { value: v, modulus: self.modulus.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.check_same(rhs);
        Self::new(&self.value * &rhs.value, self.modulus.clone())
    }

    pub fn neg(&self) -> Self {
        if self.value.is_zero() {
            return self.clone();
        }
        Self {
            value: self.modulus.as_ref() - &self.value,
            modulus: self.modulus.clone(),
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn double(&self) -> Self {
        self.add(self)
    }

    pub fn pow(&self, exp: &BigUint) -> Self {
        Self {
            value: self.value.modpow(exp, self.modulus.as_ref()),
            modulus: self.modulus.clone(),
        }
    }

    /// Multiplicative inverse by extended Euclid; also correct for the
    /// composite scalar ring of the auxiliary-curve group.
    pub fn invert(&self) -> Result<Self, Error> {
        if self.value.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let a = BigInt::from_biguint(Sign::Plus, self.value.clone());
        let m = BigInt::from_biguint(Sign::Plus, self.modulus.as_ref().clone());
        let ext = a.extended_gcd(&m);
        if !ext.gcd.is_one() {
            return Err(Error::ZeroInverse);
        }
        let inv = ext.x.mod_floor(&m);
        let (_, bytes) = inv.to_bytes_le();
        Ok(Self::new(BigUint::from_bytes_le(&bytes), self.modulus.clone()))
    }

    /// Legendre test; zero counts as a square. Only meaningful for prime moduli.
    pub fn is_square(&self) -> bool {
        if self.value.is_zero() {
            return true;
        }
        let e = (self.modulus.as_ref() - 1u32) >> 1;
        self.value.modpow(&e, self.modulus.as_ref()).is_one()
    }

    /// Square root modulo the (prime) modulus. Fast exponent chains for
    /// p = 3 (mod 4) and p = 5 (mod 8), Tonelli-Shanks otherwise.
    pub fn sqrt(&self) -> Option<Self> {
        let p = self.modulus.as_ref();
        if self.value.is_zero() {
            return Some(self.clone());
        }
        let root = match (p % 8u32).to_u64_digits().first().copied().unwrap_or(0) {
            3 | 7 => {
                let e = (p + 1u32) >> 2;
                self.pow(&e)
            }
            5 => {
                let e = (p + 3u32) >> 3;
                let mut r = self.pow(&e);
                if r.square() != *self {
                    // multiply by sqrt(-1) = 2^((p-1)/4)
                    let i = FieldElement::from_u64(2, self.modulus.clone())
                        .pow(&((p - 1u32) >> 2));
                    r = r.mul(&i);
                }
                r
            }
            _ => self.tonelli_shanks()?,
        };
        if root.square() == *self {
            Some(root)
        } else {
            None
        }
    }

    fn tonelli_shanks(&self) -> Option<Self> {
        let p = self.modulus.as_ref().clone();
        if !self.is_square() {
            return None;
        }
        // p - 1 = s * 2^e with s odd
        let mut s = &p - 1u32;
        let mut e = 0u64;
        while !s.bit(0) {
            s >>= 1;
            e += 1;
        }
        // any quadratic non-residue works as the generator of the 2-part
        let mut z = FieldElement::from_u64(2, self.modulus.clone());
        while z.is_square() {
            z = FieldElement::new(z.value + 1u32, self.modulus.clone());
        }
        let mut c = z.pow(&s);
        let mut x = self.pow(&((&s + 1u32) >> 1));
        let mut t = self.pow(&s);
        let mut m = e;
        let one = FieldElement::one(self.modulus.clone());
        while t != one {
            let mut i = 0u64;
            let mut probe = t.clone();
            while probe != one {
                probe = probe.square();
                i += 1;
                if i == m {
                    return None;
                }
            }
            let mut b = c.clone();
            for _ in 0..(m - i - 1) {
                b = b.square();
            }
            x = x.mul(&b);
            c = b.square();
            t = t.mul(&c);
            m = i;
        }
        Some(x)
    }

    /// Fixed-width little-endian encoding (`len` bytes).
    pub fn to_le_bytes(&self, len: usize) -> Vec<u8> {
        let mut out = self.value.to_bytes_le();
        assert!(out.len() <= len, "field element does not fit {len} bytes");
        out.resize(len, 0);
        out
    }

    /// Parses a fixed-width little-endian encoding, rejecting values >= m.
    pub fn from_le_bytes(bytes: &[u8], len: usize, modulus: Arc<BigUint>) -> Result<Self, Error> {
        if bytes.len() != len {
            return Err(Error::Length { expected: len, got: bytes.len() });
        }
        let value = BigUint::from_bytes_le(bytes);
        if &value >= modulus.as_ref() {
            return Err(Error::NonCanonical);
        }
        Ok(Self { value, modulus })
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.modulus.as_ref() == other.modulus.as_ref() && self.value == other.value
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn modulus(m: u64) -> Arc<BigUint> {
        Arc::new(BigUint::from(m))
    }

    #[test]
    fn field_axioms_spot_check() {
        let m = modulus(79);
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        for _ in 0..200 {
            let a = FieldElement::random(m.clone(), &mut rng);
            let b = FieldElement::random(m.clone(), &mut rng);
            let c = FieldElement::random(m.clone(), &mut rng);
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            assert_eq!(a.sub(&a), FieldElement::zero(m.clone()));
            assert!(a.value() < m.as_ref());
        }
    }

    #[test]
    fn inversion_of_zero_is_an_error() {
        let m = modulus(79);
        assert_eq!(FieldElement::zero(m).invert(), Err(Error::ZeroInverse));
    }

    #[test]
    fn inverse_round_trip_exhaustive() {
        let m = modulus(79);
        for v in 1..79 {
            let a = FieldElement::from_u64(v, m.clone());
            let inv = a.invert().unwrap();
            assert_eq!(a.mul(&inv), FieldElement::one(m.clone()));
        }
    }

    #[test]
    fn composite_modulus_inverse() {
        // scalar ring of the auxiliary group has composite order
        let m = modulus(71 * 89);
        let a = FieldElement::from_u64(5, m.clone());
        let inv = a.invert().unwrap();
        assert_eq!(a.mul(&inv), FieldElement::one(m.clone()));
        // gcd > 1: not invertible
        let b = FieldElement::from_u64(71, m.clone());
        assert_eq!(b.invert(), Err(Error::ZeroInverse));
    }

    #[test]
    fn sqrt_all_residues_small_primes() {
        // covers p = 3 (mod 4), p = 5 (mod 8) and the Tonelli-Shanks path (p = 1 (mod 8))
        for p in [79u64, 283, 13, 17, 41, 73, 97] {
            let m = modulus(p);
            for v in 0..p {
                let a = FieldElement::from_u64(v, m.clone());
                match a.sqrt() {
                    Some(r) => assert_eq!(r.square(), a, "bad sqrt mod {p} of {v}"),
                    None => assert!(!a.is_square(), "missed sqrt mod {p} of {v}"),
                }
            }
        }
    }

    #[test]
    fn le_bytes_round_trip_and_range_check() {
        let m = modulus(283);
        let a = FieldElement::from_u64(200, m.clone());
        let bytes = a.to_le_bytes(2);
        assert_eq!(bytes, vec![200, 0]);
        assert_eq!(FieldElement::from_le_bytes(&bytes, 2, m.clone()).unwrap(), a);
        assert_eq!(
            FieldElement::from_le_bytes(&[0xff, 0xff], 2, m.clone()),
            Err(Error::NonCanonical)
        );
        assert_eq!(
            FieldElement::from_le_bytes(&[1], 2, m),
            Err(Error::Length { expected: 2, got: 1 })
        );
    }
}
