//! Centralized signing and verification. The verifier is the acceptance
//! oracle for everything the threshold ceremonies produce; verification is
//! exactly the cofactored check `2^c S B = 2^c R + 2^c H(R||A||M) A`.

use num_bigint::BigUint;
use rand::Rng;

use crate::algebra::{CurveProfile, EdPoint, FieldElement};
use crate::error::Error;
use crate::hashing;

/// A signature (R, S); the wire format is `encode(R) || le(S)`, 2b bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub r: EdPoint,
    pub s: FieldElement,
}

impl Signature {
    pub fn to_bytes(&self, profile: &CurveProfile) -> Vec<u8> {
        let mut out = profile.encode_point(&self.r);
        out.extend_from_slice(&profile.encode_scalar(&self.s));
        out
    }

    /// Parses and enforces canonicality: rejects S >= q and non-canonical R.
    pub fn from_bytes(profile: &CurveProfile, bytes: &[u8]) -> Result<Self, Error> {
        let len = profile.point_len();
        if bytes.len() != 2 * len {
            return Err(Error::Length { expected: 2 * len, got: bytes.len() });
        }
        let r = profile.decode_point(&bytes[..len])?;
        let s = profile.decode_scalar(&bytes[len..])?;
        Ok(Self { r, s })
    }
}

/// Long-lived key material of the centralized signer.
#[derive(Clone, Debug)]
pub struct CentralKeypair {
    /// The b-bit secret string k.
    pub secret: Vec<u8>,
    /// Clamped secret scalar.
    pub scalar: FieldElement,
    /// Upper b bits of H'(k), the nonce prefix.
    pub prefix: Vec<u8>,
    /// Public key A = scalar * B.
    pub public: EdPoint,
}

impl CentralKeypair {
    pub fn from_secret(profile: &CurveProfile, secret: &[u8]) -> Result<Self, Error> {
        let (scalar, _) = hashing::secret_scalar(profile, secret)?;
        let prefix = hashing::secret_prefix(profile, secret)?;
        let public = profile.curve().mul(scalar.value(), profile.base());
        Ok(Self { secret: secret.to_vec(), scalar, prefix, public })
    }

    pub fn generate<R: Rng + ?Sized>(profile: &CurveProfile, rng: &mut R) -> Self {
        let mut secret = vec![0u8; profile.point_len()];
        rng.fill_bytes(&mut secret);
        Self::from_secret(profile, &secret).expect("fresh secret has the right length")
    }
}

/// Deterministic signature: r = H(prefix || M), R = rB, S = r + a H(R||A||M).
pub fn central_sign(profile: &CurveProfile, keypair: &CentralKeypair, msg: &[u8]) -> Signature {
    let curve = profile.curve();
    let r = hashing::central_nonce(profile, &keypair.prefix, msg);
    let r_point = curve.mul(r.value(), profile.base());
    let challenge = hashing::challenge_scalar(
        profile,
        &profile.encode_point(&r_point),
        &profile.encode_point(&keypair.public),
        msg,
    );
    let s = r.add(&keypair.scalar.mul(&challenge));
    Signature { r: r_point, s }
}

/// The cofactored verification equation, evaluated literally. R and A may sit
/// anywhere on the curve (small-order components included); the scalars are
/// multiplied by 2^c as integers rather than reduced first.
pub fn central_verify(
    profile: &CurveProfile,
    public: &EdPoint,
    msg: &[u8],
    sig: &Signature,
) -> bool {
    let curve = profile.curve();
    if !curve.is_on_curve(&sig.r) || !curve.is_on_curve(public) {
        return false;
    }
    let cofactor = BigUint::from(1u32) << profile.cofactor_log2();
    let challenge = hashing::challenge_scalar(
        profile,
        &profile.encode_point(&sig.r),
        &profile.encode_point(public),
        msg,
    );
    let lhs = curve.mul(&(&cofactor * sig.s.value()), profile.base());
    let rhs = curve.add(
        &curve.mul(&cofactor, &sig.r),
        &curve.mul(&(&cofactor * challenge.value()), public),
    );
    lhs == rhs
}

/// Wire-level verification: decodes (and thereby canonicality-checks) the
/// public key and signature before running the equation.
pub fn central_verify_bytes(
    profile: &CurveProfile,
    public_enc: &[u8],
    msg: &[u8],
    sig_bytes: &[u8],
) -> bool {
    let Ok(public) = profile.decode_point(public_enc) else {
        return false;
    };
    let Ok(sig) = Signature::from_bytes(profile, sig_bytes) else {
        return false;
    };
    central_verify(profile, &public, msg, &sig)
}
