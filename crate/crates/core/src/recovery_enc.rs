//! Asymmetric encryption for the offline party's recovery material: hashed
//! Diffie-Hellman in the signing subgroup plus a hash keystream. IND-CPA
//! under DDH is all the key-generation round needs.
//!
//! A verifiable mode (proving that a ciphertext encrypts the discrete log of
//! a public point) is an extension hook; the default backend reports it as
//! unsupported and key generation records the skipped check in the
//! transcript.

use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest as _, Sha512};

use crate::algebra::{CurveProfile, EdPoint, FieldElement};
use crate::error::Error;
use crate::wire;

/// The offline party's long-term decryption keypair.
#[derive(Clone, Debug)]
pub struct RecoveryKeypair {
    pub sk: FieldElement,
    pub pk: EdPoint,
}

pub fn recovery_keygen<R: Rng + ?Sized>(profile: &CurveProfile, rng: &mut R) -> RecoveryKeypair {
    let sk = FieldElement::random(profile.q().clone(), rng);
    let pk = profile.curve().mul(sk.value(), profile.base());
    RecoveryKeypair { sk, pk }
}

/// A single scalar ciphertext: ephemeral point encoding plus masked scalar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ciphertext {
    #[serde(with = "wire::hexbytes")]
    pub epk: Vec<u8>,
    #[serde(with = "wire::hexbytes")]
    pub body: Vec<u8>,
}

impl Ciphertext {
    /// Fixed ciphertext size for a profile: point encoding plus scalar width.
    pub fn encoded_len(profile: &CurveProfile) -> usize {
        2 * profile.point_len()
    }
}

fn keystream(profile: &CurveProfile, shared: &EdPoint, epk_enc: &[u8]) -> Vec<u8> {
    let framed = wire::framed("ENC", &[&profile.encode_point(shared), epk_enc]);
    Sha512::digest(&framed)[..profile.point_len()].to_vec()
}

/// Randomized encryption of a scalar under the recovery public key.
pub fn enc<R: Rng + ?Sized>(
    profile: &CurveProfile,
    pk: &EdPoint,
    m: &FieldElement,
    rng: &mut R,
) -> Ciphertext {
    let e = FieldElement::random(profile.q().clone(), rng);
    let epk = profile.curve().mul(e.value(), profile.base());
    let epk_enc = profile.encode_point(&epk);
    let shared = profile.curve().mul(e.value(), pk);
    let stream = keystream(profile, &shared, &epk_enc);
    let body: Vec<u8> = profile
        .encode_scalar(m)
        .iter()
        .zip(&stream)
        .map(|(a, b)| a ^ b)
        .collect();
    Ciphertext { epk: epk_enc, body }
}

/// Decryption; fails on malformed lengths, invalid ephemeral points, or a
/// masked value outside the scalar range (any of these aborts the ceremony).
pub fn dec(profile: &CurveProfile, sk: &FieldElement, ct: &Ciphertext) -> Result<FieldElement, Error> {
    if ct.body.len() != profile.point_len() {
        return Err(Error::DecryptFailed);
    }
    let epk = profile.decode_point(&ct.epk).map_err(|_| Error::DecryptFailed)?;
    let shared = profile.curve().mul(sk.value(), &epk);
    let stream = keystream(profile, &shared, &ct.epk);
    let bytes: Vec<u8> = ct.body.iter().zip(&stream).map(|(a, b)| a ^ b).collect();
    profile
        .decode_scalar(&bytes)
        .map_err(|_| Error::DecryptFailed)
}

/// The pair of ciphertexts a key-generation party sends for the offline
/// party: its polynomial evaluation at index 3 and its additive piece of the
/// third share.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecBlob {
    pub poly_share: Ciphertext,
    pub third_share: Ciphertext,
}

impl RecBlob {
    pub fn seal<R: Rng + ?Sized>(
        profile: &CurveProfile,
        pk: &EdPoint,
        poly_share: &FieldElement,
        third_share: &FieldElement,
        rng: &mut R,
    ) -> Self {
        Self {
            poly_share: enc(profile, pk, poly_share, rng),
            third_share: enc(profile, pk, third_share, rng),
        }
    }

    pub fn open(
        &self,
        profile: &CurveProfile,
        sk: &FieldElement,
    ) -> Result<(FieldElement, FieldElement), Error> {
        Ok((dec(profile, sk, &self.poly_share)?, dec(profile, sk, &self.third_share)?))
    }
}

/// Whether the encryption backend can prove statements about encrypted
/// discrete logs (the verifiable mode of the key-generation round).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EncBackend {
    HashedDh,
    CramerShoupVerifiable,
}

impl EncBackend {
    pub fn supports_dlog_verification(self) -> bool {
        false // the verifiable variant is an unimplemented extension point
    }
}

/// Statement for the verifiable-encryption hook: "this ciphertext encrypts
/// the discrete log of `public_point`".
#[derive(Clone, Debug)]
pub struct DlogEncStatement<'a> {
    pub ciphertext: &'a Ciphertext,
    pub public_point: &'a EdPoint,
}

/// Extension hook for the verifiable mode; both shipped backends decline.
pub fn verifiable_enc_hook(
    backend: EncBackend,
    _statement: &DlogEncStatement<'_>,
) -> Result<Vec<u8>, Error> {
    match backend {
        EncBackend::HashedDh => Err(Error::UnsupportedBackend("hashed-dh has no dlog proofs")),
        EncBackend::CramerShoupVerifiable => {
            Err(Error::UnsupportedBackend("cramer-shoup verifiable encryption"))
        }
    }
}
