//! Sigma protocols in non-interactive form: Schnorr proof of discrete-log
//! knowledge, equality of discrete logarithms under two bases, and the
//! pluggable proof interface for verifiable nonce correctness.
//!
//! All statements live in the prime-order subgroup generated by the signing
//! base point, so no cofactor-elimination encoding is needed. Challenges come
//! from Fiat-Shamir over domain-tagged framed transcripts.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{AuxPoint, CurveProfile, EdPoint, FieldElement};
use crate::error::Error;
use crate::hashing;

// ---------------------------------------------------------------- Schnorr --

/// Proof of knowledge of x with K = xB: (U, z) with z B = U + c K.
#[derive(Clone, Debug, PartialEq)]
pub struct SchnorrProof {
    pub u: EdPoint,
    pub z: FieldElement,
}

fn schnorr_challenge(
    profile: &CurveProfile,
    public: &EdPoint,
    u: &EdPoint,
    context: &[u8],
) -> FieldElement {
    hashing::hash_to_scalar(
        profile,
        "FS/SCH",
        &[
            context,
            &profile.encode_point(profile.base()),
            &profile.encode_point(public),
            &profile.encode_point(u),
        ],
    )
}

pub fn schnorr_prove<R: Rng + ?Sized>(
    profile: &CurveProfile,
    witness: &FieldElement,
    public: &EdPoint,
    context: &[u8],
    rng: &mut R,
) -> SchnorrProof {
    let r = FieldElement::random(profile.q().clone(), rng);
    schnorr_prove_with_nonce(profile, witness, public, context, &r)
}

/// Deterministic variant with a caller-chosen commitment nonce; the special
/// soundness extractor test replays it with two different contexts.
pub fn schnorr_prove_with_nonce(
    profile: &CurveProfile,
    witness: &FieldElement,
    public: &EdPoint,
    context: &[u8],
    r: &FieldElement,
) -> SchnorrProof {
    let u = profile.curve().mul(r.value(), profile.base());
    let c = schnorr_challenge(profile, public, &u, context);
    let z = r.add(&c.mul(witness));
    SchnorrProof { u, z }
}

pub fn schnorr_verify(
    profile: &CurveProfile,
    public: &EdPoint,
    proof: &SchnorrProof,
    context: &[u8],
) -> bool {
    let curve = profile.curve();
    if !curve.is_on_curve(&proof.u) || !curve.is_on_curve(public) {
        return false;
    }
    let c = schnorr_challenge(profile, public, &proof.u, context);
    let lhs = curve.mul(proof.z.value(), profile.base());
    let rhs = curve.add(&proof.u, &curve.mul(c.value(), public));
    lhs == rhs
}

// ----------------------------------------------------------------- DlogEq --

/// One repetition of the equality-of-dlogs protocol.
#[derive(Clone, Debug, PartialEq)]
pub struct DlogEqRound {
    pub u: EdPoint,
    pub u_bar: EdPoint,
    pub challenge: FieldElement,
    pub s: FieldElement,
}

/// Proof that K = xB and K_bar = x B_bar for the same x.
#[derive(Clone, Debug, PartialEq)]
pub struct DlogEqProof {
    pub rounds: Vec<DlogEqRound>,
}

/// Challenge shape: the repeated binary-challenge protocol (default tau =
/// 128), or a single full-width challenge round as a documented shortcut.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DlogEqChallenge {
    Binary { tau: usize },
    SingleFull,
}

impl Default for DlogEqChallenge {
    fn default() -> Self {
        DlogEqChallenge::Binary { tau: 128 }
    }
}

/// Statement made of the two bases and the two public points.
#[derive(Clone, Debug)]
pub struct DlogEqStatement<'a> {
    pub base_bar: &'a EdPoint,
    pub k: &'a EdPoint,
    pub k_bar: &'a EdPoint,
}

fn dlogeq_challenge(
    profile: &CurveProfile,
    stmt: &DlogEqStatement<'_>,
    context: &[u8],
    transcript: &[(EdPoint, EdPoint)],
    round: usize,
) -> FieldElement {
    let mut owned: Vec<Vec<u8>> = vec![
        context.to_vec(),
        profile.encode_point(profile.base()),
        profile.encode_point(stmt.base_bar),
        profile.encode_point(stmt.k),
        profile.encode_point(stmt.k_bar),
        (round as u64).to_be_bytes().to_vec(),
    ];
    for (u, u_bar) in transcript {
        owned.push(profile.encode_point(u));
        owned.push(profile.encode_point(u_bar));
    }
    let parts: Vec<&[u8]> = owned.iter().map(|v| v.as_slice()).collect();
    hashing::hash_to_scalar(profile, "FS/DLEQ", &parts)
}

fn challenge_for_round(
    profile: &CurveProfile,
    mode: DlogEqChallenge,
    raw: FieldElement,
) -> FieldElement {
    match mode {
        DlogEqChallenge::Binary { .. } => {
            let bit = raw.value().bit(0);
            profile.scalar_from_u64(bit as u64)
        }
        DlogEqChallenge::SingleFull => raw,
    }
}

pub fn dlogeq_prove<R: Rng + ?Sized>(
    profile: &CurveProfile,
    witness: &FieldElement,
    stmt: &DlogEqStatement<'_>,
    context: &[u8],
    mode: DlogEqChallenge,
    rng: &mut R,
) -> DlogEqProof {
    let curve = profile.curve();
    let total = match mode {
        DlogEqChallenge::Binary { tau } => tau,
        DlogEqChallenge::SingleFull => 1,
    };
    let mut transcript: Vec<(EdPoint, EdPoint)> = Vec::with_capacity(total);
    let mut rounds = Vec::with_capacity(total);
    for round in 0..total {
        let r = FieldElement::random(profile.q().clone(), rng);
        let u = curve.mul(r.value(), profile.base());
        let u_bar = curve.mul(r.value(), stmt.base_bar);
        transcript.push((u.clone(), u_bar.clone()));
        let raw = dlogeq_challenge(profile, stmt, context, &transcript, round);
        let challenge = challenge_for_round(profile, mode, raw);
        let s = r.add(&challenge.mul(witness));
        rounds.push(DlogEqRound { u, u_bar, challenge, s });
    }
    DlogEqProof { rounds }
}

pub fn dlogeq_verify(
    profile: &CurveProfile,
    stmt: &DlogEqStatement<'_>,
    proof: &DlogEqProof,
    context: &[u8],
    mode: DlogEqChallenge,
) -> bool {
    let curve = profile.curve();
    let total = match mode {
        DlogEqChallenge::Binary { tau } => tau,
        DlogEqChallenge::SingleFull => 1,
    };
    if proof.rounds.len() != total {
        return false;
    }
    let mut transcript: Vec<(EdPoint, EdPoint)> = Vec::with_capacity(total);
    for (round, rec) in proof.rounds.iter().enumerate() {
        transcript.push((rec.u.clone(), rec.u_bar.clone()));
        let raw = dlogeq_challenge(profile, stmt, context, &transcript, round);
        if challenge_for_round(profile, mode, raw) != rec.challenge {
            return false;
        }
        // s B = c K + U and s B_bar = c K_bar + U_bar
        let c = rec.challenge.value();
        let ok_main = curve.mul(rec.s.value(), profile.base())
            == curve.add(&curve.mul(c, stmt.k), &rec.u);
        let ok_bar = curve.mul(rec.s.value(), stmt.base_bar)
            == curve.add(&curve.mul(c, stmt.k_bar), &rec.u_bar);
        if !ok_main || !ok_bar {
            return false;
        }
    }
    true
}

// --------------------------------------------------- verifiable nonce hook --

/// Statement tying a signer's published nonce point to its long-lived seed:
/// the seed commitment (opaque encoding), the session point V', and R_i.
#[derive(Clone, Debug)]
pub struct NonceStatement<'a> {
    pub seed_public: &'a [u8],
    pub session_point: Option<&'a AuxPoint>,
    pub nonce_point: &'a EdPoint,
}

/// Which proof system backs the nonce-correctness claim.
///
/// `DevTransparent` attaches no proof material at all. It is explicitly
/// insecure against a signer lying about its nonce point; the ceremony-level
/// recheck (the final signature equation) is what still catches
/// output-corrupting misbehavior. `Bulletproof` is a reserved extension
/// point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NonceProofBackend {
    DevTransparent,
    Bulletproof,
}

pub const DEV_TRANSPARENT_TAG: &str = "dev-transparent";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NonceProof {
    pub backend: String,
    #[serde(with = "crate::wire::hexbytes")]
    pub payload: Vec<u8>,
}

pub fn nonce_prove(
    _stmt: &NonceStatement<'_>,
    _witness: Option<&FieldElement>,
    backend: NonceProofBackend,
) -> Result<NonceProof, Error> {
    match backend {
        NonceProofBackend::DevTransparent => Ok(NonceProof {
            backend: DEV_TRANSPARENT_TAG.into(),
            payload: Vec::new(),
        }),
        NonceProofBackend::Bulletproof => Err(Error::UnsupportedBackend("bulletproof")),
    }
}

pub fn nonce_verify(
    _stmt: &NonceStatement<'_>,
    proof: &NonceProof,
    backend: NonceProofBackend,
) -> Result<(), Error> {
    match backend {
        NonceProofBackend::DevTransparent => {
            if proof.backend == DEV_TRANSPARENT_TAG && proof.payload.is_empty() {
                Ok(())
            } else {
                Err(Error::Malformed("nonce proof"))
            }
        }
        NonceProofBackend::Bulletproof => Err(Error::UnsupportedBackend("bulletproof")),
    }
}
