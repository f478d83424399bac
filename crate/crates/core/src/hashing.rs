//! The hash pipeline: the 2b-bit base hash, reduction onto the scalar ring,
//! secret-scalar clamping, and the domain-separated transcript hashes used
//! throughout the ceremonies.
//!
//! Domain tags in use: `"COM"` (commitments), `"K"` (signer-pair tag),
//! `"SIG"` (signature challenge), `"SIG/NONCE"` (central signer nonce),
//! `"NONCE"` (hashed nonce-seed fallback), `"DER"` (key derivation),
//! `"ENC"` (recovery encryption keystream), `"FS/SCH"`, `"FS/DLEQ"`,
//! `"FS/H2C/H1"`, `"FS/H2C/H2"` (Fiat-Shamir transcripts). Every part is
//! length-prefixed; see [`crate::wire`].

use num_bigint::BigUint;
use sha2::{Digest as _, Sha512};

use crate::algebra::{CurveProfile, FieldElement, HashMode};
use crate::error::Error;
use crate::wire;

/// Output of the base hash: exactly 2b bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digest(Vec<u8>);

impl Digest {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }
}

/// The base hash H': SHA-512 truncated to the profile's 2b bits. The ed25519
/// profile uses the full 64 bytes; the toy profile keeps the leading 4.
pub fn h_prime(profile: &CurveProfile, input: &[u8]) -> Digest {
    let mut out = Sha512::digest(input).to_vec();
    out.truncate(profile.digest_len());
    Digest(out)
}

/// Little-endian interpretation reduced into `Z_q`.
pub fn reduce_digest(profile: &CurveProfile, digest: &Digest) -> FieldElement {
    FieldElement::new(BigUint::from_bytes_le(digest.as_bytes()), profile.q().clone())
}

/// Domain-tagged, length-prefixed hash onto `Z_q`. This is the workhorse for
/// challenges, the signer-pair tag and the partial-signature hash.
pub fn hash_to_scalar(profile: &CurveProfile, tag: &str, parts: &[&[u8]]) -> FieldElement {
    let digest = h_prime(profile, &wire::framed(tag, parts));
    reduce_digest(profile, &digest)
}

/// The signature challenge H(R || A || M). In `Rfc8032` mode the inputs are
/// concatenated bare (point encodings are fixed-width, so this matches the
/// standard pipeline byte for byte); otherwise they are tagged and framed.
pub fn challenge_scalar(
    profile: &CurveProfile,
    r_enc: &[u8],
    a_enc: &[u8],
    msg: &[u8],
) -> FieldElement {
    match profile.hash_mode() {
        HashMode::Tagged => hash_to_scalar(profile, "SIG", &[r_enc, a_enc, msg]),
        HashMode::Rfc8032 => {
            let mut input = Vec::with_capacity(r_enc.len() + a_enc.len() + msg.len());
            input.extend_from_slice(r_enc);
            input.extend_from_slice(a_enc);
            input.extend_from_slice(msg);
            reduce_digest(profile, &h_prime(profile, &input))
        }
    }
}

/// Central-signer nonce H(prefix || M).
pub fn central_nonce(profile: &CurveProfile, prefix: &[u8], msg: &[u8]) -> FieldElement {
    match profile.hash_mode() {
        HashMode::Tagged => hash_to_scalar(profile, "SIG/NONCE", &[prefix, msg]),
        HashMode::Rfc8032 => {
            let mut input = Vec::with_capacity(prefix.len() + msg.len());
            input.extend_from_slice(prefix);
            input.extend_from_slice(msg);
            reduce_digest(profile, &h_prime(profile, &input))
        }
    }
}

/// Clamps digest bits into the secret-scalar integer, before reduction.
///
/// Tagged mode forces the `2^(n+1)` term and keeps bits `c..=n` of the first
/// n digest bits (bit n of a truncated-to-n string is necessarily zero, so
/// the top kept bit is n-1). Rfc8032 mode is the conventional clamp: force
/// `2^n`, keep bits `c..n-1`.
pub fn clamp_integer(profile: &CurveProfile, digest_bits: &[u8]) -> BigUint {
    let n = profile.scalar_bits() as u64;
    let c = profile.cofactor_log2() as u64;
    let bit = |i: u64| -> bool {
        let byte = (i / 8) as usize;
        byte < digest_bits.len() && (digest_bits[byte] >> (i % 8)) & 1 == 1
    };
    let mut acc;
    match profile.hash_mode() {
        HashMode::Tagged => {
            acc = BigUint::from(1u32) << (n + 1);
            for i in c..=n {
                if i < n && bit(i) {
                    acc |= BigUint::from(1u32) << i;
                }
            }
        }
        HashMode::Rfc8032 => {
            acc = BigUint::from(1u32) << n;
            for i in c..n {
                if bit(i) {
                    acc |= BigUint::from(1u32) << i;
                }
            }
        }
    }
    acc
}

/// The secret-scalar map: hash the b-bit key, truncate, clamp, reduce.
/// Returns the scalar together with the pre-reduction integer (tests assert
/// its bit structure directly).
pub fn secret_scalar(profile: &CurveProfile, key: &[u8]) -> Result<(FieldElement, BigUint), Error> {
    let expected = profile.point_len();
    if key.len() != expected {
        return Err(Error::Length { expected, got: key.len() });
    }
    let digest = h_prime(profile, key);
    let unreduced = clamp_integer(profile, digest.as_bytes());
    let scalar = FieldElement::new(unreduced.clone(), profile.q().clone());
    Ok((scalar, unreduced))
}

/// Upper b bits of H'(key), used as the deterministic nonce prefix of the
/// central signer.
pub fn secret_prefix(profile: &CurveProfile, key: &[u8]) -> Result<Vec<u8>, Error> {
    let expected = profile.point_len();
    if key.len() != expected {
        return Err(Error::Length { expected, got: key.len() });
    }
    let digest = h_prime(profile, key);
    Ok(digest.as_bytes()[expected..].to_vec())
}

/// Chi-square statistic of a sampler over `Z_q` against the uniform
/// distribution. Values are bucketed by `floor(v * buckets / q)`; since q is
/// generally not a multiple of the bucket count, the expected count of each
/// bucket is proportional to how many residues it covers. The caller compares
/// the result against the chi-square quantile for `buckets - 1` degrees of
/// freedom.
pub fn prng_uniformity_check<F>(q: &BigUint, buckets: usize, trials: usize, mut sampler: F) -> f64
where
    F: FnMut() -> BigUint,
{
    assert!(buckets >= 2);
    assert!(trials >= 10 * buckets, "need at least 10 samples per bucket");
    let mut counts = vec![0u64; buckets];
    let b = BigUint::from(buckets as u64);
    for _ in 0..trials {
        let v = sampler() % q;
        let idx = (&v * &b / q).to_u64_digits().first().copied().unwrap_or(0) as usize;
        counts[idx.min(buckets - 1)] += 1;
    }
    let mut widths = vec![0u64; buckets];
    let mut v = BigUint::from(0u32);
    while &v < q {
        let idx = (&v * &b / q).to_u64_digits().first().copied().unwrap_or(0) as usize;
        widths[idx.min(buckets - 1)] += 1;
        v += 1u32;
    }
    let q_f = widths.iter().sum::<u64>() as f64;
    counts
        .iter()
        .zip(&widths)
        .map(|(&o, &w)| {
            let expected = trials as f64 * w as f64 / q_f;
            let d = o as f64 - expected;
            d * d / expected
        })
        .sum()
}

/// 0.999 quantile of the chi-square distribution with 15 degrees of freedom
/// (the 16-bucket tests), from standard tables.
pub const CHI2_15_P999: f64 = 37.697;

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    #[test]
    fn hash_to_scalar_is_deterministic_and_below_q() {
        let toy = CurveProfile::toy();
        let a = hash_to_scalar(&toy, "SIG", &[b"ab", b"c"]);
        let b = hash_to_scalar(&toy, "SIG", &[b"ab", b"c"]);
        assert_eq!(a, b);
        assert!(a.value() < toy.q().as_ref());
    }

    #[test]
    fn framing_separates_equal_concatenations() {
        let toy = CurveProfile::toy();
        // same concatenation, different splits / tags
        assert_ne!(
            h_prime(&toy, &wire::framed("SIG", &[b"ab", b"c"])),
            h_prime(&toy, &wire::framed("SIG", &[b"a", b"bc"]))
        );
        assert_ne!(
            hash_to_scalar(&toy, "SIG", &[b"x"]),
            hash_to_scalar(&toy, "K", &[b"x"])
        );
    }

    #[test]
    fn hash_to_scalar_matches_independent_reduction() {
        // independent oracle: recompute SHA-512 by hand, truncate, little-endian, mod q
        let toy = CurveProfile::toy();
        let parts: [&[u8]; 2] = [b"fixed", b"vector"];
        let got = hash_to_scalar(&toy, "SIG", &parts);
        let framed = wire::framed("SIG", &parts);
        let full = Sha512::digest(&framed);
        let mut le = 0u64;
        for (i, byte) in full[..4].iter().enumerate() {
            le |= (*byte as u64) << (8 * i);
        }
        assert_eq!(got.value(), &BigUint::from(le % 79));
    }

    #[test]
    fn clamp_examples() {
        let toy = CurveProfile::toy(); // n = 6, c = 2, q = 79
        // all-zero digest: only the forced 2^(n+1) term remains
        let zeros = vec![0u8; toy.digest_len()];
        assert_eq!(clamp_integer(&toy, &zeros), BigUint::from(128u32));
        // only bit c set
        let mut only_c = zeros.clone();
        only_c[0] = 1 << 2;
        assert_eq!(clamp_integer(&toy, &only_c), BigUint::from(128u32 + 4));
        // six ones: 2^7 + (2^2 + 2^3 + 2^4 + 2^5) = 188, which reduces to 30
        let h = vec![0b0011_1111u8, 0, 0, 0];
        let unreduced = clamp_integer(&toy, &h);
        assert_eq!(unreduced, BigUint::from(188u32));
        assert_eq!(
            FieldElement::new(unreduced, toy.q().clone()).value(),
            &BigUint::from(30u32)
        );
    }

    #[test]
    fn clamp_bit_structure_invariant() {
        // low c bits zero, forced top term present, for random keys
        let toy = CurveProfile::toy();
        let mut rng = ChaCha20Rng::seed_from_u64(3);
        for _ in 0..500 {
            let key: [u8; 2] = rng.gen();
            let (_, unreduced) = secret_scalar(&toy, &key).unwrap();
            for i in 0..toy.cofactor_log2() as u64 {
                assert!(!unreduced.bit(i));
            }
            assert!(unreduced.bit(toy.scalar_bits() as u64 + 1));
        }
        let ed = CurveProfile::ed25519(HashMode::Rfc8032);
        for _ in 0..50 {
            let key: [u8; 32] = rng.gen();
            let (_, unreduced) = secret_scalar(&ed, &key).unwrap();
            for i in 0..3 {
                assert!(!unreduced.bit(i));
            }
            assert!(unreduced.bit(254));
            assert!(!unreduced.bit(255));
        }
    }

    #[test]
    fn secret_scalar_rejects_wrong_length() {
        let toy = CurveProfile::toy();
        assert!(matches!(
            secret_scalar(&toy, &[0u8; 3]),
            Err(Error::Length { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn uniform_sampler_passes_chi_square() {
        let toy = CurveProfile::toy();
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        let stat = prng_uniformity_check(toy.q(), 16, 10_000, || {
            BigUint::from(rng.gen_range(0u64..79))
        });
        assert!(stat < CHI2_15_P999, "stat = {stat}");
    }

    #[test]
    fn constant_sampler_fails_chi_square() {
        let toy = CurveProfile::toy();
        let stat = prng_uniformity_check(toy.q(), 16, 10_000, || BigUint::from(5u32));
        assert!(stat > CHI2_15_P999, "stat = {stat}");
    }

    #[test]
    fn hash_to_scalar_over_counters_passes_chi_square() {
        let toy = CurveProfile::toy();
        let mut counter = 0u64;
        let stat = prng_uniformity_check(toy.q(), 16, 10_000, || {
            counter += 1;
            hash_to_scalar(&toy, "SIG", &[&counter.to_be_bytes()])
                .value()
                .clone()
        });
        assert!(stat < CHI2_15_P999, "stat = {stat}");
    }

    proptest! {
        #[test]
        fn framing_injective_for_random_part_lists(
            parts in prop::collection::vec(prop::collection::vec(any::<u8>(), 0..8), 1..5),
            split in any::<prop::sample::Index>(),
        ) {
            // move one boundary while keeping the concatenation fixed
            let toy = CurveProfile::toy();
            let refs: Vec<&[u8]> = parts.iter().map(|p| p.as_slice()).collect();
            let concat: Vec<u8> = parts.concat();
            if concat.is_empty() {
                return Ok(());
            }
            let cut = split.index(concat.len());
            let alt = [&concat[..cut], &concat[cut..]];
            let same_split = refs.len() == 2 && refs[0] == alt[0] && refs[1] == alt[1];
            if !same_split {
                let original = h_prime(&toy, &wire::framed("T", &refs));
                let moved = h_prime(&toy, &wire::framed("T", &[alt[0], alt[1]]));
                prop_assert_ne!(original, moved);
            }
        }

        #[test]
        fn hash_to_scalar_always_reduced(bytes in prop::collection::vec(any::<u8>(), 0..64)) {
            let toy = CurveProfile::toy();
            let s = hash_to_scalar(&toy, "SIG", &[&bytes]);
            prop_assert!(s.value() < toy.q().as_ref());
            prop_assert!(!toy.q().as_ref().is_zero());
        }
    }
}
