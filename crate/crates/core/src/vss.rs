//! Feldman verifiable secret sharing: degree-t polynomial shares, group
//! commitments to the coefficients, share verification against those
//! commitments, and Lagrange reconstruction weights.
//!
//! Failure handling is abort-only: a share that does not verify kills the
//! whole ceremony, there is no complaint round.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::Rng;

use crate::algebra::{CurveProfile, EdPoint, FieldElement};
use crate::error::Error;

/// A dealer's sharing: the shares y_j = P(j) and the coefficient commitments
/// C_k = a_k B (with C_0 committing the secret).
#[derive(Clone, Debug)]
pub struct ShareSet {
    pub degree: usize,
    pub shares: BTreeMap<u64, FieldElement>,
    pub commitments: Vec<EdPoint>,
}

/// Shares `secret` with a random polynomial of the given degree, evaluated at
/// the (distinct, nonzero) indices.
pub fn share<R: Rng + ?Sized>(
    profile: &CurveProfile,
    secret: &FieldElement,
    degree: usize,
    indices: &[u64],
    rng: &mut R,
) -> Result<ShareSet, Error> {
    let q = profile.q();
    let mut coeffs = vec![secret.clone()];
    for _ in 0..degree {
        coeffs.push(FieldElement::random(q.clone(), rng));
    }
    let mut shares = BTreeMap::new();
    for &j in indices {
        if j == 0 {
            return Err(Error::Malformed("share index zero"));
        }
        if shares.contains_key(&j) {
            return Err(Error::DuplicateIndex(j));
        }
        shares.insert(j, eval_poly(&coeffs, j));
    }
    let commitments = coeffs
        .iter()
        .map(|a| profile.curve().mul(a.value(), profile.base()))
        .collect();
    Ok(ShareSet { degree, shares, commitments })
}

/// Horner evaluation of the sharing polynomial at a small index.
pub fn eval_poly(coeffs: &[FieldElement], at: u64) -> FieldElement {
    let x = FieldElement::from_u64(at, coeffs[0].modulus().clone());
    let mut acc = coeffs.last().expect("nonempty").clone();
    for c in coeffs.iter().rev().skip(1) {
        acc = acc.mul(&x).add(c);
    }
    acc
}

/// Feldman check: accept iff `y B = sum_k j^k C_k`.
pub fn verify_share(
    profile: &CurveProfile,
    index: u64,
    share: &FieldElement,
    commitments: &[EdPoint],
) -> bool {
    let curve = profile.curve();
    let mut rhs = curve.identity();
    let mut power = BigUint::from(1u32);
    let j = BigUint::from(index);
    for c in commitments {
        rhs = curve.add(&rhs, &curve.mul(&power, c));
        power = &power * &j % profile.q().as_ref();
    }
    curve.mul(share.value(), profile.base()) == rhs
}

/// Lagrange weight at zero for index `i` within the signer set `set`:
/// `prod_{j != i} j / (j - i)` over Z_q.
pub fn lagrange_weight(q: &std::sync::Arc<BigUint>, set: &[u64], i: u64) -> FieldElement {
    debug_assert!(set.contains(&i));
    let mut acc = FieldElement::one(q.clone());
    let fi = FieldElement::from_u64(i, q.clone());
    for &j in set {
        if j == i {
            continue;
        }
        let fj = FieldElement::from_u64(j, q.clone());
        let den = fj.sub(&fi).invert().expect("distinct indices");
        acc = acc.mul(&fj).mul(&den);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn toy() -> CurveProfile {
        CurveProfile::toy()
    }

    #[test]
    fn degree_one_secret_at_zero() {
        let toy = toy();
        let mut rng = ChaCha20Rng::seed_from_u64(41);
        let secret = toy.scalar_from_u64(23);
        let set = share(&toy, &secret, 1, &[1, 2, 3], &mut rng).unwrap();
        // commitments commit the coefficients, C_0 the secret
        assert_eq!(
            set.commitments[0],
            toy.curve().mul(secret.value(), toy.base())
        );
        // 2*y1 - y2 recovers the secret for a degree-1 polynomial
        let y1 = &set.shares[&1];
        let y2 = &set.shares[&2];
        assert_eq!(y1.double().sub(y2), secret);
    }

    #[test]
    fn degree_two_lagrange_matches_polynomial_oracle() {
        let toy = toy();
        let q = toy.q().clone();
        let mut rng = ChaCha20Rng::seed_from_u64(42);
        for _ in 0..200 {
            let secret = FieldElement::random(q.clone(), &mut rng);
            let set = share(&toy, &secret, 2, &[1, 2, 3], &mut rng).unwrap();
            let mut acc = FieldElement::zero(q.clone());
            for &i in &[1u64, 2, 3] {
                let w = lagrange_weight(&q, &[1, 2, 3], i);
                acc = acc.add(&w.mul(&set.shares[&i]));
            }
            assert_eq!(acc, secret);
        }
    }

    #[test]
    fn shares_verify_and_tampered_share_fails() {
        let toy = toy();
        let mut rng = ChaCha20Rng::seed_from_u64(43);
        let secret = toy.scalar_from_u64(5);
        let set = share(&toy, &secret, 1, &[1, 2, 3], &mut rng).unwrap();
        for (&j, y) in &set.shares {
            assert!(verify_share(&toy, j, y, &set.commitments));
            let bad = y.add(&toy.scalar_from_u64(1));
            assert!(!verify_share(&toy, j, &bad, &set.commitments));
        }
    }

    #[test]
    fn replaced_commitment_rejected_for_some_index() {
        let toy = toy();
        let mut rng = ChaCha20Rng::seed_from_u64(44);
        let secret = toy.scalar_from_u64(9);
        let set = share(&toy, &secret, 1, &[1, 2, 3], &mut rng).unwrap();
        let mut commitments = set.commitments.clone();
        commitments[1] = toy.curve().add(&commitments[1], toy.base());
        let rejected = set
            .shares
            .iter()
            .any(|(&j, y)| !verify_share(&toy, j, y, &commitments));
        assert!(rejected);
    }

    #[test]
    fn duplicate_and_zero_indices_are_errors() {
        let toy = toy();
        let mut rng = ChaCha20Rng::seed_from_u64(45);
        let secret = toy.scalar_from_u64(1);
        assert!(matches!(
            share(&toy, &secret, 1, &[1, 1], &mut rng),
            Err(Error::DuplicateIndex(1))
        ));
        assert!(share(&toy, &secret, 1, &[0, 1], &mut rng).is_err());
    }

    #[test]
    fn lagrange_weights_for_the_three_pairs() {
        // {1,2} -> (2, -1); {1,3} -> (3/2, -1/2); {2,3} -> (3, -2)
        let toy = toy();
        let q = toy.q().clone();
        let fe = |v: u64| FieldElement::from_u64(v, q.clone());
        assert_eq!(lagrange_weight(&q, &[1, 2], 1), fe(2));
        assert_eq!(lagrange_weight(&q, &[1, 2], 2), fe(1).neg());
        let half = fe(2).invert().unwrap();
        assert_eq!(lagrange_weight(&q, &[1, 3], 1), fe(3).mul(&half));
        assert_eq!(lagrange_weight(&q, &[1, 3], 3), half.neg());
        assert_eq!(lagrange_weight(&q, &[2, 3], 2), fe(3));
        assert_eq!(lagrange_weight(&q, &[2, 3], 3), fe(2).neg());
    }

    #[test]
    fn exhaustive_degree_one_accept_set() {
        // verify_share accepts exactly the dealer's polynomial evaluations
        let toy = toy();
        let mut rng = ChaCha20Rng::seed_from_u64(46);
        let secret = FieldElement::random(toy.q().clone(), &mut rng);
        let set = share(&toy, &secret, 1, &[1, 2, 3], &mut rng).unwrap();
        for j in 1u64..=3 {
            let honest = &set.shares[&j];
            for v in 0..79u64 {
                let candidate = toy.scalar_from_u64(v);
                assert_eq!(
                    verify_share(&toy, j, &candidate, &set.commitments),
                    &candidate == honest,
                    "index {j}, value {v}"
                );
            }
        }
    }

    #[test]
    fn random_subsets_reconstruct_secret() {
        let toy = toy();
        let q = toy.q().clone();
        let mut rng = ChaCha20Rng::seed_from_u64(47);
        for _ in 0..1000 {
            let secret = FieldElement::random(q.clone(), &mut rng);
            let set = share(&toy, &secret, 1, &[1, 2, 3], &mut rng).unwrap();
            for pair in [[1u64, 2], [1, 3], [2, 3]] {
                let mut acc = FieldElement::zero(q.clone());
                for &i in &pair {
                    acc = acc.add(&lagrange_weight(&q, &pair, i).mul(&set.shares[&i]));
                }
                assert_eq!(acc, secret);
            }
        }
    }

    #[test]
    fn simulated_dealer_matches_real_distribution_exhaustively() {
        // dealer-without-secret simulation: forces P(1) = a, sets C_0 = Y and
        // C_1 = aB - Y. Over all dealer randomness the (C_1, share) pairs are
        // exactly the ones a real dealer with that secret produces.
        let toy = toy();
        let q = toy.q().clone();
        let curve = toy.curve();
        let secret = toy.scalar_from_u64(17);
        let y_pub = curve.mul(secret.value(), toy.base());

        let mut real = std::collections::BTreeSet::new();
        for m in 0..79u64 {
            // real dealer with coefficient m: share at 1 is secret + m
            let share1 = secret.add(&toy.scalar_from_u64(m));
            let c1 = curve.mul(&BigUint::from(m), toy.base());
            real.insert((toy.encode_point(&c1), share1.value().clone()));
        }
        let mut simulated = std::collections::BTreeSet::new();
        for a in 0..79u64 {
            let forced = toy.scalar_from_u64(a);
            let c1 = curve.sub(&curve.mul(forced.value(), toy.base()), &y_pub);
            simulated.insert((toy.encode_point(&c1), forced.value().clone()));
        }
        assert_eq!(real, simulated);

        // and the simulated commitments verify the forced share
        for a in 0..79u64 {
            let forced = toy.scalar_from_u64(a);
            let c1 = curve.sub(&curve.mul(forced.value(), toy.base()), &y_pub);
            assert!(verify_share(&toy, 1, &forced, &[y_pub.clone(), c1]));
        }
    }
}
