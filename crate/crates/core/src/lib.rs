//! A (2,3)-threshold, EdDSA-compatible signature scheme with an offline
//! recovery party.
//!
//! Two online parties run distributed key generation and ordinary two-party
//! signing; a third party stays offline after setup and can later join either
//! online party using encrypted recovery material produced during key
//! generation. Nonces are deterministic and verifiable, derived from
//! long-lived seeds over an auxiliary curve pair. Output signatures pass a
//! standard cofactored verifier.
//!
//! Layout: [`algebra`] (fields, curves, profiles), [`hashing`] (the hash
//! pipeline), [`eddsa`] (the centralized oracle), [`commitment`], [`vss`],
//! [`zkp`], [`purify`] (verifiable nonces), [`recovery_enc`], [`protocol`]
//! (party state machines), [`sim`] (in-memory transport, orchestrator,
//! adversarial harness).

pub mod algebra;
pub mod commitment;
pub mod eddsa;
mod error;
pub mod hashing;
pub mod purify;
pub mod recovery_enc;
pub mod vss;
pub mod wire;
pub mod zkp;

pub use algebra::{
    AuxPoint, BasePoint, CurveProfile, EdPoint, FieldElement, Fq2Element, HashMode, ProfileConfig,
    PurifyParams,
};
pub use eddsa::{CentralKeypair, Signature};
pub use error::Error;
