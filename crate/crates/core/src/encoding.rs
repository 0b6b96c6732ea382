//! The one place where identities and epochs enter Z_q.

use sha2::{Digest, Sha512};

use crate::algebra::PairingEngine;

pub const IDENTITY_DOMAIN: &[u8] = b"RIBE:id:v1";

/// `H("RIBE:id:v1" || raw) mod q` with SHA-512 reduced into the field.
pub fn identity_scalar<E: PairingEngine>(engine: &E, raw: &[u8]) -> E::Scalar {
    let digest = Sha512::new()
        .chain_update(IDENTITY_DOMAIN)
        .chain_update(raw)
        .finalize();
    engine.scalar_from_wide_bytes(&digest)
}

/// Direct embedding of an epoch. Under the mock engine this wraps mod q.
pub fn epoch_scalar<E: PairingEngine>(engine: &E, t: u64) -> E::Scalar {
    engine.scalar_from_u64(t)
}
