//! Byte-message envelope around the scheme.
//!
//! The scheme itself only encrypts GT elements. A fresh uniform GT element
//! is encrypted under `(id, t)`; its canonical encoding is run through
//! HKDF-SHA256 to key ChaCha20-Poly1305, which seals the payload with the
//! encoded scheme ciphertext as associated data.
//!
//! ```text
//! "RIBH" | version u8 | ct_len u32 LE | scheme ciphertext | nonce[12] | sealed payload
//! ```

use chacha20poly1305::aead::{Aead, KeyInit, Payload};
use chacha20poly1305::{ChaCha20Poly1305, Key, Nonce};
use hkdf::Hkdf;
use rand::{CryptoRng, RngCore};
use ribe::codec;
use ribe::scheme::{self, Ciphertext, DecryptionKey, PublicParams};
use ribe::PairingEngine;
use sha2::Sha256;

use crate::error::{CliError, CliResult};

pub const MAGIC: &[u8; 4] = b"RIBH";
pub const VERSION: u8 = 1;
const KDF_INFO: &[u8] = b"RIBE:hybrid:v1";
const NONCE_LEN: usize = 12;

fn cipher_for<E: PairingEngine>(pp: &PublicParams<E>, mask: &E::Gt) -> ChaCha20Poly1305 {
    let ikm = pp.group().engine().gt_to_bytes(mask);
    let mut key = [0u8; 32];
    Hkdf::<Sha256>::new(None, &ikm)
        .expand(KDF_INFO, &mut key)
        .expect("32 bytes is a valid HKDF-SHA256 output length");
    ChaCha20Poly1305::new(Key::from_slice(&key))
}

pub fn seal<E, R>(
    pp: &PublicParams<E>,
    id: E::Scalar,
    t: u64,
    plaintext: &[u8],
    rng: &mut R,
) -> CliResult<Vec<u8>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng,
{
    let group = pp.group();
    let mask = group.engine().random_gt(rng);
    let ct = scheme::enc(pp, id, t, &mask, rng)?;
    let ct_bytes = codec::encode(group, &ct);

    let mut nonce = [0u8; NONCE_LEN];
    rng.fill_bytes(&mut nonce);
    let sealed = cipher_for(pp, &mask)
        .encrypt(
            Nonce::from_slice(&nonce),
            Payload {
                msg: plaintext,
                aad: &ct_bytes,
            },
        )
        .map_err(|_| CliError::Other("payload encryption failed".into()))?;

    let ct_len = u32::try_from(ct_bytes.len()).expect("scheme ciphertexts are small");
    let mut out = Vec::with_capacity(9 + ct_bytes.len() + NONCE_LEN + sealed.len());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&ct_len.to_le_bytes());
    out.extend_from_slice(&ct_bytes);
    out.extend_from_slice(&nonce);
    out.extend_from_slice(&sealed);
    Ok(out)
}

/// Splits an envelope into scheme ciphertext, nonce and sealed payload.
pub fn split(bytes: &[u8]) -> CliResult<(&[u8], &[u8], &[u8])> {
    let bad = |msg: &str| CliError::Integrity(format!("malformed envelope: {msg}"));
    if bytes.get(..4) != Some(&MAGIC[..]) {
        return Err(bad("bad magic bytes"));
    }
    match bytes.get(4) {
        Some(&VERSION) => {}
        Some(v) => return Err(bad(&format!("unsupported version {v}"))),
        None => return Err(bad("truncated")),
    }
    let len_bytes: [u8; 4] = bytes
        .get(5..9)
        .and_then(|b| b.try_into().ok())
        .ok_or_else(|| bad("truncated"))?;
    let ct_end = 9usize
        .checked_add(u32::from_le_bytes(len_bytes) as usize)
        .ok_or_else(|| bad("length overflow"))?;
    let ct = bytes.get(9..ct_end).ok_or_else(|| bad("truncated"))?;
    let nonce = bytes
        .get(ct_end..ct_end + NONCE_LEN)
        .ok_or_else(|| bad("truncated"))?;
    Ok((ct, nonce, &bytes[ct_end + NONCE_LEN..]))
}

/// Fails closed: any malformed field or tag mismatch is an integrity error.
pub fn open<E: PairingEngine>(
    pp: &PublicParams<E>,
    dk: &DecryptionKey<E>,
    bytes: &[u8],
) -> CliResult<Vec<u8>> {
    let (ct_bytes, nonce, sealed) = split(bytes)?;
    let ct: Ciphertext<E> = codec::decode(pp.group(), ct_bytes)
        .map_err(|e| CliError::Integrity(format!("scheme ciphertext: {e}")))?;
    let mask = scheme::dec(pp, dk, &ct)?;
    cipher_for(pp, &mask)
        .decrypt(
            Nonce::from_slice(nonce),
            Payload {
                msg: sealed,
                aad: ct_bytes,
            },
        )
        .map_err(|_| {
            CliError::Integrity(
                "authentication tag mismatch (wrong identity, epoch or corrupt ciphertext)".into(),
            )
        })
}
