//! BLS12-381 (type-3, ~128-bit security) backed by arkworks.

use ark_bls12_381::{Bls12_381, Fr, G1Affine, G1Projective, G2Affine, G2Projective};
use ark_ec::pairing::{Pairing, PairingOutput};
use ark_ec::{CurveGroup, PrimeGroup};
use ark_ff::{Field, PrimeField, UniformRand};
use ark_serialize::{CanonicalDeserialize, CanonicalSerialize};
use rand::{CryptoRng, RngCore};

use super::engine::{EngineDescriptor, PairingEngine};
use crate::error::{Error, Result};

pub type Gt = PairingOutput<Bls12_381>;

const SCALAR_LEN: usize = 32;
const G1_LEN: usize = 48;
const G2_LEN: usize = 96;
const GT_LEN: usize = 576;

/// The production engine. Points use the standard compressed encodings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Bls12;

fn serialize<T: CanonicalSerialize>(v: &T, out: &mut Vec<u8>) {
    v.serialize_compressed(out)
        .expect("writing to a Vec cannot fail");
}

fn deserialize<T: CanonicalDeserialize>(bytes: &[u8], len: usize, what: &str) -> Result<T> {
    let bytes = bytes
        .get(..len)
        .ok_or_else(|| Error::malformed(format!("truncated {what}")))?;
    T::deserialize_compressed(bytes).map_err(|e| Error::malformed(format!("{what}: {e}")))
}

impl PairingEngine for Bls12 {
    type Scalar = Fr;
    type G1 = G1Projective;
    type G2 = G2Projective;
    type Gt = Gt;

    fn descriptor(&self) -> EngineDescriptor {
        EngineDescriptor::Bls12_381
    }

    fn scalar_from_u64(&self, v: u64) -> Fr {
        Fr::from(v)
    }

    fn scalar_from_wide_bytes(&self, bytes: &[u8]) -> Fr {
        Fr::from_le_bytes_mod_order(bytes)
    }

    fn random_scalar<R: RngCore + CryptoRng + ?Sized>(&self, rng: &mut R) -> Fr {
        Fr::rand(rng)
    }

    fn invert(&self, s: &Fr) -> Option<Fr> {
        s.inverse()
    }

    fn g1_generator(&self) -> G1Projective {
        G1Projective::generator()
    }

    fn g2_generator(&self) -> G2Projective {
        G2Projective::generator()
    }

    fn gt_identity(&self) -> Gt {
        Gt::default()
    }

    fn multi_pair(&self, a: &[G1Projective], b: &[G2Projective]) -> Gt {
        debug_assert_eq!(a.len(), b.len());
        let a: Vec<G1Affine> = G1Projective::normalize_batch(a);
        let b: Vec<G2Affine> = G2Projective::normalize_batch(b);
        Bls12_381::multi_pairing(a, b)
    }

    fn random_gt<R: RngCore + CryptoRng + ?Sized>(&self, rng: &mut R) -> Gt {
        Gt::generator() * Fr::rand(rng)
    }

    fn write_scalar(&self, s: &Fr, out: &mut Vec<u8>) {
        serialize(s, out)
    }

    fn write_g1(&self, p: &G1Projective, out: &mut Vec<u8>) {
        serialize(&p.into_affine(), out)
    }

    fn write_g2(&self, p: &G2Projective, out: &mut Vec<u8>) {
        serialize(&p.into_affine(), out)
    }

    fn write_gt(&self, p: &Gt, out: &mut Vec<u8>) {
        serialize(p, out)
    }

    fn scalar_len(&self) -> usize {
        SCALAR_LEN
    }

    fn g1_len(&self) -> usize {
        G1_LEN
    }

    fn g2_len(&self) -> usize {
        G2_LEN
    }

    fn gt_len(&self) -> usize {
        GT_LEN
    }

    fn read_scalar(&self, bytes: &[u8]) -> Result<Fr> {
        deserialize(bytes, SCALAR_LEN, "scalar")
    }

    fn read_g1(&self, bytes: &[u8]) -> Result<G1Projective> {
        deserialize::<G1Affine>(bytes, G1_LEN, "G1 point").map(Into::into)
    }

    fn read_g2(&self, bytes: &[u8]) -> Result<G2Projective> {
        deserialize::<G2Affine>(bytes, G2_LEN, "G2 point").map(Into::into)
    }

    fn read_gt(&self, bytes: &[u8]) -> Result<Gt> {
        deserialize(bytes, GT_LEN, "GT element")
    }
}
