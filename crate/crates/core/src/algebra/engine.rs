use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{CryptoRng, RngCore};

use crate::error::{Error, Result};

/// An element of one of the three pairing groups, written additively:
/// `+` is the group operation and `* s` is exponentiation by a scalar.
pub trait GroupElement<S>:
    Copy
    + Eq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<S, Output = Self>
{
}

impl<S, T> GroupElement<S> for T where
    T: Copy
        + Eq
        + fmt::Debug
        + Send
        + Sync
        + Add<Output = T>
        + Sub<Output = T>
        + Neg<Output = T>
        + Mul<S, Output = T>
{
}

/// Arithmetic in Z_q.
pub trait ScalarField:
    Copy
    + Eq
    + fmt::Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> ScalarField for T where
    T: Copy
        + Eq
        + fmt::Debug
        + Send
        + Sync
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Identifies a concrete engine instance; stamped into every artifact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EngineDescriptor {
    Bls12_381,
    Mock { q: u64 },
}

impl EngineDescriptor {
    pub fn is_insecure(&self) -> bool {
        matches!(self, EngineDescriptor::Mock { .. })
    }

    pub(crate) fn write(&self, out: &mut Vec<u8>) {
        match self {
            EngineDescriptor::Bls12_381 => out.push(0x00),
            EngineDescriptor::Mock { q } => {
                out.push(0x01);
                out.extend_from_slice(&q.to_le_bytes());
            }
        }
    }

    pub(crate) fn read(bytes: &[u8]) -> Result<(Self, usize)> {
        match bytes.first() {
            Some(0x00) => Ok((EngineDescriptor::Bls12_381, 1)),
            Some(0x01) => {
                let q = bytes
                    .get(1..9)
                    .ok_or_else(|| Error::malformed("truncated engine descriptor"))?;
                let q = u64::from_le_bytes(q.try_into().expect("8 bytes"));
                Ok((EngineDescriptor::Mock { q }, 9))
            }
            Some(tag) => Err(Error::malformed(format!("unknown engine tag {tag:#04x}"))),
            None => Err(Error::malformed("missing engine descriptor")),
        }
    }
}

impl fmt::Display for EngineDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineDescriptor::Bls12_381 => f.write_str("bls12-381"),
            EngineDescriptor::Mock { q } => write!(f, "mock-{q}"),
        }
    }
}

/// A prime-order bilinear pairing `e: G1 x G2 -> GT` together with the
/// scalar field Z_q, generators and canonical encodings.
///
/// Engines are values rather than marker types so that the mock engine can
/// carry its modulus at runtime.
pub trait PairingEngine: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Scalar: ScalarField;
    type G1: GroupElement<Self::Scalar>;
    type G2: GroupElement<Self::Scalar>;
    type Gt: GroupElement<Self::Scalar>;

    fn descriptor(&self) -> EngineDescriptor;

    fn scalar_from_u64(&self, v: u64) -> Self::Scalar;
    /// Reduces an arbitrary byte string (e.g. a 64-byte hash) into Z_q.
    fn scalar_from_wide_bytes(&self, bytes: &[u8]) -> Self::Scalar;
    fn random_scalar<R: RngCore + CryptoRng + ?Sized>(&self, rng: &mut R) -> Self::Scalar;
    fn invert(&self, s: &Self::Scalar) -> Option<Self::Scalar>;

    fn g1_generator(&self) -> Self::G1;
    fn g2_generator(&self) -> Self::G2;
    fn gt_identity(&self) -> Self::Gt;

    /// `prod_i e(a_i, b_i)`. Slices have equal length.
    fn multi_pair(&self, a: &[Self::G1], b: &[Self::G2]) -> Self::Gt;
    fn random_gt<R: RngCore + CryptoRng + ?Sized>(&self, rng: &mut R) -> Self::Gt;

    fn write_scalar(&self, s: &Self::Scalar, out: &mut Vec<u8>);
    fn write_g1(&self, p: &Self::G1, out: &mut Vec<u8>);
    fn write_g2(&self, p: &Self::G2, out: &mut Vec<u8>);
    fn write_gt(&self, p: &Self::Gt, out: &mut Vec<u8>);

    fn scalar_len(&self) -> usize;
    fn g1_len(&self) -> usize;
    fn g2_len(&self) -> usize;
    fn gt_len(&self) -> usize;

    fn read_scalar(&self, bytes: &[u8]) -> Result<Self::Scalar>;
    fn read_g1(&self, bytes: &[u8]) -> Result<Self::G1>;
    fn read_g2(&self, bytes: &[u8]) -> Result<Self::G2>;
    fn read_gt(&self, bytes: &[u8]) -> Result<Self::Gt>;

    fn zero(&self) -> Self::Scalar {
        self.scalar_from_u64(0)
    }

    fn one(&self) -> Self::Scalar {
        self.scalar_from_u64(1)
    }

    fn random_nonzero_scalar<R: RngCore + CryptoRng + ?Sized>(&self, rng: &mut R) -> Self::Scalar {
        loop {
            let s = self.random_scalar(rng);
            if s != self.zero() {
                return s;
            }
        }
    }

    fn g1_identity(&self) -> Self::G1 {
        self.g1_generator() * self.zero()
    }

    fn g2_identity(&self) -> Self::G2 {
        self.g2_generator() * self.zero()
    }

    fn is_insecure(&self) -> bool {
        self.descriptor().is_insecure()
    }

    fn scalar_to_bytes(&self, s: &Self::Scalar) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.scalar_len());
        self.write_scalar(s, &mut out);
        out
    }

    fn gt_to_bytes(&self, p: &Self::Gt) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.gt_len());
        self.write_gt(p, &mut out);
        out
    }
}
