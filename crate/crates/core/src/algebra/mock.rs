//! Exponent-only pairing engine for brute-force testing.
//!
//! **Insecure.** G1, G2 and GT are all `(Z_q, +)` with generator 1, and the
//! pairing is multiplication in Z_q, so every group element *is* its own
//! discrete logarithm. This lets tests recompute published formulas
//! coefficient by coefficient. Never use it to protect anything.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{CryptoRng, Rng, RngCore};

use super::engine::{EngineDescriptor, PairingEngine};
use crate::error::{Error, Result};

/// Largest modulus (exclusive) accepted by the mock engine. Products of two
/// residues then fit in a `u64`.
pub const MOCK_MODULUS_BOUND: u64 = 1 << 31;

/// A residue in Z_q, carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zq {
    value: u64,
    modulus: u64,
}

impl Zq {
    pub fn new(value: u64, modulus: u64) -> Self {
        Zq {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn check(&self, other: &Zq) {
        debug_assert_eq!(self.modulus, other.modulus, "mixed moduli");
    }
}

impl fmt::Debug for Zq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl Add for Zq {
    type Output = Zq;
    fn add(self, rhs: Zq) -> Zq {
        self.check(&rhs);
        Zq::new(self.value + rhs.value, self.modulus)
    }
}

impl Sub for Zq {
    type Output = Zq;
    fn sub(self, rhs: Zq) -> Zq {
        self.check(&rhs);
        Zq::new(self.value + self.modulus - rhs.value, self.modulus)
    }
}

impl Mul for Zq {
    type Output = Zq;
    fn mul(self, rhs: Zq) -> Zq {
        self.check(&rhs);
        Zq::new(self.value * rhs.value, self.modulus)
    }
}

impl Neg for Zq {
    type Output = Zq;
    fn neg(self) -> Zq {
        Zq::new(self.modulus - self.value, self.modulus)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, q: u64) -> u64 {
    let mut acc = 1 % q;
    base %= q;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % q;
        }
        base = base * base % q;
        exp >>= 1;
    }
    acc
}

/// The insecure exponent-only engine over Z_q for a small prime q.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MockEngine {
    q: u64,
}

impl MockEngine {
    pub fn new(q: u64) -> Result<Self> {
        if !(2..MOCK_MODULUS_BOUND).contains(&q) {
            return Err(Error::ModulusOutOfRange(q));
        }
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(MockEngine { q })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn element(&self, v: u64) -> Zq {
        Zq::new(v, self.q)
    }

    fn read_residue(&self, bytes: &[u8]) -> Result<Zq> {
        let raw: [u8; 8] = bytes
            .get(..8)
            .and_then(|b| b.try_into().ok())
            .ok_or_else(|| Error::malformed("truncated mock residue"))?;
        let v = u64::from_le_bytes(raw);
        if v >= self.q {
            return Err(Error::malformed(format!(
                "residue {v} not reduced mod {}",
                self.q
            )));
        }
        Ok(Zq::new(v, self.q))
    }
}

impl PairingEngine for MockEngine {
    type Scalar = Zq;
    type G1 = Zq;
    type G2 = Zq;
    type Gt = Zq;

    fn descriptor(&self) -> EngineDescriptor {
        EngineDescriptor::Mock { q: self.q }
    }

    fn scalar_from_u64(&self, v: u64) -> Zq {
        self.element(v)
    }

    fn scalar_from_wide_bytes(&self, bytes: &[u8]) -> Zq {
        // Horner over base 256; every step stays below 2^39.
        let v = bytes
            .iter()
            .rev()
            .fold(0u64, |acc, b| (acc * 256 + u64::from(*b)) % self.q);
        self.element(v)
    }

    fn random_scalar<R: RngCore + CryptoRng + ?Sized>(&self, rng: &mut R) -> Zq {
        self.element(rng.gen_range(0..self.q))
    }

    fn invert(&self, s: &Zq) -> Option<Zq> {
        if s.value == 0 {
            None
        } else {
            Some(self.element(pow_mod(s.value, self.q - 2, self.q)))
        }
    }

    fn g1_generator(&self) -> Zq {
        self.element(1)
    }

    fn g2_generator(&self) -> Zq {
        self.element(1)
    }

    fn gt_identity(&self) -> Zq {
        self.element(0)
    }

    fn multi_pair(&self, a: &[Zq], b: &[Zq]) -> Zq {
        a.iter()
            .zip(b)
            .fold(self.element(0), |acc, (x, y)| acc + *x * *y)
    }

    fn random_gt<R: RngCore + CryptoRng + ?Sized>(&self, rng: &mut R) -> Zq {
        self.random_scalar(rng)
    }

    fn write_scalar(&self, s: &Zq, out: &mut Vec<u8>) {
        out.extend_from_slice(&s.value.to_le_bytes());
    }

    fn write_g1(&self, p: &Zq, out: &mut Vec<u8>) {
        self.write_scalar(p, out)
    }

    fn write_g2(&self, p: &Zq, out: &mut Vec<u8>) {
        self.write_scalar(p, out)
    }

    fn write_gt(&self, p: &Zq, out: &mut Vec<u8>) {
        self.write_scalar(p, out)
    }

    fn scalar_len(&self) -> usize {
        8
    }

    fn g1_len(&self) -> usize {
        8
    }

    fn g2_len(&self) -> usize {
        8
    }

    fn gt_len(&self) -> usize {
        8
    }

    fn read_scalar(&self, bytes: &[u8]) -> Result<Zq> {
        self.read_residue(bytes)
    }

    fn read_g1(&self, bytes: &[u8]) -> Result<Zq> {
        self.read_residue(bytes)
    }

    fn read_g2(&self, bytes: &[u8]) -> Result<Zq> {
        self.read_residue(bytes)
    }

    fn read_gt(&self, bytes: &[u8]) -> Result<Zq> {
        self.read_residue(bytes)
    }
}
