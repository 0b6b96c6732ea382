//! Pairing groups, vectors of group elements, and dual orthonormal bases.
//!
//! Everything is written additively: for `g` a generator and `v` an
//! exponent vector, `g^v` is the vector `(v_1 * g, ..., v_n * g)`, and the
//! vector pairing `e(g1^v, g2^w) = e(g1, g2)^{v.w}` is the product of the
//! `n` component pairings.

mod bls12;
mod dual;
mod engine;
mod mock;
mod vector;

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

pub use bls12::{Bls12, Gt as Bls12Gt};
pub use dual::{sample_dual_bases, DualBases, MAX_BASIS_ATTEMPTS};
pub use engine::{EngineDescriptor, GroupElement, PairingEngine, ScalarField};
pub use mock::{MockEngine, Zq, MOCK_MODULUS_BOUND};
pub use vector::{ExponentVector, GroupVector};

use crate::error::{Error, Result};

pub type G1Vector<E> = GroupVector<<E as PairingEngine>::G1>;
pub type G2Vector<E> = GroupVector<<E as PairingEngine>::G2>;
pub type ScalarVector<E> = ExponentVector<<E as PairingEngine>::Scalar>;

/// A pairing context `(q, G1, G2, GT, g1, g2, e)`.
///
/// Clones share a counter of executed component pairings, which is how the
/// pairing cost of decryption is observed.
#[derive(Clone, Debug)]
pub struct GroupDescription<E: PairingEngine> {
    engine: E,
    pairings: Arc<AtomicU64>,
}

impl<E: PairingEngine> PartialEq for GroupDescription<E> {
    fn eq(&self, other: &Self) -> bool {
        self.engine == other.engine
    }
}

impl GroupDescription<Bls12> {
    pub fn production() -> Self {
        GroupDescription::new(Bls12)
    }
}

impl GroupDescription<MockEngine> {
    pub fn mock(q: u64) -> Result<Self> {
        MockEngine::new(q).map(GroupDescription::new)
    }
}

impl<E: PairingEngine> GroupDescription<E> {
    pub fn new(engine: E) -> Self {
        GroupDescription {
            engine,
            pairings: Arc::new(AtomicU64::new(0)),
        }
    }

    pub fn engine(&self) -> &E {
        &self.engine
    }

    pub fn descriptor(&self) -> EngineDescriptor {
        self.engine.descriptor()
    }

    pub fn is_insecure(&self) -> bool {
        self.engine.is_insecure()
    }

    pub fn g1(&self) -> E::G1 {
        self.engine.g1_generator()
    }

    pub fn g2(&self) -> E::G2 {
        self.engine.g2_generator()
    }

    /// A single pairing `e(a, b)`.
    pub fn pair(&self, a: &E::G1, b: &E::G2) -> E::Gt {
        self.pairings.fetch_add(1, Ordering::Relaxed);
        self.engine
            .multi_pair(std::slice::from_ref(a), std::slice::from_ref(b))
    }

    /// `e(g1, g2)`.
    pub fn gt_generator(&self) -> E::Gt {
        self.engine.multi_pair(&[self.g1()], &[self.g2()])
    }

    /// Component pairings executed through this description (and its clones).
    pub fn pairing_count(&self) -> u64 {
        self.pairings.load(Ordering::Relaxed)
    }

    pub fn reset_pairing_count(&self) {
        self.pairings.store(0, Ordering::Relaxed);
    }

    pub fn vec_exp_g1(&self, v: &ScalarVector<E>) -> G1Vector<E> {
        let g = self.g1();
        GroupVector::from_elements(v.coords().iter().map(|c| g * *c).collect())
    }

    pub fn vec_exp_g2(&self, v: &ScalarVector<E>) -> G2Vector<E> {
        let g = self.g2();
        GroupVector::from_elements(v.coords().iter().map(|c| g * *c).collect())
    }

    /// `e(g1^v, g2^w) = prod_i e(g1^{v_i}, g2^{w_i})`; executes exactly
    /// `dim` component pairings (evaluated as one product).
    pub fn vec_pair(&self, x: &G1Vector<E>, y: &G2Vector<E>) -> Result<E::Gt> {
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch {
                expected: x.dim(),
                found: y.dim(),
            });
        }
        if x.dim() == 0 {
            return Err(Error::EmptyVector);
        }
        self.pairings.fetch_add(x.dim() as u64, Ordering::Relaxed);
        Ok(self.engine.multi_pair(x.elements(), y.elements()))
    }
}

/// Requested pairing-group profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Production,
    Mock(u64),
}

impl Profile {
    /// Parses `production` or `mock:<q>`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "production" | "bls12-381" => Ok(Profile::Production),
            _ => s
                .strip_prefix("mock:")
                .and_then(|q| q.parse().ok())
                .map(Profile::Mock)
                .ok_or_else(|| Error::UnsupportedProfile(s.to_string())),
        }
    }
}
