use rand::{CryptoRng, RngCore};

use super::engine::PairingEngine;
use super::vector::ExponentVector;
use super::GroupDescription;
use crate::error::{Error, Result};

/// Give up after this many singular draws. A uniform matrix over Z_q is
/// singular with probability below 1/(q-1), so this only trips for tiny q
/// with astronomically bad luck.
pub const MAX_BASIS_ATTEMPTS: usize = 100;

/// Dual orthonormal bases `(D, D*)` of Z_q^n: `d_i . d_j* = 0` for `i != j`
/// and `d_i . d_i* = psi` for every `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBases<S> {
    basis: Vec<ExponentVector<S>>,
    dual: Vec<ExponentVector<S>>,
    psi: S,
}

impl<S: Copy> DualBases<S> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `d_i`, zero-indexed.
    pub fn basis(&self, i: usize) -> &ExponentVector<S> {
        &self.basis[i]
    }

    /// `d_i*`, zero-indexed.
    pub fn dual(&self, i: usize) -> &ExponentVector<S> {
        &self.dual[i]
    }

    pub fn basis_vectors(&self) -> &[ExponentVector<S>] {
        &self.basis
    }

    pub fn dual_vectors(&self) -> &[ExponentVector<S>] {
        &self.dual
    }

    pub fn psi(&self) -> S {
        self.psi
    }
}

/// Inverts a square matrix over Z_q by Gauss-Jordan elimination.
fn invert<E: PairingEngine>(engine: &E, m: &[Vec<E::Scalar>]) -> Option<Vec<Vec<E::Scalar>>> {
    let n = m.len();
    let zero = engine.zero();
    let mut a: Vec<Vec<E::Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<E::Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { engine.one() } else { zero })
                .collect()
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != zero)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);

        let p = engine.invert(&a[col][col])?;
        for j in 0..n {
            a[col][j] = a[col][j] * p;
            inv[col][j] = inv[col][j] * p;
        }
        for r in 0..n {
            if r == col {
                continue;
            }
            let f = a[r][col];
            if f == zero {
                continue;
            }
            for j in 0..n {
                a[r][j] = a[r][j] - f * a[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    Some(inv)
}

/// Samples random dual orthonormal bases of dimension `n`.
///
/// `D` is the row set of a uniform invertible matrix `B`; `D*` is the row
/// set of `psi * (B^-1)^T` with `psi` uniform in Z_q \ {0}.
pub fn sample_dual_bases<E, R>(
    group: &GroupDescription<E>,
    n: usize,
    rng: &mut R,
) -> Result<DualBases<E::Scalar>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    if n == 0 {
        return Err(Error::EmptyVector);
    }
    let engine = group.engine();
    for _ in 0..MAX_BASIS_ATTEMPTS {
        let b: Vec<Vec<E::Scalar>> = (0..n)
            .map(|_| (0..n).map(|_| engine.random_scalar(rng)).collect())
            .collect();
        let Some(b_inv) = invert(engine, &b) else {
            continue;
        };
        let psi = engine.random_nonzero_scalar(rng);
        let dual = (0..n)
            .map(|i| ExponentVector::new((0..n).map(|k| psi * b_inv[k][i]).collect()))
            .collect();
        return Ok(DualBases {
            basis: b.into_iter().map(ExponentVector::new).collect(),
            dual,
            psi,
        });
    }
    Err(Error::SingularBasis(MAX_BASIS_ATTEMPTS))
}
