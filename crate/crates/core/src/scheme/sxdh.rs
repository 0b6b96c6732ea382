//! Exponent layouts for the 6-dimensional construction over SXDH groups.
//!
//! Only `d_1, d_2, d_3` (and their duals) are published; `d_4..d_6` are the
//! hidden dimensions used by the semi-functional oracles.

use crate::algebra::ScalarField;
use crate::revtree::ShareSet;

/// `(alpha_1 + r id) d_1* - r d_2*`.
pub(crate) fn key_terms<S: ScalarField>(shares: &ShareSet<S>, id: S, r: S) -> [(usize, S); 2] {
    [(0, shares.alpha1 + r * id), (1, -r)]
}

/// `(alpha_2 + r t) d_1* - r d_3*`.
pub(crate) fn update_terms<S: ScalarField>(shares: &ShareSet<S>, t: S, r: S) -> [(usize, S); 2] {
    [(0, shares.alpha2 + r * t), (2, -r)]
}

/// `z (d_1 + id d_2 + t d_3)`.
pub(crate) fn ciphertext_terms<S: ScalarField>(id: S, t: S, z: S) -> [(usize, S); 3] {
    [(0, z), (1, z * id), (2, z * t)]
}
