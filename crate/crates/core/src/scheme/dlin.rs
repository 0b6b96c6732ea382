//! Exponent layouts for the 9-dimensional construction under DLIN.
//!
//! Six of the nine basis vectors are published. The share `alpha_3` enters
//! keys with a plus sign and updates with a minus sign, so it cancels when
//! both halves of a decryption key are paired against one ciphertext.

use crate::algebra::ScalarField;
use crate::error::{Error, Result};
use crate::revtree::ShareSet;
use crate::variant::Variant;

fn alpha3<S: Copy>(shares: &ShareSet<S>) -> Result<S> {
    shares.alpha3.ok_or(Error::VariantMismatch {
        expected: Variant::Dlin,
        found: Variant::Sxdh,
    })
}

/// `(alpha_1 + r1 id) d_1* - r1 d_2* + (alpha_3 + r3 id) d_4* - r3 d_5*`.
pub(crate) fn key_terms<S: ScalarField>(
    shares: &ShareSet<S>,
    id: S,
    r1: S,
    r3: S,
) -> Result<[(usize, S); 4]> {
    let a3 = alpha3(shares)?;
    Ok([
        (0, shares.alpha1 + r1 * id),
        (1, -r1),
        (3, a3 + r3 * id),
        (4, -r3),
    ])
}

/// `(alpha_2 + r2 t) d_1* - r2 d_3* + (-alpha_3 + r4 t) d_4* - r4 d_6*`.
pub(crate) fn update_terms<S: ScalarField>(
    shares: &ShareSet<S>,
    t: S,
    r2: S,
    r4: S,
) -> Result<[(usize, S); 4]> {
    let a3 = alpha3(shares)?;
    Ok([
        (0, shares.alpha2 + r2 * t),
        (2, -r2),
        (3, -a3 + r4 * t),
        (5, -r4),
    ])
}

/// `z1 (d_1 + id d_2 + t d_3) + z2 (d_4 + id d_5 + t d_6)`.
pub(crate) fn ciphertext_terms<S: ScalarField>(id: S, t: S, z1: S, z2: S) -> [(usize, S); 6] {
    [
        (0, z1),
        (1, z1 * id),
        (2, z1 * t),
        (3, z2),
        (4, z2 * id),
        (5, z2 * t),
    ]
}
