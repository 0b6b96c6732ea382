//! Semi-functional keys, key updates and ciphertexts for the 6-dimensional
//! construction, plus the two nominally semi-functional triple patterns.
//!
//! These are test instruments. They need the full dual bases, which only a
//! master key fresh from setup carries, and are compiled only for tests or
//! with the `oracles` feature.
//!
//! Hidden coefficients are indexed `[4, 5, 6]`: `nu[0]` multiplies `d_4*`
//! (or `d_4` for ciphertexts), and so on.

use rand::{CryptoRng, RngCore};

use crate::algebra::{DualBases, ExponentVector, G2Vector, PairingEngine, ScalarField};
use crate::encoding::epoch_scalar;
use crate::error::{Error, Result};
use crate::revtree::{NodeId, ShareSet};
use crate::scheme::{sxdh, Ciphertext, DecryptionKey, MasterKey, PublicParams};
use crate::variant::Variant;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SfKind {
    Key,
    Update,
    Ciphertext,
    NominalTypeI,
    NominalTypeII,
}

/// The coefficients behind one semi-functional artifact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SfTag<S> {
    pub kind: SfKind,
    /// `r` for keys and updates, `z` for ciphertexts.
    pub randomness: S,
    /// Coefficients on the hidden dimensions 4, 5, 6.
    pub hidden: [S; 3],
}

fn full_bases<E: PairingEngine>(mk: &MasterKey<E>) -> Result<&DualBases<E::Scalar>> {
    if mk.variant() != Variant::Sxdh {
        return Err(Error::VariantMismatch {
            expected: Variant::Sxdh,
            found: mk.variant(),
        });
    }
    mk.bases().ok_or(Error::MissingBases)
}

fn exponent<S: ScalarField>(
    vectors: &[ExponentVector<S>],
    visible: &[(usize, S)],
    hidden: &[S; 3],
) -> Result<ExponentVector<S>> {
    let terms: Vec<_> = visible
        .iter()
        .copied()
        .chain(hidden.iter().enumerate().map(|(k, c)| (3 + k, *c)))
        .map(|(i, c)| (&vectors[i], c))
        .collect();
    ExponentVector::linear_combination(&terms)
}

/// `g2^{(alpha_1 + r id) d_1* - r d_2* + nu_4 d_4* + nu_5 d_5* + nu_6 d_6*}`.
pub fn sf_key<E: PairingEngine>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    shares: &ShareSet<E::Scalar>,
    id: E::Scalar,
    r: E::Scalar,
    nu: [E::Scalar; 3],
) -> Result<G2Vector<E>> {
    let bases = full_bases(mk)?;
    let v = exponent(bases.dual_vectors(), &sxdh::key_terms(shares, id, r), &nu)?;
    Ok(pp.group().vec_exp_g2(&v))
}

/// `g2^{(alpha_2 + r t) d_1* - r d_3* + nu_4 d_4* + nu_5 d_5* + nu_6 d_6*}`.
pub fn sf_update<E: PairingEngine>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    shares: &ShareSet<E::Scalar>,
    t: u64,
    r: E::Scalar,
    nu: [E::Scalar; 3],
) -> Result<G2Vector<E>> {
    let bases = full_bases(mk)?;
    let t = epoch_scalar(pp.group().engine(), t);
    let v = exponent(bases.dual_vectors(), &sxdh::update_terms(shares, t, r), &nu)?;
    Ok(pp.group().vec_exp_g2(&v))
}

/// `C = m (g_T^alpha)^z`, `C0 = g1^{z(d_1 + id d_2 + t d_3) + chi_4 d_4 + chi_5 d_5 + chi_6 d_6}`.
pub fn sf_ciphertext<E: PairingEngine>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    id: E::Scalar,
    t: u64,
    m: &E::Gt,
    z: E::Scalar,
    chi: [E::Scalar; 3],
) -> Result<Ciphertext<E>> {
    let bases = full_bases(mk)?;
    let t = epoch_scalar(pp.group().engine(), t);
    let v = exponent(
        bases.basis_vectors(),
        &sxdh::ciphertext_terms(id, t, z),
        &chi,
    )?;
    Ok(Ciphertext::from_components(
        Variant::Sxdh,
        *m + *pp.gt_alpha() * z,
        pp.group().vec_exp_g1(&v),
    ))
}

fn draw3<E: PairingEngine, R: RngCore + CryptoRng + ?Sized>(e: &E, rng: &mut R) -> [E::Scalar; 3] {
    [
        e.random_scalar(rng),
        e.random_scalar(rng),
        e.random_scalar(rng),
    ]
}

/// A semi-functional private key component with fresh `r` and `nu`.
pub fn pri_key_gen_sf<E, R>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    shares: &ShareSet<E::Scalar>,
    id: E::Scalar,
    rng: &mut R,
) -> Result<(G2Vector<E>, SfTag<E::Scalar>)>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    let e = pp.group().engine();
    let r = e.random_scalar(rng);
    let nu = draw3(e, rng);
    let k = sf_key(pp, mk, shares, id, r, nu)?;
    Ok((
        k,
        SfTag {
            kind: SfKind::Key,
            randomness: r,
            hidden: nu,
        },
    ))
}

/// A semi-functional key update component with fresh `r` and `nu`.
pub fn key_upd_sf<E, R>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    shares: &ShareSet<E::Scalar>,
    t: u64,
    rng: &mut R,
) -> Result<(G2Vector<E>, SfTag<E::Scalar>)>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    let e = pp.group().engine();
    let r = e.random_scalar(rng);
    let nu = draw3(e, rng);
    let k = sf_update(pp, mk, shares, t, r, nu)?;
    Ok((
        k,
        SfTag {
            kind: SfKind::Update,
            randomness: r,
            hidden: nu,
        },
    ))
}

/// A semi-functional ciphertext with fresh `z` and `chi`.
pub fn encrypt_sf<E, R>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    id: E::Scalar,
    t: u64,
    m: &E::Gt,
    rng: &mut R,
) -> Result<(Ciphertext<E>, SfTag<E::Scalar>)>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    let e = pp.group().engine();
    let z = e.random_scalar(rng);
    let chi = draw3(e, rng);
    let ct = sf_ciphertext(pp, mk, id, t, m, z, chi)?;
    Ok((
        ct,
        SfTag {
            kind: SfKind::Ciphertext,
            randomness: z,
            hidden: chi,
        },
    ))
}

/// `sum_{i=4..6} (nu_{i,1} + nu_{i,2}) chi_i psi`: the exponent of the extra
/// GT factor when a semi-functional ciphertext meets a semi-functional pair.
pub fn hidden_pairing_exponent<S: ScalarField>(
    key_nu: &[S; 3],
    update_nu: &[S; 3],
    chi: &[S; 3],
    psi: S,
) -> S {
    (0..3)
        .map(|i| (key_nu[i] + update_nu[i]) * chi[i] * psi)
        .reduce(|a, b| a + b)
        .expect("three terms")
}

/// Coefficients of a nominally semi-functional triple.
///
/// Key hidden part `(alpha + nu_1 id) d_4* - nu_1 d_5*`, update hidden part
/// `(-alpha' + nu_2 t) d_4* - nu_2 d_6*`, ciphertext hidden part
/// `chi (d_4 + id d_5 + t d_6)`. Type I has `alpha = alpha' = 0`, Type II has
/// `alpha = alpha'` random. Any other choice is a perturbation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NominalCoefficients<S> {
    pub kind: SfKind,
    pub nu_key: S,
    pub nu_update: S,
    pub chi: S,
    pub alpha_key: S,
    pub alpha_update: S,
}

impl<S: ScalarField> NominalCoefficients<S> {
    pub fn type1<E, R>(e: &E, rng: &mut R) -> Self
    where
        E: PairingEngine<Scalar = S>,
        R: RngCore + CryptoRng + ?Sized,
    {
        NominalCoefficients {
            kind: SfKind::NominalTypeI,
            nu_key: e.random_scalar(rng),
            nu_update: e.random_scalar(rng),
            chi: e.random_scalar(rng),
            alpha_key: e.zero(),
            alpha_update: e.zero(),
        }
    }

    pub fn type2<E, R>(e: &E, rng: &mut R) -> Self
    where
        E: PairingEngine<Scalar = S>,
        R: RngCore + CryptoRng + ?Sized,
    {
        let alpha = e.random_scalar(rng);
        NominalCoefficients {
            kind: SfKind::NominalTypeII,
            alpha_key: alpha,
            alpha_update: alpha,
            ..Self::type1(e, rng)
        }
    }

    /// Scalars carry their modulus, so zero comes from an existing value.
    fn zero(&self) -> S {
        self.chi + -self.chi
    }

    pub fn key_hidden(&self, id: S) -> [S; 3] {
        [self.alpha_key + self.nu_key * id, -self.nu_key, self.zero()]
    }

    pub fn update_hidden(&self, t: S) -> [S; 3] {
        [
            -self.alpha_update + self.nu_update * t,
            self.zero(),
            -self.nu_update,
        ]
    }

    pub fn ciphertext_hidden(&self, id: S, t: S) -> [S; 3] {
        [self.chi, self.chi * id, self.chi * t]
    }
}

/// A key pair and ciphertext built from one set of hidden coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct HiddenTriple<E: PairingEngine> {
    pub dk: DecryptionKey<E>,
    pub ct: Ciphertext<E>,
    pub key_hidden: [E::Scalar; 3],
    pub update_hidden: [E::Scalar; 3],
    pub ct_hidden: [E::Scalar; 3],
}

/// Hidden `d4..d6` coefficients of a key, an update and a ciphertext.
pub type HiddenParts<S> = ([S; 3], [S; 3], [S; 3]);

/// Builds a decryption key for `node` and a ciphertext for `(id, t)` with
/// the given hidden coefficients and fresh `r_1, r_2, z`.
#[allow(clippy::too_many_arguments)]
pub fn hidden_triple<E, R>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    shares: &ShareSet<E::Scalar>,
    node: NodeId,
    id: E::Scalar,
    t: u64,
    m: &E::Gt,
    hidden: HiddenParts<E::Scalar>,
    rng: &mut R,
) -> Result<HiddenTriple<E>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    let e = pp.group().engine();
    let (key_hidden, update_hidden, ct_hidden) = hidden;
    let k_id = sf_key(pp, mk, shares, id, e.random_scalar(rng), key_hidden)?;
    let k_t = sf_update(pp, mk, shares, t, e.random_scalar(rng), update_hidden)?;
    let ct = sf_ciphertext(pp, mk, id, t, m, e.random_scalar(rng), ct_hidden)?;
    Ok(HiddenTriple {
        dk: DecryptionKey::from_components(Variant::Sxdh, node, t, k_id, k_t),
        ct,
        key_hidden,
        update_hidden,
        ct_hidden,
    })
}

/// A nominally semi-functional triple for `coeffs`.
#[allow(clippy::too_many_arguments)]
pub fn nominal_triple<E, R>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    shares: &ShareSet<E::Scalar>,
    node: NodeId,
    id: E::Scalar,
    t: u64,
    m: &E::Gt,
    coeffs: &NominalCoefficients<E::Scalar>,
    rng: &mut R,
) -> Result<HiddenTriple<E>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    let ts = epoch_scalar(pp.group().engine(), t);
    let hidden = (
        coeffs.key_hidden(id),
        coeffs.update_hidden(ts),
        coeffs.ciphertext_hidden(id, ts),
    );
    hidden_triple(pp, mk, shares, node, id, t, m, hidden, rng)
}
