//! The two RIBE constructions.
//!
//! Both use the same artifact shapes: public parameters hold `g_T^alpha`
//! and `g1^{d_i}` for the published basis vectors, the master key holds
//! `alpha` and `g2^{d_i*}`, and every key, update and ciphertext is one
//! group vector per tree node. [`sxdh`] and [`dlin`] supply the exponent
//! layouts; everything else (tree handling, key derivation, decryption,
//! revocation) is shared here.
//!
//! Ciphertext-side vectors live in G1 and key-side vectors in G2. For the
//! DLIN construction, which is stated over a symmetric pairing, this is the
//! usual split of `g` into `g1` (ciphertexts, public parameters) and `g2`
//! (master key, keys, updates): nothing in that scheme pairs two elements
//! from the same side.

pub mod dlin;
pub mod sxdh;

use rand::{CryptoRng, RngCore};

use crate::algebra::{
    sample_dual_bases, DualBases, G1Vector, G2Vector, GroupDescription, GroupVector, PairingEngine,
    ScalarField,
};
use crate::encoding::epoch_scalar;
use crate::error::{Error, Result};
use crate::revtree::{
    ku_nodes, NodeId, RevocationList, RevokeOutcome, ShareSet, ShareSource, TreeState,
};
use crate::variant::Variant;

/// `PP = {G; g_T^alpha, g1^{d_1}, ..., g1^{d_k}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PublicParams<E: PairingEngine> {
    pub(crate) variant: Variant,
    pub(crate) group: GroupDescription<E>,
    pub(crate) gt_alpha: E::Gt,
    pub(crate) basis: Vec<G1Vector<E>>,
}

impl<E: PairingEngine> PublicParams<E> {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn group(&self) -> &GroupDescription<E> {
        &self.group
    }

    pub fn gt_alpha(&self) -> &E::Gt {
        &self.gt_alpha
    }

    /// `g1^{d_i}`, zero-indexed.
    pub fn basis(&self) -> &[G1Vector<E>] {
        &self.basis
    }

    /// Group elements held: one in GT plus every vector component.
    pub fn element_count(&self) -> usize {
        1 + self.basis.iter().map(GroupVector::dim).sum::<usize>()
    }
}

/// `MK = {alpha, g2^{d_1*}, ..., g2^{d_k*}}`.
///
/// The sampled bases are kept alongside when the key comes straight from
/// setup, for the test oracles; they are never serialized.
#[derive(Clone, Debug, PartialEq)]
pub struct MasterKey<E: PairingEngine> {
    pub(crate) variant: Variant,
    pub(crate) alpha: E::Scalar,
    pub(crate) dual: Vec<G2Vector<E>>,
    pub(crate) bases: Option<DualBases<E::Scalar>>,
}

impl<E: PairingEngine> MasterKey<E> {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn alpha(&self) -> &E::Scalar {
        &self.alpha
    }

    /// `g2^{d_i*}`, zero-indexed.
    pub fn dual(&self) -> &[G2Vector<E>] {
        &self.dual
    }

    pub fn bases(&self) -> Option<&DualBases<E::Scalar>> {
        self.bases.as_ref()
    }

    /// Drops the retained bases, as a reloaded key would be.
    pub fn without_bases(mut self) -> Self {
        self.bases = None;
        self
    }

    /// `alpha` plus every vector component.
    pub fn element_count(&self) -> usize {
        1 + self.dual.iter().map(GroupVector::dim).sum::<usize>()
    }
}

/// `SK_id = {(theta, K_{id,theta})}` over the owner's root path.
#[derive(Clone, Debug, PartialEq)]
pub struct PrivateKey<E: PairingEngine> {
    pub(crate) variant: Variant,
    pub(crate) leaf: NodeId,
    pub(crate) entries: Vec<(NodeId, G2Vector<E>)>,
}

impl<E: PairingEngine> PrivateKey<E> {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn leaf(&self) -> NodeId {
        self.leaf
    }

    /// Leaf first, root last.
    pub fn entries(&self) -> &[(NodeId, G2Vector<E>)] {
        &self.entries
    }
}

/// `KU_t = {(theta, K_{t,theta})}` over the cover nodes. Public.
#[derive(Clone, Debug, PartialEq)]
pub struct KeyUpdate<E: PairingEngine> {
    pub(crate) variant: Variant,
    pub(crate) time: u64,
    pub(crate) entries: Vec<(NodeId, G2Vector<E>)>,
}

impl<E: PairingEngine> KeyUpdate<E> {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    /// Ascending by node.
    pub fn entries(&self) -> &[(NodeId, G2Vector<E>)] {
        &self.entries
    }

    pub fn nodes(&self) -> Vec<NodeId> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }
}

/// `DK_{id,t} = (K_{id,theta}, K_{t,theta})` for a common node `theta`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecryptionKey<E: PairingEngine> {
    pub(crate) variant: Variant,
    pub(crate) node: NodeId,
    pub(crate) time: u64,
    pub(crate) k_id: G2Vector<E>,
    pub(crate) k_t: G2Vector<E>,
}

impl<E: PairingEngine> DecryptionKey<E> {
    /// Assembles a key from raw components; used by the test oracles to
    /// pair semi-functional keys.
    pub fn from_components(
        variant: Variant,
        node: NodeId,
        time: u64,
        k_id: G2Vector<E>,
        k_t: G2Vector<E>,
    ) -> Self {
        DecryptionKey {
            variant,
            node,
            time,
            k_id,
            k_t,
        }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn node(&self) -> NodeId {
        self.node
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn identity_component(&self) -> &G2Vector<E> {
        &self.k_id
    }

    pub fn time_component(&self) -> &G2Vector<E> {
        &self.k_t
    }
}

/// `CT = {C = m * (g_T^alpha)^z, C0 = g1^{...}}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Ciphertext<E: PairingEngine> {
    pub(crate) variant: Variant,
    pub(crate) c: E::Gt,
    pub(crate) c0: G1Vector<E>,
}

impl<E: PairingEngine> Ciphertext<E> {
    pub fn from_components(variant: Variant, c: E::Gt, c0: G1Vector<E>) -> Self {
        Ciphertext { variant, c, c0 }
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn mask(&self) -> &E::Gt {
        &self.c
    }

    pub fn c0(&self) -> &G1Vector<E> {
        &self.c0
    }

    /// Source-group elements in `C0` (the GT mask `C` is counted separately).
    pub fn source_element_count(&self) -> usize {
        self.c0.dim()
    }
}

/// Randomness consumed for one node of a key or key update.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeRandomness<S> {
    pub node: NodeId,
    pub r: Vec<S>,
}

/// Output of [`setup`].
pub type SetupOutput<E> = (PublicParams<E>, MasterKey<E>, RevocationList, TreeState<E>);

/// An artifact with the per-node randomness drawn while building it.
pub type Traced<T, S> = (T, Vec<NodeRandomness<S>>);

fn expect_variant(expected: Variant, found: Variant) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::VariantMismatch { expected, found })
    }
}

/// Samples bases, `alpha` and an empty tree for `variant`.
pub fn setup<E, R>(
    group: &GroupDescription<E>,
    variant: Variant,
    n_max: u64,
    shares: ShareSource,
    rng: &mut R,
) -> Result<SetupOutput<E>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    let tree = TreeState::new(n_max, shares)?;
    let engine = group.engine();
    let bases = sample_dual_bases(group, variant.dimension(), rng)?;
    let alpha = engine.random_scalar(rng);
    let psi_1 = bases.basis(0).dot(bases.dual(0))?;
    let gt_alpha = group.gt_generator() * (alpha * psi_1);

    let k = variant.published_vectors();
    let basis = (0..k).map(|i| group.vec_exp_g1(bases.basis(i))).collect();
    let dual = (0..k).map(|i| group.vec_exp_g2(bases.dual(i))).collect();

    let pp = PublicParams {
        variant,
        group: group.clone(),
        gt_alpha,
        basis,
    };
    let mk = MasterKey {
        variant,
        alpha,
        dual,
        bases: Some(bases),
    };
    Ok((pp, mk, RevocationList::new(), tree))
}

/// `prod_k (g^{v_{i_k}})^{c_k}` over slot-indexed terms.
pub(crate) fn combine<T, S>(
    vectors: &[GroupVector<T>],
    terms: &[(usize, S)],
) -> Result<GroupVector<T>>
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Mul<S, Output = T>,
    S: Copy,
{
    let terms: Vec<_> = terms
        .iter()
        .map(|(i, c)| {
            vectors
                .get(*i)
                .map(|v| (v, *c))
                .ok_or(Error::DimensionMismatch {
                    expected: *i + 1,
                    found: vectors.len(),
                })
        })
        .collect::<Result<_>>()?;
    GroupVector::linear_combination(&terms)
}

pub(crate) fn key_terms<S: ScalarField>(
    variant: Variant,
    shares: &ShareSet<S>,
    id: S,
    r: &[S],
) -> Result<Vec<(usize, S)>> {
    match variant {
        Variant::Sxdh => Ok(sxdh::key_terms(shares, id, r[0]).to_vec()),
        Variant::Dlin => dlin::key_terms(shares, id, r[0], r[1]).map(|c| c.to_vec()),
    }
}

pub(crate) fn update_terms<S: ScalarField>(
    variant: Variant,
    shares: &ShareSet<S>,
    t: S,
    r: &[S],
) -> Result<Vec<(usize, S)>> {
    match variant {
        Variant::Sxdh => Ok(sxdh::update_terms(shares, t, r[0]).to_vec()),
        Variant::Dlin => dlin::update_terms(shares, t, r[0], r[1]).map(|c| c.to_vec()),
    }
}

fn check_shares<S>(variant: Variant, shares: &ShareSet<S>) -> Result<()> {
    expect_variant(variant, shares.variant())
}

/// `K_{id,theta}` for fixed node randomness `r`.
pub fn private_key_node<E: PairingEngine>(
    mk: &MasterKey<E>,
    shares: &ShareSet<E::Scalar>,
    id: E::Scalar,
    r: &[E::Scalar],
) -> Result<G2Vector<E>> {
    expect_randomness(r, mk.variant.node_randomness())?;
    check_shares(mk.variant, shares)?;
    combine(&mk.dual, &key_terms(mk.variant, shares, id, r)?)
}

/// `K_{t,theta}` for fixed node randomness `r`.
pub fn key_update_node<E: PairingEngine>(
    mk: &MasterKey<E>,
    engine: &E,
    shares: &ShareSet<E::Scalar>,
    t: u64,
    r: &[E::Scalar],
) -> Result<G2Vector<E>> {
    expect_randomness(r, mk.variant.node_randomness())?;
    check_shares(mk.variant, shares)?;
    let t = epoch_scalar(engine, t);
    combine(&mk.dual, &update_terms(mk.variant, shares, t, r)?)
}

fn expect_randomness<S>(r: &[S], n: usize) -> Result<()> {
    if r.len() == n {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: n,
            found: r.len(),
        })
    }
}

fn draw<E: PairingEngine, R: RngCore + CryptoRng + ?Sized>(
    engine: &E,
    n: usize,
    rng: &mut R,
) -> Vec<E::Scalar> {
    (0..n).map(|_| engine.random_scalar(rng)).collect()
}

fn pri_key_gen_inner<E, R>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    id: E::Scalar,
    tree: &mut TreeState<E>,
    rng: &mut R,
    mut trace: Option<&mut Vec<NodeRandomness<E::Scalar>>>,
) -> Result<PrivateKey<E>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    expect_variant(pp.variant, mk.variant)?;
    let engine = pp.group.engine();
    let leaf = tree.assign_leaf(id)?;
    let mut entries = Vec::new();
    for node in tree.path(leaf)? {
        let shares = tree.get_or_create_shares(engine, node, mk.alpha, mk.variant, rng)?;
        let r = draw(engine, mk.variant.node_randomness(), rng);
        entries.push((node, private_key_node(mk, &shares, id, &r)?));
        if let Some(t) = trace.as_deref_mut() {
            t.push(NodeRandomness { node, r });
        }
    }
    Ok(PrivateKey {
        variant: mk.variant,
        leaf,
        entries,
    })
}

/// Assigns `id` the leftmost free leaf and issues a key for every node on
/// its root path.
pub fn pri_key_gen<E, R>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    id: E::Scalar,
    tree: &mut TreeState<E>,
    rng: &mut R,
) -> Result<PrivateKey<E>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    pri_key_gen_inner(pp, mk, id, tree, rng, None)
}

/// [`pri_key_gen`], also returning the per-node randomness drawn.
#[cfg(any(test, feature = "oracles"))]
pub fn pri_key_gen_traced<E, R>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    id: E::Scalar,
    tree: &mut TreeState<E>,
    rng: &mut R,
) -> Result<Traced<PrivateKey<E>, E::Scalar>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    let mut trace = Vec::new();
    let sk = pri_key_gen_inner(pp, mk, id, tree, rng, Some(&mut trace))?;
    Ok((sk, trace))
}

fn key_upd_inner<E, R>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    t: u64,
    rl: &mut RevocationList,
    tree: &mut TreeState<E>,
    rng: &mut R,
    mut trace: Option<&mut Vec<NodeRandomness<E::Scalar>>>,
) -> Result<KeyUpdate<E>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    expect_variant(pp.variant, mk.variant)?;
    rl.check_update_time(t)?;
    let engine = pp.group.engine();
    let mut entries = Vec::new();
    for node in ku_nodes(tree, rl, t) {
        let shares = tree.get_or_create_shares(engine, node, mk.alpha, mk.variant, rng)?;
        let r = draw(engine, mk.variant.node_randomness(), rng);
        entries.push((node, key_update_node(mk, engine, &shares, t, &r)?));
        if let Some(tr) = trace.as_deref_mut() {
            tr.push(NodeRandomness { node, r });
        }
    }
    rl.record_update(t)?;
    Ok(KeyUpdate {
        variant: mk.variant,
        time: t,
        entries,
    })
}

/// Publishes the key update for time `t` over the current cover.
pub fn key_upd<E, R>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    t: u64,
    rl: &mut RevocationList,
    tree: &mut TreeState<E>,
    rng: &mut R,
) -> Result<KeyUpdate<E>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    key_upd_inner(pp, mk, t, rl, tree, rng, None)
}

/// [`key_upd`], also returning the per-node randomness drawn.
#[cfg(any(test, feature = "oracles"))]
pub fn key_upd_traced<E, R>(
    pp: &PublicParams<E>,
    mk: &MasterKey<E>,
    t: u64,
    rl: &mut RevocationList,
    tree: &mut TreeState<E>,
    rng: &mut R,
) -> Result<Traced<KeyUpdate<E>, E::Scalar>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    let mut trace = Vec::new();
    let ku = key_upd_inner(pp, mk, t, rl, tree, rng, Some(&mut trace))?;
    Ok((ku, trace))
}

/// Combines a private key and a key update on their first common node,
/// scanning the private key from the leaf upwards. `None` means the owner
/// is revoked at the update's time.
pub fn dec_key_gen<E: PairingEngine>(
    sk: &PrivateKey<E>,
    ku: &KeyUpdate<E>,
) -> Option<DecryptionKey<E>> {
    if sk.variant != ku.variant {
        return None;
    }
    sk.entries.iter().find_map(|(node, k_id)| {
        ku.entries
            .binary_search_by_key(node, |(n, _)| *n)
            .ok()
            .map(|j| DecryptionKey {
                variant: sk.variant,
                node: *node,
                time: ku.time,
                k_id: k_id.clone(),
                k_t: ku.entries[j].1.clone(),
            })
    })
}

/// Encrypts `m` with explicit encryption randomness.
pub fn enc_with<E: PairingEngine>(
    pp: &PublicParams<E>,
    id: E::Scalar,
    t: u64,
    m: &E::Gt,
    z: &[E::Scalar],
) -> Result<Ciphertext<E>> {
    expect_randomness(z, pp.variant.encryption_randomness())?;
    let engine = pp.group.engine();
    let t = epoch_scalar(engine, t);
    let terms = match pp.variant {
        Variant::Sxdh => sxdh::ciphertext_terms(id, t, z[0]).to_vec(),
        Variant::Dlin => dlin::ciphertext_terms(id, t, z[0], z[1]).to_vec(),
    };
    let c0 = combine(&pp.basis, &terms)?;
    Ok(Ciphertext {
        variant: pp.variant,
        c: *m + pp.gt_alpha * z[0],
        c0,
    })
}

/// Encrypts `m` to identity `id` at epoch `t`. Uses only public parameters.
pub fn enc<E, R>(
    pp: &PublicParams<E>,
    id: E::Scalar,
    t: u64,
    m: &E::Gt,
    rng: &mut R,
) -> Result<Ciphertext<E>>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    let z = draw(pp.group.engine(), pp.variant.encryption_randomness(), rng);
    enc_with(pp, id, t, m, &z)
}

/// [`enc`], also returning the encryption randomness.
#[cfg(any(test, feature = "oracles"))]
pub fn enc_traced<E, R>(
    pp: &PublicParams<E>,
    id: E::Scalar,
    t: u64,
    m: &E::Gt,
    rng: &mut R,
) -> Result<(Ciphertext<E>, Vec<E::Scalar>)>
where
    E: PairingEngine,
    R: RngCore + CryptoRng + ?Sized,
{
    let z = draw(pp.group.engine(), pp.variant.encryption_randomness(), rng);
    Ok((enc_with(pp, id, t, m, &z)?, z))
}

/// `m = C / (e(C0, K_id) * e(C0, K_t))`.
///
/// There is no integrity check: a key for a different identity or time
/// yields an unrelated GT element.
pub fn dec<E: PairingEngine>(
    pp: &PublicParams<E>,
    dk: &DecryptionKey<E>,
    ct: &Ciphertext<E>,
) -> Result<E::Gt> {
    expect_variant(pp.variant, dk.variant)?;
    expect_variant(pp.variant, ct.variant)?;
    let a = pp.group.vec_pair(&ct.c0, &dk.k_id)?;
    let b = pp.group.vec_pair(&ct.c0, &dk.k_t)?;
    Ok(ct.c - (a + b))
}

/// Revokes every leaf bound to `id` as of time `t`.
pub fn key_rev<E: PairingEngine>(
    id: &E::Scalar,
    t: u64,
    rl: &mut RevocationList,
    tree: &TreeState<E>,
) -> Result<RevokeOutcome> {
    rl.revoke(tree, id, t)
}
