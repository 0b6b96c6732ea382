//! Binary-tree state for revocation: leaf assignment, root paths, per-node
//! secret shares, and the key-update cover.
//!
//! Nodes are heap-indexed: the root is 1 and the children of `k` are `2k`
//! and `2k + 1`. A tree of depth `d` has leaves `2^d ..= 2^{d+1} - 1`.

mod revocation;

use std::collections::BTreeMap;
use std::fmt;

use rand::{CryptoRng, RngCore};
use sha2::{Digest, Sha512};

pub use revocation::{ku_nodes, revoked_ancestors, RevocationList, RevokeOutcome};

use crate::algebra::PairingEngine;
use crate::error::{Error, Result};
use crate::variant::Variant;

/// Deepest supported tree; 2^32 users is far beyond any realistic authority.
pub const MAX_DEPTH: u16 = 32;

const PRF_DOMAIN: &[u8] = b"RIBE:share:v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u64);

impl NodeId {
    pub const ROOT: NodeId = NodeId(1);

    pub fn new(index: u64) -> Option<Self> {
        (index >= 1).then_some(NodeId(index))
    }

    pub fn index(self) -> u64 {
        self.0
    }

    pub fn parent(self) -> Option<NodeId> {
        (self.0 > 1).then_some(NodeId(self.0 / 2))
    }

    pub fn left(self) -> NodeId {
        NodeId(self.0 * 2)
    }

    pub fn right(self) -> NodeId {
        NodeId(self.0 * 2 + 1)
    }

    pub fn is_root(self) -> bool {
        self.0 == 1
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Secret shares of the master `alpha` held at one node:
/// `alpha1 + alpha2 = alpha`, plus `alpha3` for the DLIN construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShareSet<S> {
    pub alpha1: S,
    pub alpha2: S,
    pub alpha3: Option<S>,
}

impl<S> ShareSet<S> {
    pub fn variant(&self) -> Variant {
        if self.alpha3.is_some() {
            Variant::Dlin
        } else {
            Variant::Sxdh
        }
    }
}

/// Where new node shares come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShareSource {
    /// Drawn from the caller's RNG on first use.
    Random,
    /// Derived as `PRF(seed, node, slot)`, so any share can be recomputed.
    Prf([u8; 32]),
}

/// The authority's tree state: leaf assignments and node shares.
#[derive(Clone, Debug, PartialEq)]
pub struct TreeState<E: PairingEngine> {
    depth: u16,
    capacity: u64,
    assignments: BTreeMap<NodeId, E::Scalar>,
    shares: BTreeMap<NodeId, ShareSet<E::Scalar>>,
    source: ShareSource,
}

impl<E: PairingEngine> TreeState<E> {
    /// A complete tree with at least `n_max` leaves, of which at most
    /// `n_max` will ever be assigned.
    pub fn new(n_max: u64, source: ShareSource) -> Result<Self> {
        if n_max == 0 {
            return Err(Error::InvalidCapacity);
        }
        let depth = n_max
            .checked_next_power_of_two()
            .map(u64::trailing_zeros)
            .filter(|d| *d <= u32::from(MAX_DEPTH))
            .ok_or(Error::CapacityTooLarge(n_max))?;
        Ok(TreeState {
            depth: depth as u16,
            capacity: n_max,
            assignments: BTreeMap::new(),
            shares: BTreeMap::new(),
            source,
        })
    }

    pub(crate) fn from_parts(
        depth: u16,
        capacity: u64,
        assignments: BTreeMap<NodeId, E::Scalar>,
        shares: BTreeMap<NodeId, ShareSet<E::Scalar>>,
        source: ShareSource,
    ) -> Result<Self> {
        let tree = TreeState::new(capacity, source)?;
        if tree.depth != depth {
            return Err(Error::malformed(format!(
                "depth {depth} inconsistent with capacity {capacity}"
            )));
        }
        if assignments.len() as u64 > capacity {
            return Err(Error::malformed("more assignments than capacity"));
        }
        if let Some(bad) = assignments.keys().find(|n| !tree.is_leaf(**n)) {
            return Err(Error::NotALeaf(*bad));
        }
        if let Some(bad) = shares.keys().find(|n| !tree.contains(**n)) {
            return Err(Error::NodeOutOfRange(*bad));
        }
        Ok(TreeState {
            assignments,
            shares,
            ..tree
        })
    }

    pub fn depth(&self) -> u16 {
        self.depth
    }

    pub fn capacity(&self) -> u64 {
        self.capacity
    }

    pub fn share_source(&self) -> ShareSource {
        self.source
    }

    pub fn root(&self) -> NodeId {
        NodeId::ROOT
    }

    pub fn node_count(&self) -> u64 {
        (1u64 << (self.depth + 1)) - 1
    }

    pub fn first_leaf(&self) -> NodeId {
        NodeId(1u64 << self.depth)
    }

    pub fn last_leaf(&self) -> NodeId {
        NodeId((1u64 << (self.depth + 1)) - 1)
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeId> {
        (self.first_leaf().0..=self.last_leaf().0).map(NodeId)
    }

    pub fn contains(&self, node: NodeId) -> bool {
        node.0 <= self.last_leaf().0
    }

    pub fn is_leaf(&self, node: NodeId) -> bool {
        (self.first_leaf().0..=self.last_leaf().0).contains(&node.0)
    }

    pub fn assignments(&self) -> &BTreeMap<NodeId, E::Scalar> {
        &self.assignments
    }

    pub fn shares(&self) -> &BTreeMap<NodeId, ShareSet<E::Scalar>> {
        &self.shares
    }

    pub fn identity_at(&self, leaf: NodeId) -> Option<&E::Scalar> {
        self.assignments.get(&leaf)
    }

    /// All leaves bound to `id`.
    pub fn leaves_of(&self, id: &E::Scalar) -> Vec<NodeId> {
        self.assignments
            .iter()
            .filter(|(_, v)| *v == id)
            .map(|(k, _)| *k)
            .collect()
    }

    /// Binds `id` to the leftmost unassigned leaf.
    pub fn assign_leaf(&mut self, id: E::Scalar) -> Result<NodeId> {
        if self.assignments.len() as u64 >= self.capacity {
            return Err(Error::TreeFull(self.capacity));
        }
        let leaf = self
            .leaves()
            .find(|l| !self.assignments.contains_key(l))
            .ok_or(Error::TreeFull(self.capacity))?;
        self.assignments.insert(leaf, id);
        Ok(leaf)
    }

    /// `[leaf, parent, ..., root]`.
    pub fn path(&self, leaf: NodeId) -> Result<Vec<NodeId>> {
        if !self.is_leaf(leaf) {
            return Err(Error::NotALeaf(leaf));
        }
        Ok(std::iter::successors(Some(leaf), |n| n.parent()).collect())
    }

    /// Returns the shares stored at `node`, creating them on first use.
    /// Existing shares are never modified.
    pub fn get_or_create_shares<R>(
        &mut self,
        engine: &E,
        node: NodeId,
        master_alpha: E::Scalar,
        variant: Variant,
        rng: &mut R,
    ) -> Result<ShareSet<E::Scalar>>
    where
        R: RngCore + CryptoRng + ?Sized,
    {
        if !self.contains(node) {
            return Err(Error::NodeOutOfRange(node));
        }
        if let Some(existing) = self.shares.get(&node) {
            if existing.variant() != variant {
                return Err(Error::ShareVariantMismatch {
                    node,
                    found: existing.variant(),
                    requested: variant,
                });
            }
            return Ok(*existing);
        }
        let (alpha1, alpha3) = match self.source {
            ShareSource::Random => {
                let a1 = engine.random_scalar(rng);
                let a3 = (variant == Variant::Dlin).then(|| engine.random_scalar(rng));
                (a1, a3)
            }
            ShareSource::Prf(seed) => {
                let a1 = prf_share(engine, &seed, node, 1);
                let a3 = (variant == Variant::Dlin).then(|| prf_share(engine, &seed, node, 3));
                (a1, a3)
            }
        };
        let set = ShareSet {
            alpha1,
            alpha2: master_alpha - alpha1,
            alpha3,
        };
        self.shares.insert(node, set);
        Ok(set)
    }
}

fn prf_share<E: PairingEngine>(engine: &E, seed: &[u8; 32], node: NodeId, slot: u8) -> E::Scalar {
    let digest = Sha512::new()
        .chain_update(PRF_DOMAIN)
        .chain_update(seed)
        .chain_update(node.index().to_le_bytes())
        .chain_update([slot])
        .finalize();
    engine.scalar_from_wide_bytes(&digest)
}
