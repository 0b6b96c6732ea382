use std::collections::BTreeSet;

use super::{NodeId, TreeState};
use crate::algebra::PairingEngine;
use crate::error::{Error, Result};

/// Revoked `(leaf, time)` pairs plus the time bookkeeping that enforces
/// non-decreasing query order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RevocationList {
    entries: BTreeSet<(NodeId, u64)>,
    /// Latest time a key update was published for.
    high_water_update: Option<u64>,
    /// Latest time any revocation or update was issued for.
    last_query: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RevokeOutcome {
    /// `(leaf, t)` was recorded for each of these leaves.
    Revoked(Vec<NodeId>),
    /// No leaf is bound to the identity; nothing changed.
    UnknownIdentity,
}

impl RevocationList {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a list from raw entries without time-order checks.
    pub fn from_entries<I: IntoIterator<Item = (NodeId, u64)>>(entries: I) -> Self {
        let entries: BTreeSet<_> = entries.into_iter().collect();
        let last_query = entries.iter().map(|(_, t)| *t).max();
        RevocationList {
            entries,
            high_water_update: None,
            last_query,
        }
    }

    pub(crate) fn from_parts(
        entries: BTreeSet<(NodeId, u64)>,
        high_water_update: Option<u64>,
        last_query: Option<u64>,
    ) -> Self {
        RevocationList {
            entries,
            high_water_update,
            last_query,
        }
    }

    pub fn entries(&self) -> &BTreeSet<(NodeId, u64)> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn high_water_update(&self) -> Option<u64> {
        self.high_water_update
    }

    pub fn last_query(&self) -> Option<u64> {
        self.last_query
    }

    /// Whether `leaf` is revoked as of time `t`.
    pub fn is_revoked(&self, leaf: NodeId, t: u64) -> bool {
        self.entries.iter().any(|(l, ti)| *l == leaf && *ti <= t)
    }

    fn check_order(&self, t: u64) -> Result<()> {
        match self.last_query {
            Some(last) if t < last => Err(Error::TimeRegression { time: t, last }),
            _ => Ok(()),
        }
    }

    /// Fails unless an update for time `t` may be issued now.
    pub fn check_update_time(&self, t: u64) -> Result<()> {
        self.check_order(t)
    }

    /// Records that an update for `t` was published.
    pub fn record_update(&mut self, t: u64) -> Result<()> {
        self.check_update_time(t)?;
        self.high_water_update = Some(t);
        self.last_query = Some(t);
        Ok(())
    }

    /// Adds `(leaf, t)` for every leaf bound to `id`.
    ///
    /// Times must be non-decreasing across revocations and updates, and a
    /// revocation may not target a time whose update is already out.
    pub fn revoke<E: PairingEngine>(
        &mut self,
        tree: &TreeState<E>,
        id: &E::Scalar,
        t: u64,
    ) -> Result<RevokeOutcome> {
        self.check_order(t)?;
        if self.high_water_update == Some(t) {
            return Err(Error::RevokeAfterPublish(t));
        }
        let leaves = tree.leaves_of(id);
        if leaves.is_empty() {
            return Ok(RevokeOutcome::UnknownIdentity);
        }
        for leaf in &leaves {
            self.entries.insert((*leaf, t));
        }
        self.last_query = Some(t);
        Ok(RevokeOutcome::Revoked(leaves))
    }
}

/// The set X of nodes on the root path of some leaf revoked at or before `t`.
pub fn revoked_ancestors<E: PairingEngine>(
    tree: &TreeState<E>,
    rl: &RevocationList,
    t: u64,
) -> BTreeSet<NodeId> {
    rl.entries
        .iter()
        .filter(|(_, ti)| *ti <= t)
        .filter_map(|(leaf, _)| tree.path(*leaf).ok())
        .flatten()
        .collect()
}

/// Minimal node set covering exactly the leaves not revoked by time `t`,
/// in ascending order.
///
/// Every non-revoked leaf has exactly one ancestor-or-self in the result and
/// every revoked leaf has none. With nothing revoked this is `[root]`; with
/// every leaf revoked it is empty.
pub fn ku_nodes<E: PairingEngine>(tree: &TreeState<E>, rl: &RevocationList, t: u64) -> Vec<NodeId> {
    let x = revoked_ancestors(tree, rl, t);
    if x.is_empty() {
        return vec![tree.root()];
    }
    let mut y = BTreeSet::new();
    for node in x.iter().filter(|n| !tree.is_leaf(**n)) {
        for child in [node.left(), node.right()] {
            if !x.contains(&child) {
                y.insert(child);
            }
        }
    }
    y.into_iter().collect()
}
