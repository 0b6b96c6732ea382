//! Binary encodings for scheme artifacts and authority state.
//!
//! Artifacts: `"RIBE" | version u8 | scheme id u8 | kind u8 | engine | payload`.
//! State: `"RIBT" | version u16 | depth u16 | scheme id u8 | engine | body`.
//! Integers are little-endian. Group elements use the engine's canonical
//! encoding. Decoders reject trailing bytes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::algebra::{EngineDescriptor, GroupDescription, GroupVector, PairingEngine};
use crate::error::{Error, Result};
use crate::revtree::{NodeId, RevocationList, ShareSet, ShareSource, TreeState};
use crate::scheme::{Ciphertext, DecryptionKey, KeyUpdate, MasterKey, PrivateKey, PublicParams};
use crate::variant::Variant;

pub const ARTIFACT_MAGIC: &[u8; 4] = b"RIBE";
pub const ARTIFACT_VERSION: u8 = 1;
pub const STATE_MAGIC: &[u8; 4] = b"RIBT";
pub const STATE_VERSION: u16 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArtifactKind {
    PublicParams,
    MasterKey,
    PrivateKey,
    KeyUpdate,
    DecryptionKey,
    Ciphertext,
}

impl ArtifactKind {
    pub fn tag(self) -> u8 {
        match self {
            ArtifactKind::PublicParams => 0x01,
            ArtifactKind::MasterKey => 0x02,
            ArtifactKind::PrivateKey => 0x03,
            ArtifactKind::KeyUpdate => 0x04,
            ArtifactKind::DecryptionKey => 0x05,
            ArtifactKind::Ciphertext => 0x06,
        }
    }

    pub fn from_tag(tag: u8) -> Result<Self> {
        Ok(match tag {
            0x01 => ArtifactKind::PublicParams,
            0x02 => ArtifactKind::MasterKey,
            0x03 => ArtifactKind::PrivateKey,
            0x04 => ArtifactKind::KeyUpdate,
            0x05 => ArtifactKind::DecryptionKey,
            0x06 => ArtifactKind::Ciphertext,
            other => return Err(Error::UnexpectedKind(other)),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            ArtifactKind::PublicParams => "pp",
            ArtifactKind::MasterKey => "mk",
            ArtifactKind::PrivateKey => "sk",
            ArtifactKind::KeyUpdate => "ku",
            ArtifactKind::DecryptionKey => "dk",
            ArtifactKind::Ciphertext => "ct",
        }
    }
}

impl fmt::Display for ArtifactKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The fixed prefix of every artifact.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Header {
    pub variant: Variant,
    pub kind: ArtifactKind,
    pub engine: EngineDescriptor,
    /// Bytes consumed by the header.
    pub len: usize,
}

/// Parses and validates an artifact header without decoding the payload.
pub fn peek_header(bytes: &[u8]) -> Result<Header> {
    if bytes.get(..4) != Some(&ARTIFACT_MAGIC[..]) {
        return Err(Error::BadMagic);
    }
    let fixed = bytes
        .get(4..7)
        .ok_or_else(|| Error::malformed("truncated header"))?;
    if fixed[0] != ARTIFACT_VERSION {
        return Err(Error::UnsupportedVersion(fixed[0].into()));
    }
    let variant = Variant::from_scheme_id(fixed[1])
        .ok_or_else(|| Error::malformed(format!("unknown scheme id {:#04x}", fixed[1])))?;
    let kind = ArtifactKind::from_tag(fixed[2])?;
    let (engine, used) = EngineDescriptor::read(&bytes[7..])?;
    Ok(Header {
        variant,
        kind,
        engine,
        len: 7 + used,
    })
}

/// A one-line description such as `scheme=sxdh kind=ku t=42 nodes=3 engine=bls12-381`.
pub fn summary_line(bytes: &[u8]) -> Result<String> {
    let h = peek_header(bytes)?;
    let mut line = format!("scheme={} kind={}", h.variant, h.kind);
    let mut r = Reader::new(&bytes[h.len..]);
    match h.kind {
        ArtifactKind::PrivateKey => {
            let leaf = r.u64()?;
            let nodes = r.u32()?;
            line.push_str(&format!(" leaf={leaf} nodes={nodes}"));
        }
        ArtifactKind::KeyUpdate => {
            let t = r.u64()?;
            let nodes = r.u32()?;
            line.push_str(&format!(" t={t} nodes={nodes}"));
        }
        ArtifactKind::DecryptionKey => {
            let node = r.u64()?;
            let t = r.u64()?;
            line.push_str(&format!(" node={node} t={t}"));
        }
        _ => {}
    }
    line.push_str(&format!(" engine={}", h.engine));
    if h.engine.is_insecure() {
        line.push_str(" INSECURE-MOCK");
    }
    Ok(line)
}

/// Cursor over an encoded payload.
pub struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn new(bytes: &'a [u8]) -> Self {
        Reader { bytes, pos: 0 }
    }

    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|e| *e <= self.bytes.len())
            .ok_or_else(|| Error::malformed("unexpected end of input"))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(
            self.take(2)?.try_into().expect("2 bytes"),
        ))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(
            self.take(4)?.try_into().expect("4 bytes"),
        ))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(
            self.take(8)?.try_into().expect("8 bytes"),
        ))
    }

    fn opt_u64(&mut self) -> Result<Option<u64>> {
        match self.u8()? {
            0 => Ok(None),
            1 => self.u64().map(Some),
            b => Err(Error::malformed(format!("bad option flag {b}"))),
        }
    }

    fn node(&mut self) -> Result<NodeId> {
        NodeId::new(self.u64()?).ok_or_else(|| Error::malformed("node index 0"))
    }

    fn scalar<E: PairingEngine>(&mut self, e: &E) -> Result<E::Scalar> {
        e.read_scalar(self.take(e.scalar_len())?)
    }

    fn gt<E: PairingEngine>(&mut self, e: &E) -> Result<E::Gt> {
        e.read_gt(self.take(e.gt_len())?)
    }

    fn g1_vector<E: PairingEngine>(&mut self, e: &E, n: usize) -> Result<GroupVector<E::G1>> {
        let elems = (0..n)
            .map(|_| e.read_g1(self.take(e.g1_len())?))
            .collect::<Result<_>>()?;
        Ok(GroupVector::from_elements(elems))
    }

    fn g2_vector<E: PairingEngine>(&mut self, e: &E, n: usize) -> Result<GroupVector<E::G2>> {
        let elems = (0..n)
            .map(|_| e.read_g2(self.take(e.g2_len())?))
            .collect::<Result<_>>()?;
        Ok(GroupVector::from_elements(elems))
    }

    /// An entry count, bounded by what the remaining input could hold.
    fn count(&mut self, min_entry_len: usize) -> Result<usize> {
        let n = self.u32()? as usize;
        if n.saturating_mul(min_entry_len) > self.bytes.len() - self.pos {
            return Err(Error::malformed("entry count exceeds input"));
        }
        Ok(n)
    }

    fn finish(self) -> Result<()> {
        if self.pos == self.bytes.len() {
            Ok(())
        } else {
            Err(Error::malformed("trailing bytes"))
        }
    }
}

fn write_g1_vector<E: PairingEngine>(e: &E, v: &GroupVector<E::G1>, out: &mut Vec<u8>) {
    for p in v.elements() {
        e.write_g1(p, out);
    }
}

fn write_g2_vector<E: PairingEngine>(e: &E, v: &GroupVector<E::G2>, out: &mut Vec<u8>) {
    for p in v.elements() {
        e.write_g2(p, out);
    }
}

fn write_entries<E: PairingEngine>(
    e: &E,
    entries: &[(NodeId, GroupVector<E::G2>)],
    out: &mut Vec<u8>,
) {
    out.extend_from_slice(&(entries.len() as u32).to_le_bytes());
    for (node, k) in entries {
        out.extend_from_slice(&node.index().to_le_bytes());
        write_g2_vector(e, k, out);
    }
}

fn read_entries<E: PairingEngine>(
    r: &mut Reader<'_>,
    e: &E,
    n: usize,
) -> Result<Vec<(NodeId, GroupVector<E::G2>)>> {
    let count = r.count(8 + n * e.g2_len())?;
    (0..count)
        .map(|_| Ok((r.node()?, r.g2_vector(e, n)?)))
        .collect()
}

/// An encodable scheme artifact.
pub trait Artifact<E: PairingEngine>: Sized {
    const KIND: ArtifactKind;

    fn variant(&self) -> Variant;

    fn write_payload(&self, engine: &E, out: &mut Vec<u8>);

    fn read_payload(
        group: &GroupDescription<E>,
        variant: Variant,
        r: &mut Reader<'_>,
    ) -> Result<Self>;
}

/// Serializes an artifact with its header.
pub fn encode<E: PairingEngine, A: Artifact<E>>(group: &GroupDescription<E>, a: &A) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend_from_slice(ARTIFACT_MAGIC);
    out.push(ARTIFACT_VERSION);
    out.push(a.variant().scheme_id());
    out.push(A::KIND.tag());
    group.descriptor().write(&mut out);
    a.write_payload(group.engine(), &mut out);
    out
}

/// Parses an artifact of type `A`, checking kind and engine.
pub fn decode<E: PairingEngine, A: Artifact<E>>(
    group: &GroupDescription<E>,
    bytes: &[u8],
) -> Result<A> {
    let h = peek_header(bytes)?;
    if h.kind != A::KIND {
        return Err(Error::UnexpectedKind(h.kind.tag()));
    }
    if h.engine != group.descriptor() {
        return Err(Error::EngineMismatch {
            expected: group.descriptor().to_string(),
            found: h.engine.to_string(),
        });
    }
    let mut r = Reader::new(&bytes[h.len..]);
    let a = A::read_payload(group, h.variant, &mut r)?;
    r.finish()?;
    Ok(a)
}

impl<E: PairingEngine> Artifact<E> for PublicParams<E> {
    const KIND: ArtifactKind = ArtifactKind::PublicParams;

    fn variant(&self) -> Variant {
        self.variant
    }

    fn write_payload(&self, e: &E, out: &mut Vec<u8>) {
        e.write_gt(&self.gt_alpha, out);
        for v in &self.basis {
            write_g1_vector(e, v, out);
        }
    }

    fn read_payload(
        group: &GroupDescription<E>,
        variant: Variant,
        r: &mut Reader<'_>,
    ) -> Result<Self> {
        let e = group.engine();
        let gt_alpha = r.gt(e)?;
        let basis = (0..variant.published_vectors())
            .map(|_| r.g1_vector(e, variant.dimension()))
            .collect::<Result<_>>()?;
        Ok(PublicParams {
            variant,
            group: group.clone(),
            gt_alpha,
            basis,
        })
    }
}

impl<E: PairingEngine> Artifact<E> for MasterKey<E> {
    const KIND: ArtifactKind = ArtifactKind::MasterKey;

    fn variant(&self) -> Variant {
        self.variant
    }

    fn write_payload(&self, e: &E, out: &mut Vec<u8>) {
        e.write_scalar(&self.alpha, out);
        for v in &self.dual {
            write_g2_vector(e, v, out);
        }
    }

    fn read_payload(
        group: &GroupDescription<E>,
        variant: Variant,
        r: &mut Reader<'_>,
    ) -> Result<Self> {
        let e = group.engine();
        let alpha = r.scalar(e)?;
        let dual = (0..variant.published_vectors())
            .map(|_| r.g2_vector(e, variant.dimension()))
            .collect::<Result<_>>()?;
        Ok(MasterKey {
            variant,
            alpha,
            dual,
            bases: None,
        })
    }
}

impl<E: PairingEngine> Artifact<E> for PrivateKey<E> {
    const KIND: ArtifactKind = ArtifactKind::PrivateKey;

    fn variant(&self) -> Variant {
        self.variant
    }

    fn write_payload(&self, e: &E, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.leaf.index().to_le_bytes());
        write_entries(e, &self.entries, out);
    }

    fn read_payload(
        group: &GroupDescription<E>,
        variant: Variant,
        r: &mut Reader<'_>,
    ) -> Result<Self> {
        let leaf = r.node()?;
        let entries = read_entries(r, group.engine(), variant.dimension())?;
        let path_ok = entries.first().map(|(n, _)| *n) == Some(leaf)
            && entries.windows(2).all(|w| w[0].0.parent() == Some(w[1].0))
            && entries.last().is_some_and(|(n, _)| n.is_root());
        if !path_ok {
            return Err(Error::malformed(
                "private key entries do not form a root path",
            ));
        }
        Ok(PrivateKey {
            variant,
            leaf,
            entries,
        })
    }
}

impl<E: PairingEngine> Artifact<E> for KeyUpdate<E> {
    const KIND: ArtifactKind = ArtifactKind::KeyUpdate;

    fn variant(&self) -> Variant {
        self.variant
    }

    fn write_payload(&self, e: &E, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.time.to_le_bytes());
        write_entries(e, &self.entries, out);
    }

    fn read_payload(
        group: &GroupDescription<E>,
        variant: Variant,
        r: &mut Reader<'_>,
    ) -> Result<Self> {
        let time = r.u64()?;
        let entries = read_entries(r, group.engine(), variant.dimension())?;
        if !entries.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::malformed("key update nodes not strictly ascending"));
        }
        Ok(KeyUpdate {
            variant,
            time,
            entries,
        })
    }
}

impl<E: PairingEngine> Artifact<E> for DecryptionKey<E> {
    const KIND: ArtifactKind = ArtifactKind::DecryptionKey;

    fn variant(&self) -> Variant {
        self.variant
    }

    fn write_payload(&self, e: &E, out: &mut Vec<u8>) {
        out.extend_from_slice(&self.node.index().to_le_bytes());
        out.extend_from_slice(&self.time.to_le_bytes());
        write_g2_vector(e, &self.k_id, out);
        write_g2_vector(e, &self.k_t, out);
    }

    fn read_payload(
        group: &GroupDescription<E>,
        variant: Variant,
        r: &mut Reader<'_>,
    ) -> Result<Self> {
        let e = group.engine();
        let n = variant.dimension();
        Ok(DecryptionKey {
            variant,
            node: r.node()?,
            time: r.u64()?,
            k_id: r.g2_vector(e, n)?,
            k_t: r.g2_vector(e, n)?,
        })
    }
}

impl<E: PairingEngine> Artifact<E> for Ciphertext<E> {
    const KIND: ArtifactKind = ArtifactKind::Ciphertext;

    fn variant(&self) -> Variant {
        self.variant
    }

    fn write_payload(&self, e: &E, out: &mut Vec<u8>) {
        e.write_gt(&self.c, out);
        write_g1_vector(e, &self.c0, out);
    }

    fn read_payload(
        group: &GroupDescription<E>,
        variant: Variant,
        r: &mut Reader<'_>,
    ) -> Result<Self> {
        let e = group.engine();
        Ok(Ciphertext {
            variant,
            c: r.gt(e)?,
            c0: r.g1_vector(e, variant.dimension())?,
        })
    }
}

/// The fixed prefix of a state record.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StateHeader {
    pub variant: Variant,
    pub depth: u16,
    pub engine: EngineDescriptor,
    pub len: usize,
}

pub fn peek_state_header(bytes: &[u8]) -> Result<StateHeader> {
    if bytes.get(..4) != Some(&STATE_MAGIC[..]) {
        return Err(Error::BadMagic);
    }
    let mut r = Reader::new(&bytes[4..]);
    let version = r.u16()?;
    if version != STATE_VERSION {
        return Err(Error::UnsupportedVersion(version));
    }
    let depth = r.u16()?;
    let id = r.u8()?;
    let variant = Variant::from_scheme_id(id)
        .ok_or_else(|| Error::malformed(format!("unknown scheme id {id:#04x}")))?;
    let (engine, used) = EngineDescriptor::read(&bytes[4 + r.pos..])?;
    Ok(StateHeader {
        variant,
        depth,
        engine,
        len: 4 + r.pos + used,
    })
}

/// Serializes the authority's tree and revocation list.
pub fn encode_state<E: PairingEngine>(
    group: &GroupDescription<E>,
    variant: Variant,
    tree: &TreeState<E>,
    rl: &RevocationList,
) -> Vec<u8> {
    let e = group.engine();
    let mut out = Vec::new();
    out.extend_from_slice(STATE_MAGIC);
    out.extend_from_slice(&STATE_VERSION.to_le_bytes());
    out.extend_from_slice(&tree.depth().to_le_bytes());
    out.push(variant.scheme_id());
    group.descriptor().write(&mut out);

    out.extend_from_slice(&tree.capacity().to_le_bytes());
    match tree.share_source() {
        ShareSource::Random => out.push(0),
        ShareSource::Prf(seed) => {
            out.push(1);
            out.extend_from_slice(&seed);
        }
    }
    for v in [rl.high_water_update(), rl.last_query()] {
        match v {
            None => out.push(0),
            Some(t) => {
                out.push(1);
                out.extend_from_slice(&t.to_le_bytes());
            }
        }
    }

    out.extend_from_slice(&(tree.assignments().len() as u32).to_le_bytes());
    for (leaf, id) in tree.assignments() {
        out.extend_from_slice(&leaf.index().to_le_bytes());
        e.write_scalar(id, &mut out);
    }
    out.extend_from_slice(&(tree.shares().len() as u32).to_le_bytes());
    for (node, s) in tree.shares() {
        out.extend_from_slice(&node.index().to_le_bytes());
        out.push(u8::from(s.alpha3.is_some()));
        e.write_scalar(&s.alpha1, &mut out);
        e.write_scalar(&s.alpha2, &mut out);
        if let Some(a3) = &s.alpha3 {
            e.write_scalar(a3, &mut out);
        }
    }
    out.extend_from_slice(&(rl.entries().len() as u32).to_le_bytes());
    for (leaf, t) in rl.entries() {
        out.extend_from_slice(&leaf.index().to_le_bytes());
        out.extend_from_slice(&t.to_le_bytes());
    }
    out
}

/// Inverse of [`encode_state`].
pub fn decode_state<E: PairingEngine>(
    group: &GroupDescription<E>,
    bytes: &[u8],
) -> Result<(Variant, TreeState<E>, RevocationList)> {
    let h = peek_state_header(bytes)?;
    if h.engine != group.descriptor() {
        return Err(Error::EngineMismatch {
            expected: group.descriptor().to_string(),
            found: h.engine.to_string(),
        });
    }
    let e = group.engine();
    let mut r = Reader::new(&bytes[h.len..]);
    let capacity = r.u64()?;
    let source = match r.u8()? {
        0 => ShareSource::Random,
        1 => ShareSource::Prf(r.take(32)?.try_into().expect("32 bytes")),
        b => return Err(Error::malformed(format!("bad share source tag {b}"))),
    };
    let high_water = r.opt_u64()?;
    let last_query = r.opt_u64()?;

    let mut assignments = BTreeMap::new();
    for _ in 0..r.count(8 + e.scalar_len())? {
        let leaf = r.node()?;
        if assignments.insert(leaf, r.scalar(e)?).is_some() {
            return Err(Error::malformed("duplicate leaf assignment"));
        }
    }
    let mut shares = BTreeMap::new();
    for _ in 0..r.count(9 + 2 * e.scalar_len())? {
        let node = r.node()?;
        let has_a3 = match r.u8()? {
            0 => false,
            1 => true,
            b => return Err(Error::malformed(format!("bad share flag {b}"))),
        };
        let alpha1 = r.scalar(e)?;
        let alpha2 = r.scalar(e)?;
        let alpha3 = if has_a3 { Some(r.scalar(e)?) } else { None };
        let set = ShareSet {
            alpha1,
            alpha2,
            alpha3,
        };
        if set.variant() != h.variant {
            return Err(Error::ShareVariantMismatch {
                node,
                found: set.variant(),
                requested: h.variant,
            });
        }
        if shares.insert(node, set).is_some() {
            return Err(Error::malformed("duplicate share entry"));
        }
    }
    let mut entries = BTreeSet::new();
    for _ in 0..r.count(16)? {
        entries.insert((r.node()?, r.u64()?));
    }
    r.finish()?;

    let tree = TreeState::from_parts(h.depth, capacity, assignments, shares, source)?;
    if let Some(bad) = entries.iter().find(|(leaf, _)| !tree.is_leaf(*leaf)) {
        return Err(Error::NotALeaf(bad.0));
    }
    if let (Some(hw), Some(lq)) = (high_water, last_query) {
        if hw > lq {
            return Err(Error::malformed("high-water update after last query"));
        }
    }
    Ok((
        h.variant,
        tree,
        RevocationList::from_parts(entries, high_water, last_query),
    ))
}
