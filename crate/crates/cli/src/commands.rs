use std::fs::{self, File};
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use ribe::codec;
use ribe::encoding::identity_scalar;
use ribe::revtree::RevokeOutcome;
use ribe::scheme::{self, DecryptionKey, KeyUpdate, MasterKey, PrivateKey, PublicParams};
use ribe::{GroupDescription, PairingEngine, RevocationList, ShareSource, TreeState, Variant};
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};
use crate::hybrid;
use crate::store::{self, AuthorityStore, PUBLIC_MODE, SECRET_MODE};

const SETUP_SEED_DOMAIN: &[u8] = b"RIBE:setup:v1";

/// Setup randomness for a PRF-seeded authority, so that a replay from the
/// same seed reproduces `alpha`, the bases and every node share.
pub fn setup_rng(seed: &[u8; 32]) -> ChaCha20Rng {
    let digest = Sha256::new()
        .chain_update(SETUP_SEED_DOMAIN)
        .chain_update(seed)
        .finalize();
    ChaCha20Rng::from_seed(digest.into())
}

fn fresh_rng() -> ChaCha20Rng {
    ChaCha20Rng::from_entropy()
}

pub struct InitOptions {
    pub variant: Variant,
    pub n_max: u64,
    pub out: PathBuf,
    pub prf_seed: Option<[u8; 32]>,
    pub force: bool,
}

pub fn init<E: PairingEngine>(group: &GroupDescription<E>, opts: &InitOptions) -> CliResult<()> {
    let store = AuthorityStore::new(&opts.out);
    let _lock = store.lock()?;
    let existing: Vec<PathBuf> = [store.pp_path(), store.mk_path(), store.state_path()]
        .into_iter()
        .filter(|p| p.exists())
        .collect();
    if !existing.is_empty() && !opts.force {
        return Err(CliError::Other(format!(
            "{} already exists; pass --force to replace the authority",
            existing[0].display()
        )));
    }

    let (source, mut rng) = match opts.prf_seed {
        Some(seed) => (ShareSource::Prf(seed), setup_rng(&seed)),
        None => (ShareSource::Random, fresh_rng()),
    };
    let (pp, mk, rl, tree) = scheme::setup(group, opts.variant, opts.n_max, source, &mut rng)?;

    // Bulletins of a replaced authority would break the high-water check.
    for t in store.bulletin_epochs()? {
        let path = store.bulletin_path(t);
        fs::remove_file(&path).map_err(|e| CliError::io(&path, e))?;
    }
    store::store(group, &pp, &store.pp_path(), PUBLIC_MODE)?;
    store::store(group, &mk, &store.mk_path(), SECRET_MODE)?;
    let state = codec::encode_state(group, opts.variant, &tree, &rl);
    store::write_atomic(&store.state_path(), &state, SECRET_MODE)?;

    println!("scheme: {}", opts.variant);
    println!(
        "capacity: {} leaves (depth {})",
        tree.capacity(),
        tree.depth()
    );
    println!("PP elements: {}", pp.element_count());
    println!("MK elements: {}", mk.element_count());
    if group.is_insecure() {
        eprintln!(
            "warning: {} is an INSECURE-MOCK engine for testing only",
            group.descriptor()
        );
    }
    Ok(())
}

/// An opened authority home: parameters, master key and mutable state, held
/// under the writer lock.
pub struct Authority<E: PairingEngine> {
    store: AuthorityStore,
    group: GroupDescription<E>,
    pp: PublicParams<E>,
    mk: MasterKey<E>,
    tree: TreeState<E>,
    rl: RevocationList,
    _lock: File,
}

impl<E: PairingEngine> Authority<E> {
    pub fn open(store: AuthorityStore, group: GroupDescription<E>) -> CliResult<Self> {
        let lock = store.lock()?;
        let pp: PublicParams<E> = store::load(&group, &store.pp_path())?;
        let mk: MasterKey<E> = store::load(&group, &store.mk_path())?;
        if mk.variant() != pp.variant() {
            return Err(CliError::StateCorruption(format!(
                "master key is {} but public parameters are {}",
                mk.variant(),
                pp.variant()
            )));
        }
        let state_path = store.state_path();
        let bytes = fs::read(&state_path).map_err(|e| CliError::io(&state_path, e))?;
        let (variant, tree, rl) = codec::decode_state(&group, &bytes)
            .map_err(|e| CliError::StateCorruption(format!("{}: {e}", state_path.display())))?;
        if variant != pp.variant() {
            return Err(CliError::StateCorruption(format!(
                "state is {variant} but public parameters are {}",
                pp.variant()
            )));
        }
        Ok(Authority {
            store,
            group,
            pp,
            mk,
            tree,
            rl,
            _lock: lock,
        })
    }

    fn save_state(&self) -> CliResult<()> {
        let bytes = codec::encode_state(&self.group, self.pp.variant(), &self.tree, &self.rl);
        store::write_atomic(&self.store.state_path(), &bytes, SECRET_MODE)
    }

    pub fn register(
        &mut self,
        raw_id: &str,
        allow_duplicate: bool,
        out: Option<&Path>,
    ) -> CliResult<()> {
        self.store
            .check_high_water(self.rl.high_water_update(), None)?;
        let id = identity_scalar(self.group.engine(), raw_id.as_bytes());
        if let Some(leaf) = self.tree.leaves_of(&id).first() {
            if !allow_duplicate {
                return Err(CliError::Other(format!(
                    "identity {raw_id:?} is already registered at leaf {leaf}; pass --allow-duplicate to issue another leaf"
                )));
            }
        }
        let sk = scheme::pri_key_gen(&self.pp, &self.mk, id, &mut self.tree, &mut fresh_rng())?;
        // State first: a crash afterwards leaves the leaf consumed, never reused.
        self.save_state()?;
        let path = out.map_or_else(|| self.store.key_path(sk.leaf().index()), Path::to_path_buf);
        store::store(&self.group, &sk, &path, SECRET_MODE)?;
        println!("leaf: {}", sk.leaf());
        println!("path nodes: {}", sk.entries().len());
        println!("private key: {}", path.display());
        Ok(())
    }

    pub fn revoke(&mut self, raw_id: &str, t: u64) -> CliResult<()> {
        self.store
            .check_high_water(self.rl.high_water_update(), None)?;
        let id = identity_scalar(self.group.engine(), raw_id.as_bytes());
        match scheme::key_rev(&id, t, &mut self.rl, &self.tree)? {
            RevokeOutcome::Revoked(leaves) => {
                self.save_state()?;
                let leaves: Vec<String> = leaves.iter().map(ToString::to_string).collect();
                println!(
                    "revoked {raw_id:?} from t={t} (leaves {})",
                    leaves.join(",")
                );
            }
            RevokeOutcome::UnknownIdentity => {
                eprintln!("warning: identity {raw_id:?} is not registered; nothing revoked");
            }
        }
        Ok(())
    }

    pub fn publish(&mut self, t: u64) -> CliResult<()> {
        self.store
            .check_high_water(self.rl.high_water_update(), Some(t))?;
        let ku = scheme::key_upd(
            &self.pp,
            &self.mk,
            t,
            &mut self.rl,
            &mut self.tree,
            &mut fresh_rng(),
        )?;
        // State first: once t is recorded, revocations for t are refused even
        // if the bulletin write below is interrupted.
        self.save_state()?;
        let path = self.store.bulletin_path(t);
        store::store(&self.group, &ku, &path, PUBLIC_MODE)?;
        let nodes: Vec<String> = ku.nodes().iter().map(ToString::to_string).collect();
        println!("bulletin: {}", path.display());
        println!("nodes: {} [{}]", nodes.len(), nodes.join(","));
        Ok(())
    }
}

pub fn derive_dk<E: PairingEngine>(
    group: &GroupDescription<E>,
    sk_path: &Path,
    ku_path: &Path,
    out: &Path,
) -> CliResult<()> {
    let sk: PrivateKey<E> = store::load(group, sk_path)?;
    let ku: KeyUpdate<E> = store::load(group, ku_path)?;
    if sk.variant() != ku.variant() {
        return Err(CliError::Scheme(ribe::Error::VariantMismatch {
            expected: sk.variant(),
            found: ku.variant(),
        }));
    }
    let dk = scheme::dec_key_gen(&sk, &ku).ok_or(CliError::Revoked)?;
    store::store(group, &dk, out, SECRET_MODE)?;
    println!("node: {} t: {}", dk.node(), dk.time());
    Ok(())
}

pub fn encrypt<E: PairingEngine>(
    group: &GroupDescription<E>,
    pp_path: &Path,
    raw_id: &str,
    t: u64,
    input: &Path,
    out: &Path,
) -> CliResult<()> {
    let pp: PublicParams<E> = store::load(group, pp_path)?;
    let plaintext = fs::read(input).map_err(|e| CliError::io(input, e))?;
    let id = identity_scalar(group.engine(), raw_id.as_bytes());
    let envelope = hybrid::seal(&pp, id, t, &plaintext, &mut fresh_rng())?;
    let (ct, _, _) = hybrid::split(&envelope)?;
    let summary = codec::summary_line(ct)?;
    let mut file = format!("# envelope {summary}\n").into_bytes();
    file.extend_from_slice(&envelope);
    store::write_atomic(out, &file, PUBLIC_MODE)
}

pub fn decrypt<E: PairingEngine>(
    group: &GroupDescription<E>,
    pp_path: &Path,
    dk_path: &Path,
    input: &Path,
    out: &Path,
) -> CliResult<()> {
    let pp: PublicParams<E> = store::load(group, pp_path)?;
    let dk: DecryptionKey<E> = store::load(group, dk_path)?;
    let envelope = store::read_payload(input)?;
    let plaintext = hybrid::open(&pp, &dk, &envelope)?;
    store::write_atomic(out, &plaintext, SECRET_MODE)
}

/// One line describing any file this tool writes.
pub fn inspect(path: &Path) -> CliResult<String> {
    let bytes = store::read_payload(path)?;
    let describe = |e: ribe::Error| CliError::Other(format!("{}: {e}", path.display()));
    if bytes.starts_with(codec::ARTIFACT_MAGIC) {
        return codec::summary_line(&bytes).map_err(describe);
    }
    if bytes.starts_with(codec::STATE_MAGIC) {
        let h = codec::peek_state_header(&bytes).map_err(describe)?;
        return Ok(format!(
            "scheme={} kind=state depth={} engine={}",
            h.variant, h.depth, h.engine
        ));
    }
    if bytes.starts_with(hybrid::MAGIC) {
        let (ct, _, sealed) = hybrid::split(&bytes)?;
        let line = codec::summary_line(ct).map_err(describe)?;
        return Ok(format!("envelope sealed_len={} {line}", sealed.len()));
    }
    Err(CliError::Other(format!(
        "{}: unrecognized file",
        path.display()
    )))
}

/// The engine named by an artifact or state file.
pub fn engine_of(path: &Path) -> CliResult<ribe::algebra::EngineDescriptor> {
    let bytes = store::read_payload(path)?;
    let describe = |e: ribe::Error| CliError::Other(format!("{}: {e}", path.display()));
    if bytes.starts_with(codec::STATE_MAGIC) {
        return Ok(codec::peek_state_header(&bytes).map_err(describe)?.engine);
    }
    Ok(codec::peek_header(&bytes).map_err(describe)?.engine)
}
