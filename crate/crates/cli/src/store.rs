//! On-disk layout of an authority home directory and the file primitives
//! shared by every command.
//!
//! ```text
//! HOME/pp.bin               public parameters        0644
//! HOME/mk.bin               master key               0600
//! HOME/state.bin            tree state + RL          0600
//! HOME/bulletins/ku_T.bin   key update for epoch T   0644
//! HOME/keys/sk_LEAF.bin     issued private keys      0600
//! HOME/.lock                advisory writer lock
//! ```

use std::fs::{self, File, OpenOptions, TryLockError};
use std::io::Write;
use std::os::unix::fs::{OpenOptionsExt, PermissionsExt};
use std::path::{Path, PathBuf};

use ribe::codec::{self, Artifact};
use ribe::{GroupDescription, PairingEngine};

use crate::error::{CliError, CliResult};

pub const PUBLIC_MODE: u32 = 0o644;
pub const SECRET_MODE: u32 = 0o600;

/// Set to `before-rename` (first atomic write) or `before-rename:NAME` to
/// abort the process after a temp file is written but before it replaces
/// its target.
pub const FAULT_ENV: &str = "RIBE_FAULT_INJECT";

pub struct AuthorityStore {
    home: PathBuf,
}

impl AuthorityStore {
    pub fn new(home: impl Into<PathBuf>) -> Self {
        AuthorityStore { home: home.into() }
    }

    pub fn pp_path(&self) -> PathBuf {
        self.home.join("pp.bin")
    }

    pub fn mk_path(&self) -> PathBuf {
        self.home.join("mk.bin")
    }

    pub fn state_path(&self) -> PathBuf {
        self.home.join("state.bin")
    }

    pub fn bulletin_dir(&self) -> PathBuf {
        self.home.join("bulletins")
    }

    pub fn bulletin_path(&self, t: u64) -> PathBuf {
        self.bulletin_dir().join(format!("ku_{t}.bin"))
    }

    pub fn key_dir(&self) -> PathBuf {
        self.home.join("keys")
    }

    pub fn key_path(&self, leaf: u64) -> PathBuf {
        self.key_dir().join(format!("sk_{leaf}.bin"))
    }

    /// Takes the exclusive writer lock; released when the handle drops.
    pub fn lock(&self) -> CliResult<File> {
        fs::create_dir_all(&self.home).map_err(|e| CliError::io(&self.home, e))?;
        let path = self.home.join(".lock");
        let file = OpenOptions::new()
            .create(true)
            .truncate(false)
            .write(true)
            .open(&path)
            .map_err(|e| CliError::io(&path, e))?;
        match file.try_lock() {
            Ok(()) => Ok(file),
            Err(TryLockError::WouldBlock) => Err(CliError::Other(format!(
                "{} is locked by another authority command",
                self.home.display()
            ))),
            Err(TryLockError::Error(e)) => Err(CliError::io(&path, e)),
        }
    }

    /// Epochs of the bulletins present on disk, ascending.
    pub fn bulletin_epochs(&self) -> CliResult<Vec<u64>> {
        let dir = self.bulletin_dir();
        let entries = match fs::read_dir(&dir) {
            Ok(entries) => entries,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(CliError::io(&dir, e)),
        };
        let mut epochs = Vec::new();
        for entry in entries {
            let entry = entry.map_err(|e| CliError::io(&dir, e))?;
            let name = entry.file_name();
            let epoch = name
                .to_str()
                .and_then(|n| n.strip_prefix("ku_"))
                .and_then(|n| n.strip_suffix(".bin"))
                .and_then(|n| n.parse::<u64>().ok());
            if let Some(t) = epoch {
                epochs.push(t);
            }
        }
        epochs.sort_unstable();
        Ok(epochs)
    }

    /// The state's high-water epoch must match the newest bulletin. `repair`
    /// names an epoch whose bulletin may be missing because a publish was
    /// interrupted after its state write.
    pub fn check_high_water(&self, high_water: Option<u64>, repair: Option<u64>) -> CliResult<()> {
        let newest = self.bulletin_epochs()?.last().copied();
        if newest == high_water {
            return Ok(());
        }
        let pending = high_water.is_some()
            && high_water == repair
            && newest.is_none_or(|n| Some(n) < high_water);
        if pending {
            return Ok(());
        }
        let show = |t: Option<u64>| t.map_or_else(|| "none".to_string(), |t| t.to_string());
        let mut msg = format!(
            "state high-water epoch is {} but newest bulletin is {}",
            show(high_water),
            show(newest)
        );
        if let Some(t) = high_water.filter(|t| newest < Some(*t)) {
            msg.push_str(&format!(
                "; rerun `publish --time {t}` to restore the bulletin"
            ));
        }
        Err(CliError::StateCorruption(msg))
    }
}

/// Reads a file, dropping a leading `# ...` comment line if present.
pub fn read_payload(path: &Path) -> CliResult<Vec<u8>> {
    let mut bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
    if bytes.starts_with(b"# ") {
        let end = bytes.iter().position(|b| *b == b'\n').ok_or_else(|| {
            CliError::Other(format!("{}: unterminated header line", path.display()))
        })?;
        bytes.drain(..=end);
    }
    Ok(bytes)
}

pub fn load<E: PairingEngine, A: Artifact<E>>(
    group: &GroupDescription<E>,
    path: &Path,
) -> CliResult<A> {
    let bytes = read_payload(path)?;
    codec::decode(group, &bytes).map_err(|e| CliError::Other(format!("{}: {e}", path.display())))
}

/// Prefixes an encoded artifact with its human-readable summary line.
pub fn with_summary(encoded: Vec<u8>) -> Vec<u8> {
    let line = codec::summary_line(&encoded).expect("freshly encoded artifact");
    let mut out = format!("# {line}\n").into_bytes();
    out.extend_from_slice(&encoded);
    out
}

pub fn store<E: PairingEngine, A: Artifact<E>>(
    group: &GroupDescription<E>,
    artifact: &A,
    path: &Path,
    mode: u32,
) -> CliResult<()> {
    write_atomic(path, &with_summary(codec::encode(group, artifact)), mode)
}

fn fault_requested(path: &Path) -> bool {
    let Ok(setting) = std::env::var(FAULT_ENV) else {
        return false;
    };
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
    match setting.split_once(':') {
        None => setting == "before-rename",
        Some((point, target)) => point == "before-rename" && target == name,
    }
}

/// Writes `bytes` to a sibling temp file, syncs it, then renames it over
/// `path`. Readers see either the old or the new contents.
pub fn write_atomic(path: &Path, bytes: &[u8], mode: u32) -> CliResult<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let name = path
        .file_name()
        .ok_or_else(|| CliError::Other(format!("{} is not a file path", path.display())))?;
    let tmp = dir.join(format!(
        ".{}.tmp{}",
        name.to_string_lossy(),
        std::process::id()
    ));

    let write = || -> std::io::Result<()> {
        let mut f = OpenOptions::new()
            .write(true)
            .create(true)
            .truncate(true)
            .mode(mode)
            .open(&tmp)?;
        f.set_permissions(fs::Permissions::from_mode(mode))?;
        f.write_all(bytes)?;
        f.sync_all()
    };
    if let Err(e) = write() {
        let _ = fs::remove_file(&tmp);
        return Err(CliError::io(&tmp, e));
    }
    if fault_requested(path) {
        eprintln!("fault injected before renaming {}", tmp.display());
        std::process::abort();
    }
    fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))?;
    if let Ok(d) = File::open(dir) {
        let _ = d.sync_all();
    }
    Ok(())
}
