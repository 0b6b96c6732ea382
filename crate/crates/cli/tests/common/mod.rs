//! Drives the `ribe` binary inside a scratch authority directory.
#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use rand::seq::SliceRandom;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use tempfile::TempDir;

pub const BIN: &str = env!("CARGO_BIN_EXE_ribe");

pub struct Session {
    dir: TempDir,
}

impl Default for Session {
    fn default() -> Self {
        Self::new()
    }
}

impl Session {
    pub fn new() -> Self {
        Session {
            dir: tempfile::tempdir().expect("temp dir"),
        }
    }

    pub fn home(&self) -> PathBuf {
        self.dir.path().join("authority")
    }

    pub fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    pub fn run_with(&self, args: &[&str], env: &[(&str, &str)]) -> Output {
        let mut cmd = Command::new(BIN);
        cmd.args(args)
            .env("RIBE_HOME", self.home())
            .env_remove("RIBE_FAULT_INJECT");
        for (k, v) in env {
            cmd.env(k, v);
        }
        cmd.output().expect("spawn ribe")
    }

    pub fn run(&self, args: &[&str]) -> Output {
        self.run_with(args, &[])
    }

    /// Runs a command that must succeed and returns its stdout.
    pub fn ok(&self, args: &[&str]) -> Result<String, String> {
        let out = self.run(args);
        if out.status.success() {
            Ok(String::from_utf8_lossy(&out.stdout).into_owned())
        } else {
            Err(format!(
                "`ribe {}` failed: {}",
                args.join(" "),
                describe(&out)
            ))
        }
    }
}

pub fn code(out: &Output) -> Option<i32> {
    out.status.code()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn describe(out: &Output) -> String {
    format!(
        "status {:?}, stderr: {}",
        out.status.code(),
        stderr(out).trim()
    )
}

pub fn s(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

/// The consistency schedule run through the command surface: 5 users on an
/// 8-leaf authority, 3 revoked at random epochs, epochs 1..=10 published.
/// Every derivation must exit 3 exactly when the holder is revoked, every
/// live envelope must open, and an envelope opened with another identity's
/// key or after tampering must exit 4.
pub fn cli_consistency(
    scheme: &str,
    mock_q: Option<u64>,
    seed: u64,
    messages: usize,
) -> Result<String, String> {
    const USERS: usize = 5;
    const EPOCHS: u64 = 10;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let sess = Session::new();
    let home = sess.home();
    let pp = home.join("pp.bin");

    let q = mock_q.map(|q| q.to_string());
    let mut init = vec!["init", "--scheme", scheme, "--nmax", "8"];
    if let Some(q) = &q {
        init.extend(["--mock-q", q]);
    }
    sess.ok(&init)?;

    let sks: Vec<PathBuf> = (0..USERS)
        .map(|u| sess.path(&format!("sk_{u}.bin")))
        .collect();
    for (u, sk) in sks.iter().enumerate() {
        sess.ok(&["register", "--id", &format!("user-{u}"), "--out", s(sk)])?;
    }

    let mut order: Vec<usize> = (0..USERS).collect();
    order.shuffle(&mut rng);
    let mut revoked_at = [None; USERS];
    for &u in &order[..3] {
        revoked_at[u] = Some(rng.gen_range(1..=EPOCHS));
    }
    for t in 1..=EPOCHS {
        let ts = t.to_string();
        for u in (0..USERS).filter(|u| revoked_at[*u] == Some(t)) {
            sess.ok(&["revoke", "--id", &format!("user-{u}"), "--time", &ts])?;
        }
        sess.ok(&["publish", "--time", &ts])?;
    }

    let mut live = Vec::new();
    let mut bottoms = 0;
    for t in 1..=EPOCHS {
        let ku = home.join(format!("bulletins/ku_{t}.bin"));
        for u in 0..USERS {
            let dk = sess.path(&format!("dk_{u}_{t}.bin"));
            let out = sess.run(&[
                "derive-dk",
                "--sk",
                s(&sks[u]),
                "--ku",
                s(&ku),
                "--out",
                s(&dk),
            ]);
            let revoked = revoked_at[u].is_some_and(|r| r <= t);
            match (revoked, code(&out)) {
                (true, Some(3)) if stderr(&out).contains("revoked") => bottoms += 1,
                (false, Some(0)) => live.push((u, t, dk)),
                _ => {
                    return Err(format!(
                        "derive for user {u} at t={t} (revoked={revoked}): {}",
                        describe(&out)
                    ))
                }
            }
        }
    }
    if bottoms == 0 {
        return Err("schedule revoked nobody".into());
    }

    let msg = sess.path("msg");
    let ct = sess.path("ct");
    let back = sess.path("back");
    for i in 0..messages {
        let (u, t, dk) = live.choose(&mut rng).expect("some user is live");
        let mut payload = vec![0u8; rng.gen_range(0..256)];
        rng.fill_bytes(&mut payload);
        fs::write(&msg, &payload).map_err(|e| e.to_string())?;
        let (id, ts) = (format!("user-{u}"), t.to_string());
        sess.ok(&[
            "encrypt",
            "--pp",
            s(&pp),
            "--id",
            &id,
            "--time",
            &ts,
            "--in",
            s(&msg),
            "--out",
            s(&ct),
        ])?;
        sess.ok(&[
            "decrypt",
            "--pp",
            s(&pp),
            "--dk",
            s(dk),
            "--in",
            s(&ct),
            "--out",
            s(&back),
        ])?;
        if fs::read(&back).map_err(|e| e.to_string())? != payload {
            return Err(format!(
                "message {i} to user {u} at t={t} came back different"
            ));
        }
    }

    // Another live identity at the same epoch must fail closed.
    let mut integrity = 0;
    let pair = live.iter().find_map(|(u, t, _)| {
        live.iter()
            .find(|(v, tv, _)| v != u && tv == t)
            .map(|(_, _, other_dk)| (*u, *t, other_dk.clone()))
    });
    let (u, t, other_dk) = pair.ok_or("no two users live at one epoch")?;
    fs::write(&msg, b"for one reader only").map_err(|e| e.to_string())?;
    let (id, ts) = (format!("user-{u}"), t.to_string());
    sess.ok(&[
        "encrypt",
        "--pp",
        s(&pp),
        "--id",
        &id,
        "--time",
        &ts,
        "--in",
        s(&msg),
        "--out",
        s(&ct),
    ])?;
    let out = sess.run(&[
        "decrypt",
        "--pp",
        s(&pp),
        "--dk",
        s(&other_dk),
        "--in",
        s(&ct),
        "--out",
        s(&back),
    ]);
    if code(&out) != Some(4) {
        return Err(format!("wrong-identity decrypt: {}", describe(&out)));
    }
    integrity += 1;

    let own_dk = &live
        .iter()
        .find(|(v, tv, _)| *v == u && *tv == t)
        .expect("u live at t")
        .2;
    let mut bytes = fs::read(&ct).map_err(|e| e.to_string())?;
    *bytes.last_mut().expect("nonempty") ^= 0x80;
    fs::write(&ct, &bytes).map_err(|e| e.to_string())?;
    let out = sess.run(&[
        "decrypt",
        "--pp",
        s(&pp),
        "--dk",
        s(own_dk),
        "--in",
        s(&ct),
        "--out",
        s(&back),
    ]);
    if code(&out) != Some(4) {
        return Err(format!("tampered decrypt: {}", describe(&out)));
    }
    integrity += 1;

    Ok(format!(
        "{} live derivations, {bottoms} exit-3 derivations, {messages}/{messages} decryptions, {integrity} exit-4 checks",
        live.len()
    ))
}
