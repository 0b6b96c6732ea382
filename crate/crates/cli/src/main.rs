//! `ribe`: key authority, sender and receiver tooling for revocable
//! identity-based encryption.

mod commands;
mod error;
mod hybrid;
mod store;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ribe::algebra::EngineDescriptor;
use ribe::{Bls12, GroupDescription, MockEngine, Variant};

use crate::commands::{Authority, InitOptions};
use crate::error::{CliError, CliResult};
use crate::store::AuthorityStore;

const AFTER_HELP: &str = "\
Exit status: 0 ok, 1 error, 2 usage, 3 revoked, 4 integrity failure, 5 state corruption.

Private keys are handed over as files restricted to the owner (mode 0600);
moving them to their holders securely is outside this tool. Bulletins are
world-readable and unsigned.";

#[derive(Parser)]
#[command(name = "ribe", version, about = "Revocable identity-based encryption authority and user tool", after_help = AFTER_HELP)]
struct Cli {
    /// Authority directory holding pp.bin, mk.bin, state.bin and bulletins/.
    #[arg(long, global = true, env = "RIBE_HOME")]
    home: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Sxdh,
    Dlin,
}

impl From<SchemeArg> for Variant {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Sxdh => Variant::Sxdh,
            SchemeArg::Dlin => Variant::Dlin,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Create a new authority: public parameters, master key and empty state.
    Init {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        /// Maximum number of users (leaves); rounded up to a power of two.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        nmax: u64,
        /// Target directory [default: --home]
        #[arg(long)]
        out: Option<PathBuf>,
        /// 32-byte hex seed. Node shares and setup randomness are derived
        /// from it, so the authority state can be replayed.
        #[arg(long, value_parser = parse_seed)]
        prf_seed: Option<[u8; 32]>,
        /// Use the INSECURE mock engine over Z_P (prime P < 2^31) for testing.
        #[arg(long, value_name = "P")]
        mock_q: Option<u64>,
        /// Replace an existing authority in the target directory.
        #[arg(long)]
        force: bool,
    },
    /// Assign the identity a leaf and write its private key.
    Register {
        #[arg(long)]
        id: String,
        /// Issue a further leaf to an identity that already holds one.
        #[arg(long)]
        allow_duplicate: bool,
        /// Output file [default: HOME/keys/sk_<leaf>.bin]
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Revoke every leaf of the identity from epoch TIME on.
    Revoke {
        #[arg(long)]
        id: String,
        #[arg(long)]
        time: u64,
    },
    /// Publish the key update bulletin for epoch TIME.
    Publish {
        #[arg(long)]
        time: u64,
    },
    /// Combine a private key with a bulletin; exits 3 if the holder is revoked.
    DeriveDk {
        #[arg(long)]
        sk: PathBuf,
        #[arg(long)]
        ku: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypt a file to an identity at an epoch.
    ///
    /// The scheme encrypts a random GT element; HKDF-SHA256 over its encoding
    /// keys ChaCha20-Poly1305 for the file contents. This hybrid wrapper is
    /// plumbing outside the revocable IBE construction itself.
    Encrypt {
        #[arg(long)]
        pp: PathBuf,
        #[arg(long)]
        id: String,
        #[arg(long)]
        time: u64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decrypt a file with a decryption key; exits 4 on any integrity failure.
    Decrypt {
        #[arg(long)]
        pp: PathBuf,
        #[arg(long)]
        dk: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a one-line summary of an artifact, state or envelope file.
    Inspect { file: PathBuf },
}

fn parse_seed(s: &str) -> Result<[u8; 32], String> {
    let bytes = hex::decode(s).map_err(|e| e.to_string())?;
    bytes
        .try_into()
        .map_err(|b: Vec<u8>| format!("expected 32 bytes (64 hex digits), got {}", b.len()))
}

/// Runs `$body` with `$group` bound to the engine named by `$desc`.
macro_rules! with_group {
    ($desc:expr, |$group:ident| $body:expr) => {
        match $desc {
            EngineDescriptor::Bls12_381 => {
                let $group = GroupDescription::<Bls12>::production();
                $body
            }
            EngineDescriptor::Mock { q } => {
                let $group = GroupDescription::<MockEngine>::mock(q)?;
                $body
            }
        }
    };
}

fn home(cli_home: Option<PathBuf>) -> CliResult<PathBuf> {
    cli_home.ok_or_else(|| {
        CliError::Usage("no authority directory: pass --home or set RIBE_HOME".into())
    })
}

fn authority_engine(store: &AuthorityStore) -> CliResult<EngineDescriptor> {
    commands::engine_of(&store.pp_path())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Init {
            scheme,
            nmax,
            out,
            prf_seed,
            mock_q,
            force,
        } => {
            let out = match out {
                Some(out) => out,
                None => home(cli.home)?,
            };
            let opts = InitOptions {
                variant: scheme.into(),
                n_max: nmax,
                out,
                prf_seed,
                force,
            };
            let desc = mock_q.map_or(EngineDescriptor::Bls12_381, |q| EngineDescriptor::Mock {
                q,
            });
            with_group!(desc, |group| commands::init(&group, &opts))
        }
        Command::Register {
            id,
            allow_duplicate,
            out,
        } => {
            let store = AuthorityStore::new(home(cli.home)?);
            with_group!(authority_engine(&store)?, |group| {
                Authority::open(store, group)?.register(&id, allow_duplicate, out.as_deref())
            })
        }
        Command::Revoke { id, time } => {
            let store = AuthorityStore::new(home(cli.home)?);
            with_group!(authority_engine(&store)?, |group| {
                Authority::open(store, group)?.revoke(&id, time)
            })
        }
        Command::Publish { time } => {
            let store = AuthorityStore::new(home(cli.home)?);
            with_group!(authority_engine(&store)?, |group| {
                Authority::open(store, group)?.publish(time)
            })
        }
        Command::DeriveDk { sk, ku, out } => {
            with_group!(commands::engine_of(&sk)?, |group| {
                commands::derive_dk(&group, &sk, &ku, &out)
            })
        }
        Command::Encrypt {
            pp,
            id,
            time,
            input,
            out,
        } => with_group!(commands::engine_of(&pp)?, |group| {
            commands::encrypt(&group, &pp, &id, time, &input, &out)
        }),
        Command::Decrypt { pp, dk, input, out } => {
            with_group!(commands::engine_of(&pp)?, |group| {
                commands::decrypt(&group, &pp, &dk, &input, &out)
            })
        }
        Command::Inspect { file } => {
            println!("{}", commands::inspect(Path::new(&file))?);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
