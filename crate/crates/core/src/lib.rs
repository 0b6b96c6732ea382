//! Revocable identity-based encryption over dual pairing vector spaces.
//!
//! Two constructions share one API, selected by [`Variant`]:
//!
//! * [`Variant::Sxdh`]: 6-dimensional bases, three published vectors.
//! * [`Variant::Dlin`]: 9-dimensional bases, six published vectors.
//!
//! Users sit at the leaves of a complete binary tree. A private key holds
//! one vector per node on the user's root path; each epoch the authority
//! publishes a key update over a node cover of the non-revoked leaves. A
//! user who shares a node with the update derives a decryption key.
//!
//! ```
//! use rand::SeedableRng;
//! use ribe::{encoding::identity_scalar, scheme, PairingEngine, ProductionGroup, ShareSource, Variant};
//!
//! let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(7);
//! let group = ProductionGroup::production();
//! let (pp, mk, mut rl, mut tree) =
//!     scheme::setup(&group, Variant::Sxdh, 4, ShareSource::Random, &mut rng).unwrap();
//! let id = identity_scalar(group.engine(), b"alice");
//! let sk = scheme::pri_key_gen(&pp, &mk, id, &mut tree, &mut rng).unwrap();
//! let ku = scheme::key_upd(&pp, &mk, 1, &mut rl, &mut tree, &mut rng).unwrap();
//! let dk = scheme::dec_key_gen(&sk, &ku).expect("not revoked");
//!
//! let m = group.gt_generator() * group.engine().random_scalar(&mut rng);
//! let ct = scheme::enc(&pp, id, 1, &m, &mut rng).unwrap();
//! assert_eq!(scheme::dec(&pp, &dk, &ct).unwrap(), m);
//! ```

pub mod algebra;
pub mod codec;
pub mod encoding;
pub mod error;
pub mod revtree;
pub mod scheme;
#[cfg(any(test, feature = "oracles"))]
pub mod sf_oracles;
mod variant;

pub use algebra::{Bls12, GroupDescription, MockEngine, PairingEngine, Profile};
pub use error::{Error, Result};
pub use revtree::{NodeId, RevocationList, ShareSource, TreeState};
pub use variant::Variant;

pub type ProductionGroup = GroupDescription<Bls12>;
pub type MockGroup = GroupDescription<MockEngine>;

pub type ProductionPublicParams = scheme::PublicParams<Bls12>;
pub type ProductionMasterKey = scheme::MasterKey<Bls12>;
pub type ProductionPrivateKey = scheme::PrivateKey<Bls12>;
pub type ProductionKeyUpdate = scheme::KeyUpdate<Bls12>;
pub type ProductionDecryptionKey = scheme::DecryptionKey<Bls12>;
pub type ProductionCiphertext = scheme::Ciphertext<Bls12>;
pub type ProductionTree = TreeState<Bls12>;

pub type MockPublicParams = scheme::PublicParams<MockEngine>;
pub type MockMasterKey = scheme::MasterKey<MockEngine>;
pub type MockTree = TreeState<MockEngine>;
