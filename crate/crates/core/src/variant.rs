use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// The two constructions. They share tree handling, key derivation and
/// decryption and differ only in dimension and exponent layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// 6-dimensional bases over an asymmetric pairing.
    Sxdh,
    /// 9-dimensional bases, six of them published, double-layered keys.
    Dlin,
}

impl Variant {
    /// Dimension of the sampled dual bases.
    pub fn dimension(self) -> usize {
        match self {
            Variant::Sxdh => 6,
            Variant::Dlin => 9,
        }
    }

    /// Number of basis vectors exponentiated into the public parameters
    /// (and of dual vectors into the master key).
    pub fn published_vectors(self) -> usize {
        match self {
            Variant::Sxdh => 3,
            Variant::Dlin => 6,
        }
    }

    /// Fresh scalars drawn per private-key node (also per key-update node).
    pub fn node_randomness(self) -> usize {
        match self {
            Variant::Sxdh => 1,
            Variant::Dlin => 2,
        }
    }

    /// Fresh scalars drawn per encryption.
    pub fn encryption_randomness(self) -> usize {
        match self {
            Variant::Sxdh => 1,
            Variant::Dlin => 2,
        }
    }

    pub fn scheme_id(self) -> u8 {
        match self {
            Variant::Sxdh => 0x01,
            Variant::Dlin => 0x02,
        }
    }

    pub fn from_scheme_id(id: u8) -> Option<Self> {
        match id {
            0x01 => Some(Variant::Sxdh),
            0x02 => Some(Variant::Dlin),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Sxdh => "sxdh",
            Variant::Dlin => "dlin",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sxdh" => Ok(Variant::Sxdh),
            "dlin" => Ok(Variant::Dlin),
            other => Err(Error::UnknownScheme(other.to_string())),
        }
    }
}
