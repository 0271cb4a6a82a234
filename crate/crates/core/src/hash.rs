//! Hash primitive: fixed 256-bit digests, the supported hash functions, and
//! the default leaf rule.

use core::fmt;
use core::str::FromStr;

use blake2::Blake2s256;
use sha2::{Digest as _, Sha256};

use crate::error::Error;

/// Output size of every supported hash, in bytes.
pub const DIGEST_LEN: usize = 32;

/// Single-byte domain separators. Fixed so that derived values are stable
/// across versions and usable as golden vectors.
pub mod tags {
    /// Appended to the seed to derive the generator context value.
    pub const CONTEXT: u8 = 0x43;
    /// Appended to the seed to derive the generator chain value.
    pub const CHAIN: u8 = 0x53;
    /// Appended to a private key to derive the leaf digest.
    pub const LEAF: u8 = 0x4C;
    /// Generator output derivation.
    pub const OUTPUT: u8 = 0x01;
    /// Generator state advance.
    pub const ADVANCE: u8 = 0x02;
}

/// A fixed-size hash value; the unit of all space accounting.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest(pub [u8; DIGEST_LEN]);

impl Digest {
    pub const ZERO: Digest = Digest([0; DIGEST_LEN]);

    pub fn as_bytes(&self) -> &[u8; DIGEST_LEN] {
        &self.0
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for byte in &self.0 {
            write!(f, "{byte:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Digest({:02x}{:02x}{:02x}{:02x}..)",
            self.0[0], self.0[1], self.0[2], self.0[3]
        )
    }
}

/// Hash function selection. The engine only ever sees an opaque
/// bytes-to-digest mapping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HashKind {
    Sha256,
    Blake2s,
}

impl HashKind {
    /// Hash the concatenation of `parts`.
    pub fn digest_parts(self, parts: &[&[u8]]) -> Digest {
        match self {
            HashKind::Sha256 => {
                let mut hasher = Sha256::new();
                for part in parts {
                    hasher.update(part);
                }
                Digest(hasher.finalize().into())
            }
            HashKind::Blake2s => {
                let mut hasher = Blake2s256::new();
                for part in parts {
                    hasher.update(part);
                }
                Digest(hasher.finalize().into())
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HashKind::Sha256 => "sha256",
            HashKind::Blake2s => "blake2s",
        }
    }
}

impl FromStr for HashKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "sha256" => Ok(HashKind::Sha256),
            "blake2s" => Ok(HashKind::Blake2s),
            _ => Err(Error::UnknownHash),
        }
    }
}

/// Parent digest of two sibling nodes: `H(left || right)`.
pub fn hash_children(kind: HashKind, left: &Digest, right: &Digest) -> Digest {
    kind.digest_parts(&[&left.0, &right.0])
}

/// Default leaf rule: the leaf is the hash of its private key.
pub fn leaf_digest(kind: HashKind, key: &Digest) -> Digest {
    kind.digest_parts(&[&key.0, &[tags::LEAF]])
}

/// Pluggable leaf computation. The traversal engine hands the oracle the leaf
/// index and the private key produced by the generator chain; everything the
/// engine guarantees about structure holds for any oracle.
pub trait LeafOracle: Send {
    fn leaf(&self, kind: HashKind, index: u64, key: &Digest) -> Digest;
}

/// The default oracle, [`leaf_digest`] applied to the key.
#[derive(Clone, Copy, Debug, Default)]
pub struct KeyHashLeaf;

impl LeafOracle for KeyHashLeaf {
    fn leaf(&self, kind: HashKind, _index: u64, key: &Digest) -> Digest {
        leaf_digest(kind, key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_children_golden_vectors() {
        // Frozen from an independent hashlib computation.
        let sha = hash_children(HashKind::Sha256, &Digest::ZERO, &Digest::ZERO);
        assert_eq!(
            hex::encode(sha.0),
            "f5a5fd42d16a20302798ef6ed309979b43003d2320d9f0e8ea9831a92759fb4b"
        );
        let blake = hash_children(HashKind::Blake2s, &Digest::ZERO, &Digest::ZERO);
        assert_eq!(
            hex::encode(blake.0),
            "ae09db7cd54f42b490ef09b6bc541af688e4959bb8c53f359a6f56e38ab454a3"
        );
    }

    #[test]
    fn children_order_matters() {
        // 100 deterministic pseudo-random pairs.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            let mut d = [0u8; DIGEST_LEN];
            for chunk in d.chunks_mut(8) {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                chunk.copy_from_slice(&state.to_le_bytes());
            }
            Digest(d)
        };
        for _ in 0..100 {
            let (a, b) = (next(), next());
            assert_ne!(a, b);
            assert_ne!(
                hash_children(HashKind::Sha256, &a, &b),
                hash_children(HashKind::Sha256, &b, &a)
            );
            assert_ne!(
                leaf_digest(HashKind::Sha256, &a),
                leaf_digest(HashKind::Sha256, &b)
            );
        }
    }

    #[test]
    fn hash_kind_parsing() {
        assert_eq!("sha256".parse::<HashKind>().unwrap(), HashKind::Sha256);
        assert_eq!("blake2s".parse::<HashKind>().unwrap(), HashKind::Blake2s);
        assert_eq!("md5".parse::<HashKind>(), Err(Error::UnknownHash));
    }

    #[test]
    fn display_is_lowercase_hex() {
        let d = hash_children(HashKind::Sha256, &Digest::ZERO, &Digest::ZERO);
        assert_eq!(alloc::format!("{d}"), hex::encode(d.0));
    }
}
