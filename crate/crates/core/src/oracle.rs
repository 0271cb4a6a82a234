//! Brute-force reference implementation.
//!
//! The oracle materializes every node of the tree, reads roots and
//! authentication paths straight out of the array, and folds paths for
//! verification. It shares only the hash and generator primitives with the
//! traversal engine — none of the scheduling — so agreement between the two
//! is meaningful. Space is O(2^H) by design; heights are capped accordingly.

use alloc::vec::Vec;

use crate::error::Error;
use crate::hash::{hash_children, leaf_digest, Digest, HashKind};
use crate::node::Node;
use crate::prng::PrngState;

/// Largest tree the oracle will materialize.
pub const MAX_ORACLE_HEIGHT: u32 = 16;

/// Every node of a tree, indexed by `(height, index)`.
#[derive(Clone, Debug)]
pub struct FullTree {
    kind: HashKind,
    height: u32,
    /// `levels[t][j]` is the digest of the node at height `t`, index `j`.
    levels: Vec<Vec<Digest>>,
}

impl FullTree {
    /// Materialize the whole tree for `seed`, using the default leaf rule.
    pub fn build(kind: HashKind, height: u32, seed: &[u8]) -> Result<Self, Error> {
        if height == 0 || height > MAX_ORACLE_HEIGHT {
            return Err(Error::OracleHeightTooLarge {
                height,
                max: MAX_ORACLE_HEIGHT,
            });
        }
        let mut prng = PrngState::from_seed(kind, seed)?;
        let leaves: Vec<Digest> = (0..1u64 << height)
            .map(|_| leaf_digest(kind, &prng.next_key(kind)))
            .collect();
        let mut levels = Vec::with_capacity(height as usize + 1);
        levels.push(leaves);
        for _ in 0..height {
            let below = levels.last().unwrap();
            let above: Vec<Digest> = below
                .chunks(2)
                .map(|pair| hash_children(kind, &pair[0], &pair[1]))
                .collect();
            levels.push(above);
        }
        Ok(FullTree {
            kind,
            height,
            levels,
        })
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn root(&self) -> Digest {
        self.levels[self.height as usize][0]
    }

    pub fn digest(&self, height: u32, index: u64) -> Digest {
        self.levels[height as usize][index as usize]
    }

    pub fn node(&self, height: u32, index: u64) -> Node {
        Node {
            height,
            index,
            digest: self.digest(height, index),
        }
    }

    /// Sibling nodes along the path from leaf `index` to the root.
    pub fn auth_path(&self, index: u64) -> Result<Vec<Node>, Error> {
        if index >= 1u64 << self.height {
            return Err(Error::LeafOutOfRange {
                index,
                leaf_count: 1u64 << self.height,
            });
        }
        Ok((0..self.height)
            .map(|t| self.node(t, (index >> t) ^ 1))
            .collect())
    }

    pub fn kind(&self) -> HashKind {
        self.kind
    }
}

/// Root of the tree for `seed`, by full materialization.
pub fn brute_root(kind: HashKind, height: u32, seed: &[u8]) -> Result<Digest, Error> {
    Ok(FullTree::build(kind, height, seed)?.root())
}

/// Authentication path digests for leaf `index`, by full materialization.
pub fn brute_auth_path(
    kind: HashKind,
    height: u32,
    seed: &[u8],
    index: u64,
) -> Result<Vec<Digest>, Error> {
    let tree = FullTree::build(kind, height, seed)?;
    Ok(tree.auth_path(index)?.iter().map(|n| n.digest).collect())
}

/// Fold `leaf` upward along `path`, taking left/right order from the bits of
/// `index`, and compare with `root`.
pub fn verify_path(
    kind: HashKind,
    tree_height: u32,
    index: u64,
    leaf: &Digest,
    path: &[Digest],
    root: &Digest,
) -> Result<bool, Error> {
    if path.len() != tree_height as usize {
        return Err(Error::BadPathLength {
            expected: tree_height as usize,
            actual: path.len(),
        });
    }
    if tree_height < 64 && index >= 1u64 << tree_height {
        return Err(Error::LeafOutOfRange {
            index,
            leaf_count: 1u64 << tree_height,
        });
    }
    let mut acc = *leaf;
    for (t, sibling) in path.iter().enumerate() {
        let right_child = t < 64 && (index >> t) & 1 == 1;
        acc = if right_child {
            hash_children(kind, sibling, &acc)
        } else {
            hash_children(kind, &acc, sibling)
        };
    }
    Ok(acc == *root)
}
