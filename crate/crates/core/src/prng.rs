//! Continuous deterministic generator for leaf private keys.
//!
//! The state carries two digests: a chain value that advances with every
//! output, and a context value derived from the seed alone. Every state
//! cloned from one seed shares the same context, so when states are counted
//! in hash-value units the context is charged once globally and each clone
//! costs a single chain digest. The generator is forward-only: the key for
//! leaf `i` requires stepping through keys `0..i`.

use crate::error::Error;
use crate::hash::{tags, Digest, HashKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrngState {
    chain: Digest,
    context: Digest,
}

impl PrngState {
    /// Derive a fresh state from a non-empty seed.
    pub fn from_seed(kind: HashKind, seed: &[u8]) -> Result<Self, Error> {
        if seed.is_empty() {
            return Err(Error::EmptySeed);
        }
        Ok(PrngState {
            chain: kind.digest_parts(&[seed, &[tags::CHAIN]]),
            context: kind.digest_parts(&[seed, &[tags::CONTEXT]]),
        })
    }

    /// Produce the next private key and advance the chain.
    pub fn next_key(&mut self, kind: HashKind) -> Digest {
        let key = kind.digest_parts(&[&self.chain.0, &self.context.0, &[tags::OUTPUT]]);
        self.chain = kind.digest_parts(&[&self.chain.0, &self.context.0, &[tags::ADVANCE]]);
        key
    }

    pub fn context(&self) -> &Digest {
        &self.context
    }
}
