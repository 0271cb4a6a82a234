//! Merkle tree traversal with retained fractal subtrees, tail-height update
//! scheduling over one shared stack, and a leaf-per-step TreeHash.
//!
//! [`Traversal::keygen`] computes the root of a height-`H` tree whose leaves
//! are derived from a seed through a forward-only generator, and leaves
//! behind the state needed to emit the authentication path of every leaf in
//! order, one [`Traversal::advance`] per leaf. Peak storage stays within
//! `L*2^h + 2H - 2h` hash values and no round computes more than `L` leaves;
//! the [`metrics`] module exposes the per-round numbers that back those
//! bounds, and [`oracle`] holds a brute-force reference implementation to
//! check every emitted path against.
//!
//! The crate is `no_std` (alloc required). File formats and the command-line
//! front end live in the companion CLI crate.

#![cfg_attr(not(any(feature = "std", test)), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod error;
pub mod hash;
pub mod metrics;
pub mod node;
pub mod oracle;
pub mod prng;
pub mod retain;
pub mod treehash;
pub mod traversal;

pub use error::Error;
pub use hash::{hash_children, leaf_digest, Digest, HashKind, KeyHashLeaf, LeafOracle};
pub use metrics::{aggregate, AggregateRecord, RoundRecord};
pub use node::Node;
pub use prng::PrngState;
pub use traversal::{AuthPath, Params, RoundOutput, Traversal, DEFAULT_MAX_HEIGHT};
