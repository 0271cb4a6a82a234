//! Error type shared across the crate.
//!
//! Two classes of variants live here. The argument-style variants reject bad
//! configuration or out-of-range inputs at the public API. The fault variants
//! report a broken internal invariant: a correct update schedule never hits
//! an occupied retain slot, pops a foreign stack entry, or starves the higher
//! TreeHash, so any of them firing means a scheduling bug and tests treat
//! them as failures.

use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Error {
    /// The seed for the deterministic generator must be non-empty.
    EmptySeed,
    /// Hash name not recognised by [`crate::hash::HashKind`].
    UnknownHash,
    /// Tree height outside `1..=max`.
    InvalidHeight { height: u32, max: u32 },
    /// Subtree height must be in `1..=H` and divide `H`.
    InvalidSubtreeHeight { tree_height: u32, subtree_height: u32 },
    /// Leaf index not below `2^H`.
    LeafOutOfRange { index: u64, leaf_count: u64 },
    /// The brute-force oracle refuses trees it cannot materialize.
    OracleHeightTooLarge { height: u32, max: u32 },
    /// An authentication path must carry one digest per tree level.
    BadPathLength { expected: usize, actual: usize },
    /// Height does not fall inside the subtree's stored range.
    SlotOutOfRange { height: u32, index: u64 },
    /// Left nodes are never retained; rejecting them loudly surfaces
    /// scheduling bugs at the boundary.
    NotARightNode { height: u32, index: u64 },
    /// The traversal has emitted the path of the last leaf.
    EndOfTree,

    // Engine faults.
    SlotOccupied { height: u32, index: u64 },
    MissingNode { height: u32, index: u64 },
    StackDiscipline { height: u32 },
    SupplyStall { subtree: u32 },
}

impl Error {
    /// True for the variants that signal a broken engine invariant rather
    /// than a bad argument.
    pub fn is_fault(&self) -> bool {
        matches!(
            self,
            Error::SlotOccupied { .. }
                | Error::MissingNode { .. }
                | Error::StackDiscipline { .. }
                | Error::SupplyStall { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptySeed => write!(f, "seed must not be empty"),
            Error::UnknownHash => write!(f, "unknown hash function name"),
            Error::InvalidHeight { height, max } => {
                write!(f, "tree height {height} outside 1..={max}")
            }
            Error::InvalidSubtreeHeight {
                tree_height,
                subtree_height,
            } => write!(
                f,
                "subtree height {subtree_height} must divide tree height {tree_height}"
            ),
            Error::LeafOutOfRange { index, leaf_count } => {
                write!(f, "leaf index {index} not below {leaf_count}")
            }
            Error::OracleHeightTooLarge { height, max } => {
                write!(f, "oracle limited to height {max}, got {height}")
            }
            Error::BadPathLength { expected, actual } => {
                write!(f, "path holds {actual} digests, expected {expected}")
            }
            Error::SlotOutOfRange { height, index } => {
                write!(f, "node ({height},{index}) outside the subtree's levels")
            }
            Error::NotARightNode { height, index } => {
                write!(f, "node ({height},{index}) is a left node")
            }
            Error::EndOfTree => write!(f, "all authentication paths have been emitted"),
            Error::SlotOccupied { height, index } => {
                write!(f, "fault: slot for node ({height},{index}) already occupied")
            }
            Error::MissingNode { height, index } => {
                write!(f, "fault: node ({height},{index}) absent from its slot")
            }
            Error::StackDiscipline { height } => {
                write!(f, "fault: stack discipline violated at height {height}")
            }
            Error::SupplyStall { subtree } => write!(
                f,
                "fault: higher TreeHash of subtree {subtree} found no bottom-level node"
            ),
        }
    }
}

#[cfg(any(feature = "std", test))]
impl std::error::Error for Error {}
