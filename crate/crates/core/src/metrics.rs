//! Per-round measurement records and windowed aggregation.
//!
//! The two measured quantities are the number of leaf computations in a
//! round and the peak number of simultaneously stored hash values during it.
//! Leaves are the expensive operation; inner-node hashes and generator steps
//! are not counted. Stored hashes count every live digest: retained nodes,
//! stack entries, pending bottom-level nodes, authentication nodes not also
//! retained, and the generator states in hash-value units.

use alloc::vec::Vec;

/// One round's sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RoundRecord {
    /// Leaf index of the authentication path computed this round.
    pub round: u64,
    /// Leaf computations performed during the round.
    pub leaves: u32,
    /// Peak stored hash values at any step of the round.
    pub stored_hashes: u32,
}

/// Aggregation of a window of consecutive rounds: the maximum of the storage
/// peaks and the mean of the leaf counts.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AggregateRecord {
    pub window_start: u64,
    pub max_stored_hashes: u32,
    pub mean_leaves: f64,
}

/// Group `records` into windows of `window` consecutive rounds. The final
/// window may be partial.
pub fn aggregate(records: &[RoundRecord], window: usize) -> Vec<AggregateRecord> {
    assert!(window >= 1, "aggregation window must be at least 1");
    records
        .chunks(window)
        .map(|chunk| AggregateRecord {
            window_start: chunk[0].round,
            max_stored_hashes: chunk.iter().map(|r| r.stored_hashes).max().unwrap(),
            mean_leaves: chunk.iter().map(|r| u64::from(r.leaves)).sum::<u64>() as f64
                / chunk.len() as f64,
        })
        .collect()
}
