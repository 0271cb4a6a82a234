//! The retained-node store of one subtree.
//!
//! A subtree of height `h` keeps only right nodes, which needs `2^h - 1`
//! slots: `2^(h-1-r)` of them at relative level `r`. The store is shared by
//! the snapshot currently serving authentication nodes and the one under
//! construction; two related nodes (same position relative to their span's
//! root) map to the same slot, and the update schedule guarantees the earlier
//! occupant is discarded before its successor arrives. Slot collisions are
//! therefore faults, never overwrites.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::node::Node;

#[derive(Clone, Debug)]
pub struct RetainTree {
    bottom_level: u32,
    subtree_height: u32,
    slots: Vec<Option<Node>>,
    occupied: usize,
}

impl RetainTree {
    pub fn new(bottom_level: u32, subtree_height: u32) -> Self {
        let capacity = (1usize << subtree_height) - 1;
        RetainTree {
            bottom_level,
            subtree_height,
            slots: vec![None; capacity],
            occupied: 0,
        }
    }

    pub fn bottom_level(&self) -> u32 {
        self.bottom_level
    }

    /// Levels stored: `bottom_level ..= bottom_level + h - 1`.
    pub fn top_level(&self) -> u32 {
        self.bottom_level + self.subtree_height - 1
    }

    pub fn occupied(&self) -> usize {
        self.occupied
    }

    /// Map a right node to its slot: relative level `r = height - bottom`,
    /// slot `s = (index mod 2^(rootLevel - height)) div 2`.
    pub fn slot_of(&self, height: u32, index: u64) -> Result<(u32, u64), Error> {
        if height < self.bottom_level || height > self.top_level() {
            return Err(Error::SlotOutOfRange { height, index });
        }
        if index & 1 == 0 {
            return Err(Error::NotARightNode { height, index });
        }
        let relative = height - self.bottom_level;
        let span = 1u64 << (self.bottom_level + self.subtree_height - height);
        Ok((relative, (index & (span - 1)) >> 1))
    }

    fn flat(&self, height: u32, index: u64) -> Result<usize, Error> {
        let (relative, slot) = self.slot_of(height, index)?;
        // Level r starts after the 2^(h-1) + ... + 2^(h-r) slots above it.
        let offset = (1usize << self.subtree_height) - (1usize << (self.subtree_height - relative));
        Ok(offset + slot as usize)
    }

    pub fn add(&mut self, node: Node) -> Result<(), Error> {
        let at = self.flat(node.height, node.index)?;
        if self.slots[at].is_some() {
            return Err(Error::SlotOccupied {
                height: node.height,
                index: node.index,
            });
        }
        self.slots[at] = Some(node);
        self.occupied += 1;
        Ok(())
    }

    /// Fetch without removing. The slot must hold exactly the requested node,
    /// not a related one from another span.
    pub fn get(&self, height: u32, index: u64) -> Result<&Node, Error> {
        let at = self.flat(height, index)?;
        match &self.slots[at] {
            Some(node) if node.height == height && node.index == index => Ok(node),
            _ => Err(Error::MissingNode { height, index }),
        }
    }

    pub fn remove(&mut self, height: u32, index: u64) -> Result<Node, Error> {
        let at = self.flat(height, index)?;
        match self.slots[at] {
            Some(node) if node.height == height && node.index == index => {
                self.slots[at] = None;
                self.occupied -= 1;
                Ok(node)
            }
            _ => Err(Error::MissingNode { height, index }),
        }
    }

    /// True when exactly the node `(height, index)` is currently retained.
    pub fn contains(&self, height: u32, index: u64) -> bool {
        self.flat(height, index)
            .ok()
            .and_then(|at| self.slots[at].as_ref())
            .map(|n| n.height == height && n.index == index)
            .unwrap_or(false)
    }

    /// All retained nodes, for inspection in tests and metrics.
    pub fn nodes(&self) -> impl Iterator<Item = &Node> {
        self.slots.iter().filter_map(|s| s.as_ref())
    }
}
