//! Tree nodes and the two stack flavours used by the TreeHash instances.

use alloc::vec::Vec;

use crate::error::Error;
use crate::hash::Digest;

/// A tree node: height (0 = leaf), left-to-right index among all nodes of
/// that height, and the node's digest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Node {
    pub height: u32,
    pub index: u64,
    pub digest: Digest,
}

impl Node {
    /// Odd index: the node is a right child.
    pub fn is_right(&self) -> bool {
        self.index & 1 == 1
    }
}

/// A TreeHash stack. Heights strictly increase from top to bottom; a push
/// that would break the ordering is reported as a fault instead of silently
/// corrupting the combine loop.
#[derive(Clone, Debug, Default)]
pub struct NodeStack {
    nodes: Vec<Node>,
}

impl NodeStack {
    pub fn new() -> Self {
        NodeStack { nodes: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn top(&self) -> Option<&Node> {
        self.nodes.last()
    }

    pub fn push(&mut self, node: Node) -> Result<(), Error> {
        if let Some(top) = self.nodes.last() {
            if node.height >= top.height {
                return Err(Error::StackDiscipline { height: node.height });
            }
        }
        self.nodes.push(node);
        Ok(())
    }

    pub fn pop(&mut self) -> Result<Node, Error> {
        self.nodes.pop().ok_or(Error::StackDiscipline { height: 0 })
    }
}

/// The single stack shared by every lower TreeHash instance.
///
/// Entries are tagged with the owning subtree. The update schedule keeps the
/// segments well nested: whenever an instance runs, all of its entries form
/// the top of the stack, and entries of interrupted instances below carry
/// strictly greater heights. Both properties are enforced here, so a
/// scheduling bug surfaces as a fault rather than a cross-owner combine.
#[derive(Clone, Debug, Default)]
pub struct SharedStack {
    entries: Vec<(u32, Node)>,
}

impl SharedStack {
    pub fn new() -> Self {
        SharedStack {
            entries: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn top(&self) -> Option<&(u32, Node)> {
        self.entries.last()
    }

    /// Height of the lowest node currently held for `owner`, i.e. the top of
    /// that owner's segment.
    pub fn tail_height(&self, owner: u32) -> Option<u32> {
        self.entries
            .iter()
            .rev()
            .find(|(o, _)| *o == owner)
            .map(|(_, n)| n.height)
    }

    pub fn push(&mut self, owner: u32, node: Node) -> Result<(), Error> {
        if let Some((_, top)) = self.entries.last() {
            if node.height >= top.height {
                return Err(Error::StackDiscipline { height: node.height });
            }
        }
        self.entries.push((owner, node));
        Ok(())
    }

    /// Pop the top entry, which must belong to `owner`.
    pub fn pop_owned(&mut self, owner: u32) -> Result<Node, Error> {
        match self.entries.last() {
            Some((o, node)) if *o == owner => {
                let node = *node;
                self.entries.pop();
                Ok(node)
            }
            Some((_, node)) => Err(Error::StackDiscipline {
                height: node.height,
            }),
            None => Err(Error::StackDiscipline { height: 0 }),
        }
    }
}
