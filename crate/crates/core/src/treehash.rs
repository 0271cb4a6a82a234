//! One step of the improved TreeHash.
//!
//! A step consumes exactly one input node and then folds as many completed
//! parents as the stack allows before a fresh input would be needed. The
//! process callback steers the step: it sees the input node (when it is a
//! right node) and every folded parent, and returning `false` stops the step
//! with the current node *not* pushed — callbacks that capture a node are
//! expected to have stored it themselves.

use crate::error::Error;
use crate::hash::{hash_children, HashKind};
use crate::node::{Node, NodeStack, SharedStack};

/// Input to one step: a freshly produced node, or the placeholder standing in
/// for a skipped first bottom-level node.
#[derive(Clone, Copy, Debug)]
pub enum TreehashInput {
    Node(Node),
    Dummy,
}

/// What a process callback is shown.
#[derive(Clone, Copy, Debug)]
pub enum ProcessInput<'a> {
    Node(&'a Node),
    Dummy,
}

/// Stack abstraction so one step engine drives the key-generation stack, the
/// per-subtree higher stacks, and segments of the shared lower stack.
pub trait TreehashStack {
    fn top_height(&self) -> Option<u32>;
    fn pop(&mut self) -> Result<Node, Error>;
    fn push(&mut self, node: Node) -> Result<(), Error>;
}

impl TreehashStack for NodeStack {
    fn top_height(&self) -> Option<u32> {
        self.top().map(|n| n.height)
    }

    fn pop(&mut self) -> Result<Node, Error> {
        NodeStack::pop(self)
    }

    fn push(&mut self, node: Node) -> Result<(), Error> {
        NodeStack::push(self, node)
    }
}

/// One subtree's view of the shared lower stack.
pub struct Segment<'a> {
    pub stack: &'a mut SharedStack,
    pub owner: u32,
}

impl TreehashStack for Segment<'_> {
    fn top_height(&self) -> Option<u32> {
        // Entries of other owners are never combined with; when this owner is
        // scheduled its segment sits on top.
        self.stack
            .top()
            .filter(|(owner, _)| *owner == self.owner)
            .map(|(_, n)| n.height)
    }

    fn pop(&mut self) -> Result<Node, Error> {
        self.stack.pop_owned(self.owner)
    }

    fn push(&mut self, node: Node) -> Result<(), Error> {
        self.stack.push(self.owner, node)
    }
}

/// Run one TreeHash step.
///
/// Right-node inputs pass through `process` first; then, while the stack top
/// matches the current node's height, the step pops it and folds
/// `hash(popped || current)` into the parent at `(height + 1, index / 2)`,
/// showing each parent to `process`. The surviving node is pushed unless
/// `process` stopped the step.
pub fn treehash_step<S, P>(
    stack: &mut S,
    input: TreehashInput,
    kind: HashKind,
    process: &mut P,
) -> Result<(), Error>
where
    S: TreehashStack + ?Sized,
    P: FnMut(ProcessInput<'_>) -> Result<bool, Error> + ?Sized,
{
    let mut node = match input {
        TreehashInput::Dummy => {
            // The placeholder only reaches callbacks that know to drop it.
            process(ProcessInput::Dummy)?;
            return Ok(());
        }
        TreehashInput::Node(node) => node,
    };
    let mut keep_going = if node.is_right() {
        process(ProcessInput::Node(&node))?
    } else {
        true
    };
    while keep_going && stack.top_height() == Some(node.height) {
        let left = stack.pop()?;
        node = Node {
            height: node.height + 1,
            index: node.index >> 1,
            digest: hash_children(kind, &left.digest, &node.digest),
        };
        keep_going = process(ProcessInput::Node(&node))?;
    }
    if keep_going {
        stack.push(node)?;
    }
    Ok(())
}
