//! The traversal engine.
//!
//! The tree of height `H` is split into `L = H/h` stacked levels of height-`h`
//! subtrees. Each subtree retains the right nodes of the span currently
//! serving authentication nodes (its exist tree) and gradually builds the
//! next span's nodes (its desired tree) in the same slot structure. Two
//! TreeHash instances drive the construction: a lower one computing
//! bottom-level nodes from leaves, scheduled across subtrees by smallest tail
//! height over one shared stack, and a higher one folding bottom-level nodes
//! into the upper right nodes, stepped whenever the authentication path
//! changes on the subtree's bottom level. Left nodes are never retained; they
//! are rebuilt from the previous path and a retained right child just before
//! they enter the path.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::error::Error;
use crate::hash::{hash_children, Digest, HashKind, KeyHashLeaf, LeafOracle};
use crate::metrics::RoundRecord;
use crate::node::{Node, NodeStack, SharedStack};
use crate::prng::PrngState;
use crate::retain::RetainTree;
use crate::treehash::{treehash_step, ProcessInput, Segment, TreehashInput};

/// Height ceiling used by [`Params::new`].
pub const DEFAULT_MAX_HEIGHT: u32 = 24;

/// Hard ceiling; index arithmetic and slot vectors are sized for this.
pub const HARD_MAX_HEIGHT: u32 = 32;

/// Validated tree parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    tree_height: u32,
    subtree_height: u32,
    hash: HashKind,
}

impl Params {
    /// Validate `H`, `h` against the default ceiling.
    pub fn new(tree_height: u32, subtree_height: u32, hash: HashKind) -> Result<Self, Error> {
        Self::with_ceiling(tree_height, subtree_height, hash, DEFAULT_MAX_HEIGHT)
    }

    /// Validate with a caller-chosen height ceiling (still hard-capped).
    pub fn with_ceiling(
        tree_height: u32,
        subtree_height: u32,
        hash: HashKind,
        ceiling: u32,
    ) -> Result<Self, Error> {
        let max = ceiling.min(HARD_MAX_HEIGHT);
        if tree_height == 0 || tree_height > max {
            return Err(Error::InvalidHeight {
                height: tree_height,
                max,
            });
        }
        if subtree_height == 0
            || subtree_height > tree_height
            || !tree_height.is_multiple_of(subtree_height)
        {
            return Err(Error::InvalidSubtreeHeight {
                tree_height,
                subtree_height,
            });
        }
        Ok(Params {
            tree_height,
            subtree_height,
            hash,
        })
    }

    pub fn tree_height(&self) -> u32 {
        self.tree_height
    }

    pub fn subtree_height(&self) -> u32 {
        self.subtree_height
    }

    /// Number of stacked subtree levels, `L`.
    pub fn levels(&self) -> u32 {
        self.tree_height / self.subtree_height
    }

    pub fn hash(&self) -> HashKind {
        self.hash
    }

    pub fn leaf_count(&self) -> u64 {
        1u64 << self.tree_height
    }
}

/// A completed bottom-level node waiting for the higher TreeHash, or the
/// placeholder for the skipped first node of a span. The placeholder costs
/// no storage.
#[derive(Clone, Copy, Debug)]
enum BottomNode {
    Real(Node),
    Placeholder,
}

struct Subtree {
    bottom_level: u32,
    root_level: u32,
    tree: RetainTree,
    /// Stack of the higher TreeHash. `None` for the top subtree and once the
    /// last span has been completed.
    stack_high: Option<NodeStack>,
    /// Index of the leaf most recently consumed by the lower TreeHash.
    next_index: u64,
    bottom_level_node: Option<BottomNode>,
    /// Generator positioned at `next_index + 1`. `None` for the top subtree.
    prng: Option<PrngState>,
}

impl Subtree {
    fn desired_active(&self) -> bool {
        self.stack_high.is_some()
    }
}

/// The authentication path of one leaf: the sibling node at every level
/// `0..H-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuthPath {
    nodes: Vec<Node>,
}

impl AuthPath {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn level(&self, level: u32) -> &Node {
        &self.nodes[level as usize]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn digests(&self) -> Vec<Digest> {
        self.nodes.iter().map(|n| n.digest).collect()
    }
}

/// One emitted round.
#[derive(Clone, Debug)]
pub struct RoundOutput {
    /// Leaf whose path was computed.
    pub leaf: u64,
    pub path: AuthPath,
    pub record: RoundRecord,
}

#[derive(Clone, Copy, Debug, Default)]
struct Counters {
    leaves_round: u32,
    leaves_total: u64,
    round_peak: u32,
    shared_peak: usize,
}

/// The whole mutable traversal state.
pub struct Traversal {
    params: Params,
    root: Digest,
    /// Leaf index whose authentication path `auth` currently holds.
    round: u64,
    auth: Vec<Node>,
    subtrees: Vec<Subtree>,
    shared_low: SharedStack,
    /// Generator for rebuilding level-0 left nodes; advanced once per round
    /// so its position tracks the current leaf.
    left_prng: PrngState,
    leaf_oracle: Box<dyn LeafOracle>,
    counters: Counters,
}

impl Traversal {
    /// Compute the root over all `2^H` leaves, retaining the right nodes of
    /// every leftmost subtree span and the path of leaf 0 along the way.
    pub fn keygen(params: Params, seed: &[u8]) -> Result<(Digest, Self), Error> {
        Self::keygen_with_oracle(params, seed, Box::new(KeyHashLeaf))
    }

    pub fn keygen_with_oracle(
        params: Params,
        seed: &[u8],
        leaf_oracle: Box<dyn LeafOracle>,
    ) -> Result<(Digest, Self), Error> {
        let hash = params.hash;
        let tree_height = params.tree_height;
        let subtree_height = params.subtree_height;
        let levels = params.levels();

        let mut master = PrngState::from_seed(hash, seed)?;
        let left_prng = master.clone();

        let mut subtrees: Vec<Subtree> = (0..levels)
            .map(|i| {
                let bottom_level = i * subtree_height;
                let root_level = bottom_level + subtree_height;
                Subtree {
                    bottom_level,
                    root_level,
                    tree: RetainTree::new(bottom_level, subtree_height),
                    stack_high: (i + 1 < levels).then(NodeStack::new),
                    next_index: (1u64 << root_level) - 1,
                    bottom_level_node: None,
                    prng: None,
                }
            })
            .collect();
        let mut auth: Vec<Option<Node>> = alloc::vec![None; tree_height as usize];

        let mut stack = NodeStack::new();
        let mut leaves_total = 0u64;
        for leaf_index in 0..params.leaf_count() {
            // Snapshot each subtree's generator as the master reaches the
            // first leaf its lower TreeHash will consume.
            for subtree in subtrees.iter_mut() {
                if subtree.prng.is_none()
                    && subtree.root_level < tree_height
                    && leaf_index == 1u64 << subtree.root_level
                {
                    subtree.prng = Some(master.clone());
                }
            }
            let key = master.next_key(hash);
            let digest = leaf_oracle.leaf(hash, leaf_index, &key);
            leaves_total += 1;
            let leaf = Node {
                height: 0,
                index: leaf_index,
                digest,
            };
            treehash_step(&mut stack, TreehashInput::Node(leaf), hash, &mut |input| {
                let ProcessInput::Node(node) = input else {
                    return Ok(true);
                };
                if node.height < tree_height {
                    let subtree = &mut subtrees[(node.height / subtree_height) as usize];
                    let leftmost_span = 1u64 << (subtree.root_level - node.height);
                    if node.is_right() && node.index <= leftmost_span {
                        subtree.tree.add(*node)?;
                    }
                    if node.index == 1 {
                        auth[node.height as usize] = Some(*node);
                    }
                }
                Ok(true)
            })?;
        }

        let root = stack.pop()?;
        if root.height != tree_height || !stack.is_empty() {
            return Err(Error::StackDiscipline {
                height: root.height,
            });
        }
        let auth: Vec<Node> = auth
            .into_iter()
            .enumerate()
            .map(|(t, n)| {
                n.ok_or(Error::MissingNode {
                    height: t as u32,
                    index: 1,
                })
            })
            .collect::<Result<_, _>>()?;

        let state = Traversal {
            params,
            root: root.digest,
            round: 0,
            auth,
            subtrees,
            shared_low: SharedStack::new(),
            left_prng,
            leaf_oracle,
            counters: Counters {
                leaves_total,
                ..Counters::default()
            },
        };
        Ok((root.digest, state))
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn root(&self) -> Digest {
        self.root
    }

    /// Leaf index whose path [`Self::auth_path`] currently holds.
    pub fn round(&self) -> u64 {
        self.round
    }

    pub fn auth_path(&self) -> AuthPath {
        AuthPath {
            nodes: self.auth.clone(),
        }
    }

    pub fn leaves_total(&self) -> u64 {
        self.counters.leaves_total
    }

    pub fn shared_stack_len(&self) -> usize {
        self.shared_low.len()
    }

    /// Largest shared-stack occupancy observed so far.
    pub fn shared_stack_peak(&self) -> usize {
        self.counters.shared_peak
    }

    /// Compute the next leaf's authentication path: run the scheduled lower
    /// TreeHash updates, then rewrite the path levels that change.
    pub fn advance(&mut self) -> Result<RoundOutput, Error> {
        let leaf = self.round + 1;
        if leaf >= self.params.leaf_count() {
            return Err(Error::EndOfTree);
        }
        self.counters.leaves_round = 0;
        self.counters.round_peak = 0;
        self.note_storage();
        self.distribute_lower_updates()?;
        self.next_auth_path(leaf)?;
        self.round = leaf;
        let record = RoundRecord {
            round: leaf,
            leaves: self.counters.leaves_round,
            stored_hashes: self.counters.round_peak,
        };
        Ok(RoundOutput {
            leaf,
            path: self.auth_path(),
            record,
        })
    }

    /// Tail height of subtree `i`'s lower TreeHash: the height of the lowest
    /// node on its shared-stack segment, its bottom level when the segment is
    /// empty, and `None` (infinite) when the instance is finished or its
    /// output is still waiting to be consumed.
    pub fn tail_height(&self, subtree: usize) -> Option<u32> {
        let st = &self.subtrees[subtree];
        if st.stack_high.is_some() && st.bottom_level_node.is_none() {
            Some(
                self.shared_low
                    .tail_height(subtree as u32)
                    .unwrap_or(st.bottom_level),
            )
        } else {
            None
        }
    }

    /// One update per subtree currently building a desired tree, each going
    /// to the instance with the smallest tail height (lowest index on ties).
    fn distribute_lower_updates(&mut self) -> Result<(), Error> {
        let budget = self.subtrees.iter().filter(|s| s.desired_active()).count();
        debug_assert!(budget < self.subtrees.len(), "at most L - 1 active instances");
        for _ in 0..budget {
            let chosen = (0..self.subtrees.len())
                .filter_map(|i| self.tail_height(i).map(|tail| (tail, i)))
                .min();
            // Every active instance may be waiting on the higher TreeHash; the
            // remaining updates then have no recipient.
            let Some((_, subtree)) = chosen else { break };
            self.run_lower_update(subtree)?;
            self.note_storage();
        }
        Ok(())
    }

    /// Advance subtree `s`'s lower TreeHash by one leaf. Leaves in the first
    /// `2^bottomLevel` positions of a span would only feed the span's first
    /// left nodes, so their computation is skipped — the generator still
    /// advances — and the placeholder is planted at the region's end.
    fn run_lower_update(&mut self, s: usize) -> Result<(), Error> {
        let hash = self.params.hash;
        let leaf_count = self.params.leaf_count();
        let st = &mut self.subtrees[s];
        st.next_index += 1;
        debug_assert!(st.next_index < leaf_count, "an active instance has leaves left");
        let key = st
            .prng
            .as_mut()
            .expect("scheduled lower TreeHash owns a generator")
            .next_key(hash);
        let span_mask = (1u64 << st.root_level) - 1;
        let skipped = 1u64 << st.bottom_level;
        if st.next_index & span_mask >= skipped {
            let digest = self.leaf_oracle.leaf(hash, st.next_index, &key);
            self.counters.leaves_round += 1;
            self.counters.leaves_total += 1;
            let leaf = Node {
                height: 0,
                index: st.next_index,
                digest,
            };
            if st.bottom_level == 0 {
                // The leaf already is a bottom-level node.
                st.bottom_level_node = Some(BottomNode::Real(leaf));
            } else {
                let bottom_level = st.bottom_level;
                let captured = &mut st.bottom_level_node;
                let mut segment = Segment {
                    stack: &mut self.shared_low,
                    owner: s as u32,
                };
                treehash_step(&mut segment, TreehashInput::Node(leaf), hash, &mut |input| {
                    let ProcessInput::Node(node) = input else {
                        return Ok(true);
                    };
                    if node.height == bottom_level {
                        *captured = Some(BottomNode::Real(*node));
                        Ok(false)
                    } else {
                        Ok(true)
                    }
                })?;
            }
        } else if (st.next_index + 1) & span_mask == skipped {
            st.bottom_level_node = Some(BottomNode::Placeholder);
        }
        Ok(())
    }

    /// Feed subtree `r`'s higher TreeHash its pending bottom-level node.
    fn run_higher_update(&mut self, r: usize) -> Result<(), Error> {
        let hash = self.params.hash;
        let leaf_count = self.params.leaf_count();
        let st = &mut self.subtrees[r];
        let input = match st.bottom_level_node.take() {
            Some(BottomNode::Real(node)) => TreehashInput::Node(node),
            Some(BottomNode::Placeholder) => TreehashInput::Dummy,
            None => return Err(Error::SupplyStall { subtree: r as u32 }),
        };
        let root_level = st.root_level;
        let next_index = st.next_index;
        let mut last_span_done = false;
        let Subtree {
            tree, stack_high, ..
        } = st;
        let stack = stack_high
            .as_mut()
            .expect("higher update only runs while a desired tree is active");
        treehash_step(stack, input, hash, &mut |input| {
            let ProcessInput::Node(node) = input else {
                // Placeholder: the span's first bottom-level node was never
                // computed, and nothing derived from it is needed either.
                return Ok(false);
            };
            let mut keep_going = true;
            if node.is_right() {
                tree.add(*node)?;
                // Stop before folding into the first node of a level: that
                // node is the span's first left node at its level, needed by
                // no right node.
                let per_span = 1u64 << (root_level - node.height - 1);
                if (node.index >> 1) & (per_span - 1) == 0 {
                    keep_going = false;
                }
            }
            if node.height == root_level - 1 && next_index + 1 >= leaf_count {
                // The span just completed was the last one.
                last_span_done = true;
            }
            Ok(keep_going)
        })?;
        if last_span_done {
            debug_assert!(st.stack_high.as_ref().is_some_and(NodeStack::is_empty));
            st.stack_high = None;
        }
        Ok(())
    }

    /// Rewrite the path for leaf `i` from the path of leaf `i - 1`. The path
    /// changes exactly on levels `0..=k`, `k` the 2-adic valuation of `i`:
    /// level `k` gains a left node (rebuilt, or the recomputed leaf for
    /// `k = 0`) and the levels below refresh to retained right nodes.
    fn next_auth_path(&mut self, i: u64) -> Result<(), Error> {
        let hash = self.params.hash;
        let subtree_height = self.params.subtree_height;
        let change_level = i.trailing_zeros();

        // One generator step per round keeps the chain at the current leaf.
        let left_key = self.left_prng.next_key(hash);
        if change_level == 0 {
            let digest = self.leaf_oracle.leaf(hash, i - 1, &left_key);
            self.counters.leaves_round += 1;
            self.counters.leaves_total += 1;
            self.auth[0] = Node {
                height: 0,
                index: i - 1,
                digest,
            };
        } else {
            // The left child sat on the previous path; the right child is
            // retained. Consuming the right child frees its slot before the
            // higher TreeHash can store the related node below.
            let left_child = self.auth[change_level as usize - 1];
            let right_index = left_child.index ^ 1;
            let s = ((change_level - 1) / subtree_height) as usize;
            let right_child = *self.subtrees[s].tree.get(change_level - 1, right_index)?;
            let parent = Node {
                height: change_level,
                index: left_child.index >> 1,
                digest: hash_children(hash, &left_child.digest, &right_child.digest),
            };
            self.subtrees[s].tree.remove(change_level - 1, right_index)?;
            self.auth[change_level as usize] = parent;
        }

        // The right node leaving the path is dropped now unless its parent is
        // a left node that still needs it.
        let entering = self.auth[change_level as usize];
        if (entering.index >> 1) & 1 == 1 {
            let s = (change_level / subtree_height) as usize;
            self.subtrees[s]
                .tree
                .remove(change_level, entering.index ^ 1)?;
        }
        self.note_storage();

        // Higher TreeHash steps for every subtree whose bottom level changed.
        for r in 0..self.subtrees.len() {
            if self.subtrees[r].bottom_level <= change_level && self.subtrees[r].desired_active() {
                self.run_higher_update(r)?;
                self.note_storage();
            }
        }

        // Levels below the change level switch to right nodes, all retained.
        for t in 0..change_level {
            let s = (t / subtree_height) as usize;
            self.auth[t as usize] = *self.subtrees[s].tree.get(t, (i >> t) ^ 1)?;
        }
        self.note_storage();
        Ok(())
    }

    /// Count every live digest: retained nodes, higher stacks, pending
    /// bottom-level nodes, authentication nodes not simultaneously retained,
    /// the shared lower stack, and `L` generator chains (one per lower
    /// TreeHash plus the left-node chain). The seed-derived context is key
    /// material held by every algorithm alike and is not charged per round;
    /// with that convention the count stays within `L*2^h + 2H - 2h` on
    /// every run.
    pub fn stored_hash_count(&self) -> u32 {
        let mut count = 0usize;
        for st in &self.subtrees {
            count += st.tree.occupied();
            if let Some(stack) = &st.stack_high {
                count += stack.len();
            }
            if matches!(st.bottom_level_node, Some(BottomNode::Real(_))) {
                count += 1;
            }
        }
        let subtree_height = self.params.subtree_height;
        for node in &self.auth {
            let s = (node.height / subtree_height) as usize;
            if !self.subtrees[s].tree.contains(node.height, node.index) {
                count += 1;
            }
        }
        count += self.shared_low.len();
        count += self.subtrees.len();
        count as u32
    }

    fn note_storage(&mut self) {
        let now = self.stored_hash_count();
        if now > self.counters.round_peak {
            self.counters.round_peak = now;
        }
        if self.shared_low.len() > self.counters.shared_peak {
            self.counters.shared_peak = self.shared_low.len();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::FullTree;

    const K: HashKind = HashKind::Sha256;
    const SEED: &[u8] = &[0x00, 0xff];

    fn params(tree_height: u32, subtree_height: u32) -> Params {
        Params::new(tree_height, subtree_height, K).unwrap()
    }

    #[test]
    fn traversal_state_is_sendable() {
        fn assert_send<T: Send>() {}
        assert_send::<Traversal>();
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(
            Params::new(4, 3, K),
            Err(Error::InvalidSubtreeHeight { .. })
        ));
        assert!(matches!(
            Params::new(0, 1, K),
            Err(Error::InvalidHeight { .. })
        ));
        assert!(matches!(
            Params::new(25, 1, K),
            Err(Error::InvalidHeight { .. })
        ));
        assert!(Params::with_ceiling(25, 1, K, 26).is_ok());
        assert!(matches!(
            Params::with_ceiling(33, 1, K, 64),
            Err(Error::InvalidHeight { max: 32, .. })
        ));
    }

    #[test]
    fn keygen_matches_the_oracle() {
        for (tree_height, subtree_height) in [(2, 1), (4, 2), (6, 3)] {
            let tree = FullTree::build(K, tree_height, SEED).unwrap();
            let (root, state) =
                Traversal::keygen(params(tree_height, subtree_height), SEED).unwrap();
            assert_eq!(root, tree.root());
            assert_eq!(state.auth_path().nodes(), &tree.auth_path(0).unwrap()[..]);
        }
    }

    #[test]
    fn keygen_computes_each_leaf_once() {
        let (_, state) = Traversal::keygen(params(3, 3), SEED).unwrap();
        assert_eq!(state.leaves_total(), 8);
    }

    #[test]
    fn keygen_retains_the_leftmost_spans() {
        let (_, state) = Traversal::keygen(params(4, 2), SEED).unwrap();
        let tree = FullTree::build(K, 4, SEED).unwrap();

        let held: Vec<(u32, u64)> = state.subtrees[0]
            .tree
            .nodes()
            .map(|n| (n.height, n.index))
            .collect();
        assert_eq!(held, [(0, 1), (0, 3), (1, 1)]);
        let held: Vec<(u32, u64)> = state.subtrees[1]
            .tree
            .nodes()
            .map(|n| (n.height, n.index))
            .collect();
        assert_eq!(held, [(2, 1), (2, 3), (3, 1)]);

        for st in &state.subtrees {
            for node in st.tree.nodes() {
                assert_eq!(node.digest, tree.digest(node.height, node.index));
            }
        }
        assert_eq!(state.subtrees[0].next_index, 3);
        assert_eq!(state.subtrees[1].next_index, 15);
        assert!(state.subtrees[0].desired_active());
        assert!(!state.subtrees[1].desired_active());
    }

    #[test]
    fn stored_hash_count_after_keygen() {
        // 6 retained nodes, fully deduplicated path, no stacks, L = 2
        // generator chains.
        let (_, state) = Traversal::keygen(params(4, 2), SEED).unwrap();
        assert_eq!(state.stored_hash_count(), 8);
    }

    #[test]
    fn tail_heights_over_the_first_rounds() {
        let (_, mut state) = Traversal::keygen(params(4, 2), SEED).unwrap();
        assert_eq!(state.tail_height(0), Some(0));
        // Top subtree never schedules.
        assert_eq!(state.tail_height(1), None);
        // Round 1's single update plants the placeholder; the instance then
        // waits for the higher TreeHash.
        state.distribute_lower_updates().unwrap();
        assert_eq!(state.tail_height(0), None);
        state.next_auth_path(1).unwrap();
        state.round = 1;
        assert_eq!(state.tail_height(0), Some(0));
    }

    #[test]
    fn per_round_leaf_counts_follow_the_schedule() {
        // Hand-derived for H=4, h=2: lower updates skip span-leading leaves,
        // the left-node leaf lands on odd rounds, and subtree 0 finishes its
        // last span at round 12.
        let expected = [1u32, 1, 2, 1, 1, 1, 2, 1, 1, 1, 2, 1, 1, 0, 1];
        let (_, mut state) = Traversal::keygen(params(4, 2), SEED).unwrap();
        let mut seen = Vec::new();
        while let Ok(out) = state.advance() {
            seen.push(out.record.leaves);
        }
        assert_eq!(seen, expected);
        // The average over the first 2^H - 2^(H-h) rounds meets the bound
        // (2^h - 1)/2^h * (L - 1) + 1/2 exactly here.
        let first: u32 = expected[..12].iter().sum();
        assert_eq!(f64::from(first) / 12.0, 1.25);
    }

    #[test]
    fn retained_nodes_always_match_the_full_tree() {
        let (root, mut state) = Traversal::keygen(params(6, 2), SEED).unwrap();
        let tree = FullTree::build(K, 6, SEED).unwrap();
        assert_eq!(root, tree.root());
        loop {
            match state.advance() {
                Ok(out) => {
                    for st in &state.subtrees {
                        for node in st.tree.nodes() {
                            assert_eq!(node.digest, tree.digest(node.height, node.index));
                        }
                        if let Some(BottomNode::Real(node)) = &st.bottom_level_node {
                            assert_eq!(node.digest, tree.digest(node.height, node.index));
                        }
                    }
                    assert_eq!(out.path.nodes(), &tree.auth_path(out.leaf).unwrap()[..]);
                }
                Err(Error::EndOfTree) => break,
                Err(e) => panic!("unexpected failure: {e}"),
            }
        }
        // All construction wound down with the last span.
        assert!(state.subtrees.iter().all(|s| !s.desired_active()));
        assert_eq!(state.tail_height(0), None);
    }

    #[test]
    fn advance_past_the_last_leaf_signals_end_of_tree() {
        let (_, mut state) = Traversal::keygen(params(2, 1), SEED).unwrap();
        for _ in 0..3 {
            state.advance().unwrap();
        }
        assert!(matches!(state.advance(), Err(Error::EndOfTree)));
        assert_eq!(state.round(), 3);
    }

    #[test]
    fn custom_leaf_oracle_keeps_the_structure_sound() {
        struct ConstantLeaf;
        impl LeafOracle for ConstantLeaf {
            fn leaf(&self, _: HashKind, _: u64, _: &Digest) -> Digest {
                Digest([0x5a; 32])
            }
        }
        let (_, mut state) =
            Traversal::keygen_with_oracle(params(4, 2), SEED, Box::new(ConstantLeaf)).unwrap();
        let mut rounds = 0;
        loop {
            match state.advance() {
                Ok(_) => rounds += 1,
                Err(Error::EndOfTree) => break,
                Err(e) => panic!("structural fault with constant leaves: {e}"),
            }
        }
        assert_eq!(rounds, 15);
    }
}
