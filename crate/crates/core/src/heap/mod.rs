//! The position heap of a text and its on-line construction.
//!
//! Suffixes are inserted in descending order of length. Every inserted
//! suffix either creates one node, at its shortest unrepresented prefix,
//! or, when the whole suffix is already represented, is attached to the
//! reached node as that node's *secondary* position. A node therefore
//! stores one primary position and at most one secondary position.
//!
//! [`PositionHeap::append`] extends the heap of `T[1..k]` to the heap of
//! `T[1..k+1]` in amortized constant time by walking suffix links from the
//! active node. Secondary positions are not materialized during the build;
//! [`PositionHeap::finalize`] recovers them from the suffix-link chain.
//!
//! Positions are 1-based throughout.

mod oracle;

pub use oracle::{h_oracle, oracle_build};

use std::fmt;

use crate::error::{Error, Result};

/// One symbol of the alphabet.
pub type Letter = u8;

/// Dense index into the node table. The root is always `NodeId::ROOT`.
///
/// Ids are handed out in creation order, so for non-root nodes the id
/// happens to equal the primary position. Nothing outside this module
/// relies on that.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);
    // Stored in place of an absent parent or suffix link.
    const NONE: NodeId = NodeId(u32::MAX);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub(crate) fn from_index(index: usize) -> NodeId {
        debug_assert!(index < u32::MAX as usize);
        NodeId(index as u32)
    }

    #[inline]
    fn from_option(v: Option<NodeId>) -> NodeId {
        v.unwrap_or(NodeId::NONE)
    }

    #[inline]
    fn to_option(self) -> Option<NodeId> {
        (self != NodeId::NONE).then_some(self)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Longest text the heap can index; positions are stored as `u32`.
pub const MAX_TEXT_LEN: usize = u32::MAX as usize - 1;

mod edges;

pub use edges::Children;
use edges::EdgeArena;

/// A heap node. Positions are stored as `u32` with 0 meaning "none".
///
/// Up to two outgoing edges live inline; larger fan-outs spill into the
/// heap's shared edge arena, so child lookups go through
/// [`PositionHeap::child`].
#[derive(Clone, Debug)]
pub struct Node {
    parent: NodeId,
    suffix_link: NodeId,
    depth: u32,
    primary: u32,
    secondary: u32,
    letter: Letter,
    // Number of inline edges (0 to 2), or an arena form.
    fan: u8,
    small: [Letter; 2],
    // Inline child ids, or the arena block start and its length/capacity.
    slots: [u32; 2],
}

impl PartialEq for Node {
    /// Edge storage is ignored: the children of a node are determined by
    /// the parent fields of the other nodes.
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent
            && self.suffix_link == other.suffix_link
            && self.depth == other.depth
            && self.primary == other.primary
            && self.secondary == other.secondary
            && self.letter == other.letter
    }
}

impl Eq for Node {}

impl Node {
    fn new(parent: NodeId, suffix_link: NodeId, depth: u32, letter: Letter) -> Node {
        Node {
            parent,
            suffix_link,
            depth,
            primary: 0,
            secondary: 0,
            letter,
            fan: 0,
            small: [0; 2],
            slots: [0; 2],
        }
    }

    fn root() -> Node {
        Node::new(NodeId::NONE, NodeId::NONE, 0, 0)
    }

    pub fn parent(&self) -> Option<NodeId> {
        self.parent.to_option()
    }

    /// Letter on the edge from the parent; `None` for the root.
    pub fn in_letter(&self) -> Option<Letter> {
        self.parent().map(|_| self.letter)
    }

    /// Node whose label is this node's label minus its first letter.
    /// `None` for the root, whose link goes to the virtual bottom node.
    pub fn suffix_link(&self) -> Option<NodeId> {
        self.suffix_link.to_option()
    }

    pub fn depth(&self) -> usize {
        self.depth as usize
    }

    pub fn primary(&self) -> Option<usize> {
        (self.primary != 0).then_some(self.primary as usize)
    }

    pub fn secondary(&self) -> Option<usize> {
        (self.secondary != 0).then_some(self.secondary as usize)
    }

    pub fn is_double(&self) -> bool {
        self.primary != 0 && self.secondary != 0
    }

    pub fn is_leaf(&self) -> bool {
        self.fan == 0
    }

    /// Positions stored at this node, primary first.
    pub fn positions(&self) -> impl Iterator<Item = usize> {
        [self.primary(), self.secondary()].into_iter().flatten()
    }
}

/// Position heap of a text that can be grown one letter at a time.
#[derive(Clone)]
pub struct PositionHeap {
    nodes: Vec<Node>,
    text: Vec<Letter>,
    active_node: NodeId,
    active_position: usize,
    edges: EdgeArena,
    finalized: bool,
    height: usize,
    loop_iterations: u64,
}

impl PartialEq for PositionHeap {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes
            && self.text == other.text
            && self.active_node == other.active_node
            && self.active_position == other.active_position
            && self.finalized == other.finalized
    }
}

impl Eq for PositionHeap {}

impl fmt::Debug for PositionHeap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PositionHeap")
            .field("text", &String::from_utf8_lossy(&self.text))
            .field("nodes", &self.nodes.len())
            .field("active_node", &self.active_node)
            .field("active_position", &self.active_position)
            .field("finalized", &self.finalized)
            .finish()
    }
}

impl Default for PositionHeap {
    fn default() -> Self {
        Self::new()
    }
}

impl PositionHeap {
    /// Heap of the empty text: the root alone.
    pub fn new() -> Self {
        PositionHeap {
            nodes: vec![Node::root()],
            text: Vec::new(),
            active_node: NodeId::ROOT,
            active_position: 1,
            edges: EdgeArena::default(),
            finalized: false,
            height: 0,
            loop_iterations: 0,
        }
    }

    /// Builds the heap of `text` on-line. The result is not finalized, so
    /// more letters may still be appended.
    pub fn build(text: &[Letter]) -> Result<Self> {
        let mut heap = Self::with_capacity(text.len());
        heap.extend(text)?;
        Ok(heap)
    }

    /// Builds and finalizes in one step.
    pub fn build_finalized(text: &[Letter]) -> Result<Self> {
        let mut heap = Self::build(text)?;
        heap.finalize();
        Ok(heap)
    }

    pub fn with_capacity(n: usize) -> Self {
        let mut heap = Self::new();
        heap.nodes.reserve(n);
        heap.text.reserve(n);
        heap
    }

    pub fn extend(&mut self, letters: &[Letter]) -> Result<()> {
        letters.iter().try_for_each(|&a| self.append(a))
    }

    /// Appends one letter to the text.
    ///
    /// From the active node, every node on the suffix-link chain that lacks
    /// an `a`-edge gets a new `a`-child holding the current active
    /// position; consecutive new nodes are chained by suffix links. The
    /// first node that already has an `a`-edge ends the walk and the target
    /// of that edge becomes the active node.
    pub fn append(&mut self, a: Letter) -> Result<()> {
        if self.finalized {
            return Err(Error::AlreadyFinalized);
        }
        if self.text.len() >= MAX_TEXT_LEN {
            return Err(Error::TextTooLong { max: MAX_TEXT_LEN });
        }
        self.text.push(a);

        // `None` stands for the virtual bottom node, which has an edge to
        // the root for every letter.
        let mut current = Some(self.active_node);
        let mut last_created: Option<NodeId> = None;
        let target = loop {
            let v = match current {
                None => break NodeId::ROOT,
                Some(v) => v,
            };
            if let Some(t) = self.child(v, a) {
                break t;
            }
            let created = self.create_child(v, a, self.active_position);
            self.loop_iterations += 1;
            if let Some(last) = last_created {
                self.nodes[last.index()].suffix_link = created;
            }
            last_created = Some(created);
            current = self.nodes[v.index()].suffix_link.to_option();
            self.active_position += 1;
        };
        if let Some(last) = last_created {
            self.nodes[last.index()].suffix_link = target;
        }
        self.active_node = target;
        Ok(())
    }

    fn create_child(&mut self, parent: NodeId, a: Letter, position: usize) -> NodeId {
        let id = NodeId::from_index(self.nodes.len());
        let depth = self.nodes[parent.index()].depth + 1;
        let mut node = Node::new(parent, NodeId::NONE, depth, a);
        node.primary = position as u32;
        self.nodes.push(node);
        self.edges.insert(&mut self.nodes[parent.index()], a, id);
        self.height = self.height.max(depth as usize);
        id
    }

    /// Recovers the secondary positions `s, s+1, ..., n` by walking the
    /// suffix-link chain from the active node to the root. Calling it
    /// again is a no-op.
    pub fn finalize(&mut self) {
        if self.finalized {
            return;
        }
        let mut position = self.active_position;
        let mut v = self.active_node;
        while v != NodeId::ROOT {
            let node = &mut self.nodes[v.index()];
            node.secondary = position as u32;
            position += 1;
            v = node
                .suffix_link()
                .expect("non-root node without suffix link");
        }
        debug_assert_eq!(position, self.text.len() + 1);
        self.finalized = true;
    }

    pub fn is_finalized(&self) -> bool {
        self.finalized
    }

    pub fn text(&self) -> &[Letter] {
        &self.text
    }

    /// Length n of the text.
    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    /// Letter at 1-based position `i`.
    pub fn letter_at(&self, i: usize) -> Letter {
        self.text[i - 1]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Depth of the deepest node.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn root(&self) -> NodeId {
        NodeId::ROOT
    }

    /// Node storing the smallest secondary position (or the root if there
    /// is none).
    pub fn active_node(&self) -> NodeId {
        self.active_node
    }

    /// Smallest secondary position; `n + 1` when every position is primary.
    pub fn active_position(&self) -> usize {
        self.active_position
    }

    /// Number of node-creating loop iterations over the whole build.
    pub fn loop_iterations(&self) -> u64 {
        self.loop_iterations
    }

    #[inline]
    pub fn node(&self, v: NodeId) -> &Node {
        &self.nodes[v.index()]
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = (NodeId, &Node)> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (NodeId::from_index(i), n))
    }

    #[inline]
    pub fn child(&self, v: NodeId, a: Letter) -> Option<NodeId> {
        self.edges.find(&self.nodes[v.index()], a)
    }

    /// Children of `v` in increasing letter order.
    pub fn children(&self, v: NodeId) -> Children<'_> {
        Children {
            arena: &self.edges,
            node: &self.nodes[v.index()],
            from: 0,
        }
    }

    /// Number of children of `v`.
    pub fn fan_out(&self, v: NodeId) -> usize {
        self.edges.len(&self.nodes[v.index()])
    }

    pub fn depth(&self, v: NodeId) -> usize {
        self.nodes[v.index()].depth()
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[v.index()].parent()
    }

    pub fn suffix_link(&self, v: NodeId) -> Option<NodeId> {
        self.nodes[v.index()].suffix_link()
    }

    /// Concatenated edge letters from the root to `v`.
    pub fn path_label(&self, v: NodeId) -> Vec<Letter> {
        let mut label = Vec::with_capacity(self.depth(v));
        let mut u = v;
        while let Some(p) = self.nodes[u.index()].parent() {
            label.push(self.nodes[u.index()].letter);
            u = p;
        }
        label.reverse();
        label
    }

    /// Node whose label is exactly `w`, if `w` is represented.
    pub fn locate(&self, w: &[Letter]) -> Option<NodeId> {
        w.iter().try_fold(NodeId::ROOT, |v, &a| self.child(v, a))
    }

    /// Deepest node whose label is a prefix of `w`.
    pub fn longest_represented_prefix(&self, w: &[Letter]) -> NodeId {
        let mut v = NodeId::ROOT;
        for &a in w {
            match self.child(v, a) {
                Some(c) => v = c,
                None => break,
            }
        }
        v
    }

    /// For every position `1..=n`, the node storing it. Index 0 is unused.
    /// Requires a finalized heap.
    pub fn position_nodes(&self) -> Result<Vec<NodeId>> {
        if !self.finalized {
            return Err(Error::NotFinalized);
        }
        let mut out = vec![NodeId::ROOT; self.len() + 1];
        for (id, node) in self.nodes() {
            for p in node.positions() {
                out[p] = id;
            }
        }
        Ok(out)
    }

    /// Depth-first traversal from the root, children in increasing letter
    /// order.
    pub fn depth_first(&self) -> DepthFirst<'_> {
        DepthFirst {
            heap: self,
            stack: Vec::new(),
            started: false,
        }
    }

    /// Assembles a finalized heap from a complete node table. Used by the
    /// definitional builder and the index loader, which validate their
    /// input themselves.
    pub(crate) fn from_parts(
        nodes: Vec<NodeTemplate>,
        text: Vec<Letter>,
        active_node: NodeId,
        active_position: usize,
    ) -> Self {
        let mut table: Vec<Node> = Vec::with_capacity(nodes.len());
        let mut height = 0;
        for t in &nodes {
            height = height.max(t.depth);
            let mut node = Node::new(
                NodeId::from_option(t.parent),
                NodeId::from_option(t.suffix_link),
                t.depth as u32,
                t.letter,
            );
            node.primary = t.primary.unwrap_or(0) as u32;
            node.secondary = t.secondary.unwrap_or(0) as u32;
            table.push(node);
        }
        let mut edges = EdgeArena::default();
        for (i, t) in nodes.iter().enumerate() {
            if let Some(p) = t.parent {
                edges.insert(&mut table[p.index()], t.letter, NodeId::from_index(i));
            }
        }
        let created = table.len() as u64 - 1;
        PositionHeap {
            nodes: table,
            text,
            active_node,
            active_position,
            edges,
            finalized: true,
            height,
            loop_iterations: created,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DfsEvent {
    Enter(NodeId),
    Exit(NodeId),
}

/// Iterator returned by [`PositionHeap::depth_first`].
pub struct DepthFirst<'a> {
    heap: &'a PositionHeap,
    stack: Vec<(NodeId, usize)>,
    started: bool,
}

impl Iterator for DepthFirst<'_> {
    type Item = DfsEvent;

    fn next(&mut self) -> Option<DfsEvent> {
        if !self.started {
            self.started = true;
            self.stack.push((NodeId::ROOT, 0));
            return Some(DfsEvent::Enter(NodeId::ROOT));
        }
        let (v, next_letter) = self.stack.last_mut()?;
        let node = &self.heap.nodes[v.index()];
        if let Some((a, c)) = self.heap.edges.next_from(node, *next_letter) {
            *next_letter = a as usize + 1;
            self.stack.push((c, 0));
            Some(DfsEvent::Enter(c))
        } else {
            let v = *v;
            self.stack.pop();
            Some(DfsEvent::Exit(v))
        }
    }
}

/// Plain node description used when assembling a heap from outside the
/// on-line builder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct NodeTemplate {
    pub parent: Option<NodeId>,
    pub letter: Letter,
    pub suffix_link: Option<NodeId>,
    pub depth: usize,
    pub primary: Option<usize>,
    pub secondary: Option<usize>,
}
