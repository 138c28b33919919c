//! The augmented position heap: a position-to-node map, constant-time
//! ancestor queries and maximal-reach pointers.
//!
//! The maximal-reach pointer of position `i` is the node of the longest
//! prefix of `T[i..n]` represented in the heap. All of them are computed
//! in one left-to-right pass that only ever advances a read head over the
//! text, following a suffix link after each position.

use crate::bitvec::{BitVector, ParenSequence, RankSelect};
use crate::error::{Error, Result};
use crate::heap::{DfsEvent, NodeId, PositionHeap};

#[derive(Clone, Debug)]
pub struct AugmentedHeap {
    heap: PositionHeap,
    /// Node storing each position; index 0 unused.
    node_of: Vec<NodeId>,
    /// DFS discovery and finishing times, one shared clock starting at 1.
    disc: Vec<u32>,
    fin: Vec<u32>,
    /// Nodes in discovery order; a subtree is a contiguous run.
    preorder: Vec<NodeId>,
    pre_rank: Vec<u32>,
    /// Maximal-reach node of each position; index 0 unused.
    mrp_node: Vec<NodeId>,
    parens: ParenSequence,
}

impl AugmentedHeap {
    pub fn new(heap: PositionHeap) -> Result<Self> {
        let node_of = heap.position_nodes()?;
        let count = heap.node_count();

        let mut disc = vec![0u32; count];
        let mut fin = vec![0u32; count];
        let mut preorder = Vec::with_capacity(count);
        let mut pre_rank = vec![0u32; count];
        let mut clock = 0u32;
        // The shared clock is the 1-based position in the parenthesis
        // string, so `disc` doubles as the open-parenthesis map.
        let mut bits = BitVector::with_capacity(2 * count);
        for event in heap.depth_first() {
            clock += 1;
            bits.push(matches!(event, DfsEvent::Enter(_)));
            match event {
                DfsEvent::Enter(v) => {
                    disc[v.index()] = clock;
                    pre_rank[v.index()] = preorder.len() as u32;
                    preorder.push(v);
                }
                DfsEvent::Exit(v) => fin[v.index()] = clock,
            }
        }

        let parens = ParenSequence::assemble(bits, disc.clone());
        let mrp_node = compute_mrp(&heap);
        Ok(AugmentedHeap {
            heap,
            node_of,
            disc,
            fin,
            preorder,
            pre_rank,
            mrp_node,
            parens,
        })
    }

    pub fn heap(&self) -> &PositionHeap {
        &self.heap
    }

    pub fn into_heap(self) -> PositionHeap {
        self.heap
    }

    pub fn text(&self) -> &[u8] {
        self.heap.text()
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    fn check_position(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.len() {
            return Err(Error::OutOfRange {
                what: "position",
                value: i,
                max: self.len(),
            });
        }
        Ok(())
    }

    /// Node storing position `i`, as primary or secondary.
    pub fn node_of(&self, i: usize) -> Result<NodeId> {
        self.check_position(i)?;
        Ok(self.node_of[i])
    }

    pub fn disc(&self, v: NodeId) -> usize {
        self.disc[v.index()] as usize
    }

    pub fn fin(&self, v: NodeId) -> usize {
        self.fin[v.index()] as usize
    }

    /// Ancestor-or-self test by DFS interval containment.
    #[inline]
    pub fn is_ancestor(&self, u: NodeId, v: NodeId) -> bool {
        self.disc[u.index()] <= self.disc[v.index()] && self.fin[v.index()] <= self.fin[u.index()]
    }

    pub fn parens(&self) -> &ParenSequence {
        &self.parens
    }

    /// Ancestor-or-self test through the parenthesis encoding.
    pub fn parens_is_ancestor(&self, u: NodeId, v: NodeId) -> bool {
        self.parens.is_ancestor(u, v)
    }

    /// All nodes of the subtree rooted at `u` (including `u`) in
    /// discovery order.
    pub fn subtree(&self, u: NodeId) -> &[NodeId] {
        let start = self.pre_rank[u.index()] as usize;
        let size = (self.fin(u) - self.disc(u)).div_ceil(2);
        &self.preorder[start..start + size]
    }

    pub fn mrp_node(&self, i: usize) -> Result<NodeId> {
        self.check_position(i)?;
        Ok(self.mrp_node[i])
    }

    #[inline]
    pub(crate) fn mrp_node_unchecked(&self, i: usize) -> NodeId {
        self.mrp_node[i]
    }

    /// Node and length of the longest prefix of `T[i..n]` represented in
    /// the heap.
    pub fn longest_rep_prefix(&self, i: usize) -> Result<(NodeId, usize)> {
        let v = self.mrp_node(i)?;
        Ok((v, self.heap.depth(v)))
    }

    /// Depths `m_1..m_n` of the maximal-reach nodes.
    pub fn mrp_depths(&self) -> Vec<usize> {
        self.mrp_node[1..]
            .iter()
            .map(|&v| self.heap.depth(v))
            .collect()
    }

    /// Compact 2n-bit form of the maximal-reach depths.
    pub fn encode_mrp(&self) -> Result<MrpBits> {
        MrpBits::from_depths(&self.mrp_depths())
    }
}

/// Maximal-reach nodes of every position, index 0 unused.
///
/// A read head walks the text once. For position `i` the current node is
/// extended letter by letter while the read head is inside the text and
/// the next letter has an edge; the reached node is `mrp(i)`, and its
/// suffix link is where the search for `i + 1` resumes.
pub fn compute_mrp(heap: &PositionHeap) -> Vec<NodeId> {
    let text = heap.text();
    let n = text.len();
    let mut mrp = vec![NodeId::ROOT; n + 1];
    let mut current = NodeId::ROOT;
    let mut read_head = 1;
    for (i, slot) in mrp.iter_mut().enumerate().skip(1) {
        while read_head <= n {
            match heap.child(current, text[read_head - 1]) {
                Some(c) => {
                    current = c;
                    read_head += 1;
                }
                None => break,
            }
        }
        debug_assert_eq!(heap.depth(current), read_head - i);
        *slot = current;
        // mrp(i) always has depth >= 1, so this link is never the virtual
        // bottom node.
        current = heap
            .suffix_link(current)
            .expect("maximal-reach node is never the root");
    }
    mrp
}

/// Per-position root walks; quadratic reference for [`compute_mrp`].
pub fn naive_mrp(heap: &PositionHeap) -> Vec<NodeId> {
    let text = heap.text();
    std::iter::once(NodeId::ROOT)
        .chain((1..=text.len()).map(|i| heap.longest_represented_prefix(&text[i - 1..])))
        .collect()
}

/// Maximal-reach depths stored as `(m_1, d_2, ..., d_n)` in unary, where
/// `d_i = m_i - m_{i-1} + 1`. The depths telescope to `n`, so the vector
/// has exactly `n` ones and `n` zeros, and
/// `m_i = rank1(select0(i)) - i + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrpBits {
    bits: RankSelect,
    n: usize,
}

impl MrpBits {
    /// Encodes depths `m_1..m_n`. Fails if some depth drops by more than
    /// one from its predecessor.
    pub fn from_depths(depths: &[usize]) -> Result<Self> {
        let mut bits = BitVector::with_capacity(2 * depths.len());
        let mut prev = None;
        for (k, &m) in depths.iter().enumerate() {
            let value = match prev {
                None => m,
                Some(p) => (m + 1)
                    .checked_sub(p)
                    .ok_or(Error::CorruptMrp { position: k + 1 })?,
            };
            bits.push_run(true, value);
            bits.push(false);
            prev = Some(m);
        }
        Ok(MrpBits {
            bits: RankSelect::new(bits),
            n: depths.len(),
        })
    }

    pub fn bits(&self) -> &BitVector {
        self.bits.bits()
    }

    pub fn rank_select(&self) -> &RankSelect {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `m_i`, the depth of the maximal-reach node of position `i`.
    pub fn depth(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n {
            return Err(Error::OutOfRange {
                what: "position",
                value: i,
                max: self.n,
            });
        }
        let zero = self.bits.select_unchecked::<false>(i);
        Ok(self.bits.rank1_unchecked(zero) + 1 - i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &[u8] = b"aababbbaabaab";

    fn augmented(text: &[u8]) -> AugmentedHeap {
        AugmentedHeap::new(PositionHeap::build_finalized(text).unwrap()).unwrap()
    }

    fn node(a: &AugmentedHeap, label: &str) -> NodeId {
        a.heap().locate(label.as_bytes()).unwrap()
    }

    fn walk_is_ancestor(heap: &PositionHeap, u: NodeId, v: NodeId) -> bool {
        let mut x = Some(v);
        while let Some(y) = x {
            if y == u {
                return true;
            }
            x = heap.parent(y);
        }
        false
    }

    #[test]
    fn requires_finalized_heap() {
        let heap = PositionHeap::build(SAMPLE).unwrap();
        assert!(matches!(AugmentedHeap::new(heap), Err(Error::NotFinalized)));
    }

    #[test]
    fn sample_node_of() {
        let a = augmented(SAMPLE);
        assert_eq!(a.node_of(12).unwrap(), node(&a, "ab"));
        assert_eq!(a.node_of(4).unwrap(), node(&a, "abb"));
        assert_eq!(a.node_of(13).unwrap(), node(&a, "b"));
        assert!(a.node_of(0).is_err());
        assert!(a.node_of(14).is_err());
    }

    #[test]
    fn sample_maximal_reach() {
        let a = augmented(SAMPLE);
        let expected = [(1, "aab"), (2, "aba"), (3, "ba"), (7, "baa"), (8, "aab")];
        for i in 1..=SAMPLE.len() {
            let want = expected
                .iter()
                .find(|(p, _)| *p == i)
                .map_or(a.node_of(i).unwrap(), |(_, l)| node(&a, l));
            assert_eq!(a.mrp_node(i).unwrap(), want, "mrp({i})");
        }
        assert_eq!(a.longest_rep_prefix(1).unwrap(), (node(&a, "aab"), 3));
        assert_eq!(a.longest_rep_prefix(12).unwrap(), (node(&a, "ab"), 2));
    }

    #[test]
    fn ancestor_structures_agree_on_sample() {
        let a = augmented(SAMPLE);
        let heap = a.heap();
        assert!(a.is_ancestor(node(&a, "ba"), node(&a, "baa")));
        assert!(!a.is_ancestor(node(&a, "ba"), node(&a, "bb")));
        for (u, _) in heap.nodes() {
            for (v, _) in heap.nodes() {
                let walk = walk_is_ancestor(heap, u, v);
                assert_eq!(a.is_ancestor(u, v), walk);
                assert_eq!(a.parens_is_ancestor(u, v), walk);
            }
        }
    }

    #[test]
    fn subtree_is_contiguous() {
        let a = augmented(SAMPLE);
        let ab = node(&a, "ab");
        let mut labels: Vec<Vec<u8>> = a
            .subtree(ab)
            .iter()
            .map(|&v| a.heap().path_label(v))
            .collect();
        labels.sort();
        assert_eq!(labels, [b"ab".to_vec(), b"aba".to_vec(), b"abb".to_vec()]);
        assert_eq!(a.subtree(NodeId::ROOT).len(), 12);
    }

    #[test]
    fn encodings() {
        let bits = MrpBits::from_depths(&[1, 2, 1, 3, 2, 2, 1]).unwrap();
        assert_eq!(bits.bits().to_string(), "10110011100100");

        let a = augmented(b"abaab");
        assert_eq!(a.mrp_depths(), [2, 1, 2, 2, 1]);
        let bits = a.encode_mrp().unwrap();
        assert_eq!(bits.bits().to_string(), "1100110100");
        assert_eq!(bits.depth(3).unwrap(), 2);
        assert!(bits.depth(6).is_err());

        let a = augmented(b"abc");
        assert_eq!(a.encode_mrp().unwrap().bits().to_string(), "101010");
    }

    #[test]
    fn corrupt_depths_rejected() {
        assert!(matches!(
            MrpBits::from_depths(&[3, 1]),
            Err(Error::CorruptMrp { position: 2 })
        ));
    }

    #[test]
    fn sample_depths_round_trip() {
        let a = augmented(SAMPLE);
        let bits = a.encode_mrp().unwrap();
        assert_eq!(bits.bits().len(), 2 * SAMPLE.len());
        assert_eq!(bits.bits().count_ones(), SAMPLE.len());
        for (i, m) in a.mrp_depths().into_iter().enumerate() {
            assert_eq!(bits.depth(i + 1).unwrap(), m);
        }
        assert_eq!(compute_mrp(a.heap()), naive_mrp(a.heap()));
    }

    #[test]
    fn empty_text() {
        let a = augmented(b"");
        assert!(a.mrp_depths().is_empty());
        assert_eq!(a.encode_mrp().unwrap().bits().len(), 0);
        assert_eq!(a.subtree(NodeId::ROOT), &[NodeId::ROOT]);
    }
}
