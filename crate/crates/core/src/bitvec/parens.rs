use super::{BitVector, RankSelect, WORD_BITS};
use crate::error::{Error, Result};
use crate::heap::{DfsEvent, NodeId, PositionHeap};

/// Balanced-parenthesis encoding of a tree: `1` opens a node at discovery,
/// `0` closes it at finishing time.
///
/// Matching parentheses are found with an in-word scan plus a min-excess
/// tree over 64-bit blocks, so `find_close` is logarithmic in the worst
/// case.
#[derive(Clone, Debug)]
pub struct ParenSequence {
    bits: RankSelect,
    /// 1-based position of each node's open parenthesis, indexed by node.
    open_of: Vec<u32>,
    /// Minimum absolute excess reached inside each block.
    min_tree: MinTree,
}

impl ParenSequence {
    /// Encodes the topology of `heap` by a depth-first traversal visiting
    /// children in increasing letter order.
    pub fn from_heap(heap: &PositionHeap) -> Self {
        let mut bits = BitVector::with_capacity(2 * heap.node_count());
        let mut open_of = vec![0u32; heap.node_count()];
        for event in heap.depth_first() {
            match event {
                DfsEvent::Enter(v) => {
                    bits.push(true);
                    open_of[v.index()] = bits.len() as u32;
                }
                DfsEvent::Exit(_) => bits.push(false),
            }
        }
        Self::assemble(bits, open_of)
    }

    /// Wraps a raw parenthesis string. No node mapping is attached.
    pub fn from_bits(bits: BitVector) -> Result<Self> {
        let mut excess = 0i64;
        for b in bits.iter() {
            excess += if b { 1 } else { -1 };
            if excess < 0 {
                return Err(Error::Unbalanced);
            }
        }
        if excess != 0 {
            return Err(Error::Unbalanced);
        }
        Ok(Self::assemble(bits, Vec::new()))
    }

    pub(crate) fn assemble(bits: BitVector, open_of: Vec<u32>) -> Self {
        let mut block_min = Vec::with_capacity(bits.words().len());
        let mut excess = 0i64;
        for (w, &word) in bits.words().iter().enumerate() {
            let valid = (bits.len() - w * WORD_BITS).min(WORD_BITS);
            let mut min = i64::MAX;
            for b in 0..valid {
                excess += if word >> b & 1 == 1 { 1 } else { -1 };
                min = min.min(excess);
            }
            block_min.push(min);
        }
        ParenSequence {
            bits: RankSelect::new(bits),
            open_of,
            min_tree: MinTree::new(&block_min),
        }
    }

    pub fn bits(&self) -> &BitVector {
        self.bits.bits()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Opens minus closes in `B[1..i]`.
    #[inline]
    pub fn excess(&self, i: usize) -> i64 {
        2 * self.bits.rank1_unchecked(i) as i64 - i as i64
    }

    /// Position of the open parenthesis of `v`. Only available for
    /// sequences built from a heap.
    pub fn open_of(&self, v: NodeId) -> usize {
        self.open_of[v.index()] as usize
    }

    /// Position of the parenthesis closing the one opened at `i`.
    pub fn find_close(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.len() || !self.bits.get(i) {
            return Err(Error::NotAnOpen(i));
        }
        Ok(self.find_close_unchecked(i))
    }

    fn find_close_unchecked(&self, i: usize) -> usize {
        let words = self.bits.bits().words();
        let target = self.excess(i) - 1;

        // Rest of the word holding bit i (0-based index i-1).
        let w = (i - 1) / WORD_BITS;
        if let Some(p) = self.scan_word(words[w], w, i - w * WORD_BITS, self.excess(i), target) {
            return p;
        }
        let next = self
            .min_tree
            .first_at_most(w + 1, target)
            .expect("balanced sequence always closes");
        let start = self.excess(next * WORD_BITS);
        self.scan_word(words[next], next, 0, start, target)
            .expect("block minimum promised a match")
    }

    /// Scans bits `from..64` of word `w` starting at excess `excess`;
    /// returns the 1-based position where excess first equals `target`.
    #[inline]
    fn scan_word(
        &self,
        word: u64,
        w: usize,
        from: usize,
        mut excess: i64,
        target: i64,
    ) -> Option<usize> {
        let valid = self.len().saturating_sub(w * WORD_BITS).min(WORD_BITS);
        for b in from..valid {
            excess += if word >> b & 1 == 1 { 1 } else { -1 };
            if excess == target {
                return Some(w * WORD_BITS + b + 1);
            }
        }
        None
    }

    /// Ancestor-or-self test by parenthesis nesting.
    pub fn is_ancestor(&self, u: NodeId, v: NodeId) -> bool {
        let ou = self.open_of(u);
        let ov = self.open_of(v);
        ou <= ov && self.find_close_unchecked(ov) <= self.find_close_unchecked(ou)
    }
}

/// Min segment tree answering "first block at or after `from` whose
/// minimum is at most `target`".
#[derive(Clone, Debug)]
struct MinTree {
    size: usize,
    tree: Vec<i64>,
}

impl MinTree {
    fn new(values: &[i64]) -> Self {
        let size = values.len().next_power_of_two().max(1);
        let mut tree = vec![i64::MAX; 2 * size];
        tree[size..size + values.len()].copy_from_slice(values);
        for i in (1..size).rev() {
            tree[i] = tree[2 * i].min(tree[2 * i + 1]);
        }
        MinTree { size, tree }
    }

    fn first_at_most(&self, from: usize, target: i64) -> Option<usize> {
        self.descend(1, 0, self.size, from, target)
    }

    fn descend(
        &self,
        node: usize,
        lo: usize,
        hi: usize,
        from: usize,
        target: i64,
    ) -> Option<usize> {
        if hi <= from || self.tree[node] > target {
            return None;
        }
        if hi - lo == 1 {
            return Some(lo);
        }
        let mid = (lo + hi) / 2;
        self.descend(2 * node, lo, mid, from, target)
            .or_else(|| self.descend(2 * node + 1, mid, hi, from, target))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn parens(s: &str) -> ParenSequence {
        ParenSequence::from_bits(s.parse().unwrap()).unwrap()
    }

    fn naive_close(bits: &BitVector, i: usize) -> usize {
        let mut depth = 0i64;
        for j in i..=bits.len() {
            depth += if bits.get(j) { 1 } else { -1 };
            if depth == 0 {
                return j;
            }
        }
        unreachable!()
    }

    /// Random balanced sequence from a random tree shape.
    fn random_parens(rng: &mut ChaCha8Rng, nodes: usize) -> BitVector {
        let mut bits = BitVector::new();
        let mut open = 0;
        let mut remaining = nodes;
        while remaining > 0 || open > 0 {
            if remaining > 0 && (open == 0 || rng.gen_bool(0.55)) {
                bits.push(true);
                open += 1;
                remaining -= 1;
            } else {
                bits.push(false);
                open -= 1;
            }
        }
        bits
    }

    #[test]
    fn small_fixtures() {
        assert_eq!(parens("10").find_close(1).unwrap(), 2);
        let p = parens("111000");
        assert_eq!(p.find_close(2).unwrap(), 5);
        assert_eq!(p.find_close(1).unwrap(), 6);
        assert!(matches!(p.find_close(4), Err(Error::NotAnOpen(4))));
        assert!(matches!(p.find_close(0), Err(Error::NotAnOpen(0))));
    }

    #[test]
    fn rejects_unbalanced() {
        assert!(ParenSequence::from_bits("1".parse().unwrap()).is_err());
        assert!(ParenSequence::from_bits("01".parse().unwrap()).is_err());
        assert!(ParenSequence::from_bits("1100".parse().unwrap()).is_ok());
    }

    #[test]
    fn random_trees_against_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for round in 0..60 {
            let nodes = if round < 50 {
                rng.gen_range(1..200)
            } else {
                rng.gen_range(1000..5000)
            };
            let bits = random_parens(&mut rng, nodes);
            let p = ParenSequence::from_bits(bits.clone()).unwrap();
            for i in 1..=bits.len() {
                if bits.get(i) {
                    assert_eq!(p.find_close(i).unwrap(), naive_close(&bits, i));
                }
            }
        }
    }

    #[test]
    fn deep_chain_spans_blocks() {
        let n = 1000;
        let bits: BitVector = (0..2 * n).map(|i| i < n).collect();
        let p = ParenSequence::from_bits(bits).unwrap();
        for i in 1..=n {
            assert_eq!(p.find_close(i).unwrap(), 2 * n + 1 - i);
        }
    }

    #[test]
    fn heap_encodings() {
        let root_only = PositionHeap::build_finalized(b"").unwrap();
        assert_eq!(
            ParenSequence::from_heap(&root_only).bits().to_string(),
            "10"
        );

        let chain = PositionHeap::build_finalized(b"aa").unwrap();
        assert_eq!(ParenSequence::from_heap(&chain).bits().to_string(), "1100");

        let chain = PositionHeap::build_finalized(b"aaa").unwrap();
        assert_eq!(chain.node_count(), 3);
        assert_eq!(
            ParenSequence::from_heap(&chain).bits().to_string(),
            "111000"
        );

        let sample = PositionHeap::build_finalized(b"aababbbaabaab").unwrap();
        let p = ParenSequence::from_heap(&sample);
        assert_eq!(p.len(), 24);
        for (v, node) in sample.nodes() {
            assert_eq!(p.excess(p.open_of(v)), node.depth() as i64 + 1);
        }
        let b = sample.locate(b"b").unwrap();
        assert!(p.is_ancestor(b, sample.locate(b"baa").unwrap()));
        assert!(!p.is_ancestor(
            sample.locate(b"ab").unwrap(),
            sample.locate(b"aab").unwrap()
        ));
        assert!(sample.nodes().all(|(v, _)| p.is_ancestor(NodeId::ROOT, v)));
    }
}
