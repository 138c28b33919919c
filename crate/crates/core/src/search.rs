//! Exact pattern matching over an [`AugmentedHeap`] in `O(m + occ)`.
//!
//! The pattern is split greedily into segments `w_1 w_2 ... w_k`, each the
//! longest prefix of the remaining pattern that is represented in the heap.
//!
//! * `k = 1`: the whole pattern is the label of a node `u`. Every position
//!   stored in the subtree of `u` is an occurrence. Any other occurrence `q`
//!   is stored at a proper ancestor of `u` and has `mrp(q)` inside the
//!   subtree of `u`.
//! * `k >= 2`: an occurrence `q` of `w_j ... w_k` with `j < k` must have
//!   `mrp(q) = u_j` exactly, since a longer represented prefix would
//!   contradict the greedy split. Its node therefore lies on the path from
//!   the root to `u_j`, which holds at most `2 |w_j|` positions. Candidates
//!   are filtered segment by segment from the last one backwards; the last
//!   segment is checked with a single ancestor query on `mrp`.
//!
//! An unrepresented pattern thus has at most `|w_1|` occurrences.

use crate::augmented::AugmentedHeap;
use crate::error::{Error, Result};
use crate::heap::{Letter, NodeId};

/// A nonempty search pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pattern<'a>(&'a [Letter]);

impl<'a> Pattern<'a> {
    pub fn new(letters: &'a [Letter]) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::EmptyPattern);
        }
        Ok(Pattern(letters))
    }

    pub fn letters(&self) -> &'a [Letter] {
        self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub node: NodeId,
    pub len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentDecomposition {
    pub segments: Vec<Segment>,
    /// False when some letter of the pattern has no edge at the root, i.e.
    /// never occurs in the text.
    pub complete: bool,
}

/// Sorted starting positions of a pattern.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OccurrenceSet(Vec<usize>);

impl OccurrenceSet {
    fn from_unsorted(mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        OccurrenceSet(positions)
    }

    pub fn positions(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.binary_search(&p).is_ok()
    }
}

/// Greedy split of `pattern` into maximal represented segments.
pub fn decompose(index: &AugmentedHeap, pattern: &[Letter]) -> Result<SegmentDecomposition> {
    let pattern = Pattern::new(pattern)?;
    let heap = index.heap();
    let mut segments = Vec::new();
    let mut rest = pattern.letters();
    while !rest.is_empty() {
        let mut v = NodeId::ROOT;
        let mut len = 0;
        while let Some(c) = rest.get(len).and_then(|&a| heap.child(v, a)) {
            v = c;
            len += 1;
        }
        if len == 0 {
            return Ok(SegmentDecomposition {
                segments,
                complete: false,
            });
        }
        segments.push(Segment { node: v, len });
        rest = &rest[len..];
    }
    Ok(SegmentDecomposition {
        segments,
        complete: true,
    })
}

/// Query driver owning per-query scratch space. Reuse one per thread to
/// avoid reallocating the membership buffer.
pub struct Matcher<'a> {
    index: &'a AugmentedHeap,
    /// Version-stamped membership marks indexed by position.
    marks: Vec<u32>,
    stamp: u32,
    steps: u64,
}

impl<'a> Matcher<'a> {
    pub fn new(index: &'a AugmentedHeap) -> Self {
        Matcher {
            index,
            marks: Vec::new(),
            stamp: 0,
            steps: 0,
        }
    }

    /// Elementary steps taken by the last query: pattern letters consumed,
    /// nodes visited and candidate positions examined.
    pub fn last_steps(&self) -> u64 {
        self.steps
    }

    fn next_stamp(&mut self) -> u32 {
        if self.marks.is_empty() {
            self.marks = vec![0; self.index.len() + 2];
        }
        if self.stamp == u32::MAX {
            self.marks.fill(0);
            self.stamp = 0;
        }
        self.stamp += 1;
        self.stamp
    }

    pub fn count(&mut self, pattern: &[Letter]) -> Result<usize> {
        self.find_all(pattern).map(|o| o.len())
    }

    pub fn find_all(&mut self, pattern: &[Letter]) -> Result<OccurrenceSet> {
        let m = pattern.len();
        let decomposition = decompose(self.index, pattern)?;
        self.steps = m as u64;
        if !decomposition.complete {
            return Ok(OccurrenceSet::default());
        }
        let segments = decomposition.segments;
        if segments.len() == 1 {
            return Ok(self.represented(segments[0].node));
        }
        let found = self.chained(&segments);
        debug_assert!(found.len() <= segments[0].len);
        Ok(found)
    }

    fn represented(&mut self, u: NodeId) -> OccurrenceSet {
        let index = self.index;
        let heap = index.heap();
        let mut out = Vec::new();
        for &w in index.subtree(u) {
            self.steps += 1;
            out.extend(heap.node(w).positions());
        }
        let mut x = heap.parent(u);
        while let Some(v) = x.filter(|&v| v != NodeId::ROOT) {
            self.steps += 1;
            for q in heap.node(v).positions() {
                self.steps += 1;
                if index.is_ancestor(u, index.mrp_node_unchecked(q)) {
                    out.push(q);
                }
            }
            x = heap.parent(v);
        }
        OccurrenceSet::from_unsorted(out)
    }

    fn chained(&mut self, segments: &[Segment]) -> OccurrenceSet {
        let index = self.index;
        let heap = index.heap();
        let n = index.len();
        let k = segments.len();
        let last = segments[k - 1].node;

        let mut stage: Vec<usize> = Vec::new();
        let mut stamp = 0;
        for j in (0..k - 1).rev() {
            let Segment { node: u, len } = segments[j];
            let mut matched = Vec::new();
            let mut x = Some(u);
            while let Some(v) = x.filter(|&v| v != NodeId::ROOT) {
                self.steps += 1;
                for q in heap.node(v).positions() {
                    self.steps += 1;
                    if index.mrp_node_unchecked(q) != u {
                        continue;
                    }
                    let r = q + len;
                    let continues = r <= n
                        && if j + 2 == k {
                            index.is_ancestor(last, index.mrp_node_unchecked(r))
                        } else {
                            self.marks[r] == stamp
                        };
                    if continues {
                        matched.push(q);
                    }
                }
                x = heap.parent(v);
            }
            stage = matched;
            if j > 0 {
                stamp = self.next_stamp();
                for &q in &stage {
                    self.marks[q] = stamp;
                }
            }
        }
        OccurrenceSet::from_unsorted(stage)
    }
}

impl AugmentedHeap {
    /// All occurrences of `pattern`. Allocates fresh scratch space; use a
    /// [`Matcher`] for repeated queries.
    pub fn find_all(&self, pattern: &[Letter]) -> Result<OccurrenceSet> {
        Matcher::new(self).find_all(pattern)
    }

    pub fn count(&self, pattern: &[Letter]) -> Result<usize> {
        self.find_all(pattern).map(|o| o.len())
    }
}

/// Sliding-window reference matcher.
pub fn find_all_naive(text: &[Letter], pattern: &[Letter]) -> Result<OccurrenceSet> {
    let pattern = Pattern::new(pattern)?.letters();
    if pattern.len() > text.len() {
        return Ok(OccurrenceSet::default());
    }
    Ok(OccurrenceSet(
        text.windows(pattern.len())
            .enumerate()
            .filter(|(_, w)| *w == pattern)
            .map(|(i, _)| i + 1)
            .collect(),
    ))
}
