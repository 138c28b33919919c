//! Position heaps: on-line linear-time construction with suffix links, the
//! augmented heap (position map, ancestor queries, maximal-reach pointers
//! and their 2n-bit unary encoding) and `O(m + occ)` pattern matching.
//!
//! ```
//! use posheap::{AugmentedHeap, PositionHeap};
//!
//! let mut heap = PositionHeap::build(b"aababbbaabaab").unwrap();
//! heap.finalize();
//! let index = AugmentedHeap::new(heap).unwrap();
//! assert_eq!(index.find_all(b"ab").unwrap().positions(), &[2, 4, 9, 12]);
//! ```
//!
//! Positions are 1-based everywhere.

pub mod augmented;
pub mod bench;
pub mod bitvec;
pub mod cli;
pub mod error;
pub mod heap;
pub mod index;
pub mod search;
pub mod verify;

pub use augmented::{AugmentedHeap, MrpBits};
pub use bitvec::{BitVector, ParenSequence, RankSelect};
pub use error::{Error, Result};
pub use heap::{Letter, Node, NodeId, PositionHeap};
pub use index::{to_dot, IndexFile};
pub use search::{
    decompose, find_all_naive, Matcher, OccurrenceSet, Pattern, SegmentDecomposition,
};
