use super::{Letter, Node, NodeId};

pub(super) const LISTED: u8 = 3;
pub(super) const DENSE: u8 = 4;

const MIN_BLOCK_LOG: u32 = 2;
/// Longest sorted list; one more child switches the node to a direct
/// table indexed by letter.
const MAX_LIST: usize = 16;
const TABLE: usize = 1 << Letter::BITS;

/// Edges of nodes with more than two children. Up to [`MAX_LIST`] edges
/// are kept as a sorted block in `lists`, addressed by `slots[0]` (start)
/// and `slots[1]` (length in the low 16 bits, log2 capacity above).
/// Larger fan-outs get a full table in `tables` (`slots[0]` is its start,
/// `slots[1]` the number of children), where 0 marks a missing edge since
/// the root is never a child.
#[derive(Clone, Debug, Default)]
pub(super) struct EdgeArena {
    lists: Vec<(Letter, NodeId)>,
    // Released list blocks, by log2 capacity.
    free: Vec<Vec<u32>>,
    tables: Vec<u32>,
}

#[inline]
fn block(node: &Node) -> (usize, usize, u32) {
    let meta = node.slots[1];
    (node.slots[0] as usize, (meta & 0xffff) as usize, meta >> 16)
}

impl EdgeArena {
    #[inline]
    pub fn len(&self, node: &Node) -> usize {
        match node.fan {
            LISTED => block(node).1,
            DENSE => node.slots[1] as usize,
            k => k as usize,
        }
    }

    #[inline]
    fn list<'a>(&'a self, node: &Node) -> &'a [(Letter, NodeId)] {
        let (start, len, _) = block(node);
        &self.lists[start..start + len]
    }

    #[inline]
    fn table<'a>(&'a self, node: &Node) -> &'a [u32] {
        let start = node.slots[0] as usize;
        &self.tables[start..start + TABLE]
    }

    #[inline]
    pub fn find(&self, node: &Node, a: Letter) -> Option<NodeId> {
        match node.fan {
            0 => None,
            1 => (node.small[0] == a).then_some(NodeId(node.slots[0])),
            2 => {
                if node.small[0] == a {
                    Some(NodeId(node.slots[0]))
                } else if node.small[1] == a {
                    Some(NodeId(node.slots[1]))
                } else {
                    None
                }
            }
            LISTED => self
                .list(node)
                .iter()
                .find(|&&(b, _)| b == a)
                .map(|&(_, c)| c),
            _ => match self.tables[node.slots[0] as usize + a as usize] {
                0 => None,
                c => Some(NodeId(c)),
            },
        }
    }

    /// The child with the smallest letter `>= from`.
    pub fn next_from(&self, node: &Node, from: usize) -> Option<(Letter, NodeId)> {
        match node.fan {
            0 => None,
            1 | 2 => (0..node.fan as usize)
                .find(|&i| node.small[i] as usize >= from)
                .map(|i| (node.small[i], NodeId(node.slots[i]))),
            LISTED => self
                .list(node)
                .iter()
                .find(|&&(b, _)| b as usize >= from)
                .copied(),
            _ => {
                let table = self.table(node);
                (from..TABLE)
                    .find(|&a| table[a] != 0)
                    .map(|a| (a as Letter, NodeId(table[a])))
            }
        }
    }

    /// Adds the edge `a -> c`.
    pub fn insert(&mut self, node: &mut Node, a: Letter, c: NodeId) {
        debug_assert!(self.find(node, a).is_none(), "duplicate {a}-edge");
        match node.fan {
            0 => {
                node.small[0] = a;
                node.slots[0] = c.0;
                node.fan = 1;
            }
            1 => {
                if a < node.small[0] {
                    node.small = [a, node.small[0]];
                    node.slots = [c.0, node.slots[0]];
                } else {
                    node.small[1] = a;
                    node.slots[1] = c.0;
                }
                node.fan = 2;
            }
            2 => {
                let start = self.allocate(MIN_BLOCK_LOG);
                let mut list = [
                    (node.small[0], NodeId(node.slots[0])),
                    (node.small[1], NodeId(node.slots[1])),
                    (a, c),
                ];
                list.sort_unstable_by_key(|&(b, _)| b);
                self.lists[start..start + 3].copy_from_slice(&list);
                node.slots = [start as u32, 3 | (MIN_BLOCK_LOG << 16)];
                node.fan = LISTED;
            }
            LISTED => {
                let (mut start, len, mut log) = block(node);
                if len == MAX_LIST {
                    let table = self.tables.len();
                    self.tables.resize(table + TABLE, 0);
                    for &(b, d) in &self.lists[start..start + len] {
                        self.tables[table + b as usize] = d.0;
                    }
                    self.tables[table + a as usize] = c.0;
                    self.release(start, log);
                    node.slots = [table as u32, len as u32 + 1];
                    node.fan = DENSE;
                    return;
                }
                if len == 1 << log {
                    let bigger = self.allocate(log + 1);
                    self.lists.copy_within(start..start + len, bigger);
                    self.release(start, log);
                    start = bigger;
                    log += 1;
                }
                let list = &mut self.lists[start..start + len + 1];
                let i = list[..len].partition_point(|&(b, _)| b < a);
                list.copy_within(i..len, i + 1);
                list[i] = (a, c);
                node.slots = [start as u32, (len as u32 + 1) | (log << 16)];
            }
            _ => {
                self.tables[node.slots[0] as usize + a as usize] = c.0;
                node.slots[1] += 1;
            }
        }
    }

    fn allocate(&mut self, log: u32) -> usize {
        if let Some(start) = self.free.get_mut(log as usize).and_then(Vec::pop) {
            return start as usize;
        }
        let start = self.lists.len();
        self.lists.resize(start + (1 << log), (0, NodeId::ROOT));
        start
    }

    fn release(&mut self, start: usize, log: u32) {
        let log = log as usize;
        if self.free.len() <= log {
            self.free.resize_with(log + 1, Vec::new);
        }
        self.free[log].push(start as u32);
    }
}

/// Iterator returned by [`super::PositionHeap::children`].
pub struct Children<'a> {
    pub(super) arena: &'a EdgeArena,
    pub(super) node: &'a Node,
    pub(super) from: usize,
}

impl Iterator for Children<'_> {
    type Item = (Letter, NodeId);

    fn next(&mut self) -> Option<(Letter, NodeId)> {
        let (a, c) = self.arena.next_from(self.node, self.from)?;
        self.from = a as usize + 1;
        Some((a, c))
    }
}
