//! On-disk index format and DOT rendering.
//!
//! The JSON index stores the finalized trie only. The text is not stored:
//! every position sits at a node whose label starts with that position's
//! letter, so `T[i]` is the first letter of the label of the node holding
//! `i`. Field order is fixed, so saving a loaded index reproduces the
//! original bytes.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::augmented::AugmentedHeap;
use crate::error::{Error, Result};
use crate::heap::{Letter, NodeId, NodeTemplate, PositionHeap};

pub const INDEX_VERSION: u32 = 1;
pub const ALPHABET_TAG: &str = "bytes";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub id: u32,
    pub parent: Option<u32>,
    pub letter: Option<u8>,
    pub suffix_link: Option<u32>,
    pub primary: Option<usize>,
    pub secondary: Option<usize>,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexFile {
    pub version: u32,
    pub text_length: usize,
    pub alphabet: String,
    pub active_node: u32,
    pub active_position: usize,
    pub nodes: Vec<NodeRecord>,
    /// Depth of the maximal-reach node of each position, when the index
    /// was saved from an augmented heap.
    pub mrp_depths: Option<Vec<usize>>,
}

#[derive(Deserialize)]
struct VersionProbe {
    version: u32,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedIndex(msg.into())
}

impl IndexFile {
    pub fn from_heap(heap: &PositionHeap) -> Result<Self> {
        if !heap.is_finalized() {
            return Err(Error::NotFinalized);
        }
        let nodes = heap
            .nodes()
            .map(|(id, node)| NodeRecord {
                id: id.index() as u32,
                parent: node.parent().map(|p| p.index() as u32),
                letter: node.in_letter(),
                suffix_link: node.suffix_link().map(|l| l.index() as u32),
                primary: node.primary(),
                secondary: node.secondary(),
                depth: node.depth(),
            })
            .collect();
        Ok(IndexFile {
            version: INDEX_VERSION,
            text_length: heap.len(),
            alphabet: ALPHABET_TAG.to_owned(),
            active_node: heap.active_node().index() as u32,
            active_position: heap.active_position(),
            nodes,
            mrp_depths: None,
        })
    }

    pub fn from_index(index: &AugmentedHeap) -> Result<Self> {
        let mut file = Self::from_heap(index.heap())?;
        file.mrp_depths = Some(index.mrp_depths());
        Ok(file)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let probe: VersionProbe = serde_json::from_str(s)?;
        if probe.version != INDEX_VERSION {
            return Err(Error::VersionMismatch {
                found: probe.version,
                expected: INDEX_VERSION,
            });
        }
        Ok(serde_json::from_str(s)?)
    }

    pub fn save<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(self.to_json()?.as_bytes())?;
        Ok(())
    }

    pub fn load<R: Read>(mut input: R) -> Result<Self> {
        let mut s = String::new();
        input.read_to_string(&mut s)?;
        Self::from_json(&s)
    }

    /// Rebuilds the finalized heap, recovering the text from the node
    /// labels. Rejects tables that are not a well-formed trie with a
    /// consistent position assignment.
    pub fn to_heap(&self) -> Result<PositionHeap> {
        if self.alphabet != ALPHABET_TAG {
            return Err(malformed(format!("unknown alphabet {:?}", self.alphabet)));
        }
        let count = self.nodes.len();
        let n = self.text_length;
        if count == 0 {
            return Err(malformed("no root node"));
        }
        let node_ref = |id: u32, what: &str| -> Result<NodeId> {
            if (id as usize) < count {
                Ok(NodeId::from_index(id as usize))
            } else {
                Err(malformed(format!("{what} {id} out of range")))
            }
        };

        let mut templates: Vec<NodeTemplate> = Vec::with_capacity(count);
        let mut first_letter: Vec<Letter> = Vec::with_capacity(count);
        let mut edges = HashSet::new();
        let mut text: Vec<Option<Letter>> = vec![None; n + 1];
        for (i, rec) in self.nodes.iter().enumerate() {
            if rec.id as usize != i {
                return Err(malformed(format!("node {i} has id {}", rec.id)));
            }
            let template = if i == 0 {
                if rec.parent.is_some()
                    || rec.letter.is_some()
                    || rec.suffix_link.is_some()
                    || rec.primary.is_some()
                    || rec.secondary.is_some()
                    || rec.depth != 0
                {
                    return Err(malformed("node 0 is not a bare root"));
                }
                first_letter.push(0);
                NodeTemplate {
                    parent: None,
                    letter: 0,
                    suffix_link: None,
                    depth: 0,
                    primary: None,
                    secondary: None,
                }
            } else {
                let parent = rec
                    .parent
                    .ok_or_else(|| malformed(format!("node {i} has no parent")))?;
                if parent as usize >= i {
                    return Err(malformed(format!("node {i} has later parent {parent}")));
                }
                let letter = rec
                    .letter
                    .ok_or_else(|| malformed(format!("node {i} has no letter")))?;
                if !edges.insert((parent, letter)) {
                    return Err(malformed(format!(
                        "duplicate {letter}-edge at node {parent}"
                    )));
                }
                let parent_depth = templates[parent as usize].depth;
                if rec.depth != parent_depth + 1 {
                    return Err(malformed(format!("node {i} has depth {}", rec.depth)));
                }
                let link = node_ref(
                    rec.suffix_link
                        .ok_or_else(|| malformed(format!("node {i} has no suffix link")))?,
                    "suffix link",
                )?;
                if rec.primary.is_none() {
                    return Err(malformed(format!("node {i} has no primary position")));
                }
                first_letter.push(if parent == 0 {
                    letter
                } else {
                    first_letter[parent as usize]
                });
                NodeTemplate {
                    parent: Some(NodeId::from_index(parent as usize)),
                    letter,
                    suffix_link: Some(link),
                    depth: rec.depth,
                    primary: rec.primary,
                    secondary: rec.secondary,
                }
            };
            for p in [rec.primary, rec.secondary].into_iter().flatten() {
                if p == 0 || p > n {
                    return Err(malformed(format!("position {p} out of 1..={n}")));
                }
                if text[p].replace(first_letter[i]).is_some() {
                    return Err(malformed(format!("position {p} stored twice")));
                }
            }
            templates.push(template);
        }
        for (i, t) in templates.iter().enumerate().skip(1) {
            let link = t.suffix_link.unwrap().index();
            if templates[link].depth + 1 != t.depth {
                return Err(malformed(format!(
                    "suffix link of node {i} has wrong depth"
                )));
            }
        }
        let text: Vec<Letter> = text[1..]
            .iter()
            .enumerate()
            .map(|(i, l)| l.ok_or_else(|| malformed(format!("position {} not stored", i + 1))))
            .collect::<Result<_>>()?;

        let (active_node, active_position) = templates
            .iter()
            .enumerate()
            .filter_map(|(v, t)| t.secondary.map(|s| (v, s)))
            .min_by_key(|&(_, s)| s)
            .unwrap_or((0, n + 1));
        if active_node != self.active_node as usize || active_position != self.active_position {
            return Err(malformed(
                "active node/position disagree with the secondary positions",
            ));
        }

        Ok(PositionHeap::from_parts(
            templates,
            text,
            NodeId::from_index(active_node),
            active_position,
        ))
    }

    /// Loads the heap and augments it, checking stored maximal-reach
    /// depths if present.
    pub fn to_index(&self) -> Result<AugmentedHeap> {
        let index = AugmentedHeap::new(self.to_heap()?)?;
        if let Some(stored) = &self.mrp_depths {
            if *stored != index.mrp_depths() {
                return Err(malformed(
                    "stored maximal-reach depths do not match the trie",
                ));
            }
        }
        Ok(index)
    }
}

fn escape_letter(a: Letter) -> String {
    match a {
        b'"' => "\\\"".into(),
        b'\\' => "\\\\".into(),
        0x21..=0x7e => (a as char).to_string(),
        _ => format!("\\\\x{a:02x}"),
    }
}

/// Graphviz rendering: solid lettered tree edges, dashed suffix links, and
/// double-lined maximal-reach pointers for positions whose pointer leaves
/// their own node. Double nodes are labeled `primary,secondary`.
pub fn to_dot(index: &AugmentedHeap) -> String {
    let heap = index.heap();
    let mut out = String::new();
    out.push_str("digraph position_heap {\n");
    out.push_str("  node [shape=circle];\n");
    for (v, node) in heap.nodes() {
        let label = if v == NodeId::ROOT {
            "root".to_owned()
        } else {
            node.positions()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let _ = writeln!(out, "  n{} [label=\"{label}\"];", v.index());
    }
    for (v, _) in heap.nodes() {
        for (a, c) in heap.children(v) {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{}\"];",
                v.index(),
                c.index(),
                escape_letter(a)
            );
        }
    }
    for (v, node) in heap.nodes() {
        if let Some(l) = node.suffix_link() {
            let _ = writeln!(
                out,
                "  n{} -> n{} [style=dashed, constraint=false];",
                v.index(),
                l.index()
            );
        }
    }
    for (v, node) in heap.nodes() {
        if let Some(p) = node.primary() {
            let target = index.mrp_node(p).expect("primary position in range");
            if target != v {
                let _ = writeln!(
                    out,
                    "  n{} -> n{} [color=\"black:invis:black\", constraint=false];",
                    v.index(),
                    target.index()
                );
            }
        }
    }
    out.push_str("}\n");
    out
}
