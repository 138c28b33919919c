//! Definitional builders used as test oracles. Quadratic time.

use std::collections::HashMap;

use super::{Letter, NodeId, NodeTemplate, PositionHeap};

/// Builds the finalized heap straight from its definition: the suffixes
/// `T[1..n], T[2..n], ...` are inserted in that order, each walking down
/// from the root as far as it is represented. An unrepresented suffix
/// creates one node for its shortest unrepresented prefix; a fully
/// represented one becomes the secondary position of the reached node.
///
/// Suffix links are recovered afterwards by looking up each label with its
/// first letter removed.
pub fn oracle_build(text: &[Letter]) -> PositionHeap {
    let n = text.len();
    let mut nodes = vec![NodeTemplate {
        parent: None,
        letter: 0,
        suffix_link: None,
        depth: 0,
        primary: None,
        secondary: None,
    }];
    let mut edges: HashMap<(usize, Letter), usize> = HashMap::new();

    for i in 1..=n {
        let suffix = &text[i - 1..];
        let mut v = 0;
        let mut consumed = 0;
        while consumed < suffix.len() {
            match edges.get(&(v, suffix[consumed])) {
                Some(&c) => {
                    v = c;
                    consumed += 1;
                }
                None => break,
            }
        }
        if consumed == suffix.len() {
            assert!(nodes[v].secondary.is_none(), "third position at one node");
            nodes[v].secondary = Some(i);
        } else {
            let id = nodes.len();
            nodes.push(NodeTemplate {
                parent: Some(NodeId::from_index(v)),
                letter: suffix[consumed],
                suffix_link: None,
                depth: nodes[v].depth + 1,
                primary: Some(i),
                secondary: None,
            });
            edges.insert((v, suffix[consumed]), id);
        }
    }

    let labels: Vec<Vec<Letter>> = (0..nodes.len())
        .map(|mut v| {
            let mut label = Vec::new();
            while let Some(p) = nodes[v].parent {
                label.push(nodes[v].letter);
                v = p.index();
            }
            label.reverse();
            label
        })
        .collect();
    for v in 1..nodes.len() {
        let target = labels[v][1..].iter().fold(0, |u, a| {
            *edges
                .get(&(u, *a))
                .expect("label set is not closed under suffixes")
        });
        nodes[v].suffix_link = Some(NodeId::from_index(target));
    }

    let (active_node, active_position) = nodes
        .iter()
        .enumerate()
        .filter_map(|(v, t)| t.secondary.map(|s| (v, s)))
        .min_by_key(|&(_, s)| s)
        .unwrap_or((0, n + 1));

    PositionHeap::from_parts(
        nodes,
        text.to_vec(),
        NodeId::from_index(active_node),
        active_position,
    )
}

/// Length of the longest substring `w` occurring at least `|w|` times in
/// `text` (overlapping occurrences count). Cubic brute force.
pub fn h_oracle(text: &[Letter]) -> usize {
    let n = text.len();
    let mut best = 0;
    for len in 1..=n {
        let mut counts: HashMap<&[Letter], usize> = HashMap::new();
        for window in text.windows(len) {
            *counts.entry(window).or_default() += 1;
        }
        if counts.values().any(|&c| c >= len) {
            best = len;
        }
    }
    best
}
